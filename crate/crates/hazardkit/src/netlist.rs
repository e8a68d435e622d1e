//! Line-oriented netlist text format.
//!
//! ```text
//! circuit <name>
//! inputs <id> <id> ...
//! const <id> = 0|1
//! gate <id> = NOT|AND|OR|XOR|MAJ3|CUSTOM:<name>:<hexTable> <operand ids...>
//! outputs <id> ...
//! ```
//!
//! `#` starts a comment. The `inputs` line assigns input indices 1..n in
//! listing order. `const` and `gate` lines may interleave; the gate order in
//! the file is preserved, so `parse_netlist(print_netlist(c))` reproduces a
//! parsed or builder-made circuit exactly.

use crate::circuit::{Circuit, CircuitError, CustomGate, Gate, GateKind, NodeId};
use crate::table::TruthTable;
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: unknown gate kind '{kind}'")]
    UnknownGateKind { line: usize, kind: String },
    #[error("line {line}: reference to undefined id '{id}'")]
    UndefinedId { line: usize, id: String },
    #[error("line {line}: duplicate id '{id}'")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: gate '{id}' expects {expected} operands, got {got}")]
    ArityMismatch {
        line: usize,
        id: String,
        expected: usize,
        got: usize,
    },
    #[error("missing outputs line")]
    MissingOutputs,
    #[error("invalid circuit: {0}")]
    Invalid(#[from] CircuitError),
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut col = 0;
    for part in line.split_whitespace() {
        let start = line[col..].find(part).unwrap() + col;
        tokens.push(Token {
            text: part,
            col: start + 1,
        });
        col = start + part.len();
    }
    tokens
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

pub fn parse_netlist(text: &str) -> Result<Circuit, ParseError> {
    let mut name: Option<String> = None;
    let mut gates: Vec<Gate> = Vec::new();
    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut input_count = 0usize;
    let mut outputs: Option<Vec<NodeId>> = None;
    let mut seen_inputs = false;

    fn define(
        ids: &mut HashMap<String, NodeId>,
        gates: &mut Vec<Gate>,
        id: &str,
        kind: GateKind,
        operands: Vec<NodeId>,
        line: usize,
    ) -> Result<(), ParseError> {
        if ids.contains_key(id) {
            return Err(ParseError::DuplicateId {
                line,
                id: id.to_string(),
            });
        }
        ids.insert(id.to_string(), gates.len());
        gates.push(Gate {
            id: id.to_string(),
            kind,
            operands,
        });
        Ok(())
    }

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        let head = &tokens[0];
        match head.text {
            "circuit" => {
                if name.is_some() {
                    return Err(syntax(line, head.col, "duplicate circuit line"));
                }
                let t = tokens
                    .get(1)
                    .ok_or_else(|| syntax(line, head.col, "circuit line needs a name"))?;
                if tokens.len() > 2 {
                    return Err(syntax(line, tokens[2].col, "unexpected token after name"));
                }
                name = Some(t.text.to_string());
            }
            "inputs" => {
                if name.is_none() {
                    return Err(syntax(line, head.col, "inputs line before circuit line"));
                }
                if seen_inputs {
                    return Err(syntax(line, head.col, "duplicate inputs line"));
                }
                seen_inputs = true;
                for t in &tokens[1..] {
                    input_count += 1;
                    define(&mut ids, &mut gates, t.text, GateKind::Input(input_count), vec![], line)?;
                }
            }
            "const" => {
                if !seen_inputs {
                    return Err(syntax(line, head.col, "const line before inputs line"));
                }
                // const <id> = 0|1
                if tokens.len() != 4 || tokens[2].text != "=" {
                    return Err(syntax(line, head.col, "expected 'const <id> = 0|1'"));
                }
                let value = match tokens[3].text {
                    "0" => false,
                    "1" => true,
                    other => {
                        return Err(syntax(
                            line,
                            tokens[3].col,
                            format!("expected 0 or 1, got '{other}'"),
                        ))
                    }
                };
                define(&mut ids, &mut gates, tokens[1].text, GateKind::Const(value), vec![], line)?;
            }
            "gate" => {
                if !seen_inputs {
                    return Err(syntax(line, head.col, "gate line before inputs line"));
                }
                // gate <id> = KIND <operands...>
                if tokens.len() < 4 || tokens[2].text != "=" {
                    return Err(syntax(line, head.col, "expected 'gate <id> = <kind> <operands>'"));
                }
                let kind_tok = &tokens[3];
                let mut operands = Vec::new();
                for t in &tokens[4..] {
                    let node = *ids.get(t.text).ok_or_else(|| ParseError::UndefinedId {
                        line,
                        id: t.text.to_string(),
                    })?;
                    operands.push(node);
                }
                let kind = parse_kind(kind_tok.text, operands.len(), line, kind_tok.col)?;
                let expected = kind.fan_in();
                if operands.len() != expected {
                    return Err(ParseError::ArityMismatch {
                        line,
                        id: tokens[1].text.to_string(),
                        expected,
                        got: operands.len(),
                    });
                }
                define(&mut ids, &mut gates, tokens[1].text, kind, operands, line)?;
            }
            "outputs" => {
                if outputs.is_some() {
                    return Err(syntax(line, head.col, "duplicate outputs line"));
                }
                if tokens.len() < 2 {
                    return Err(syntax(line, head.col, "outputs line needs at least one id"));
                }
                let mut outs = Vec::new();
                for t in &tokens[1..] {
                    let node = *ids.get(t.text).ok_or_else(|| ParseError::UndefinedId {
                        line,
                        id: t.text.to_string(),
                    })?;
                    outs.push(node);
                }
                outputs = Some(outs);
            }
            other => {
                return Err(syntax(
                    line,
                    head.col,
                    format!("unknown directive '{other}'"),
                ))
            }
        }
    }

    let name = name.ok_or_else(|| syntax(1, 1, "missing circuit line"))?;
    let outputs = outputs.ok_or(ParseError::MissingOutputs)?;
    Ok(Circuit::new(name, input_count, gates, outputs)?)
}

fn parse_kind(
    text: &str,
    operand_count: usize,
    line: usize,
    col: usize,
) -> Result<GateKind, ParseError> {
    match text {
        "NOT" => Ok(GateKind::Not),
        "AND" => Ok(GateKind::And),
        "OR" => Ok(GateKind::Or),
        "XOR" => Ok(GateKind::Xor),
        "MAJ3" => Ok(GateKind::Maj3),
        _ => {
            if let Some(rest) = text.strip_prefix("CUSTOM:") {
                let (name, hex) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line, col, "expected CUSTOM:<name>:<hexTable>"))?;
                // the operand list fixes the arity; the hex length must agree
                if !(1..=4).contains(&operand_count) {
                    return Err(syntax(
                        line,
                        col,
                        format!("custom gate arity {operand_count} outside 1..=4"),
                    ));
                }
                let table = TruthTable::from_hex(operand_count, hex)
                    .map_err(|e| syntax(line, col, format!("bad hex table: {e}")))?;
                Ok(GateKind::Custom(CustomGate {
                    name: name.to_string(),
                    table,
                }))
            } else {
                Err(ParseError::UnknownGateKind {
                    line,
                    kind: text.to_string(),
                })
            }
        }
    }
}

pub fn print_netlist(c: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "circuit {}", c.name()).unwrap();
    let input_ids = crate::circuit::input_id_strings(c);
    writeln!(out, "inputs {}", input_ids.join(" ")).unwrap();
    for gate in c.gates() {
        match &gate.kind {
            GateKind::Input(_) => {}
            GateKind::Const(v) => {
                writeln!(out, "const {} = {}", gate.id, *v as u8).unwrap();
            }
            kind => {
                write!(out, "gate {} = {kind}", gate.id).unwrap();
                for &op in &gate.operands {
                    write!(out, " {}", c.gate(op).id).unwrap();
                }
                out.push('\n');
            }
        }
    }
    let outs: Vec<&str> = c.outputs().iter().map(|&o| c.gate(o).id.as_str()).collect();
    writeln!(out, "outputs {}", outs.join(" ")).unwrap();
    out
}
