//! Hazard queries as CNF formulas, exported as DIMACS for an external
//! solver, with model decoding back into verified witnesses.
//!
//! Each signal rides dual-rail: variable pair `(lo, hi)` with `lo` set when
//! the signal is stably 0 and `hi` when it is stably 1; both clear means
//! unstable. Gate semantics are clausal (Tseitin style) over the rails, so
//! rail propagation reproduces the gate-by-gate ternary evaluation. A
//! query instantiates three rail copies of the circuit: the word itself,
//! and the two words with the leftmost unstable digit replaced by 0 and
//! by 1. The formula asserts the first evaluates unstable while the copies
//! are stable and equal, which is satisfiable exactly when the
//! corresponding hazard exists (a maximal witness always satisfies it).
//!
//! Variable numbering: inputs first (lo then hi per position), then every
//! non-input gate in topological order (lo then hi), then auxiliaries.

use crate::circuit::{expand, Circuit, GateKind};
use crate::detect::{check_witness, DetectError, HazardWitness, WitnessKind};
use crate::ternary::{Tern, TernWord};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("hazard encoding needs a single-output circuit, got {0} outputs")]
    MultiOutput(usize),
    #[error("position {0} outside 1..={1}")]
    PositionOutOfRange(usize, usize),
    #[error("model does not decode to a hazard witness: {0}")]
    BadModel(String),
    #[error("clause {0} contains complementary literals")]
    Tautology(usize),
    #[error("literal {0} out of range for {1} variables")]
    LiteralOutOfRange(i32, usize),
}

/// Role of a CNF variable, kept alongside the formula and printed as
/// DIMACS comments so models can be decoded without the encoder state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarRole {
    /// Low rail of the input at this 1-based position.
    InputLo(usize),
    /// High rail of the input at this 1-based position.
    InputHi(usize),
    GateLo(String),
    GateHi(String),
    Aux,
}

impl std::fmt::Display for VarRole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VarRole::InputLo(p) => write!(f, "input-lo {p}"),
            VarRole::InputHi(p) => write!(f, "input-hi {p}"),
            VarRole::GateLo(id) => write!(f, "gate-lo {id}"),
            VarRole::GateHi(id) => write!(f, "gate-hi {id}"),
            VarRole::Aux => write!(f, "aux"),
        }
    }
}

/// Which hazard the formula asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HazardQuery {
    /// A 1-bit hazard with the unstable digit exactly at this position.
    Fixed(usize),
    /// A 1-bit hazard anywhere.
    OneBit,
    /// Any hazard, via the maximal-witness certificate.
    General,
}

#[derive(Debug, Clone)]
pub struct CnfFormula {
    pub variable_count: usize,
    pub clauses: Vec<Vec<i32>>,
    /// `meaning[v - 1]` is the role of variable `v`.
    pub meaning: Vec<VarRole>,
}

impl CnfFormula {
    /// Checks the structural invariants: literals in range, no clause with
    /// complementary literals.
    pub fn validate(&self) -> Result<(), CnfError> {
        for (i, clause) in self.clauses.iter().enumerate() {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > self.variable_count {
                    return Err(CnfError::LiteralOutOfRange(lit, self.variable_count));
                }
                if clause.contains(&-lit) {
                    return Err(CnfError::Tautology(i));
                }
            }
        }
        Ok(())
    }

    /// DIMACS text with `c meaning <var> <role>` comment lines.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        out.push_str("c hazard query encoding, dual-rail: lo = stable 0, hi = stable 1\n");
        out.push_str("c vars: inputs (lo, hi) per position, gates in order, then aux\n");
        for (v, role) in self.meaning.iter().enumerate() {
            writeln!(out, "c meaning {} {role}", v + 1).unwrap();
        }
        writeln!(out, "p cnf {} {}", self.variable_count, self.clauses.len()).unwrap();
        for clause in &self.clauses {
            for &lit in clause {
                write!(out, "{lit} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

struct Builder {
    meaning: Vec<VarRole>,
    clauses: Vec<Vec<i32>>,
}

impl Builder {
    fn var(&mut self, role: VarRole) -> i32 {
        self.meaning.push(role);
        self.meaning.len() as i32
    }

    fn clause(&mut self, lits: &[i32]) {
        self.clauses.push(lits.to_vec());
    }

    /// x <-> a AND b
    fn iff_and(&mut self, x: i32, a: i32, b: i32) {
        self.clause(&[-x, a]);
        self.clause(&[-x, b]);
        self.clause(&[-a, -b, x]);
    }

    /// x <-> a OR b
    fn iff_or(&mut self, x: i32, a: i32, b: i32) {
        self.clause(&[x, -a]);
        self.clause(&[x, -b]);
        self.clause(&[a, b, -x]);
    }

    /// x <-> a
    fn iff(&mut self, x: i32, a: i32) {
        self.clause(&[-x, a]);
        self.clause(&[x, -a]);
    }

    fn unit(&mut self, lit: i32) {
        self.clause(&[lit]);
    }
}

/// Rails of one circuit copy over the given input rails; emits the gate
/// clauses and returns the output rails. `role` labels freshly allocated
/// gate variables.
fn emit_copy(
    b: &mut Builder,
    c: &Circuit,
    input_rails: &[(i32, i32)],
    label_gates: bool,
) -> (i32, i32) {
    let mut rails: Vec<(i32, i32)> = Vec::with_capacity(c.gates().len());
    for gate in c.gates() {
        let rail = match &gate.kind {
            GateKind::Input(i) => input_rails[*i - 1],
            GateKind::Const(v) => {
                let (lo, hi) = alloc_gate_rails(b, gate, label_gates);
                b.unit(if *v { -lo } else { lo });
                b.unit(if *v { hi } else { -hi });
                (lo, hi)
            }
            GateKind::Not => {
                let (alo, ahi) = rails[gate.operands[0]];
                let (lo, hi) = alloc_gate_rails(b, gate, label_gates);
                b.iff(lo, ahi);
                b.iff(hi, alo);
                (lo, hi)
            }
            GateKind::And => {
                let (alo, ahi) = rails[gate.operands[0]];
                let (blo, bhi) = rails[gate.operands[1]];
                let (lo, hi) = alloc_gate_rails(b, gate, label_gates);
                b.iff_or(lo, alo, blo);
                b.iff_and(hi, ahi, bhi);
                (lo, hi)
            }
            GateKind::Or => {
                let (alo, ahi) = rails[gate.operands[0]];
                let (blo, bhi) = rails[gate.operands[1]];
                let (lo, hi) = alloc_gate_rails(b, gate, label_gates);
                b.iff_and(lo, alo, blo);
                b.iff_or(hi, ahi, bhi);
                (lo, hi)
            }
            _ => unreachable!("encoder runs on expanded circuits"),
        };
        rails.push(rail);
    }
    rails[c.outputs()[0]]
}

fn alloc_gate_rails(b: &mut Builder, gate: &crate::circuit::Gate, label: bool) -> (i32, i32) {
    if label {
        let lo = b.var(VarRole::GateLo(gate.id.clone()));
        let hi = b.var(VarRole::GateHi(gate.id.clone()));
        (lo, hi)
    } else {
        let lo = b.var(VarRole::Aux);
        let hi = b.var(VarRole::Aux);
        (lo, hi)
    }
}

/// Encodes "the circuit has a hazard of the queried kind" as CNF. The
/// formula is satisfiable iff the hazard exists, and any model decodes to
/// a valid witness via [`decode_model`]. XOR/MAJ3/CUSTOM gates are
/// expanded to the base gate set first, so gate-variable names refer to
/// the expanded circuit.
pub fn encode_hazard_cnf(c: &Circuit, query: HazardQuery) -> Result<CnfFormula, CnfError> {
    if c.output_count() != 1 {
        return Err(CnfError::MultiOutput(c.output_count()));
    }
    let n = c.input_count();
    if let HazardQuery::Fixed(p) = query {
        if p == 0 || p > n {
            return Err(CnfError::PositionOutOfRange(p, n));
        }
    }
    let c = expand(c);
    let mut b = Builder {
        meaning: Vec::new(),
        clauses: Vec::new(),
    };

    // canonical input rails
    let input_rails: Vec<(i32, i32)> = (1..=n)
        .map(|p| {
            let lo = b.var(VarRole::InputLo(p));
            let hi = b.var(VarRole::InputHi(p));
            (lo, hi)
        })
        .collect();
    for &(lo, hi) in &input_rails {
        b.clause(&[-lo, -hi]); // rails are mutually exclusive
    }

    // main ternary copy
    let (out_lo, out_hi) = emit_copy(&mut b, &c, &input_rails, true);

    // u_p <-> input p is unstable
    let unstable: Vec<i32> = input_rails
        .iter()
        .map(|&(lo, hi)| {
            let u = b.var(VarRole::Aux);
            b.clause(&[-u, -lo]);
            b.clause(&[-u, -hi]);
            b.clause(&[lo, hi, u]);
            u
        })
        .collect();

    // p_p <-> position p carries the leftmost unstable digit
    let leftmost: Vec<i32> = match query {
        HazardQuery::Fixed(position) => {
            for (p, &u) in unstable.iter().enumerate() {
                b.unit(if p + 1 == position { u } else { -u });
            }
            unstable.clone()
        }
        HazardQuery::OneBit => {
            b.clause(&unstable);
            for i in 0..n {
                for j in i + 1..n {
                    b.clause(&[-unstable[i], -unstable[j]]);
                }
            }
            unstable.clone()
        }
        HazardQuery::General => {
            b.clause(&unstable); // at least one unstable digit
            let mut selectors = Vec::with_capacity(n);
            let mut prefix_stable: Option<i32> = None; // "no u among 1..p"
            for (p, &u) in unstable.iter().enumerate() {
                let sel = match prefix_stable {
                    None => {
                        let sel = b.var(VarRole::Aux);
                        b.iff(sel, u);
                        sel
                    }
                    Some(s) => {
                        let sel = b.var(VarRole::Aux);
                        b.iff_and(sel, u, s);
                        sel
                    }
                };
                selectors.push(sel);
                if p + 1 < n {
                    let next = b.var(VarRole::Aux);
                    match prefix_stable {
                        None => b.iff(next, -u),
                        Some(s) => b.iff_and(next, s, -u),
                    }
                    prefix_stable = Some(next);
                }
            }
            selectors
        }
    };

    // the two stabilized copies: at the selected position the rails are
    // forced to 0 (copy0) or 1 (copy1); everywhere else they follow the
    // main word
    let copy_rails = |b: &mut Builder, to_one: bool| -> Vec<(i32, i32)> {
        input_rails
            .iter()
            .zip(&leftmost)
            .map(|(&(lo, hi), &sel)| {
                let clo = b.var(VarRole::Aux);
                let chi = b.var(VarRole::Aux);
                if to_one {
                    // clo <-> lo AND NOT sel ; chi <-> hi OR sel
                    b.clause(&[-clo, lo]);
                    b.clause(&[-clo, -sel]);
                    b.clause(&[-lo, sel, clo]);
                    b.iff_or(chi, hi, sel);
                } else {
                    b.iff_or(clo, lo, sel);
                    b.clause(&[-chi, hi]);
                    b.clause(&[-chi, -sel]);
                    b.clause(&[-hi, sel, chi]);
                }
                (clo, chi)
            })
            .collect()
    };
    let rails0 = copy_rails(&mut b, false);
    let rails1 = copy_rails(&mut b, true);
    let (out0_lo, out0_hi) = emit_copy(&mut b, &c, &rails0, false);
    let (out1_lo, out1_hi) = emit_copy(&mut b, &c, &rails1, false);

    // main output unstable; both stabilized copies stable and equal
    b.unit(-out_lo);
    b.unit(-out_hi);
    b.clause(&[out0_lo, out0_hi]);
    b.clause(&[out1_lo, out1_hi]);
    b.clause(&[-out0_hi, out1_hi]);
    b.clause(&[out0_hi, -out1_hi]);

    let formula = CnfFormula {
        variable_count: b.meaning.len(),
        clauses: b.clauses,
        meaning: b.meaning,
    };
    debug_assert!(formula.validate().is_ok());
    Ok(formula)
}

/// Extracts integer literals from solver output, ignoring any `v`/`s`
/// prefixes and status words; the terminating 0 is dropped.
pub fn parse_model(text: &str) -> Vec<i32> {
    text.split_whitespace()
        .filter_map(|tok| tok.parse::<i32>().ok())
        .filter(|&lit| lit != 0)
        .collect()
}

/// Decodes a satisfying assignment back into the witness it describes and
/// re-verifies it against the circuit. Unassigned rail variables default
/// to false.
pub fn decode_model(
    c: &Circuit,
    query: HazardQuery,
    model: &[i32],
) -> Result<HazardWitness, CnfError> {
    if c.output_count() != 1 {
        return Err(CnfError::MultiOutput(c.output_count()));
    }
    let n = c.input_count();
    let mut assignment = vec![false; 2 * n];
    for &lit in model {
        let v = lit.unsigned_abs() as usize;
        if v >= 1 && v <= 2 * n {
            assignment[v - 1] = lit > 0;
        }
    }
    let mut digits = Vec::with_capacity(n);
    for p in 0..n {
        let (lo, hi) = (assignment[2 * p], assignment[2 * p + 1]);
        digits.push(match (lo, hi) {
            (true, false) => Tern::Zero,
            (false, true) => Tern::One,
            (false, false) => Tern::U,
            (true, true) => {
                return Err(CnfError::BadModel(format!(
                    "both rails set for input {}",
                    p + 1
                )))
            }
        });
    }
    let input = TernWord::new(digits);
    let extension = crate::ternary::hazard_free_extension(c, &input)
        .map_err(|e| CnfError::BadModel(e.to_string()))?;
    let forced = extension[0]
        .as_bool()
        .ok_or_else(|| CnfError::BadModel(format!("resolutions of {input} disagree")))?;
    let kind = match query {
        HazardQuery::Fixed(p) => WitnessKind::Fixed(p),
        HazardQuery::OneBit => WitnessKind::KBit(1),
        HazardQuery::General => WitnessKind::General,
    };
    let witness = HazardWitness {
        input,
        output: 0,
        forced,
        kind,
    };
    check_witness(c, &witness).map_err(|e: DetectError| CnfError::BadModel(e.to_string()))?;
    Ok(witness)
}
