//! Circuit data model: gate kinds, validation, size/depth accounting, and
//! structural rewrites (base-gate expansion, constant propagation).
//!
//! A [`Circuit`] is an ordered gate list in topological order: every operand
//! refers to an earlier list position, so circuits are acyclic by
//! construction. Inputs and constants are gates like any other but are free
//! for the size and depth accounting: size counts the computation gates
//! (NOT/AND/OR/XOR/MAJ3/CUSTOM cost 1 each), and depth counts computation
//! gates on the longest input-to-output path.

use crate::table::TruthTable;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Position of a gate in a circuit's gate list.
pub type NodeId = usize;

/// A gate with a truth-table-defined function, fan-in 1..=4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CustomGate {
    pub name: String,
    pub table: TruthTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GateKind {
    /// Primary input, 1-based position.
    Input(usize),
    Const(bool),
    Not,
    And,
    Or,
    Xor,
    Maj3,
    Custom(CustomGate),
}

impl GateKind {
    pub fn fan_in(&self) -> usize {
        match self {
            GateKind::Input(_) | GateKind::Const(_) => 0,
            GateKind::Not => 1,
            GateKind::And | GateKind::Or | GateKind::Xor => 2,
            GateKind::Maj3 => 3,
            GateKind::Custom(c) => c.table.vars(),
        }
    }

    /// Inputs and constants are free; everything else costs one gate.
    pub fn is_computation(&self) -> bool {
        !matches!(self, GateKind::Input(_) | GateKind::Const(_))
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::Input(i) => write!(f, "INPUT({i})"),
            GateKind::Const(b) => write!(f, "CONST({})", *b as u8),
            GateKind::Not => write!(f, "NOT"),
            GateKind::And => write!(f, "AND"),
            GateKind::Or => write!(f, "OR"),
            GateKind::Xor => write!(f, "XOR"),
            GateKind::Maj3 => write!(f, "MAJ3"),
            GateKind::Custom(c) => write!(f, "CUSTOM:{}:{}", c.name, c.table.to_hex()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gate {
    pub id: String,
    pub kind: GateKind,
    pub operands: Vec<NodeId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("gate '{0}' has an invalid id (want [A-Za-z_][A-Za-z0-9_]*)")]
    BadId(String),
    #[error("duplicate gate id '{0}'")]
    DuplicateId(String),
    #[error("gate '{id}' expects {expected} operands, got {got}")]
    ArityMismatch {
        id: String,
        expected: usize,
        got: usize,
    },
    #[error("gate '{id}' refers to a later or out-of-range position {operand}")]
    OperandOutOfOrder { id: String, operand: usize },
    #[error("input index {0} outside 1..={1}")]
    InputIndexOutOfRange(usize, usize),
    #[error("input index {0} declared more than once")]
    DuplicateInputIndex(usize),
    #[error("circuit has no outputs")]
    NoOutputs,
    #[error("output position {0} out of range")]
    OutputOutOfRange(usize),
    #[error("custom gate '{0}' has arity {1}, supported range is 1..=4")]
    CustomArity(String, usize),
}

/// Size and depth of a circuit under the free-inputs convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircuitStats {
    pub size: usize,
    pub depth: usize,
}

/// An immutable, validated combinational circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    name: String,
    input_count: usize,
    gates: Vec<Gate>,
    outputs: Vec<NodeId>,
}

pub(crate) fn valid_token(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Circuit {
    pub fn new(
        name: String,
        input_count: usize,
        gates: Vec<Gate>,
        outputs: Vec<NodeId>,
    ) -> Result<Self, CircuitError> {
        let mut ids = HashMap::new();
        let mut seen_inputs = vec![false; input_count];
        for (pos, gate) in gates.iter().enumerate() {
            if !valid_token(&gate.id) {
                return Err(CircuitError::BadId(gate.id.clone()));
            }
            if ids.insert(gate.id.clone(), pos).is_some() {
                return Err(CircuitError::DuplicateId(gate.id.clone()));
            }
            let expected = gate.kind.fan_in();
            if gate.operands.len() != expected {
                return Err(CircuitError::ArityMismatch {
                    id: gate.id.clone(),
                    expected,
                    got: gate.operands.len(),
                });
            }
            for &op in &gate.operands {
                if op >= pos {
                    return Err(CircuitError::OperandOutOfOrder {
                        id: gate.id.clone(),
                        operand: op,
                    });
                }
            }
            match &gate.kind {
                GateKind::Input(i) => {
                    if *i == 0 || *i > input_count {
                        return Err(CircuitError::InputIndexOutOfRange(*i, input_count));
                    }
                    if seen_inputs[*i - 1] {
                        return Err(CircuitError::DuplicateInputIndex(*i));
                    }
                    seen_inputs[*i - 1] = true;
                }
                GateKind::Custom(c) => {
                    let arity = c.table.vars();
                    if !(1..=4).contains(&arity) {
                        return Err(CircuitError::CustomArity(c.name.clone(), arity));
                    }
                    if !valid_token(&c.name) {
                        return Err(CircuitError::BadId(c.name.clone()));
                    }
                }
                _ => {}
            }
        }
        if outputs.is_empty() {
            return Err(CircuitError::NoOutputs);
        }
        for &o in &outputs {
            if o >= gates.len() {
                return Err(CircuitError::OutputOutOfRange(o));
            }
        }
        Ok(Self {
            name,
            input_count,
            gates,
            outputs,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn input_count(&self) -> usize {
        self.input_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    pub fn output_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn gate(&self, id: NodeId) -> &Gate {
        &self.gates[id]
    }

    pub fn find_gate(&self, id: &str) -> Option<NodeId> {
        self.gates.iter().position(|g| g.id == id)
    }

    /// Position of the INPUT gate with the given 1-based index, if declared.
    pub fn input_node(&self, index: usize) -> Option<NodeId> {
        self.gates
            .iter()
            .position(|g| g.kind == GateKind::Input(index))
    }

    /// `(index, position)` pairs of all INPUT gates, sorted by index.
    pub fn input_nodes(&self) -> Vec<(usize, NodeId)> {
        let mut v: Vec<(usize, NodeId)> = self
            .gates
            .iter()
            .enumerate()
            .filter_map(|(pos, g)| match g.kind {
                GateKind::Input(i) => Some((i, pos)),
                _ => None,
            })
            .collect();
        v.sort_unstable();
        v
    }

    pub fn stats(&self) -> CircuitStats {
        let mut depth = vec![0usize; self.gates.len()];
        for (pos, gate) in self.gates.iter().enumerate() {
            let operand_depth = gate.operands.iter().map(|&o| depth[o]).max().unwrap_or(0);
            depth[pos] = operand_depth + gate.kind.is_computation() as usize;
        }
        CircuitStats {
            size: self
                .gates
                .iter()
                .filter(|g| g.kind.is_computation())
                .count(),
            depth: self.outputs.iter().map(|&o| depth[o]).max().unwrap_or(0),
        }
    }

    /// True when every gate kind is in `kinds` (inputs and constants are
    /// always allowed).
    pub fn uses_only(&self, kinds: &[GateKind]) -> bool {
        self.gates.iter().all(|g| {
            !g.kind.is_computation() || kinds.iter().any(|k| k == &g.kind)
        })
    }

    pub fn is_not_free(&self) -> bool {
        self.gates.iter().all(|g| g.kind != GateKind::Not)
    }

    /// Tabulates one output over all 2^n Boolean inputs.
    pub fn truth_table(&self, output: usize) -> Result<TruthTable, crate::table::TableError> {
        let eval = crate::ternary::Evaluator::new(self);
        let n = self.input_count;
        if n > crate::table::MAX_TABLE_VARS {
            return Err(crate::table::TableError::TooManyVars(
                n,
                crate::table::MAX_TABLE_VARS,
            ));
        }
        let mut bits = Vec::with_capacity(1usize << n);
        let mut planes = vec![0u64; n];
        let rows = 1usize << n;
        let mut row = 0usize;
        while row < rows {
            let lanes = (rows - row).min(64);
            for (p, plane) in planes.iter_mut().enumerate() {
                let mut v = 0u64;
                for lane in 0..lanes {
                    if (row + lane) >> (n - 1 - p) & 1 == 1 {
                        v |= 1 << lane;
                    }
                }
                *plane = v;
            }
            let out = eval.eval_bool_batch(&planes);
            for lane in 0..lanes {
                bits.push(out[output] >> lane & 1 == 1);
            }
            row += lanes;
        }
        TruthTable::new(n, bits)
    }
}

/// Incremental construction of circuits in topological order.
///
/// The builder creates one INPUT gate per index up front, deduplicates
/// constants, and hands out fresh `g<n>` ids. Operands are node positions
/// returned by earlier calls, so the result is valid by construction.
pub struct CircuitBuilder {
    name: String,
    input_count: usize,
    gates: Vec<Gate>,
    used_ids: HashMap<String, NodeId>,
    outputs: Vec<NodeId>,
    const_cache: [Option<NodeId>; 2],
    next_auto: usize,
}

impl CircuitBuilder {
    /// Inputs are named `x1..xn`.
    pub fn new(name: &str, input_count: usize) -> Self {
        let ids: Vec<String> = (1..=input_count).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
        Self::with_input_ids(name, &refs)
    }

    pub fn with_input_ids(name: &str, input_ids: &[&str]) -> Self {
        let mut b = Self {
            name: name.to_string(),
            input_count: input_ids.len(),
            gates: Vec::new(),
            used_ids: HashMap::new(),
            outputs: Vec::new(),
            const_cache: [None, None],
            next_auto: 1,
        };
        for (i, id) in input_ids.iter().enumerate() {
            let id = b.fresh_id(id);
            b.push(id, GateKind::Input(i + 1), vec![]);
        }
        b
    }

    /// Returns `base` if unused, otherwise `base` with a numeric suffix.
    pub fn fresh_id(&self, base: &str) -> String {
        let base = if valid_token(base) {
            base.to_string()
        } else {
            format!("n{}", self.gates.len() + 1)
        };
        if !self.used_ids.contains_key(&base) {
            return base;
        }
        let mut k = 2usize;
        loop {
            let candidate = format!("{base}_{k}");
            if !self.used_ids.contains_key(&candidate) {
                return candidate;
            }
            k += 1;
        }
    }

    fn push(&mut self, id: String, kind: GateKind, operands: Vec<NodeId>) -> NodeId {
        debug_assert!(!self.used_ids.contains_key(&id), "id '{id}' already used");
        debug_assert_eq!(kind.fan_in(), operands.len());
        debug_assert!(operands.iter().all(|&o| o < self.gates.len()));
        let pos = self.gates.len();
        self.used_ids.insert(id.clone(), pos);
        self.gates.push(Gate { id, kind, operands });
        pos
    }

    /// Node of the 1-based input index. Panics on out-of-range.
    pub fn input(&self, index: usize) -> NodeId {
        assert!(index >= 1 && index <= self.input_count, "input {index} out of range");
        index - 1
    }

    pub fn input_count(&self) -> usize {
        self.input_count
    }

    pub fn add(&mut self, kind: GateKind, operands: &[NodeId]) -> NodeId {
        let id = loop {
            let candidate = format!("g{}", self.next_auto);
            self.next_auto += 1;
            if !self.used_ids.contains_key(&candidate) {
                break candidate;
            }
        };
        self.push(id, kind, operands.to_vec())
    }

    pub fn add_named(&mut self, id: &str, kind: GateKind, operands: &[NodeId]) -> NodeId {
        let id = self.fresh_id(id);
        self.push(id, kind, operands.to_vec())
    }

    pub fn constant(&mut self, value: bool) -> NodeId {
        if let Some(node) = self.const_cache[value as usize] {
            return node;
        }
        let id = self.fresh_id(if value { "c1" } else { "c0" });
        let node = self.push(id, GateKind::Const(value), vec![]);
        self.const_cache[value as usize] = Some(node);
        node
    }

    pub fn not(&mut self, a: NodeId) -> NodeId {
        self.add(GateKind::Not, &[a])
    }

    pub fn and(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.add(GateKind::And, &[a, b])
    }

    pub fn or(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.add(GateKind::Or, &[a, b])
    }

    pub fn xor(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.add(GateKind::Xor, &[a, b])
    }

    pub fn output(&mut self, node: NodeId) {
        assert!(node < self.gates.len());
        self.outputs.push(node);
    }

    pub fn node_id(&self, node: NodeId) -> &str {
        &self.gates[node].id
    }

    /// Splices a copy of `sub` into this builder. `operands[i]` supplies the
    /// node standing in for `sub`'s input index `i+1`; constants are
    /// deduplicated. Returns the nodes corresponding to `sub`'s outputs.
    pub fn inline(&mut self, sub: &Circuit, operands: &[NodeId]) -> Vec<NodeId> {
        assert_eq!(operands.len(), sub.input_count(), "operand count mismatch");
        let mut map = vec![usize::MAX; sub.gates().len()];
        for (pos, gate) in sub.gates().iter().enumerate() {
            map[pos] = match &gate.kind {
                GateKind::Input(i) => operands[*i - 1],
                GateKind::Const(b) => self.constant(*b),
                kind => {
                    let ops: Vec<NodeId> = gate.operands.iter().map(|&o| map[o]).collect();
                    self.add(kind.clone(), &ops)
                }
            };
        }
        sub.outputs().iter().map(|&o| map[o]).collect()
    }

    pub fn build(self) -> Circuit {
        Circuit::new(self.name, self.input_count, self.gates, self.outputs)
            .expect("builder produced an invalid circuit")
    }
}

/// Printable names for input indices 1..=n; absent ones get `x<i>`.
pub(crate) fn input_id_strings(c: &Circuit) -> Vec<String> {
    let mut ids: Vec<String> = (1..=c.input_count()).map(|i| format!("x{i}")).collect();
    for (index, pos) in c.input_nodes() {
        ids[index - 1] = c.gate(pos).id.clone();
    }
    ids
}

/// Builder seeded with the same name and input names as `c`.
pub(crate) fn builder_like(c: &Circuit) -> CircuitBuilder {
    let ids = input_id_strings(c);
    let refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
    CircuitBuilder::with_input_ids(c.name(), &refs)
}

/// Rewrites XOR, MAJ3 and CUSTOM gates into AND/OR/NOT.
///
/// XOR becomes `(a AND NOT b) OR (NOT a AND b)` (5 gates), MAJ3 the 5-gate
/// disjunction of pairwise conjunctions, and CUSTOM gates are replaced by
/// the prime-implicant circuit of their table, which reproduces the gate's
/// three-valued behavior exactly. Plain AND/OR/NOT gates keep their ids.
pub fn expand(c: &Circuit) -> Circuit {
    let mut b = builder_like(c);
    let mut map = vec![usize::MAX; c.gates().len()];
    for (pos, gate) in c.gates().iter().enumerate() {
        let ops: Vec<NodeId> = gate.operands.iter().map(|&o| map[o]).collect();
        map[pos] = match &gate.kind {
            GateKind::Input(i) => b.input(*i),
            GateKind::Const(v) => b.constant(*v),
            GateKind::Not | GateKind::And | GateKind::Or => {
                b.add_named(&gate.id, gate.kind.clone(), &ops)
            }
            GateKind::Xor => {
                let nb = b.not(ops[1]);
                let t1 = b.add(GateKind::And, &[ops[0], nb]);
                let na = b.not(ops[0]);
                let t2 = b.add(GateKind::And, &[na, ops[1]]);
                b.add_named(&gate.id, GateKind::Or, &[t1, t2])
            }
            GateKind::Maj3 => {
                let p01 = b.and(ops[0], ops[1]);
                let p02 = b.and(ops[0], ops[2]);
                let p12 = b.and(ops[1], ops[2]);
                let o1 = b.or(p01, p02);
                b.add_named(&gate.id, GateKind::Or, &[o1, p12])
            }
            GateKind::Custom(custom) => {
                let sub = crate::synth::huffman_hazard_free(&custom.table)
                    .expect("custom gate table within synthesis limits");
                b.inline(&sub, &ops)[0]
            }
        };
    }
    for &o in c.outputs() {
        let node = map[o];
        b.output(node);
    }
    b.build()
}

/// Folds constants to fixpoint and drops gates unreachable from the
/// outputs. Rules: `0 AND a = 0`, `1 AND a = a`, `0 OR a = a`,
/// `1 OR a = 1`, `NOT const`, the XOR/MAJ3 analogues. CUSTOM gates fold
/// only when every operand is constant.
pub fn propagate_constants(c: &Circuit) -> Circuit {
    enum Folded {
        Const(bool),
        Alias(NodeId),
        Gate(GateKind, Vec<NodeId>),
    }

    // first pass over original positions: what does each node become?
    let mut value: Vec<Option<bool>> = vec![None; c.gates().len()];
    let mut folded: Vec<Folded> = Vec::with_capacity(c.gates().len());
    for (pos, gate) in c.gates().iter().enumerate() {
        let ops = &gate.operands;
        let v = |o: NodeId| value[o];
        let f = match &gate.kind {
            GateKind::Input(_) => Folded::Gate(gate.kind.clone(), vec![]),
            GateKind::Const(b) => Folded::Const(*b),
            GateKind::Not => match v(ops[0]) {
                Some(b) => Folded::Const(!b),
                None => Folded::Gate(GateKind::Not, ops.clone()),
            },
            GateKind::And => match (v(ops[0]), v(ops[1])) {
                (Some(false), _) | (_, Some(false)) => Folded::Const(false),
                (Some(true), Some(true)) => Folded::Const(true),
                (Some(true), None) => Folded::Alias(ops[1]),
                (None, Some(true)) => Folded::Alias(ops[0]),
                (None, None) => Folded::Gate(GateKind::And, ops.clone()),
            },
            GateKind::Or => match (v(ops[0]), v(ops[1])) {
                (Some(true), _) | (_, Some(true)) => Folded::Const(true),
                (Some(false), Some(false)) => Folded::Const(false),
                (Some(false), None) => Folded::Alias(ops[1]),
                (None, Some(false)) => Folded::Alias(ops[0]),
                (None, None) => Folded::Gate(GateKind::Or, ops.clone()),
            },
            GateKind::Xor => match (v(ops[0]), v(ops[1])) {
                (Some(a), Some(b)) => Folded::Const(a ^ b),
                (Some(false), None) => Folded::Alias(ops[1]),
                (None, Some(false)) => Folded::Alias(ops[0]),
                (Some(true), None) => Folded::Gate(GateKind::Not, vec![ops[1]]),
                (None, Some(true)) => Folded::Gate(GateKind::Not, vec![ops[0]]),
                (None, None) => Folded::Gate(GateKind::Xor, ops.clone()),
            },
            GateKind::Maj3 => {
                let (a, bb, cc) = (v(ops[0]), v(ops[1]), v(ops[2]));
                let known: Vec<(usize, bool)> = [a, bb, cc]
                    .iter()
                    .enumerate()
                    .filter_map(|(i, x)| x.map(|b| (i, b)))
                    .collect();
                match known.len() {
                    3 => {
                        let ones = known.iter().filter(|(_, b)| *b).count();
                        Folded::Const(ones >= 2)
                    }
                    2 if known[0].1 == known[1].1 => Folded::Const(known[0].1),
                    2 => {
                        // one 0 and one 1: majority tracks the open operand
                        let open = (0..3).find(|i| ![known[0].0, known[1].0].contains(i)).unwrap();
                        Folded::Alias(ops[open])
                    }
                    1 => {
                        let rest: Vec<NodeId> = (0..3)
                            .filter(|i| *i != known[0].0)
                            .map(|i| ops[i])
                            .collect();
                        let kind = if known[0].1 { GateKind::Or } else { GateKind::And };
                        Folded::Gate(kind, rest)
                    }
                    _ => Folded::Gate(GateKind::Maj3, ops.clone()),
                }
            }
            GateKind::Custom(custom) => {
                let known: Option<Vec<bool>> = ops.iter().map(|&o| value[o]).collect();
                match known {
                    Some(word) => Folded::Const(custom.table.get_word(&word)),
                    None => Folded::Gate(gate.kind.clone(), ops.clone()),
                }
            }
        };
        if let Folded::Const(b) = f {
            value[pos] = Some(b);
        }
        if let Folded::Alias(target) = f {
            value[pos] = value[target];
        }
        folded.push(f);
    }

    // resolve alias chains to a representative original position
    let mut repr: Vec<NodeId> = (0..c.gates().len()).collect();
    for pos in 0..c.gates().len() {
        if let Folded::Alias(t) = folded[pos] {
            repr[pos] = repr[t];
        }
    }

    // reachability from outputs (inputs are always kept)
    let mut live = vec![false; c.gates().len()];
    let mut stack: Vec<NodeId> = c.outputs().iter().map(|&o| repr[o]).collect();
    while let Some(pos) = stack.pop() {
        if live[pos] {
            continue;
        }
        live[pos] = true;
        if let Folded::Gate(_, ops) = &folded[pos] {
            for &o in ops {
                stack.push(repr[o]);
            }
        }
    }

    let mut b = builder_like(c);
    let mut map: Vec<Option<NodeId>> = vec![None; c.gates().len()];
    for (pos, gate) in c.gates().iter().enumerate() {
        if let GateKind::Input(i) = gate.kind {
            map[pos] = Some(b.input(i));
            continue;
        }
        if !live[repr[pos]] {
            continue;
        }
        match &folded[pos] {
            Folded::Const(v) => map[pos] = Some(b.constant(*v)),
            Folded::Alias(t) => map[pos] = map[repr[*t]],
            Folded::Gate(kind, ops) => {
                if pos == repr[pos] && map[pos].is_none() {
                    let mapped: Vec<NodeId> =
                        ops.iter().map(|&o| map[repr[o]].expect("live operand")).collect();
                    map[pos] = Some(b.add_named(&gate.id, kind.clone(), &mapped));
                }
            }
        }
    }
    for &o in c.outputs() {
        let node = match &folded[o] {
            Folded::Const(v) => b.constant(*v),
            _ => map[repr[o]].expect("live output"),
        };
        b.output(node);
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mux_hazardous() -> Circuit {
        let mut b = CircuitBuilder::with_input_ids("mux", &["x", "y", "s"]);
        let (x, y, s) = (b.input(1), b.input(2), b.input(3));
        let a1 = b.and(x, s);
        let n1 = b.not(s);
        let a2 = b.and(y, n1);
        let o1 = b.or(a1, a2);
        b.output(o1);
        b.build()
    }

    #[test]
    fn stats_of_reference_circuits() {
        let mux = mux_hazardous();
        assert_eq!(mux.stats(), CircuitStats { size: 4, depth: 3 });

        // identity wire
        let mut b = CircuitBuilder::with_input_ids("id", &["x1"]);
        let x = b.input(1);
        b.output(x);
        let c = b.build();
        assert_eq!(c.stats(), CircuitStats { size: 0, depth: 0 });

        // single constant output
        let mut b = CircuitBuilder::new("zero", 0);
        let z = b.constant(false);
        b.output(z);
        let c = b.build();
        assert_eq!(c.stats(), CircuitStats { size: 0, depth: 0 });
    }

    #[test]
    fn validation_rejects_forward_reference() {
        let gates = vec![
            Gate {
                id: "a".into(),
                kind: GateKind::Not,
                operands: vec![1],
            },
            Gate {
                id: "x".into(),
                kind: GateKind::Input(1),
                operands: vec![],
            },
        ];
        let err = Circuit::new("bad".into(), 1, gates, vec![0]).unwrap_err();
        assert!(matches!(err, CircuitError::OperandOutOfOrder { .. }));
    }

    #[test]
    fn validation_rejects_every_non_topological_permutation() {
        // NOT(x) feeding an AND; any order placing a consumer before its
        // operand must be rejected.
        let mk = |order: &[usize]| {
            let template = [
                ("x", GateKind::Input(1), vec![]),
                ("n", GateKind::Not, vec![0usize]),
                ("a", GateKind::And, vec![0, 1]),
            ];
            let position_of = |orig: usize| order.iter().position(|&o| o == orig).unwrap();
            let gates: Vec<Gate> = order
                .iter()
                .map(|&o| {
                    let (id, kind, ops) = &template[o];
                    Gate {
                        id: (*id).into(),
                        kind: kind.clone(),
                        operands: ops.iter().map(|&p| position_of(p)).collect(),
                    }
                })
                .collect();
            let out = position_of(2);
            Circuit::new("p".into(), 1, gates, vec![out])
        };
        assert!(mk(&[0, 1, 2]).is_ok());
        for order in [
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ] {
            assert!(mk(&order).is_err(), "order {order:?} accepted");
        }
    }

    #[test]
    fn arity_and_duplicate_checks() {
        let gates = vec![
            Gate {
                id: "x".into(),
                kind: GateKind::Input(1),
                operands: vec![],
            },
            Gate {
                id: "g".into(),
                kind: GateKind::And,
                operands: vec![0],
            },
        ];
        assert!(matches!(
            Circuit::new("c".into(), 1, gates, vec![1]).unwrap_err(),
            CircuitError::ArityMismatch { .. }
        ));

        let gates = vec![
            Gate {
                id: "x".into(),
                kind: GateKind::Input(1),
                operands: vec![],
            },
            Gate {
                id: "x".into(),
                kind: GateKind::Not,
                operands: vec![0],
            },
        ];
        assert!(matches!(
            Circuit::new("c".into(), 1, gates, vec![1]).unwrap_err(),
            CircuitError::DuplicateId(_)
        ));
    }

    #[test]
    fn expand_preserves_function() {
        let mut b = CircuitBuilder::new("x3", 3);
        let (p, q, r) = (b.input(1), b.input(2), b.input(3));
        let x = b.xor(p, q);
        let m = b.add(GateKind::Maj3, &[x, q, r]);
        b.output(m);
        let c = b.build();
        let e = expand(&c);
        assert!(e.uses_only(&[GateKind::Not, GateKind::And, GateKind::Or]));
        assert_eq!(c.truth_table(0).unwrap(), e.truth_table(0).unwrap());
    }

    #[test]
    fn expand_keeps_plain_circuits_intact() {
        let mux = mux_hazardous();
        assert_eq!(expand(&mux), mux);
    }

    #[test]
    fn constant_propagation_folds_and_prunes() {
        let mut b = CircuitBuilder::new("cp", 2);
        let (x, y) = (b.input(1), b.input(2));
        let zero = b.constant(false);
        let a = b.and(x, zero); // folds to 0
        let o = b.or(a, y); // folds to y
        let n = b.not(o); // NOT y
        b.output(n);
        let c = b.build();
        let p = propagate_constants(&c);
        assert_eq!(p.stats().size, 1);
        assert_eq!(c.truth_table(0).unwrap(), p.truth_table(0).unwrap());
    }

    #[test]
    fn constant_propagation_handles_all_const_output() {
        let mut b = CircuitBuilder::new("cc", 1);
        let x = b.input(1);
        let nx = b.not(x);
        let a = b.and(x, nx);
        let one = b.constant(true);
        let o = b.or(a, one); // constant 1
        b.output(o);
        let c = b.build();
        let p = propagate_constants(&c);
        assert_eq!(p.stats().size, 0);
        assert_eq!(p.truth_table(0).unwrap().is_constant(), Some(true));
    }
}
