//! Kleene three-valued circuit evaluation and the brute-force oracles.
//!
//! The value domain is `{0, u, 1}` with the definedness order: `u` below
//! both stable values, `0` and `1` incomparable. A gate outputs a stable
//! value exactly when every resolution of its unstable operands agrees;
//! XOR, MAJ3 and CUSTOM gates use the hazard-free extension of their local
//! truth table.
//!
//! Values are carried dual-rail as two bit planes (`zero`, `one`):
//! `0 -> (1,0)`, `1 -> (0,1)`, `u -> (0,0)`. Words pack into 64-bit lanes
//! so a circuit evaluates on 64 ternary words per pass, which is what makes
//! the exhaustive `3^n` sweeps cheap.
//!
//! Enumeration order over ternary words is lexicographic with digit order
//! `0 < u < 1`, leftmost digit most significant. Every "first witness"
//! guarantee in the toolkit refers to this order.

use crate::circuit::{Circuit, GateKind};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Unstable digits an enumeration-backed oracle will expand (2^24 resolutions).
pub const MAX_UNSTABLE: usize = 24;
/// Cap on `n` for full `3^n` sweeps without `force`.
pub const MAX_ENUM_INPUTS: usize = 16;
/// Cap on `n` for natural-function table checks.
pub const MAX_NATURAL_VARS: usize = 8;
/// Cap on `n` for materialized full ternary tables (3^n values).
pub const MAX_TERNARY_TABLE_VARS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TernaryError {
    #[error("word width {got} does not match input count {expected}")]
    WidthMismatch { expected: usize, got: usize },
    #[error("{0} unstable digits exceed the enumeration guard of {1}")]
    TooManyUnstable(usize, usize),
    #[error("output index {0} out of range ({1} outputs)")]
    OutputOutOfRange(usize, usize),
    #[error("{got} table entries, expected 3^{n}")]
    IncompleteTable { n: usize, got: usize },
    #[error("{0} inputs exceed the table-check guard of {1}")]
    TooManyInputs(usize, usize),
    #[error("invalid ternary digit '{0}' (want 0, 1 or u)")]
    BadDigit(char),
}

/// One Kleene value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tern {
    Zero,
    One,
    U,
}

impl Tern {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tern::One
        } else {
            Tern::Zero
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Tern::Zero => Some(false),
            Tern::One => Some(true),
            Tern::U => None,
        }
    }

    pub fn is_stable(self) -> bool {
        self != Tern::U
    }

    /// The definedness order: `u` lies below both stable values.
    pub fn leq(self, other: Tern) -> bool {
        self == Tern::U || self == other
    }

    pub fn to_char(self) -> char {
        match self {
            Tern::Zero => '0',
            Tern::One => '1',
            Tern::U => 'u',
        }
    }

    pub fn from_char(c: char) -> Result<Self, TernaryError> {
        match c {
            '0' => Ok(Tern::Zero),
            '1' => Ok(Tern::One),
            'u' | 'U' => Ok(Tern::U),
            other => Err(TernaryError::BadDigit(other)),
        }
    }

    /// Digit weight in the enumeration order `0 < u < 1`.
    pub(crate) fn trit(self) -> u64 {
        match self {
            Tern::Zero => 0,
            Tern::U => 1,
            Tern::One => 2,
        }
    }

    pub(crate) fn from_trit(t: u64) -> Self {
        match t {
            0 => Tern::Zero,
            1 => Tern::U,
            _ => Tern::One,
        }
    }
}

impl fmt::Display for Tern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A fixed-width word of Kleene values; text form over `{0,1,u}` with the
/// leftmost character at input 1.
///
/// ```
/// use hazardkit::ternary::TernWord;
/// let w: TernWord = "1u0".parse().unwrap();
/// assert_eq!(w.unstable_positions(), vec![2]);
/// assert!(w.leq(&"110".parse().unwrap()));
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernWord(Vec<Tern>);

impl TernWord {
    pub fn new(digits: Vec<Tern>) -> Self {
        Self(digits)
    }

    pub fn stable(bits: &[bool]) -> Self {
        Self(bits.iter().map(|&b| Tern::from_bool(b)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[Tern] {
        &self.0
    }

    /// 1-based position access.
    pub fn digit(&self, position: usize) -> Tern {
        self.0[position - 1]
    }

    /// 1-based positions carrying `u`, ascending.
    pub fn unstable_positions(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, d)| (*d == Tern::U).then_some(i + 1))
            .collect()
    }

    pub fn unstable_count(&self) -> usize {
        self.0.iter().filter(|d| **d == Tern::U).count()
    }

    pub fn is_stable(&self) -> bool {
        self.0.iter().all(|d| d.is_stable())
    }

    pub fn stable_bits(&self) -> Option<Vec<bool>> {
        self.0.iter().map(|d| d.as_bool()).collect()
    }

    /// Copy with the 1-based position replaced.
    pub fn with_digit(&self, position: usize, value: Tern) -> Self {
        let mut d = self.0.clone();
        d[position - 1] = value;
        Self(d)
    }

    /// Componentwise definedness order.
    pub fn leq(&self, other: &TernWord) -> bool {
        self.len() == other.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| a.leq(*b))
    }

    /// Rank in the module-standard enumeration order.
    pub fn rank(&self) -> u64 {
        self.0.iter().fold(0, |acc, d| acc * 3 + d.trit())
    }

    pub fn from_rank(n: usize, mut rank: u64) -> Self {
        let mut digits = vec![Tern::Zero; n];
        for i in (0..n).rev() {
            digits[i] = Tern::from_trit(rank % 3);
            rank /= 3;
        }
        Self(digits)
    }
}

impl FromStr for TernWord {
    type Err = TernaryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars().map(Tern::from_char).collect::<Result<_, _>>().map(Self)
    }
}

impl fmt::Display for TernWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// All `3^n` words in the enumeration order.
pub fn all_words(n: usize) -> impl Iterator<Item = TernWord> {
    (0..3u64.pow(n as u32)).map(move |r| TernWord::from_rank(n, r))
}

/// 64 ternary lanes of one signal, dual-rail.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct TernPlanes {
    pub zero: u64,
    pub one: u64,
}

impl TernPlanes {
    pub fn splat(t: Tern) -> Self {
        match t {
            Tern::Zero => Self { zero: !0, one: 0 },
            Tern::One => Self { zero: 0, one: !0 },
            Tern::U => Self { zero: 0, one: 0 },
        }
    }

    pub fn lane(&self, i: usize) -> Tern {
        match (self.zero >> i & 1, self.one >> i & 1) {
            (1, _) => Tern::Zero,
            (_, 1) => Tern::One,
            _ => Tern::U,
        }
    }

    pub fn set_lane(&mut self, i: usize, t: Tern) {
        match t {
            Tern::Zero => self.zero |= 1 << i,
            Tern::One => self.one |= 1 << i,
            Tern::U => {}
        }
    }
}

/// Reusable evaluation context for one circuit.
///
/// Construction precomputes the ternary lookup table of every CUSTOM gate
/// (the hazard-free extension of its local truth table over at most 3^4
/// operand combinations).
pub struct Evaluator<'c> {
    circuit: &'c Circuit,
    custom_luts: Vec<Option<Vec<Tern>>>,
}

impl<'c> Evaluator<'c> {
    pub fn new(circuit: &'c Circuit) -> Self {
        let custom_luts = circuit
            .gates()
            .iter()
            .map(|g| match &g.kind {
                GateKind::Custom(custom) => {
                    let arity = custom.table.vars();
                    let lut = all_words(arity)
                        .map(|w| custom.table.extension(&w))
                        .collect();
                    Some(lut)
                }
                _ => None,
            })
            .collect();
        Self {
            circuit,
            custom_luts,
        }
    }

    pub fn circuit(&self) -> &Circuit {
        self.circuit
    }

    /// Ternary evaluation of one word; one value per output.
    pub fn eval(&self, word: &TernWord) -> Result<Vec<Tern>, TernaryError> {
        let n = self.circuit.input_count();
        if word.len() != n {
            return Err(TernaryError::WidthMismatch {
                expected: n,
                got: word.len(),
            });
        }
        let inputs: Vec<TernPlanes> = word
            .digits()
            .iter()
            .map(|&d| TernPlanes::splat(d))
            .collect();
        let mut nodes = Vec::new();
        self.eval_batch(&inputs, &mut nodes);
        Ok(self
            .circuit
            .outputs()
            .iter()
            .map(|&o| nodes[o].lane(0))
            .collect())
    }

    /// Boolean evaluation; inputs must be stable.
    pub fn eval_bool(&self, bits: &[bool]) -> Result<Vec<bool>, TernaryError> {
        let n = self.circuit.input_count();
        if bits.len() != n {
            return Err(TernaryError::WidthMismatch {
                expected: n,
                got: bits.len(),
            });
        }
        let planes: Vec<u64> = bits.iter().map(|&b| if b { !0 } else { 0 }).collect();
        let out = self.eval_bool_batch(&planes);
        Ok(self
            .circuit
            .outputs()
            .iter()
            .enumerate()
            .map(|(k, _)| out[k] & 1 == 1)
            .collect())
    }

    /// Boolean values of every node on one stable word.
    pub fn eval_bool_nodes(&self, bits: &[bool]) -> Result<Vec<bool>, TernaryError> {
        let n = self.circuit.input_count();
        if bits.len() != n {
            return Err(TernaryError::WidthMismatch {
                expected: n,
                got: bits.len(),
            });
        }
        let planes: Vec<u64> = bits.iter().map(|&b| if b { !0 } else { 0 }).collect();
        let nodes = self.eval_bool_batch_nodes(&planes);
        Ok(nodes.iter().map(|&v| v & 1 == 1).collect())
    }

    /// Evaluates 64 ternary lanes at once. `input_planes[i]` carries input
    /// index `i+1`; `nodes` is resized to hold the planes of every gate.
    pub(crate) fn eval_batch(&self, input_planes: &[TernPlanes], nodes: &mut Vec<TernPlanes>) {
        let gates = self.circuit.gates();
        nodes.clear();
        nodes.resize(gates.len(), TernPlanes::default());
        for (pos, gate) in gates.iter().enumerate() {
            let v = match &gate.kind {
                GateKind::Input(i) => input_planes[*i - 1],
                GateKind::Const(b) => TernPlanes::splat(Tern::from_bool(*b)),
                GateKind::Not => {
                    let a = nodes[gate.operands[0]];
                    TernPlanes {
                        zero: a.one,
                        one: a.zero,
                    }
                }
                GateKind::And => {
                    let a = nodes[gate.operands[0]];
                    let b = nodes[gate.operands[1]];
                    TernPlanes {
                        zero: a.zero | b.zero,
                        one: a.one & b.one,
                    }
                }
                GateKind::Or => {
                    let a = nodes[gate.operands[0]];
                    let b = nodes[gate.operands[1]];
                    TernPlanes {
                        zero: a.zero & b.zero,
                        one: a.one | b.one,
                    }
                }
                GateKind::Xor => {
                    let a = nodes[gate.operands[0]];
                    let b = nodes[gate.operands[1]];
                    let both_stable = (a.zero | a.one) & (b.zero | b.one);
                    TernPlanes {
                        zero: both_stable & ((a.zero & b.zero) | (a.one & b.one)),
                        one: both_stable & ((a.zero & b.one) | (a.one & b.zero)),
                    }
                }
                GateKind::Maj3 => {
                    let a = nodes[gate.operands[0]];
                    let b = nodes[gate.operands[1]];
                    let c = nodes[gate.operands[2]];
                    TernPlanes {
                        zero: (a.zero & b.zero) | (a.zero & c.zero) | (b.zero & c.zero),
                        one: (a.one & b.one) | (a.one & c.one) | (b.one & c.one),
                    }
                }
                GateKind::Custom(_) => {
                    let lut = self.custom_luts[pos].as_ref().unwrap();
                    let ops: Vec<TernPlanes> =
                        gate.operands.iter().map(|&o| nodes[o]).collect();
                    let mut out = TernPlanes::default();
                    for lane in 0..64 {
                        let mut idx = 0u64;
                        for op in &ops {
                            idx = idx * 3 + op.lane(lane).trit();
                        }
                        out.set_lane(lane, lut[idx as usize]);
                    }
                    out
                }
            };
            nodes[pos] = v;
        }
    }

    /// Boolean 64-lane pass; returns one plane per output.
    pub(crate) fn eval_bool_batch(&self, input_planes: &[u64]) -> Vec<u64> {
        let nodes = self.eval_bool_batch_nodes(input_planes);
        self.circuit
            .outputs()
            .iter()
            .map(|&o| nodes[o])
            .collect()
    }

    pub(crate) fn eval_bool_batch_nodes(&self, input_planes: &[u64]) -> Vec<u64> {
        let gates = self.circuit.gates();
        let mut nodes = vec![0u64; gates.len()];
        for (pos, gate) in gates.iter().enumerate() {
            nodes[pos] = match &gate.kind {
                GateKind::Input(i) => input_planes[*i - 1],
                GateKind::Const(b) => {
                    if *b {
                        !0
                    } else {
                        0
                    }
                }
                GateKind::Not => !nodes[gate.operands[0]],
                GateKind::And => nodes[gate.operands[0]] & nodes[gate.operands[1]],
                GateKind::Or => nodes[gate.operands[0]] | nodes[gate.operands[1]],
                GateKind::Xor => nodes[gate.operands[0]] ^ nodes[gate.operands[1]],
                GateKind::Maj3 => {
                    let a = nodes[gate.operands[0]];
                    let b = nodes[gate.operands[1]];
                    let c = nodes[gate.operands[2]];
                    (a & b) | (a & c) | (b & c)
                }
                GateKind::Custom(custom) => {
                    let ops: Vec<u64> = gate.operands.iter().map(|&o| nodes[o]).collect();
                    let mut out = 0u64;
                    for lane in 0..64 {
                        let mut row = 0usize;
                        for op in &ops {
                            row = row << 1 | (op >> lane & 1) as usize;
                        }
                        if custom.table.get(row) {
                            out |= 1 << lane;
                        }
                    }
                    out
                }
            };
        }
        nodes
    }
}

/// Gate-by-gate Kleene evaluation, one value per output.
pub fn eval_ternary(c: &Circuit, word: &TernWord) -> Result<Vec<Tern>, TernaryError> {
    Evaluator::new(c).eval(word)
}

/// Plain Boolean evaluation on a stable word.
pub fn eval_bool(c: &Circuit, bits: &[bool]) -> Result<Vec<bool>, TernaryError> {
    Evaluator::new(c).eval_bool(bits)
}

/// Bit pattern of resolution counter bit `bit` across 64 consecutive
/// counter values starting at `block * 64`.
pub(crate) fn counter_bit_plane(bit: usize, block: u64) -> u64 {
    const PATTERNS: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    if bit < 6 {
        PATTERNS[bit]
    } else if block >> (bit - 6) & 1 == 1 {
        !0
    } else {
        0
    }
}

/// The hazard-free extension of the circuit's Boolean function, computed by
/// enumerating all `2^u` resolutions of `word`: each output is stable iff
/// every resolution evaluates to the same Boolean value.
///
/// This is the reference the gate-by-gate evaluation is measured against; a
/// hazard is exactly an input where [`eval_ternary`] says `u` but this says
/// stable.
pub fn hazard_free_extension(c: &Circuit, word: &TernWord) -> Result<Vec<Tern>, TernaryError> {
    hazard_free_extension_guarded(c, word, MAX_UNSTABLE)
}

pub(crate) fn hazard_free_extension_guarded(
    c: &Circuit,
    word: &TernWord,
    max_unstable: usize,
) -> Result<Vec<Tern>, TernaryError> {
    let n = c.input_count();
    if word.len() != n {
        return Err(TernaryError::WidthMismatch {
            expected: n,
            got: word.len(),
        });
    }
    let unstable = word.unstable_positions();
    if unstable.len() > max_unstable {
        return Err(TernaryError::TooManyUnstable(unstable.len(), max_unstable));
    }
    let eval = Evaluator::new(c);
    Ok(extension_with(&eval, word, &unstable))
}

/// Core resolution sweep; `unstable` must be `word.unstable_positions()`.
pub(crate) fn extension_with(
    eval: &Evaluator<'_>,
    word: &TernWord,
    unstable: &[usize],
) -> Vec<Tern> {
    let n = word.len();
    let m = eval.circuit().output_count();
    let u = unstable.len();
    let total: u64 = 1u64 << u;
    let mut base: Vec<u64> = word
        .digits()
        .iter()
        .map(|d| match d {
            Tern::One => !0u64,
            _ => 0,
        })
        .collect();
    debug_assert_eq!(base.len(), n);

    let mut all_one = vec![!0u64; m];
    let mut any_one = vec![0u64; m];
    let mut block = 0u64;
    while block * 64 < total {
        for (q, &pos) in unstable.iter().enumerate() {
            base[pos - 1] = counter_bit_plane(q, block);
        }
        let out = eval.eval_bool_batch(&base);
        let lanes = (total - block * 64).min(64);
        let mask = if lanes == 64 { !0u64 } else { (1u64 << lanes) - 1 };
        for k in 0..m {
            all_one[k] &= out[k] | !mask;
            any_one[k] |= out[k] & mask;
        }
        // stop as soon as every output has seen both values
        if all_one.iter().all(|&a| a != !0) && any_one.iter().all(|&a| a != 0) {
            return vec![Tern::U; m];
        }
        block += 1;
    }
    (0..m)
        .map(|k| {
            if all_one[k] == !0 {
                Tern::One
            } else if any_one[k] == 0 {
                Tern::Zero
            } else {
                Tern::U
            }
        })
        .collect()
}

/// The hazard derivative of one output: 1 iff destabilizing the positions
/// marked in `direction` can change the output away from its value at
/// `base`, decided by brute force over every sub-direction.
pub fn derivative_oracle(
    c: &Circuit,
    base: &[bool],
    direction: &[bool],
    output: usize,
) -> Result<bool, TernaryError> {
    let n = c.input_count();
    if base.len() != n || direction.len() != n {
        return Err(TernaryError::WidthMismatch {
            expected: n,
            got: if base.len() != n {
                base.len()
            } else {
                direction.len()
            },
        });
    }
    if output >= c.output_count() {
        return Err(TernaryError::OutputOutOfRange(output, c.output_count()));
    }
    let popcount = direction.iter().filter(|&&b| b).count();
    if popcount > MAX_UNSTABLE {
        return Err(TernaryError::TooManyUnstable(popcount, MAX_UNSTABLE));
    }
    let eval = Evaluator::new(c);
    let reference = eval.eval_bool(base)?[output];
    let flips: Vec<usize> = direction
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect();
    let mut flipped = base.to_vec();
    for mask in 1u64..1u64 << flips.len() {
        for (q, &i) in flips.iter().enumerate() {
            flipped[i] = base[i] ^ (mask >> q & 1 == 1);
        }
        if eval.eval_bool(&flipped)?[output] != reference {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The derivative of the natural function the circuit itself computes:
/// 1 iff the gate-by-gate ternary evaluation destabilizes at `base` with
/// the `direction`-marked positions made unstable.
///
/// This is the quantity the derivative-circuit transformation constructs.
/// It dominates [`derivative_oracle`] and agrees with it exactly when the
/// circuit evaluates hazard-free at the probed word: a hazard at
/// `base + u*direction` is precisely a point where the circuit
/// destabilizes although the function does not.
pub fn natural_derivative(
    c: &Circuit,
    base: &[bool],
    direction: &[bool],
    output: usize,
) -> Result<bool, TernaryError> {
    let n = c.input_count();
    if base.len() != n || direction.len() != n {
        return Err(TernaryError::WidthMismatch {
            expected: n,
            got: if base.len() != n {
                base.len()
            } else {
                direction.len()
            },
        });
    }
    if output >= c.output_count() {
        return Err(TernaryError::OutputOutOfRange(output, c.output_count()));
    }
    let word = TernWord::new(
        base.iter()
            .zip(direction)
            .map(|(&b, &d)| if d { Tern::U } else { Tern::from_bool(b) })
            .collect(),
    );
    Ok(eval_ternary(c, &word)?[output] == Tern::U)
}

/// Verdict of [`check_natural`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NaturalCheck {
    Ok,
    /// A stable input mapped to `u`.
    StableViolation { input: TernWord },
    /// `lower ⪯ upper` but the table values are not ordered.
    MonotoneViolation { lower: TernWord, upper: TernWord },
}

/// Checks that a complete ternary table (indexed by enumeration rank over
/// `3^n` words) preserves stable values and is monotone under the
/// definedness order — the two properties of circuit-computable functions.
pub fn check_natural(n: usize, table: &[Tern]) -> Result<NaturalCheck, TernaryError> {
    if n > MAX_NATURAL_VARS {
        return Err(TernaryError::TooManyInputs(n, MAX_NATURAL_VARS));
    }
    let expected = 3usize.pow(n as u32);
    if table.len() != expected {
        return Err(TernaryError::IncompleteTable { n, got: table.len() });
    }
    let weights: Vec<u64> = (0..n).map(|p| 3u64.pow((n - 1 - p) as u32)).collect();
    for rank in 0..expected as u64 {
        let word = TernWord::from_rank(n, rank);
        let value = table[rank as usize];
        if word.is_stable() && !value.is_stable() {
            return Ok(NaturalCheck::StableViolation { input: word });
        }
        // covering pairs: stabilize one u digit at a time
        for (p, digit) in word.digits().iter().enumerate() {
            if *digit != Tern::U {
                continue;
            }
            for stable in [Tern::Zero, Tern::One] {
                // a u digit has trit 1; 0 lowers the rank, 1 raises it
                let upper_rank = match stable {
                    Tern::Zero => rank - weights[p],
                    _ => rank + weights[p],
                };
                if !value.leq(table[upper_rank as usize]) {
                    let upper = word.with_digit(p + 1, stable);
                    return Ok(NaturalCheck::MonotoneViolation { lower: word, upper });
                }
            }
        }
    }
    Ok(NaturalCheck::Ok)
}

/// Complete ternary table of one output, indexed by enumeration rank.
pub fn ternary_table(c: &Circuit, output: usize) -> Result<Vec<Tern>, TernaryError> {
    let n = c.input_count();
    if n > MAX_TERNARY_TABLE_VARS {
        return Err(TernaryError::TooManyInputs(n, MAX_TERNARY_TABLE_VARS));
    }
    if output >= c.output_count() {
        return Err(TernaryError::OutputOutOfRange(output, c.output_count()));
    }
    let eval = Evaluator::new(c);
    let total = 3u64.pow(n as u32);
    let mut table = Vec::with_capacity(total as usize);
    let mut planes = vec![TernPlanes::default(); n];
    let mut nodes = Vec::new();
    let mut rank = 0u64;
    while rank < total {
        let lanes = (total - rank).min(64);
        fill_word_planes(n, rank, lanes, &mut planes);
        eval.eval_batch(&planes, &mut nodes);
        let out = nodes[c.outputs()[output]];
        for lane in 0..lanes as usize {
            table.push(out.lane(lane));
        }
        rank += lanes;
    }
    Ok(table)
}

/// Fills per-input planes for `lanes` consecutive enumeration ranks
/// starting at `rank0`.
pub(crate) fn fill_word_planes(
    n: usize,
    rank0: u64,
    lanes: u64,
    planes: &mut [TernPlanes],
) {
    for p in planes.iter_mut() {
        *p = TernPlanes::default();
    }
    let mut digits = vec![0u8; n];
    let mut r = rank0;
    for i in (0..n).rev() {
        digits[i] = (r % 3) as u8;
        r /= 3;
    }
    for lane in 0..lanes {
        for (p, &d) in digits.iter().enumerate() {
            planes[p].set_lane(lane as usize, Tern::from_trit(d as u64));
        }
        if lane + 1 < lanes {
            // odometer increment in base 3
            for i in (0..n).rev() {
                if digits[i] == 2 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;

    fn single_gate(kind: GateKind, arity: usize) -> Circuit {
        let mut b = CircuitBuilder::new("g", arity);
        let ops: Vec<_> = (1..=arity).map(|i| b.input(i)).collect();
        let g = b.add(kind, &ops);
        b.output(g);
        b.build()
    }

    #[test]
    fn kleene_gate_tables() {
        // the three reference tables: NOT, AND, OR over {0,u,1}
        let not = single_gate(GateKind::Not, 1);
        let and = single_gate(GateKind::And, 2);
        let or = single_gate(GateKind::Or, 2);
        let t = |s: &str| s.parse::<TernWord>().unwrap();

        let not_table = [("0", "1"), ("u", "u"), ("1", "0")];
        for (input, want) in not_table {
            assert_eq!(eval_ternary(&not, &t(input)).unwrap()[0].to_char().to_string(), want);
        }

        let and_table = [
            ("00", '0'), ("0u", '0'), ("01", '0'),
            ("u0", '0'), ("uu", 'u'), ("u1", 'u'),
            ("10", '0'), ("1u", 'u'), ("11", '1'),
        ];
        for (input, want) in and_table {
            assert_eq!(eval_ternary(&and, &t(input)).unwrap()[0].to_char(), want, "AND {input}");
        }

        let or_table = [
            ("00", '0'), ("0u", 'u'), ("01", '1'),
            ("u0", 'u'), ("uu", 'u'), ("u1", '1'),
            ("10", '1'), ("1u", '1'), ("11", '1'),
        ];
        for (input, want) in or_table {
            assert_eq!(eval_ternary(&or, &t(input)).unwrap()[0].to_char(), want, "OR {input}");
        }
    }

    #[test]
    fn xor_gate_goes_unstable_on_any_u() {
        let xor = single_gate(GateKind::Xor, 2);
        for (input, want) in [("0u", 'u'), ("u1", 'u'), ("uu", 'u'), ("01", '1'), ("11", '0')] {
            let w: TernWord = input.parse().unwrap();
            assert_eq!(eval_ternary(&xor, &w).unwrap()[0].to_char(), want);
        }
    }

    #[test]
    fn word_rank_round_trip() {
        for n in 0..5 {
            for (i, w) in all_words(n).enumerate() {
                assert_eq!(w.rank(), i as u64);
                assert_eq!(TernWord::from_rank(n, i as u64), w);
            }
        }
        // digit order 0 < u < 1, leftmost most significant
        let words: Vec<String> = all_words(2).map(|w| w.to_string()).collect();
        assert_eq!(
            words,
            ["00", "0u", "01", "u0", "uu", "u1", "10", "1u", "11"]
        );
    }

    #[test]
    fn extension_disagrees_with_circuit_on_hazard() {
        // (x AND s) OR (y AND NOT s): the classic hazardous multiplexer
        let mut b = CircuitBuilder::with_input_ids("mux", &["x", "y", "s"]);
        let (x, y, s) = (b.input(1), b.input(2), b.input(3));
        let a1 = b.and(x, s);
        let n1 = b.not(s);
        let a2 = b.and(y, n1);
        let o = b.or(a1, a2);
        b.output(o);
        let mux = b.build();

        let w: TernWord = "11u".parse().unwrap();
        assert_eq!(eval_ternary(&mux, &w).unwrap(), vec![Tern::U]);
        assert_eq!(hazard_free_extension(&mux, &w).unwrap(), vec![Tern::One]);

        // stable words agree with Boolean evaluation
        for bits in [[false, true, false], [true, false, true]] {
            let w = TernWord::stable(&bits);
            let tern = eval_ternary(&mux, &w).unwrap()[0];
            let boolean = eval_bool(&mux, &bits).unwrap()[0];
            assert_eq!(tern, Tern::from_bool(boolean));
        }
    }

    #[test]
    fn extension_of_xor_on_uu_is_unstable() {
        let xor = single_gate(GateKind::Xor, 2);
        let w: TernWord = "uu".parse().unwrap();
        assert_eq!(hazard_free_extension(&xor, &w).unwrap(), vec![Tern::U]);
    }

    #[test]
    fn derivative_oracle_on_or() {
        let or = single_gate(GateKind::Or, 2);
        let d = |x: [bool; 2], y: [bool; 2]| derivative_oracle(&or, &x, &y, 0).unwrap();
        assert!(d([false, false], [false, true]));
        assert!(!d([true, false], [false, true]));
        assert!(!d([false, false], [false, false]));
    }

    #[test]
    fn derivative_zero_direction_is_zero() {
        let mut b = CircuitBuilder::new("c", 3);
        let (p, q, r) = (b.input(1), b.input(2), b.input(3));
        let a = b.and(p, q);
        let o = b.or(a, r);
        b.output(o);
        let c = b.build();
        for bits in 0..8u32 {
            let x: Vec<bool> = (0..3).map(|i| bits >> (2 - i) & 1 == 1).collect();
            assert!(!derivative_oracle(&c, &x, &[false; 3], 0).unwrap());
        }
    }

    #[test]
    fn check_natural_accepts_circuit_tables() {
        let mut b = CircuitBuilder::new("c", 2);
        let (p, q) = (b.input(1), b.input(2));
        let np = b.not(p);
        let a = b.and(np, q);
        b.output(a);
        let c = b.build();
        let table = ternary_table(&c, 0).unwrap();
        assert_eq!(check_natural(2, &table).unwrap(), NaturalCheck::Ok);
    }

    #[test]
    fn check_natural_rejects_the_detector() {
        // f(u) = 1, f(0) = f(1) = 0 is not monotone, hence not computable
        let table = vec![Tern::Zero, Tern::One, Tern::Zero];
        match check_natural(1, &table).unwrap() {
            NaturalCheck::MonotoneViolation { lower, upper } => {
                assert_eq!(lower.to_string(), "u");
                assert!(upper.is_stable());
            }
            other => panic!("unexpected verdict {other:?}"),
        }
    }

    #[test]
    fn check_natural_accepts_constant_zero() {
        let table = vec![Tern::Zero; 27];
        assert_eq!(check_natural(3, &table).unwrap(), NaturalCheck::Ok);
    }

    #[test]
    fn width_mismatch_is_an_error() {
        let not = single_gate(GateKind::Not, 1);
        let w: TernWord = "01".parse().unwrap();
        assert!(matches!(
            eval_ternary(&not, &w),
            Err(TernaryError::WidthMismatch { .. })
        ));
    }
}
