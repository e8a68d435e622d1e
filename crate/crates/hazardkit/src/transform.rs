//! Circuit-to-circuit constructions: the derivative circuit, monotone
//! extraction at a fixed base point, and dual-rail doubling.
//!
//! The derivative circuit carries two parallel wires per original wire: a
//! value wire reproducing the original gate and a derivative wire telling
//! whether destabilizing the direction-marked inputs can destabilize that
//! gate. Fixing the base point turns every derivative subcircuit into a
//! monotone residual, which is the monotone-extraction pass. Dual-rail
//! doubling instead simulates the full ternary evaluation inside plain
//! Boolean logic, two rails per signal.

use crate::circuit::{builder_like, propagate_constants, Circuit, CircuitBuilder, GateKind, NodeId};
use crate::ternary::{Evaluator, Tern, TernWord, TernaryError};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("gate '{id}' has kind {kind} which this transform does not accept; expand first")]
    UnsupportedGate { id: String, kind: String },
    #[error("base word width {got} does not match input count {expected}")]
    WidthMismatch { expected: usize, got: usize },
    #[error("dual-rail code has odd length {0}")]
    OddRailLength(usize),
    #[error("invalid dual-rail pair (1,0) at position {0}")]
    InvalidRailPair(usize),
    #[error(transparent)]
    Ternary(#[from] TernaryError),
}

/// The value/derivative ids a source gate maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GatePair {
    pub value: String,
    pub derivative: String,
}

/// A circuit on `2n` inputs (`x1..xn` then `y1..yn`) and `2m` outputs
/// (value outputs first, then derivative outputs), with the per-gate
/// correspondence back to the source circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeCircuit {
    pub circuit: Circuit,
    pub pairing: HashMap<String, GatePair>,
}

fn reject_kind(gate: &crate::circuit::Gate) -> TransformError {
    TransformError::UnsupportedGate {
        id: gate.id.clone(),
        kind: gate.kind.to_string(),
    }
}

/// Builds the derivative circuit by replacing every gate with a fixed
/// subcircuit on the doubled wires:
///
/// * NOT: value NOT; the derivative is the operand's derivative wire.
/// * AND: value AND; derivative `x2 y1 OR (x1 y2 OR y1 y2)` (3 AND, 2 OR).
/// * OR: value OR; derivative `!x2 y1 OR (!x1 y2 OR y1 y2)` (2 NOT, 3 AND,
///   2 OR).
/// * XOR: value XOR; derivative `y1 OR y2`.
/// * constants get a constant-0 derivative; input `xi` pairs with `yi`.
///
/// On Boolean `(x, y)` the value outputs reproduce the source circuit and
/// the derivative outputs equal its hazard derivative in direction `y`.
pub fn derivative_circuit(c: &Circuit) -> Result<DerivativeCircuit, TransformError> {
    let n = c.input_count();
    let ids: Vec<String> = (1..=n)
        .map(|i| format!("x{i}"))
        .chain((1..=n).map(|i| format!("y{i}")))
        .collect();
    let refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
    let mut b = CircuitBuilder::with_input_ids(&format!("{}_deriv", c.name()), &refs);

    let mut value = vec![usize::MAX; c.gates().len()];
    let mut deriv = vec![usize::MAX; c.gates().len()];
    for (pos, gate) in c.gates().iter().enumerate() {
        let ops = &gate.operands;
        let (v, d) = match &gate.kind {
            GateKind::Input(i) => (b.input(*i), b.input(n + *i)),
            GateKind::Const(k) => (b.constant(*k), b.constant(false)),
            GateKind::Not => {
                let v = b.not(value[ops[0]]);
                (v, deriv[ops[0]])
            }
            GateKind::And => {
                let (v1, v2) = (value[ops[0]], value[ops[1]]);
                let (d1, d2) = (deriv[ops[0]], deriv[ops[1]]);
                let v = b.and(v1, v2);
                let and1 = b.and(v2, d1);
                let and2 = b.and(v1, d2);
                let and3 = b.and(d1, d2);
                let or1 = b.or(and2, and3);
                let d = b.or(and1, or1);
                (v, d)
            }
            GateKind::Or => {
                let (v1, v2) = (value[ops[0]], value[ops[1]]);
                let (d1, d2) = (deriv[ops[0]], deriv[ops[1]]);
                let v = b.or(v1, v2);
                let not1 = b.not(v1);
                let not2 = b.not(v2);
                let and1 = b.and(not2, d1);
                let and2 = b.and(not1, d2);
                let and3 = b.and(d1, d2);
                let or1 = b.or(and2, and3);
                let d = b.or(and1, or1);
                (v, d)
            }
            GateKind::Xor => {
                let v = b.xor(value[ops[0]], value[ops[1]]);
                let d = b.or(deriv[ops[0]], deriv[ops[1]]);
                (v, d)
            }
            GateKind::Maj3 | GateKind::Custom(_) => return Err(reject_kind(gate)),
        };
        value[pos] = v;
        deriv[pos] = d;
    }

    for &o in c.outputs() {
        let node = value[o];
        b.output(node);
    }
    for &o in c.outputs() {
        let node = deriv[o];
        b.output(node);
    }
    let pairing = c
        .gates()
        .iter()
        .enumerate()
        .map(|(pos, g)| {
            (
                g.id.clone(),
                GatePair {
                    value: b.node_id(value[pos]).to_string(),
                    derivative: b.node_id(deriv[pos]).to_string(),
                },
            )
        })
        .collect();
    Ok(DerivativeCircuit {
        circuit: b.build(),
        pairing,
    })
}

/// The monotone circuit computing the hazard derivative at the fixed base
/// point `x`: evaluate the source on `x`, collapse each derivative
/// subcircuit to its monotone residual on the derivative wires (a
/// constant, a wire, AND, or OR), then fold constants and drop dead gates.
///
/// The result is NOT-free, has at most as many gates as the source, and on
/// Boolean `y` computes whether destabilizing the `y`-marked positions of
/// `x` destabilizes each output.
pub fn monotone_extract(c: &Circuit, x: &[bool]) -> Result<Circuit, TransformError> {
    let n = c.input_count();
    if x.len() != n {
        return Err(TransformError::WidthMismatch {
            expected: n,
            got: x.len(),
        });
    }
    for gate in c.gates() {
        if matches!(gate.kind, GateKind::Maj3 | GateKind::Custom(_)) {
            return Err(reject_kind(gate));
        }
    }
    let values = Evaluator::new(c).eval_bool_nodes(x)?;

    let mut b = builder_like(c);
    let mut deriv = vec![usize::MAX; c.gates().len()];
    for (pos, gate) in c.gates().iter().enumerate() {
        let ops = &gate.operands;
        deriv[pos] = match &gate.kind {
            GateKind::Input(i) => b.input(*i),
            GateKind::Const(_) => b.constant(false),
            GateKind::Not => deriv[ops[0]],
            GateKind::And => {
                let (d1, d2) = (deriv[ops[0]], deriv[ops[1]]);
                match (values[ops[0]], values[ops[1]]) {
                    (false, false) => b.and(d1, d2),
                    (true, false) => d2,
                    (false, true) => d1,
                    (true, true) => b.or(d1, d2),
                }
            }
            GateKind::Or => {
                let (d1, d2) = (deriv[ops[0]], deriv[ops[1]]);
                match (values[ops[0]], values[ops[1]]) {
                    (true, true) => b.and(d1, d2),
                    (false, true) => d2,
                    (true, false) => d1,
                    (false, false) => b.or(d1, d2),
                }
            }
            GateKind::Xor => b.or(deriv[ops[0]], deriv[ops[1]]),
            GateKind::Maj3 | GateKind::Custom(_) => unreachable!(),
        };
    }
    for &o in c.outputs() {
        let node = deriv[o];
        b.output(node);
    }
    Ok(propagate_constants(&b.build()))
}

/// Doubles each gate and wire: stable values ride as `(b, b)`, the
/// unstable value as `(0, 1)`, and after each doubled NOT the two rails
/// twist. The resulting Boolean circuit on `2n` inputs and `2m` outputs
/// simulates the ternary evaluation of the source exactly, at exactly
/// twice its size.
pub fn dual_rail(c: &Circuit) -> Result<Circuit, TransformError> {
    for gate in c.gates() {
        if matches!(
            gate.kind,
            GateKind::Xor | GateKind::Maj3 | GateKind::Custom(_)
        ) {
            return Err(reject_kind(gate));
        }
    }
    let n = c.input_count();
    let source_ids = crate::circuit::input_id_strings(c);
    let mut b = {
        let mut ids = Vec::with_capacity(2 * n);
        for id in &source_ids {
            ids.push(format!("{id}_0"));
            ids.push(format!("{id}_1"));
        }
        let refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
        CircuitBuilder::with_input_ids(&format!("{}_dual", c.name()), &refs)
    };

    let mut rails: Vec<(NodeId, NodeId)> = vec![(usize::MAX, usize::MAX); c.gates().len()];
    for (pos, gate) in c.gates().iter().enumerate() {
        let ops = &gate.operands;
        rails[pos] = match &gate.kind {
            GateKind::Input(i) => (b.input(2 * i - 1), b.input(2 * i)),
            GateKind::Const(v) => (b.constant(*v), b.constant(*v)),
            GateKind::Not => {
                let (r0, r1) = rails[ops[0]];
                let n0 = b.not(r1);
                let n1 = b.not(r0);
                (n0, n1) // twist: rail 0 negates the operand's rail 1
            }
            GateKind::And => {
                let (a0, a1) = rails[ops[0]];
                let (b0, b1) = rails[ops[1]];
                (b.and(a0, b0), b.and(a1, b1))
            }
            GateKind::Or => {
                let (a0, a1) = rails[ops[0]];
                let (b0, b1) = rails[ops[1]];
                (b.or(a0, b0), b.or(a1, b1))
            }
            _ => unreachable!(),
        };
    }
    for &o in c.outputs() {
        let (r0, r1) = rails[o];
        b.output(r0);
        b.output(r1);
    }
    Ok(b.build())
}

/// Encodes a ternary word for the doubled circuit: `0 -> (0,0)`,
/// `1 -> (1,1)`, `u -> (0,1)`, rails interleaved per position.
pub fn dual_rail_encode(word: &TernWord) -> Vec<bool> {
    let mut bits = Vec::with_capacity(2 * word.len());
    for d in word.digits() {
        match d {
            Tern::Zero => bits.extend([false, false]),
            Tern::One => bits.extend([true, true]),
            Tern::U => bits.extend([false, true]),
        }
    }
    bits
}

/// Decodes rail pairs back to a ternary word; the pair `(1,0)` is not a
/// code point and is rejected.
pub fn dual_rail_decode(bits: &[bool]) -> Result<TernWord, TransformError> {
    if !bits.len().is_multiple_of(2) {
        return Err(TransformError::OddRailLength(bits.len()));
    }
    let mut digits = Vec::with_capacity(bits.len() / 2);
    for (i, pair) in bits.chunks(2).enumerate() {
        digits.push(match (pair[0], pair[1]) {
            (false, false) => Tern::Zero,
            (true, true) => Tern::One,
            (false, true) => Tern::U,
            (true, false) => return Err(TransformError::InvalidRailPair(i + 1)),
        });
    }
    Ok(TernWord::new(digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;
    use crate::ternary::{all_words, derivative_oracle, eval_bool, eval_ternary, natural_derivative};

    fn single(kind: GateKind, arity: usize) -> Circuit {
        let mut b = CircuitBuilder::new("g", arity);
        let ops: Vec<_> = (1..=arity).map(|i| b.input(i)).collect();
        let g = b.add(kind, &ops);
        b.output(g);
        b.build()
    }

    fn bits(v: u32, n: usize) -> Vec<bool> {
        (0..n).map(|i| v >> (n - 1 - i) & 1 == 1).collect()
    }

    #[test]
    fn derivative_of_or_matches_the_reference_table() {
        let d = derivative_circuit(&single(GateKind::Or, 2)).unwrap();
        let run = |x1: bool, x2: bool, y1: bool, y2: bool| {
            eval_bool(&d.circuit, &[x1, x2, y1, y2]).unwrap()
        };
        // (value, derivative) outputs; destabilizing both operands of a
        // stable-1 OR destabilizes it (both could drop to 0)
        assert_eq!(run(false, false, false, true), vec![false, true]);
        assert_eq!(run(true, false, false, true), vec![true, false]);
        assert_eq!(run(false, false, true, true), vec![false, true]);
        assert_eq!(run(true, true, true, true), vec![true, true]);
        assert_eq!(run(true, false, true, false), vec![true, true]);
    }

    #[test]
    fn derivative_of_not_is_the_direction_wire() {
        let d = derivative_circuit(&single(GateKind::Not, 1)).unwrap();
        for x in [false, true] {
            for y in [false, true] {
                let out = eval_bool(&d.circuit, &[x, y]).unwrap();
                assert_eq!(out, vec![!x, y]);
            }
        }
    }

    #[test]
    fn derivative_gate_counts_follow_the_replacements() {
        // AND: 1 value + 3 AND + 2 OR = 6; OR adds two NOTs
        assert_eq!(derivative_circuit(&single(GateKind::And, 2)).unwrap().circuit.stats().size, 6);
        assert_eq!(derivative_circuit(&single(GateKind::Or, 2)).unwrap().circuit.stats().size, 8);
        assert_eq!(derivative_circuit(&single(GateKind::Xor, 2)).unwrap().circuit.stats().size, 2);
    }

    #[test]
    fn derivative_circuit_matches_ternary_destabilization_exhaustively() {
        let mut b = CircuitBuilder::new("f", 3);
        let (p, q, r) = (b.input(1), b.input(2), b.input(3));
        let np = b.not(p);
        let a1 = b.and(np, q);
        let o1 = b.or(a1, r);
        let x1 = b.xor(o1, p);
        b.output(x1);
        let c = b.build();
        let d = derivative_circuit(&c).unwrap();
        for xv in 0..8u32 {
            let x = bits(xv, 3);
            for yv in 0..8u32 {
                let y = bits(yv, 3);
                let joint: Vec<bool> = x.iter().chain(y.iter()).copied().collect();
                let out = eval_bool(&d.circuit, &joint).unwrap();
                assert_eq!(out[0], eval_bool(&c, &x).unwrap()[0]);
                assert_eq!(
                    out[1],
                    natural_derivative(&c, &x, &y, 0).unwrap(),
                    "x={x:?} y={y:?}"
                );
            }
        }
    }

    #[test]
    fn circuit_derivative_dominates_the_function_derivative() {
        // the circuit computes XOR(OR(AND(NOT p, q), r), p); at
        // x = (0,1,0) destabilizing p leaves the function at 1 on both
        // resolutions, yet the gate-by-gate evaluation goes unstable, so
        // the two derivative notions split exactly here
        let mut b = CircuitBuilder::new("f", 3);
        let (p, q, r) = (b.input(1), b.input(2), b.input(3));
        let np = b.not(p);
        let a1 = b.and(np, q);
        let o1 = b.or(a1, r);
        let x1 = b.xor(o1, p);
        b.output(x1);
        let c = b.build();
        let x = [false, true, false];
        let y = [true, false, false];
        assert!(natural_derivative(&c, &x, &y, 0).unwrap());
        assert!(!derivative_oracle(&c, &x, &y, 0).unwrap());
        // dominance holds everywhere
        for xv in 0..8u32 {
            for yv in 0..8u32 {
                let x = bits(xv, 3);
                let y = bits(yv, 3);
                let df = derivative_oracle(&c, &x, &y, 0).unwrap();
                let dc = natural_derivative(&c, &x, &y, 0).unwrap();
                assert!(!df || dc);
            }
        }
    }

    #[test]
    fn pairing_maps_every_source_gate() {
        let c = single(GateKind::And, 2);
        let d = derivative_circuit(&c).unwrap();
        assert_eq!(d.pairing.len(), c.gates().len());
        for gate in c.gates() {
            assert!(d.pairing.contains_key(&gate.id));
        }
    }

    #[test]
    fn monotone_extract_is_not_free_and_small() {
        let mut b = CircuitBuilder::new("f", 3);
        let (p, q, r) = (b.input(1), b.input(2), b.input(3));
        let np = b.not(p);
        let a1 = b.and(np, q);
        let o1 = b.or(a1, r);
        b.output(o1);
        let c = b.build();
        for xv in 0..8u32 {
            let x = bits(xv, 3);
            let mono = monotone_extract(&c, &x).unwrap();
            assert!(mono.is_not_free());
            assert!(mono.stats().size <= c.stats().size);
            for yv in 0..8u32 {
                let y = bits(yv, 3);
                assert_eq!(
                    eval_bool(&mono, &y).unwrap()[0],
                    derivative_oracle(&c, &x, &y, 0).unwrap(),
                    "x={xv:03b} y={yv:03b}"
                );
            }
        }
    }

    #[test]
    fn monotone_extract_recovers_monotone_functions_at_zero() {
        // f = (x1 AND x2) OR x3 is monotone with f(0) = 0
        let mut b = CircuitBuilder::new("mono", 3);
        let (p, q, r) = (b.input(1), b.input(2), b.input(3));
        let a = b.and(p, q);
        let o = b.or(a, r);
        b.output(o);
        let c = b.build();
        let extracted = monotone_extract(&c, &[false, false, false]).unwrap();
        assert_eq!(
            c.truth_table(0).unwrap(),
            extracted.truth_table(0).unwrap()
        );
    }

    #[test]
    fn dual_rail_simulates_ternary_evaluation() {
        let mut b = CircuitBuilder::with_input_ids("mux", &["x", "y", "s"]);
        let (x, y, s) = (b.input(1), b.input(2), b.input(3));
        let a1 = b.and(x, s);
        let n1 = b.not(s);
        let a2 = b.and(y, n1);
        let o = b.or(a1, a2);
        b.output(o);
        let mux = b.build();

        let doubled = dual_rail(&mux).unwrap();
        assert_eq!(doubled.stats().size, 2 * mux.stats().size);
        assert_eq!(doubled.input_count(), 6);
        for w in all_words(3) {
            let encoded = dual_rail_encode(&w);
            let out = eval_bool(&doubled, &encoded).unwrap();
            let decoded = dual_rail_decode(&out).unwrap();
            assert_eq!(decoded.digits().to_vec(), eval_ternary(&mux, &w).unwrap(), "at {w}");
        }
        // the hazardous word decodes to u
        let w: TernWord = "11u".parse().unwrap();
        let out = eval_bool(&doubled, &dual_rail_encode(&w)).unwrap();
        assert_eq!(dual_rail_decode(&out).unwrap().digit(1), Tern::U);
    }

    #[test]
    fn not_twist_sends_unstable_to_unstable() {
        let c = single(GateKind::Not, 1);
        let doubled = dual_rail(&c).unwrap();
        // encode(0) = (0,0) -> (1,1) = encode(1)
        assert_eq!(eval_bool(&doubled, &[false, false]).unwrap(), vec![true, true]);
        // encode(u) = (0,1) -> (0,1)
        assert_eq!(eval_bool(&doubled, &[false, true]).unwrap(), vec![false, true]);
    }

    #[test]
    fn encode_decode_round_trip_and_rejection() {
        let w: TernWord = "01u".parse().unwrap();
        let bits = dual_rail_encode(&w);
        assert_eq!(bits, vec![false, false, true, true, false, true]);
        assert_eq!(dual_rail_decode(&bits).unwrap(), w);
        assert!(matches!(
            dual_rail_decode(&[true, false]),
            Err(TransformError::InvalidRailPair(1))
        ));
        assert!(matches!(
            dual_rail_decode(&[true]),
            Err(TransformError::OddRailLength(1))
        ));
    }

    #[test]
    fn transforms_reject_unexpanded_gates() {
        let c = single(GateKind::Maj3, 3);
        assert!(matches!(
            derivative_circuit(&c),
            Err(TransformError::UnsupportedGate { .. })
        ));
        let x = single(GateKind::Xor, 2);
        assert!(matches!(
            dual_rail(&x),
            Err(TransformError::UnsupportedGate { .. })
        ));
    }
}
