//! Hazard-free selection primitives: the recursive multiplexer tree, the
//! 3-input majority, and the speculative fixed-set construction.

use super::SynthError;
use crate::circuit::{builder_like, propagate_constants, Circuit, CircuitBuilder, Gate, GateKind, NodeId};

/// Largest selector count for the multiplexer generator and for
/// speculative position sets.
pub const MAX_MUX_SELECTORS: usize = 10;

/// One six-gate hazard-free 1-bit multiplexer: selects `a` when `s = 0`,
/// `b` when `s = 1`, with the consensus term `a AND b` keeping the output
/// stable while `s` is unstable and both data inputs agree.
pub(crate) fn mux1(b: &mut CircuitBuilder, a: NodeId, bb: NodeId, s: NodeId) -> NodeId {
    let a1 = b.and(bb, s);
    let n1 = b.not(s);
    let a2 = b.and(a, n1);
    let o1 = b.or(a1, a2);
    let a3 = b.and(a, bb);
    b.or(a3, o1)
}

fn mux_tree(b: &mut CircuitBuilder, data: &[NodeId], selectors: &[NodeId]) -> NodeId {
    match selectors.len() {
        0 => data[0],
        k => {
            let half = data.len() / 2;
            let low = mux_tree(b, &data[..half], &selectors[..k - 1]);
            let high = mux_tree(b, &data[half..], &selectors[..k - 1]);
            mux1(b, low, high, selectors[k - 1])
        }
    }
}

/// The recursive hazard-free multiplexer on `2^k` data inputs
/// (`x1..x2^k`) and `k` selectors (`s1..sk`, `sj` carrying weight
/// `2^(j-1)`). Data input `x[i+1]` is selected when the selectors encode
/// `i`; the size is exactly `6(2^k - 1)`.
pub fn hazard_free_mux(k: usize) -> Result<Circuit, SynthError> {
    if k == 0 || k > MAX_MUX_SELECTORS {
        return Err(SynthError::SelectorCountOutOfRange(k, MAX_MUX_SELECTORS));
    }
    let data_count = 1usize << k;
    let ids: Vec<String> = (1..=data_count)
        .map(|i| format!("x{i}"))
        .chain((1..=k).map(|j| format!("s{j}")))
        .collect();
    let refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
    let mut b = CircuitBuilder::with_input_ids(&format!("mux{k}"), &refs);
    let data: Vec<NodeId> = (1..=data_count).map(|i| b.input(i)).collect();
    let selectors: Vec<NodeId> = (1..=k).map(|j| b.input(data_count + j)).collect();
    let out = mux_tree(&mut b, &data, &selectors);
    b.output(out);
    Ok(b.build())
}

/// The five-gate hazard-free 3-input majority: the disjunction of the
/// pairwise conjunctions. Whenever two inputs share a stable value the
/// output is that value, regardless of the third.
pub fn majority3_hazard_free() -> Circuit {
    let mut b = CircuitBuilder::new("maj3", 3);
    let (x, y, z) = (b.input(1), b.input(2), b.input(3));
    let p01 = b.and(x, y);
    let p02 = b.and(x, z);
    let p12 = b.and(y, z);
    let o1 = b.or(p01, p02);
    let o2 = b.or(o1, p12);
    b.output(o2);
    b.build()
}

/// Replaces the INPUT gates at the given 1-based positions with constants.
/// The input count and the remaining indices are unchanged.
pub(crate) fn substitute_inputs(c: &Circuit, assignment: &[(usize, bool)]) -> Circuit {
    let gates = c
        .gates()
        .iter()
        .map(|g| match g.kind {
            GateKind::Input(i) => match assignment.iter().find(|(p, _)| *p == i) {
                Some(&(_, v)) => Gate {
                    id: g.id.clone(),
                    kind: GateKind::Const(v),
                    operands: vec![],
                },
                None => g.clone(),
            },
            _ => g.clone(),
        })
        .collect();
    Circuit::new(
        c.name().to_string(),
        c.input_count(),
        gates,
        c.outputs().to_vec(),
    )
    .expect("substitution preserves validity")
}

/// Speculation over a designated position set: all `2^k` completions of
/// the positions in `s` are evaluated by constant-substituted,
/// constant-propagated copies of `c`, and a hazard-free multiplexer driven
/// by the original bits at `s` selects among them.
///
/// The result computes the same Boolean function and matches the
/// hazard-free extension on every input whose unstable positions all lie
/// in `s`. Its size is strictly below `2^k (size + 6)` and its depth at
/// most `depth + 4k`. An empty set returns the circuit unchanged.
pub fn speculative_fixed_set(c: &Circuit, s: &[usize]) -> Result<Circuit, SynthError> {
    if c.output_count() != 1 {
        return Err(SynthError::MultiOutput(c.output_count()));
    }
    let mut positions: Vec<usize> = s.to_vec();
    positions.sort_unstable();
    positions.dedup();
    if positions.is_empty() {
        return Ok(c.clone());
    }
    if let Some(&bad) = positions.iter().find(|&&p| p == 0 || p > c.input_count()) {
        return Err(SynthError::PositionOutOfRange(bad, c.input_count()));
    }
    let k = positions.len();
    if k > MAX_MUX_SELECTORS {
        return Err(SynthError::SelectorCountOutOfRange(k, MAX_MUX_SELECTORS));
    }

    let mut b = builder_like(c);
    let mut data = Vec::with_capacity(1 << k);
    for i in 0..1u32 << k {
        // selector s_j (the j-th smallest position) carries weight 2^(j-1)
        let assignment: Vec<(usize, bool)> = positions
            .iter()
            .enumerate()
            .map(|(j, &p)| (p, i >> j & 1 == 1))
            .collect();
        let copy = propagate_constants(&substitute_inputs(c, &assignment));
        let operands: Vec<NodeId> = (1..=c.input_count()).map(|p| b.input(p)).collect();
        data.push(b.inline(&copy, &operands)[0]);
    }
    let selectors: Vec<NodeId> = positions.iter().map(|&p| b.input(p)).collect();
    let out = mux_tree(&mut b, &data, &selectors);
    b.output(out);
    Ok(b.build())
}
