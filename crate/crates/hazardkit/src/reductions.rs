//! Satisfiability-to-hazard reduction gadgets, with a brute-force SAT
//! oracle to validate them end to end at desk scale.

use crate::circuit::{expand, Circuit, CircuitBuilder, NodeId};
use rayon::prelude::*;
use thiserror::Error;

/// Input-count cap for the brute-force SAT sweep.
pub const MAX_SAT_INPUTS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("operation needs a single-output circuit, got {0} outputs")]
    MultiOutput(usize),
    #[error("{0} inputs exceed the enumeration guard of {1}")]
    GuardExceeded(usize, usize),
    #[error("construction needs at least {0} inputs, got {1}")]
    TooFewInputs(usize, usize),
}

/// Which equivalence a produced gadget certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionClaim {
    /// The source is satisfiable iff the gadget has a fixed hazard at the
    /// distinguished position.
    SatIffFixedHazard,
    /// The (unsatisfiable) source has a fixed hazard at position 1 iff the
    /// gadget has any hazard; every gadget hazard is 1-bit.
    FixedHazardIffHazard,
}

#[derive(Debug, Clone)]
pub struct ReductionResult {
    pub circuit: Circuit,
    pub distinguished_position: Option<usize>,
    pub claim: ReductionClaim,
}

/// Appends a fresh input `x_{n+1}` and conjoins the source output with
/// `x_{n+1} AND NOT x_{n+1}`. The gadget is unsatisfiable by construction,
/// and it has a fixed hazard at the new position exactly when the source
/// is satisfiable.
pub fn sat_to_fixed_hazard(c: &Circuit) -> Result<ReductionResult, ReductionError> {
    if c.output_count() != 1 {
        return Err(ReductionError::MultiOutput(c.output_count()));
    }
    let n = c.input_count();
    let ids = crate::circuit::input_id_strings(c);
    let mut all_ids: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
    let fresh = format!("x{}", n + 1);
    all_ids.push(&fresh);
    let mut b = CircuitBuilder::with_input_ids(&format!("{}_sat", c.name()), &all_ids);
    let operands: Vec<NodeId> = (1..=n).map(|p| b.input(p)).collect();
    let source_out = b.inline(c, &operands)[0];
    let fresh_in = b.input(n + 1);
    let neg = b.not(fresh_in);
    let contradiction = b.and(fresh_in, neg);
    let out = b.and(source_out, contradiction);
    b.output(out);
    Ok(ReductionResult {
        circuit: b.build(),
        distinguished_position: Some(n + 1),
        claim: ReductionClaim::SatIffFixedHazard,
    })
}

/// For an unsatisfiable source on `n >= 2` inputs, XORs the output with
/// `x2 .. xn` (left-to-right chain, then expanded to AND/OR/NOT). The
/// gadget has a hazard iff the source has a fixed hazard at position 1,
/// and every hazard of the gadget is a 1-bit hazard.
///
/// Unsatisfiability of the source is a promise: it is checked by the
/// oracle in tests at small scale and trusted otherwise.
pub fn unsat_fixed_to_hazard(c: &Circuit) -> Result<ReductionResult, ReductionError> {
    if c.output_count() != 1 {
        return Err(ReductionError::MultiOutput(c.output_count()));
    }
    let n = c.input_count();
    if n < 2 {
        return Err(ReductionError::TooFewInputs(2, n));
    }
    let ids = crate::circuit::input_id_strings(c);
    let refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
    let mut b = CircuitBuilder::with_input_ids(&format!("{}_xorchain", c.name()), &refs);
    let operands: Vec<NodeId> = (1..=n).map(|p| b.input(p)).collect();
    let mut acc = b.inline(c, &operands)[0];
    for p in 2..=n {
        let input = b.input(p);
        acc = b.xor(acc, input);
    }
    b.output(acc);
    Ok(ReductionResult {
        circuit: expand(&b.build()),
        distinguished_position: Some(1),
        claim: ReductionClaim::FixedHazardIffHazard,
    })
}

/// First satisfying assignment in lexicographic order (input 1 most
/// significant), or `None` when the circuit is unsatisfiable.
pub fn brute_force_sat(c: &Circuit) -> Result<Option<Vec<bool>>, ReductionError> {
    if c.output_count() != 1 {
        return Err(ReductionError::MultiOutput(c.output_count()));
    }
    let n = c.input_count();
    if n > MAX_SAT_INPUTS {
        return Err(ReductionError::GuardExceeded(n, MAX_SAT_INPUTS));
    }
    let total = 1u64 << n;
    const CHUNK: u64 = 1 << 16;
    let chunks = total.div_ceil(CHUNK).max(1);
    Ok((0..chunks).into_par_iter().find_map_first(|chunk| {
        let eval = crate::ternary::Evaluator::new(c);
        let start = chunk * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut planes = vec![0u64; n];
        let mut value = start;
        while value < end {
            let lanes = (end - value).min(64);
            let block = value / 64;
            for (p, plane) in planes.iter_mut().enumerate() {
                *plane = crate::ternary::counter_bit_plane(n - 1 - p, block);
            }
            let mask = if lanes == 64 { !0u64 } else { (1u64 << lanes) - 1 };
            let hit = eval.eval_bool_batch(&planes)[0] & mask;
            if hit != 0 {
                let lane = hit.trailing_zeros() as u64;
                let found = value + lane;
                return Some((0..n).map(|p| found >> (n - 1 - p) & 1 == 1).collect());
            }
            value += lanes;
        }
        None
    }))
}
