//! Hazard search: exhaustive detection over the ternary input space,
//! fixed-position search, and witness normalization into the compact
//! maximal form.
//!
//! Searches partition the rank space into disjoint chunks executed in
//! parallel; results merge in enumeration order, so the reported witnesses
//! are deterministic regardless of thread scheduling.

use crate::circuit::Circuit;
use crate::ternary::{
    counter_bit_plane, extension_with, fill_word_planes, Evaluator, Tern, TernPlanes, TernWord,
    TernaryError, MAX_ENUM_INPUTS,
};
use rayon::prelude::*;
use thiserror::Error;

/// Cap on `n` for the fixed-position scan (2^(n-1) stable words).
pub const MAX_FIXED_INPUTS: usize = 24;
/// Absolute cap even under `force`: 3^n must stay a rank arithmetic fits.
pub const MAX_FORCED_INPUTS: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetectError {
    #[error(transparent)]
    Ternary(#[from] TernaryError),
    #[error("{inputs} inputs exceed the enumeration guard of {guard}; pass force to override")]
    GuardExceeded { inputs: usize, guard: usize },
    #[error("position {0} outside 1..={1}")]
    PositionOutOfRange(usize, usize),
    #[error("k = {0} exceeds the input count {1}")]
    KTooLarge(usize, usize),
    #[error("not a hazard witness: {0}")]
    NotAWitness(String),
}

/// What kind of hazard a witness certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    General,
    KBit(usize),
    Fixed(usize),
}

/// A ternary input on which the circuit outputs `u` although every
/// resolution agrees on `forced`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HazardWitness {
    pub input: TernWord,
    pub output: usize,
    pub forced: bool,
    pub kind: WitnessKind,
}

/// Search configuration for [`find_hazards`].
#[derive(Debug, Clone)]
pub struct DetectOptions {
    /// Restrict to inputs with at most this many unstable digits;
    /// `None` searches the whole ternary space.
    pub k_max: Option<usize>,
    /// Stop after this many witnesses.
    pub limit: usize,
    /// Lift the input-count enumeration guard.
    pub force: bool,
}

impl Default for DetectOptions {
    fn default() -> Self {
        Self {
            k_max: None,
            limit: usize::MAX,
            force: false,
        }
    }
}

const CHUNK_RANKS: u64 = 1 << 14;

/// Enumerates the ternary input space in the standard order and reports up
/// to `limit` hazard witnesses, `(rank, output)` ascending. An empty
/// result certifies hazard-freedom (k-bit-hazard-freedom when `k_max` is
/// set) at the searched scale.
pub fn find_hazards(c: &Circuit, options: &DetectOptions) -> Result<Vec<HazardWitness>, DetectError> {
    let n = c.input_count();
    if n > MAX_ENUM_INPUTS && !options.force {
        return Err(DetectError::GuardExceeded {
            inputs: n,
            guard: MAX_ENUM_INPUTS,
        });
    }
    if n > MAX_FORCED_INPUTS {
        return Err(DetectError::GuardExceeded {
            inputs: n,
            guard: MAX_FORCED_INPUTS,
        });
    }
    if let Some(k) = options.k_max {
        if k > n {
            return Err(DetectError::KTooLarge(k, n));
        }
    }
    if options.limit == 0 {
        return Ok(Vec::new());
    }
    let total = 3u64.pow(n as u32);
    let chunks = total.div_ceil(CHUNK_RANKS).max(1);
    // waves of chunks keep the merge order deterministic while letting a
    // satisfied limit stop the sweep early
    let wave = (rayon::current_num_threads() as u64 * 4).max(1);
    let mut out = Vec::new();
    let mut next_chunk = 0u64;
    while next_chunk < chunks && out.len() < options.limit {
        let wave_end = (next_chunk + wave).min(chunks);
        let found: Vec<Vec<HazardWitness>> = (next_chunk..wave_end)
            .into_par_iter()
            .map(|chunk| {
                let start = chunk * CHUNK_RANKS;
                let end = (start + CHUNK_RANKS).min(total);
                scan_range(c, start, end, options)
            })
            .collect();
        for mut part in found {
            out.append(&mut part);
        }
        next_chunk = wave_end;
    }
    out.truncate(options.limit);
    Ok(out)
}

fn scan_range(c: &Circuit, start: u64, end: u64, options: &DetectOptions) -> Vec<HazardWitness> {
    let n = c.input_count();
    let eval = Evaluator::new(c);
    let mut planes = vec![TernPlanes::default(); n];
    let mut nodes = Vec::new();
    let mut witnesses = Vec::new();

    let mut rank = start;
    while rank < end {
        let lanes = (end - rank).min(64);
        fill_word_planes(n, rank, lanes, &mut planes);
        eval.eval_batch(&planes, &mut nodes);
        let mask = if lanes == 64 { !0u64 } else { (1u64 << lanes) - 1 };
        let mut unstable_lanes = 0u64;
        for &o in c.outputs() {
            let p = nodes[o];
            unstable_lanes |= !(p.zero | p.one);
        }
        unstable_lanes &= mask;
        let mut rest = unstable_lanes;
        while rest != 0 {
            let lane = rest.trailing_zeros() as u64;
            rest &= rest - 1;
            let word = TernWord::from_rank(n, rank + lane);
            if let Some(k) = options.k_max {
                if word.unstable_count() > k {
                    continue;
                }
            }
            let unstable = word.unstable_positions();
            let extension = extension_with(&eval, &word, &unstable);
            for (k_out, &o) in c.outputs().iter().enumerate() {
                let circuit_value = nodes[o].lane(lane as usize);
                if circuit_value != Tern::U {
                    continue;
                }
                if let Some(forced) = extension[k_out].as_bool() {
                    witnesses.push(HazardWitness {
                        input: word.clone(),
                        output: k_out,
                        forced,
                        kind: options
                            .k_max
                            .map(WitnessKind::KBit)
                            .unwrap_or(WitnessKind::General),
                    });
                    if witnesses.len() >= options.limit {
                        return witnesses;
                    }
                }
            }
        }
        rank += lanes;
    }
    witnesses
}

/// First 1-bit hazard whose unstable digit sits exactly at `position`
/// (1-based), or `None`. Scans the `2^(n-1)` stable assignments of the
/// remaining positions in lexicographic order.
pub fn has_fixed_hazard(
    c: &Circuit,
    position: usize,
    force: bool,
) -> Result<Option<HazardWitness>, DetectError> {
    let n = c.input_count();
    if position == 0 || position > n {
        return Err(DetectError::PositionOutOfRange(position, n));
    }
    if n > MAX_FIXED_INPUTS && !force {
        return Err(DetectError::GuardExceeded {
            inputs: n,
            guard: MAX_FIXED_INPUTS,
        });
    }
    if n > MAX_FORCED_INPUTS {
        return Err(DetectError::GuardExceeded {
            inputs: n,
            guard: MAX_FORCED_INPUTS,
        });
    }
    let stable_positions: Vec<usize> = (1..=n).filter(|&p| p != position).collect();
    let m = stable_positions.len();
    let total = 1u64 << m;
    let chunks = total.div_ceil(CHUNK_RANKS).max(1);
    Ok((0..chunks)
        .into_par_iter()
        .find_map_first(|chunk| {
            let start = chunk * CHUNK_RANKS;
            let end = (start + CHUNK_RANKS).min(total);
            scan_fixed_range(c, position, &stable_positions, start, end)
        }))
}

fn scan_fixed_range(
    c: &Circuit,
    position: usize,
    stable_positions: &[usize],
    start: u64,
    end: u64,
) -> Option<HazardWitness> {
    let n = c.input_count();
    let m = stable_positions.len();
    let eval = Evaluator::new(c);
    let mut tern = vec![TernPlanes::default(); n];
    let mut bits0 = vec![0u64; n];
    let mut bits1 = vec![0u64; n];
    let mut nodes = Vec::new();

    let mut counter = start;
    while counter < end {
        let lanes = (end - counter).min(64);
        let block = counter / 64;
        debug_assert_eq!(counter % 64, 0);
        for (q, &p) in stable_positions.iter().enumerate() {
            // leftmost stable position is most significant
            let plane = counter_bit_plane(m - 1 - q, block);
            tern[p - 1] = TernPlanes {
                zero: !plane,
                one: plane,
            };
            bits0[p - 1] = plane;
            bits1[p - 1] = plane;
        }
        tern[position - 1] = TernPlanes::splat(Tern::U);
        bits0[position - 1] = 0;
        bits1[position - 1] = !0;

        eval.eval_batch(&tern, &mut nodes);
        let out0 = eval.eval_bool_batch(&bits0);
        let out1 = eval.eval_bool_batch(&bits1);
        let mask = if lanes == 64 { !0u64 } else { (1u64 << lanes) - 1 };

        let mut best: Option<(u64, usize, bool)> = None;
        for (k_out, &o) in c.outputs().iter().enumerate() {
            let p = nodes[o];
            let unstable = !(p.zero | p.one);
            let agree = !(out0[k_out] ^ out1[k_out]);
            let cand = unstable & agree & mask;
            if cand != 0 {
                let lane = cand.trailing_zeros() as u64;
                let forced = out0[k_out] >> lane & 1 == 1;
                if best.is_none_or(|(bl, bo, _)| (lane, k_out) < (bl, bo)) {
                    best = Some((lane, k_out, forced));
                }
            }
        }
        if let Some((lane, k_out, forced)) = best {
            let value = counter + lane;
            let mut digits = vec![Tern::U; n];
            for (q, &p) in stable_positions.iter().enumerate() {
                digits[p - 1] = Tern::from_bool(value >> (m - 1 - q) & 1 == 1);
            }
            return Some(HazardWitness {
                input: TernWord::new(digits),
                output: k_out,
                forced,
                kind: WitnessKind::Fixed(position),
            });
        }
        counter += lanes;
    }
    None
}

/// Re-checks a witness against the evaluator and the resolution oracle.
pub fn check_witness(c: &Circuit, w: &HazardWitness) -> Result<(), DetectError> {
    let value = crate::ternary::eval_ternary(c, &w.input)?;
    if w.output >= value.len() {
        return Err(DetectError::NotAWitness(format!(
            "output index {} out of range",
            w.output
        )));
    }
    if value[w.output] != Tern::U {
        return Err(DetectError::NotAWitness(format!(
            "circuit is stable at {}",
            w.input
        )));
    }
    let extension = crate::ternary::hazard_free_extension(c, &w.input)?;
    if extension[w.output] != Tern::from_bool(w.forced) {
        return Err(DetectError::NotAWitness(format!(
            "resolutions of {} do not force {}",
            w.input, w.forced as u8
        )));
    }
    match w.kind {
        WitnessKind::General => {}
        WitnessKind::KBit(k) => {
            if w.input.unstable_count() > k {
                return Err(DetectError::NotAWitness(format!(
                    "{} unstable digits exceed k = {k}",
                    w.input.unstable_count()
                )));
            }
        }
        WitnessKind::Fixed(p) => {
            if w.input.unstable_positions() != vec![p] {
                return Err(DetectError::NotAWitness(format!(
                    "unstable digits of {} not exactly at position {p}",
                    w.input
                )));
            }
        }
    }
    Ok(())
}

/// Greedily stabilizes unstable digits left to right while the input stays
/// a hazard, yielding a maximal witness: replacing its leftmost `u` by
/// either Boolean value gives a stable evaluation equal to the forced
/// value, which is the compact certificate shape.
///
/// Stabilizing never changes the forced value (resolutions only shrink),
/// so staying a hazard is just the circuit still evaluating to `u`.
pub fn normalize_witness(c: &Circuit, w: &HazardWitness) -> Result<HazardWitness, DetectError> {
    check_witness(c, w)?;
    let eval = Evaluator::new(c);
    let mut current = w.input.clone();
    for position in w.input.unstable_positions() {
        for candidate in [Tern::Zero, Tern::One] {
            let next = current.with_digit(position, candidate);
            if eval.eval(&next)?[w.output] == Tern::U {
                current = next;
                break;
            }
        }
    }
    Ok(HazardWitness {
        input: current,
        output: w.output,
        forced: w.forced,
        kind: WitnessKind::General,
    })
}
