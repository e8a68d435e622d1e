//! The majority-tree construction: covering a collection of k-bit subsets
//! by a 3-way recursion whose pieces overlap pairwise, combined with
//! hazard-free majorities, with identical subtrees shared through interval
//! memoization.

use super::mux::{majority3_hazard_free, speculative_fixed_set};
use super::SynthError;
use crate::circuit::{builder_like, Circuit, CircuitBuilder, NodeId};
use std::collections::{BTreeSet, HashMap, HashSet};

/// Cap on the union size a base case will speculate over.
pub const MAX_BASE_UNION: usize = 20;
/// Cap on the number of subsets `k_hazard_free` will enumerate.
pub const MAX_SUBSETS: u128 = 10_000;

/// An ordered collection of position subsets, each of size at most `k`.
/// Construction canonicalizes: sets are sorted internally, the list is
/// sorted, duplicates are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetCollection {
    k: usize,
    sets: Vec<Vec<usize>>,
}

impl SubsetCollection {
    pub fn new(k: usize, sets: Vec<Vec<usize>>) -> Result<Self, SynthError> {
        let mut canonical: Vec<Vec<usize>> = sets
            .into_iter()
            .map(|s| {
                let set: BTreeSet<usize> = s.into_iter().collect();
                set.into_iter().collect::<Vec<usize>>()
            })
            .collect();
        canonical.sort();
        canonical.dedup();
        if canonical.is_empty() {
            return Err(SynthError::EmptyCollection);
        }
        for s in &canonical {
            if s.len() > k {
                return Err(SynthError::SetLargerThanK(s.len(), k));
            }
            if s.contains(&0) {
                return Err(SynthError::PositionOutOfRange(0, usize::MAX));
            }
        }
        Ok(Self { k, sets: canonical })
    }

    /// All k-element subsets of `1..=n` in lexicographic order.
    pub fn all_k_subsets(n: usize, k: usize) -> Result<Self, SynthError> {
        if k > n {
            return Err(SynthError::KTooLarge(k, n));
        }
        let count = binomial(n, k);
        if count > MAX_SUBSETS {
            return Err(SynthError::TooManySubsets(count, MAX_SUBSETS));
        }
        let mut sets = Vec::with_capacity(count as usize);
        let mut current: Vec<usize> = (1..=k).collect();
        loop {
            sets.push(current.clone());
            // advance the combination
            let mut i = k;
            loop {
                if i == 0 {
                    return Self::new(k.max(1), sets);
                }
                i -= 1;
                if current[i] < n - (k - 1 - i) {
                    current[i] += 1;
                    for j in i + 1..k {
                        current[j] = current[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Disjoint, ascending, half-open index intervals — the identity of a
/// recursive subproblem over the canonically sorted collection.
type Intervals = Vec<(u64, u64)>;

fn total(iv: &Intervals) -> u64 {
    iv.iter().map(|(a, b)| b - a).sum()
}

fn take_first(iv: &Intervals, mut amount: u64) -> Intervals {
    let mut out = Vec::new();
    for &(a, b) in iv {
        if amount == 0 {
            break;
        }
        let take = (b - a).min(amount);
        out.push((a, a + take));
        amount -= take;
    }
    out
}

fn take_last(iv: &Intervals, mut amount: u64) -> Intervals {
    let mut out = Vec::new();
    for &(a, b) in iv.iter().rev() {
        if amount == 0 {
            break;
        }
        let take = (b - a).min(amount);
        out.push((b - take, b));
        amount -= take;
    }
    out.reverse();
    out
}

fn merge(mut iv: Intervals) -> Intervals {
    iv.sort_unstable();
    let mut out: Intervals = Vec::with_capacity(iv.len());
    for (a, b) in iv {
        if a == b {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.1 == a => last.1 = b,
            _ => out.push((a, b)),
        }
    }
    out
}

/// The three overlapping children: the first two thirds, the last two
/// thirds, and the outer thirds. Every element lands in exactly two.
fn children(iv: &Intervals) -> [Intervals; 3] {
    let t = total(iv);
    let a = take_first(iv, 2 * t / 3);
    let b = take_last(iv, t - t / 3);
    let c = merge(
        take_first(iv, t / 3)
            .into_iter()
            .chain(take_last(iv, t - 2 * t / 3))
            .collect(),
    );
    [merge(a), merge(b), c]
}

/// Builds a circuit whose output matches the hazard-free extension of `c`
/// whenever the set of unstable input positions is contained in one of the
/// collection's subsets.
///
/// Subproblems are keyed by the index intervals of the canonically sorted
/// collection they cover; identical subtrees are built once and fanned
/// out, so the reported gate count reflects sharing. Base cases (at most
/// two subsets) speculate over the union of their sets.
pub fn k_hazard_free_collection(
    c: &Circuit,
    collection: &SubsetCollection,
) -> Result<Circuit, SynthError> {
    if c.output_count() != 1 {
        return Err(SynthError::MultiOutput(c.output_count()));
    }
    let mut b = builder_like(c);
    let mut memo: HashMap<Intervals, NodeId> = HashMap::new();
    let root: Intervals = vec![(0, collection.len() as u64)];
    let out = build_rec(&mut b, c, collection, &root, &mut memo)?;
    b.output(out);
    Ok(b.build())
}

fn build_rec(
    b: &mut CircuitBuilder,
    c: &Circuit,
    collection: &SubsetCollection,
    iv: &Intervals,
    memo: &mut HashMap<Intervals, NodeId>,
) -> Result<NodeId, SynthError> {
    if let Some(&node) = memo.get(iv) {
        return Ok(node);
    }
    let t = total(iv);
    let node = if t <= 2 {
        let mut union: BTreeSet<usize> = BTreeSet::new();
        for &(lo, hi) in iv {
            for idx in lo..hi {
                union.extend(collection.sets()[idx as usize].iter().copied());
            }
        }
        if union.len() > MAX_BASE_UNION {
            return Err(SynthError::BaseUnionTooLarge(union.len(), MAX_BASE_UNION));
        }
        let positions: Vec<usize> = union.into_iter().collect();
        let spec = speculative_fixed_set(c, &positions)?;
        let operands: Vec<NodeId> = (1..=c.input_count()).map(|p| b.input(p)).collect();
        b.inline(&spec, &operands)[0]
    } else {
        let [ia, ib, ic] = children(iv);
        let na = build_rec(b, c, collection, &ia, memo)?;
        let nb = build_rec(b, c, collection, &ib, memo)?;
        let nc = build_rec(b, c, collection, &ic, memo)?;
        b.inline(&majority3_hazard_free(), &[na, nb, nc])[0]
    };
    memo.insert(iv.clone(), node);
    Ok(node)
}

/// Removes all k-bit hazards: covers every k-element position subset, in
/// lexicographic order, with the majority-tree construction. `k = 0`
/// returns the circuit unchanged.
pub fn k_hazard_free(c: &Circuit, k: usize) -> Result<Circuit, SynthError> {
    if c.output_count() != 1 {
        return Err(SynthError::MultiOutput(c.output_count()));
    }
    if k == 0 {
        return Ok(c.clone());
    }
    if 2 * k > MAX_BASE_UNION {
        return Err(SynthError::BaseUnionTooLarge(2 * k, MAX_BASE_UNION));
    }
    let collection = SubsetCollection::all_k_subsets(c.input_count(), k)?;
    k_hazard_free_collection(c, &collection)
}

/// Distinct recursive subproblems at each depth `0..=depth_cap` of the
/// 3-way recursion on `t` ordered subsets, subproblems identified by the
/// index intervals they cover. Base cases (two or fewer subsets) stop
/// splitting.
pub fn subproblem_census(t: u64, depth_cap: usize) -> Vec<u64> {
    let mut counts = Vec::with_capacity(depth_cap + 1);
    let mut level: HashSet<Intervals> = HashSet::new();
    if t > 0 {
        level.insert(vec![(0, t)]);
    }
    counts.push(level.len() as u64);
    for _ in 1..=depth_cap {
        let mut next: HashSet<Intervals> = HashSet::new();
        for state in &level {
            if total(state) >= 3 {
                for child in children(state) {
                    next.insert(child);
                }
            }
        }
        counts.push(next.len() as u64);
        level = next;
    }
    counts
}

/// Number of majority circuits the memoized construction instantiates for
/// a collection of `t` subsets: the count of distinct internal subproblems
/// over the whole recursion.
pub fn majority_nodes_built(t: u64) -> u64 {
    let mut seen: HashSet<Intervals> = HashSet::new();
    let mut stack: Vec<Intervals> = Vec::new();
    if t > 0 {
        stack.push(vec![(0, t)]);
    }
    let mut internal = 0u64;
    while let Some(state) = stack.pop() {
        if !seen.insert(state.clone()) {
            continue;
        }
        if total(&state) >= 3 {
            internal += 1;
            for child in children(&state) {
                stack.push(child);
            }
        }
    }
    internal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(20, 10), 184_756);
    }

    #[test]
    fn all_k_subsets_is_lexicographic() {
        let c = SubsetCollection::all_k_subsets(4, 2).unwrap();
        assert_eq!(
            c.sets(),
            &[
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
    }

    #[test]
    fn collection_canonicalizes() {
        let c = SubsetCollection::new(2, vec![vec![3, 1], vec![1, 3], vec![2]]).unwrap();
        assert_eq!(c.sets(), &[vec![1, 3], vec![2]]);
        assert!(SubsetCollection::new(1, vec![vec![1, 2]]).is_err());
        assert!(SubsetCollection::new(1, vec![]).is_err());
    }

    #[test]
    fn census_small_depths() {
        let counts = subproblem_census(27, 3);
        assert_eq!(counts, vec![1, 3, 9, 25]);
    }

    #[test]
    fn census_matches_explicit_set_enumeration() {
        // oracle: simulate with explicit index tuples
        fn oracle(t: u64, depth_cap: usize) -> Vec<u64> {
            type State = Vec<u64>;
            fn kids(s: &State) -> [State; 3] {
                let t = s.len() as u64;
                let a = s[..(2 * t / 3) as usize].to_vec();
                let b = s[(t / 3) as usize..].to_vec();
                let mut c = s[..(t / 3) as usize].to_vec();
                c.extend_from_slice(&s[(2 * t / 3) as usize..]);
                [a, b, c]
            }
            let mut level: HashSet<State> = HashSet::new();
            level.insert((0..t).collect());
            let mut counts = vec![1u64];
            for _ in 1..=depth_cap {
                let mut next = HashSet::new();
                for s in &level {
                    if s.len() >= 3 {
                        for ch in kids(s) {
                            next.insert(ch);
                        }
                    }
                }
                counts.push(next.len() as u64);
                level = next;
            }
            counts
        }
        for t in [1u64, 2, 3, 5, 9, 17, 27, 55, 81, 100] {
            assert_eq!(subproblem_census(t, 6), oracle(t, 6), "t = {t}");
        }
    }

    #[test]
    fn majority_nodes_built_base_cases() {
        assert_eq!(majority_nodes_built(1), 0);
        assert_eq!(majority_nodes_built(2), 0);
        assert_eq!(majority_nodes_built(3), 1);
    }

    #[test]
    fn guards_reject_oversized_requests() {
        use crate::circuit::CircuitBuilder;
        let mut b = CircuitBuilder::new("wide", 30);
        let (x, y) = (b.input(1), b.input(30));
        let g = b.and(x, y);
        b.output(g);
        let c = b.build();
        // C(30, 4) = 27405 subsets
        assert!(matches!(
            k_hazard_free(&c, 4),
            Err(SynthError::TooManySubsets(_, _))
        ));
        // a base union of 22 positions exceeds the speculation guard
        let sets = vec![
            (1..=11).collect::<Vec<usize>>(),
            (12..=22).collect::<Vec<usize>>(),
        ];
        let collection = SubsetCollection::new(11, sets).unwrap();
        assert!(matches!(
            k_hazard_free_collection(&c, &collection),
            Err(SynthError::BaseUnionTooLarge(22, _))
        ));
    }

    #[test]
    fn identity_wire_survives_the_construction() {
        use crate::circuit::CircuitBuilder;
        let mut b = CircuitBuilder::new("id", 2);
        let x = b.input(1);
        b.output(x);
        let c = b.build();
        let rebuilt = k_hazard_free(&c, 1).unwrap();
        assert_eq!(
            c.truth_table(0).unwrap(),
            rebuilt.truth_table(0).unwrap()
        );
    }
}
