//! Prime implicants by iterative cube merging, and the two-level
//! prime-implicant circuit, which is hazard-free at every ternary input.

use super::SynthError;
use crate::circuit::{Circuit, CircuitBuilder, GateKind, NodeId};
use crate::table::TruthTable;
use std::collections::{BTreeMap, HashMap, HashSet};

/// Variable cap for tabulation-based synthesis.
pub const MAX_SYNTH_VARS: usize = 12;

/// A partial assignment of input positions; unassigned positions are
/// don't-care. An implicant of `f` forces `f = 1` on every completion;
/// it is prime when removing any literal breaks that.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    literals: BTreeMap<usize, bool>,
}

impl Cube {
    pub fn new(literals: BTreeMap<usize, bool>) -> Self {
        Self { literals }
    }

    /// The empty cube covers everything (the constant-1 implicant).
    pub fn universe() -> Self {
        Self {
            literals: BTreeMap::new(),
        }
    }

    /// 1-based position to required value.
    pub fn literals(&self) -> &BTreeMap<usize, bool> {
        &self.literals
    }

    pub fn literal_count(&self) -> usize {
        self.literals.len()
    }

    pub fn covers(&self, word: &[bool]) -> bool {
        self.literals.iter().all(|(&p, &v)| word[p - 1] == v)
    }

    /// True when `f` is 1 on every completion of this cube.
    pub fn is_implicant(&self, table: &TruthTable) -> bool {
        let n = table.vars();
        let free: Vec<usize> = (1..=n).filter(|p| !self.literals.contains_key(p)).collect();
        let mut word = vec![false; n];
        for (&p, &v) in &self.literals {
            word[p - 1] = v;
        }
        for mask in 0u64..1 << free.len() {
            for (q, &p) in free.iter().enumerate() {
                word[p - 1] = mask >> q & 1 == 1;
            }
            if !table.get_word(&word) {
                return false;
            }
        }
        true
    }

    pub fn is_prime(&self, table: &TruthTable) -> bool {
        if !self.is_implicant(table) {
            return false;
        }
        self.literals.keys().all(|&p| {
            let mut weaker = self.literals.clone();
            weaker.remove(&p);
            !Cube::new(weaker).is_implicant(table)
        })
    }

    /// Pattern over the n positions: `0`, `1`, or `-` for don't-care.
    pub fn pattern(&self, n: usize) -> String {
        (1..=n)
            .map(|p| match self.literals.get(&p) {
                Some(true) => '1',
                Some(false) => '0',
                None => '-',
            })
            .collect()
    }
}

// packed cube: bit p-1 of `mask` set when position p is assigned, matching
// bit of `vals` carries the required value
type Packed = (u32, u32);

fn unpack(n: usize, (mask, vals): Packed) -> Cube {
    let literals = (1..=n)
        .filter(|p| mask >> (p - 1) & 1 == 1)
        .map(|p| (p, vals >> (p - 1) & 1 == 1))
        .collect();
    Cube::new(literals)
}

/// All prime implicants of the tabulated function, by the classic
/// tabulation method: start from the true rows, repeatedly merge cube
/// pairs differing in exactly one assigned value, and keep the cubes that
/// never merged. Output order is literal count ascending, then the
/// lexicographic order of the literal list.
pub fn prime_implicants(table: &TruthTable) -> Result<Vec<Cube>, SynthError> {
    let n = table.vars();
    if n > MAX_SYNTH_VARS {
        return Err(SynthError::TooManyVars(n, MAX_SYNTH_VARS));
    }
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut current: HashSet<Packed> = (0..table.len())
        .filter(|&row| table.get(row))
        .map(|row| {
            // row bit (n-1-p) is position p+1, cube bit p is position p+1
            let mut vals = 0u32;
            for p in 0..n {
                if row >> (n - 1 - p) & 1 == 1 {
                    vals |= 1 << p;
                }
            }
            (full, vals)
        })
        .collect();

    let mut primes: HashSet<Packed> = HashSet::new();
    while !current.is_empty() {
        let mut merged: HashSet<Packed> = HashSet::new();
        let mut next: HashSet<Packed> = HashSet::new();
        for &(mask, vals) in &current {
            for p in 0..n {
                let bit = 1u32 << p;
                if mask & bit == 0 {
                    continue;
                }
                if current.contains(&(mask, vals ^ bit)) {
                    merged.insert((mask, vals));
                    next.insert((mask & !bit, vals & !bit));
                }
            }
        }
        for &cube in &current {
            if !merged.contains(&cube) {
                primes.insert(cube);
            }
        }
        current = next;
    }

    let mut cubes: Vec<Cube> = primes.into_iter().map(|p| unpack(n, p)).collect();
    cubes.sort_by(|a, b| {
        a.literal_count()
            .cmp(&b.literal_count())
            .then_with(|| a.literals.iter().collect::<Vec<_>>().cmp(&b.literals.iter().collect()))
    });
    Ok(cubes)
}

/// Balanced binary tree of `kind` over `nodes` (left-heavy split).
pub(crate) fn balanced_tree(b: &mut CircuitBuilder, kind: &GateKind, nodes: &[NodeId]) -> NodeId {
    match nodes.len() {
        0 => panic!("empty tree"),
        1 => nodes[0],
        len => {
            let mid = len.div_ceil(2);
            let left = balanced_tree(b, kind, &nodes[..mid]);
            let right = balanced_tree(b, kind, &nodes[mid..]);
            b.add(kind.clone(), &[left, right])
        }
    }
}

/// The two-level circuit with one AND term per prime implicant, all of
/// them ORed together (balanced binary trees, input negations through
/// shared NOT gates). The result computes the tabulated function and is
/// hazard-free: on every ternary input it matches the hazard-free
/// extension of the function.
pub fn huffman_hazard_free(table: &TruthTable) -> Result<Circuit, SynthError> {
    let n = table.vars();
    let primes = prime_implicants(table)?;
    let mut b = CircuitBuilder::new("huffman", n);
    let mut negations: HashMap<usize, NodeId> = HashMap::new();

    if primes.is_empty() {
        let zero = b.constant(false);
        b.output(zero);
        return Ok(b.build());
    }
    if primes[0].literal_count() == 0 {
        let one = b.constant(true);
        b.output(one);
        return Ok(b.build());
    }

    let mut terms = Vec::with_capacity(primes.len());
    for cube in &primes {
        let mut leaves = Vec::with_capacity(cube.literal_count());
        for (&p, &v) in cube.literals() {
            let node = if v {
                b.input(p)
            } else {
                let input = b.input(p);
                *negations.entry(p).or_insert_with(|| b.add(GateKind::Not, &[input]))
            };
            leaves.push(node);
        }
        terms.push(balanced_tree(&mut b, &GateKind::And, &leaves));
    }
    let out = balanced_tree(&mut b, &GateKind::Or, &terms);
    b.output(out);
    Ok(b.build())
}
