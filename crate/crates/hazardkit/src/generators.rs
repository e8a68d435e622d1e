//! Deterministic circuit generators for tests, benchmarks and examples.

use crate::circuit::{Circuit, CircuitBuilder, GateKind, NodeId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shape of a randomly generated circuit. Defaults: two-input AND/OR/NOT
/// soup with a single output.
#[derive(Debug, Clone)]
pub struct RandomCircuitConfig {
    pub inputs: usize,
    pub gates: usize,
    pub outputs: usize,
    /// AND/OR only (also forces f(0) = 0 and hazard-freedom).
    pub monotone: bool,
    pub allow_xor: bool,
    pub allow_const: bool,
    pub seed: u64,
}

impl Default for RandomCircuitConfig {
    fn default() -> Self {
        Self {
            inputs: 4,
            gates: 8,
            outputs: 1,
            monotone: false,
            allow_xor: false,
            allow_const: false,
            seed: 0,
        }
    }
}

/// A random DAG over the configured gate kinds; identical configurations
/// produce identical circuits.
pub fn random_circuit(config: &RandomCircuitConfig) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut b = CircuitBuilder::new(&format!("rand{}", config.seed), config.inputs);
    let mut pool: Vec<NodeId> = (1..=config.inputs).map(|i| b.input(i)).collect();
    if config.allow_const {
        pool.push(b.constant(false));
        pool.push(b.constant(true));
    }
    for _ in 0..config.gates {
        let pick = |rng: &mut ChaCha8Rng, pool: &[NodeId]| pool[rng.gen_range(0..pool.len())];
        let node = if config.monotone {
            let (x, y) = (pick(&mut rng, &pool), pick(&mut rng, &pool));
            if rng.gen_bool(0.5) {
                b.and(x, y)
            } else {
                b.or(x, y)
            }
        } else {
            let roll = rng.gen_range(0..if config.allow_xor { 9 } else { 8 });
            match roll {
                0..=2 => {
                    let (x, y) = (pick(&mut rng, &pool), pick(&mut rng, &pool));
                    b.and(x, y)
                }
                3..=5 => {
                    let (x, y) = (pick(&mut rng, &pool), pick(&mut rng, &pool));
                    b.or(x, y)
                }
                6 | 7 => {
                    let x = pick(&mut rng, &pool);
                    b.not(x)
                }
                _ => {
                    let (x, y) = (pick(&mut rng, &pool), pick(&mut rng, &pool));
                    b.xor(x, y)
                }
            }
        };
        pool.push(node);
    }
    // the last gates drive the outputs so the deep structure is used
    let total = pool.len();
    for k in 0..config.outputs {
        let node = pool[total - 1 - (k % total)];
        b.output(node);
    }
    b.build()
}

/// The parity-of-permutation-products map on an n-by-n Boolean matrix:
/// XOR over all permutations of the AND of the selected entries. Input
/// `x{i}{j}` is row i, column j, in row-major input order.
pub fn determinant_parity(n: usize) -> Circuit {
    assert!((1..=4).contains(&n), "matrix side {n} outside 1..=4");
    let ids: Vec<String> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| format!("x{i}{j}")))
        .collect();
    let refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
    let mut b = CircuitBuilder::with_input_ids(&format!("detpar{n}"), &refs);

    let mut perms = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permutations(&mut current, 0, &mut perms);
    perms.sort();

    let mut terms = Vec::with_capacity(perms.len());
    for sigma in &perms {
        let leaves: Vec<NodeId> = (0..n).map(|i| b.input(i * n + sigma[i] + 1)).collect();
        terms.push(crate::synth::balanced_tree(&mut b, &GateKind::And, &leaves));
    }
    let mut acc = terms[0];
    for &t in &terms[1..] {
        acc = b.xor(acc, t);
    }
    b.output(acc);
    b.build()
}

fn permutations(current: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == current.len() {
        out.push(current.clone());
        return;
    }
    for i in k..current.len() {
        current.swap(k, i);
        permutations(current, k + 1, out);
        current.swap(k, i);
    }
}

/// Whether some permutation survives in the matrix: the OR over all
/// permutations of the AND of the selected entries. `matrix` is row-major
/// with side `n`.
pub fn permanent_indicator(n: usize, matrix: &[bool]) -> bool {
    assert_eq!(matrix.len(), n * n);
    let mut perms = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permutations(&mut current, 0, &mut perms);
    perms
        .iter()
        .any(|sigma| (0..n).all(|i| matrix[i * n + sigma[i]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ternary::eval_bool;

    #[test]
    fn random_circuits_are_deterministic() {
        let cfg = RandomCircuitConfig {
            seed: 42,
            ..Default::default()
        };
        assert_eq!(random_circuit(&cfg), random_circuit(&cfg));
        let other = RandomCircuitConfig {
            seed: 43,
            ..Default::default()
        };
        assert_ne!(random_circuit(&cfg), random_circuit(&other));
    }

    #[test]
    fn monotone_circuits_have_no_inverters_and_vanish_at_zero() {
        for seed in 0..10 {
            let c = random_circuit(&RandomCircuitConfig {
                monotone: true,
                seed,
                ..Default::default()
            });
            assert!(c.is_not_free());
            assert!(!eval_bool(&c, &[false; 4]).unwrap()[0]);
        }
    }

    #[test]
    fn determinant_parity_two_by_two() {
        let c = determinant_parity(2);
        // x11 x22 XOR x12 x21
        let cases = [
            ([true, false, false, true], true),
            ([false, true, true, false], true),
            ([true, true, true, true], false),
            ([true, false, true, false], false),
        ];
        for (m, want) in cases {
            assert_eq!(eval_bool(&c, &m).unwrap()[0], want, "{m:?}");
        }
    }

    #[test]
    fn permanent_indicator_two_by_two() {
        assert!(permanent_indicator(2, &[true, false, false, true]));
        assert!(permanent_indicator(2, &[false, true, true, false]));
        assert!(!permanent_indicator(2, &[true, true, false, false]));
    }
}
