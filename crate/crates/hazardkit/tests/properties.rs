//! Cross-module invariants on the random corpus: naturality of circuit
//! evaluation, dominance against the resolution oracle, hazard-freedom of
//! monotone circuits, derivative laws, synthesis cross-checks, and format
//! round-trips.

mod common;

use common::{corpus, monotone_corpus};
use hazardkit::circuit::{expand, Circuit, CircuitBuilder};
use hazardkit::detect::{check_witness, find_hazards, DetectOptions};
use hazardkit::generators::{random_circuit, RandomCircuitConfig};
use hazardkit::netlist::{parse_netlist, print_netlist};
use hazardkit::synth::{
    huffman_hazard_free, k_hazard_free_collection, majority_nodes_built, prime_implicants,
    speculative_fixed_set, SubsetCollection,
};
use hazardkit::table::TruthTable;
use hazardkit::ternary::{
    all_words, check_natural, derivative_oracle, eval_bool, eval_ternary, hazard_free_extension,
    ternary_table, NaturalCheck, Tern,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bits(v: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| v >> (n - 1 - i) & 1 == 1).collect()
}

#[test]
fn circuit_tables_are_natural() {
    // stable preservation plus definedness monotonicity, via the complete
    // ternary table of every corpus circuit
    for c in corpus(5, 2) {
        let table = ternary_table(&c, 0).unwrap();
        assert_eq!(
            check_natural(c.input_count(), &table).unwrap(),
            NaturalCheck::Ok,
            "{} is not natural",
            c.name()
        );
    }
}

#[test]
fn evaluation_never_beats_the_extension() {
    for c in corpus(5, 2) {
        let n = c.input_count();
        let f = c.truth_table(0).unwrap();
        for w in all_words(n) {
            let lhs = eval_ternary(&c, &w).unwrap()[0];
            assert!(
                lhs.leq(f.extension(&w)),
                "{} at {w}: {lhs} above the extension",
                c.name()
            );
        }
    }
}

#[test]
fn monotone_circuits_are_hazard_free() {
    for c in monotone_corpus(5, 8) {
        let f = c.truth_table(0).unwrap();
        for w in all_words(c.input_count()) {
            assert_eq!(
                eval_ternary(&c, &w).unwrap()[0],
                f.extension(&w),
                "{} at {w}",
                c.name()
            );
        }
        assert!(find_hazards(&c, &DetectOptions::default()).unwrap().is_empty());
    }
}

#[test]
fn detection_agrees_with_the_extension_oracle() {
    // empty witness list iff the evaluation equals the extension everywhere
    for c in corpus(5, 2) {
        let n = c.input_count();
        let f = c.truth_table(0).unwrap();
        let clean = find_hazards(&c, &DetectOptions::default()).unwrap().is_empty();
        let pointwise =
            all_words(n).all(|w| eval_ternary(&c, &w).unwrap()[0] == f.extension(&w));
        assert_eq!(clean, pointwise, "{}", c.name());
    }
}

#[test]
fn detection_agrees_with_the_extension_oracle_at_ten_inputs() {
    for (seed, n) in [(1u64, 9usize), (2, 10), (3, 10), (4, 9)] {
        let c = random_circuit(&RandomCircuitConfig {
            inputs: n,
            gates: 12,
            allow_xor: seed % 2 == 0,
            seed: 900 + seed,
            ..Default::default()
        });
        let f = c.truth_table(0).unwrap();
        let clean = find_hazards(&c, &DetectOptions::default()).unwrap().is_empty();
        let table = ternary_table(&c, 0).unwrap();
        let pointwise = all_words(n)
            .enumerate()
            .all(|(rank, w)| table[rank] == f.extension(&w));
        assert_eq!(clean, pointwise, "{}", c.name());
    }
}

#[test]
fn every_emitted_witness_verifies() {
    for c in corpus(6, 2) {
        for w in find_hazards(
            &c,
            &DetectOptions {
                limit: 4,
                ..Default::default()
            },
        )
        .unwrap()
        {
            check_witness(&c, &w).unwrap();
        }
    }
}

#[test]
fn function_derivative_is_monotone_in_the_direction() {
    for c in corpus(4, 1) {
        let n = c.input_count();
        for xv in 0..1u64 << n {
            let x = bits(xv, n);
            for yv in 0..1u64 << n {
                let y = bits(yv, n);
                let dy = derivative_oracle(&c, &x, &y, 0).unwrap();
                // covering pairs: flip one 0 of y to 1
                for p in 0..n {
                    if !y[p] {
                        let mut wider = y.clone();
                        wider[p] = true;
                        let dwider = derivative_oracle(&c, &x, &wider, 0).unwrap();
                        assert!(!dy || dwider, "{} x={xv:b} y={yv:b} p={p}", c.name());
                    }
                }
            }
        }
    }
}

#[test]
fn monotone_functions_equal_their_derivative_at_zero() {
    for c in monotone_corpus(5, 8) {
        let n = c.input_count();
        let zero = vec![false; n];
        for yv in 0..1u64 << n {
            let y = bits(yv, n);
            assert_eq!(
                derivative_oracle(&c, &zero, &y, 0).unwrap(),
                eval_bool(&c, &y).unwrap()[0],
                "{} at {yv:b}",
                c.name()
            );
        }
    }
}

#[test]
fn huffman_matches_extension_up_to_ten_variables() {
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    for round in 0..6 {
        let n = 9 + round % 2; // 9 and 10
        let table =
            TruthTable::new(n, (0..1usize << n).map(|_| rng.gen_bool(0.5)).collect()).unwrap();
        let c = huffman_hazard_free(&table).unwrap();
        let tern = ternary_table(&c, 0).unwrap();
        for (rank, w) in all_words(n).enumerate() {
            assert_eq!(tern[rank], table.extension(&w), "n={n} round={round} at {w}");
        }
    }
}

#[test]
fn prime_count_lower_bounds_the_two_level_size() {
    // every prime implicant contributes at least its AND term
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    for _ in 0..20 {
        let n = 3 + rng.gen_range(0..3);
        let table =
            TruthTable::new(n, (0..1usize << n).map(|_| rng.gen_bool(0.5)).collect()).unwrap();
        let primes = prime_implicants(&table).unwrap();
        let c = huffman_hazard_free(&table).unwrap();
        if primes.len() > 1 {
            assert!(c.stats().size >= primes.len());
        }
    }
}

#[test]
fn singleton_collection_equals_speculation() {
    for seed in 0..10u64 {
        let c = random_circuit(&RandomCircuitConfig {
            inputs: 5,
            gates: 7,
            seed: 300 + seed,
            ..Default::default()
        });
        let set = vec![1 + (seed as usize % 5), 1 + ((seed as usize + 2) % 5)];
        let collection = SubsetCollection::new(2, vec![set.clone()]).unwrap();
        let via_collection = k_hazard_free_collection(&c, &collection).unwrap();
        let direct = speculative_fixed_set(&c, &set).unwrap();
        assert_eq!(
            via_collection.stats(),
            direct.stats(),
            "seed {seed}: singleton collection should cost the same"
        );
        assert_eq!(
            via_collection.truth_table(0).unwrap(),
            direct.truth_table(0).unwrap()
        );
    }
}

#[test]
fn three_set_collection_is_one_majority_over_bases() {
    let c = random_circuit(&RandomCircuitConfig {
        inputs: 6,
        gates: 6,
        seed: 123,
        ..Default::default()
    });
    let collection =
        SubsetCollection::new(1, vec![vec![1], vec![3], vec![5]]).unwrap();
    let built = k_hazard_free_collection(&c, &collection).unwrap();
    // three two-set bases cannot appear at t = 3: children are {1,2}, {2,3},
    // {1,3} as index pairs, each a speculation base, plus one majority
    let majority_gates = 5;
    let base_cost: usize = [
        vec![1usize, 3],
        vec![3, 5],
        vec![1, 5],
    ]
    .iter()
    .map(|s| speculative_fixed_set(&c, s).unwrap().stats().size)
    .sum();
    assert_eq!(built.stats().size, base_cost + majority_gates);
}

#[test]
fn collection_covers_every_listed_subset() {
    for seed in 0..6u64 {
        let n = 6;
        let c = random_circuit(&RandomCircuitConfig {
            inputs: n,
            gates: 8,
            seed: 400 + seed,
            ..Default::default()
        });
        let collection = SubsetCollection::new(
            1,
            (1..=n).map(|p| vec![p]).collect(),
        )
        .unwrap();
        let built = k_hazard_free_collection(&c, &collection).unwrap();
        let found = find_hazards(
            &built,
            &DetectOptions {
                k_max: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(found.is_empty(), "seed {seed}: {:?}", found[0].input);
        assert_eq!(
            built.truth_table(0).unwrap(),
            c.truth_table(0).unwrap()
        );
    }
}

#[test]
fn builder_majority_instances_match_the_census() {
    // the number of majority blocks physically built equals the distinct
    // internal subproblem count
    let c = random_circuit(&RandomCircuitConfig {
        inputs: 6,
        gates: 4,
        seed: 77,
        ..Default::default()
    });
    for t in [3usize, 4, 5, 6, 9, 15] {
        let sets: Vec<Vec<usize>> = (0..t)
            .map(|i| vec![1 + i % 6, 1 + (i / 6) % 6])
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        let collection = match SubsetCollection::new(2, sets) {
            Ok(col) => col,
            Err(_) => continue,
        };
        let t_actual = collection.len() as u64;
        let built = k_hazard_free_collection(&c, &collection).unwrap();
        let plain_speculation: usize = {
            // lower bound sanity: at least one base was inlined
            speculative_fixed_set(&c, collection.sets()[0].as_slice())
                .unwrap()
                .stats()
                .size
        };
        assert!(built.stats().size >= plain_speculation);
        // exact majority accounting: every AND/OR five-pack of a majority
        // appears once per distinct internal subproblem
        let expected_majorities = majority_nodes_built(t_actual);
        let spec_sizes: usize = distinct_base_sizes(&c, &collection);
        assert_eq!(
            built.stats().size as u64,
            spec_sizes as u64 + 5 * expected_majorities,
            "t = {t_actual}"
        );
    }
}

/// Total size of the distinct base-case speculations the recursion reaches.
fn distinct_base_sizes(c: &Circuit, collection: &SubsetCollection) -> usize {
    use std::collections::HashSet;
    type Iv = Vec<(u64, u64)>;
    fn total(iv: &Iv) -> u64 {
        iv.iter().map(|(a, b)| b - a).sum()
    }
    fn take_first(iv: &Iv, mut amount: u64) -> Iv {
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
    fn take_last(iv: &Iv, mut amount: u64) -> Iv {
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
    fn merge(mut iv: Iv) -> Iv {
        iv.sort_unstable();
        let mut out: Iv = Vec::new();
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
    let mut seen: HashSet<Iv> = HashSet::new();
    let mut bases: HashSet<Iv> = HashSet::new();
    let mut stack: Vec<Iv> = vec![vec![(0, collection.len() as u64)]];
    while let Some(state) = stack.pop() {
        if !seen.insert(state.clone()) {
            continue;
        }
        let t = total(&state);
        if t <= 2 {
            bases.insert(state);
            continue;
        }
        let t23 = 2 * t / 3;
        stack.push(merge(take_first(&state, t23)));
        stack.push(merge(take_last(&state, t - t / 3)));
        stack.push(merge(
            take_first(&state, t / 3)
                .into_iter()
                .chain(take_last(&state, t - t23))
                .collect(),
        ));
    }
    bases
        .iter()
        .map(|iv| {
            let mut union: Vec<usize> = Vec::new();
            for &(lo, hi) in iv {
                for idx in lo..hi {
                    union.extend(collection.sets()[idx as usize].iter().copied());
                }
            }
            union.sort_unstable();
            union.dedup();
            speculative_fixed_set(c, &union).unwrap().stats().size
        })
        .sum()
}

#[test]
fn expansion_is_exact_under_ternary_semantics() {
    for c in corpus(5, 1) {
        let e = expand(&c);
        for w in all_words(c.input_count()) {
            assert_eq!(
                eval_ternary(&c, &w).unwrap(),
                eval_ternary(&e, &w).unwrap(),
                "{} at {w}",
                c.name()
            );
        }
    }
}

#[test]
fn speculative_bound_is_strict() {
    for seed in 0..12u64 {
        let n = 4 + (seed as usize) % 3;
        let c = random_circuit(&RandomCircuitConfig {
            inputs: n,
            gates: 6,
            seed: 500 + seed,
            ..Default::default()
        });
        for k in 1..=3usize {
            let positions: Vec<usize> = (1..=k).collect();
            let spec = speculative_fixed_set(&c, &positions).unwrap();
            assert!(
                spec.stats().size < (1 << k) * (c.stats().size + 6),
                "seed {seed} k={k}"
            );
            assert!(spec.stats().depth <= c.stats().depth + 4 * k);
            assert_eq!(
                spec.truth_table(0).unwrap(),
                c.truth_table(0).unwrap()
            );
        }
    }
}

#[test]
fn extension_oracle_width_and_guard_errors() {
    let mut b = CircuitBuilder::new("wide", 30);
    let x = b.input(1);
    let y = b.input(30);
    let a = b.and(x, y);
    b.output(a);
    let c = b.build();
    let all_u: String = "u".repeat(30);
    assert!(hazard_free_extension(&c, &all_u.parse().unwrap()).is_err());
    let stable = TruthTable::row_of(&[false; 30]); // just exercise row_of
    let _ = stable;
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn netlist_round_trip(seed in 0u64..5000, n in 1usize..7, gates in 0usize..12) {
        let c = random_circuit(&RandomCircuitConfig {
            inputs: n,
            gates,
            allow_xor: seed % 2 == 0,
            allow_const: seed % 3 == 0,
            seed,
            ..Default::default()
        });
        let text = print_netlist(&c);
        let parsed = parse_netlist(&text).unwrap();
        prop_assert_eq!(parsed, c);
    }

    #[test]
    fn evaluation_is_monotone_under_definedness(seed in 0u64..3000, wv in 0u64..59049) {
        let c = random_circuit(&RandomCircuitConfig {
            inputs: 5,
            gates: 9,
            allow_xor: seed % 2 == 1,
            seed,
            ..Default::default()
        });
        let w = hazardkit::ternary::TernWord::from_rank(5, wv % 243);
        let out = eval_ternary(&c, &w).unwrap()[0];
        // stabilize each unstable digit both ways: the output may only rise
        for p in w.unstable_positions() {
            for v in [Tern::Zero, Tern::One] {
                let upper = w.with_digit(p, v);
                prop_assert!(out.leq(eval_ternary(&c, &upper).unwrap()[0]));
            }
        }
    }

    #[test]
    fn dual_rail_round_trip(wv in 0u64..729) {
        let w = hazardkit::ternary::TernWord::from_rank(6, wv);
        let decoded =
            hazardkit::transform::dual_rail_decode(&hazardkit::transform::dual_rail_encode(&w))
                .unwrap();
        prop_assert_eq!(decoded, w);
    }
}
