//! Shared test support: the deterministic circuit corpus and a small DPLL
//! solver standing in for an external SAT solver when checking the CNF
//! encoder.

#![allow(dead_code)]

use hazardkit::circuit::Circuit;
use hazardkit::cnf::CnfFormula;
use hazardkit::generators::{random_circuit, RandomCircuitConfig};

/// Deterministic mixed corpus: for every input count up to `max_inputs`,
/// a spread of sizes and seeds, with and without XOR gates. All circuits
/// are single-output.
pub fn corpus(max_inputs: usize, seeds_per_shape: u64) -> Vec<Circuit> {
    let mut out = Vec::new();
    for n in 1..=max_inputs {
        for gates in [1, 3, 6, 10, 15] {
            for seed in 0..seeds_per_shape {
                for allow_xor in [false, true] {
                    out.push(random_circuit(&RandomCircuitConfig {
                        inputs: n,
                        gates,
                        outputs: 1,
                        monotone: false,
                        allow_xor,
                        allow_const: gates % 2 == 0,
                        seed: seed * 1000 + n as u64 * 31 + gates as u64,
                    }));
                }
            }
        }
    }
    out
}

/// Monotone sub-corpus (AND/OR only, so f(0) = 0 and hazard-free).
pub fn monotone_corpus(max_inputs: usize, count_per_n: u64) -> Vec<Circuit> {
    let mut out = Vec::new();
    for n in 2..=max_inputs {
        for seed in 0..count_per_n {
            out.push(random_circuit(&RandomCircuitConfig {
                inputs: n,
                gates: 4 + (seed as usize % 8),
                outputs: 1,
                monotone: true,
                allow_xor: false,
                allow_const: false,
                seed: 7000 + seed * 13 + n as u64,
            }));
        }
    }
    out
}

/// Verdict of the test solver.
#[derive(Debug, PartialEq, Eq)]
pub enum SolverResult {
    Sat(Vec<i32>),
    Unsat,
}

/// Plain DPLL with unit propagation — the stand-in external solver for
/// encoder fidelity tests. Returns a full assignment as a literal list.
pub fn dpll(formula: &CnfFormula) -> SolverResult {
    let mut assignment: Vec<Option<bool>> = vec![None; formula.variable_count];
    if solve(&formula.clauses, &mut assignment) {
        let lits = assignment
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let var = i as i32 + 1;
                if v.unwrap_or(false) {
                    var
                } else {
                    -var
                }
            })
            .collect();
        SolverResult::Sat(lits)
    } else {
        SolverResult::Unsat
    }
}

fn solve(clauses: &[Vec<i32>], assignment: &mut Vec<Option<bool>>) -> bool {
    // unit propagation to fixpoint
    let mut trail: Vec<usize> = Vec::new();
    loop {
        let mut propagated = false;
        for clause in clauses {
            let mut unassigned: Option<i32> = None;
            let mut satisfied = false;
            let mut open = 0;
            for &lit in clause {
                match assignment[lit.unsigned_abs() as usize - 1] {
                    Some(v) if v == (lit > 0) => {
                        satisfied = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        open += 1;
                        unassigned = Some(lit);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match open {
                0 => {
                    for &v in &trail {
                        assignment[v] = None;
                    }
                    return false;
                }
                1 => {
                    let lit = unassigned.unwrap();
                    let var = lit.unsigned_abs() as usize - 1;
                    assignment[var] = Some(lit > 0);
                    trail.push(var);
                    propagated = true;
                }
                _ => {}
            }
        }
        if !propagated {
            break;
        }
    }
    // branch on the first unassigned variable
    match assignment.iter().position(|v| v.is_none()) {
        None => true,
        Some(var) => {
            for value in [true, false] {
                assignment[var] = Some(value);
                if solve(clauses, assignment) {
                    return true;
                }
                assignment[var] = None;
            }
            for &v in &trail {
                assignment[v] = None;
            }
            false
        }
    }
}
