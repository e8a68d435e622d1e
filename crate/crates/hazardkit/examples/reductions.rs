//! Satisfiability-to-hazard gadgets, validated end to end with the
//! brute-force SAT oracle.
//!
//! ```bash
//! cargo run --example reductions
//! ```

use hazardkit::detect::{find_hazards, has_fixed_hazard, DetectOptions};
use hazardkit::reductions::{brute_force_sat, sat_to_fixed_hazard, unsat_fixed_to_hazard};
use hazardkit::CircuitBuilder;

fn main() {
    // a satisfiable circuit: AND of two inputs
    let mut b = CircuitBuilder::new("and2", 2);
    let (x, y) = (b.input(1), b.input(2));
    let g = b.and(x, y);
    b.output(g);
    let and2 = b.build();

    println!("and2 satisfiable at {:?}", brute_force_sat(&and2).unwrap());
    let gadget = sat_to_fixed_hazard(&and2).unwrap();
    let position = gadget.distinguished_position.unwrap();
    println!(
        "gadget on {} inputs is unsatisfiable: {}",
        gadget.circuit.input_count(),
        brute_force_sat(&gadget.circuit).unwrap().is_none()
    );
    match has_fixed_hazard(&gadget.circuit, position, false).unwrap() {
        Some(w) => println!("fixed hazard at position {position}: input {}", w.input),
        None => println!("no fixed hazard at position {position}"),
    }

    // an unsatisfiable circuit with a fixed hazard at position 1
    let mut b = CircuitBuilder::new("unsat", 2);
    let (x, y) = (b.input(1), b.input(2));
    let nx = b.not(x);
    let contradiction = b.and(x, nx);
    let gated = b.and(contradiction, y);
    b.output(gated);
    let unsat = b.build();

    println!(
        "\nunsat circuit: satisfiable = {}, fixed hazard at 1 = {}",
        brute_force_sat(&unsat).unwrap().is_some(),
        has_fixed_hazard(&unsat, 1, false).unwrap().is_some()
    );
    let chain = unsat_fixed_to_hazard(&unsat).unwrap();
    let witnesses = find_hazards(&chain.circuit, &DetectOptions::default()).unwrap();
    println!("XOR-chain gadget hazards (all must be 1-bit):");
    for w in &witnesses {
        println!("  {} ({} unstable digit)", w.input, w.input.unstable_count());
    }
}
