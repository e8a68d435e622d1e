//! Arbitrary gate libraries: custom truth-table gates evaluate through the
//! hazard-free extension of their table, and any nonlinear library
//! function exposes a two-input conjunction core under constant
//! substitution.
//!
//! ```bash
//! cargo run --example gate_library
//! ```

use hazardkit::anf::{anf_of, nonlinear_core};
use hazardkit::circuit::{CustomGate, GateKind};
use hazardkit::table::TruthTable;
use hazardkit::ternary::{all_words, eval_ternary};
use hazardkit::CircuitBuilder;

fn main() {
    // a NOR gate as a custom library element
    let nor = TruthTable::from_fn(2, |w| !w[0] && !w[1]).unwrap();
    let mut b = CircuitBuilder::new("nor_demo", 2);
    let (x, y) = (b.input(1), b.input(2));
    let g = b.add(
        GateKind::Custom(CustomGate {
            name: "nor".to_string(),
            table: nor.clone(),
        }),
        &[x, y],
    );
    b.output(g);
    let c = b.build();

    println!("NOR as a custom gate, evaluated over all 9 ternary words:");
    for w in all_words(2) {
        println!("  nor({w}) = {}", eval_ternary(&c, &w).unwrap()[0]);
    }

    // its algebraic normal form and nonlinear core
    let poly = anf_of(&nor).unwrap();
    let monomials: Vec<Vec<usize>> = poly
        .monomials()
        .iter()
        .map(|m| m.iter().copied().collect())
        .collect();
    println!("\nANF monomials of NOR: {monomials:?}");
    let core = nonlinear_core(&nor).unwrap().unwrap();
    println!(
        "nonlinear core: variables ({}, {}), constants c0={} c1={} c2={}",
        core.i, core.j, core.c0 as u8, core.c1 as u8, core.c2 as u8
    );
    println!("  meaning NOR(x1,x2) = (x1 ^ 1)(x2 ^ 1): a conjunction in disguise");

    // XOR has no core: it is linear
    let xor = TruthTable::from_fn(2, |w| w[0] ^ w[1]).unwrap();
    println!(
        "\nXOR core: {:?} (linear functions have none)",
        nonlinear_core(&xor).unwrap()
    );
}
