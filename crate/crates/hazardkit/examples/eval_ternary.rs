//! Three-valued evaluation basics: the extended gate tables, and the
//! classic multiplexer that goes unstable although its function does not.
//!
//! ```bash
//! cargo run --example eval_ternary
//! ```

use hazardkit::netlist::parse_netlist;
use hazardkit::ternary::{all_words, eval_ternary, hazard_free_extension, TernWord};
use hazardkit::{CircuitBuilder, GateKind};

fn main() {
    // the extended AND table, computed from a single-gate circuit
    let mut b = CircuitBuilder::new("and", 2);
    let (x, y) = (b.input(1), b.input(2));
    let g = b.add(GateKind::And, &[x, y]);
    b.output(g);
    let and = b.build();

    println!("AND over {{0,u,1}}:");
    println!("      0  u  1");
    for row in ['0', 'u', '1'] {
        print!("   {row}  ");
        for col in ['0', 'u', '1'] {
            let w: TernWord = format!("{row}{col}").parse().unwrap();
            print!("{}  ", eval_ternary(&and, &w).unwrap()[0]);
        }
        println!();
    }

    // the two reference multiplexers on the word 11u
    let bad = parse_netlist(include_str!("data/mux_hazard.ckt")).unwrap();
    let good = parse_netlist(include_str!("data/mux_hazard_free.ckt")).unwrap();
    let w: TernWord = "11u".parse().unwrap();
    println!("\ninput 11u (both data inputs 1, selector unstable):");
    println!("  two-level mux evaluates to   {}", eval_ternary(&bad, &w).unwrap()[0]);
    println!("  consensus mux evaluates to   {}", eval_ternary(&good, &w).unwrap()[0]);
    println!(
        "  the function itself forces    {}",
        hazard_free_extension(&bad, &w).unwrap()[0]
    );

    // where do evaluation and extension disagree?
    let mismatches: Vec<String> = all_words(3)
        .filter(|w| {
            eval_ternary(&bad, w).unwrap()[0] != hazard_free_extension(&bad, w).unwrap()[0]
        })
        .map(|w| w.to_string())
        .collect();
    println!("\nwords where the two-level mux underdelivers: {mismatches:?}");
}
