//! Two-level hazard-free synthesis from a truth table: one AND term per
//! prime implicant, all ORed together.
//!
//! ```bash
//! cargo run --example huffman
//! ```

use hazardkit::detect::{find_hazards, DetectOptions};
use hazardkit::netlist::print_netlist;
use hazardkit::synth::{huffman_hazard_free, prime_implicants};
use hazardkit::table::TruthTable;

fn main() {
    // the multiplexer function: s = 0 selects x, s = 1 selects y
    let mux = TruthTable::from_fn(3, |w| if w[2] { w[1] } else { w[0] }).unwrap();
    println!("mux truth table (hex): {}", mux.to_hex());

    let primes = prime_implicants(&mux).unwrap();
    println!("prime implicants:");
    for cube in &primes {
        println!("  {}", cube.pattern(3));
    }

    let circuit = huffman_hazard_free(&mux).unwrap();
    let stats = circuit.stats();
    println!("\nsynthesized circuit (size {}, depth {}):", stats.size, stats.depth);
    print!("{}", print_netlist(&circuit));

    let witnesses = find_hazards(&circuit, &DetectOptions::default()).unwrap();
    println!("\nhazards found: {}", witnesses.len());
}
