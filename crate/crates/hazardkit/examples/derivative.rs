//! The hazard derivative and its circuit transformation: doubled wires
//! carry (value, destabilization) pairs.
//!
//! ```bash
//! cargo run --example derivative
//! ```

use hazardkit::netlist::parse_netlist;
use hazardkit::ternary::{eval_bool, natural_derivative};
use hazardkit::transform::derivative_circuit;

fn main() {
    let mux = parse_netlist(include_str!("data/mux_hazard.ckt")).unwrap();
    let d = derivative_circuit(&mux).unwrap();
    let stats = d.circuit.stats();
    println!(
        "derivative circuit of the mux: {} inputs, {} outputs, size {}",
        d.circuit.input_count(),
        d.circuit.output_count(),
        stats.size
    );
    println!("gate pairing (source -> value / derivative):");
    let mut pairs: Vec<_> = d.pairing.iter().collect();
    pairs.sort_by(|a, b| a.0.cmp(b.0));
    for (source, pair) in pairs {
        println!("  {source:4} -> {} / {}", pair.value, pair.derivative);
    }

    // destabilizing the selector at (1,1,s): the two-level mux destabilizes
    let x = [true, true, false];
    let y = [false, false, true];
    let joint: Vec<bool> = x.iter().chain(y.iter()).copied().collect();
    let out = eval_bool(&d.circuit, &joint).unwrap();
    println!("\nat x = 110, direction y = 001 (wiggle the selector):");
    println!("  value output      = {}", out[0] as u8);
    println!("  derivative output = {}", out[1] as u8);
    println!(
        "  direct ternary destabilization check = {}",
        natural_derivative(&mux, &x, &y, 0).unwrap() as u8
    );
    println!("  (the hazard at 11u, seen through the derivative)");
}
