//! Speculation over a fixed position set: evaluate all completions of the
//! designated positions and select with a hazard-free multiplexer.
//!
//! ```bash
//! cargo run --example speculative
//! ```

use hazardkit::detect::{find_hazards, DetectOptions};
use hazardkit::netlist::parse_netlist;
use hazardkit::synth::speculative_fixed_set;
use hazardkit::ternary::{eval_ternary, TernWord};

fn main() {
    let mux = parse_netlist(include_str!("data/mux_hazard.ckt")).unwrap();
    println!(
        "source mux: size {}, hazards: {}",
        mux.stats().size,
        find_hazards(&mux, &DetectOptions::default()).unwrap().len()
    );

    // speculate over the selector (position 3)
    let spec = speculative_fixed_set(&mux, &[3]).unwrap();
    let stats = spec.stats();
    println!(
        "speculated over position 3: size {} (< 2*(4+6) = 20), depth {}",
        stats.size, stats.depth
    );

    let w: TernWord = "11u".parse().unwrap();
    println!(
        "at 11u the speculated circuit outputs {}",
        eval_ternary(&spec, &w).unwrap()[0]
    );
    println!(
        "hazards left anywhere: {}",
        find_hazards(&spec, &DetectOptions::default()).unwrap().len()
    );
}
