//! Dual-rail doubling: a plain Boolean circuit that simulates the ternary
//! evaluation of its source, two rails per signal, NOT gates twisted.
//!
//! ```bash
//! cargo run --example dual_rail
//! ```

use hazardkit::netlist::parse_netlist;
use hazardkit::ternary::{all_words, eval_bool, eval_ternary};
use hazardkit::transform::{dual_rail, dual_rail_decode, dual_rail_encode};

fn main() {
    let mux = parse_netlist(include_str!("data/mux_hazard.ckt")).unwrap();
    let doubled = dual_rail(&mux).unwrap();
    println!(
        "source: size {}; doubled: size {} on {} inputs",
        mux.stats().size,
        doubled.stats().size,
        doubled.input_count()
    );

    let w = "11u".parse().unwrap();
    let encoded = dual_rail_encode(&w);
    let rails: Vec<u8> = encoded.iter().map(|&b| b as u8).collect();
    println!("encode(11u) = {rails:?}   (stable b -> (b,b), u -> (0,1))");
    let out = eval_bool(&doubled, &encoded).unwrap();
    println!(
        "doubled circuit outputs ({}, {}) -> decodes to {}",
        out[0] as u8,
        out[1] as u8,
        dual_rail_decode(&out).unwrap()
    );

    let exact = all_words(3).all(|w| {
        let simulated = dual_rail_decode(&eval_bool(&doubled, &dual_rail_encode(&w)).unwrap());
        simulated.unwrap().digits().to_vec() == eval_ternary(&mux, &w).unwrap()
    });
    println!("simulates the ternary evaluation on all 27 words: {exact}");
}
