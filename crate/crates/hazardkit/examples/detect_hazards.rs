//! Hazard search and witness normalization.
//!
//! ```bash
//! cargo run --example detect_hazards
//! ```

use hazardkit::detect::{find_hazards, has_fixed_hazard, normalize_witness, DetectOptions};
use hazardkit::netlist::parse_netlist;
use hazardkit::CircuitBuilder;

fn main() {
    let mux = parse_netlist(include_str!("data/mux_hazard.ckt")).unwrap();

    let witnesses = find_hazards(&mux, &DetectOptions::default()).unwrap();
    println!("hazards of the two-level mux:");
    for w in &witnesses {
        println!(
            "  input {} leaves output {} unstable although every resolution gives {}",
            w.input, w.output, w.forced as u8
        );
    }

    // fixed-position search: only the selector position hurts
    for position in 1..=3 {
        match has_fixed_hazard(&mux, position, false).unwrap() {
            Some(w) => println!("position {position}: fixed hazard at {}", w.input),
            None => println!("position {position}: clean"),
        }
    }

    // normalization: a wide witness shrinks to the compact certificate
    let mut b = CircuitBuilder::new("tautology", 2);
    let x = b.input(1);
    let nx = b.not(x);
    let o = b.or(x, nx);
    b.output(o);
    let tautology = b.build();

    let wide = find_hazards(&tautology, &DetectOptions::default())
        .unwrap()
        .into_iter()
        .find(|w| w.input.unstable_count() == 2)
        .unwrap();
    let maximal = normalize_witness(&tautology, &wide).unwrap();
    println!(
        "\nOR(x, NOT x): witness {} normalizes to {} — replacing its leftmost u \
         by either value gives a stable {}",
        wide.input, maximal.input, maximal.forced as u8
    );
}
