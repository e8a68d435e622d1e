//! Hazard queries as DIMACS CNF for an external solver, and model
//! decoding back into verified witnesses.
//!
//! ```bash
//! cargo run --example cnf_export
//! ```

use hazardkit::cnf::{decode_model, encode_hazard_cnf, parse_model, HazardQuery};
use hazardkit::netlist::parse_netlist;

fn main() {
    let mux = parse_netlist(include_str!("data/mux_hazard.ckt")).unwrap();

    for query in [HazardQuery::General, HazardQuery::OneBit, HazardQuery::Fixed(3)] {
        let formula = encode_hazard_cnf(&mux, query).unwrap();
        println!(
            "{query:?}: {} variables, {} clauses",
            formula.variable_count,
            formula.clauses.len()
        );
    }

    let formula = encode_hazard_cnf(&mux, HazardQuery::OneBit).unwrap();
    println!("\nDIMACS head of the one-bit query:");
    for line in formula.to_dimacs().lines().take(12) {
        println!("  {line}");
    }
    println!("  ...");
    println!("\npipe the full file to any DIMACS solver, e.g.");
    println!("  hazardkit cnf --input mux.ckt --mode onebit --out query.cnf");
    println!("  minisat query.cnf model.txt");
    println!("  hazardkit cnf --input mux.ckt --mode onebit --model model.txt");

    // decode a model (this one produced by a stock DPLL run)
    let model_text = include_str!("../tests/golden/mux_hazard_onebit.model");
    let witness = decode_model(&mux, HazardQuery::OneBit, &parse_model(model_text)).unwrap();
    println!(
        "\ndecoded witness from the bundled model: input {} forces {}",
        witness.input, witness.forced as u8
    );
}
