//! Monotone extraction: fixing the base point collapses every derivative
//! subcircuit to AND/OR/wire, and at the all-zero base point of the
//! determinant-parity circuit the extracted function is the permanent.
//!
//! ```bash
//! cargo run --example monotone_extract
//! ```

use hazardkit::generators::{determinant_parity, permanent_indicator};
use hazardkit::netlist::print_netlist;
use hazardkit::ternary::eval_bool;
use hazardkit::transform::monotone_extract;

fn main() {
    let det = determinant_parity(2);
    println!(
        "determinant-parity on a 2x2 matrix: size {} (with XOR), NOT-free: {}",
        det.stats().size,
        det.is_not_free()
    );

    let extracted = monotone_extract(&det, &[false; 4]).unwrap();
    println!(
        "extracted derivative at the zero matrix: size {}, NOT-free: {}",
        extracted.stats().size,
        extracted.is_not_free()
    );
    println!("{}", print_netlist(&extracted));

    // the extracted circuit is the Boolean permanent
    let mut agree = true;
    for v in 0..16u32 {
        let y: Vec<bool> = (0..4).map(|i| v >> (3 - i) & 1 == 1).collect();
        let lhs = eval_bool(&extracted, &y).unwrap()[0];
        let rhs = permanent_indicator(2, &y);
        agree &= lhs == rhs;
    }
    println!("matches the permanent on all 16 matrices: {agree}");
}
