//! Counting the distinct subproblems of the 3-way covering recursion:
//! how much the interval memoization saves over the plain 3^d tree.
//!
//! ```bash
//! cargo run --release --example subproblem_census
//! ```

use hazardkit::synth::{majority_nodes_built, subproblem_census};

fn main() {
    let t = 3u64.pow(13);
    let counts = subproblem_census(t, 13);
    println!("distinct subproblems per depth (t = 3^13):");
    println!("  depth   distinct     3^depth    saving");
    for (d, &count) in counts.iter().enumerate() {
        let unshared = 3u64.pow(d as u32);
        println!(
            "  {d:5}   {count:8}   {unshared:9}    {:.1}%",
            100.0 * (1.0 - count as f64 / unshared as f64)
        );
    }
    let exponent = (counts[13] as f64).ln() / (13.0 * 1.5f64.ln());
    println!("\nimplied majority-tree exponent: O(t^{exponent:.2})");

    println!("\nmajority circuits actually built at small collection sizes:");
    for t in [1u64, 2, 3, 10, 50, 200] {
        println!("  t = {t:3}: {}", majority_nodes_built(t));
    }
}
