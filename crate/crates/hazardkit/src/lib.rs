//! Analysis and synthesis of Boolean circuits under Kleene three-valued
//! semantics.
//!
//! A circuit evaluated on inputs from `{0, u, 1}` may output `u` even when
//! every resolution of the `u` digits agrees on one stable value — a
//! *hazard*. This crate detects hazards, computes hazard derivatives,
//! extracts monotone circuits from them, doubles circuits into dual-rail
//! Boolean simulators, and synthesizes hazard-free and k-bit-hazard-free
//! circuits, all backed by brute-force oracles sized for desk-scale
//! verification.
//!
//! ```
//! use hazardkit::{CircuitBuilder, find_hazards, DetectOptions};
//!
//! // (x AND s) OR (y AND NOT s): the textbook multiplexer
//! let mut b = CircuitBuilder::with_input_ids("mux", &["x", "y", "s"]);
//! let (x, y, s) = (b.input(1), b.input(2), b.input(3));
//! let a1 = b.and(x, s);
//! let ns = b.not(s);
//! let a2 = b.and(y, ns);
//! let out = b.or(a1, a2);
//! b.output(out);
//! let mux = b.build();
//!
//! let witnesses = find_hazards(&mux, &DetectOptions::default()).unwrap();
//! assert_eq!(witnesses[0].input.to_string(), "11u");
//! assert!(witnesses[0].forced); // both resolutions output 1, the circuit says u
//! ```
//!
//! The runnable examples walk through each capability
//! (`cargo run --example detect_hazards`, `cargo run --example mux_tree`,
//! ...), and the `hazardkit` binary wraps everything behind a
//! netlist-in/netlist-out pipeline (`hazardkit --help`).

pub mod anf;
pub mod circuit;
pub mod cli;
pub mod cnf;
pub mod detect;
pub mod generators;
pub mod netlist;
pub mod reductions;
pub mod synth;
pub mod table;
pub mod ternary;
pub mod transform;

pub use circuit::{expand, propagate_constants, Circuit, CircuitBuilder, CircuitStats, Gate, GateKind};
pub use detect::{find_hazards, has_fixed_hazard, normalize_witness, DetectOptions, HazardWitness, WitnessKind};
pub use netlist::{parse_netlist, print_netlist};
pub use synth::{huffman_hazard_free, k_hazard_free, prime_implicants, Cube};
pub use table::TruthTable;
pub use ternary::{eval_ternary, hazard_free_extension, Tern, TernWord};
