//! Command-line frontend: netlist-in/netlist-out batch workflows with
//! structured, machine-checkable reports.
//!
//! Exit codes: 0 on success, 1 when `detect --expect-free` finds a
//! witness, 2 on usage or input errors. Reports are deterministic for
//! fixed inputs and flags up to the trailing elapsed-time field.

use crate::circuit::{expand, Circuit, GateKind};
use crate::cnf::{decode_model, encode_hazard_cnf, parse_model, HazardQuery};
use crate::detect::{find_hazards, DetectOptions, HazardWitness, WitnessKind};
use crate::netlist::{parse_netlist, print_netlist};
use crate::synth;
use crate::table::TruthTable;
use crate::ternary::{eval_ternary, TernWord};
use crate::transform;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "hazardkit",
    version,
    about = "Hazard analysis and hazard-free synthesis for Boolean circuits under Kleene three-valued semantics"
)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct OutArg {
    /// Write the produced netlist (or DIMACS) to this file instead of
    /// embedding it in the report.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a netlist on a ternary word over {0,1,u}.
    Eval {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Search for hazard witnesses.
    Detect {
        #[arg(long)]
        input: PathBuf,
        /// Restrict to hazards with at most k unstable digits.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 16)]
        limit: usize,
        /// Exit 1 if any witness is found.
        #[arg(long)]
        expect_free: bool,
        /// Lift the enumeration guards.
        #[arg(long)]
        force: bool,
    },
    /// Build the derivative circuit (doubled wires: values then derivatives).
    Derive {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Extract the monotone derivative circuit at a stable base word.
    Monotonize {
        #[arg(long)]
        input: PathBuf,
        /// Base word over {0,1}.
        #[arg(long)]
        word: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Double the circuit into its dual-rail ternary simulator.
    Dualrail {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Synthesize the hazard-free two-level circuit of a truth table.
    SynthHuffman {
        /// Truth table as a hex string (row 0 first, see README).
        #[arg(long)]
        table: String,
        /// Number of input variables.
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Generate the recursive hazard-free multiplexer tree.
    SynthMux {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Remove all k-bit hazards via the majority-tree construction.
    SynthK {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Speculate over a fixed set of positions (comma-separated).
    Speculate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        set: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build the satisfiability-to-fixed-hazard gadget.
    ReduceSat {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build the fixed-hazard-to-hazard XOR-chain gadget.
    ReduceFixed {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Export a hazard query as DIMACS CNF, or decode a solver model.
    Cnf {
        #[arg(long)]
        input: PathBuf,
        /// One of: general, onebit, fixed:<position>.
        #[arg(long, default_value = "general")]
        mode: String,
        /// Solver model file (whitespace-separated literals) to decode.
        #[arg(long)]
        model: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Report size, depth, input and output counts.
    Stats {
        #[arg(long)]
        input: PathBuf,
    },
    /// List the prime implicants of a truth table.
    Primes {
        #[arg(long)]
        table: String,
        #[arg(long)]
        n: usize,
    },
}

/// Runs the CLI against captured writers and returns the process exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut argv = vec!["hazardkit".to_string()];
    argv.extend_from_slice(args);
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    let started = Instant::now();
    let echo = args.join(" ");
    match execute(&cli.command) {
        Ok(outcome) => {
            let elapsed = started.elapsed().as_millis();
            let rendered = render_report(&echo, &outcome, cli.json, elapsed);
            let _ = out.write_all(rendered.as_bytes());
            outcome.exit_code
        }
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

struct Outcome {
    digest: String,
    text: Vec<String>,
    payload: Value,
    exit_code: i32,
}

fn render_report(echo: &str, outcome: &Outcome, as_json: bool, elapsed_ms: u128) -> String {
    if as_json {
        let report = json!({
            "command": echo,
            "input_digest": outcome.digest,
            "results": outcome.payload,
            "elapsed_ms": elapsed_ms,
        });
        format!("{}\n", serde_json::to_string_pretty(&report).unwrap())
    } else {
        let mut s = String::new();
        s.push_str(&format!("command: {echo}\n"));
        s.push_str(&format!("input-digest: {}\n", outcome.digest));
        for line in &outcome.text {
            s.push_str(line);
            s.push('\n');
        }
        s.push_str(&format!("elapsed-ms: {elapsed_ms}\n"));
        s
    }
}

fn digest_bytes(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let hex: String = hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    format!("sha256:{hex}")
}

fn load(path: &Path) -> Result<(Circuit, String), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("reading {}: {e}", path.display()))?;
    let circuit =
        parse_netlist(&text).map_err(|e| format!("parsing {}: {e}", path.display()))?;
    Ok((circuit, digest_bytes(text.as_bytes())))
}

fn witness_line(w: &HazardWitness) -> String {
    let kind = match w.kind {
        WitnessKind::General => "general".to_string(),
        WitnessKind::KBit(k) => format!("{k}-bit"),
        WitnessKind::Fixed(p) => format!("fixed@{p}"),
    };
    format!(
        "witness: {} output {} forced {} kind {kind}",
        w.input, w.output, w.forced as u8
    )
}

fn witness_json(w: &HazardWitness) -> Value {
    json!({
        "input": w.input.to_string(),
        "output": w.output,
        "forced": w.forced,
        "kind": match w.kind {
            WitnessKind::General => json!("general"),
            WitnessKind::KBit(k) => json!({"k_bit": k}),
            WitnessKind::Fixed(p) => json!({"fixed": p}),
        },
    })
}

/// Netlist-producing commands either embed the text or write it to a file.
fn emit_circuit(c: &Circuit, out: &OutArg) -> Result<(Vec<String>, Value), String> {
    let text = print_netlist(c);
    let stats = c.stats();
    let mut lines = vec![
        format!(
            "circuit: {} inputs {} outputs {} size {} depth {}",
            c.name(),
            c.input_count(),
            c.output_count(),
            stats.size,
            stats.depth
        ),
    ];
    let mut payload = json!({
        "name": c.name(),
        "inputs": c.input_count(),
        "outputs": c.output_count(),
        "size": stats.size,
        "depth": stats.depth,
    });
    match &out.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| format!("writing {}: {e}", path.display()))?;
            lines.push(format!("written: {}", path.display()));
            payload["written"] = json!(path.display().to_string());
        }
        None => {
            lines.push("netlist:".to_string());
            lines.extend(text.lines().map(|l| format!("  {l}")));
            payload["netlist"] = json!(text);
        }
    }
    Ok((lines, payload))
}

/// Rewrites gates outside the base set so the strict transforms accept
/// arbitrary pipeline inputs.
fn expand_if_needed(c: &Circuit, base_only: bool) -> (Circuit, bool) {
    let needs = c.gates().iter().any(|g| match g.kind {
        GateKind::Maj3 | GateKind::Custom(_) => true,
        GateKind::Xor => base_only,
        _ => false,
    });
    if needs {
        (expand(c), true)
    } else {
        (c.clone(), false)
    }
}

fn execute(cmd: &Cmd) -> Result<Outcome, String> {
    match cmd {
        Cmd::Eval { input, word } => {
            let (c, digest) = load(input)?;
            let w: TernWord = word.parse().map_err(|e| format!("word: {e}"))?;
            let values = eval_ternary(&c, &w).map_err(|e| e.to_string())?;
            let rendered: String = values.iter().map(|t| t.to_char()).collect();
            Ok(Outcome {
                digest,
                text: vec![format!("outputs: {rendered}")],
                payload: json!({ "outputs": rendered }),
                exit_code: 0,
            })
        }
        Cmd::Detect {
            input,
            k,
            limit,
            expect_free,
            force,
        } => {
            let (c, digest) = load(input)?;
            let options = DetectOptions {
                k_max: *k,
                limit: *limit,
                force: *force,
            };
            let witnesses = find_hazards(&c, &options).map_err(|e| e.to_string())?;
            let mut text = vec![format!("witnesses: {}", witnesses.len())];
            text.extend(witnesses.iter().map(witness_line));
            let verdict = if witnesses.is_empty() { "free" } else { "hazard" };
            text.push(format!("verdict: {verdict}"));
            let exit_code = if *expect_free && !witnesses.is_empty() { 1 } else { 0 };
            Ok(Outcome {
                digest,
                text,
                payload: json!({
                    "witnesses": witnesses.iter().map(witness_json).collect::<Vec<_>>(),
                    "verdict": verdict,
                }),
                exit_code,
            })
        }
        Cmd::Derive { input, out } => {
            let (c, digest) = load(input)?;
            let (c, expanded) = expand_if_needed(&c, false);
            let d = transform::derivative_circuit(&c).map_err(|e| e.to_string())?;
            let (mut text, mut payload) = emit_circuit(&d.circuit, out)?;
            if expanded {
                text.insert(0, "note: non-base gates expanded first".to_string());
                payload["expanded"] = json!(true);
            }
            Ok(Outcome {
                digest,
                text,
                payload,
                exit_code: 0,
            })
        }
        Cmd::Monotonize { input, word, out } => {
            let (c, digest) = load(input)?;
            let (c, expanded) = expand_if_needed(&c, false);
            let w: TernWord = word.parse().map_err(|e| format!("word: {e}"))?;
            let bits = w
                .stable_bits()
                .ok_or_else(|| "base word must be stable (over {0,1})".to_string())?;
            let mono = transform::monotone_extract(&c, &bits).map_err(|e| e.to_string())?;
            let (mut text, mut payload) = emit_circuit(&mono, out)?;
            if expanded {
                text.insert(0, "note: non-base gates expanded first".to_string());
                payload["expanded"] = json!(true);
            }
            Ok(Outcome {
                digest,
                text,
                payload,
                exit_code: 0,
            })
        }
        Cmd::Dualrail { input, out } => {
            let (c, digest) = load(input)?;
            let (c, expanded) = expand_if_needed(&c, true);
            let doubled = transform::dual_rail(&c).map_err(|e| e.to_string())?;
            let (mut text, mut payload) = emit_circuit(&doubled, out)?;
            if expanded {
                text.insert(0, "note: non-base gates expanded first".to_string());
                payload["expanded"] = json!(true);
            }
            Ok(Outcome {
                digest,
                text,
                payload,
                exit_code: 0,
            })
        }
        Cmd::SynthHuffman { table, n, out } => {
            let t = TruthTable::from_hex(*n, table).map_err(|e| e.to_string())?;
            let c = synth::huffman_hazard_free(&t).map_err(|e| e.to_string())?;
            let (text, payload) = emit_circuit(&c, out)?;
            Ok(Outcome {
                digest: digest_bytes(table.as_bytes()),
                text,
                payload,
                exit_code: 0,
            })
        }
        Cmd::SynthMux { k, out } => {
            let c = synth::hazard_free_mux(*k).map_err(|e| e.to_string())?;
            let (text, payload) = emit_circuit(&c, out)?;
            Ok(Outcome {
                digest: digest_bytes(format!("mux{k}").as_bytes()),
                text,
                payload,
                exit_code: 0,
            })
        }
        Cmd::SynthK { input, k, out } => {
            let (c, digest) = load(input)?;
            let result = synth::k_hazard_free(&c, *k).map_err(|e| e.to_string())?;
            let (text, payload) = emit_circuit(&result, out)?;
            Ok(Outcome {
                digest,
                text,
                payload,
                exit_code: 0,
            })
        }
        Cmd::Speculate { input, set, out } => {
            let (c, digest) = load(input)?;
            let positions: Vec<usize> = set
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.trim().parse::<usize>().map_err(|e| format!("set: {e}")))
                .collect::<Result<_, _>>()?;
            let result =
                synth::speculative_fixed_set(&c, &positions).map_err(|e| e.to_string())?;
            let (text, payload) = emit_circuit(&result, out)?;
            Ok(Outcome {
                digest,
                text,
                payload,
                exit_code: 0,
            })
        }
        Cmd::ReduceSat { input, out } => {
            let (c, digest) = load(input)?;
            let r = crate::reductions::sat_to_fixed_hazard(&c).map_err(|e| e.to_string())?;
            let (mut text, mut payload) = emit_circuit(&r.circuit, out)?;
            let position = r.distinguished_position.unwrap();
            text.insert(0, format!("distinguished-position: {position}"));
            payload["distinguished_position"] = json!(position);
            Ok(Outcome {
                digest,
                text,
                payload,
                exit_code: 0,
            })
        }
        Cmd::ReduceFixed { input, out } => {
            let (c, digest) = load(input)?;
            let r = crate::reductions::unsat_fixed_to_hazard(&c).map_err(|e| e.to_string())?;
            let (mut text, mut payload) = emit_circuit(&r.circuit, out)?;
            let position = r.distinguished_position.unwrap();
            text.insert(0, format!("distinguished-position: {position}"));
            payload["distinguished_position"] = json!(position);
            Ok(Outcome {
                digest,
                text,
                payload,
                exit_code: 0,
            })
        }
        Cmd::Cnf {
            input,
            mode,
            model,
            out,
        } => {
            let (c, digest) = load(input)?;
            let query = parse_query(mode)?;
            match model {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| format!("reading {}: {e}", path.display()))?;
                    let literals = parse_model(&text);
                    let witness =
                        decode_model(&c, query, &literals).map_err(|e| e.to_string())?;
                    Ok(Outcome {
                        digest,
                        text: vec![witness_line(&witness), "verified: true".to_string()],
                        payload: json!({
                            "witness": witness_json(&witness),
                            "verified": true,
                        }),
                        exit_code: 0,
                    })
                }
                None => {
                    let formula = encode_hazard_cnf(&c, query).map_err(|e| e.to_string())?;
                    let dimacs = formula.to_dimacs();
                    let mut text = vec![format!(
                        "cnf: {} variables {} clauses",
                        formula.variable_count,
                        formula.clauses.len()
                    )];
                    let mut payload = json!({
                        "variables": formula.variable_count,
                        "clauses": formula.clauses.len(),
                    });
                    match &out.out {
                        Some(path) => {
                            std::fs::write(path, &dimacs)
                                .map_err(|e| format!("writing {}: {e}", path.display()))?;
                            text.push(format!("written: {}", path.display()));
                            payload["written"] = json!(path.display().to_string());
                        }
                        None => {
                            text.push("dimacs:".to_string());
                            text.extend(dimacs.lines().map(|l| format!("  {l}")));
                            payload["dimacs"] = json!(dimacs);
                        }
                    }
                    Ok(Outcome {
                        digest,
                        text,
                        payload,
                        exit_code: 0,
                    })
                }
            }
        }
        Cmd::Stats { input } => {
            let (c, digest) = load(input)?;
            let stats = c.stats();
            Ok(Outcome {
                digest,
                text: vec![
                    format!("name: {}", c.name()),
                    format!("inputs: {}", c.input_count()),
                    format!("outputs: {}", c.output_count()),
                    format!("size: {}", stats.size),
                    format!("depth: {}", stats.depth),
                ],
                payload: json!({
                    "name": c.name(),
                    "inputs": c.input_count(),
                    "outputs": c.output_count(),
                    "size": stats.size,
                    "depth": stats.depth,
                }),
                exit_code: 0,
            })
        }
        Cmd::Primes { table, n } => {
            let t = TruthTable::from_hex(*n, table).map_err(|e| e.to_string())?;
            let cubes = synth::prime_implicants(&t).map_err(|e| e.to_string())?;
            let patterns: Vec<String> = cubes.iter().map(|c| c.pattern(*n)).collect();
            let mut text = vec![format!("primes: {}", cubes.len())];
            text.extend(patterns.iter().map(|p| format!("cube: {p}")));
            Ok(Outcome {
                digest: digest_bytes(table.as_bytes()),
                text,
                payload: json!({ "primes": patterns }),
                exit_code: 0,
            })
        }
    }
}

fn parse_query(mode: &str) -> Result<HazardQuery, String> {
    match mode {
        "general" => Ok(HazardQuery::General),
        "onebit" => Ok(HazardQuery::OneBit),
        _ => match mode.strip_prefix("fixed:") {
            Some(p) => p
                .parse::<usize>()
                .map(HazardQuery::Fixed)
                .map_err(|e| format!("mode: {e}")),
            None => Err(format!(
                "mode '{mode}' not recognized (general, onebit, fixed:<position>)"
            )),
        },
    }
}
