//! `lrk`: kernelize, solve, and inspect induced-subgraph deletion
//! instances from the command line.
//!
//! Exit codes: 0 success, 1 a verified property was violated, 2 bad usage
//! or input, 3 a resource cap was exceeded.

use clap::{Args, Parser, Subcommand};
use lowrank_kernel::graph::io;
use lowrank_kernel::hardness;
use lowrank_kernel::harness::{self, TrialConfig};
use lowrank_kernel::incidence::{self, CoordinateIndex};
use lowrank_kernel::kernel::{kernelize, KernelReduction, ProblemPreset};
use lowrank_kernel::obstructions::{PropertyId, PropertySpec};
use lowrank_kernel::solver::brute_force_decide;
use lowrank_kernel::{Caps, Error};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lrk", version, about = "Vertex-cover kernelization toolkit")]
struct Cli {
    /// Master seed for randomized verification runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Resource cap overrides, e.g. `coords=1048576,solver-vertices=20`.
    #[arg(long, global = true, value_name = "LIST")]
    caps: Option<String>,

    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shrink an instance to an equivalent kernel.
    Kernelize {
        /// Problem preset: perfect, even-hole-free, at-free, interval, wheel-free.
        #[arg(long)]
        preset: String,
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Also write the per-round reduction trace as JSON.
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
    },
    /// Decide an instance exactly by brute force.
    Solve {
        /// Obstruction family id, e.g. odd-hole, perfect, interval.
        #[arg(long)]
        property: String,
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        /// Print the minimum deletion size when feasible.
        #[arg(long)]
        optimum: bool,
    },
    /// Search a graph for an obstruction and print a witness.
    Detect {
        #[arg(long)]
        property: String,
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
    },
    /// Compare kernel answers with brute force on random instances.
    VerifyEquivalence {
        /// Problem preset to exercise.
        #[arg(long)]
        preset: String,
        #[command(flatten)]
        ranges: RangeArgs,
        /// Corrupt every kernel by one adjacency bit; the run must then
        /// report disagreements.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Check the replacement claim on random sum-satisfying instances.
    VerifyRankc {
        #[arg(long)]
        property: String,
        #[command(flatten)]
        ranges: RangeArgs,
        /// Rank to test at; defaults to the property's declared rank.
        #[arg(long)]
        rank: Option<usize>,
        /// Allow replacement subsets of any size, not just single vertices.
        #[arg(long)]
        subset: bool,
        /// Fail unless at least this many trials satisfied the premise.
        #[arg(long, default_value_t = 1)]
        min_hits: usize,
    },
    /// Hardness constructions.
    #[command(subcommand)]
    Hardness(HardnessCommand),
    /// Print the coordinate list used for an instance's cover.
    Coords {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        /// Rank bound on coordinate sizes.
        #[arg(long)]
        c: usize,
    },
    /// Print one vertex's incidence vector as a 0/1 string.
    Incvec {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        vertex: usize,
    },
}

#[derive(Subcommand)]
enum HardnessCommand {
    /// Transform a DIMACS CNF formula into a deletion instance.
    Gen {
        #[arg(long, value_name = "FILE")]
        cnf: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Build the family on which no bounded-rank replacement is sound.
    Counterexample {
        /// Rank the counterexample defeats.
        #[arg(long)]
        c: usize,
        /// Re-check the three defining facts.
        #[arg(long)]
        verify: bool,
        /// Write the graph to a file for further inspection.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RangeArgs {
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Cover size range.
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], default_values_t = [3, 5])]
    cover: Vec<usize>,
    /// Independent part size range.
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], default_values_t = [4, 8])]
    indep: Vec<usize>,
    /// Edge probability.
    #[arg(long, default_value_t = 0.45)]
    prob: f64,
    /// Deletion budget range.
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], default_values_t = [0, 2])]
    budget: Vec<usize>,
}

impl RangeArgs {
    fn into_config(self, property: &str, seed: u64) -> TrialConfig {
        let mut cfg = TrialConfig::new(property, self.trials, seed);
        cfg.cover_size = (self.cover[0], self.cover[1]);
        cfg.independent_size = (self.indep[0], self.indep[1]);
        cfg.edge_probability = self.prob;
        cfg.budget = (self.budget[0], self.budget[1]);
        cfg
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match cli.caps.as_deref() {
        Some(list) => match Caps::default().parse_overrides(list) {
            Ok(caps) => caps,
            Err(e) => return fail(&e),
        },
        None => Caps::default(),
    };
    match run(cli.command, cli.seed, cli.json, &caps) {
        Ok(violated) => {
            if violated {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Resource(_) => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn read(path: &Path) -> lowrank_kernel::Result<String> {
    std::fs::read_to_string(path).map_err(Error::from)
}

fn write(path: &Path, text: &str) -> lowrank_kernel::Result<()> {
    std::fs::write(path, text).map_err(Error::from)
}

fn property_spec(id: &str) -> lowrank_kernel::Result<PropertySpec> {
    let id: PropertyId = id.parse()?;
    Ok(PropertySpec::by_id(id))
}

fn emit<T: Serialize>(json: bool, value: &T, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
    } else {
        print!("{text}");
    }
}

/// Runs one command; `Ok(true)` means a verified property was violated.
fn run(command: Command, seed: u64, json: bool, caps: &Caps) -> lowrank_kernel::Result<bool> {
    match command {
        Command::Kernelize { preset, r#in, out, trace } => {
            let preset = ProblemPreset::by_name(&preset)?;
            let inst = io::parse_instance(&read(&r#in)?)?;
            let result = kernelize(&inst, &preset, caps)?;
            write(&out, &io::write_instance(&result.instance))?;

            #[derive(Serialize)]
            struct TraceFile<'a> {
                preset: &'a str,
                input_vertices: usize,
                kernel_vertices: usize,
                budget: usize,
                vertex_origin: &'a [usize],
                reduction: &'a KernelReduction,
            }
            let trace_file = TraceFile {
                preset: preset.name,
                input_vertices: inst.graph.vertex_count(),
                kernel_vertices: result.instance.graph.vertex_count(),
                budget: result.instance.budget,
                vertex_origin: &result.vertex_origin,
                reduction: &result.reduction,
            };
            if let Some(path) = trace {
                write(&path, &serde_json::to_string_pretty(&trace_file).expect("trace serializes"))?;
            }
            emit(
                json,
                &trace_file,
                format!(
                    "kernelized {} -> {} vertices (cover {}, budget {})\n",
                    trace_file.input_vertices,
                    trace_file.kernel_vertices,
                    result.instance.cover.len(),
                    trace_file.budget
                ),
            );
            Ok(false)
        }
        Command::Solve { property, r#in, optimum } => {
            let spec = property_spec(&property)?;
            let inst = io::parse_instance(&read(&r#in)?)?;
            let result = brute_force_decide(&inst, &spec, caps)?;
            let text = match (&result.solution, result.optimum) {
                (Some(s), Some(k)) => {
                    let ids = s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
                    if optimum {
                        format!("feasible: delete [{ids}] (optimum {k})\n")
                    } else {
                        format!("feasible: delete [{ids}]\n")
                    }
                }
                _ => format!("infeasible within budget {}\n", inst.budget),
            };
            emit(json, &result, text);
            Ok(false)
        }
        Command::Detect { property, r#in } => {
            let spec = property_spec(&property)?;
            let g = io::parse_graph_lenient(&read(&r#in)?)?;
            let witness = spec.witness(&g);

            #[derive(Serialize)]
            struct Verdict<'a> {
                property: &'a str,
                contains: bool,
                witness: Option<&'a [usize]>,
            }
            let verdict = Verdict {
                property: &property,
                contains: witness.is_some(),
                witness: witness.as_deref(),
            };
            let text = match &witness {
                Some(w) => {
                    let ids = w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
                    format!("contains {property}: witness [{ids}]\n")
                }
                None => format!("free of {property}\n"),
            };
            emit(json, &verdict, text);
            Ok(false)
        }
        Command::VerifyEquivalence { preset, ranges, inject_fault } => {
            let mut cfg = ranges.into_config(&preset, seed);
            cfg.inject_fault = inject_fault;
            let report = harness::run_equivalence_trials(&cfg, caps)?;
            emit(json, &report, report.render());
            Ok(!report.ok())
        }
        Command::VerifyRankc { property, ranges, rank, subset, min_hits } => {
            let mut cfg = ranges.into_config(&property, seed);
            cfg.rank = rank;
            cfg.singleton_only = if subset { false } else { property_spec(&property)?.singleton };
            let report = harness::run_rankc_trials(&cfg, caps)?;
            emit(json, &report, report.render());
            Ok(!report.conclusive(min_hits))
        }
        Command::Hardness(HardnessCommand::Gen { cnf, out }) => {
            let formula = hardness::parse_dimacs_cnf(&read(&cnf)?)?;
            let hi = hardness::cnf_to_awfd(&formula, caps)?;
            write(&out, &io::write_instance(&hi.instance))?;

            #[derive(Serialize)]
            struct GenSummary {
                variables: usize,
                clauses: usize,
                constant_branch: bool,
                vertices: usize,
                cover: usize,
                budget: usize,
            }
            let summary = GenSummary {
                variables: formula.variables(),
                clauses: formula.clauses().len(),
                constant_branch: hi.is_constant_branch(),
                vertices: hi.instance.graph.vertex_count(),
                cover: hi.instance.cover.len(),
                budget: hi.instance.budget,
            };
            emit(
                json,
                &summary,
                format!(
                    "transformed {} variables, {} clauses -> {} vertices (cover {}, budget {})\n",
                    summary.variables, summary.clauses, summary.vertices, summary.cover, summary.budget
                ),
            );
            Ok(false)
        }
        Command::Hardness(HardnessCommand::Counterexample { c, verify, out }) => {
            let ce = hardness::rank_counterexample(c, caps)?;
            if let Some(path) = &out {
                write(path, &io::write_graph(&ce.graph))?;
            }
            if verify {
                let report = hardness::verify_counterexample(&ce, caps)?;
                let text = format!(
                    "rank {} counterexample: cycle {}, {} dependents\n\
                     sum identity: {}\nremoval keeps a forbidden wheel: {}\napexless graph clean: {}\n{}\n",
                    ce.rank,
                    ce.cycle_len,
                    ce.dependents.len(),
                    report.sum_identity,
                    report.removal_in_property,
                    report.apexless_clean,
                    if report.confirmed { "confirmed" } else { "NOT CONFIRMED" }
                );
                emit(json, &report, text);
                Ok(!report.confirmed)
            } else {
                #[derive(Serialize)]
                struct Shape {
                    rank: usize,
                    cycle_len: usize,
                    subset_size: usize,
                    dependents: usize,
                    vertices: usize,
                }
                let shape = Shape {
                    rank: ce.rank,
                    cycle_len: ce.cycle_len,
                    subset_size: ce.subset_size,
                    dependents: ce.dependents.len(),
                    vertices: ce.graph.vertex_count(),
                };
                emit(
                    json,
                    &shape,
                    format!(
                        "rank {} counterexample: cycle {}, neighborhoods of size {}, {} dependents, {} vertices\n",
                        shape.rank, shape.cycle_len, shape.subset_size, shape.dependents, shape.vertices
                    ),
                );
                Ok(false)
            }
        }
        Command::Coords { r#in, c } => {
            let inst = io::parse_instance(&read(&r#in)?)?;
            let idx = CoordinateIndex::enumerate(inst.cover.ids(), c, caps)?;

            #[derive(Serialize)]
            struct Coord {
                q: Vec<usize>,
                r: Vec<usize>,
            }
            let coords: Vec<Coord> =
                (0..idx.len()).map(|i| idx.coord_sets(i)).map(|(q, r)| Coord { q, r }).collect();
            let mut text = String::new();
            for (i, coord) in coords.iter().enumerate() {
                text.push_str(&format!("{i}: Q={:?} R={:?}\n", coord.q, coord.r));
            }
            emit(json, &coords, text);
            Ok(false)
        }
        Command::Incvec { r#in, c, vertex } => {
            let inst = io::parse_instance(&read(&r#in)?)?;
            let idx = CoordinateIndex::enumerate(inst.cover.ids(), c, caps)?;
            let vec = incidence::inc_vector(&inst.graph, &idx, vertex)?;

            #[derive(Serialize)]
            struct VectorOut {
                vertex: usize,
                coords: usize,
                bits: String,
            }
            let out = VectorOut { vertex, coords: idx.len(), bits: vec.to_string() };
            emit(json, &out, format!("{}\n", out.bits));
            Ok(false)
        }
    }
}
