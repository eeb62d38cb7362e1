//! `vpg`: scripted experiments over grid-path representations.
//!
//! Data goes to the output stream (`--output` or stdout); diagnostics and
//! progress go to stderr. Exit codes: 0 success, 1 validation failure,
//! 2 budget failure, 3 malformed input.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use vpg_core as core;
use vpg_core::{Error as CoreError, ProblemKind};

#[derive(Parser)]
#[command(name = "vpg", version, about = "grid-path representation toolchain")]
struct Cli {
    /// Input document path; stdin when absent or "-"
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output path; stdout when absent
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads; all cores when absent
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy, Default)]
struct ConstraintArgs {
    /// Maximum bends per path
    #[arg(long)]
    max_bends: Option<u32>,
    /// Maximum paths per grid-edge (t)
    #[arg(long)]
    max_load: Option<u32>,
    /// Maximum horizontal part length (c)
    #[arg(long)]
    max_horizontal: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Vpg,
    Cpg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Is,
    Ds,
}

impl From<ProblemArg> for ProblemKind {
    fn from(p: ProblemArg) -> ProblemKind {
        match p {
            ProblemArg::Is => ProblemKind::Is,
            ProblemArg::Ds => ProblemKind::Ds,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    RandomVpg,
    B0cpg,
    Split,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document against constraints; violations exit with code 1
    Validate {
        #[command(flatten)]
        constraints: ConstraintArgs,
        /// Expected flavor
        #[arg(long)]
        flavor: Option<FlavorArg>,
    },
    /// Export the intersection graph as a plain edge list
    Graph,
    /// Build the caterpillar decomposition and report per-cut widths
    Width {
        /// Crossing-edge budget for exact induced matchings
        #[arg(long, default_value_t = 512)]
        budget_crossing: usize,
    },
    /// Solve Independent Set or Dominating Set exactly
    Solve {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        /// Use the branch-decomposition dynamic program (default)
        #[arg(long, conflicts_with = "oracle")]
        exact: bool,
        /// Use the brute-force oracle instead
        #[arg(long)]
        oracle: bool,
        /// Class budget per cut for the dynamic program
        #[arg(long, default_value_t = 200_000)]
        budget_classes: usize,
    },
    /// Baker-shifting approximation for Independent Set
    PtasIs {
        /// Approximation parameter as an exact rational, e.g. "1/3"
        #[arg(long)]
        epsilon: String,
        #[arg(long, default_value_t = 200_000)]
        budget_classes: usize,
        #[command(flatten)]
        constraints: ConstraintArgs,
    },
    /// Baker-shifting approximation for Dominating Set
    PtasDs {
        #[arg(long)]
        epsilon: String,
        #[arg(long, default_value_t = 200_000)]
        budget_classes: usize,
        #[command(flatten)]
        constraints: ConstraintArgs,
    },
    /// Normalize a 0-bend CPG representation and split every horizontal
    /// 2+-vertex; emits the transformed document plus a CSV of split reports
    Reduce {
        /// Target the Independent Set gadget (normalization length 5)
        #[arg(long, conflicts_with = "ds")]
        is: bool,
        /// Target the Dominating Set gadget (normalization length 4)
        #[arg(long)]
        ds: bool,
    },
    /// Generate an instance document
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        constraints: ConstraintArgs,
        /// Column budget for random-vpg
        #[arg(long, default_value_t = 10)]
        columns: i64,
        /// Clique size for the split family
        #[arg(long, default_value_t = 4)]
        clique: usize,
        /// Independent-set size for the split family
        #[arg(long, default_value_t = 3)]
        independent: usize,
    },
    /// Scaling sweep: CSV of instance size vs width vs runtime
    Bench {
        /// Comma-separated instance sizes
        #[arg(long, default_value = "50,100,200")]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        #[command(flatten)]
        constraints: ConstraintArgs,
        /// Columns per vertex, scaled with n
        #[arg(long, default_value_t = 2)]
        column_factor: i64,
    },
}

fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<CoreError>() {
        Some(
            CoreError::Malformed(_)
            | CoreError::DuplicateId(_)
            | CoreError::NotAxisParallel { .. }
            | CoreError::NotABend { .. }
            | CoreError::SinglePointPath(_)
            | CoreError::SharedGridEdge { .. }
            | CoreError::InvalidParameter(_),
        ) => 3,
        Some(
            CoreError::CrossingBudgetExceeded { .. }
            | CoreError::ClassBudgetExceeded { .. }
            | CoreError::SolverBudget(_)
            | CoreError::GenerationBudget(_),
        ) => 2,
        Some(_) => 1,
        None => {
            // treat unreadable input as malformed, anything else as failure
            if err.downcast_ref::<std::io::Error>().is_some() {
                3
            } else {
                1
            }
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> anyhow::Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
            Ok(buf)
        }
    }
}

fn write_output(path: &Option<PathBuf>, data: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, data).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(data.as_bytes())?;
            Ok(())
        }
    }
}

fn parse_doc(cli: &Cli) -> anyhow::Result<core::GridRep> {
    let text = read_input(&cli.input)?;
    Ok(core::parse_representation(&text)?)
}

fn epsilon_arg(s: &str) -> anyhow::Result<Ratio<i64>> {
    Ok(core::parse_rational(s)?)
}

fn constraints_of(args: &ConstraintArgs, flavor: Option<FlavorArg>) -> core::Constraints {
    core::Constraints {
        max_bends: args.max_bends,
        max_edge_load: args.max_load,
        max_horizontal: args.max_horizontal,
        flavor: flavor.map(|f| match f {
            FlavorArg::Vpg => core::Flavor::Vpg,
            FlavorArg::Cpg => core::Flavor::Cpg,
        }),
    }
}

fn diagnostics_csv(rows: &[core::ShiftDiag]) -> String {
    let mut out = String::from("component,shift,parts,max_width,value\n");
    for d in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            d.component, d.shift, d.parts, d.max_width, d.value
        );
    }
    out
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    match &cli.command {
        Command::Validate { constraints, flavor } => {
            let rep = parse_doc(cli)?;
            let report = core::validate(&rep, &constraints_of(constraints, *flavor));
            let mut out = String::new();
            for v in &report.violations {
                let _ = writeln!(out, "violation: {v}");
            }
            for n in &report.notes {
                let _ = writeln!(out, "note: {n}");
            }
            let _ = writeln!(
                out,
                "{}: {} paths, {} columns, max load {}",
                if report.is_clean() { "ok" } else { "invalid" },
                rep.len(),
                rep.column_count(),
                core::grid_edge_load(&rep).max
            );
            write_output(&cli.output, &out)?;
            if !report.is_clean() {
                std::process::exit(1);
            }
        }
        Command::Graph => {
            let rep = parse_doc(cli)?;
            let g = core::intersection_graph(&rep);
            write_output(&cli.output, &core::serialize_edge_list(&g))?;
        }
        Command::Width { budget_crossing } => {
            let rep = parse_doc(cli)?;
            let g = core::intersection_graph(&rep);
            let bd = core::build_decomposition(&rep)?;
            let budget = core::MimBudget {
                max_crossing_edges: *budget_crossing,
            };
            let profile = core::width_profile(&g, &bd, Some(&budget))?;
            let mut out = String::from("edge_a,edge_b,side_a,crossing,mm,mim\n");
            let mut mmw = 0usize;
            let mut mimw = 0usize;
            for row in &profile {
                mmw = mmw.max(row.mm);
                mimw = mimw.max(row.mim.unwrap_or(0));
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    row.tree_edge.0,
                    row.tree_edge.1,
                    row.side_a_size,
                    row.crossing_edges,
                    row.mm,
                    row.mim.unwrap_or(0)
                );
            }
            write_output(&cli.output, &out)?;
            let t = core::grid_edge_load(&rep).max as usize;
            let columns = rep.column_count().max(0) as usize;
            eprintln!(
                "mm-width {mmw}, mim-width {mimw}, certified bound 3t(l+1) = {}",
                3 * t * (columns + 1)
            );
        }
        Command::Solve {
            problem,
            oracle,
            exact: _,
            budget_classes,
        } => {
            let rep = parse_doc(cli)?;
            let kind: ProblemKind = (*problem).into();
            let solution = if *oracle {
                let g = core::intersection_graph(&rep);
                match kind {
                    ProblemKind::Is => core::brute_force_is(&g)?,
                    ProblemKind::Ds => core::brute_force_ds(&g)?,
                }
            } else {
                let cfg = core::SolveConfig {
                    class_budget: *budget_classes,
                };
                core::solve_rep(&rep, kind, &cfg)?
            };
            write_output(&cli.output, &core::serialize_solution(&solution))?;
        }
        Command::PtasIs {
            epsilon,
            budget_classes,
            constraints,
        } => {
            let rep = parse_doc(cli)?;
            let cfg = core::PtasConfig {
                solve: core::SolveConfig {
                    class_budget: *budget_classes,
                },
                t: constraints.max_load,
                c: constraints.max_horizontal,
            };
            let outcome = core::baker_is(&rep, epsilon_arg(epsilon)?, &cfg)?;
            eprint!("{}", diagnostics_csv(&outcome.diagnostics));
            eprintln!("width budget {}", outcome.width_budget);
            write_output(&cli.output, &core::serialize_solution(&outcome.solution))?;
        }
        Command::PtasDs {
            epsilon,
            budget_classes,
            constraints,
        } => {
            let rep = parse_doc(cli)?;
            let cfg = core::PtasConfig {
                solve: core::SolveConfig {
                    class_budget: *budget_classes,
                },
                t: constraints.max_load,
                c: constraints.max_horizontal,
            };
            let outcome = core::baker_ds(&rep, epsilon_arg(epsilon)?, &cfg)?;
            eprint!("{}", diagnostics_csv(&outcome.diagnostics));
            eprintln!("width budget {}", outcome.width_budget);
            write_output(&cli.output, &core::serialize_solution(&outcome.solution))?;
        }
        Command::Reduce { is, ds } => {
            let rep = parse_doc(cli)?;
            let (kind, min_len) = if *ds {
                (ProblemKind::Ds, 4)
            } else if *is {
                (ProblemKind::Is, 5)
            } else {
                anyhow::bail!(CoreError::InvalidParameter(
                    "pass --is or --ds to choose the gadget".into()
                ));
            };
            let normalized = core::normalize_b0cpg(&rep, min_len)?;
            let (out_rep, total, reports) = core::reduce_full(&normalized, kind)?;
            let mut csv = String::from("vertex,q,q_prime,d,delta\n");
            for r in &reports {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{}",
                    r.vertex, r.q, r.q_prime, r.degree, r.predicted_delta
                );
            }
            write_output(&cli.output, &core::serialize_representation(&out_rep))?;
            match &cli.output {
                Some(p) => {
                    let sidecar = p.with_extension("reports.csv");
                    std::fs::write(&sidecar, &csv)
                        .with_context(|| format!("writing {}", sidecar.display()))?;
                    eprintln!("total offset {total}; reports in {}", sidecar.display());
                }
                None => {
                    eprint!("{csv}");
                    eprintln!("total offset {total}");
                }
            }
        }
        Command::Generate {
            family,
            n,
            seed,
            constraints,
            columns,
            clique,
            independent,
        } => {
            let rep = match family {
                Family::RandomVpg => core::gen_random_vpg(&core::RandomVpgParams {
                    n: *n,
                    max_bends: constraints.max_bends.unwrap_or(1),
                    max_horizontal: constraints.max_horizontal.unwrap_or(3),
                    max_edge_load: constraints.max_load.unwrap_or(2),
                    target_columns: *columns,
                    seed: *seed,
                })?,
                Family::B0cpg => core::gen_b0cpg_subcubic(*n, *seed)?,
                Family::Split => {
                    let clique_ids: Vec<String> =
                        (0..*clique).map(|i| format!("c{i:03}")).collect();
                    let indep_ids: Vec<String> =
                        (0..*independent).map(|i| format!("i{i:03}")).collect();
                    // seed-driven bipartite edges, about half the pairs
                    let mut edges = Vec::new();
                    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
                    for i in &indep_ids {
                        for c in &clique_ids {
                            state ^= state << 13;
                            state ^= state >> 7;
                            state ^= state << 17;
                            if state & 1 == 1 {
                                edges.push((i.clone(), c.clone()));
                            }
                        }
                    }
                    core::gen_split_graph_rep(&clique_ids, &indep_ids, &edges)?
                }
            };
            write_output(&cli.output, &core::serialize_representation(&rep))?;
        }
        Command::Bench {
            sizes,
            seed,
            epsilon,
            constraints,
            column_factor,
        } => {
            let eps = epsilon_arg(epsilon)?;
            let sizes: Vec<usize> = sizes
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| CoreError::InvalidParameter(format!("bad sizes list: {e}")))?;
            let mut out =
                String::from("n,seed,columns,t,mm_width,is_value,ds_value,is_ms,ds_ms\n");
            for (i, &n) in sizes.iter().enumerate() {
                let params = core::RandomVpgParams {
                    n,
                    max_bends: constraints.max_bends.unwrap_or(1),
                    max_horizontal: constraints.max_horizontal.unwrap_or(3),
                    max_edge_load: constraints.max_load.unwrap_or(2),
                    target_columns: (n as i64 * column_factor).max(4),
                    seed: seed + i as u64,
                };
                let rep = core::gen_random_vpg(&params)?;
                let g = core::intersection_graph(&rep);
                let bd = core::build_decomposition(&rep)?;
                let mmw = core::decomposition_mm_width(&g, &bd)?;
                let cfg = core::PtasConfig::default();
                let t0 = Instant::now();
                let is = core::baker_is(&rep, eps, &cfg)?;
                let is_ms = t0.elapsed().as_millis();
                let t1 = Instant::now();
                let ds = core::baker_ds(&rep, eps, &cfg)?;
                let ds_ms = t1.elapsed().as_millis();
                let _ = writeln!(
                    out,
                    "{n},{},{},{},{mmw},{},{},{is_ms},{ds_ms}",
                    params.seed,
                    rep.column_count(),
                    core::grid_edge_load(&rep).max,
                    is.solution.value,
                    ds.solution.value
                );
                eprintln!("n={n} done");
            }
            write_output(&cli.output, &out)?;
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    if let Err(err) = run(&cli) {
        eprintln!("error: {err:#}");
        std::process::exit(exit_code(&err));
    }
}
