use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use oridiam::dominating::{exact_dominating_set, greedy_dominating_set, is_dominating_set, DEFAULT_EXACT_LIMIT};
use oridiam::format::{parse_arcs, parse_dset, parse_graph, write_arcs, write_dset, write_graph};
use oridiam::generators::{gen_family, gen_named};
use oridiam::graph::{UndirectedGraph, VertexId};
use oridiam::oracle::{exact_min_oriented_diameter_with, OracleOptions, DEFAULT_EDGE_LIMIT};
use oridiam::orientation::{diam_profile, is_strongly_connected};
use oridiam::pipeline::{check_input, orient_graph, OrientOptions};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "oridiam", version, about = "Strong orientations with small diameter")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orient a bridgeless connected graph.
    Orient {
        /// Graph file; `-` or absent reads stdin.
        input: Option<PathBuf>,
        /// `auto`, `greedy`, `exact` or `@file`.
        #[arg(long, default_value = "auto")]
        dset: String,
        /// Arc file to write; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
    /// Exact minimum oriented diameter.
    Mindiam {
        input: Option<PathBuf>,
        /// Stop at the first orientation with diameter at most this.
        #[arg(long)]
        budget: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
        max_edges: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Write the witness orientation here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dominating set as a `d`-line file.
    Dominate {
        input: Option<PathBuf>,
        #[arg(long)]
        exact: bool,
    },
    /// Generate a graph file.
    Gen {
        #[command(subcommand)]
        what: GenWhat,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Check an orientation and report its diameter profile.
    Verify {
        graph: PathBuf,
        arcs: PathBuf,
        /// `auto`, `greedy`, `exact` or `@file`.
        #[arg(long, default_value = "auto")]
        dset: String,
    },
}

#[derive(Subcommand)]
enum GenWhat {
    /// Extremal family with domination number `gamma`.
    Family {
        #[arg(long)]
        gamma: usize,
        /// Also write its dominating set here.
        #[arg(long)]
        dset_out: Option<PathBuf>,
    },
    /// `petersen`, `k4_subdivided`, `cycle(n)` or `complete(n)`.
    Named { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

/// Exit 1 for a failed verification; errors (bad input) exit 2.
enum Outcome {
    Done,
    Violation(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Violation(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: Option<&Path>) -> anyhow::Result<String> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn read_graph(path: Option<&Path>) -> anyhow::Result<UndirectedGraph> {
    let text = read_input(path)?;
    parse_graph(&text).map_err(|e| anyhow!(e)).with_context(|| match path {
        Some(p) => format!("parsing {}", p.display()),
        None => "parsing stdin".into(),
    })
}

fn emit(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

/// `None` means "let the pipeline choose".
fn choose_dset(g: &UndirectedGraph, spec: &str) -> anyhow::Result<Option<Vec<VertexId>>> {
    Ok(match spec {
        "auto" => None,
        "greedy" => Some(greedy_dominating_set(g)),
        "exact" => Some(exact_dominating_set(g, DEFAULT_EXACT_LIMIT)?),
        s => match s.strip_prefix('@') {
            Some(file) => Some(parse_dset(&read_input(Some(Path::new(file)))?)?),
            None => bail!("--dset must be auto, greedy, exact or @file, not {s:?}"),
        },
    })
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Orient { input, dset, output, report } => {
            let g = read_graph(input.as_deref())?;
            check_input(&g)?;
            let d = choose_dset(&g, &dset)?;
            let (h, rep) = orient_graph(&g, d.as_deref(), &OrientOptions::default())?;
            emit(output.as_deref(), &write_arcs(&h))?;
            let text = match report {
                ReportFormat::Json => serde_json::to_string_pretty(&rep)? + "\n",
                ReportFormat::Text => format!(
                    "route {}\ngamma {}\ndiam {} (diam0 {}, diam1 {}, diam2 {})\n4gamma {} {}\n5gamma-1 {} {}\ntrace {} steps, {} irreducible, {} searched\n{}",
                    rep.route,
                    rep.gamma,
                    rep.profile.diam,
                    rep.profile.diam0,
                    rep.profile.diam1,
                    rep.profile.diam2,
                    rep.bound_4gamma,
                    ok(rep.within_4gamma),
                    rep.bound_5gamma_minus_1,
                    ok(rep.within_5gamma_minus_1),
                    rep.trace_len,
                    rep.irreducible_components,
                    rep.searched_components,
                    rep.fallback_reason.as_ref().map(|r| format!("fallback: {r}\n")).unwrap_or_default(),
                ),
            };
            // keep stdout clean for the arcs when they go there
            if output.is_some() {
                print!("{text}");
            } else {
                eprint!("{text}");
            }
        }
        Command::Mindiam { input, budget, max_edges, threads, output } => {
            let g = read_graph(input.as_deref())?;
            check_input(&g)?;
            let r = exact_min_oriented_diameter_with(&g, &OracleOptions { budget, max_edges, threads })?;
            println!("{}", r.value);
            if !r.optimal {
                eprintln!("budget reached; value is an upper bound");
            }
            if let Some(p) = output {
                emit(Some(&p), &write_arcs(&r.witness))?;
            }
        }
        Command::Dominate { input, exact } => {
            let g = read_graph(input.as_deref())?;
            let d = if exact { exact_dominating_set(&g, DEFAULT_EXACT_LIMIT)? } else { greedy_dominating_set(&g) };
            emit(None, &write_dset(&d))?;
        }
        Command::Gen { what, output } => match what {
            GenWhat::Family { gamma, dset_out } => {
                if gamma == 0 {
                    bail!("--gamma must be at least 1");
                }
                let (g, d) = gen_family(gamma)?;
                emit(output.as_deref(), &write_graph(&g))?;
                if let Some(p) = dset_out {
                    emit(Some(&p), &write_dset(&d))?;
                }
            }
            GenWhat::Named { name } => emit(output.as_deref(), &write_graph(&gen_named(&name)?))?,
        },
        Command::Verify { graph, arcs, dset } => {
            let g = read_graph(Some(&graph))?;
            let h = parse_arcs(&read_input(Some(&arcs))?, &g)?;
            if !is_strongly_connected(&h) {
                return Ok(Outcome::Violation("orientation is not strongly connected".into()));
            }
            let d = match choose_dset(&g, &dset)? {
                Some(d) => d,
                None if g.n() <= DEFAULT_EXACT_LIMIT => exact_dominating_set(&g, DEFAULT_EXACT_LIMIT)?,
                None => greedy_dominating_set(&g),
            };
            if !is_dominating_set(&g, &d) {
                bail!("vertex set is not dominating");
            }
            let p = diam_profile(&h, &d)?;
            let gamma = d.len() as u32;
            let (b4, b5) = (4 * gamma, 5 * gamma - 1);
            println!("strong yes");
            println!("gamma {gamma}");
            println!("diam {} (diam0 {}, diam1 {}, diam2 {})", p.diam, p.diam0, p.diam1, p.diam2);
            println!("4gamma {b4} {}", ok(p.diam <= b4));
            println!("5gamma-1 {b5} {}", ok(p.diam <= b5));
            if p.diam > b5 {
                return Ok(Outcome::Violation(format!("diameter {} exceeds 5γ-1 = {b5}", p.diam)));
            }
        }
    }
    Ok(Outcome::Done)
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "exceeded"
    }
}
