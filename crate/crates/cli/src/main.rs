use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use twinwidth::codec::{codec_decode, codec_encode, payload_budget, CodecBlob};
use twinwidth::constructions::{self as cons, LayoutKind, Permutation};
use twinwidth::exact::{census_csv, census_table, ExactSolver};
use twinwidth::formats;
use twinwidth::labeling::{build_labels, Adjacency, LabelSet};
use twinwidth::matrix::{graph_of_matrix, MinorKind, MinorSearch};
use twinwidth::neat::{extract_for_graph, extract_parallel_sequence, CoarsenParams};
use twinwidth::sequence::{verify_parallel, verify_sequence};
use twinwidth::Trigraph;

#[derive(Parser)]
#[command(
    name = "tww",
    version,
    about = "Contraction sequences, labels and codecs for bounded twin-width graphs"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Complete,
    Gnp,
    Halfgraph,
    Rook,
    Lift,
    Subdivision,
    Product,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Grid,
    Mixed,
    NeatMixed,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph, with a witness sequence or ordering where one exists.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Vertex count, or the size parameter of the family.
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Edge probability for `gnp`.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// One-based permutation for `halfgraph`, e.g. `4,1,5,3,2`.
        #[arg(long)]
        sigma: Option<String>,
        /// Make A, B, C independent sets in `halfgraph`.
        #[arg(long)]
        independent: bool,
        /// Number of lifts for `lift`.
        #[arg(long, default_value_t = 2)]
        levels: usize,
        /// Rational `c` for `subdivision`, e.g. `1` or `1/2`.
        #[arg(long, default_value = "1")]
        c: String,
        /// Factor graph files for `product`.
        #[arg(long, num_args = 2, value_names = ["G", "H"])]
        factors: Vec<PathBuf>,
        /// Graph output (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Witness sequence output (parallel format for `lift`).
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Vertex ordering output for `subdivision`.
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// Verify a contraction sequence and report its width.
    Verify {
        graph: PathBuf,
        sequence: PathBuf,
        /// Read the sequence in the parallel format.
        #[arg(long)]
        parallel: bool,
        /// Fail when the width exceeds this bound.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Exact twin-width of a small graph.
    Tww {
        graph: PathBuf,
        #[arg(long, default_value_t = 10)]
        cap: usize,
        /// Write an optimal sequence here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Adjacency labels.
    Label {
        #[command(subcommand)]
        action: LabelAction,
    },
    /// Compress a graph from a contraction sequence.
    Pack {
        graph: PathBuf,
        sequence: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decompress a graph.
    Unpack {
        blob: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search a matrix for a grid or mixed minor.
    Gridcheck {
        matrix: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value = "grid")]
        kind: Kind,
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
    /// Extract a parallel sequence by coarsening a matrix or an ordered graph.
    Coarsen {
        /// Matrix file, or a graph file with `--graph`.
        input: PathBuf,
        /// Treat the input as a graph file.
        #[arg(long)]
        graph: bool,
        /// Vertex ordering for `--graph` (identity when absent).
        #[arg(long)]
        order: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, default_value_t = 4)]
        mv_cap: usize,
        #[arg(long, default_value_t = 8)]
        ps_cap: usize,
        /// Round-by-round CSV trace output.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Parallel sequence output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a queue or stack layout.
    LayoutCheck {
        graph: PathBuf,
        layout: PathBuf,
        /// Also check the adjacency matrix is 2(t+1)-grid free.
        #[arg(long)]
        grid: bool,
    },
    /// Count labeled graphs of bounded twin-width.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Print the CSV table for every n' <= n and d' <= d instead.
        #[arg(long)]
        table: bool,
    },
}

#[derive(Subcommand)]
enum LabelAction {
    /// Build labels from a parallel sequence.
    Build {
        graph: PathBuf,
        parallel: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decode the adjacency of two vertices from a label file.
    Query { labels: PathBuf, u: usize, v: usize },
}

/// A command either succeeds, fails a check (exit 1), or cannot run on its
/// input (exit 2, reported through `anyhow`).
struct Report {
    ok: bool,
    text: String,
    json: serde_json::Value,
}

impl Report {
    fn new(ok: bool, text: impl Into<String>, json: impl Serialize) -> anyhow::Result<Report> {
        Ok(Report {
            ok,
            text: text.into(),
            json: serde_json::to_value(json)?,
        })
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, data: impl AsRef<[u8]>) -> anyhow::Result<()> {
    fs::write(path, data).with_context(|| format!("writing {}", path.display()))
}

fn load_graph(path: &Path) -> anyhow::Result<Trigraph> {
    formats::parse_graph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn parse_ratio(s: &str) -> anyhow::Result<num_rational::Ratio<u64>> {
    let r = match s.split_once('/') {
        Some((a, b)) => {
            let den: u64 = b.trim().parse()?;
            if den == 0 {
                bail!("--c has a zero denominator");
            }
            num_rational::Ratio::new(a.trim().parse()?, den)
        }
        None => num_rational::Ratio::from_integer(s.trim().parse()?),
    };
    Ok(r)
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Gen {
            family,
            n,
            p,
            seed,
            sigma,
            independent,
            levels,
            c,
            factors,
            out,
            witness,
            order,
        } => {
            let (n, p, seed) = (*n, *p, *seed);
            let mut seq_text = None;
            let mut order_text = None;
            let g = match family {
                Family::Path => cons::path(n),
                Family::Cycle => cons::cycle(n),
                Family::Complete => cons::complete(n),
                Family::Gnp => {
                    if !(0.0..=1.0).contains(&p) {
                        bail!("--p must lie in [0, 1]");
                    }
                    cons::gnp(n, p, seed)
                }
                Family::Rook => cons::rook(n),
                Family::Halfgraph => {
                    let s = match sigma {
                        Some(s) => {
                            let images: Vec<usize> = s
                                .split(',')
                                .map(|x| x.trim().parse())
                                .collect::<Result<_, _>>()
                                .context("--sigma expects comma-separated integers")?;
                            Permutation::from_one_based(&images)?
                        }
                        None => Permutation::identity(n),
                    };
                    cons::halfgraph_sandwich(&s, !independent)
                }
                Family::Lift => {
                    let chain = cons::iterated_lift(*levels, seed);
                    seq_text = Some(formats::write_parallel(&chain.witness));
                    chain.last().clone()
                }
                Family::Subdivision => {
                    let s = cons::subdivision_order(n, parse_ratio(c)?)?;
                    order_text = Some(formats::write_ordering(&s.order));
                    s.graph
                }
                Family::Product => {
                    if factors.len() != 2 {
                        bail!("--factors G H is required for the product family");
                    }
                    let g = load_graph(&factors[0])?;
                    let h = load_graph(&factors[1])?;
                    let solver = ExactSolver::default();
                    let (_, sg) = solver.solve(&g)?;
                    let (_, sh) = solver.solve(&h)?;
                    let seq = cons::product_sequence(&g, &sg, &h, &sh)?;
                    seq_text = Some(formats::write_sequence(&seq));
                    cons::strong_product(&g, &h)?
                }
            };
            if let (Some(path), Some(s)) = (witness, seq_text) {
                write(path, s)?;
            }
            if let (Some(path), Some(s)) = (order, order_text) {
                write(path, s)?;
            }
            let text = formats::write_graph(&g);
            let json = serde_json::json!({ "n": g.len(), "edges": g.edge_count() });
            match out {
                Some(path) => {
                    write(path, &text)?;
                    Report::new(
                        true,
                        format!("generated n={} m={}", g.len(), g.edge_count()),
                        json,
                    )
                }
                None => Ok(Report {
                    ok: true,
                    text: text.trim_end().to_string(),
                    json: serde_json::json!({ "n": g.len(), "edges": g.edge_count(), "graph": text }),
                }),
            }
        }
        Command::Verify {
            graph,
            sequence,
            parallel,
            bound,
        } => {
            let g = load_graph(graph)?;
            let text = read(sequence)?;
            let r = if *parallel {
                verify_parallel(&g, &formats::parse_parallel(&text)?)
            } else {
                verify_sequence(&g, &formats::parse_sequence(&text)?)
            };
            let within = bound.is_none_or(|b| r.width <= b);
            let line = if r.valid {
                format!("valid width={}", r.width)
            } else {
                format!(
                    "invalid step={} width={}: {}",
                    r.failed_step.unwrap_or(0),
                    r.width,
                    r.reason.clone().unwrap_or_default()
                )
            };
            let line = match bound {
                Some(b) if r.valid && !within => format!("{line} exceeds bound={b}"),
                _ => line,
            };
            Report::new(r.valid && within, line, &r)
        }
        Command::Tww { graph, cap, out } => {
            let g = load_graph(graph)?;
            let (d, seq) = ExactSolver::with_cap(*cap)?.solve(&g)?;
            if let Some(path) = out {
                write(path, formats::write_sequence(&seq))?;
            }
            Report::new(true, format!("tww={d}"), serde_json::json!({ "tww": d }))
        }
        Command::Label { action } => match action {
            LabelAction::Build {
                graph,
                parallel,
                d,
                out,
            } => {
                let g = load_graph(graph)?;
                let p = formats::parse_parallel(&read(parallel)?)?;
                let set = build_labels(&g, &p, *d)?;
                let mut bytes = Vec::new();
                set.write_to(&mut bytes)?;
                write(out, bytes)?;
                Report::new(
                    true,
                    format!(
                        "labels n={} k={} bits={}",
                        set.scheme.n,
                        set.scheme.k,
                        set.scheme.label_len()
                    ),
                    set.scheme,
                )
            }
            LabelAction::Query { labels, u, v } => {
                let bytes =
                    fs::read(labels).with_context(|| format!("reading {}", labels.display()))?;
                let set = LabelSet::read_from(&bytes[..])?;
                let a = set.query(*u, *v)?;
                let text = match a {
                    Adjacency::Zero => "0".to_string(),
                    Adjacency::One => "1".to_string(),
                    Adjacency::Red(j) => format!("r{j}"),
                };
                Report::new(true, text, a)
            }
        },
        Command::Pack {
            graph,
            sequence,
            d,
            out,
        } => {
            let g = load_graph(graph)?;
            let seq = formats::parse_sequence(&read(sequence)?)?;
            let blob = codec_encode(&g, &seq, *d)?;
            write(out, blob.to_bytes())?;
            let budget = payload_budget(blob.n, blob.d);
            Report::new(
                true,
                format!(
                    "packed n={} payload={} budget={}",
                    blob.n,
                    blob.payload.len(),
                    budget
                ),
                serde_json::json!({ "n": blob.n, "d": blob.d, "payload_bits": blob.payload.len(), "budget": budget }),
            )
        }
        Command::Unpack { blob, out } => {
            let bytes = fs::read(blob).with_context(|| format!("reading {}", blob.display()))?;
            let g = codec_decode(&CodecBlob::from_bytes(&bytes)?)?;
            let text = formats::write_graph(&g);
            match out {
                Some(path) => {
                    write(path, &text)?;
                    Report::new(
                        true,
                        format!("unpacked n={}", g.len()),
                        serde_json::json!({ "n": g.len() }),
                    )
                }
                None => Ok(Report {
                    ok: true,
                    text: text.trim_end().to_string(),
                    json: serde_json::json!({ "graph": text }),
                }),
            }
        }
        Command::Gridcheck {
            matrix,
            t,
            kind,
            cap,
        } => {
            let m = formats::parse_matrix(&read(matrix)?)?;
            let kind = match kind {
                Kind::Grid => MinorKind::Grid,
                Kind::Mixed => MinorKind::Mixed,
                Kind::NeatMixed => MinorKind::NeatMixed,
            };
            let found = MinorSearch::with_cap(*cap).find(&m, *t, kind)?;
            let text = match &found {
                Some(d) => format!("found rows={:?} cols={:?}", d.row_bounds(), d.col_bounds()),
                None => "none".to_string(),
            };
            let json = serde_json::json!({
                "found": found.is_some(),
                "row_bounds": found.as_ref().map(|d| d.row_bounds().to_vec()),
                "col_bounds": found.as_ref().map(|d| d.col_bounds().to_vec()),
            });
            Report::new(true, text, json)
        }
        Command::Coarsen {
            input,
            graph,
            order,
            d,
            mv_cap,
            ps_cap,
            trace,
            out,
        } => {
            let params = CoarsenParams {
                d: *d,
                mv_cap: *mv_cap,
                ps_cap: *ps_cap,
                ..CoarsenParams::default()
            };
            let ex = if *graph {
                let g = load_graph(input)?;
                let ord = match order {
                    Some(path) => formats::parse_ordering(&read(path)?)?,
                    None => g.vertices().collect(),
                };
                extract_for_graph(&g, &ord, &params)?
            } else {
                let m = formats::parse_matrix(&read(input)?)?;
                graph_of_matrix(&m)?;
                extract_parallel_sequence(&m, &params)?
            };
            if let Some(path) = trace {
                write(path, ex.trace_csv())?;
            }
            if let Some(path) = out {
                write(path, formats::write_parallel(&ex.sequence))?;
            }
            let text = format!(
                "{} steps={} rounds={} tail={} width={}",
                if ex.valid { "valid" } else { "invalid" },
                ex.sequence.len(),
                ex.rounds.len(),
                ex.tail_steps,
                ex.width
            );
            let json = serde_json::json!({
                "valid": ex.valid,
                "steps": ex.sequence.len(),
                "rounds": ex.rounds.len(),
                "tail_steps": ex.tail_steps,
                "width": ex.width,
                "stalled": ex.stalled(),
            });
            Report::new(ex.valid, text, json)
        }
        Command::LayoutCheck {
            graph,
            layout,
            grid,
        } => {
            let g = load_graph(graph)?;
            let l = formats::parse_layout(&read(layout)?)?;
            let valid = cons::layout_check(&g, &l)?;
            let grid_free = if *grid {
                Some(cons::layout_grid_free(&g, &l, &MinorSearch::default())?)
            } else {
                None
            };
            let kind = match l.kind {
                LayoutKind::Queue => "queue",
                LayoutKind::Stack => "stack",
            };
            let mut text = format!(
                "{} {kind} layout with {} parts",
                if valid { "valid" } else { "invalid" },
                l.parts
            );
            if let Some(free) = grid_free {
                text.push_str(&format!(
                    "; {}-grid {}",
                    2 * (l.parts + 1),
                    if free { "free" } else { "found" }
                ));
            }
            let ok = valid && grid_free.unwrap_or(true);
            Report::new(
                ok,
                text,
                serde_json::json!({ "valid": valid, "grid_free": grid_free }),
            )
        }
        Command::Census { n, d, table } => {
            if *table {
                let csv = census_csv(*n, *d)?;
                return Ok(Report {
                    ok: true,
                    text: csv.trim_end().to_string(),
                    json: serde_json::json!({ "csv": csv }),
                });
            }
            let count = census_table(*n)?
                .iter()
                .filter(|&&t| t as usize <= *d)
                .count();
            Report::new(
                true,
                count.to_string(),
                serde_json::json!({ "n": n, "d": d, "count": count }),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => println!("{}", report.text),
                Format::Json => println!("{}", report.json),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!(
                "error: {}",
                anyhow!(e)
                    .chain()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(": ")
            );
            ExitCode::from(2)
        }
    }
}
