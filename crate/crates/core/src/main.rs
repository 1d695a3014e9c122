//! `normcov`: command-line front end.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | completed; verdict (if any) affirmative |
//! | 1 | completed; verdict negative (not nice, not normal, failed, violation) |
//! | 2 | usage error |
//! | 3 | completed; verdict inconclusive (budget or anomaly) |
//! | 4 | invalid input or parameters |
//! | 5 | I/O error |
//! | 6 | construction defect (an internal assertion of the cover construction) |

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use normal_cover::cover::io::{parse_cover, write_cover};
use normal_cover::cover::{
    build_star_cover, is_nice_exhaustive, max_alternating_path_bounded, verify_phase_propagation, AlternatingBound,
    CoverError, CoverViolation, NiceVerdict,
};
use normal_cover::graph::io::{parse_edge_list, write_edge_list};
use normal_cover::graph::Graph;
use normal_cover::oracle::{
    check_complement_closure, check_nice_cover_equivalence, has_nice_star_cover_bruteforce, is_normal_bruteforce,
    ConsistencyVerdict, NiceCoverVerdict, NormalityVerdict,
};
use normal_cover::pipeline::{self, certify_trial, experiment, PipelineError, TrialParams, Verdict};
use normal_cover::regular::sample_simple_regular;
use normal_cover::Budget;

#[derive(Parser)]
#[command(name = "normcov", version, about = "Star covers and normality certificates for sparse graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleMode {
    /// Decide normality by clique / stable set covers.
    Normal,
    /// Decide whether a nice star cover exists (triangle-free input).
    Nice,
    /// Compare the two answers above.
    #[value(name = "equivalence", alias = "t1")]
    Equivalence,
    /// Compare normality of the graph and of its complement.
    Complement,
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a uniform random d-regular graph and write its edge list.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Give up after this many rejected configurations.
        #[arg(long, default_value_t = 10_000)]
        max_rejects: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Build a star cover of an edge-list graph.
    Cover {
        input: PathBuf,
        /// Also write the construction trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Check a cover for niceness, the alternating path bound and, when the
    /// cover is the constructed one, phase propagation.
    Check {
        input: PathBuf,
        #[arg(long)]
        cover: PathBuf,
        /// Alternating path cap in vertices [default: 16k-24, at least 2].
        #[arg(long)]
        cap: Option<usize>,
        /// Longest odd cycle enumerated directly [default: 16k-19, at least 3].
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = Budget::default().remaining())]
        node_budget: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Run one of the exhaustive oracles.
    Oracle {
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: OracleMode,
        #[arg(long, default_value_t = Budget::default().remaining())]
        node_budget: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Certify one random regular graph.
    Pipeline {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Short odd cycle bound [default: 16d-19].
        #[arg(long)]
        bound: Option<usize>,
        /// Alternating path cap [default: 16d-24].
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = Budget::default().remaining())]
        node_budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Run many trials per (n, d) and aggregate.
    Experiment {
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Comma-separated degrees.
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Master seed; trial i uses seed + i.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = Budget::default().remaining())]
        node_budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
}

/// Failure of a command, mapped to an exit code.
enum Failure {
    Input(String),
    Io(String),
    Defect(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 4,
            Failure::Io(_) => 5,
            Failure::Defect(_) => 6,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Io(m) | Failure::Defect(m) => m,
        }
    }
}

#[derive(Clone, Copy)]
enum Outcome {
    Affirmative = 0,
    Negative = 1,
    Inconclusive = 3,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    parse_edge_list(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn cover_failure(e: CoverError) -> Failure {
    match e {
        CoverError::IsolatedVertex(_) => Failure::Input(e.to_string()),
        other => Failure::Defect(other.to_string()),
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Gen { n, d, seed, max_rejects, output } => {
            let sample = sample_simple_regular(n, d, seed, max_rejects).map_err(|e| Failure::Input(e.to_string()))?;
            emit(&output, &write_edge_list(&sample.graph))?;
            Ok(Outcome::Affirmative)
        }
        Command::Cover { input, trace, format, output } => {
            let g = read_graph(&input)?;
            let (c, t) = build_star_cover(&g).map_err(cover_failure)?;
            if let Some(p) = trace {
                fs::write(&p, pretty(&t.to_json())).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            }
            let text = match format {
                Format::Json => pretty(&json!({ "k": t.k, "cover": c, "trace": t.to_json() })),
                _ => write_cover(&c, t.k),
            };
            emit(&output, &text)?;
            Ok(Outcome::Affirmative)
        }
        Command::Check { input, cover, cap, bound, node_budget, output } => {
            let g = read_graph(&input)?;
            let (c, _) = parse_cover(&read(&cover)?).map_err(|e| Failure::Input(format!("{}: {e}", cover.display())))?;
            // niceness is defined for any star forest; an incomplete cover is
            // evaluated but reported as such
            let covers_all_vertices = match c.validate(&g) {
                Ok(()) => true,
                Err(CoverViolation::Uncovered(_)) => false,
                Err(e) => return Err(Failure::Input(format!("not a star forest of the graph: {e}"))),
            };
            let k = g.max_degree();
            let cap = cap.unwrap_or((16 * k).saturating_sub(24)).max(2);
            let bound = bound.unwrap_or((16 * k).saturating_sub(19)).max(3);
            let budget = Budget::new(node_budget);

            let nice = is_nice_exhaustive(&g, &c, bound, budget);
            let alt = max_alternating_path_bounded(&g, &c, cap, budget);
            // the trace is only known for the cover this crate would build
            let propagation = match build_star_cover(&g) {
                Ok((built, t)) if built == c => Some(verify_phase_propagation(&g, &c, &t, budget)),
                _ => None,
            };
            let outcome = match &nice {
                NiceVerdict::Nice => Outcome::Affirmative,
                NiceVerdict::NotNice(_) => Outcome::Negative,
                NiceVerdict::Inconclusive(_) => Outcome::Inconclusive,
            };
            let report = json!({
                "covers_all_vertices": covers_all_vertices,
                "bound": bound,
                "cap": cap,
                "nice": nice,
                "alternating": match alt {
                    AlternatingBound::MaxLen(m) => json!({ "MaxLen": m }),
                    other => serde_json::to_value(other).expect("json"),
                },
                "propagation": match propagation {
                    Some(l) => serde_json::to_value(l).expect("json"),
                    None => json!("skipped: cover is not the constructed one"),
                },
            });
            emit(&output, &pretty(&report))?;
            Ok(outcome)
        }
        Command::Oracle { input, mode, node_budget, output } => {
            let g = read_graph(&input)?;
            let budget = Budget::new(node_budget);
            let input_err = |e: normal_cover::oracle::OracleError| Failure::Input(e.to_string());
            let (value, outcome) = match mode {
                OracleMode::Normal => {
                    let v = is_normal_bruteforce(&g, budget).map_err(input_err)?;
                    let o = match v {
                        NormalityVerdict::Normal(_) => Outcome::Affirmative,
                        NormalityVerdict::NotNormal => Outcome::Negative,
                        NormalityVerdict::Inconclusive => Outcome::Inconclusive,
                    };
                    (serde_json::to_value(v).expect("json"), o)
                }
                OracleMode::Nice => {
                    let v = has_nice_star_cover_bruteforce(&g, budget).map_err(input_err)?;
                    let o = match v {
                        NiceCoverVerdict::Yes(_) => Outcome::Affirmative,
                        NiceCoverVerdict::No => Outcome::Negative,
                        NiceCoverVerdict::Inconclusive => Outcome::Inconclusive,
                    };
                    (serde_json::to_value(v).expect("json"), o)
                }
                OracleMode::Equivalence | OracleMode::Complement => {
                    let v = if mode == OracleMode::Equivalence {
                        check_nice_cover_equivalence(&g, budget)
                    } else {
                        check_complement_closure(&g, budget)
                    }
                    .map_err(input_err)?;
                    let o = match v {
                        ConsistencyVerdict::Consistent { .. } => Outcome::Affirmative,
                        ConsistencyVerdict::Violation { .. } => Outcome::Negative,
                        ConsistencyVerdict::Inconclusive => Outcome::Inconclusive,
                    };
                    (serde_json::to_value(v).expect("json"), o)
                }
            };
            emit(&output, &pretty(&value))?;
            Ok(outcome)
        }
        Command::Pipeline { n, d, seed, bound, cap, node_budget, format, output } => {
            if d < 3 {
                return Err(Failure::Input(PipelineError::DegreeTooSmall(d).to_string()));
            }
            let mut params = TrialParams::new(n, d, seed);
            params.node_budget = node_budget;
            if let Some(b) = bound {
                params.bound = b;
            }
            if let Some(c) = cap {
                params.cap = c;
            }
            if params.bound < 3 || params.bound.is_multiple_of(2) || params.cap < 2 {
                return Err(Failure::Input("bound must be odd and >= 3, cap >= 2".into()));
            }
            let report = certify_trial(params).map_err(|e| Failure::Input(e.to_string()))?;
            let text = match format {
                Format::Text => {
                    let mut s = format!("n={n} d={d} seed={seed} bound={} cap={}\n", params.bound, params.cap);
                    for (name, c) in &report.checks {
                        s.push_str(&format!("{name}: {} ({})\n", serde_json::to_value(c.status).expect("json").as_str().unwrap(), c.detail));
                    }
                    s.push_str(&format!("verdict: {}\n", report.verdict.kind()));
                    s
                }
                _ => pretty(&serde_json::to_value(&report).expect("json")),
            };
            emit(&output, &text)?;
            Ok(match report.verdict {
                Verdict::CertifiedNice => Outcome::Affirmative,
                Verdict::Failed(_) => Outcome::Negative,
                Verdict::Inconclusive(_) => Outcome::Inconclusive,
            })
        }
        Command::Experiment { n, d, trials, seed, node_budget, format, output } => {
            if let Some(&bad) = d.iter().find(|&&d| d < 3) {
                return Err(Failure::Input(format!("d must be at least 3 (got {bad})")));
            }
            let mut template = TrialParams::new(0, d[0], seed);
            template.node_budget = node_budget;
            let rows = experiment(&n, &d, trials, seed, template);
            let text = match format {
                Format::Json => pretty(&serde_json::to_value(&rows).expect("json")),
                _ => pipeline::to_csv(&rows),
            };
            emit(&output, &text)?;
            Ok(Outcome::Affirmative)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
