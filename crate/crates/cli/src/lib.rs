//! Command-line front end for `minorkit`.
//!
//! Exit codes: 0 on success, 1 when a verification or certificate check
//! fails, 2 on usage errors and malformed input.

pub mod cert;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minorkit::constructions::{self, Attachment, CockadeSpec, SGraphSpec};
use minorkit::oracle::{self, SearchOptions, SearchResult, SweepReport, Witness};
use minorkit::{rational, ExtractionParams, Graph, Rational};
use serde_json::json;

pub use cert::{check_certificate, parse_certificate, CertificateFile, Verdict};

#[derive(Debug, Parser)]
#[command(name = "minorkit", version, about = "Dense minors in dense graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graph from a named family.
    Construct {
        #[command(subcommand)]
        family: Family,
        #[arg(short, long, default_value = "-", global = true)]
        output: PathBuf,
    },
    /// Contract edges until every closed neighbourhood is dense.
    Reduce {
        graph: PathBuf,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
        /// Also write the contraction trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Find a t-branch-set minor with many edges and print its certificate.
    Extract {
        #[arg(long)]
        t: usize,
        #[arg(long, value_parser = parse_fraction)]
        alpha: Option<Rational>,
        #[arg(long, value_parser = parse_fraction)]
        beta: Option<Rational>,
        #[arg(long, value_parser = parse_fraction)]
        nu: Option<Rational>,
        graph: PathBuf,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
    },
    /// Exact searches on small graphs.
    Oracle {
        #[command(subcommand)]
        query: Query,
    },
    /// Exhaustive desk checks over small graphs.
    Verify {
        #[command(subcommand)]
        sweep: Sweep,
    },
    /// Re-verify a certificate produced by `extract`.
    CheckCert { graph: PathBuf, certificate: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Base {
    K4,
    K5minus,
    K5,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Attach {
    Star,
    Chain,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// k universal vertices joined to r disjoint s-cliques.
    SGraph {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// n-vertex path to the power k.
    PathPower {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Copies of a base graph glued along k-cliques.
    Cockade {
        #[arg(long, value_enum)]
        base: Base,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        copies: usize,
        #[arg(long, value_enum, default_value = "star")]
        attach: Attach,
    },
    /// Line graph of K_n.
    LineComplete {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub t: usize,
    pub graph: PathBuf,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Subcommand)]
pub enum Query {
    /// Most edges of a t-vertex minor.
    MaxMinor(SearchArgs),
    /// Most edges of a t-vertex subgraph.
    MaxSubgraph(SearchArgs),
    /// Whether G has H as a minor; prints a model when it does.
    HasMinor { host: PathBuf, pattern: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum Sweep {
    /// Every small graph with average degree at least t-1 has a dense t-vertex minor.
    Small {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Every graph with at least 2v-1 edges has a 6-vertex minor with 11 edges.
    Extremal11 {
        #[arg(long, default_value_t = 7)]
        nmax: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Every 6-vertex graph with 12 edges is 3-connected or contains K5.
    #[command(name = "6v12e")]
    SixV12e,
    /// In an S-graph, small patterns are minors exactly when they are subgraphs.
    SGraphMinors {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 5)]
        hmax: usize,
    },
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

fn failed(message: impl ToString) -> Failure {
    Failure {
        code: 1,
        message: message.to_string(),
    }
}

fn parse_fraction(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

fn read_graph(path: &PathBuf) -> Result<Graph, Failure> {
    let text = read_input(path)?;
    minorkit::parse_edge_list(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_output(path: &PathBuf, text: &str) -> Result<(), Failure> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    if path.as_os_str() == "-" {
        io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| failed(format!("stdout: {e}")))
    } else {
        fs::write(path, text).map_err(|e| failed(format!("{}: {e}", path.display())))
    }
}

fn construct(family: &Family) -> Result<Graph, Failure> {
    let g = match *family {
        Family::SGraph { k, r, s } => {
            SGraphSpec::new(k, r, s).and_then(|spec| constructions::s_graph(&spec))
        }
        Family::PathPower { n, k } => constructions::path_power(n, k),
        Family::Cockade {
            base,
            k,
            copies,
            attach,
        } => {
            let base = match base {
                Base::K4 => Graph::complete(4),
                Base::K5minus => constructions::k5_minus(),
                Base::K5 => Graph::complete(5),
            };
            let attachment = match attach {
                Attach::Star => Attachment::Star,
                Attach::Chain => Attachment::Chain,
            };
            constructions::cockade(&CockadeSpec {
                base,
                k,
                copies,
                attachment,
            })
        }
        Family::LineComplete { n } => constructions::line_graph_complete(n),
    };
    g.map_err(usage)
}

fn witness_json(w: &Witness) -> serde_json::Value {
    match w {
        Witness::Model(m) => json!({
            "branch_sets": m
                .branch_sets
                .iter()
                .map(|(p, s)| (p.to_string(), json!(s.iter().copied().collect::<Vec<_>>())))
                .collect::<serde_json::Map<_, _>>()
        }),
        Witness::Vertices(s) => json!({ "vertices": s.iter().copied().collect::<Vec<_>>() }),
    }
}

fn search_json(t: usize, r: &SearchResult) -> String {
    let value = json!({
        "t": t,
        "optimum": r.optimum,
        "exhaustive": r.exhaustive,
        "explored": r.explored,
        "witness": witness_json(&r.witness),
    });
    serde_json::to_string_pretty(&value).expect("search result serializes")
}

fn report(result: Result<SweepReport, oracle::OracleError>) -> Result<i32, Failure> {
    let report = result.map_err(usage)?;
    write_output(&PathBuf::from("-"), &report.to_json())?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn execute(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Construct { family, output } => {
            let g = construct(&family)?;
            write_output(&output, &minorkit::to_edge_list(&g))?;
        }
        Command::Reduce {
            graph,
            output,
            trace,
        } => {
            let g = read_graph(&graph)?;
            let result = minorkit::mader_reduce(&g);
            if let Some(path) = trace {
                let text = serde_json::to_string_pretty(&result.trace)
                    .expect("trace serializes");
                write_output(&path, &text)?;
            }
            write_output(&output, &minorkit::to_edge_list(&result.reduced))?;
        }
        Command::Extract {
            t,
            alpha,
            beta,
            nu,
            graph,
            output,
        } => {
            let mut params = ExtractionParams::new(t);
            if let Some(a) = alpha {
                params.alpha = a;
            }
            if let Some(b) = beta {
                params.beta = b;
            }
            if let Some(n) = nu {
                params.nu = n;
            }
            params.validate().map_err(usage)?;
            let g = read_graph(&graph)?;
            let cert = minorkit::extract_dense_minor(&g, &params).map_err(|e| match e {
                minorkit::ExtractionError::Invariant { .. } => failed(e),
                other => usage(other),
            })?;
            let text = cert.to_json(&g).map_err(failed)?;
            write_output(&output, &text)?;
        }
        Command::Oracle { query } => match query {
            Query::MaxMinor(a) => {
                let g = read_graph(&a.graph)?;
                let opts = SearchOptions {
                    target: None,
                    workers: a.workers.max(1),
                };
                let r = oracle::max_minor_edges_with(&g, a.t, opts).map_err(usage)?;
                write_output(&PathBuf::from("-"), &search_json(a.t, &r))?;
            }
            Query::MaxSubgraph(a) => {
                let g = read_graph(&a.graph)?;
                let opts = SearchOptions {
                    target: None,
                    workers: a.workers.max(1),
                };
                let r = oracle::max_subgraph_edges_with(&g, a.t, opts).map_err(usage)?;
                write_output(&PathBuf::from("-"), &search_json(a.t, &r))?;
            }
            Query::HasMinor { host, pattern } => {
                let g = read_graph(&host)?;
                let h = read_graph(&pattern)?;
                let found = oracle::has_minor(&g, &h).map_err(usage)?;
                let value = match &found {
                    Some(m) => json!({
                        "minor": true,
                        "model": minorkit::ModelDocument::new(m, &g).map_err(failed)?,
                    }),
                    None => json!({ "minor": false }),
                };
                let text = serde_json::to_string_pretty(&value).expect("serializes");
                write_output(&PathBuf::from("-"), &text)?;
            }
        },
        Command::Verify { sweep } => {
            return match sweep {
                Sweep::Small { t, nmax, workers } => {
                    report(oracle::verify_small_cases(t, nmax, workers))
                }
                Sweep::Extremal11 { nmax, workers } => {
                    report(oracle::verify_extremal11(nmax, workers))
                }
                Sweep::SixV12e => report(oracle::verify_6v12e_claim()),
                Sweep::SGraphMinors { k, r, s, hmax } => {
                    let spec = SGraphSpec::new(k, r, s).map_err(usage)?;
                    report(oracle::verify_s_graph_minors(&spec, hmax))
                }
            };
        }
        Command::CheckCert { graph, certificate } => {
            let g = read_graph(&graph)?;
            let text = read_input(&certificate)?;
            let cert = parse_certificate(&text).map_err(usage)?;
            return match check_certificate(&g, &cert) {
                Verdict::Pass => {
                    write_output(&PathBuf::from("-"), "PASS")?;
                    Ok(0)
                }
                Verdict::Fail(reason) => Err(failed(format!("FAIL: {reason}"))),
            };
        }
    }
    Ok(0)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("minorkit: {}", f.message);
            f.code
        }
    }
}
