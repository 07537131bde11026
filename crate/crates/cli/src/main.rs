mod hist;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use deepfam_core::bounds::{cells_csv, enumerate_cells_up_to, T_MAX};
use deepfam_core::construct::{build_square_family, find_valid_d};
use deepfam_core::hitting::{hitting_sequence, IntervalZn};
use deepfam_core::search::{classify_pairs, scan_families, ScanConfig, SearchConfig};
use deepfam_core::{
    classify_deep, delta_family, is_winograd_deep, parse_family, DeepVerdict, Error, ModularAp,
    Modulus,
};

use report::RunReport;

#[derive(Parser, Debug)]
#[command(
    name = "deepfam",
    version,
    about = "Erdős-deep families of modular APs"
)]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "FILE.json")]
    out: Option<PathBuf>,

    /// Print the JSON report instead of the text output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a family literal and print its distance multiset.
    Check { family: String },

    /// Per-member multiplicities of a family literal.
    Hist {
        family: String,
        #[arg(long, value_enum, default_value_t = HistFormat::Csv)]
        format: HistFormat,
    },

    /// All Erdős-deep pairs of APs with lengths k1 >= k2 > 3.
    ClassifyPairs {
        /// Try every g2 <= n/2 instead of the narrowed range.
        #[arg(long)]
        wide_g2: bool,
        /// Also admit APs whose own distances repeat.
        #[arg(long)]
        allow_wrapped: bool,
        #[arg(long, default_value_t = T_MAX)]
        t_max: u32,
        #[arg(long, env = "DEEPFAM_WORKERS")]
        workers: Option<usize>,
    },

    /// Erdős-deep families of s APs inside the given bounds.
    Scan {
        #[arg(long, default_value_t = 3)]
        s: usize,
        #[arg(long, default_value_t = 3)]
        n_min: u32,
        #[arg(long, default_value_t = 120)]
        n_max: u32,
        #[arg(long, default_value_t = 21)]
        k1_max: u32,
        #[arg(long, default_value_t = 3)]
        k_min: u32,
        /// Refuse scans projected to take more elementary steps than this.
        #[arg(long, default_value_t = 10_000_000_000)]
        ceiling: u128,
        #[arg(long)]
        allow_wrapped: bool,
        #[arg(long, env = "DEEPFAM_WORKERS")]
        workers: Option<usize>,
    },

    /// The h^2-member square construction.
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        ell: u32,
        /// Generators g1,...,gh; found greedily when omitted.
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<u32>>,
    },

    /// Parameter cells left by the pair bounds.
    Cells {
        #[arg(long, default_value_t = T_MAX)]
        t_max: u32,
    },

    /// Hitting word of AP_n(g, k) against the interval [start, start + len).
    Hits {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        start: i64,
        #[arg(long)]
        len: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum HistFormat {
    Csv,
    Svg,
}

const GEOMETRIC_NOTE: &str =
    "k1 = k2 = 3 is the geometric family {AP_n(1,3), AP_n(2,3)}, Erdős-deep for every n >= 7";

struct Output {
    report: RunReport,
    text: String,
}

fn workers_or_default(w: Option<usize>) -> usize {
    w.filter(|&w| w > 0)
        .unwrap_or_else(deepfam_core::par::default_workers)
}

fn parse_literal(text: &str) -> Result<deepfam_core::Family, Error> {
    parse_family(text)
}

fn profile_value(p: &deepfam_core::DistanceMultiset) -> Value {
    serde_json::to_value(p.to_map()).expect("map serializes")
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let t0 = Instant::now();
    let elapsed = || t0.elapsed().as_millis() as u64;
    let out = match &cli.command {
        Command::Check { family } => {
            let f = parse_literal(family)?;
            let delta = delta_family(&f);
            let verdict = classify_deep(&f);
            let winograd = match verdict {
                DeepVerdict::ErdosDeep { .. } => Some(is_winograd_deep(&f)?),
                _ => None,
            };
            let mut text = format!("family: {f}\nverdict: {verdict}\n");
            if let Some(w) = winograd {
                text.push_str(&format!("winograd_deep: {w}\n"));
            }
            text.push_str(&delta.to_csv());
            let results = json!({
                "family": f.to_string(),
                "verdict": verdict,
                "winograd_deep": winograd,
                "profile": profile_value(&delta),
            });
            Output {
                report: RunReport::new("check", json!({ "family": family }), results, elapsed()),
                text,
            }
        }
        Command::Hist { family, format } => {
            let f = parse_literal(family)?;
            let rows = hist::rows(&f);
            let (fmt, body) = match format {
                HistFormat::Csv => ("csv", hist::csv(&rows)),
                HistFormat::Svg => ("svg", hist::svg(&f, &rows)),
            };
            let mut results = json!({ "family": f.to_string(), "format": fmt, "rows": rows });
            if *format == HistFormat::Svg {
                results["svg"] = Value::String(body.clone());
            }
            Output {
                report: RunReport::new(
                    "hist",
                    json!({ "family": family, "format": fmt }),
                    results,
                    elapsed(),
                ),
                text: body,
            }
        }
        Command::ClassifyPairs {
            wide_g2,
            allow_wrapped,
            t_max,
            workers,
        } => {
            let workers = workers_or_default(*workers);
            let cfg = SearchConfig {
                t_max: *t_max,
                wide_g2: *wide_g2,
                n_override: None,
                allow_wrapped: *allow_wrapped,
                workers,
            };
            let sols = classify_pairs(&cfg);
            let mut text = String::from("n,k1,k2,g1,g2,k\n");
            for s in &sols {
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    s.n, s.k1, s.k2, s.g1, s.g2, s.k
                ));
            }
            text.push_str(&format!("note: {GEOMETRIC_NOTE}\n"));
            let records: Vec<_> = sols.iter().map(|s| s.record()).collect();
            Output {
                report: RunReport::new(
                    "classify-pairs",
                    json!({
                        "wide_g2": wide_g2,
                        "allow_wrapped": allow_wrapped,
                        "t_max": t_max,
                        "workers": workers,
                    }),
                    json!({ "solutions": records, "note": GEOMETRIC_NOTE }),
                    elapsed(),
                ),
                text,
            }
        }
        Command::Scan {
            s,
            n_min,
            n_max,
            k1_max,
            k_min,
            ceiling,
            allow_wrapped,
            workers,
        } => {
            if *s == 0 || n_min > n_max {
                return Err(Error::PreconditionViolated(
                    "need s >= 1 and n-min <= n-max".into(),
                ));
            }
            let workers = workers_or_default(*workers);
            let cfg = ScanConfig {
                s: *s,
                n_range: *n_min..=*n_max,
                k1_max: *k1_max,
                k_min: *k_min,
                ceiling: *ceiling,
                allow_wrapped: *allow_wrapped,
                workers,
            };
            let sols = scan_families(&cfg)?;
            let mut text = String::from("n,lengths,generators,k\n");
            for f in &sols {
                let join = |v: Vec<u32>| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                text.push_str(&format!(
                    "{},{},{},{}\n",
                    f.n,
                    join(f.lengths()),
                    join(f.generators()),
                    f.k
                ));
            }
            let records: Vec<_> = sols.iter().map(|f| f.record()).collect();
            Output {
                report: RunReport::new(
                    "scan",
                    json!({
                        "s": s,
                        "n_min": n_min,
                        "n_max": n_max,
                        "k1_max": k1_max,
                        "k_min": k_min,
                        "ceiling": ceiling.to_string(),
                        "allow_wrapped": allow_wrapped,
                        "workers": workers,
                    }),
                    json!({ "solutions": records }),
                    elapsed(),
                ),
                text,
            }
        }
        Command::Construct { n, h, ell, d } => {
            let d = match d {
                Some(d) => d.clone(),
                None => {
                    find_valid_d(*n, *h, *ell)
                        .ok_or(Error::InvalidD {
                            n: *n,
                            d: Vec::new(),
                        })?
                        .d
                }
            };
            let f = build_square_family(*n, *h, *ell, &d)?;
            let delta = delta_family(&f);
            let verdict = classify_deep(&f);
            let text = format!("{f}\n{}", delta.to_csv());
            let results = json!({
                "d": d,
                "family": f.to_string(),
                "verdict": verdict,
                "profile": profile_value(&delta),
            });
            Output {
                report: RunReport::new(
                    "construct",
                    json!({ "n": n, "h": h, "ell": ell }),
                    results,
                    elapsed(),
                ),
                text,
            }
        }
        Command::Cells { t_max } => {
            let cells = enumerate_cells_up_to(*t_max);
            Output {
                text: cells_csv(&cells),
                report: RunReport::new(
                    "cells",
                    json!({ "t_max": t_max }),
                    json!({ "cells": cells }),
                    elapsed(),
                ),
            }
        }
        Command::Hits {
            n,
            g,
            k,
            start,
            len,
        } => {
            let m = Modulus::new(*n)?;
            let ap = ModularAp::new(m, *g, *k)?;
            let iv = IntervalZn::new(m, *start, *len)?;
            let hs = hitting_sequence(&ap, &iv)?;
            let word = hs.to_bit_string();
            let runs: Vec<Value> = hs
                .runs()
                .iter()
                .enumerate()
                .map(|(j, (a, b))| json!({ "j": j, "a_j": a, "b_j": b }))
                .collect();
            Output {
                text: format!("word: {word}\n{}", hs.runs_csv()),
                report: RunReport::new(
                    "hits",
                    json!({ "n": n, "g": g, "k": k, "start": start, "len": len }),
                    json!({ "word": word, "runs": runs }),
                    elapsed(),
                ),
            }
        }
    };
    Ok(out)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BoundsTooLarge { .. } => 2,
        _ => 1,
    }
}

fn show_error(cli: &Cli, e: &Error) {
    eprintln!("error: {e}");
    let literal = match &cli.command {
        Command::Check { family } | Command::Hist { family, .. } => Some(family),
        _ => None,
    };
    if let (Error::Parse { pos, .. }, Some(text)) = (e, literal) {
        eprintln!("  {text}");
        eprintln!("  {}^", " ".repeat(text[..*pos].chars().count()));
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.out {
                if let Err(e) = out.report.write(path) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            if cli.json {
                print!("{}", out.report.to_json());
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            show_error(&cli, &e);
            ExitCode::from(exit_code(&e))
        }
    }
}
