//! Command-line front end: normalization, phi evaluation, rank-1 module
//! analysis, norm tables, series classification, equivalence testing,
//! higher-rank reports, the verification suites, and the matrix oracle.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mathieu_core::algebra::rep_check;
use mathieu_core::cartan::{CartanData, SubsetS};
use mathieu_core::centralizer::OneDimRep;
use mathieu_core::parse::{parse_element, parse_qrat};
use mathieu_core::qfield::{Complex64, QRat, Scalar};
use mathieu_core::sl2::{analyze, are_equivalent, Rank1Sl2Params};
use mathieu_core::unitarity::{
    classify_series, is_unitarizable, norm_sq_e, norm_sq_f, SeriesLabel,
};
use mathieu_core::verify::{run_suite, suite_names, SuiteOutcome};
use mathieu_core::{rankn, Error};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "mathieu",
    about = "Exact computations in U_q(sl(n+1)) and its one-parameter weight modules",
    version
)]
struct Cli {
    /// Output format (CSV is only available for tabular output)
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct QArg {
    /// Numeric value of q in (0,1); accepts fractions like 1/2 or decimals.
    /// Defaults to the MATHIEU_Q environment variable, then 1/2.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
}

impl QArg {
    fn value(&self) -> Result<f64, Error> {
        let s = match &self.q {
            Some(s) => s.clone(),
            None => std::env::var("MATHIEU_Q").unwrap_or_else(|_| "1/2".into()),
        };
        let r = parse_qrat(&s)?;
        let a = r.eval_f64(0.37)?;
        let b = r.eval_f64(0.59)?;
        if (a - b).abs() > 1e-12 * (1.0 + a.abs()) {
            return Err(Error::Domain("q must be a constant, not an expression in q".into()));
        }
        if !(0.0 < a && a < 1.0) {
            return Err(Error::Domain(format!("q must lie in (0,1), got {}", a)));
        }
        Ok(a)
    }
}

#[derive(Args)]
struct Sl2ParamArgs {
    #[command(flatten)]
    q: QArg,
    /// lambda, an exact expression in q (e.g. "q^2") or a number
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// mu, an exact expression in q (e.g. "q+q^-1") or a number
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// Evaluate lambda and mu at the numeric q instead of keeping them exact
    #[arg(long)]
    numeric: bool,
}

impl Sl2ParamArgs {
    fn params(&self) -> Result<Rank1Sl2Params, Error> {
        let lambda = parse_qrat(&self.lambda)?;
        let mu = parse_qrat(&self.mu)?;
        if self.numeric {
            let q0 = self.q.value()?;
            Rank1Sl2Params::numeric(
                q0,
                Complex64::new(lambda.eval_f64(q0)?, 0.0),
                Complex64::new(mu.eval_f64(q0)?, 0.0),
            )
        } else {
            Rank1Sl2Params::exact(lambda, mu)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite an algebra expression into triangular normal form
    Normalize {
        /// Rank n of sl(n+1)
        #[arg(long)]
        rank: usize,
        /// Expression, e.g. "F1*E1" or "3*(q-q^-1)^-1 * E1*E2*K1^-2*F1"
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Evaluate the one-dimensional representation phi^S on an element of U_0
    PhiEval {
        #[arg(long)]
        rank: usize,
        /// Strongly orthogonal node subset, 1-based, e.g. "1,3"
        #[arg(long)]
        subset: String,
        /// Comma-separated lambda_i for every node, exact expressions in q
        #[arg(long)]
        lambda: String,
        /// Comma-separated mu_j for the nodes in S (ascending node order)
        #[arg(long)]
        mu: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Reducibility, submodules, and Casimir data of a rank-1 module
    Sl2Analyze(Sl2ParamArgs),
    /// Table of squared norms <E^n 1|E^n 1> and <F^n 1|F^n 1>
    Sl2Norms {
        #[command(flatten)]
        params: Sl2ParamArgs,
        /// Largest n in the table
        #[arg(long, default_value = "10")]
        max_n: u32,
    },
    /// Unitarizability and series label of a rank-1 module at numeric q
    Sl2Classify(Sl2ParamArgs),
    /// Decide whether two parameter sets give equivalent irreducible modules
    Sl2Equiv {
        #[command(flatten)]
        q: QArg,
        #[arg(long, allow_hyphen_values = true)]
        lambda1: String,
        #[arg(long, allow_hyphen_values = true)]
        mu1: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda2: String,
        #[arg(long, allow_hyphen_values = true)]
        mu2: String,
        #[arg(long)]
        numeric: bool,
    },
    /// Per-node analysis and proper-submodule witnesses for a rank-n module
    RanknAnalyze {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        subset: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        /// Witness samples per node outside S
        #[arg(long, default_value = "100")]
        samples: usize,
        #[arg(long, default_value = "2024")]
        seed: u64,
    },
    /// Run the named invariant suite, or all of them
    Verify {
        /// Suite name or "all"
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Image of an expression in the vector representation
    Repcheck {
        #[arg(long)]
        rank: usize,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(|t| t.trim()).filter(|t| !t.is_empty()).collect()
}

fn parse_subset(cartan: &CartanData, s: &str) -> Result<SubsetS, Error> {
    let mut nodes = Vec::new();
    for t in split_list(s) {
        let n: usize = t
            .parse()
            .map_err(|_| Error::Domain(format!("bad node index '{}'", t)))?;
        if n == 0 {
            return Err(Error::Domain("node indices are 1-based".into()));
        }
        nodes.push(n - 1);
    }
    SubsetS::new(cartan, nodes)
}

fn parse_qrat_list(s: &str) -> Result<Vec<QRat>, Error> {
    split_list(s).into_iter().map(parse_qrat).collect()
}

fn series_json(label: &SeriesLabel) -> serde_json::Value {
    match label {
        SeriesLabel::Principal { b, eps } => json!({"series": "principal", "b": b, "epsilon": eps}),
        SeriesLabel::Strange { a, eps } => json!({"series": "strange", "a": a, "epsilon": eps}),
        SeriesLabel::Complementary { sigma } => {
            json!({"series": "complementary", "sigma": sigma, "epsilon": 0.0})
        }
        SeriesLabel::PositiveDiscrete { k } => json!({"series": "positive_discrete", "k": k}),
        SeriesLabel::NegativeDiscrete { k } => json!({"series": "negative_discrete", "k": k}),
    }
}

fn scalar_json(s: &Scalar) -> serde_json::Value {
    match s {
        Scalar::Exact(x) => json!(x.to_string()),
        Scalar::Num(z) => {
            if z.im == 0.0 {
                json!(z.re)
            } else {
                json!({"re": z.re, "im": z.im})
            }
        }
    }
}

fn no_csv(format: Format) -> Result<(), CliFailure> {
    if format == Format::Csv {
        Err(CliFailure::Usage("CSV output is only available for sl2-norms and verify".into()))
    } else {
        Ok(())
    }
}

enum CliFailure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliFailure {
    fn from(e: Error) -> Self {
        CliFailure::Domain(e)
    }
}

fn run(cli: Cli) -> Result<(), CliFailure> {
    let format = cli.format;
    match cli.command {
        Command::Normalize { rank, expr } => {
            no_csv(format)?;
            let cartan = CartanData::type_a(rank)?;
            let x = parse_element(cartan, &expr)?;
            match format {
                Format::Json => println!(
                    "{}",
                    json!({"rank": rank, "input": expr, "normalized": x.to_string(), "terms": x.num_terms()})
                ),
                _ => println!("{}", x),
            }
        }
        Command::PhiEval { rank, subset, lambda, mu, expr } => {
            no_csv(format)?;
            let cartan = CartanData::type_a(rank)?;
            let s = parse_subset(&cartan, &subset)?;
            let rep = OneDimRep::exact(cartan, s, parse_qrat_list(&lambda)?, parse_qrat_list(&mu)?)?;
            let x = parse_element(cartan, &expr)?;
            let v = rep.phi_eval(&x)?;
            match format {
                Format::Json => println!("{}", json!({"input": expr, "phi": scalar_json(&v)})),
                _ => println!("{}", v),
            }
        }
        Command::Sl2Analyze(args) => {
            no_csv(format)?;
            let p = args.params()?;
            let report = analyze(&p)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                _ => {
                    println!("parameters: {}", report["params"]);
                    println!("casimir:    {}", report["casimir"]);
                    println!("nE: {}, nF: {}", report["nE"], report["nF"]);
                    println!("submodules: {}", report["submodules"]);
                    println!("irreducible: {}", report["irreducible"]);
                    println!("quotient_dims: {}", report["quotient_dims"]);
                }
            }
        }
        Command::Sl2Norms { params, max_n } => {
            let p = params.params()?;
            let rows: Vec<(u32, Scalar, Scalar)> =
                (0..=max_n).map(|n| (n, norm_sq_e(&p, n), norm_sq_f(&p, n))).collect();
            match format {
                Format::Csv => {
                    println!("n,norm_sq_E,norm_sq_F");
                    for (n, e, f) in &rows {
                        println!("{},{},{}", n, e, f);
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|(n, e, f)| {
                            json!({"n": n, "norm_sq_E": scalar_json(e), "norm_sq_F": scalar_json(f)})
                        })
                        .collect();
                    println!("{}", json!({"norms": rows}));
                }
                Format::Text => {
                    for (n, e, f) in &rows {
                        println!("n = {:3}: |E^n 1|^2 = {}, |F^n 1|^2 = {}", n, e, f);
                    }
                }
            }
        }
        Command::Sl2Classify(args) => {
            no_csv(format)?;
            let q0 = args.q.value()?;
            let p = args.params()?;
            let series = classify_series(&p, q0);
            // Degenerate parameters are reducible, so the positivity check
            // does not apply; the series label (discrete) still does.
            let report = match is_unitarizable(&p, q0) {
                Ok(r) => Some(r),
                Err(Error::ReducibleInput) => None,
                Err(e) => return Err(e.into()),
            };
            let unitarizable = report.as_ref().map(|r| r.unitarizable).unwrap_or(series.is_ok());
            let value = json!({
                "q": q0,
                "necessary": report.as_ref().map(|r| json!({
                    "lambda_real_nonzero": r.necessary.lambda_real_nonzero,
                    "mu_lambda_negative": r.necessary.mu_lambda_negative,
                    "type_i": r.necessary.type_i,
                    "ok": r.necessary.ok,
                })),
                "positivity": report.as_ref().map(|r| json!({
                    "E": r.e_side.map(|v| v.to_string()),
                    "F": r.f_side.map(|v| v.to_string()),
                })),
                "reducible": report.is_none(),
                "unitarizable": unitarizable,
                "series": match &series {
                    Ok(l) => series_json(l),
                    Err(e) => json!({"unclassifiable": e.to_string()}),
                },
            });
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
                _ => {
                    println!("unitarizable: {}", unitarizable);
                    match &series {
                        Ok(l) => println!("series: {}", l),
                        Err(e) => println!("series: unclassifiable ({})", e),
                    }
                }
            }
        }
        Command::Sl2Equiv { q, lambda1, mu1, lambda2, mu2, numeric } => {
            no_csv(format)?;
            let mk = |l: &str, m: &str| -> Result<Rank1Sl2Params, Error> {
                let args = Sl2ParamArgs {
                    q: QArg { q: q.q.clone() },
                    lambda: l.into(),
                    mu: m.into(),
                    numeric,
                };
                args.params()
            };
            let p1 = mk(&lambda1, &mu1)?;
            let p2 = mk(&lambda2, &mu2)?;
            let n = are_equivalent(&p1, &p2)?;
            match format {
                Format::Json => println!(
                    "{}",
                    json!({"equivalent": n.is_some(), "shift": n})
                ),
                _ => match n {
                    Some(n) => println!("equivalent via lambda -> lambda q^{}", 2 * n),
                    None => println!("not equivalent"),
                },
            }
        }
        Command::RanknAnalyze { rank, subset, lambda, mu, samples, seed } => {
            no_csv(format)?;
            let cartan = CartanData::type_a(rank)?;
            let s = parse_subset(&cartan, &subset)?;
            let rep = OneDimRep::exact(cartan, s, parse_qrat_list(&lambda)?, parse_qrat_list(&mu)?)?;
            let report = rankn::rankn_analyze(&rep, samples, seed)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                _ => {
                    println!("rank {} subset {}", report["rank"], report["subset"]);
                    for node in report["nodes"].as_array().unwrap() {
                        println!(
                            "node {}: lambda = {}, mu = {}, casimir = {}",
                            node["node"], node["lambda"], node["mu"], node["casimir"]
                        );
                    }
                    for w in report["proper_submodule_witnesses"].as_array().unwrap() {
                        println!(
                            "witness at node {}: holds = {} ({} samples, min F-height {})",
                            w["node"], w["holds"], w["samples"], w["min_f_height"]
                        );
                    }
                }
            }
        }
        Command::Verify { suite } => {
            let outcomes: Vec<SuiteOutcome> = if suite == "all" {
                // suites are independent; run them in parallel
                let handles: Vec<_> = suite_names()
                    .into_iter()
                    .map(|n| std::thread::spawn(move || run_suite(n).unwrap()))
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            } else {
                match run_suite(&suite) {
                    Some(o) => vec![o],
                    None => {
                        return Err(CliFailure::Usage(format!(
                            "unknown suite '{}'; known suites: {}",
                            suite,
                            suite_names().join(", ")
                        )))
                    }
                }
            };
            match format {
                Format::Json => {
                    let rows: Vec<_> = outcomes
                        .iter()
                        .map(|o| json!({"suite": o.name, "passed": o.passed, "detail": o.detail}))
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&json!(rows)).unwrap());
                }
                Format::Csv => {
                    println!("suite,passed,detail");
                    for o in &outcomes {
                        println!("{},{},\"{}\"", o.name, o.passed, o.detail.replace('"', "'"));
                    }
                }
                Format::Text => {
                    for o in &outcomes {
                        println!("{} {} - {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
                    }
                }
            }
            if outcomes.iter().any(|o| !o.passed) {
                return Err(CliFailure::Domain(Error::Domain(
                    "one or more suites failed".into(),
                )));
            }
        }
        Command::Repcheck { rank, expr } => {
            no_csv(format)?;
            let cartan = CartanData::type_a(rank)?;
            let x = parse_element(cartan, &expr)?;
            let m = rep_check(&x)?;
            match format {
                Format::Json => {
                    let rows: Vec<Vec<String>> = (0..m.dim())
                        .map(|r| (0..m.dim()).map(|c| m.get(r, c).to_string()).collect())
                        .collect();
                    println!("{}", json!({"dim": m.dim(), "matrix": rows}));
                }
                _ => print!("{}", m),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliFailure::Usage(msg)) => {
            eprintln!("usage error: {}", msg);
            ExitCode::from(2)
        }
        Err(CliFailure::Domain(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}
