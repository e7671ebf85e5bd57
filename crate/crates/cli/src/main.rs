//! `lagma`: classify and test symplectic Monge-Ampère equations.
//!
//! Exit codes: 0 success, 2 rejected input, 3 inconclusive sampling,
//! 1 internal failure.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lagma::algebra::rational::parse_pq;
use lagma::algebra::{Polynomial, RatMatrix, Rational};
use lagma::builtins::{builtin, BUILTINS};
use lagma::expr::{parse_equation, parse_polynomial};
use lagma::forms::b_omega_lambda;
use lagma::grassmann::singular::DEFAULT_RANK_SAMPLES;
use lagma::grassmann::{
    expected_dimension, meets_all_sublagrangians, minor_basis, partial_legendre,
    singular_locus_quadratic, MAEquation,
};
use lagma::integrability::{
    classify_quartic_pair, ef_coordinates, identify_equation, integrable_4d, linearisable_3d,
    travelling_wave_reduce, EquationKind, Linearisability, ReductionSample, Verdict, DEFAULT_SEED,
    DEFAULT_TRIALS,
};
use lagma::laxpair::{known_pair, verify_lax, LaxField, LaxMode, DEFAULT_LAX_TRIALS};
use lagma::liesp::{nondegenerate, symmetry_algebra, symmetry_dimension, SymmetryReport};
use lagma::Error;

#[derive(Parser)]
#[command(
    name = "lagma",
    version,
    about = "Symplectic Monge-Ampere equations as hyperplane sections of the Lagrangian Grassmannian"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sampling budget (reductions, rank points or Lax trials).
    #[arg(long, global = true)]
    trials: Option<usize>,
}

#[derive(Args, Clone)]
struct Source {
    /// A named equation; see `basis-info --builtins`.
    #[arg(long, conflicts_with_all = ["expr", "file"])]
    builtin: Option<String>,
    /// An equation such as "u13*u24 - u14*u23 = 1".
    #[arg(long, conflicts_with = "file", allow_hyphen_values = true)]
    expr: Option<String>,
    /// Dimension for --expr.
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// An equation file (JSON minor-basis coordinates).
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    ModSpan,
}

#[derive(Subcommand)]
enum Command {
    /// Identification, E+F case and integrability verdict.
    Classify(Source),
    /// Fingerprint and normal-form name of a 4D equation.
    Identify(Source),
    /// Symmetry algebra inside sp(2n).
    Symmetry(Source),
    /// Verify a Lax pair on the equation's solutions.
    LaxCheck {
        /// A known pair: six-dimensional, second-heavenly, modified-heavenly,
        /// first-heavenly, husain or general-heavenly.
        #[arg(long, conflicts_with_all = ["x1", "x2"])]
        pair: Option<String>,
        #[arg(long, requires = "x2", allow_hyphen_values = true)]
        x1: Option<String>,
        #[arg(long, requires = "x1", allow_hyphen_values = true)]
        x2: Option<String>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[command(flatten)]
        source: Source,
    },
    /// The invariant lambda of B_omega for n = 4.
    Lambda(Source),
    /// Travelling-wave reduction of a 4D equation.
    Reduce {
        #[command(flatten)]
        source: Source,
        /// alpha,beta,gamma.
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        /// Upper triangle of Q, row by row (10 entries).
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// Coordinate relabelling, 1-based.
        #[arg(long)]
        perm: Option<String>,
    },
    /// Partial Legendre transform in the given indices.
    Legendre {
        #[command(flatten)]
        source: Source,
        /// 1-based indices, e.g. "1,3"; empty for the identity chart.
        #[arg(long, default_value = "")]
        chart: String,
        /// Write the transformed equation file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Singular locus of a purely quadratic equation.
    Singular(Source),
    /// Linearisability test.
    Linearisable(Source),
    /// Dimensions of the minor span.
    BasisInfo {
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// List the basis polynomials.
        #[arg(long)]
        list: bool,
        /// List the named equations.
        #[arg(long)]
        builtins: bool,
    },
}

enum Failure {
    Rejected(String),
    Inconclusive(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoSamplePoint { .. } => Failure::Inconclusive(e.to_string()),
            Error::ProportionalityViolation => Failure::Internal(e.to_string()),
            _ => Failure::Rejected(e.to_string()),
        }
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn load(source: &Source) -> Result<MAEquation, Failure> {
    match (&source.builtin, &source.expr, &source.file) {
        (Some(name), _, _) => Ok(builtin(name)?),
        (_, Some(text), _) => Ok(parse_equation(source.n, text)?),
        (_, _, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Rejected(format!("{}: {e}", path.display())))?;
            Ok(MAEquation::from_json(&text)?)
        }
        _ => Err(Failure::Rejected(
            "give one of --builtin, --expr or --file".into(),
        )),
    }
}

fn parse_list(text: &str) -> Result<Vec<Rational>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| parse_pq(s).map_err(Failure::from))
        .collect()
}

fn parse_indices(text: &str, n: usize) -> Result<Vec<usize>, Failure> {
    parse_list(text)?
        .iter()
        .map(|r| {
            let k = r.to_integer().try_into().unwrap_or(0usize);
            if r.is_integer() && (1..=n).contains(&k) {
                Ok(k - 1)
            } else {
                Err(Failure::Rejected(format!("index {r} out of range 1..={n}")))
            }
        })
        .collect()
}

fn matrix_json(m: &RatMatrix) -> Value {
    json!(m
        .to_rows()
        .iter()
        .map(|r| r
            .iter()
            .map(Rational::to_string)
            .collect::<Vec<_>>()
            .join(" "))
        .collect::<Vec<_>>())
}

fn provenance(seed: u64, trials: usize) -> Value {
    json!({"seed": seed, "trials": trials})
}

fn equation_json(eq: &MAEquation) -> Value {
    json!({"n": eq.n(), "polynomial": eq.poly().to_string(), "file": eq.to_file()})
}

fn classify(cli: &Cli, source: &Source) -> Outcome {
    let eq = load(source)?;
    let trials = cli.trials.unwrap_or(DEFAULT_TRIALS);
    match eq.n() {
        3 => {
            let lin = linearisable_3d(&eq, cli.seed)?;
            Ok((
                json!({
                    "equation": equation_json(&eq),
                    "symmetry_dim": symmetry_dimension(&eq)?,
                    "linearisability": lin,
                    "provenance": provenance(cli.seed, 0),
                }),
                true,
            ))
        }
        4 => {
            let (fingerprint, kind) = identify_equation(&eq, cli.seed)?;
            let case = match ef_coordinates(&eq) {
                Ok(pair) => Some((pair.clone(), classify_quartic_pair(&pair)?)),
                Err(Error::NotInEF) => None,
                Err(e) => return Err(e.into()),
            };
            let case_kind = case.as_ref().and_then(|(_, c)| c.kind);
            let agreement = match (kind, case_kind) {
                (Some(a), Some(b)) => Some(a == b),
                (None, Some(EquationKind::HessOne | EquationKind::Degenerate)) => Some(true),
                (None, Some(_)) => Some(false),
                _ => None,
            };
            let report = integrable_4d(&eq, trials, cli.seed)?;
            let name = kind
                .or(case_kind)
                .map(EquationKind::name)
                .unwrap_or("unknown");
            let ef = case.map(|(pair, c)| {
                json!({"p": pair.p.to_string(), "q": pair.q.to_string(), "classification": c})
            });
            let conclusive = report.verdict != Verdict::Inconclusive;
            Ok((
                json!({
                    "equation": equation_json(&eq),
                    "name": name,
                    "fingerprint": fingerprint,
                    "ef_case": ef,
                    "agreement": agreement,
                    "integrability": report,
                    "provenance": provenance(cli.seed, trials),
                }),
                conclusive,
            ))
        }
        n => Err(Failure::Rejected(format!(
            "classify needs n = 3 or 4, got {n}"
        ))),
    }
}

fn identify(cli: &Cli, source: &Source) -> Outcome {
    let eq = load(source)?;
    let (fingerprint, kind) = identify_equation(&eq, cli.seed)?;
    Ok((
        json!({
            "equation": equation_json(&eq),
            "name": kind.map(EquationKind::name).unwrap_or("unknown"),
            "fingerprint": fingerprint,
            "provenance": provenance(cli.seed, 0),
        }),
        true,
    ))
}

fn symmetry(source: &Source) -> Outcome {
    let eq = load(source)?;
    let g = symmetry_algebra(&eq)?;
    let r = SymmetryReport::new(&g);
    Ok((
        json!({
            "equation": equation_json(&eq),
            "dim": r.dim,
            "center_dim": r.center_dim,
            "derived_dim": r.derived_dim,
            "radical_dim": r.radical_dim,
            "reductive": r.reductive,
            "basis": r.basis,
        }),
        true,
    ))
}

fn lax_check(
    cli: &Cli,
    pair: &Option<String>,
    x: (&Option<String>, &Option<String>),
    mode: Option<ModeArg>,
    source: &Source,
) -> Outcome {
    let trials = cli.trials.unwrap_or(DEFAULT_LAX_TRIALS);
    let (label, n, x1, x2, eq, default_mode): (
        String,
        usize,
        LaxField,
        LaxField,
        Polynomial,
        LaxMode,
    ) = match (pair, x) {
        (Some(name), _) => {
            let p = known_pair(name)?;
            let (x1, x2) = p.fields()?;
            (name.clone(), p.n, x1, x2, p.polynomial()?, p.mode)
        }
        (None, (Some(a), Some(b))) => {
            let (n, eq) = match (&source.builtin, &source.expr) {
                (Some(name), _) => {
                    let eq = builtin(name)?;
                    (eq.n(), eq.poly().clone())
                }
                (_, Some(text)) => (source.n, parse_polynomial(source.n, text)?),
                _ => return Err(Failure::Rejected("give --builtin or --expr".into())),
            };
            (
                "custom".into(),
                n,
                LaxField::parse(n, a)?,
                LaxField::parse(n, b)?,
                eq,
                LaxMode::Strict,
            )
        }
        _ => return Err(Failure::Rejected("give --pair, or --x1 and --x2".into())),
    };
    let mode = match mode {
        Some(ModeArg::Strict) => LaxMode::Strict,
        Some(ModeArg::ModSpan) => LaxMode::ModSpan,
        None => default_mode,
    };
    let verdict = verify_lax(&x1, &x2, &eq, mode, trials, cli.seed)?;
    Ok((
        json!({
            "pair": label,
            "n": n,
            "equation": eq.to_string(),
            "x1": x1.to_string(),
            "x2": x2.to_string(),
            "verdict": verdict,
            "provenance": provenance(cli.seed, trials),
        }),
        true,
    ))
}

fn lambda(source: &Source) -> Outcome {
    let eq = load(source)?;
    let b = b_omega_lambda(&eq)?;
    Ok((
        json!({
            "equation": equation_json(&eq),
            "lambda_zero": b.lambda_zero,
            "lambda": b.lambda.to_string(),
        }),
        true,
    ))
}

fn reduce(
    cli: &Cli,
    source: &Source,
    k: &str,
    q: &Option<String>,
    perm: &Option<String>,
) -> Outcome {
    let eq = load(source)?;
    let k = parse_list(k)?;
    let k: [Rational; 3] = k
        .try_into()
        .map_err(|_| Failure::Rejected("--k needs three entries".into()))?;
    let mut qm = RatMatrix::zeros(4, 4);
    if let Some(q) = q {
        let entries = parse_list(q)?;
        if entries.len() != 10 {
            return Err(Failure::Rejected("--q needs ten entries".into()));
        }
        let mut it = entries.into_iter();
        for i in 0..4 {
            for j in i..4 {
                let v = it.next().expect("ten entries");
                qm[(i, j)] = v.clone();
                qm[(j, i)] = v;
            }
        }
    }
    let mut sample = ReductionSample::new(k, qm);
    if let Some(p) = perm {
        let p = parse_indices(p, 4)?;
        let mut sorted = p.clone();
        sorted.sort_unstable();
        if sorted != [0, 1, 2, 3] {
            return Err(Failure::Rejected(
                "--perm must be a permutation of 1,2,3,4".into(),
            ));
        }
        sample.perm = [p[0], p[1], p[2], p[3]];
    }
    let reduced = travelling_wave_reduce(&eq, &sample)?;
    let lin = linearisable_3d(&reduced, cli.seed)?;
    Ok((
        json!({
            "equation": equation_json(&eq),
            "sample": sample.record(),
            "reduced": equation_json(&reduced),
            "linearisability": lin,
        }),
        true,
    ))
}

fn legendre(source: &Source, chart: &str, out: &Option<PathBuf>) -> Outcome {
    let eq = load(source)?;
    let s = parse_indices(chart, eq.n())?;
    let moved = partial_legendre(&eq, &s)?;
    if let Some(path) = out {
        std::fs::write(path, moved.to_json())
            .map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))?;
    }
    Ok((
        json!({
            "equation": equation_json(&eq),
            "chart": s.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "transformed": equation_json(&moved),
        }),
        true,
    ))
}

fn singular(cli: &Cli, source: &Source) -> Outcome {
    let eq = load(source)?;
    let locus = singular_locus_quadratic(&eq)?;
    let samples = cli.trials.unwrap_or(DEFAULT_RANK_SAMPLES);
    let meets = if eq.n() == 4 {
        Some(meets_all_sublagrangians(&locus.kernel, samples, cli.seed)?)
    } else {
        None
    };
    Ok((
        json!({
            "equation": equation_json(&eq),
            "dim": locus.dim,
            "kernel": locus.kernel.iter().map(matrix_json).collect::<Vec<_>>(),
            "meets_all_sublagrangians": meets,
            "provenance": provenance(cli.seed, samples),
        }),
        true,
    ))
}

fn linearisable(cli: &Cli, source: &Source) -> Outcome {
    let eq = load(source)?;
    let (status, dim) = match eq.n() {
        3 => (linearisable_3d(&eq, cli.seed)?, symmetry_dimension(&eq)?),
        4 => {
            let dim = symmetry_dimension(&eq)?;
            let status = if !nondegenerate(&eq, 8, cli.seed)? {
                Linearisability::Degenerate
            } else if dim == 16 {
                Linearisability::Linearisable
            } else {
                Linearisability::NotLinearisable
            };
            (status, dim)
        }
        n => {
            return Err(Failure::Rejected(format!(
                "linearisable needs n = 3 or 4, got {n}"
            )))
        }
    };
    Ok((
        json!({
            "equation": equation_json(&eq),
            "linearisable": status == Linearisability::Linearisable,
            "status": status,
            "symmetry_dim": dim,
        }),
        true,
    ))
}

fn basis_info(n: usize, list: bool, builtins: bool) -> Outcome {
    let basis = minor_basis(n)?;
    let mut report = json!({
        "n": n,
        "dimension": basis.len(),
        "expected": expected_dimension(n),
        "per_degree": basis.dims,
    });
    if list {
        report["basis"] = json!(basis
            .polys
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>());
    }
    if builtins {
        report["builtins"] = json!(BUILTINS
            .iter()
            .map(|b| format!("{} (n = {}): {} = 0", b.name, b.n, b.expr))
            .collect::<Vec<_>>());
    }
    Ok((report, true))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify(s) => classify(cli, s),
        Command::Identify(s) => identify(cli, s),
        Command::Symmetry(s) => symmetry(s),
        Command::LaxCheck {
            pair,
            x1,
            x2,
            mode,
            source,
        } => lax_check(cli, pair, (x1, x2), *mode, source),
        Command::Lambda(s) => lambda(s),
        Command::Reduce { source, k, q, perm } => reduce(cli, source, k, q, perm),
        Command::Legendre { source, chart, out } => legendre(source, chart, out),
        Command::Singular(s) => singular(cli, s),
        Command::Linearisable(s) => linearisable(cli, s),
        Command::BasisInfo { n, list, builtins } => basis_info(*n, *list, *builtins),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, conclusive)) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                );
            } else {
                print!("{}", report::render_text(&report));
            }
            if conclusive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(Failure::Rejected(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("inconclusive: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
