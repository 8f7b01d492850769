//! Command-line front end. Exit codes: 0 pass/feasible, 1 fail/infeasible, 2 usage or input error.

mod format;
mod input;

use std::fs::File;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use niep3::bounds::{bound_constants, canonical_completion, classify_region_q, classify_region_r, in_region_r, omega1_range};
use niep3::oracle::{necessity_trial, random_realizable_spectrum, range_audit, trial_rng, ScanConfig};
use niep3::{
    check, check_pair, construct, construct_pair, normalize_unit, power_sum_diagnostics, range_pair, realizable,
    realizable_pair, verify, DiagonalTriple, Error, MatrixClass, PairDiagonal, Spectrum, Tolerance,
};
use serde::Serialize;
use serde_json::{json, Value};

pub use format::{number, to_json};
pub use input::{parse_abc, parse_lambda, parse_omega, read_matrix, DiagonalArg, SpectrumArg};

#[derive(Debug, Parser)]
#[command(name = "niep3", version, about = "3x3 nonnegative inverse eigenvalue problem with prescribed diagonal")]
struct Cli {
    /// Relative tolerance for every comparison.
    #[arg(long, global = true, env = "NIEP3_TOL", allow_hyphen_values = true)]
    tol: Option<f64>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SpectrumOpts {
    /// Eigenvalues: x,y,z or a,b+ci,b-ci; two values select the 2x2 case.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "abc", conflicts_with = "abc")]
    lambda: Option<String>,
    /// Real eigenvalue a and conjugate pair b ± ci.
    #[arg(long, allow_hyphen_values = true)]
    abc: Option<String>,
}

#[derive(Debug, Args)]
struct ClassOpt {
    #[arg(long, value_parser = input::parse_class)]
    class: MatrixClass,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the condition set for a spectrum and diagonal.
    Check {
        #[command(flatten)]
        class: ClassOpt,
        #[command(flatten)]
        spectrum: SpectrumOpts,
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
    },
    /// Eigenvalue-only realizability.
    Realizable {
        #[command(flatten)]
        class: ClassOpt,
        #[command(flatten)]
        spectrum: SpectrumOpts,
    },
    /// Feasible interval of the largest diagonal entry.
    Range {
        #[command(flatten)]
        class: ClassOpt,
        #[command(flatten)]
        spectrum: SpectrumOpts,
        /// Also print the canonical diagonal with this largest entry.
        #[arg(long, allow_hyphen_values = true)]
        omega1: Option<f64>,
    },
    /// Build a matrix; the diagonal defaults to the canonical one at the range midpoint.
    Construct {
        #[command(flatten)]
        class: ClassOpt,
        #[command(flatten)]
        spectrum: SpectrumOpts,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "omega1")]
        omega: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        omega1: Option<f64>,
        /// Divide a stochastic-class matrix by λ1.
        #[arg(long)]
        normalize: bool,
    },
    /// Eigenvalues and class membership of a matrix read as JSON.
    Verify {
        /// JSON file; stdin when absent.
        file: Option<PathBuf>,
        /// Claimed eigenvalues to compare against.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Claimed diagonal to compare against.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
    },
    /// CSV over the region R with λ1 = 1.
    Sweep {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(2..=2000))]
        grid: u32,
    },
    /// Necessity trials, a range audit and power-sum checks for one class.
    Diagnose {
        #[command(flatten)]
        class: ClassOpt,
        /// Spectrum to audit; a random realizable one when absent.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(2..))]
        grid: u32,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
    },
}

/// Output text and exit code of a successfully parsed command.
struct Outcome {
    text: String,
    code: i32,
}

fn verdict(v: Value, pass: bool) -> Outcome {
    Outcome { text: to_json(&v), code: if pass { 0 } else { 1 } }
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Errors that describe the mathematics of the input rather than its form.
fn is_verdict(e: &Error) -> bool {
    matches!(
        e,
        Error::InfeasibleInput { .. }
            | Error::OutOfRange { .. }
            | Error::EmptyRange { .. }
            | Error::NegativeEntry { .. }
            | Error::NegativeRadicand { .. }
            | Error::OutsideRegion
    )
}

enum Failure {
    Usage(String),
    Verdict(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if is_verdict(&e) {
            Failure::Verdict(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn flag(name: &str) -> impl Fn(String) -> Failure + '_ {
    move |msg| Failure::Usage(format!("invalid value for '--{name}': {msg}"))
}

fn spectrum_arg(opts: &SpectrumOpts, tol: &Tolerance<f64>) -> Result<SpectrumArg, Failure> {
    match (&opts.lambda, &opts.abc) {
        (Some(l), _) => input::parse_lambda(l, tol).map_err(flag("lambda")),
        (None, Some(a)) => input::parse_abc(a).map(SpectrumArg::Triple).map_err(flag("abc")),
        (None, None) => Err(Failure::Usage("one of '--lambda' or '--abc' is required".into())),
    }
}

fn failed(items: &[niep3::ConditionItem<f64>]) -> Value {
    Value::from(items.iter().filter(|i| !i.satisfied).map(|i| i.description).collect::<Vec<_>>())
}

fn require_pair_diagonal(d: DiagonalArg) -> Result<PairDiagonal<f64>, Failure> {
    match d {
        DiagonalArg::Pair(d) => Ok(d),
        DiagonalArg::Triple(_) => Err(Failure::Usage("invalid value for '--omega': two eigenvalues need two diagonal entries".into())),
    }
}

fn require_triple_diagonal(d: DiagonalArg) -> Result<DiagonalTriple<f64>, Failure> {
    match d {
        DiagonalArg::Triple(d) => Ok(d),
        DiagonalArg::Pair(_) => Err(Failure::Usage("invalid value for '--omega': three eigenvalues need three diagonal entries".into())),
    }
}

fn cmd_check(class: MatrixClass, s: SpectrumArg, omega: &str, tol: &Tolerance<f64>) -> Result<Outcome, Failure> {
    let d = input::parse_omega(omega).map_err(flag("omega"))?;
    let report = match s {
        SpectrumArg::Pair(s) => check_pair(class, &s, &require_pair_diagonal(d)?, tol),
        SpectrumArg::Triple(s) => check(class, &s, &require_triple_diagonal(d)?, tol)?,
    };
    let mut v = value(&report);
    v["failed"] = failed(&report.items);
    Ok(verdict(v, report.overall))
}

fn cmd_realizable(class: MatrixClass, s: SpectrumArg, tol: &Tolerance<f64>) -> Result<Outcome, Failure> {
    let report = match s {
        SpectrumArg::Pair(s) => realizable_pair(class, &s, tol),
        SpectrumArg::Triple(s) => realizable(class, &s, tol)?,
    };
    let mut v = value(&report);
    v["failed"] = failed(&report.items);
    Ok(verdict(v, report.satisfied))
}

fn cmd_range(class: MatrixClass, s: SpectrumArg, omega1: Option<f64>, tol: &Tolerance<f64>) -> Result<Outcome, Failure> {
    let (interval, mut v) = match s {
        SpectrumArg::Pair(s) => {
            let r = range_pair(class, &s, tol);
            (r, json!({ "class": class, "spectrum": [s.l1(), s.l2()] }))
        }
        SpectrumArg::Triple(s) => {
            let r = omega1_range(class, &s, tol)?;
            let mut v = json!({ "class": class, "spectrum": s, "constants": bound_constants(&s, tol) });
            if in_region_r(&s, tol) {
                v["region_r"] = value(&classify_region_r(&s, tol)?);
                v["region_q"] = value(&classify_region_q(&s, tol)?);
            }
            if let Some(w1) = omega1 {
                v["completion"] = match canonical_completion(class, &s, w1, tol) {
                    Ok(d) => value(&d),
                    Err(e) => json!({ "error": e.to_string() }),
                };
            }
            (r, v)
        }
    };
    v["lo"] = json!(interval.lo);
    v["hi"] = json!(interval.hi);
    v["empty"] = json!(interval.empty);
    Ok(verdict(v, !interval.empty))
}

fn cmd_construct(
    class: MatrixClass,
    s: SpectrumArg,
    omega: Option<&str>,
    omega1: Option<f64>,
    normalize: bool,
    tol: &Tolerance<f64>,
) -> Result<Outcome, Failure> {
    let omega = omega.map(input::parse_omega).transpose().map_err(flag("omega"))?;
    match s {
        SpectrumArg::Pair(s) => {
            let d = match (omega, omega1) {
                (Some(d), _) => require_pair_diagonal(d)?,
                (None, w1) => {
                    let r = range_pair(class, &s, tol);
                    if r.empty {
                        return Err(Error::EmptyRange { class }.into());
                    }
                    let w1 = w1.unwrap_or_else(|| r.midpoint());
                    PairDiagonal::new(w1, s.l1() + s.l2() - w1)?
                }
            };
            let m = construct_pair(class, &s, &d, tol)?;
            let m = if normalize { scale_pair(class, m, s.l1(), tol)? } else { m };
            let eig = m.real_eigenvalues();
            let v = json!({ "class": class, "spectrum": [s.l1(), s.l2()], "diagonal": [d.w1(), d.w2()],
                "matrix": m.0, "eigenvalues": eig.map(|(a, b)| [a, b]) });
            Ok(verdict(v, true))
        }
        SpectrumArg::Triple(s) => {
            let d = match (omega, omega1) {
                (Some(d), _) => require_triple_diagonal(d)?,
                (None, w1) => {
                    let r = omega1_range(class, &s, tol)?;
                    if r.empty {
                        return Err(Error::EmptyRange { class }.into());
                    }
                    canonical_completion(class, &s, w1.unwrap_or_else(|| r.midpoint()), tol)?
                }
            };
            let result = construct(class, &s, &d, tol)?;
            let (matrix, s_out, d_out) = if normalize {
                let m = normalize_unit(&result, &s, tol)?;
                let k = 1.0 / s.lambda1();
                (m, s.scaled(k), d.scaled(k))
            } else {
                (result.matrix, s, d)
            };
            let report = verify(&matrix, Some(&s_out), Some(&d_out), tol);
            let pass = report.satisfies(class) && report.diagonal_match == Some(true);
            let v = json!({
                "class": class,
                "spectrum": s_out,
                "diagonal": d_out,
                "normalized": normalize,
                "matrix": matrix,
                "auxiliaries": result.auxiliaries,
                "verification": report,
            });
            Ok(verdict(v, pass))
        }
    }
}

fn scale_pair(class: MatrixClass, m: niep3::Matrix2<f64>, l1: f64, tol: &Tolerance<f64>) -> Result<niep3::Matrix2<f64>, Failure> {
    if !class.is_stochastic() {
        return Err(Error::InvalidArgument(format!("cannot normalize a {class} matrix")).into());
    }
    if l1 <= tol.rel {
        return Err(Error::NonPositiveScale(l1).into());
    }
    Ok(niep3::Matrix2(m.0.map(|r| r.map(|x| x / l1))))
}

fn cmd_verify(
    file: Option<&PathBuf>,
    lambda: Option<&str>,
    omega: Option<&str>,
    stdin: &mut dyn Read,
    tol: &Tolerance<f64>,
) -> Result<Outcome, Failure> {
    let m = match file {
        Some(path) => {
            let f = File::open(path).map_err(|e| Failure::Usage(format!("cannot open {}: {e}", path.display())))?;
            input::read_matrix(f)
        }
        None => input::read_matrix(stdin),
    }
    .map_err(Failure::Usage)?;
    let claimed = match lambda.map(|l| input::parse_lambda(l, tol)).transpose().map_err(flag("lambda"))? {
        Some(SpectrumArg::Triple(s)) => Some(s),
        Some(SpectrumArg::Pair(_)) => return Err(Failure::Usage("invalid value for '--lambda': a 3x3 matrix needs three eigenvalues".into())),
        None => None,
    };
    let claimed_diag = omega.map(input::parse_omega).transpose().map_err(flag("omega"))?.map(require_triple_diagonal).transpose()?;
    let report = verify(&m, claimed.as_ref(), claimed_diag.as_ref(), tol);
    let spectrum_ok = report.spectrum_error.is_none_or(|e| e <= tol.rel.sqrt());
    let pass = report.nonnegative && spectrum_ok && report.diagonal_match != Some(false);
    let mut v = value(&report);
    v["matrix"] = value(&m);
    Ok(verdict(v, pass))
}

fn cmd_sweep(grid: u32, tol: &Tolerance<f64>) -> Result<Outcome, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["lambda2".to_string(), "lambda3".to_string()];
    for c in MatrixClass::ALL {
        header.push(format!("realizable_{}", c.name().replace('-', "_")));
    }
    for c in MatrixClass::ALL {
        let c = c.name().replace('-', "_");
        header.push(format!("lo_{c}"));
        header.push(format!("hi_{c}"));
    }
    header.extend(["region_r".to_string(), "region_q".to_string()]);
    w.write_record(&header).map_err(|e| Failure::Usage(e.to_string()))?;

    let n = grid as usize;
    let at = |i: usize, lo: f64, hi: f64| lo + (hi - lo) * i as f64 / (n - 1) as f64;
    for i in 0..n {
        let l2 = at(i, -0.5, 1.0);
        for j in 0..n {
            let l3 = at(j, -1.0, 1.0);
            if l3 > l2 + tol.rel {
                continue;
            }
            let l3 = l3.min(l2);
            let s = Spectrum::real(1.0, l2, l3)?;
            if !in_region_r(&s, tol) {
                continue;
            }
            let mut row = vec![number(l2), number(l3)];
            let mut ranges = Vec::new();
            for c in MatrixClass::ALL {
                row.push(realizable(c, &s, tol)?.satisfied.to_string());
                let r = omega1_range(c, &s, tol)?;
                let (lo, hi) = if r.empty { (String::new(), String::new()) } else { (number(r.lo), number(r.hi)) };
                ranges.push(lo);
                ranges.push(hi);
            }
            row.extend(ranges);
            row.push(format!("{:?}", classify_region_r(&s, tol)?));
            row.push(format!("{:?}", classify_region_q(&s, tol)?));
            w.write_record(&row).map_err(|e| Failure::Usage(e.to_string()))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(Outcome { text: String::from_utf8(bytes).expect("csv output is utf-8"), code: 0 })
}

fn cmd_diagnose(
    class: MatrixClass,
    lambda: Option<&str>,
    cfg: ScanConfig,
    kmax: u32,
    tol: &Tolerance<f64>,
) -> Result<Outcome, Failure> {
    let s = match lambda.map(|l| input::parse_lambda(l, tol)).transpose().map_err(flag("lambda"))? {
        Some(SpectrumArg::Triple(s)) => s,
        Some(SpectrumArg::Pair(_)) => return Err(Failure::Usage("invalid value for '--lambda': diagnose needs three eigenvalues".into())),
        None => random_realizable_spectrum(class, false, &mut trial_rng(cfg.seed, u64::MAX)),
    };
    let necessity = necessity_trial(class, &cfg, tol);
    let audit = range_audit(class, &s, &cfg, tol);
    let powers = power_sum_diagnostics(&s, kmax, tol)?;
    let gap_bound = (2.0 / cfg.grid_n as f64).max(1e-3) * s.scale();
    let audit_ok = audit.as_ref().is_ok_and(|a| a.max_endpoint_gap <= gap_bound);
    let v = json!({
        "class": class,
        "spectrum": s,
        "config": cfg,
        "necessity": {
            "trials": necessity.trials,
            "counterexamples": necessity.failures.len(),
            "first": necessity.failures.first(),
        },
        "range_audit": match &audit {
            Ok(a) => json!({ "empirical": a.empirical, "formula": a.formula,
                "max_endpoint_gap": a.max_endpoint_gap, "gap_bound": gap_bound }),
            Err(e) => json!({ "error": e.to_string() }),
        },
        "power_sums": powers,
    });
    let pass = necessity.failures.is_empty() && audit_ok && powers.all_hold();
    Ok(verdict(v, pass))
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, Failure> {
    let tol = match cli.tol {
        Some(t) => Tolerance::new(t).map_err(|e| Failure::Usage(format!("invalid value for '--tol': {e}")))?,
        None => Tolerance::default(),
    };
    match &cli.command {
        Command::Check { class, spectrum, omega } => cmd_check(class.class, spectrum_arg(spectrum, &tol)?, omega, &tol),
        Command::Realizable { class, spectrum } => cmd_realizable(class.class, spectrum_arg(spectrum, &tol)?, &tol),
        Command::Range { class, spectrum, omega1 } => cmd_range(class.class, spectrum_arg(spectrum, &tol)?, *omega1, &tol),
        Command::Construct { class, spectrum, omega, omega1, normalize } => cmd_construct(
            class.class,
            spectrum_arg(spectrum, &tol)?,
            omega.as_deref(),
            *omega1,
            *normalize,
            &tol,
        ),
        Command::Verify { file, lambda, omega } => {
            cmd_verify(file.as_ref(), lambda.as_deref(), omega.as_deref(), stdin, &tol)
        }
        Command::Sweep { grid } => cmd_sweep(*grid, &tol),
        Command::Diagnose { class, lambda, trials, seed, grid, kmax } => {
            let cfg = ScanConfig::new(*grid as usize, *seed, *trials)?;
            cmd_diagnose(class.class, lambda.as_deref(), cfg, *kmax, &tol)
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    match dispatch(&cli, stdin) {
        Ok(Outcome { text, code }) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    2
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Verdict(msg)) => {
            let _ = writeln!(stderr, "infeasible: {msg}");
            1
        }
    }
}
