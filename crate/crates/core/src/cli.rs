//! Command-line front end. [`run`] is the whole program minus process exit, so
//! it can be driven from tests.
//!
//! Exit codes: 0 success or solvable, 1 usage or input error, 2 no solution,
//! 3 hypothesis violation, 4 oracle budget exceeded.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use crate::oracle::{self, IntPoly, OracleError};
use crate::padic::{Literal, PadicNumber, Prime};
use crate::poly::MonicPolynomial;
use crate::residue::decompose_k;
use crate::solvers::{
    check_solvability, fixed_points, solve_monomial, solve_polynomial, FixedPointProblem,
    SolutionReport, SolveError, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_SOLUTION: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "padic-roots",
    version,
    about = "Exact p-adic roots of x^k = a and its relatives"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Odd prime
    #[arg(short = 'p')]
    pub p: u64,
    /// Digits of precision in each result
    #[arg(short = 'N', default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether x^k = a has a solution in Q_p
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'k')]
        k: u64,
        /// Integer, num/den, or digits d0,d1,...@v
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: String,
    },
    /// All roots of x^k = a in Q_p
    SolveRoot {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'k')]
        k: u64,
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: String,
    },
    /// Roots of a monic polynomial close to x^k + a^(k)
    SolvePoly {
        #[command(flatten)]
        common: Common,
        /// Descending coefficients, leading 1 first, separated by ',' (or by
        /// ';' when a coefficient is in digit form)
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Fixed points of f(x) = ((b x - c) / (x - d))^k
    FixedPoints {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'k')]
        k: u64,
        #[arg(long = "b", allow_hyphen_values = true)]
        b: String,
        #[arg(long = "c", allow_hyphen_values = true)]
        c: String,
        #[arg(long = "d", allow_hyphen_values = true)]
        d: String,
    },
    /// Brute-force cross-checks over Z/p^M
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Roots of an integer polynomial mod p^M, merged mod p^(M - v_p(k))
    Count {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'k')]
        k: u64,
        /// e.g. x^2-6 or x^3+125x-6
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(short = 'M')]
        m: u32,
        #[arg(long)]
        json: bool,
    },
    /// Fixed points of f_{b,c,d} for integer b, c, d
    FixedPoints {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'k')]
        k: u64,
        #[arg(long = "b", allow_hyphen_values = true)]
        b: BigInt,
        #[arg(long = "c", allow_hyphen_values = true)]
        c: BigInt,
        #[arg(long = "d", allow_hyphen_values = true)]
        d: BigInt,
        #[arg(short = 'M')]
        m: u32,
        #[arg(long)]
        json: bool,
    },
}

/// An error on its way to stderr, with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::PolynomialHypothesis(_)
            | SolveError::FixedPointHypothesis(_)
            | SolveError::EpsilonTooLarge { .. }
            | SolveError::LipschitzTooLoose { .. }
            | SolveError::NotPrincipalDomain(_) => EXIT_HYPOTHESIS,
            _ => EXIT_USAGE,
        };
        let message = match code {
            EXIT_HYPOTHESIS => format!("HypothesisViolated: {e}"),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Check { common, k, a } => cmd_check(&common, k, &a, out),
        Command::SolveRoot { common, k, a } => cmd_solve_root(&common, k, &a, out),
        Command::SolvePoly { common, coeffs } => cmd_solve_poly(&common, &coeffs, out),
        Command::FixedPoints { common, k, b, c, d } => {
            cmd_fixed_points(&common, k, [&b, &c, &d], out)
        }
        Command::Oracle(o) => cmd_oracle(o, out),
    }
}

fn prime(p: u64) -> Result<Prime, Failure> {
    Prime::new(p).map_err(Failure::usage)
}

fn literal(s: &str) -> Result<Literal, Failure> {
    s.parse().map_err(Failure::usage)
}

/// Integer and rational literals are expanded to `digits`; digit forms keep
/// what they were given.
fn materialize(lit: &Literal, p: Prime, digits: u32) -> Result<PadicNumber, Failure> {
    lit.to_padic(p, digits).map_err(Failure::usage)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("write failed: {e}")))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn plain(header: &str, report: &SolutionReport) -> String {
    let mut text = format!("{header}\nverdict: {}\n", report.verdict);
    for r in &report.roots {
        text += &format!("  xi = {}: {}\n", r.xi, r.root);
    }
    text
}

fn verdict_code(v: &Verdict) -> i32 {
    if v.is_solvable() {
        EXIT_OK
    } else {
        EXIT_NO_SOLUTION
    }
}

fn verdict_fields(v: &Verdict) -> (&'static str, Option<String>) {
    match v {
        Verdict::Solvable { .. } => ("Solvable", None),
        Verdict::NoSolution(r) => ("NoSolution", Some(r.to_string())),
    }
}

fn input_digits(k: u64, p: Prime, n: u32) -> Result<u32, Failure> {
    let s = decompose_k(k, p).map_err(Failure::usage)?.s;
    Ok((n + s).max(2 * s + 1) + 4)
}

#[derive(Serialize)]
struct CheckJson<'a> {
    p: u64,
    k: u64,
    a: &'a str,
    verdict: &'static str,
    reason: Option<String>,
    kappa_p: usize,
}

fn cmd_check(common: &Common, k: u64, a: &str, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = prime(common.p)?;
    let lit = literal(a)?;
    let value = materialize(&lit, p, input_digits(k, p, common.n)?)?;
    let analysis = check_solvability(k, &value)?;
    let kappa_p = match analysis.verdict {
        Verdict::Solvable { kappa_p } => kappa_p,
        Verdict::NoSolution(_) => 0,
    };
    let (verdict, reason) = verdict_fields(&analysis.verdict);
    if common.json {
        emit(
            out,
            &json(&CheckJson {
                p: p.get(),
                k,
                a,
                verdict,
                reason,
                kappa_p,
            }),
        )?;
    } else {
        emit(
            out,
            &format!(
                "x^{k} = {a} over Q_{p}\nverdict: {}\nkappa_p: {kappa_p}\n",
                analysis.verdict
            ),
        )?;
    }
    Ok(verdict_code(&analysis.verdict))
}

#[derive(Serialize)]
struct RootJson {
    xi: u64,
    valuation: i64,
    digits: Vec<u64>,
}

fn roots_json(report: &SolutionReport) -> Vec<RootJson> {
    report
        .roots
        .iter()
        .map(|r| RootJson {
            xi: r.xi,
            valuation: r.root.valuation().exact().unwrap_or(0),
            digits: r.root.digits(),
        })
        .collect()
}

#[derive(Serialize)]
struct SolveRootJson<'a> {
    p: u64,
    k: u64,
    a: &'a str,
    verdict: &'static str,
    reason: Option<String>,
    kappa_p: usize,
    roots: Vec<RootJson>,
}

fn cmd_solve_root(common: &Common, k: u64, a: &str, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = prime(common.p)?;
    let lit = literal(a)?;
    let value = materialize(&lit, p, input_digits(k, p, common.n)?)?;
    let report = solve_monomial(k, &value, common.n)?;
    let (verdict, reason) = verdict_fields(&report.verdict);
    if common.json {
        emit(
            out,
            &json(&SolveRootJson {
                p: p.get(),
                k,
                a,
                verdict,
                reason,
                kappa_p: report.kappa_p,
                roots: roots_json(&report),
            }),
        )?;
    } else {
        emit(out, &plain(&format!("x^{k} = {a} over Q_{p}"), &report))?;
    }
    Ok(verdict_code(&report.verdict))
}

#[derive(Serialize)]
struct SolvePolyJson<'a> {
    p: u64,
    coeffs: Vec<&'a str>,
    verdict: &'static str,
    reason: Option<String>,
    kappa_p: usize,
    roots: Vec<RootJson>,
}

fn split_coeffs(s: &str) -> Vec<&str> {
    let sep = if s.contains(';') { ';' } else { ',' };
    s.split(sep).map(str::trim).collect()
}

fn cmd_solve_poly(common: &Common, coeffs: &str, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = prime(common.p)?;
    let pieces = split_coeffs(coeffs);
    if pieces.len() < 2 {
        return Err(Failure::usage("need at least two coefficients"));
    }
    let digits = input_digits(pieces.len() as u64 - 1, p, common.n)?;
    let values = pieces
        .iter()
        .map(|c| materialize(&literal(c)?, p, digits))
        .collect::<Result<Vec<_>, _>>()?;
    let poly = MonicPolynomial::from_descending(values).map_err(SolveError::from)?;
    let report = solve_polynomial(&poly, common.n)?;
    let (verdict, reason) = verdict_fields(&report.verdict);
    if common.json {
        emit(
            out,
            &json(&SolvePolyJson {
                p: p.get(),
                coeffs: pieces,
                verdict,
                reason,
                kappa_p: report.kappa_p,
                roots: roots_json(&report),
            }),
        )?;
    } else {
        let header = format!("P(x) with coefficients [{}] over Q_{p}", pieces.join(", "));
        emit(out, &plain(&header, &report))?;
    }
    Ok(verdict_code(&report.verdict))
}

#[derive(Serialize)]
struct FlagJson {
    flag: String,
    holds: bool,
}

#[derive(Serialize)]
struct FixedPointJson {
    xi: u64,
    valuation: i64,
    digits: Vec<u64>,
    y_digits: Vec<u64>,
}

#[derive(Serialize)]
struct FixedPointsJson<'a> {
    p: u64,
    k: u64,
    b: &'a str,
    c: &'a str,
    d: &'a str,
    flags: Vec<FlagJson>,
    error: Option<String>,
    kappa_p: usize,
    fixed_points: Vec<FixedPointJson>,
}

fn cmd_fixed_points(
    common: &Common,
    k: u64,
    bcd: [&String; 3],
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let p = prime(common.p)?;
    let lits = [literal(bcd[0])?, literal(bcd[1])?, literal(bcd[2])?];
    let build = |digits: u32| -> Result<FixedPointProblem, Failure> {
        let [b, c, d] = &lits;
        Ok(FixedPointProblem::new(
            materialize(b, p, digits)?,
            materialize(c, p, digits)?,
            materialize(d, p, digits)?,
            k,
        )?)
    };
    let mut digits = common.n + 64;
    let mut prob = build(digits)?;
    if let Some(needed) = prob.required_input_digits(common.n) {
        if needed > digits {
            digits = needed;
            prob = build(digits)?;
        }
    }
    let flags = prob.hypotheses()?;
    let result = fixed_points(&prob, common.n);
    let (code, error, report) = match result {
        Ok(r) => (EXIT_OK, None, Some(r)),
        Err(e) => {
            let f = Failure::from(e);
            (f.code, Some(f.message), None)
        }
    };
    if common.json {
        let fixed = report
            .iter()
            .flat_map(|r| &r.fixed_points)
            .map(|fp| FixedPointJson {
                xi: fp.xi,
                valuation: fp.x.valuation().exact().unwrap_or(0),
                digits: fp.x.digits(),
                y_digits: fp.y.digits(),
            })
            .collect();
        emit(
            out,
            &json(&FixedPointsJson {
                p: p.get(),
                k,
                b: bcd[0],
                c: bcd[1],
                d: bcd[2],
                flags: flags
                    .iter()
                    .map(|(f, ok)| FlagJson {
                        flag: f.to_string(),
                        holds: *ok,
                    })
                    .collect(),
                error: error.clone(),
                kappa_p: report.as_ref().map_or(0, |r| r.kappa_p),
                fixed_points: fixed,
            }),
        )?;
    } else {
        let mut text = format!(
            "f(x) = ((({}) x - ({})) / (x - ({})))^{k} over Q_{p}\n",
            bcd[0], bcd[1], bcd[2]
        );
        for (f, ok) in &flags {
            text += &format!("  [{}] {f}\n", if *ok { "ok" } else { "FAIL" });
        }
        if let Some(r) = &report {
            text += &format!(
                "{} fixed points (kappa_p = {}):\n",
                r.fixed_points.len(),
                r.kappa_p
            );
            for fp in &r.fixed_points {
                text += &format!("  {}\n", fp.x);
            }
        }
        emit(out, &text)?;
    }
    match error {
        Some(message) => Err(Failure { code, message }),
        None => Ok(EXIT_OK),
    }
}

#[derive(Serialize)]
struct CountJson<'a> {
    p: u64,
    k: u64,
    expr: &'a str,
    modulus_exponent: u32,
    class_exponent: u32,
    count: usize,
    classes: &'a [u64],
}

#[derive(Serialize)]
struct FixedCountJson {
    p: u64,
    k: u64,
    modulus_exponent: u32,
    class_exponent: u32,
    count: usize,
    y_classes: Vec<u64>,
    x_classes: Vec<u64>,
    outside_ep: usize,
}

fn cmd_oracle(command: OracleCommand, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        OracleCommand::Count {
            p,
            k,
            expr,
            m,
            json: as_json,
        } => {
            let p = prime(p)?;
            let f: IntPoly = expr.parse()?;
            let r = oracle::brute_force_count(&f, p, k, m)?;
            let text = if as_json {
                json(&CountJson {
                    p: p.get(),
                    k,
                    expr: &expr,
                    modulus_exponent: r.modulus_exponent,
                    class_exponent: r.class_exponent,
                    count: r.count,
                    classes: &r.solution_classes,
                })
            } else {
                format!(
                    "{f} = 0 mod {p}^{m}: {} classes mod {p}^{}\n{}",
                    r.count,
                    r.class_exponent,
                    r.solution_classes
                        .iter()
                        .map(|c| format!("  {c}\n"))
                        .collect::<String>()
                )
            };
            emit(out, &text)?;
        }
        OracleCommand::FixedPoints {
            p,
            k,
            b,
            c,
            d,
            m,
            json: as_json,
        } => {
            let p = prime(p)?;
            let r = oracle::brute_force_fixed_points(&b, &c, &d, k, p, m)?;
            let text = if as_json {
                json(&FixedCountJson {
                    p: p.get(),
                    k,
                    modulus_exponent: r.modulus_exponent,
                    class_exponent: r.class_exponent,
                    count: r.count,
                    y_classes: r.y_classes,
                    x_classes: r.x_classes,
                    outside_ep: r.outside_ep,
                })
            } else {
                format!(
                    "{} fixed-point classes mod {p}^{} (y-side scan mod {p}^{m}); {} outside E_p\n",
                    r.count, r.class_exponent, r.outside_ep
                )
            };
            emit(out, &text)?;
        }
    }
    Ok(EXIT_OK)
}
