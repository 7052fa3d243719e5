//! Command-line front end. Exit codes: 0 pass, 1 check failure, 2 usage.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{rational_string, to_f64};
use crate::ladder::{
    check_coefficient_ratios, check_eigenstate, check_factorization, check_intertwining, check_negative_m,
    compute_norm, degeneracy, eigenstate_residual, energy, factorization_residual, laguerre_identify, run_chain,
    sector_energy,
};
use crate::opcore::catalog::{catalog, check, corrupted, lookup};
use crate::radial::Dim;
use crate::verify::{differential_oracle, ode_residual_with, orthonormality_report, OdeForm, ResidualReport};
use crate::wavefn::{compare_routes, full_wavefunction, Point};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "repind", version, about = "Exact operator algebra and ladder solutions of the Coulomb problem")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels and degeneracies.
    Spectrum(SpectrumArgs),
    /// Ladder chain, normalization and Laguerre identification for one state.
    State(StateArgs),
    /// Sample a normalized wavefunction on a radial grid.
    Wavefunction(WavefunctionArgs),
    /// Run exact suites and numeric oracles.
    Check(CheckArgs),
    /// Print a catalog identity and its normal-ordered residual.
    Commutator(CommutatorArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Commutators,
    Factorization,
    Chains,
    Wavefunctions,
    All,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 3, value_parser = parse_dim)]
    pub dim: u32,
    #[arg(long, default_value_t = 6)]
    pub n_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[arg(long, default_value_t = 3, value_parser = parse_dim)]
    pub dim: u32,
    #[arg(long)]
    pub n: u32,
    /// `l` in 3D, `m` in 2D.
    #[arg(long, allow_hyphen_values = true)]
    pub sector: i64,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[arg(long, default_value_t = 3, value_parser = parse_dim)]
    pub dim: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub sector: i64,
    /// Azimuthal number; defaults to `sector` in 2D and 0 in 3D.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// Radial grid `start:end:count`, in units of a₀.
    #[arg(long, default_value = "0:20:101")]
    pub grid: String,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub phi: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Restrict to one dimension; both by default.
    #[arg(long, value_parser = parse_dim)]
    pub dim: Option<u32>,
    #[arg(long, default_value_t = 6)]
    pub n_max: u32,
    #[arg(long)]
    pub oracle_tol: Option<f64>,
    #[arg(long)]
    pub ode_tol: Option<f64>,
    #[arg(long)]
    pub overlap_tol: Option<f64>,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct CommutatorArgs {
    /// Catalog key; omit with `--list` to list keys.
    #[arg(required_unless_present = "list")]
    pub key: Option<String>,
    #[arg(long)]
    pub list: bool,
}

fn parse_dim(s: &str) -> std::result::Result<u32, String> {
    match s {
        "2" | "2d" => Ok(2),
        "3" | "3d" => Ok(3),
        _ => Err(format!("dimension must be 2 or 3, got `{s}`")),
    }
}

fn dim_of(d: u32) -> Dim {
    Dim::from_int(d).expect("validated by the parser")
}

/// What a command produced and how it should exit.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

/// Parses `args` (including the program name) and runs the command, writing
/// output to `stdout` or the `--output` file. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ =
                if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            return if code == 0 { EXIT_PASS } else { EXIT_USAGE };
        }
    };
    let outcome = match execute(&config) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return match e {
                Error::ChainShape(_) => EXIT_FAIL,
                _ => EXIT_USAGE,
            };
        }
    };
    let written = match &config.output {
        Some(path) => fs::write(path, &outcome.text).map_err(|e| e.to_string()),
        None => stdout.write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_FAIL;
    }
    if outcome.passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn execute(config: &RunConfig) -> Result<Outcome> {
    match &config.command {
        Command::Spectrum(a) => spectrum(a),
        Command::State(a) => state(a),
        Command::Wavefunction(a) => wavefunction(a),
        Command::Check(a) => check_suites(a),
        Command::Commutator(a) => commutator(a),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn spectrum(a: &SpectrumArgs) -> Result<Outcome> {
    if a.n_max == 0 {
        return Err(Error::OutOfRange("n_max must be at least 1".into()));
    }
    let dim = dim_of(a.dim);
    let rows: Vec<(u32, i64, i64, String, u32)> = (1..=a.n_max)
        .map(|n| {
            let top = n as i64 - 1;
            let lo = if dim == Dim::Two { -top } else { 0 };
            let e = energy(dim, n).expect("n ≥ 1");
            (n, lo, top, rational_string(&e.rational), degeneracy(dim, n))
        })
        .collect();
    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("n,sector_min,sector_max,energy_e2_per_a0,degeneracy\n");
            for (n, lo, hi, e, g) in &rows {
                s.push_str(&format!("{n},{lo},{hi},{e},{g}\n"));
            }
            s
        }
        Format::Json => pretty(&json!({
            "dim": a.dim,
            "energy_unit": "e^2/a0",
            "levels": rows.iter().map(|(n, lo, hi, e, g)| json!({
                "n": n, "sector_min": lo, "sector_max": hi, "energy": e, "degeneracy": g,
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(Outcome { text, passed: true })
}

fn state(a: &StateArgs) -> Result<Outcome> {
    let dim = dim_of(a.dim);
    let s = a.sector.abs();
    if dim == Dim::Three && a.sector < 0 {
        return Err(Error::OutOfRange(format!("l must be nonnegative, got {}", a.sector)));
    }
    let chain = run_chain(dim, a.n, s)?;
    let norm = compute_norm(dim, a.n, s)?;
    let lag = laguerre_identify(&chain)?;
    let ratios = check_coefficient_ratios(&chain);
    let mut checks = json!({
        "factorization": check_factorization(dim, s)?.is_zero(),
        "intertwining": check_intertwining(dim, s)?.holds(),
        "eigenstate": check_eigenstate(dim, a.n, s)?.is_zero(),
        "ratios": ratios.holds(),
        "norm_forms_agree": norm.agree(),
        "laguerre": lag.holds(),
    });
    if dim == Dim::Two && a.sector < 0 {
        checks["negative_m"] = json!(check_negative_m(a.n, s as u32)?.holds());
    }
    let passed = checks.as_object().expect("object").values().all(|v| v == &json!(true));
    let text = pretty(&json!({
        "dim": a.dim,
        "n": a.n,
        "sector": a.sector,
        "energy": rational_string(&sector_energy(dim, a.n as i64 - 1).rational),
        "chain": chain.to_json(),
        "norm": norm.to_json(),
        "laguerre": lag.to_json(),
        "checks": checks,
    }));
    Ok(Outcome { text, passed })
}

fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Invalid(format!("grid must be start:end:count, got `{spec}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].parse().map_err(|_| bad())?;
    let b: f64 = parts[1].parse().map_err(|_| bad())?;
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    if count == 0 || !a.is_finite() || !b.is_finite() || a < 0.0 || b < a {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![a]);
    }
    Ok((0..count).map(|i| a + (b - a) * i as f64 / (count - 1) as f64).collect())
}

fn wavefunction(a: &WavefunctionArgs) -> Result<Outcome> {
    let dim = dim_of(a.dim);
    let m = a.m.unwrap_or(if dim == Dim::Two { a.sector } else { 0 });
    let wf = full_wavefunction(dim, a.n, a.sector, m)?;
    let points: Vec<Point> = parse_grid(&a.grid)?
        .into_iter()
        .map(|x| match dim {
            Dim::Three => Point::Spherical { r: x, theta: a.theta, phi: a.phi },
            Dim::Two => Point::Polar { rho: x, phi: a.phi },
        })
        .collect();
    let text = match a.format {
        Format::Csv => {
            let header = serde_json::to_string(&wf.to_json()).expect("json values serialize");
            format!("# {header}\n{}", wf.sample_csv(&points)?)
        }
        Format::Json => {
            let samples: Vec<Value> = points
                .iter()
                .map(|p| {
                    let v = wf.evaluate(p).expect("point matches dimension");
                    json!({ "x": p.radius(), "re": v.re, "im": v.im })
                })
                .collect();
            pretty(&json!({ "wavefunction": wf.to_json(), "samples": samples }))
        }
    };
    Ok(Outcome { text, passed: true })
}

fn dims(a: &CheckArgs) -> Vec<Dim> {
    match a.dim {
        Some(d) => vec![dim_of(d)],
        None => vec![Dim::Two, Dim::Three],
    }
}

fn suite_commutators(a: &CheckArgs, out: &mut Vec<ResidualReport>) -> Result<()> {
    for id in catalog() {
        let id = if a.inject_fault { corrupted(&id) } else { id };
        out.push(ResidualReport::exact(format!("exact:{}", id.key), check(&id)?.residual_terms()));
        let mut oracle = differential_oracle(&id, a.seed)?;
        if let Some(t) = a.oracle_tol {
            oracle = oracle.with_tolerance(t);
        }
        out.push(oracle);
    }
    Ok(())
}

fn suite_factorization(a: &CheckArgs, out: &mut Vec<ResidualReport>) -> Result<()> {
    for dim in dims(a) {
        for s in 0..=a.n_max as i64 {
            let mut e = sector_energy(dim, s);
            if a.inject_fault {
                e = e.scale(&crate::exact::rat(101, 100));
            }
            let r = factorization_residual(dim, s, &e)?;
            out.push(ResidualReport::exact(format!("factorization:{dim}:s={s}"), r.term_count()));
            let i = check_intertwining(dim, s)?;
            out.push(ResidualReport::exact(format!("intertwining:{dim}:s={s}"), i.intertwining.term_count()));
            out.push(ResidualReport::exact(format!("wrong_order:{dim}:s={s}"), i.wrong_order.term_count()));
        }
    }
    Ok(())
}

fn flag(b: bool) -> usize {
    usize::from(!b)
}

fn suite_chains(a: &CheckArgs, out: &mut Vec<ResidualReport>) -> Result<()> {
    for dim in dims(a) {
        for n in 1..=a.n_max {
            let mut e = energy(dim, n)?;
            if a.inject_fault {
                e = e.scale(&crate::exact::rat(101, 100));
            }
            for s in 0..n as i64 {
                let case = |what: &str| format!("{what}:{dim}:n={n}:s={s}");
                let chain = run_chain(dim, n, s)?;
                out.push(ResidualReport::exact(case("ratios"), check_coefficient_ratios(&chain).mismatches.len()));
                out.push(ResidualReport::exact(case("laguerre"), flag(laguerre_identify(&chain)?.holds())));
                out.push(ResidualReport::exact(case("norm"), flag(compute_norm(dim, n, s)?.agree())));
                out.push(ResidualReport::exact(case("eigenstate"), eigenstate_residual(dim, n, s, &e)?.term_count()));
            }
            if dim == Dim::Two {
                for m in 1..n {
                    let rep = check_negative_m(n, m)?;
                    out.push(ResidualReport::exact(format!("negative_m:n={n}:m={m}"), flag(rep.holds())));
                }
            }
        }
    }
    Ok(())
}

fn suite_wavefunctions(a: &CheckArgs, out: &mut Vec<ResidualReport>) -> Result<()> {
    for dim in dims(a) {
        let lo = if dim == Dim::Two { -(a.n_max as i64 - 1) } else { 0 };
        for s in lo..a.n_max as i64 {
            let mut o = orthonormality_report(dim, s, a.n_max)?;
            if let Some(t) = a.overlap_tol {
                o = o.with_tolerance(t);
            }
            out.push(o);
        }
        for n in 1..=a.n_max {
            let lo = if dim == Dim::Two { -(n as i64 - 1) } else { 0 };
            for s in lo..n as i64 {
                let m = if dim == Dim::Two { s } else { 0 };
                let wf = full_wavefunction(dim, n, s, m)?;
                let mut e = to_f64(&wf.energy().rational);
                if a.inject_fault {
                    e *= 1.01;
                }
                for form in [OdeForm::Standard, OdeForm::Reduced] {
                    let mut r = ode_residual_with(&wf, form, e);
                    if let Some(t) = a.ode_tol {
                        r = r.with_tolerance(t);
                    }
                    out.push(r);
                }
                let expected = (n as i64 - s.abs() - 1) as usize;
                out.push(ResidualReport::exact(format!("nodes:{dim}:n={n}:s={s}"), wf.node_count().abs_diff(expected)));
                let routes = compare_routes(dim, n, s, m)?;
                out.push(ResidualReport::exact(format!("routes:{dim}:n={n}:s={s}"), routes.mismatched_powers.len()));
            }
        }
    }
    Ok(())
}

/// Runs the selected suites, exact ones first.
pub fn run_suites(a: &CheckArgs) -> Result<Vec<ResidualReport>> {
    if a.n_max == 0 {
        return Err(Error::OutOfRange("n_max must be at least 1".into()));
    }
    let mut out = Vec::new();
    let all = a.suite == Suite::All;
    if all || a.suite == Suite::Commutators {
        suite_commutators(a, &mut out)?;
    }
    if all || a.suite == Suite::Factorization {
        suite_factorization(a, &mut out)?;
    }
    if all || a.suite == Suite::Chains {
        suite_chains(a, &mut out)?;
    }
    if all || a.suite == Suite::Wavefunctions {
        suite_wavefunctions(a, &mut out)?;
    }
    Ok(out)
}

fn check_suites(a: &CheckArgs) -> Result<Outcome> {
    let reports = run_suites(a)?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    let text = pretty(&json!({
        "suite": format!("{:?}", a.suite).to_lowercase(),
        "seed": a.seed,
        "n_max": a.n_max,
        "total": reports.len(),
        "failed": failed,
        "reports": reports,
    }));
    Ok(Outcome { text, passed: failed == 0 })
}

fn commutator(a: &CommutatorArgs) -> Result<Outcome> {
    if a.list {
        let text: String = catalog().iter().map(|i| format!("{}\t{}\n", i.key, i.description)).collect();
        return Ok(Outcome { text, passed: true });
    }
    let key = a.key.as_deref().expect("required unless --list");
    let id = lookup(key)?;
    let report = check(&id)?;
    let mut text = format!("{}: {}\n", id.key, id.description);
    for (part, (label, res)) in id.parts.iter().zip(&report.residuals) {
        text.push_str(&format!("  [{label}] {} = {}\n", part.lhs, part.rhs));
        text.push_str(&format!("    residual: {}\n", if res.is_zero() { "0".to_string() } else { res.to_string() }));
    }
    text.push_str(if report.holds { "holds\n" } else { "FAILS\n" });
    Ok(Outcome { text, passed: report.holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("repind").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn spectrum_rows() {
        let (code, out, _) = run_str(&["spectrum", "--n-max", "2", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n,sector_min,sector_max,energy_e2_per_a0,degeneracy\n1,0,0,-1/2,1\n2,0,1,-1/8,2\n");
        let (code, out, _) = run_str(&["spectrum", "--dim", "2", "--n-max", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["levels"][0]["energy"], "-2/1");
        assert_eq!(run_str(&["spectrum", "--n-max", "0"]).0, 2);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["check", "nonsense"]).0, 2);
        assert_eq!(run_str(&["spectrum", "--dim", "4"]).0, 2);
        assert_eq!(run_str(&["state", "--n", "2", "--sector", "5"]).0, 2);
        assert_eq!(run_str(&["commutator", "no_such_key"]).0, 2);
        assert_eq!(run_str(&["wavefunction", "--n", "2", "--sector", "0", "--grid", "1:0:3"]).0, 2);
        assert_eq!(run_str(&[]).0, 2);
    }

    #[test]
    fn state_and_commutator() {
        let (code, out, _) = run_str(&["state", "--n", "2", "--sector", "0"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["chain"]["b_coeffs"], json!(["-3/1", "3/2"]));
        assert_eq!(run_str(&["state", "--dim", "2", "--n", "3", "--sector", "-2"]).0, 0);
        let (code, out, _) = run_str(&["commutator", "ke_2d"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("holds\n"));
    }

    #[test]
    fn wavefunction_csv() {
        let (code, out, _) = run_str(&["wavefunction", "--n", "1", "--sector", "0", "--grid", "0:1:3", "--theta", "0"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert!(lines[0].starts_with("# {"));
        assert_eq!(lines[1], "r,theta,phi,re,im");
        assert_eq!(lines.len(), 5);
    }

    #[test]
    fn small_check_and_fault() {
        assert_eq!(run_str(&["check", "factorization", "--n-max", "2"]).0, 0);
        assert_eq!(run_str(&["check", "factorization", "--n-max", "2", "--inject-fault"]).0, 1);
    }
}
