//! Command-line front end. Data goes to stdout as JSON, diagnostics to stderr.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on domain errors (with an
//! `{"error": {"code": .., "message": ..}}` payload on stdout).

use std::fs;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::congruence::{self, CongruenceReport, IndexFilter};
use crate::ec::RationalCurve;
use crate::error::{Error, Result};
use crate::io::json::{int, ints, rational};
use crate::io::{parse_curve_file, EigenformDataset};
use crate::milne::{ext_order_ff, WeilPolynomial};
use crate::modulus::{self, ModulusReport};
use crate::poly::IntPoly;
use crate::qseries::QSeries;
use crate::symsq;

#[derive(Debug, Parser)]
#[command(name = "extcong", version, about = "Exact Ext orders, point-count congruences and congruence moduli")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mask {
    /// gcd(n, 2MN) = 1
    #[value(name = "2MN")]
    TwoMN,
    /// gcd(n, MN) = 1
    #[value(name = "MN")]
    MN,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count points of a curve over F_p.
    Count {
        /// `a1,a2,a3,a4,a6` or `label@file`
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long)]
        p: u64,
    },
    /// Order of Ext^1 over F_q from two Weil polynomials.
    Milne {
        /// Coefficients, highest degree first, e.g. `1,3,5`
        #[arg(long, allow_hyphen_values = true)]
        fa: String,
        #[arg(long, allow_hyphen_values = true)]
        fb: String,
        #[arg(long)]
        q: BigInt,
        #[arg(long = "D", default_value = "1", allow_hyphen_values = true)]
        d: BigInt,
    },
    /// gcd bound on the exponent of Ext^1 over Q from a prime sweep.
    Bound {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        pmax: u64,
        /// Also test the coefficient congruence modulo the bound on this mask.
        #[arg(long)]
        mask: Option<Mask>,
        /// Number of coefficients compared when a mask is given.
        #[arg(long, default_value_t = 1000)]
        nmax: usize,
    },
    /// Apply theta to a form of a dataset, reduced modulo m.
    Theta {
        #[arg(long = "in")]
        input: String,
        #[arg(long = "mod")]
        modulus: BigInt,
        /// Form label; defaults to the distinguished form.
        #[arg(long)]
        f: Option<String>,
        /// Also test whether theta kills the series modulo this odd prime.
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Congruence modulus of a form in a dataset.
    Modulus {
        #[arg(long)]
        forms: String,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        precision: usize,
        #[arg(long)]
        restricted: bool,
    },
    /// Sturm bound for weight-k forms on Gamma0(N).
    Sturm {
        #[arg(long = "N")]
        n: u64,
        #[arg(long, default_value_t = 2)]
        k: u64,
    },
    /// Symmetric-square coefficients and truncated value at s = 2.
    Symsq {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long)]
        nmax: usize,
    },
    /// Full pipeline: prime sweep for (A, B) and modulus audit for A.
    Report {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        forms: String,
        #[arg(long = "dA")]
        d_a: BigInt,
        #[arg(long)]
        f: Option<String>,
        #[arg(long, default_value_t = 1000)]
        pmax: u64,
        /// Defaults to the Sturm bound of the dataset level.
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Build an eigenform dataset (newforms and translates) from a curve file.
    Forms {
        #[arg(long)]
        curves: String,
        #[arg(long)]
        level: u64,
        #[arg(long)]
        precision: usize,
        #[arg(long)]
        distinguished: Option<String>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = match cli.command {
        Command::Forms { curves, level, precision, distinguished } => {
            build_dataset(&curves, level, precision, distinguished.as_deref()).map(|ds| ds.to_json())
        }
        cmd => execute(cmd).map(|v| format!("{v}\n")),
    };
    match result {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => {
            let payload = json!({ "error": { "code": e.code(), "message": e.to_string() } });
            Outcome { code: 2, stdout: format!("{payload}\n"), stderr: format!("error: {e}\n") }
        }
    }
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(Path::new(path)).map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))
}

/// `a1,a2,a3,a4,a6` or `label@file`.
fn load_curve(spec: &str) -> Result<RationalCurve> {
    if let Some((label, file)) = spec.split_once('@') {
        let curves = parse_curve_file(&read(file)?)?;
        return curves
            .into_iter()
            .find(|c| c.label() == Some(label))
            .ok_or_else(|| Error::InvalidArgument(format!("no curve {label:?} in {file}")));
    }
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(Error::InvalidArgument(format!("expected 5 coefficients in {spec:?}")));
    }
    let mut coeffs: [BigInt; 5] = Default::default();
    for (c, s) in coeffs.iter_mut().zip(&parts) {
        *c = s.parse().map_err(|_| Error::InvalidArgument(format!("bad coefficient {s:?}")))?;
    }
    RationalCurve::new(coeffs, None, None)
}

fn load_forms(path: &str) -> Result<EigenformDataset> {
    EigenformDataset::from_json(&read(path)?)
}

fn pick_label(ds: &EigenformDataset, f: Option<String>) -> Result<String> {
    match f {
        Some(l) => Ok(l),
        None => ds
            .distinguished()
            .map(|r| r.label().to_string())
            .ok_or_else(|| Error::InvalidArgument("no --f given and no distinguished form".into())),
    }
}

fn parse_poly(s: &str) -> Result<IntPoly> {
    s.parse().map_err(Error::InvalidArgument)
}

fn execute(cmd: Command) -> Result<Value> {
    match cmd {
        Command::Count { curve, p } => {
            let c = load_curve(&curve)?;
            let (count, method) = c.reduce_mod_p(p)?.count_points_with_method();
            let trace = BigInt::from(p) + 1 - BigInt::from(count);
            Ok(json!({ "p": p, "count": count, "trace": int(&trace), "method": format!("{method:?}") }))
        }
        Command::Milne { fa, fb, q, d } => {
            let fa = WeilPolynomial::new(q.clone(), parse_poly(&fa)?)?;
            let fb = WeilPolynomial::new(q, parse_poly(&fb)?)?;
            let r = ext_order_ff(&fa, &fb, &d)?;
            Ok(json!({
                "abs_value": rational(&r.value),
                "sign_ambiguous": r.sign_ambiguous,
                "excluded_pairs": r.excluded_pairs,
            }))
        }
        Command::Bound { a, b, pmax, mask, nmax } => {
            let (a, b) = (load_curve(&a)?, load_curve(&b)?);
            let report = congruence::ext_exponent_gcd_bound(&a, &b, pmax)?;
            let mut out = congruence_json(&report);
            if let Some(mask) = mask {
                out["congruence_check"] = coefficient_check(&a, &b, &report.gcd_bound, mask, nmax)?;
            }
            Ok(out)
        }
        Command::Theta { input, modulus, f, ell } => {
            if modulus <= BigInt::from(0) {
                return Err(Error::InvalidArgument("--mod must be positive".into()));
            }
            let ds = load_forms(&input)?;
            let label = pick_label(&ds, f)?;
            let form = ds.form(&label)?;
            let s = QSeries::new(form.coefficients(ds.precision()), Some(modulus.clone())).theta();
            let mut out = json!({ "label": label, "modulus": int(&modulus), "theta": ints(s.coeffs()) });
            if let Some(l) = ell {
                let k = QSeries::new(form.coefficients(ds.precision()), None).theta_kernel_mod(l)?;
                out["kernel"] = json!({ "ell": l, "holds": k.holds, "witness": k.witness });
            }
            Ok(out)
        }
        Command::Modulus { forms, f, precision, restricted } => {
            let ds = load_forms(&forms)?;
            let label = pick_label(&ds, f)?;
            let (key, value) = if restricted {
                ("r_A", modulus::restricted_congruence_modulus(&ds, &label, precision, ds.level())?)
            } else {
                ("m_A", modulus::congruence_modulus(&ds, &label, precision)?)
            };
            let mut out = Map::new();
            out.insert("label".into(), json!(label));
            out.insert("level".into(), json!(ds.level()));
            out.insert("precision".into(), json!(precision));
            out.insert("sturm_bound".into(), json!(modulus::sturm_bound(ds.level(), 2)));
            out.insert(key.into(), int(&value));
            Ok(Value::Object(out))
        }
        Command::Sturm { n, k } => {
            if n == 0 {
                return Err(Error::InvalidArgument("--N must be positive".into()));
            }
            Ok(json!({ "sturm_bound": modulus::sturm_bound(n, k) }))
        }
        Command::Symsq { curve, nmax } => {
            let c = load_curve(&curve)?;
            let s = symsq::coefficients(&c, nmax)?;
            let v = symsq::lvalue(&s);
            let head: Vec<i64> = s.coefficients().iter().take(20).copied().collect();
            Ok(json!({
                "n_max": nmax,
                "value": v.value,
                "envelope": v.envelope,
                "approximate_at_bad_primes": s.approximate_at_bad_primes(),
                "bad_primes": s.bad_primes,
                "coefficients_head": head,
            }))
        }
        Command::Report { a, b, forms, d_a, f, pmax, precision } => {
            let (a, b) = (load_curve(&a)?, load_curve(&b)?);
            let ds = load_forms(&forms)?;
            let label = pick_label(&ds, f)?;
            let precision = precision.unwrap_or(modulus::sturm_bound(ds.level(), 2) as usize);
            let report = congruence::ext_exponent_gcd_bound(&a, &b, pmax)?;
            let m = modulus::congruence_modulus(&ds, &label, precision)?;
            let r = modulus::restricted_congruence_modulus(&ds, &label, precision, ds.level())?;
            let audit = modulus::divisibility_report(&d_a, Some(&m), Some(&r), Some(&report.gcd_bound), Some(ds.level()));
            Ok(json!({
                "congruence": congruence_json(&report),
                "modulus": modulus_json(&audit, &label, precision),
            }))
        }
        Command::Forms { .. } => unreachable!("handled in run"),
    }
}

/// Newforms of every curve whose conductor divides `level`, with translates.
fn build_dataset(curves: &str, level: u64, precision: usize, distinguished: Option<&str>) -> Result<EigenformDataset> {
    let curves = parse_curve_file(&read(curves)?)?;
    let mut newforms = Vec::new();
    for c in curves.iter().filter(|c| c.conductor().is_some_and(|m| level % m == 0)) {
        let t = congruence::newform_coefficients(c, precision)?;
        let an = t.dense().expect("full expansion defines every index");
        newforms.push((c.label().unwrap_or_default().to_string(), c.conductor().unwrap_or(1), an));
    }
    EigenformDataset::with_translates(level, precision, newforms, distinguished)
}

fn coefficient_check(a: &RationalCurve, b: &RationalCurve, m: &BigInt, mask: Mask, nmax: usize) -> Result<Value> {
    let (na, nb) = (level_of(a), level_of(b));
    let filter = match mask {
        Mask::TwoMN => IndexFilter::coprime_to_twice_levels(na, nb),
        Mask::MN => IndexFilter::odd_exponent(na, nb),
    };
    let ta = congruence::curve_table(a, nmax)?;
    let tb = congruence::curve_table(b, nmax)?;
    let c = congruence::verify_congruence(&ta, &tb, m, &filter);
    let violations: Vec<Value> = c.violations.iter().map(|(n, x, y)| json!([n, int(x), int(y)])).collect();
    Ok(json!({
        "modulus": int(&c.modulus),
        "tested_up_to": c.tested_up_to,
        "tested": c.tested,
        "violations": violations,
        "uncovered": c.uncovered,
    }))
}

/// Conductor, or the radical of `|Δ|` when unknown (fits the sweep masks).
fn level_of(c: &RationalCurve) -> u64 {
    c.conductor().unwrap_or_else(|| {
        c.bad_primes().iter().map(|p| u64::try_from(p).unwrap_or(u64::MAX)).fold(1, u64::saturating_mul)
    })
}

pub fn congruence_json(r: &CongruenceReport) -> Value {
    let diffs: Map<String, Value> = r.differences.iter().map(|(p, d)| (p.to_string(), json!(d))).collect();
    json!({
        "S": int(&r.s),
        "S_sources": r.s_sources.map(|s| s.as_str()),
        "p_max": r.p_max,
        "models": r.models,
        "primes_used": r.primes_used.len(),
        "skipped_primes": r.skipped,
        "differences": diffs,
        "gcd_bound": int(&r.gcd_bound),
        "interpretation": CongruenceReport::INTERPRETATION,
    })
}

pub fn modulus_json(r: &ModulusReport, label: &str, precision: usize) -> Value {
    let opt = |x: &Option<BigInt>| x.as_ref().map_or(json!("no_constraint"), int);
    let audits: Vec<Value> = r.audits.iter().map(|a| json!({ "relation": a.relation, "holds": a.holds })).collect();
    json!({
        "label": label,
        "precision": precision,
        "d_A": int(&r.d_a),
        "m_A": opt(&r.m_a),
        "r_A": opt(&r.r_a),
        "gcd_bound_e": r.gcd_bound_e.as_ref().map(int),
        "audits": audits,
        "e_A_candidates": ints(&r.e_a_candidates),
        "e_AT_candidates": ints(&r.e_at_candidates),
        "e_AT_forced": r.forced_e_at().map(int),
        "squarefree_equality": r.squarefree_equality,
    })
}
