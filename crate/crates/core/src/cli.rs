//! Command-line front end: kernels, transformed kernels, `(c, g)` tables and
//! the verification suites, printed as JSON or CSV.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad input,
//! 3 internal error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::cgrec::{self, XiConvention};
use crate::christoffel::{self, AdmissibleSet, SelfReciprocalFactor};
use crate::kernels;
use crate::measures::{fmt_c, MeasureModel};
use crate::opuc::OpucTable;
use crate::oracle;
use crate::verify::{self, Suite};
use crate::{Error, Result, C64};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "opuckit", version, about = "Kernels, Christoffel transforms and (c, g) tables for measures on the unit circle")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate K_n(z, w).
    Kernel(KernelArgs),
    /// Kernel K_n(., w; nu) of the transformed measure, as coefficients.
    Transform(TransformArgs),
    /// The (c_n, g_n) table of a measure.
    Cg(CgArgs),
    /// The (c_n, g_n) table of the transformed measure.
    TransformCg(TransformCgArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// lebesgue, geronimus, qhyper, hyper, or a JSON descriptor such as
    /// {"family":"geronimus","alpha":"-0.5"}.
    #[arg(long)]
    pub family: String,
    /// Geronimus coefficient, a+bi.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Base of the q-family, in (0, 1).
    #[arg(long)]
    pub q: Option<String>,
    /// Parameter of the q-family or the hypergeometric family, a+bi.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Kernel degree.
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    #[arg(long, allow_hyphen_values = true)]
    pub w: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SetKind {
    Floor,
    Ceil,
}

#[derive(Debug, Clone, Args)]
pub struct ZeroArgs {
    /// Zeros of the factor, comma separated; must close under z -> 1/conj(z).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub zeros: Vec<String>,
    /// Half the number of zeros; checked against --zeros when given.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub zeros: ZeroArgs,
    /// Kernel degree.
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub w: String,
    /// Admissible set.
    #[arg(long, value_enum, default_value_t = SetKind::Floor)]
    pub set: SetKind,
}

#[derive(Debug, Clone, Args)]
pub struct CgArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Number of rows, n = 1..=N.
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum XiArg {
    Doubled,
    Plain,
}

#[derive(Debug, Clone, Args)]
pub struct TransformCgArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub zeros: ZeroArgs,
    /// Number of rows, n = 1..=N.
    #[arg(long)]
    pub n: usize,
    /// Normalization of xi_n used in the g_n(nu) ratio.
    #[arg(long, value_enum, default_value_t = XiArg::Doubled)]
    pub xi: XiArg,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// One of kernels, christoffel, cg, xi, geronimus, qhyper, hyper,
    /// transformed, oracle, all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Loosens every non-structural threshold to at least this value.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Parses `a+bi`, `a-bi`, `a` or `bi` (also `i`, `-i`) with decimal parts.
pub fn parse_complex(s: &str) -> Result<C64> {
    let bad = || Error::Parse(format!("not a complex number: {s:?}"));
    let t = s.trim();
    if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit() || "+-.eEi".contains(c)) {
        return Err(bad());
    }
    let num = |p: &str| -> Result<f64> {
        match p {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => p.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(bad),
        }
    };
    let real = |p: &str| -> Result<f64> {
        if p.is_empty() || p == "+" || p == "-" {
            return Err(bad());
        }
        num(p)
    };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(C64::new(real(t)?, 0.0));
    };
    if body.contains('i') {
        return Err(bad());
    }
    // split at the last sign that is neither leading nor part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(C64::new(real(&body[..k])?, num(&body[k..])?)),
        None => Ok(C64::new(0.0, num(body)?)),
    }
}

fn json_complex(v: &Value, key: &str) -> Result<C64> {
    match v {
        Value::String(s) => parse_complex(s),
        Value::Number(x) => x.as_f64().map(|x| C64::new(x, 0.0)).ok_or_else(|| Error::Parse(format!("bad {key}"))),
        _ => Err(Error::Parse(format!("{key} must be a string \"a+bi\" or a number"))),
    }
}

fn json_complex_list(v: &Value, key: &str) -> Result<Vec<C64>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{key} must be an array")))?
        .iter()
        .map(|x| json_complex(x, key))
        .collect()
}

fn json_real_list(v: &Value, key: &str) -> Result<Vec<f64>> {
    json_complex_list(v, key)?
        .into_iter()
        .map(|z| if z.im == 0.0 { Ok(z.re) } else { Err(Error::Parse(format!("{key} entries must be real"))) })
        .collect()
}

/// Builds the measure named by `--family` (plain name or JSON descriptor)
/// and the parameter flags. A parameter may come from the descriptor or a
/// flag, not both.
pub fn parse_family(a: &FamilyArgs) -> Result<MeasureModel> {
    let desc = a.family.trim();
    let (name, mut obj) = if desc.starts_with('{') {
        let v: Value = serde_json::from_str(desc).map_err(|e| Error::Parse(format!("family descriptor: {e}")))?;
        let Value::Object(obj) = v else {
            return Err(Error::Parse("family descriptor must be a JSON object".into()));
        };
        let name = obj
            .get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("family descriptor needs a \"family\" string".into()))?
            .to_string();
        (name, obj)
    } else {
        (desc.to_string(), serde_json::Map::new())
    };
    for (key, flag) in [("alpha", &a.alpha), ("q", &a.q), ("b", &a.b)] {
        if let Some(s) = flag {
            if obj.contains_key(key) {
                return Err(Error::Parse(format!("{key} given both in the descriptor and as --{key}")));
            }
            obj.insert(key.into(), Value::String(s.clone()));
        }
    }
    let take = |key: &str| -> Result<&Value> {
        obj.get(key).ok_or_else(|| Error::Parse(format!("family {name} needs {key}")))
    };
    let mass = match obj.get("mass") {
        Some(v) => json_complex(v, "mass")?.re,
        None => 1.0,
    };
    let allowed: &[&str] = match name.as_str() {
        "lebesgue" => &[],
        "geronimus" => &["alpha"],
        "qhyper" => &["q", "b"],
        "hyper" | "hyper-jacobi" => &["b"],
        "alphas" => &["alphas", "mass"],
        "cg" => &["c", "g", "mass"],
        _ => return Err(Error::Parse(format!("unknown family {name:?}"))),
    };
    if let Some(k) = obj.keys().find(|k| *k != "family" && !allowed.contains(&k.as_str())) {
        return Err(Error::Parse(format!("family {name} takes no parameter {k}")));
    }
    let m = match name.as_str() {
        "lebesgue" => MeasureModel::lebesgue(),
        "geronimus" => MeasureModel::geronimus(json_complex(take("alpha")?, "alpha")?)?,
        "qhyper" => {
            let q = json_complex(take("q")?, "q")?;
            if q.im != 0.0 {
                return Err(Error::Parse("q must be real".into()));
            }
            MeasureModel::qhyper(q.re, json_complex(take("b")?, "b")?)?
        }
        "alphas" => MeasureModel::explicit_alpha(json_complex_list(take("alphas")?, "alphas")?, mass)?,
        "cg" => MeasureModel::explicit_cg(
            json_real_list(take("c")?, "c")?,
            json_real_list(take("g")?, "g")?,
            mass,
        )?,
        _ => MeasureModel::hyper_jacobi(json_complex(take("b")?, "b")?)?,
    };
    Ok(m)
}

fn parse_zeros(z: &ZeroArgs) -> Result<Vec<C64>> {
    let zeros = z.zeros.iter().map(|s| parse_complex(s)).collect::<Result<Vec<_>>>()?;
    if let Some(m) = z.m {
        if zeros.len() != 2 * m {
            return Err(Error::Parse(format!("--m {m} needs {} zeros, got {}", 2 * m, zeros.len())));
        }
    }
    Ok(zeros)
}

#[derive(Serialize)]
struct KernelRow {
    family: String,
    n: usize,
    z: String,
    w: String,
    value: String,
}

#[derive(Serialize)]
struct CgRow {
    n: usize,
    c: f64,
    g: f64,
}

#[derive(Serialize)]
struct TransformOut {
    family: String,
    zeros: Vec<String>,
    set: &'static str,
    n: usize,
    w: String,
    degenerate: bool,
    degeneracy: f64,
    delta0: Option<String>,
    delta_m: Option<String>,
    kernel_nu: Option<Vec<String>>,
}

#[derive(Serialize)]
struct TransformCsvRow<'a> {
    family: &'a str,
    zeros: String,
    set: &'static str,
    n: usize,
    w: &'a str,
    degenerate: bool,
    degeneracy: f64,
    k: Option<usize>,
    coeff: Option<String>,
}

fn render<T: Serialize>(rows: &[T], format: Format, as_array: bool) -> Result<String> {
    let internal = |e: String| Error::Inconsistency(format!("output: {e}"));
    match format {
        Format::Json => {
            let s = if as_array || rows.len() != 1 {
                serde_json::to_string_pretty(rows)
            } else {
                serde_json::to_string_pretty(&rows[0])
            };
            Ok(s.map_err(|e| internal(e.to_string()))? + "\n")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| internal(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| internal(e.to_string()))
        }
    }
}

fn kernel(a: &KernelArgs, format: Format) -> Result<String> {
    let m = parse_family(&a.family)?;
    let (z, w) = (parse_complex(&a.z)?, parse_complex(&a.w)?);
    let t = OpucTable::build(&m, a.n + 1)?;
    let v = kernels::kernel_sum(&t, a.n, z, w);
    let row = KernelRow { family: m.label(), n: a.n, z: fmt_c(z), w: fmt_c(w), value: fmt_c(v) };
    render(&[row], format, false)
}

fn transform(a: &TransformArgs, format: Format) -> Result<String> {
    let mu = parse_family(&a.family)?;
    let f = SelfReciprocalFactor::for_measure(&parse_zeros(&a.zeros)?, &mu)?;
    let w = parse_complex(&a.w)?;
    let (set, name) = match a.set {
        SetKind::Floor => (AdmissibleSet::floor(f.m()), "floor"),
        SetKind::Ceil => (AdmissibleSet::ceil(f.m()), "ceil"),
    };
    let t = OpucTable::build(&mu, a.n + 2 * f.m() + 1)?;
    let nu = oracle::transformed_moments(&mu, &f, a.n + 1)?;
    let r = christoffel::transform_kernel(&t, &set, &f, a.n, w, &nu)?;
    let out = TransformOut {
        family: mu.label(),
        zeros: f.zeros().iter().map(|z| fmt_c(*z)).collect(),
        set: name,
        n: a.n,
        w: fmt_c(w),
        degenerate: r.degenerate,
        degeneracy: r.degeneracy,
        delta0: r.delta0.map(fmt_c),
        delta_m: r.delta_m.map(fmt_c),
        kernel_nu: r.kernel_nu.as_ref().map(|k| (0..=a.n).map(|j| fmt_c(k.coeff(j))).collect()),
    };
    match format {
        Format::Json => render(&[out], format, false),
        Format::Csv => {
            let zeros = out.zeros.join(";");
            let row = |k: Option<usize>, coeff: Option<String>| TransformCsvRow {
                family: &out.family,
                zeros: zeros.clone(),
                set: name,
                n: a.n,
                w: &out.w,
                degenerate: out.degenerate,
                degeneracy: out.degeneracy,
                k,
                coeff,
            };
            let rows: Vec<_> = match &out.kernel_nu {
                Some(cs) => cs.iter().enumerate().map(|(k, c)| row(Some(k), Some(c.clone()))).collect(),
                None => vec![row(None, None)],
            };
            render(&rows, format, true)
        }
    }
}

fn cg(a: &CgArgs, format: Format) -> Result<String> {
    let m = parse_family(&a.family)?;
    let (c, g) = m.cgs(a.n)?;
    let rows: Vec<CgRow> = c.iter().zip(&g).enumerate().map(|(k, (&c, &g))| CgRow { n: k + 1, c: c + 0.0, g }).collect();
    render(&rows, format, true)
}

fn transform_cg(a: &TransformCgArgs, format: Format) -> Result<String> {
    let mu = parse_family(&a.family)?;
    let f = SelfReciprocalFactor::for_measure(&parse_zeros(&a.zeros)?, &mu)?;
    let conv = match a.xi {
        XiArg::Doubled => XiConvention::Doubled,
        XiArg::Plain => XiConvention::Plain,
    };
    let (c, g) = cgrec::transformed_cg(&mu, &f, a.n, conv)?;
    let rows: Vec<CgRow> = c.iter().zip(&g).enumerate().map(|(k, (&c, &g))| CgRow { n: k + 1, c: c + 0.0, g }).collect();
    render(&rows, format, true)
}

fn run_verify(a: &VerifyArgs, format: Format) -> Result<(String, bool)> {
    let suite = Suite::parse(&a.suite)?;
    if let Some(t) = a.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Parse(format!("--tol must be positive, got {t}")));
        }
    }
    let reports = verify::run(suite, a.tol, a.seed)?;
    let ok = reports.iter().all(|r| r.pass);
    Ok((render(&reports, format, true)?, ok))
}

/// Exit code for an error: input problems are 2, everything else 3.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::InvalidMeasure(_)
        | Error::InvalidFactor(_)
        | Error::InvalidAdmissibleSet(_)
        | Error::OutOfRange { .. } => EXIT_PARSE,
        _ => EXIT_INTERNAL,
    }
}

/// Runs a parsed configuration; returns the report and the exit code.
pub fn run(cfg: &RunConfig) -> (std::result::Result<String, Error>, i32) {
    let res = match &cfg.command {
        Command::Kernel(a) => kernel(a, cfg.format).map(|s| (s, true)),
        Command::Transform(a) => transform(a, cfg.format).map(|s| (s, true)),
        Command::Cg(a) => cg(a, cfg.format).map(|s| (s, true)),
        Command::TransformCg(a) => transform_cg(a, cfg.format).map(|s| (s, true)),
        Command::Verify(a) => run_verify(a, cfg.format),
    };
    match res {
        Ok((s, true)) => (Ok(s), EXIT_OK),
        Ok((s, false)) => (Ok(s), EXIT_FAIL),
        Err(e) => {
            let code = exit_code(&e);
            (Err(e), code)
        }
    }
}

/// Entry point shared by the binary and the tests.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (res, code) = run(&cfg);
    match res {
        Ok(s) => {
            if out.write_all(s.as_bytes()).is_err() {
                return EXIT_INTERNAL;
            }
        }
        Err(e) => {
            let _ = writeln!(err, "opuckit: {e}");
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use proptest::prelude::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = main_with(std::iter::once("opuckit").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn complex_grammar() {
        assert_eq!(parse_complex("1+2i").unwrap(), c64(1.0, 2.0));
        assert_eq!(parse_complex("1-2i").unwrap(), c64(1.0, -2.0));
        assert_eq!(parse_complex("-0.5").unwrap(), c64(-0.5, 0.0));
        assert_eq!(parse_complex("2.5i").unwrap(), c64(0.0, 2.5));
        assert_eq!(parse_complex("-i").unwrap(), c64(0.0, -1.0));
        assert_eq!(parse_complex("3+i").unwrap(), c64(3.0, 1.0));
        assert_eq!(parse_complex("1e-3-2e+1i").unwrap(), c64(1e-3, -20.0));
        for bad in ["", "i2", "1+2", "1+2j", "nan", "inf", "1++2i", "0x1", "1+2i+3i", "+", "+i1"] {
            assert!(parse_complex(bad).is_err(), "{bad:?}");
        }
    }

    proptest! {
        #[test]
        fn complex_roundtrip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            let z = c64(re, im);
            prop_assert_eq!(parse_complex(&fmt_c(z)).unwrap(), z);
        }
    }

    #[test]
    fn lebesgue_kernel_value() {
        let (code, out, _) = call(&["kernel", "--family", "lebesgue", "--n", "1", "--z", "2", "--w", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], "3");
    }

    #[test]
    fn hyper_cg_csv() {
        let (code, out, _) = call(&["cg", "--family", "hyper", "--b", "1", "--n", "3", "--format", "csv"]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("n,c,g"));
        let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|s| s.parse().unwrap()).collect()).collect();
        assert_eq!(rows.len(), 3);
        for (k, (f, want)) in rows.iter().zip([0.75, 0.6667, 0.625]).enumerate() {
            assert_eq!(f[0], (k + 1) as f64);
            assert_eq!(f[1], 0.0);
            assert!((f[2] - want).abs() < 5e-5, "{f:?}");
        }
    }

    #[test]
    fn transform_matches_oracle() {
        let (code, out, _) =
            call(&["transform", "--family", "lebesgue", "--zeros", "2,0.5", "--m", "1", "--n", "2", "--w", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["degenerate"], false);
        let got: Vec<C64> =
            v["kernel_nu"].as_array().unwrap().iter().map(|c| parse_complex(c.as_str().unwrap()).unwrap()).collect();
        let mu = MeasureModel::lebesgue();
        let f = SelfReciprocalFactor::for_measure(&[c64(2.0, 0.0), c64(0.5, 0.0)], &mu).unwrap();
        let lv = oracle::transformed_levinson(&mu, &f, 2).unwrap();
        let want = oracle::kernel_oracle_poly(&lv.alphas, lv.total_mass(), 2, c64(1.0, 0.0)).unwrap();
        for (k, g) in got.iter().enumerate() {
            assert!((g - want.coeff(k)).norm() <= 1e-9 * want.max_abs(), "k={k}: {g} vs {}", want.coeff(k));
        }
    }

    #[test]
    fn report_schema() {
        let (code, out, _) = call(&["verify", "--suite", "cg"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        for r in v.as_array().unwrap() {
            let mut keys: Vec<_> = r.as_object().unwrap().keys().cloned().collect();
            keys.sort();
            assert_eq!(keys, ["check", "error", "params", "pass", "threshold"]);
        }
        let (_, out, _) = call(&["verify", "--suite", "cg", "--format", "csv"]);
        assert_eq!(out.lines().next(), Some("check,params,error,threshold,pass"));
    }

    #[test]
    fn verify_is_deterministic() {
        let a = call(&["verify", "--suite", "kernels", "--seed", "11"]);
        let b = call(&["verify", "--suite", "kernels", "--seed", "11"]);
        assert_eq!(a, b);
        let one = verify::run_with_threads(Suite::Kernels, None, 11, Some(1)).unwrap();
        let four = verify::run_with_threads(Suite::Kernels, None, 11, Some(4)).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn xi_suite_reports_both_conventions() {
        let (code, out, _) = call(&["verify", "--suite", "xi"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let checks: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["check"].as_str().unwrap()).collect();
        assert!(checks.contains(&"xi.doubled"));
        assert!(checks.iter().any(|c| c.starts_with("xi.plain")));
    }

    #[test]
    fn failing_check_exits_one() {
        // the displayed Geronimus g_n(nu) closed form disagrees with the computed values
        let (code, out, _) = call(&["verify", "--suite", "geronimus"]);
        assert_eq!(code, EXIT_FAIL);
        let v: Value = serde_json::from_str(&out).unwrap();
        let failing: Vec<&str> = v
            .as_array()
            .unwrap()
            .iter()
            .filter(|r| r["pass"] == false)
            .map(|r| r["check"].as_str().unwrap())
            .collect();
        assert!(!failing.is_empty() && failing.iter().all(|c| *c == "geronimus.g_nu"));
    }

    #[test]
    fn json_descriptor() {
        let a = FamilyArgs { family: r#"{"family":"geronimus","alpha":"-0.5"}"#.into(), alpha: None, q: None, b: None };
        assert_eq!(parse_family(&a).unwrap(), MeasureModel::geronimus(c64(-0.5, 0.0)).unwrap());
        let a = FamilyArgs { alpha: Some("0.1".into()), ..a };
        assert!(matches!(parse_family(&a), Err(Error::Parse(_))));
        let a = FamilyArgs { family: r#"{"family":"qhyper","q":0.5,"b":"0.7+0.3i"}"#.into(), alpha: None, q: None, b: None };
        assert_eq!(parse_family(&a).unwrap(), MeasureModel::qhyper(0.5, c64(0.7, 0.3)).unwrap());
        let a = FamilyArgs { family: r#"{"family":"alphas","alphas":["0.5","0.1-0.2i"]}"#.into(), alpha: None, q: None, b: None };
        assert_eq!(parse_family(&a).unwrap(), MeasureModel::explicit_alpha(vec![c64(0.5, 0.0), c64(0.1, -0.2)], 1.0).unwrap());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["kernel", "--family", "nope", "--n", "1", "--z", "1", "--w", "1"]).0, EXIT_PARSE);
        assert_eq!(call(&["kernel", "--family", "geronimus", "--n", "1", "--z", "1", "--w", "1"]).0, EXIT_PARSE);
        assert_eq!(call(&["kernel", "--family", "geronimus", "--alpha", "1.5", "--n", "1", "--z", "1", "--w", "1"]).0, EXIT_PARSE);
        assert_eq!(call(&["kernel", "--family", "lebesgue", "--n", "1", "--z", "1+", "--w", "1"]).0, EXIT_PARSE);
        assert_eq!(call(&["cg", "--family", "lebesgue"]).0, EXIT_PARSE);
        assert_eq!(call(&["verify", "--suite", "bogus"]).0, EXIT_PARSE);
        assert_eq!(call(&["verify", "--suite", "cg", "--tol", "-1"]).0, EXIT_PARSE);
        assert_eq!(call(&["transform", "--family", "lebesgue", "--zeros", "2,0.5", "--m", "2", "--n", "2", "--w", "1"]).0, EXIT_PARSE);
        assert_eq!(call(&["cg", "--family", "hyper", "--b", "1", "--n", "x"]).0, EXIT_PARSE);
        let (code, _, err) = call(&["kernel", "--family", r#"{"family":"geronimus"}"#, "--n", "1", "--z", "2", "--w", "1"]);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.starts_with("opuckit: parse error"));
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn degenerate_transform_has_no_kernel() {
        let (code, out, _) =
            call(&["transform", "--family", "lebesgue", "--zeros", "2,0.5", "--n", "2", "--w", "0"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["degenerate"], true);
        assert!(v["kernel_nu"].is_null());
    }
}
