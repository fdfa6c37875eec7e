//! Verification suites: every check compares a computed quantity against a
//! closed form or the oracle and reports the measured error next to its
//! pinned threshold.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cgrec::{self, reference, XiConvention};
use crate::christoffel::{self, AdmissibleSet, SelfReciprocalFactor, DEGENERATE_TOL};
use crate::kernels;
use crate::measures::{self, fmt_c, MeasureModel};
use crate::opuc::OpucTable;
use crate::oracle;
use crate::poly::Poly;
use crate::{Error, Result, C64};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: String,
    pub error: f64,
    pub threshold: f64,
    pub pass: bool,
    /// Structural checks (zero location, degeneracy flags) keep their
    /// threshold under `--tol`.
    #[serde(skip)]
    pub fixed: bool,
}

impl CheckReport {
    fn new(check: &str, params: String, error: f64, threshold: f64) -> Self {
        CheckReport { check: check.into(), params, error, threshold, pass: error <= threshold, fixed: false }
    }

    fn fixed(check: &str, params: String, error: f64, threshold: f64) -> Self {
        CheckReport { fixed: true, ..CheckReport::new(check, params, error, threshold) }
    }

    /// Raises the threshold to `tol` when that is looser; never tightens.
    pub fn with_tol(mut self, tol: f64) -> Self {
        if !self.fixed && tol > self.threshold {
            self.threshold = tol;
            self.pass = self.error <= self.threshold;
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Kernels,
    Christoffel,
    Cg,
    Xi,
    Geronimus,
    QHyper,
    Hyper,
    Transformed,
    Oracle,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 10] =
        ["kernels", "christoffel", "cg", "xi", "geronimus", "qhyper", "hyper", "transformed", "oracle", "all"];

    pub fn parse(s: &str) -> Result<Suite> {
        Ok(match s {
            "kernels" => Suite::Kernels,
            "christoffel" => Suite::Christoffel,
            "cg" => Suite::Cg,
            "xi" => Suite::Xi,
            "geronimus" => Suite::Geronimus,
            "qhyper" => Suite::QHyper,
            "hyper" => Suite::Hyper,
            "transformed" => Suite::Transformed,
            "oracle" => Suite::Oracle,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}; expected one of {}", Suite::NAMES.join(", ")))),
        })
    }

    /// Numbered acceptance checks in this suite; `13` is the oracle
    /// self-consistency group.
    pub fn criteria(self) -> Vec<usize> {
        match self {
            Suite::Kernels => vec![1, 2, 12],
            Suite::Christoffel => vec![3, 4, 5],
            Suite::Cg => vec![6],
            Suite::Xi => vec![7],
            Suite::Geronimus => vec![8],
            Suite::QHyper => vec![9],
            Suite::Hyper => vec![10],
            Suite::Transformed => vec![11],
            Suite::Oracle => vec![13],
            Suite::All => (1..=13).collect(),
        }
    }
}

/// Runs one numbered check group. Randomized groups draw from a generator
/// seeded with `seed` and the group number, so results do not depend on
/// scheduling.
pub fn criterion(k: usize, seed: u64) -> Result<Vec<CheckReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k as u64));
    match k {
        1 => dual_path(&mut rng),
        2 => lebesgue_closed_form(&mut rng),
        3 => christoffel_vs_oracle(),
        4 => degeneracy(),
        5 => confluent(),
        6 => cg_roundtrip(),
        7 => xi_convention(&mut rng),
        8 => geronimus(),
        9 => qhyper(),
        10 => hyper(),
        11 => transformed_vs_levinson(),
        12 => zero_location(&mut rng),
        13 => oracle_consistency(),
        _ => Err(Error::Contract(format!("no check group {k}"))),
    }
}

/// Thread cap from `OPUCKIT_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("OPUCKIT_THREADS").ok()?.trim().parse().ok().filter(|n| *n > 0)
}

/// All checks of `suite`, in canonical order (check name, then params).
pub fn run(suite: Suite, tol: Option<f64>, seed: u64) -> Result<Vec<CheckReport>> {
    run_with_threads(suite, tol, seed, thread_cap())
}

/// [`run`] on a pool of `threads` workers (rayon's default when `None`).
pub fn run_with_threads(suite: Suite, tol: Option<f64>, seed: u64, threads: Option<usize>) -> Result<Vec<CheckReport>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Inconsistency(format!("thread pool: {e}")))?;
    let groups: Vec<Result<Vec<CheckReport>>> =
        pool.install(|| suite.criteria().into_par_iter().map(|k| criterion(k, seed)).collect());
    let mut out = Vec::new();
    for g in groups {
        out.extend(g?);
    }
    if let Some(t) = tol {
        out = out.into_iter().map(|r| r.with_tol(t)).collect();
    }
    out.sort_by(|a, b| (&a.check, &a.params).cmp(&(&b.check, &b.params)));
    Ok(out)
}

// Largest entry, NaN-propagating so a broken computation cannot pass.
// Signed: the zero-location margins are negative when they hold.
fn worst<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(f64::NEG_INFINITY, |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

// Coefficient-wise deviation relative to the largest coefficient of `want`.
fn poly_rel(got: &Poly, want: &Poly) -> f64 {
    let s = want.max_abs();
    let n = got.len().max(want.len());
    worst((0..n).map(|k| (got.coeff(k) - want.coeff(k)).norm() / s))
}

fn annulus(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> C64 {
    C64::from_polar(rng.gen_range(lo..=hi), rng.gen_range(0.0..2.0 * PI))
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

// -- kernels ---------------------------------------------------------------

fn dual_path(rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for m in measures::catalogue() {
        let t = OpucTable::build(&m, 41)?;
        let mut err: f64 = 0.0;
        for _ in 0..50 {
            let (z, w) = loop {
                let (z, w) = (annulus(rng, 0.2, 3.0), annulus(rng, 0.2, 3.0));
                if (w.conj() * z - 1.0).norm() >= 1e-3 {
                    break (z, w);
                }
            };
            let e = worst((0..=40).map(|n| {
                let s = kernels::kernel_sum(&t, n, z, w);
                (s - kernels::kernel_cd(&t, n, z, w)).norm() / (1.0 + s.norm())
            }));
            err = worst([err, e]);
        }
        out.push(CheckReport::new("kernels.dual_path", format!("family={} n<=40 pairs=50", m.label()), err, 1e-9));
    }
    Ok(out)
}

fn lebesgue_closed_form(rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let t = OpucTable::build(&MeasureModel::lebesgue(), 31)?;
    let mut err: f64 = 0.0;
    for _ in 0..50 {
        let (z, w) = loop {
            let (z, w) = (annulus(rng, 0.2, 3.0), annulus(rng, 0.2, 3.0));
            if (w.conj() * z - 1.0).norm() >= 1e-3 {
                break (z, w);
            }
        };
        let x = w.conj() * z;
        for n in 0..=30 {
            let want = (1.0 - x.powu(n as u32 + 1)) / (1.0 - x);
            let got = [kernels::kernel_sum(&t, n, z, w), kernels::kernel_cd(&t, n, z, w)];
            err = worst([err, worst(got.iter().map(|g| (g - want).norm() / (1.0 + want.norm())))]);
        }
    }
    Ok(vec![CheckReport::new("kernels.lebesgue_closed_form", "n<=30 pairs=50".into(), err, 1e-11)])
}

fn zero_location(rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for m in measures::catalogue() {
        let t = OpucTable::build(&m, 15)?;
        let roots = |w: C64| -> Result<Vec<Vec<C64>>> {
            (1..=15).map(|n| kernels::kernel_roots(&kernels::kernel_poly(&t, n, w))).collect()
        };
        let (mut inside, mut on, mut outside) = (f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for k in 0..6 {
            let w = annulus(rng, 0.0, 1.0 - 1e-3);
            inside = worst([inside, worst(roots(w)?.iter().flatten().map(|r| 1.0 - r.norm()))]);
            let w = if k == 0 { c(1.0, 0.0) } else { annulus(rng, 1.0, 1.0) };
            on = worst([on, worst(roots(w)?.iter().flatten().map(|r| (r.norm() - 1.0).abs()))]);
            let w = annulus(rng, 1.0 + 1e-3, 3.0);
            outside = worst([outside, worst(roots(w)?.iter().flatten().map(|r| r.norm() - 1.0))]);
        }
        let p = |s: &str| format!("family={} n<=15 {s}", m.label());
        // |w| < 1 puts every zero outside the closed disk; the error is 1 - min |zero|.
        out.push(CheckReport::fixed("kernels.zeros_for_w_inside", p("|w|<=1-1e-3"), inside, -1e-8));
        out.push(CheckReport::fixed("kernels.zeros_for_w_on_circle", p("|w|=1"), on, 1e-6));
        out.push(CheckReport::fixed("kernels.zeros_for_w_outside", p("|w|>=1+1e-3"), outside, -1e-8));
    }
    Ok(out)
}

// -- christoffel -------------------------------------------------------------

/// Bases and factors shared by the determinant-formula and transformed-(c, g)
/// cross-checks: one pair `{r e^{it}, e^{it}/r}` of zeros for `m = 1`,
/// a second pair for `m = 2`.
pub fn transform_cases() -> Vec<(MeasureModel, Vec<C64>)> {
    let pair = |r: f64, t: f64| [C64::from_polar(r, t), C64::from_polar(1.0 / r, t)];
    let one: Vec<C64> = pair(1.6, 0.4).to_vec();
    let two: Vec<C64> = pair(1.6, 0.4).into_iter().chain(pair(1.3, 2.5)).collect();
    let bases = [
        MeasureModel::lebesgue(),
        MeasureModel::geronimus(c(-0.5, 0.0)).unwrap(),
        MeasureModel::hyper_jacobi(c(1.0, 0.0)).unwrap(),
    ];
    bases.iter().flat_map(|b| [(b.clone(), one.clone()), (b.clone(), two.clone())]).collect()
}

pub fn transform_ws() -> [C64; 3] {
    [c(1.0, 0.0), C64::from_polar(1.2, PI / 5.0), C64::from_polar(0.7, PI / 7.0)]
}

fn fmt_zeros(z: &[C64]) -> String {
    z.iter().map(|z| fmt_c(*z)).collect::<Vec<_>>().join(";")
}

fn christoffel_vs_oracle() -> Result<Vec<CheckReport>> {
    const N: usize = 15;
    let mut out = Vec::new();
    for (base, zeros) in transform_cases() {
        let f = SelfReciprocalFactor::for_measure(&zeros, &base)?;
        let t = OpucTable::build(&base, N + 2 * f.m() + 1)?;
        let nu = oracle::transformed_moments(&base, &f, N + 1)?;
        let lv = oracle::levinson(&nu, N)?;
        for w in transform_ws() {
            let (mut e_or, mut e_fc) = (0.0f64, 0.0f64);
            for n in 0..=N {
                let kf = christoffel::transform_kernel(&t, &AdmissibleSet::floor(f.m()), &f, n, w, &nu)?.kernel_nu;
                let kc = christoffel::transform_kernel(&t, &AdmissibleSet::ceil(f.m()), &f, n, w, &nu)?.kernel_nu;
                let want = oracle::kernel_oracle_poly(&lv.alphas, lv.total_mass(), n, w)?;
                match (kf, kc) {
                    (Some(kf), Some(kc)) => {
                        e_or = worst([poly_rel(&kf, &want), poly_rel(&kc, &want), e_or]);
                        e_fc = worst([poly_rel(&kc, &kf), e_fc]);
                    }
                    _ => (e_or, e_fc) = (f64::INFINITY, f64::INFINITY),
                }
            }
            let p = format!("base={} m={} w={} n<={N}", base.label(), f.m(), fmt_c(w));
            out.push(CheckReport::new("christoffel.oracle", p.clone(), e_or, 1e-8));
            out.push(CheckReport::new("christoffel.floor_vs_ceil", p, e_fc, 1e-9));
        }
    }
    Ok(out)
}

fn degeneracy() -> Result<Vec<CheckReport>> {
    let leb = MeasureModel::lebesgue();
    let z1 = c(2.0, 0.0);
    let f = SelfReciprocalFactor::for_measure(&[z1, 1.0 / z1.conj()], &leb)?;
    let t = OpucTable::build(&leb, 12)?;
    let nu = oracle::transformed_moments(&leb, &f, 10)?;
    let mut out = Vec::new();
    for (name, set) in [("floor", AdmissibleSet::floor(1)), ("ceil", AdmissibleSet::ceil(1))] {
        let mut d: f64 = 0.0;
        for n in 1..=6 {
            let r = christoffel::transform_kernel(&t, &set, &f, n, c(0.0, 0.0), &nu)?;
            d = worst([d, if r.degenerate { r.degeneracy } else { f64::INFINITY }]);
        }
        out.push(CheckReport::fixed(
            "christoffel.degenerate_at_origin",
            format!("base=lebesgue zeros={} set={name} w=0 n<=6", fmt_zeros(f.zeros())),
            d,
            DEGENERATE_TOL,
        ));
    }
    let mut err: f64 = 0.0;
    for n in 1..=6 {
        let k = christoffel::transform_kernel_origin_limit(&t, &AdmissibleSet::floor(1), &f, n, 1e-6, &nu)?;
        let shape = christoffel::lebesgue_origin_kernel_shape(z1, n);
        let norm: C64 = shape.coeffs().iter().enumerate().map(|(i, a)| a * nu.get(-(i as i64))).sum();
        err = worst([err, poly_rel(&k, &shape.scale(1.0 / norm))]);
    }
    out.push(CheckReport::new(
        "christoffel.origin_limit",
        format!("base=lebesgue z1={} h=1e-6 n<=6", fmt_c(z1)),
        err,
        1e-6,
    ));
    Ok(out)
}

fn confluent() -> Result<Vec<CheckReport>> {
    const N: usize = 10;
    let cases = [
        (MeasureModel::hyper_jacobi(c(1.0, 0.0))?, c(1.0, 0.0)),
        (MeasureModel::lebesgue(), C64::from_polar(1.0, 0.7)),
    ];
    let mut out = Vec::new();
    for (base, z0) in cases {
        let f = SelfReciprocalFactor::for_measure(&[z0, z0], &base)?;
        let t = OpucTable::build(&base, N + 3)?;
        let nu = oracle::transformed_moments(&base, &f, N + 1)?;
        let lv = oracle::levinson(&nu, N)?;
        for w in transform_ws() {
            let mut err: f64 = 0.0;
            for n in 0..=N {
                let want = oracle::kernel_oracle_poly(&lv.alphas, lv.total_mass(), n, w)?;
                let r = christoffel::transform_kernel(&t, &AdmissibleSet::floor(1), &f, n, w, &nu)?;
                err = worst([err, r.kernel_nu.map_or(f64::INFINITY, |k| poly_rel(&k, &want))]);
            }
            out.push(CheckReport::new(
                "christoffel.confluent",
                format!("base={} double_zero={} w={} n<={N}", base.label(), fmt_c(z0), fmt_c(w)),
                err,
                1e-7,
            ));
        }
    }
    Ok(out)
}

// -- (c, g) ------------------------------------------------------------------

fn cg_roundtrip() -> Result<Vec<CheckReport>> {
    let mut families = measures::catalogue();
    families.push(MeasureModel::explicit_alpha(
        (0..100).map(|k| C64::from_polar(0.6 * 0.97f64.powi(k), k as f64)).collect(),
        1.5,
    )?);
    let mut out = Vec::new();
    for m in families {
        let al = m.alphas(100)?;
        let (cc, g, _) = cgrec::cg_from_alphas(&al)?;
        let back = cgrec::alphas_from_cg(&cc, &g)?;
        let err = worst(back.iter().zip(&al).map(|(a, b)| (a - b).norm()));
        out.push(CheckReport::new("cg.roundtrip", format!("family={} n<=100", m.label()), err, 1e-12));
    }
    Ok(out)
}

fn xi_convention(rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    const N: usize = 30;
    let mut out = Vec::new();
    for m in measures::catalogue() {
        let t = OpucTable::build(&m, N)?;
        let good = cgrec::cg_from_alpha(&m, N, XiConvention::Doubled)?;
        let plain = cgrec::xi_sequence(&good.g, m.total_mass(), XiConvention::Plain);
        let (mut e_good, mut e_plain, mut e_factor) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..10 {
            let z = c(rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2));
            let (r, _) = cgrec::r_values(&good.c, &good.g, N, z);
            for n in 0..=N {
                let k = kernels::kernel_sum(&t, n, z, c(1.0, 0.0));
                e_good = worst([e_good, rel(r[n], good.xi[n] * k)]);
                e_plain = worst([e_plain, rel(r[n], plain[n] * k)]);
                e_factor = worst([e_factor, rel(r[n], 2f64.powi(n as i32) * plain[n] * k)]);
            }
        }
        let p = format!("family={} n<=30 points=10", m.label());
        out.push(CheckReport::new("xi.doubled", format!("{p} xi_n=xi_0*prod(2(1-g_j))"), e_good, 1e-10));
        // The plain normalization misses R_n = xi_n K_n(z, 1) by exactly 2^n;
        // the check passes when 2^n restores the identity.
        out.push(CheckReport::new(
            "xi.plain_off_by_2^n",
            format!("{p} xi_n=xi_0*prod(1-g_j) identity_deviation={e_plain:.3e}"),
            e_factor,
            1e-10,
        ));
    }
    Ok(out)
}

// -- families ----------------------------------------------------------------

fn geronimus() -> Result<Vec<CheckReport>> {
    const N: usize = 25;
    let mut out = Vec::new();
    for alpha in [c(-0.5, 0.0), c(-0.3, 0.0), c(-0.3, 0.2)] {
        let m = MeasureModel::geronimus(alpha)?;
        let zeros = reference::geronimus_zeros(alpha);
        let f = SelfReciprocalFactor::for_measure(&zeros, &m)?;
        let cc = cgrec::connection_coeffs(&m, &f, N)?;
        let (cn, gn) = cgrec::transformed_cg(&m, &f, N, XiConvention::Doubled)?;
        let (c_mu, g_mu) = m.cgs(N)?;
        let a1 = worst((0..=N).map(|n| cc.a[n][0].norm()));
        let a2 = worst((0..=N).map(|n| (cc.a[n][1] - reference::geronimus_a(alpha, n).1).norm()));
        let mut r_err: f64 = 0.0;
        for z in zeros {
            let (v, _) = cgrec::r_values(&c_mu, &g_mu, N, z);
            r_err = worst([r_err, worst((0..=N).map(|n| (v[n] - reference::geronimus_r_at_zero(alpha, n, z)).norm()))]);
        }
        let c_err = worst((1..=N).map(|n| (cn[n - 1] - reference::geronimus_c_nu(alpha)).abs()));
        let g_disp = worst((1..=N).map(|n| (gn[n - 1] - reference::geronimus_g_nu(alpha, n)).abs()));
        let g_cons = worst((1..=N).map(|n| (gn[n - 1] - reference::geronimus_g_nu_alt(alpha, n)).abs()));
        let p = |extra: &str| format!("alpha={} n<={N}{extra}", fmt_c(alpha));
        out.push(CheckReport::new("geronimus.a1", p(""), a1, 1e-10));
        out.push(CheckReport::new("geronimus.a2", p(""), a2, 1e-10));
        out.push(CheckReport::new("geronimus.r_at_zeros", p(""), r_err, 1e-9));
        out.push(CheckReport::new("geronimus.c_nu", p(""), c_err, 1e-9));
        out.push(CheckReport::new("geronimus.g_nu", p(" form=1-n/(n+1)*[(n+1)(1-g)-4(n+3)]/[n(1-g)-4(n+2)]*(1-g)"), g_disp, 1e-9));
        out.push(CheckReport::new("geronimus.g_nu_alt", p(" form=1-n/(n+1)*[(n+1)(1-g)-(n+3)g]/[n(1-g)-(n+2)g]*(1-g)"), g_cons, 1e-9));
    }
    Ok(out)
}

fn qhyper() -> Result<Vec<CheckReport>> {
    const N: usize = 15;
    let mut out = Vec::new();
    for (q, b) in [(0.5, c(1.0, 0.0)), (0.5, c(0.7, 0.3)), (0.3, c(1.2, 0.0))] {
        let m = MeasureModel::qhyper(q, b)?;
        let f = SelfReciprocalFactor::for_measure(&reference::qhyper_zeros(q, b), &m)?;
        let cc = cgrec::connection_coeffs(&m, &f, N)?;
        let want: Vec<_> = (0..=N).map(|n| reference::qhyper_connection(q, b, n)).collect();
        let p = format!("q={q} b={} n<={N}", fmt_c(b));
        let e = |get: &dyn Fn(usize) -> (C64, C64)| worst((0..=N).map(|n| rel(get(n).0, get(n).1)));
        out.push(CheckReport::new("qhyper.a1", p.clone(), e(&|n| (cc.a[n][0], want[n].0)), 1e-9));
        out.push(CheckReport::new("qhyper.a2", p.clone(), e(&|n| (cc.a[n][1], want[n].1)), 1e-9));
        out.push(CheckReport::new("qhyper.gamma", p, e(&|n| (cc.gamma[n], want[n].2)), 1e-9));
        if q == 0.5 && b == c(1.0, 0.0) {
            out.push(CheckReport::new(
                "qhyper.a2_spot",
                "q=0.5 b=1+0i n=0 want=-3.5".into(),
                (cc.a[0][1] - c(-3.5, 0.0)).norm(),
                1e-9,
            ));
        }
    }
    Ok(out)
}

fn hyper() -> Result<Vec<CheckReport>> {
    const N: usize = 15;
    let mut out = Vec::new();
    for b in [c(1.0, 0.0), c(0.8, 0.5)] {
        let m = MeasureModel::hyper_jacobi(b)?;
        let p = cgrec::cg_from_alpha(&m, 50, XiConvention::Doubled)?;
        let cg_err = worst((1..=50).map(|n| {
            let (cw, gw) = reference::hyper_cg(b, n);
            worst([(p.c[n - 1] - cw).abs(), (p.g[n - 1] - gw).abs()])
        }));
        out.push(CheckReport::new("hyper.cg", format!("b={} n<=50", fmt_c(b)), cg_err, 1e-11));

        let f = SelfReciprocalFactor::for_measure(&[c(1.0, 0.0), c(1.0, 0.0)], &m)?;
        let cc = cgrec::connection_coeffs(&m, &f, N)?;
        // gamma_n depends on the scale of G; the closed form is for (z - 1)^2.
        let g0 = f.poly().coeff(0);
        let want: Vec<_> = (0..=N).map(|n| reference::hyper_connection(b, n)).collect();
        let pr = format!("b={} n<={N}", fmt_c(b));
        out.push(CheckReport::new("hyper.a1", pr.clone(), worst((0..=N).map(|n| rel(cc.a[n][0], want[n].0))), 1e-9));
        out.push(CheckReport::new("hyper.a2", pr.clone(), worst((0..=N).map(|n| rel(cc.a[n][1], want[n].1))), 1e-9));
        out.push(CheckReport::new(
            "hyper.gamma",
            pr.clone(),
            worst((0..=N).map(|n| rel(cc.gamma[n] * g0, want[n].2))),
            1e-9,
        ));
        let (cn, gn) = cgrec::transformed_cg(&m, &f, N, XiConvention::Doubled)?;
        let t_err = worst((1..=N).map(|n| {
            let (cw, gw) = reference::hyper_cg(b + 1.0, n);
            worst([(cn[n - 1] - cw).abs(), (gn[n - 1] - gw).abs()])
        }));
        out.push(CheckReport::new("hyper.transformed_is_b_plus_1", pr, t_err, 1e-8));
    }
    Ok(out)
}

fn transformed_vs_levinson() -> Result<Vec<CheckReport>> {
    const N: usize = 20;
    let mut out = Vec::new();
    for (base, zeros) in transform_cases() {
        let f = SelfReciprocalFactor::for_measure(&zeros, &base)?;
        let (cn, gn) = cgrec::transformed_cg(&base, &f, N, XiConvention::Doubled)?;
        let lv = oracle::transformed_levinson(&base, &f, N)?;
        let (co, go, _) = cgrec::cg_from_alphas(&lv.alphas)?;
        let err = worst((0..N).map(|k| worst([(cn[k] - co[k]).abs(), (gn[k] - go[k]).abs()])));
        out.push(CheckReport::new(
            "transformed.vs_levinson",
            format!("base={} m={} zeros={} n<={N}", base.label(), f.m(), fmt_zeros(f.zeros())),
            err,
            1e-8,
        ));
    }
    Ok(out)
}

// -- oracle ------------------------------------------------------------------

fn oracle_consistency() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for m in measures::catalogue() {
        if m.has_density() {
            let a = oracle::moments_from_alpha(&m, 15)?;
            let q = oracle::moments_quadrature(&m, 15)?;
            let err = worst((0..=15).map(|k| (a.get(k) - q.get(k)).norm()));
            out.push(CheckReport::new("oracle.moments_dual_path", format!("family={} k<=15", m.label()), err, 1e-7));
        }
        let al = m.alphas(20)?;
        let lv = oracle::levinson(&oracle::moments_from_alpha(&m, 20)?, 20)?;
        let mut want = m.total_mass();
        let mut e_piv = (lv.pivots[0] - want).abs() / want;
        for (n, a) in al.iter().enumerate() {
            want *= 1.0 - a.norm_sqr();
            e_piv = worst([e_piv, (lv.pivots[n + 1] - want).abs() / want]);
        }
        let e_al = worst(lv.alphas.iter().zip(&al).map(|(x, y)| (x - y).norm()));
        let p = format!("family={} n<=20", m.label());
        out.push(CheckReport::new("oracle.levinson_pivots", p.clone(), e_piv, 1e-10));
        out.push(CheckReport::new("oracle.levinson_alphas", p, e_al, 1e-10));
    }
    Ok(out)
}
