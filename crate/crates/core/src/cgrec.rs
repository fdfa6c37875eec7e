//! The `(c, g)` parametrization at `w = 1`: maps to and from Verblunsky
//! coefficients, the normalizations `xi_n`, the three-term recurrence for
//! `R_n = xi_n K_n(z, 1)`, connection coefficients for a Christoffel
//! transform and the transformed parameters `(c_n(nu), g_n(nu))`.

use crate::christoffel::SelfReciprocalFactor;
use crate::dd::{Cdd, Dd};
use crate::linalg;
use crate::measures::MeasureModel;
use crate::poly::Poly;
use crate::{Error, Result, C64, I};

/// Normalization of `xi_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XiConvention {
    /// `xi_n = xi_0 prod_{j<=n} 2(1 - g_j)`; makes `R_n = xi_n K_n(., 1)`.
    Doubled,
    /// `xi_n = xi_0 prod_{j<=n} (1 - g_j)`, off by `2^n`.
    Plain,
}

/// `c_1..c_N`, `g_1..g_N`, `tau_0..tau_N` and `xi_0..xi_N` of a measure.
#[derive(Debug, Clone, PartialEq)]
pub struct CgParams {
    pub c: Vec<f64>,
    pub g: Vec<f64>,
    pub tau: Vec<C64>,
    pub xi: Vec<f64>,
}

/// Forward map from Verblunsky coefficients: returns `(c, g, tau)` with
/// `c[n-1] = c_n`, `g[n-1] = g_n` and `tau[n] = tau_n`.
pub fn cg_from_alphas(alphas: &[C64]) -> Result<(Vec<f64>, Vec<f64>, Vec<C64>)> {
    // tau_n runs through a Möbius map that amplifies rounding by a constant
    // factor per step near a mass point at 1; double-double keeps it exact
    // to working precision for the lengths used here.
    let mut tau = vec![C64::new(1.0, 0.0)];
    let mut t = Cdd::ONE;
    let mut c = Vec::with_capacity(alphas.len());
    let mut g = Vec::with_capacity(alphas.len());
    for (n, &a) in alphas.iter().enumerate() {
        let ad = Cdd::from_c64(a);
        let ta = t * ad;
        let den = Dd::ONE - ta.re;
        if !(den.to_f64() > 0.0) {
            return Err(Error::Contract(format!("tau_{n} alpha_{n} = 1")));
        }
        let om = Cdd::ONE - ta;
        c.push((-ta.im / den).to_f64());
        g.push((Dd::from_f64(0.5) * om.norm_sqr() / den).to_f64());
        t = (t - ad.conj()) / om;
        let nt = t.to_c64();
        tau.push(nt / nt.norm());
    }
    Ok((c, g, tau))
}

/// Inverse map: `alpha_{n-1} = (1/tau_{n-1}) (1 - 2g_n - i c_n)/(1 - i c_n)`
/// with `tau_n = tau_{n-1} (1 - i c_n)/(1 + i c_n)`.
pub fn alphas_from_cg(c: &[f64], g: &[f64]) -> Result<Vec<C64>> {
    if c.len() != g.len() {
        return Err(Error::Contract("c and g differ in length".into()));
    }
    let mut tau = C64::new(1.0, 0.0);
    let mut out = Vec::with_capacity(c.len());
    for (k, (&cn, &gn)) in c.iter().zip(g).enumerate() {
        if !(gn > 0.0 && gn < 1.0) {
            return Err(Error::InvalidMeasure(format!("g_{} = {gn} is not in (0, 1)", k + 1)));
        }
        let ic = I * cn;
        out.push((1.0 - 2.0 * gn - ic) / (1.0 - ic) / tau);
        tau *= (1.0 - ic) / (1.0 + ic);
    }
    Ok(out)
}

/// `xi_0 .. xi_N` from `g_1 .. g_N`.
pub fn xi_sequence(g: &[f64], total_mass: f64, conv: XiConvention) -> Vec<f64> {
    let f = match conv {
        XiConvention::Doubled => 2.0,
        XiConvention::Plain => 1.0,
    };
    let mut xi = vec![total_mass];
    for gj in g {
        let last = *xi.last().unwrap();
        xi.push(last * f * (1.0 - gj));
    }
    xi
}

/// `(c, g)` data of `m` up to index `n_max`, computed from its Verblunsky
/// coefficients.
pub fn cg_from_alpha(m: &MeasureModel, n_max: usize, conv: XiConvention) -> Result<CgParams> {
    let (c, g, tau) = cg_from_alphas(&m.alphas(n_max)?)?;
    let xi = xi_sequence(&g, m.total_mass(), conv);
    Ok(CgParams { c, g, tau, xi })
}

/// `R_0 .. R_N` as polynomials from `c_1..c_N`, `g_1..g_N`.
pub fn r_polys(c: &[f64], g: &[f64], n_max: usize) -> Vec<Poly> {
    let mut r = vec![Poly::one()];
    if n_max == 0 {
        return r;
    }
    r.push(Poly::new(vec![1.0 - I * c[0], 1.0 + I * c[0]]));
    for n in 1..n_max {
        let d = (1.0 - g[n - 1]) * g[n];
        let f = Poly::new(vec![1.0 - I * c[n], 1.0 + I * c[n]]);
        let next = &(&f * &r[n]) - &r[n - 1].shift(1).scale(C64::new(4.0 * d, 0.0));
        r.push(next);
    }
    r
}

/// `R_n(z)` and `R_n'(z)` for `n = 0..=N`, run through the recurrence
/// pointwise. When `mu` has a mass point at `1`, `R_n` is the subdominant
/// solution of the recurrence, so it runs in double-double.
pub fn r_values(c: &[f64], g: &[f64], n_max: usize, z: C64) -> (Vec<C64>, Vec<C64>) {
    let d = |x: C64| Cdd::from_c64(x);
    let one = Dd::ONE;
    let mut v = vec![Cdd::ONE];
    let mut dv = vec![Cdd::ZERO];
    let zd = d(z);
    for n in 0..n_max {
        let a = d(1.0 + I * c[n]);
        let f = a * zd + d(1.0 - I * c[n]);
        if n == 0 {
            v.push(f);
            dv.push(a);
            continue;
        }
        let d4 = Dd::from_f64(4.0) * (one - Dd::from_f64(g[n - 1])) * Dd::from_f64(g[n]);
        let d4 = Cdd { re: d4, im: Dd::ZERO };
        v.push(f * v[n] - d4 * zd * v[n - 1]);
        dv.push(a * v[n] + f * dv[n] - d4 * (v[n - 1] + zd * dv[n - 1]));
    }
    (v.into_iter().map(Cdd::to_c64).collect(), dv.into_iter().map(Cdd::to_c64).collect())
}

pub fn r_sequence(m: &MeasureModel, n_max: usize) -> Result<Vec<Poly>> {
    let (c, g) = m.cgs(n_max)?;
    Ok(r_polys(&c, &g, n_max))
}

/// Connection coefficients `a_j^{(n,m)}` (`a[n][j-1]`) and `gamma_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionCoeffs {
    pub m: usize,
    pub a: Vec<Vec<C64>>,
    pub gamma: Vec<C64>,
}

/// Base data shared by the connection and transformed-parameter routines.
struct Base {
    c: Vec<f64>,
    g: Vec<f64>,
    total_mass: f64,
}

impl Base {
    fn new(m: &MeasureModel, count: usize) -> Result<Self> {
        let (c, g) = m.cgs(count)?;
        Ok(Base { c, g, total_mass: m.total_mass() })
    }

    fn c(&self, k: usize) -> f64 {
        self.c[k - 1]
    }
}

fn connection_from_base(base: &Base, factor: &SelfReciprocalFactor, n_max: usize) -> Result<ConnectionCoeffs> {
    let m = factor.m();
    let groups = factor.distinct_zeros();
    if m >= 2 && groups.iter().any(|(_, k)| *k > 1) {
        return Err(Error::Unsupported("repeated zeros need m = 1".into()));
    }
    let top = n_max + 2 * m;
    // R values and derivatives at each distinct zero
    let tables: Vec<(C64, usize, Vec<C64>, Vec<C64>)> = groups
        .iter()
        .map(|&(z, k)| {
            let (v, dv) = r_values(&base.c, &base.g, top, z);
            (z, k, v, dv)
        })
        .collect();
    let p_exp = |j: usize| j / 2;
    let mut a = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let big_n = n + 2 * m;
        let mut rows = Vec::with_capacity(2 * m);
        let mut rhs = Vec::with_capacity(2 * m);
        for (z, mult, v, dv) in &tables {
            for order in 0..*mult {
                let row: Vec<C64> = (1..=2 * m)
                    .map(|j| {
                        let e = p_exp(j) as i32;
                        let p = z.powi(e);
                        if order == 0 {
                            p * v[big_n - j]
                        } else {
                            let dp = if e == 0 { C64::new(0.0, 0.0) } else { e as f64 * z.powi(e - 1) };
                            dp * v[big_n - j] + p * dv[big_n - j]
                        }
                    })
                    .collect();
                rows.push(row);
                rhs.push(if order == 0 { -v[big_n] } else { -dv[big_n] });
            }
        }
        a.push(linalg::solve(&rows, &rhs)?);
    }
    let g0 = factor.poly().coeff(0).conj();
    let mut gamma = vec![(1..=2 * m).map(|j| 1.0 + I * base.c(j)).product::<C64>() / g0];
    for n in 1..=n_max {
        let big_n = n + 2 * m;
        let x = x_term(base, &a, n, big_n);
        let prev = gamma[n - 1];
        gamma.push(prev * 0.5 * (x + 1.0 + I * base.c(big_n)));
    }
    Ok(ConnectionCoeffs { m, a, gamma })
}

fn x_term(base: &Base, a: &[Vec<C64>], n: usize, big_n: usize) -> C64 {
    let u = 1.0 - I * base.c(big_n - 1);
    u * ((1.0 - I * base.c(big_n)) + a[n][0]) / (u + a[n - 1][0])
}

/// Connection coefficients of `m` under the factor `G` for `n = 0..=n_max`,
/// using the floor admissible set `p_j = z^{floor(j/2)}`.
pub fn connection_coeffs(
    m: &MeasureModel,
    factor: &SelfReciprocalFactor,
    n_max: usize,
) -> Result<ConnectionCoeffs> {
    let base = Base::new(m, n_max + 2 * factor.m())?;
    connection_from_base(&base, factor, n_max)
}

/// Transformed parameters before the real-valuedness check.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTransformedCg {
    pub c: Vec<C64>,
    pub g: Vec<C64>,
    pub coeffs: ConnectionCoeffs,
}

/// `c_n(nu)` and `g_n(nu)` for `n = 1..=n_max` as complex numbers.
pub fn transformed_cg_raw(
    m: &MeasureModel,
    factor: &SelfReciprocalFactor,
    n_max: usize,
    conv: XiConvention,
) -> Result<RawTransformedCg> {
    let mm = factor.m();
    let base = Base::new(m, n_max + 2 * mm)?;
    let coeffs = connection_from_base(&base, factor, n_max)?;
    let xi = xi_sequence(&base.g, base.total_mass, conv);
    let s = |n: usize| -> C64 {
        let big_n = n + 2 * mm;
        coeffs.a[n]
            .iter()
            .enumerate()
            .fold(C64::new(xi[big_n], 0.0), |acc, (j, aj)| acc + aj * xi[big_n - j - 1])
    };
    let half = match conv {
        XiConvention::Doubled => 0.5,
        XiConvention::Plain => 1.0,
    };
    let mut c = Vec::with_capacity(n_max);
    let mut g = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let big_n = n + 2 * mm;
        let x = x_term(&base, &coeffs.a, n, big_n);
        let ratio = coeffs.gamma[n - 1] / coeffs.gamma[n];
        c.push(0.5 * I * ratio * (x - (1.0 + I * base.c(big_n))));
        g.push(1.0 - half * ratio * s(n) / s(n - 1));
    }
    Ok(RawTransformedCg { c, g, coeffs })
}

/// Tolerance on the imaginary parts of the transformed parameters.
pub const REAL_TOL: f64 = 1e-9;

/// Real `(c_n(nu), g_n(nu))` for `n = 1..=n_max`.
pub fn transformed_cg(
    m: &MeasureModel,
    factor: &SelfReciprocalFactor,
    n_max: usize,
    conv: XiConvention,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let raw = transformed_cg_raw(m, factor, n_max, conv)?;
    let real = |v: &[C64], name: &str| -> Result<Vec<f64>> {
        v.iter()
            .enumerate()
            .map(|(k, z)| {
                if z.im.abs() > REAL_TOL * z.re.abs().max(1.0) {
                    Err(Error::Convention(format!("{name}_{}(nu) = {z} is not real", k + 1)))
                } else {
                    Ok(z.re)
                }
            })
            .collect()
    };
    Ok((real(&raw.c, "c")?, real(&raw.g, "g")?))
}

/// `gamma_n` evaluated directly: `conj(R_{n+2m}(0; mu)) / (conj(G(0)) prod_{k<=n} (1 + i c_k(nu)))`.
pub fn gamma_direct(m: &MeasureModel, factor: &SelfReciprocalFactor, c_nu: &[f64], n: usize) -> Result<C64> {
    let big_n = n + 2 * factor.m();
    let (c, _) = m.cgs(big_n)?;
    let r0: C64 = c.iter().map(|ck| 1.0 - I * ck).product();
    let den: C64 = c_nu[..n].iter().map(|ck| 1.0 + I * ck).product();
    Ok(r0.conj() / (factor.poly().coeff(0).conj() * den))
}

/// Closed forms for the built-in families.
pub mod reference {
    use std::f64::consts::PI;

    use crate::special::{hyp2f1_terminating, pochhammer, qhyp_2phi1, qpow};
    use crate::{C64, I};

    /// Constant `(c, g, d)` of the Geronimus measure.
    pub fn geronimus_cgd(alpha: C64) -> (f64, f64, f64) {
        let g = (1.0 - alpha.norm_sqr()) / (2.0 * (1.0 + alpha.re));
        (-alpha.im / (1.0 + alpha.re), g, (1.0 - g) * g)
    }

    /// Endpoints of the Geronimus support arc as points of the circle.
    pub fn geronimus_zeros(alpha: C64) -> [C64; 2] {
        let vt = ((1.0 + alpha.conj()) / (1.0 + alpha)).arg();
        let ta = 2.0 * alpha.norm().asin();
        [C64::from_polar(1.0, ta - vt), C64::from_polar(1.0, 2.0 * PI - ta - vt)]
    }

    /// `(a_1, a_2)` for the arc factor: `0` and `-4 (n+3)/(n+1) d`.
    pub fn geronimus_a(alpha: C64, n: usize) -> (C64, C64) {
        let (_, _, d) = geronimus_cgd(alpha);
        let nf = n as f64;
        (C64::new(0.0, 0.0), C64::new(-4.0 * (nf + 3.0) / (nf + 1.0) * d, 0.0))
    }

    /// `R_n(z_j) = 2^n (n+1) d^{n/2} z_j^{n/2}` (principal square root).
    pub fn geronimus_r_at_zero(alpha: C64, n: usize, z: C64) -> C64 {
        let (_, _, d) = geronimus_cgd(alpha);
        let nf = n as f64;
        2f64.powi(n as i32) * (nf + 1.0) * d.powf(0.5 * nf) * z.sqrt().powi(n as i32)
    }

    /// `R_n(z_j) = (n+1) 2^{-n} f_1(z_j)^n` with `f_1 = (1+ic)z + (1-ic)`.
    pub fn geronimus_r_f1(alpha: C64, n: usize, z: C64) -> C64 {
        let (c, _, _) = geronimus_cgd(alpha);
        let f1 = (1.0 + I * c) * z + (1.0 - I * c);
        (n as f64 + 1.0) / 2f64.powi(n as i32) * f1.powi(n as i32)
    }

    /// `c_n(nu)` for the Geronimus measure under its arc factor.
    pub fn geronimus_c_nu(alpha: C64) -> f64 {
        -alpha.im / (1.0 + alpha.re)
    }

    /// `g_n(nu)` as displayed:
    /// `1 - n/(n+1) [(n+1)(1-g) - 4(n+3)]/[n(1-g) - 4(n+2)] (1-g)`.
    pub fn geronimus_g_nu(alpha: C64, n: usize) -> f64 {
        let (_, g, _) = geronimus_cgd(alpha);
        let (nf, h) = (n as f64, 1.0 - g);
        1.0 - nf / (nf + 1.0) * ((nf + 1.0) * h - 4.0 * (nf + 3.0)) / (nf * h - 4.0 * (nf + 2.0)) * h
    }

    /// `g_n(nu)` consistent with the connection coefficients:
    /// `1 - n/(n+1) [(n+1)(1-g) - (n+3)g]/[n(1-g) - (n+2)g] (1-g)`.
    pub fn geronimus_g_nu_alt(alpha: C64, n: usize) -> f64 {
        let (_, g, _) = geronimus_cgd(alpha);
        let (nf, h) = (n as f64, 1.0 - g);
        1.0 - nf / (nf + 1.0) * ((nf + 1.0) * h - (nf + 3.0) * g) / (nf * h - (nf + 2.0) * g) * h
    }

    fn q_eta(q: f64, b: C64) -> (f64, f64) {
        (b.re, -b.im * q.ln())
    }

    /// `(c_k, g_k)` of the q-family.
    pub fn qhyper_cg(q: f64, b: C64, k: usize) -> (f64, f64) {
        let (lam, eq) = q_eta(q, b);
        let kf = k as f64;
        let bb = b.conj();
        let one = C64::new(1.0, 0.0);
        let t = q.powf(lam + kf - 1.0);
        let den = 1.0 - t * eq.cos();
        let c = t * eq.sin() / den;
        let num = qhyp_2phi1(C64::new(q.powf(kf - 1.0), 0.0), qpow(q, one - b), qpow(q, bb + kf - 1.0), q, qpow(q, b));
        let dnm = qhyp_2phi1(C64::new(q.powf(kf), 0.0), qpow(q, one - b), qpow(q, bb + kf), q, qpow(q, b));
        let g = 0.5 * (1.0 - qpow(q, bb + kf - 1.0)) / den * num / dnm;
        (c, g.re)
    }

    /// Zeros `q^{-b}` and `q^{conj b}` of the q-family factor.
    pub fn qhyper_zeros(q: f64, b: C64) -> [C64; 2] {
        [qpow(q, -b), qpow(q, b.conj())]
    }

    /// `(a_1, a_2, gamma_n)` of the q-family.
    pub fn qhyper_connection(q: f64, b: C64, n: usize) -> (C64, C64, C64) {
        let (lam, eq) = q_eta(q, b);
        let nf = n as f64;
        let bb = b.conj();
        let cs = eq.cos();
        let a1 = (1.0 - q.powf(2.0 * lam + nf + 1.0)) / (1.0 - q.powf(lam + nf + 1.0) * cs) * 2.0 * I
            * q.powf(lam)
            * eq.sin()
            / (qpow(q, b) * (1.0 - qpow(q, bb)));
        let a2 = (1.0 - q.powf(2.0 * lam + nf)) * (1.0 - q.powf(2.0 * lam + nf + 1.0))
            / ((1.0 - q.powf(lam + nf) * cs) * (1.0 - q.powf(lam + nf + 1.0) * cs))
            * (1.0 - qpow(q, -b))
            / (1.0 - qpow(q, bb));
        let gamma = -qpow(q, bb) * (1.0 - qpow(q, b + nf + 1.0)) / (1.0 - q.powf(lam + nf + 1.0) * cs)
            * (1.0 - qpow(q, b))
            / (1.0 - q.powf(lam) * cs);
        (a1, a2, gamma)
    }

    /// `(c_n, g_n)` of the hypergeometric family.
    pub fn hyper_cg(b: C64, n: usize) -> (f64, f64) {
        let (lam, eta, nf) = (b.re, b.im, n as f64);
        (eta / (lam + nf), (2.0 * lam + nf) / (2.0 * (lam + nf)))
    }

    /// `(a_1, a_2, gamma_n)` for the double zero at `1`, with `gamma_n`
    /// normalized to the factor `(z - 1)^2`.
    pub fn hyper_connection(b: C64, n: usize) -> (C64, C64, C64) {
        let (lam, nf, bb) = (b.re, n as f64, b.conj());
        let a1 = (b - bb) / (bb + 1.0) * (2.0 * lam + nf + 3.0) / (lam + nf + 2.0);
        let a2 = -(b + 1.0) / (bb + 1.0) * (2.0 * lam + nf + 2.0) * (2.0 * lam + nf + 3.0)
            / ((lam + nf + 1.0) * (lam + nf + 2.0));
        let gamma = (b + 1.0) / (lam + 1.0) * (b + nf + 2.0) / (lam + nf + 2.0);
        (a1, a2, gamma)
    }

    /// `R_n(z) = (2 lam + 2)_n/(lam + 1)_n 2F1(-n, b+1; 2 lam + 2; 1 - z)`.
    pub fn hyper_r(b: C64, n: usize, z: C64) -> C64 {
        let l2 = C64::new(2.0 * b.re + 2.0, 0.0);
        pochhammer(l2, n) / pochhammer(C64::new(b.re + 1.0, 0.0), n)
            * hyp2f1_terminating(n, b + 1.0, l2, 1.0 - z)
    }
}
