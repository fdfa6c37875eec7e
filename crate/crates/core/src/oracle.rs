//! Independent verification path: trigonometric moments (from the Verblunsky
//! recursion and from quadrature), the Laurent transform of moments by
//! `G(zeta)/zeta^m`, Levinson's recursion back to Verblunsky coefficients,
//! and kernels built from those coefficients.
//!
//! The recursion-based pipeline runs in double-double arithmetic: Toeplitz
//! systems of arc-supported measures are exponentially ill-conditioned and
//! binary64 loses too many digits by degree 20.

use rayon::prelude::*;

use crate::christoffel::SelfReciprocalFactor;
use crate::dd::{Cdd, Dd};
use crate::kernels;
use crate::measures::{MeasureModel, QuadraturePlan};
use crate::opuc::OpucTable;
use crate::poly::Poly;
use crate::quadrature::{self, fourier_moments};
use crate::{Error, Result, C64};

/// Trapezoid refinement stops once two successive node counts agree to this.
pub const TRAPEZOID_TOL: f64 = 1e-10;
const TRAPEZOID_START: usize = 256;
const TRAPEZOID_MAX: usize = 1 << 20;

/// `value(k) = int zeta^{-k} dmu` for `|k| <= max_order`, stored for `k >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentList {
    values: Vec<Cdd>,
}

impl MomentList {
    pub fn from_values(values: Vec<C64>) -> Self {
        MomentList { values: values.into_iter().map(Cdd::from_c64).collect() }
    }

    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    fn get_dd(&self, k: i64) -> Cdd {
        let v = self.values[k.unsigned_abs() as usize];
        if k < 0 {
            v.conj()
        } else {
            v
        }
    }

    /// `int zeta^{-k} dmu`; negative `k` uses `value(-k) = conj(value(k))`.
    pub fn get(&self, k: i64) -> C64 {
        self.get_dd(k).to_c64()
    }

    pub fn values(&self) -> Vec<C64> {
        self.values.iter().map(|v| v.to_c64()).collect()
    }
}

/// Moments from the Verblunsky coefficients: `int Phi_n dmu = 0` for
/// `n >= 1` fixes `int zeta^n dmu` one order at a time.
pub fn moments_from_alpha(m: &MeasureModel, k_max: usize) -> Result<MomentList> {
    moments_from_alphas(&m.alphas(k_max)?, m.total_mass())
}

pub fn moments_from_alphas(alphas: &[C64], total_mass: f64) -> Result<MomentList> {
    // pos[j] = int zeta^j dmu
    let mut pos = vec![Cdd::from_c64(C64::new(total_mass, 0.0))];
    let mut phi = vec![Cdd::ONE];
    for a in alphas {
        phi = szego_step(&phi, Cdd::from_c64(a.conj()));
        let n = phi.len() - 1;
        let s = (0..n).fold(Cdd::ZERO, |acc, j| acc + phi[j] * pos[j]);
        pos.push(-s);
    }
    Ok(MomentList { values: pos.into_iter().map(Cdd::conj).collect() })
}

/// `z Phi - ca Phi*` on double-double coefficients.
fn szego_step(phi: &[Cdd], ca: Cdd) -> Vec<Cdd> {
    let n = phi.len() - 1;
    let mut next = vec![Cdd::ZERO; n + 2];
    for (k, c) in phi.iter().enumerate() {
        next[k + 1] = next[k + 1] + *c;
        next[n - k] = next[n - k] - ca * c.conj();
    }
    next
}

fn weighted_rule(m: &MeasureModel, rule: quadrature::Rule) -> Result<Vec<(f64, f64)>> {
    rule.into_par_iter()
        .map(|(t, w)| m.density(t).map(|d| (t, w * d)))
        .collect()
}

/// Moments by quadrature of the density plus point masses.
pub fn moments_quadrature(m: &MeasureModel, k_max: usize) -> Result<MomentList> {
    let mut vals = match m.quadrature_plan()? {
        plan @ QuadraturePlan::Graded { .. } => fourier_moments(&weighted_rule(m, plan.rule(0))?, k_max),
        QuadraturePlan::Trapezoid => {
            let mut n = TRAPEZOID_START;
            let mut prev = fourier_moments(&weighted_rule(m, quadrature::trapezoid_rule(n))?, k_max);
            loop {
                n *= 2;
                let cur = fourier_moments(&weighted_rule(m, quadrature::trapezoid_rule(n))?, k_max);
                let diff = cur.iter().zip(&prev).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                prev = cur;
                if diff < TRAPEZOID_TOL || n >= TRAPEZOID_MAX {
                    break;
                }
            }
            prev
        }
    };
    for p in m.point_masses()? {
        for (k, v) in vals.iter_mut().enumerate() {
            *v += p.mass * C64::from_polar(1.0, -(k as f64) * p.angle);
        }
    }
    Ok(MomentList::from_values(vals))
}

/// Moments of `dnu = G(zeta) zeta^{-m} dmu`: `nu_k = sum_j G_j mu_{k+m-j}`.
pub fn transform_moments(mu: &MomentList, factor: &SelfReciprocalFactor, k_max: usize) -> Result<MomentList> {
    let m = factor.m();
    if mu.max_order() < k_max + m {
        return Err(Error::Contract(format!(
            "insufficient moment depth: have {}, need {}",
            mu.max_order(),
            k_max + m
        )));
    }
    let g: Vec<Cdd> = factor.poly().coeffs().iter().map(|c| Cdd::from_c64(*c)).collect();
    let values = (0..=k_max as i64)
        .map(|k| {
            g.iter()
                .enumerate()
                .fold(Cdd::ZERO, |acc, (j, gj)| acc + *gj * mu.get_dd(k + m as i64 - j as i64))
        })
        .collect();
    Ok(MomentList { values })
}

/// Output of [`levinson`].
#[derive(Debug, Clone, PartialEq)]
pub struct LevinsonResult {
    pub alphas: Vec<C64>,
    pub monic: Vec<Poly>,
    /// `pivots[n] = ||Phi_n||^2`, so `pivots[0]` is the total mass.
    pub pivots: Vec<f64>,
}

impl LevinsonResult {
    pub fn total_mass(&self) -> f64 {
        self.pivots[0]
    }
}

/// Levinson–Durbin recursion on the Toeplitz matrix `[value(j - i)]`.
pub fn levinson(nu: &MomentList, n_max: usize) -> Result<LevinsonResult> {
    if nu.max_order() < n_max {
        return Err(Error::Contract(format!(
            "levinson to order {n_max} needs {n_max} moments, have {}",
            nu.max_order()
        )));
    }
    // pos[k] = int zeta^k dnu
    let pos = |k: usize| nu.get_dd(-(k as i64));
    let mut piv = nu.get_dd(0).re;
    if !(piv.to_f64() > 0.0) {
        return Err(Error::NotPositive(format!("total mass {}", piv.to_f64())));
    }
    let mut phi = vec![Cdd::ONE];
    let to_poly = |p: &[Cdd]| Poly::new(p.iter().map(|c| c.to_c64()).collect());
    let mut out = LevinsonResult { alphas: vec![], monic: vec![Poly::one()], pivots: vec![piv.to_f64()] };
    for n in 0..n_max {
        let s = (0..=n).fold(Cdd::ZERO, |acc, j| acc + phi[j] * pos(j + 1));
        let ca = s.div_real(piv);
        let r2 = ca.norm_sqr();
        piv = piv * (Dd::ONE - r2);
        if !(piv.to_f64() > 0.0) || !(r2.to_f64() < 1.0) {
            return Err(Error::NotPositive(format!("Levinson pivot {} at order {}", piv.to_f64(), n + 1)));
        }
        phi = szego_step(&phi, ca);
        out.alphas.push(ca.conj().to_c64());
        out.monic.push(to_poly(&phi));
        out.pivots.push(piv.to_f64());
    }
    Ok(out)
}

/// Verblunsky coefficients `alpha_0..alpha_{n_max-1}` of the transformed
/// measure through moments, their Laurent transform and Levinson.
pub fn transformed_levinson(m: &MeasureModel, factor: &SelfReciprocalFactor, n_max: usize) -> Result<LevinsonResult> {
    levinson(&transformed_moments(m, factor, n_max)?, n_max)
}

/// `nu_0..nu_{k_max}` of `G(zeta) zeta^{-m} dmu`, starting from the moments of `m`.
pub fn transformed_moments(m: &MeasureModel, factor: &SelfReciprocalFactor, k_max: usize) -> Result<MomentList> {
    transform_moments(&moments_from_alpha(m, k_max + factor.m())?, factor, k_max)
}

/// `K_n(z, w)` of the measure with the given Verblunsky data.
pub fn kernel_oracle(alphas: &[C64], total_mass: f64, n: usize, z: C64, w: C64) -> Result<C64> {
    if alphas.len() < n {
        return Err(Error::OutOfRange { index: n, available: alphas.len() });
    }
    let t = OpucTable::from_alphas(&alphas[..n], total_mass)?;
    Ok(kernels::kernel_sum(&t, n, z, w))
}

/// `K_n(., w)` as a polynomial from Verblunsky data.
pub fn kernel_oracle_poly(alphas: &[C64], total_mass: f64, n: usize, w: C64) -> Result<Poly> {
    if alphas.len() < n {
        return Err(Error::OutOfRange { index: n, available: alphas.len() });
    }
    let t = OpucTable::from_alphas(&alphas[..n], total_mass)?;
    Ok(kernels::kernel_poly(&t, n, w).poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::cgrec::{self, reference};

    #[test]
    fn lebesgue_moments() {
        let a = moments_from_alpha(&MeasureModel::lebesgue(), 5).unwrap();
        let q = moments_quadrature(&MeasureModel::lebesgue(), 5).unwrap();
        for k in 0..=5i64 {
            let want = if k == 0 { 1.0 } else { 0.0 };
            assert!((a.get(k) - want).norm() < 1e-15);
            assert!((q.get(k) - want).norm() < 1e-14);
        }
    }

    #[test]
    fn single_alpha_orientation() {
        // Phi_1 = z - 0.5 orthogonal to 1: int zeta dmu = 0.5, so value(-1) = 0.5.
        let m = MeasureModel::explicit_alpha(vec![c64(0.5, 0.0)], 1.0).unwrap();
        let mo = moments_from_alpha(&m, 1).unwrap();
        assert!((mo.get(-1) - 0.5).norm() < 1e-16);
        let m = MeasureModel::explicit_alpha(vec![c64(0.0, 0.5)], 1.0).unwrap();
        let mo = moments_from_alpha(&m, 1).unwrap();
        assert!((mo.get(-1) - c64(0.0, -0.5)).norm() < 1e-16);
    }

    #[test]
    fn dual_path_moments() {
        for m in [
            MeasureModel::geronimus(c64(-0.5, 0.0)).unwrap(),
            MeasureModel::geronimus(c64(0.4, 0.3)).unwrap(),
            MeasureModel::qhyper(0.5, c64(1.0, 0.0)).unwrap(),
            MeasureModel::qhyper(0.5, c64(0.7, 0.3)).unwrap(),
            MeasureModel::hyper_jacobi(c64(1.0, 0.0)).unwrap(),
            MeasureModel::hyper_jacobi(c64(0.8, 0.5)).unwrap(),
            MeasureModel::hyper_jacobi(c64(-0.3, 0.2)).unwrap(),
        ] {
            let a = moments_from_alpha(&m, 15).unwrap();
            let q = moments_quadrature(&m, 15).unwrap();
            for k in 0..=15i64 {
                assert!((a.get(k) - q.get(k)).norm() < 1e-7, "{} k={k}", m.label());
            }
        }
        let h = moments_quadrature(&MeasureModel::hyper_jacobi(c64(1.0, 0.0)).unwrap(), 0).unwrap();
        assert!((h.get(0) - 1.0).norm() < 1e-10);
    }

    #[test]
    fn transform_lebesgue() {
        let mu = moments_from_alpha(&MeasureModel::lebesgue(), 6).unwrap();
        let f = SelfReciprocalFactor::for_measure(&[c64(2.0, 0.0), c64(0.5, 0.0)], &MeasureModel::lebesgue()).unwrap();
        let nu = transform_moments(&mu, &f, 5).unwrap();
        assert!((nu.get(0) - 5.0).norm() < 1e-15);
        assert!((nu.get(1) + 2.0).norm() < 1e-15 && (nu.get(-1) + 2.0).norm() < 1e-15);
        for k in 2..=5 {
            assert!(nu.get(k).norm() < 1e-15);
        }
        assert!(matches!(transform_moments(&mu, &f, 6), Err(Error::Contract(_))));
    }

    #[test]
    fn geronimus_transform_is_real() {
        let alpha = c64(-0.5, 0.0);
        let m = MeasureModel::geronimus(alpha).unwrap();
        let f = SelfReciprocalFactor::for_measure(&reference::geronimus_zeros(alpha), &m).unwrap();
        let nu = transform_moments(&moments_from_alpha(&m, 21).unwrap(), &f, 20).unwrap();
        for k in 0..=20 {
            assert!(nu.get(k).im.abs() < 1e-14);
        }
    }

    #[test]
    fn levinson_recovers_alphas_and_pivots() {
        let m = MeasureModel::hyper_jacobi(c64(0.8, 0.5)).unwrap();
        let al = m.alphas(25).unwrap();
        let lv = levinson(&moments_from_alpha(&m, 25).unwrap(), 25).unwrap();
        let mut p = 1.0;
        for n in 0..25 {
            assert!((lv.alphas[n] - al[n]).norm() < 1e-12);
            p *= 1.0 - al[n].norm_sqr();
            assert!((lv.pivots[n + 1] - p).abs() < 1e-10);
        }
        let leb = levinson(&moments_from_alpha(&MeasureModel::lebesgue(), 6).unwrap(), 6).unwrap();
        assert!(leb.alphas.iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn levinson_rejects_non_positive() {
        let bad = MomentList::from_values(vec![c64(1.0, 0.0), c64(2.0, 0.0)]);
        assert!(matches!(levinson(&bad, 1), Err(Error::NotPositive(_))));
    }

    #[test]
    fn qhyper_transform_shifts_b() {
        let (q, b) = (0.5, c64(1.0, 0.0));
        let m = MeasureModel::qhyper(q, b).unwrap();
        let f = SelfReciprocalFactor::for_measure(&reference::qhyper_zeros(q, b), &m).unwrap();
        let lv = transformed_levinson(&m, &f, 15).unwrap();
        let shifted = MeasureModel::qhyper(q, b + 1.0).unwrap().alphas(15).unwrap();
        for n in 0..15 {
            assert!((lv.alphas[n] - shifted[n]).norm() < 1e-8);
        }
        let (c, g, _) = cgrec::cg_from_alphas(&lv.alphas).unwrap();
        assert!(c.iter().all(|x| x.is_finite()) && g.iter().all(|v| *v > 0.0 && *v < 1.0));
    }

    #[test]
    fn lebesgue_w_zero_kernel() {
        // Lebesgue with zeros {2, 1/2}: K_n(z, 0; nu) = conj(phi*_n(0)) phi*_n(z)
        let leb = MeasureModel::lebesgue();
        let f = SelfReciprocalFactor::for_measure(&[c64(2.0, 0.0), c64(0.5, 0.0)], &leb).unwrap();
        let lv = transformed_levinson(&leb, &f, 8).unwrap();
        let t = OpucTable::from_alphas(&lv.alphas, lv.total_mass()).unwrap();
        let z = c64(0.3, 0.9);
        for n in 1..8 {
            let k = kernel_oracle(&lv.alphas, lv.total_mass(), n, z, c64(0.0, 0.0)).unwrap();
            let (_, ps0) = t.values(n, c64(0.0, 0.0))[n];
            let (_, psz) = t.values(n, z)[n];
            assert!((k - ps0.conj() * psz).norm() < 1e-12);
        }
    }
}
