//! Kernels of the modified measure `dnu = G(zeta) zeta^{-m} dmu` from the
//! kernels of `mu` through the determinant of the matrix `Q`.

use std::f64::consts::PI;

use crate::kernels;
use crate::linalg;
use crate::measures::MeasureModel;
use crate::opuc::OpucTable;
use crate::oracle::MomentList;
use crate::poly::{Poly, TRIM_REL};
use crate::{Error, Result, C64};

/// Two zeros closer than this (relative) are the same zero; the same
/// tolerance pairs `z` with `1/conj(z)`.
pub const PAIR_TOL: f64 = 1e-10;
/// Minimum number of support angles used to certify positivity.
pub const SUPPORT_SAMPLES: usize = 512;
/// Relative negativity allowed for `G(zeta)/zeta^m` on the support.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Column-normalized determinants at or below this are degenerate.
pub const DEGENERATE_TOL: f64 = 1e-10;
/// Allowed deflation remainder relative to the determinant.
pub const DEFLATION_TOL: f64 = 1e-8;

fn close(a: C64, b: C64) -> bool {
    (a - b).norm() <= PAIR_TOL * a.norm().max(b.norm()).max(1.0)
}

/// `G_{2m}` with `G* = G` and `G(zeta)/zeta^m >= 0` on the support of the
/// base measure.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfReciprocalFactor {
    zeros: Vec<C64>,
    lead: C64,
    m: usize,
    poly: Poly,
}

impl SelfReciprocalFactor {
    /// Build `G` from its zeros and certify positivity at the given support
    /// angles.
    pub fn new(zeros: &[C64], support: &[f64]) -> Result<Self> {
        if zeros.is_empty() || zeros.len() % 2 == 1 {
            return Err(Error::InvalidFactor(format!("need an even, positive number of zeros, got {}", zeros.len())));
        }
        if zeros.iter().any(|z| !(z.norm() > 0.0) || !z.is_finite()) {
            return Err(Error::InvalidFactor("zero at the origin".into()));
        }
        let mut zs = zeros.to_vec();
        zs.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then(a.arg().total_cmp(&b.arg())));
        let mut used = vec![false; zs.len()];
        for i in 0..zs.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            if (zs[i].norm() - 1.0).abs() <= PAIR_TOL {
                continue;
            }
            let partner = 1.0 / zs[i].conj();
            match (0..zs.len()).find(|&j| !used[j] && close(zs[j], partner)) {
                Some(j) => used[j] = true,
                None => {
                    return Err(Error::InvalidFactor(format!("zero {} has no partner 1/conj(z)", zs[i])));
                }
            }
        }
        let m = zs.len() / 2;
        let mag: f64 = zs.iter().filter(|z| z.norm() > 1.0 + PAIR_TOL).map(|z| z.norm()).product();
        let phase = zs.iter().map(|z| -z.conj()).product::<C64>();
        let lead = phase.sqrt() / phase.sqrt().norm() * mag;
        let mut poly = Poly::from_roots(&zs).scale(lead);

        let rev = poly.reverse(2 * m)?;
        let scale = poly.max_abs();
        if (0..=2 * m).any(|k| (rev.coeff(k) - poly.coeff(k)).norm() > 1e-12 * scale) {
            return Err(Error::InvalidFactor("factor is not self-reciprocal".into()));
        }
        if support.len() < 256 {
            return Err(Error::Contract(format!("{} support samples, need at least 256", support.len())));
        }
        let vals: Vec<f64> = support
            .iter()
            .map(|&t| (poly.eval(C64::from_polar(1.0, t)) * C64::from_polar(1.0, -(m as f64) * t)).re)
            .collect();
        let (imax, vmax) = vals
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(i, v)| (i, *v))
            .unwrap();
        if vmax == 0.0 {
            return Err(Error::InvalidFactor("factor vanishes on the whole support".into()));
        }
        let (lead, sign) = if vmax < 0.0 { (-lead, -1.0) } else { (lead, 1.0) };
        if sign < 0.0 {
            poly = poly.scale(C64::new(-1.0, 0.0));
        }
        let floor = -POSITIVITY_TOL * vmax.abs();
        if let Some((i, v)) = vals.iter().enumerate().find(|(_, v)| sign * **v < floor) {
            return Err(Error::InvalidFactor(format!(
                "G(zeta)/zeta^m changes sign on the support: {} at angle {} (reference angle {})",
                sign * v,
                support[i],
                support[imax]
            )));
        }
        Ok(SelfReciprocalFactor { zeros: zs, lead, m, poly })
    }

    /// [`SelfReciprocalFactor::new`] with support samples of `mu`.
    pub fn for_measure(zeros: &[C64], mu: &MeasureModel) -> Result<Self> {
        SelfReciprocalFactor::new(zeros, &mu.support_samples(SUPPORT_SAMPLES))
    }

    pub fn zeros(&self) -> &[C64] {
        &self.zeros
    }

    pub fn lead(&self) -> C64 {
        self.lead
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// Distinct zeros with multiplicities, in sorted order.
    pub fn distinct_zeros(&self) -> Vec<(C64, usize)> {
        let mut out: Vec<(C64, usize)> = Vec::new();
        for &z in &self.zeros {
            match out.iter_mut().find(|(w, _)| close(*w, z)) {
                Some(e) => e.1 += 1,
                None => out.push((z, 1)),
            }
        }
        out
    }

    pub fn has_repeated_zeros(&self) -> bool {
        self.distinct_zeros().iter().any(|(_, k)| *k > 1)
    }
}

/// Which of the three admissibility conditions a set satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Conditions {
    /// `deg p_j < j` for `j = 1..2m`.
    pub degree_below_index: bool,
    /// `deg p_j < m` for `j = 1..2m-1`.
    pub degree_below_m: bool,
    /// `p_j(0) = 0` for `j = 1..2m`.
    pub vanish_at_origin: bool,
}

/// `p_0 .. p_{2m}` with `p_0 = 1`, `p_{2m} = z^m` and `p_j` supported on
/// exponents `max(0, j-m) ..= min(j, m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibleSet {
    m: usize,
    polys: Vec<Poly>,
    conditions: Conditions,
}

impl AdmissibleSet {
    pub fn new(polys: Vec<Poly>) -> Result<Self> {
        let bad = |s: String| Err(Error::InvalidAdmissibleSet(s));
        if polys.len() < 3 || polys.len() % 2 == 0 {
            return bad(format!("need 2m+1 >= 3 polynomials, got {}", polys.len()));
        }
        let m = (polys.len() - 1) / 2;
        let one = C64::new(1.0, 0.0);
        let is_monomial = |p: &Poly, k: usize| {
            let t = p.trim();
            t.len() == k + 1 && (t.coeff(k) - one).norm() < 1e-14 && (0..k).all(|i| t.coeff(i).norm() < 1e-14)
        };
        if !is_monomial(&polys[0], 0) {
            return bad("p_0 must be 1".into());
        }
        if !is_monomial(&polys[2 * m], m) {
            return bad(format!("p_{} must be z^{m}", 2 * m));
        }
        for (j, p) in polys.iter().enumerate() {
            let t = p.trim();
            if t.is_empty() {
                return bad(format!("p_{j} is identically zero"));
            }
            let (lo, hi) = (j.saturating_sub(m), j.min(m));
            let scale = t.max_abs();
            if (0..t.len()).any(|k| (k < lo || k > hi) && t.coeff(k).norm() > TRIM_REL * scale) {
                return bad(format!("p_{j} uses exponents outside {lo}..={hi}"));
            }
        }
        let deg = |j: usize| polys[j].degree().unwrap();
        let conditions = Conditions {
            degree_below_index: (1..=2 * m).all(|j| deg(j) < j),
            degree_below_m: (1..2 * m).all(|j| deg(j) < m),
            vanish_at_origin: (1..=2 * m)
                .all(|j| polys[j].coeff(0).norm() <= TRIM_REL * polys[j].max_abs()),
        };
        if conditions == Conditions::default() {
            return bad("none of the admissibility conditions holds".into());
        }
        Ok(AdmissibleSet { m, polys, conditions })
    }

    /// `p_j = z^{floor(j/2)}`.
    pub fn floor(m: usize) -> Self {
        Self::monomials(m, |j| j / 2)
    }

    /// `p_j = z^{ceil(j/2)}`, the hat dual of [`AdmissibleSet::floor`].
    pub fn ceil(m: usize) -> Self {
        Self::monomials(m, |j| j.div_ceil(2))
    }

    fn monomials(m: usize, e: impl Fn(usize) -> usize) -> Self {
        assert!(m >= 1, "admissible sets need m >= 1");
        let polys = (0..=2 * m).map(|j| Poly::monomial(e(j), C64::new(1.0, 0.0))).collect();
        AdmissibleSet::new(polys).expect("monomial sets are admissible")
    }

    /// `p^_j(z) = z^j conj(p_j(1/conj z))`.
    pub fn hat(&self) -> Self {
        let polys = self
            .polys
            .iter()
            .enumerate()
            .map(|(j, p)| p.reverse(j).expect("support bound keeps deg p_j <= j"))
            .collect();
        AdmissibleSet::new(polys).expect("the hat of an admissible set is admissible")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn conditions(&self) -> Conditions {
        self.conditions
    }
}

/// Row 0 of `Q` as polynomials `Q_j(., w) = p_j K_{n+2m-j}(., w)`; rows
/// `1..=2m` numeric, with derivative rows at repeated zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    pub top: Vec<Poly>,
    pub rows: Vec<Vec<C64>>,
}

fn check_shapes(t: &OpucTable, p: &AdmissibleSet, g: &SelfReciprocalFactor, n: usize) -> Result<()> {
    if p.m() != g.m() {
        return Err(Error::Contract(format!("admissible set has m={}, factor has m={}", p.m(), g.m())));
    }
    if t.size() < n + 2 * g.m() {
        return Err(Error::OutOfRange { index: n + 2 * g.m(), available: t.size() });
    }
    Ok(())
}

fn numeric_rows(top: &[Poly], g: &SelfReciprocalFactor) -> Vec<Vec<C64>> {
    let mut rows = Vec::new();
    for (z, mult) in g.distinct_zeros() {
        let mut derivs: Vec<Poly> = top.to_vec();
        for _ in 0..mult {
            rows.push(derivs.iter().map(|q| q.eval(z)).collect());
            derivs = derivs.iter().map(Poly::derivative).collect();
        }
    }
    rows
}

pub fn build_q(t: &OpucTable, p: &AdmissibleSet, g: &SelfReciprocalFactor, n: usize, w: C64) -> Result<QMatrix> {
    check_shapes(t, p, g, n)?;
    let big = n + 2 * g.m();
    let top: Vec<Poly> = p
        .polys()
        .iter()
        .enumerate()
        .map(|(j, pj)| pj * &kernels::kernel_poly(t, big - j, w).poly)
        .collect();
    let rows = numeric_rows(&top, g);
    Ok(QMatrix { top, rows })
}

/// `lambda` with `b = lambda a`, if the two polynomials are proportional.
fn proportional(a: &Poly, b: &Poly) -> Option<C64> {
    let (i, ai) = a
        .coeffs()
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))?;
    let lam = b.coeff(i) / ai;
    let diff = b - &a.scale(lam);
    (diff.max_abs() <= 1e-14 * b.max_abs().max(a.max_abs())).then_some(lam)
}

/// Columns of `Q` restricted to `cols`, where a column whose `p_j` is
/// proportional to a later selected `p_k` is replaced by
/// `Q_j - Q_k / lambda = p_j sum_{l=N-k+1}^{N-j} conj(phi_l(w)) phi_l`.
/// This is a unit-triangular column operation, so every determinant over
/// the selected columns is unchanged.
fn telescoped_top(t: &OpucTable, p: &AdmissibleSet, n: usize, w: C64, cols: &[usize]) -> Vec<Poly> {
    let big = n + 2 * p.m();
    cols.iter()
        .enumerate()
        .map(|(pos, &j)| {
            let pj = &p.polys()[j];
            let partner = cols[pos + 1..].iter().find(|&&k| proportional(pj, &p.polys()[k]).is_some());
            match partner {
                Some(&k) => pj * &kernels::kernel_tail_poly(t, Some(big - k), big - j, w),
                None => pj * &kernels::kernel_poly(t, big - j, w).poly,
            }
        })
        .collect()
}

/// Kernel of the modified measure, with the intermediate quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformResult {
    /// `K_n(., w; nu)`, absent when the determinant degenerates.
    pub kernel_nu: Option<Poly>,
    pub raw_det: Poly,
    /// `det Q / G`, absent when degenerate.
    pub deflated: Option<Poly>,
    pub degenerate: bool,
    /// Largest coefficient of `det Q` after scaling every column, then every
    /// row, of `Q` to unit maximum.
    pub degeneracy: f64,
    pub delta0: Option<C64>,
    pub delta_m: Option<C64>,
}

fn scaled_columns(top: &mut [Poly], rows: &mut [Vec<C64>]) -> Vec<f64> {
    (0..top.len())
        .map(|j| {
            let s = rows.iter().map(|r| r[j].norm()).fold(top[j].max_abs(), f64::max);
            if s > 0.0 {
                top[j] = top[j].scale(C64::new(1.0 / s, 0.0));
                for r in rows.iter_mut() {
                    r[j] /= s;
                }
            }
            s
        })
        .collect()
}

/// Scales the top row (as one polynomial row) and every numeric row to unit
/// maximum entry; returns `(top scale, numeric row scales)`.
fn scaled_rows(top: &mut [Poly], rows: &mut [Vec<C64>]) -> (f64, Vec<f64>) {
    let st = top.iter().map(Poly::max_abs).fold(0.0, f64::max);
    if st > 0.0 {
        for q in top.iter_mut() {
            *q = q.scale(C64::new(1.0 / st, 0.0));
        }
    }
    let sr = rows
        .iter_mut()
        .map(|r| {
            let s = r.iter().map(|x| x.norm()).fold(0.0, f64::max);
            if s > 0.0 {
                r.iter_mut().for_each(|x| *x /= s);
            }
            s
        })
        .collect();
    (st, sr)
}

fn minor_over(t: &OpucTable, p: &AdmissibleSet, g: &SelfReciprocalFactor, n: usize, w: C64, cols: &[usize]) -> C64 {
    let top = telescoped_top(t, p, n, w, cols);
    linalg::det(&numeric_rows(&top, g))
}

/// `Delta_0` (first column removed) and `Delta_m` (last column removed) of
/// the numeric block of `Q`.
pub fn minors(
    t: &OpucTable,
    p: &AdmissibleSet,
    g: &SelfReciprocalFactor,
    n: usize,
    w: C64,
) -> Result<(C64, C64)> {
    check_shapes(t, p, g, n)?;
    if g.has_repeated_zeros() {
        return Err(Error::Unsupported("minors need simple zeros".into()));
    }
    let two_m = 2 * g.m();
    let d0 = minor_over(t, p, g, n, w, &(1..=two_m).collect::<Vec<_>>());
    let dm = minor_over(t, p, g, n, w, &(0..two_m).collect::<Vec<_>>());
    Ok((d0, dm))
}

/// `K_n(., w; nu)` from `det Q = C G K_n(., w; nu)`, normalized by
/// `int conj(K_n(zeta, w; nu)) dnu = 1`.
pub fn transform_kernel(
    t: &OpucTable,
    p: &AdmissibleSet,
    g: &SelfReciprocalFactor,
    n: usize,
    w: C64,
    nu: &MomentList,
) -> Result<TransformResult> {
    check_shapes(t, p, g, n)?;
    if nu.max_order() < n {
        return Err(Error::Contract(format!("need nu moments to order {n}, have {}", nu.max_order())));
    }
    let cols: Vec<usize> = (0..=2 * g.m()).collect();
    let mut top = telescoped_top(t, p, n, w, &cols);
    let mut rows = numeric_rows(&top, g);
    // Columns, then rows, to unit scale: the zeros off the circle make
    // entries differ by |z|^n, which would otherwise read as cancellation.
    let scales = scaled_columns(&mut top, &mut rows);
    let (top_scale, row_scales) = scaled_rows(&mut top, &mut rows);
    let row_log: f64 = row_scales.iter().map(|s| s.ln()).sum();
    let minors = linalg::column_minors(&rows);
    let mut det = Poly::zero();
    for (j, (q, mj)) in top.iter().zip(&minors).enumerate() {
        let s = if j % 2 == 0 { *mj } else { -*mj };
        det = &det + &q.scale(s);
    }
    let degeneracy = det.max_abs();
    let log_scale: f64 = scales.iter().map(|s| s.ln()).sum::<f64>() + top_scale.ln() + row_log;
    let raw_det = det.scale(C64::new(log_scale.exp(), 0.0));
    let (delta0, delta_m) = if g.has_repeated_zeros() {
        (None, None)
    } else {
        let (a, b) = minors_pair(&minors, &scales, row_log);
        (Some(a), Some(b))
    };
    if degeneracy <= DEGENERATE_TOL || scales.iter().chain(&row_scales).any(|s| *s == 0.0) || top_scale == 0.0 {
        return Ok(TransformResult {
            kernel_nu: None,
            raw_det,
            deflated: None,
            degenerate: true,
            degeneracy,
            delta0,
            delta_m,
        });
    }
    let a = det.deflate(g.zeros()).scale(1.0 / g.lead());
    let rem = &det - &(g.poly() * &a);
    if rem.max_abs() > DEFLATION_TOL * degeneracy {
        return Err(Error::Inconsistency(format!(
            "det Q is not divisible by G: remainder {:e} of {:e}",
            rem.max_abs(),
            degeneracy
        )));
    }
    let norm: C64 = a.coeffs().iter().enumerate().map(|(k, ak)| ak * nu.get(-(k as i64))).sum();
    let kernel_nu = a.scale(1.0 / norm);
    Ok(TransformResult {
        kernel_nu: Some(kernel_nu),
        raw_det,
        deflated: Some(a.scale(C64::new(log_scale.exp(), 0.0))),
        degenerate: false,
        degeneracy,
        delta0,
        delta_m,
    })
}

/// Unscaled `Delta_0`, `Delta_m` from the scaled cofactors.
fn minors_pair(minors: &[C64], scales: &[f64], row_log: f64) -> (C64, C64) {
    let last = minors.len() - 1;
    let prod_except = |skip: usize| -> f64 {
        (scales.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, s)| s.ln()).sum::<f64>() + row_log).exp()
    };
    (minors[0] * prod_except(0), minors[last] * prod_except(last))
}

/// `K_n(., 0; nu)` as the limit `w -> 0` of the determinant formula, from
/// the normalized kernels at `w = h` and `w = -h`. `K_n(z, w)` is a polynomial
/// in `conj(w)`, so the average cancels the first-order term and leaves an
/// `O(h^2)` error.
pub fn transform_kernel_origin_limit(
    t: &OpucTable,
    p: &AdmissibleSet,
    g: &SelfReciprocalFactor,
    n: usize,
    h: f64,
    nu: &MomentList,
) -> Result<Poly> {
    let plus = transform_kernel(t, p, g, n, C64::new(h, 0.0), nu)?;
    let minus = transform_kernel(t, p, g, n, C64::new(-h, 0.0), nu)?;
    match (plus.kernel_nu, minus.kernel_nu) {
        (Some(a), Some(b)) => Ok((&a + &b).scale(C64::new(0.5, 0.0))),
        _ => Err(Error::Singular(format!("determinant degenerates at |w| = {h}"))),
    }
}

/// Closed form of `K_n(z, 0; nu)` for the Lebesgue base with zeros
/// `z_1, z_2 = 1/conj(z_1)`, up to a constant:
/// `[(z^{n+2} - z_1^{n+2})(z - z_2) - (z^{n+2} - z_2^{n+2})(z - z_1)] / ((z - z_1)(z - z_2))`.
pub fn lebesgue_origin_kernel_shape(z1: C64, n: usize) -> Poly {
    let z2 = 1.0 / z1.conj();
    let one = C64::new(1.0, 0.0);
    let zn = Poly::monomial(n + 2, one);
    let lin = |r: C64| Poly::new(vec![-r, one]);
    let a = &(&zn - &Poly::constant(z1.powu(n as u32 + 2))) * &lin(z2);
    let b = &(&zn - &Poly::constant(z2.powu(n as u32 + 2))) * &lin(z1);
    (&a - &b).deflate(&[z1, z2])
}

/// Uniformly spaced angles on the circle, used when no measure is at hand.
pub fn full_circle(count: usize) -> Vec<f64> {
    (0..count).map(|j| 2.0 * PI * j as f64 / count as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::cgrec::reference;
    use crate::oracle;

    fn leb_factor() -> SelfReciprocalFactor {
        SelfReciprocalFactor::for_measure(&[c64(2.0, 0.0), c64(0.5, 0.0)], &MeasureModel::lebesgue()).unwrap()
    }

    #[test]
    fn make_factor_examples() {
        let g = leb_factor();
        assert_eq!(g.m(), 1);
        for (k, want) in [-2.0, 5.0, -2.0].iter().enumerate() {
            assert!((g.poly().coeff(k) - want).norm() < 1e-14);
        }
        let zs = [C64::from_polar(1.0, PI / 3.0), C64::from_polar(1.0, -PI / 3.0)];
        let ger = MeasureModel::geronimus(c64(-0.5, 0.0)).unwrap();
        let g = SelfReciprocalFactor::for_measure(&zs, &ger).unwrap();
        // -(z - z_1)(z - z_2) = -z^2 + z - 1
        for (k, want) in [-1.0, 1.0, -1.0].iter().enumerate() {
            assert!((g.poly().coeff(k) - want).norm() < 1e-14);
        }
        assert!(matches!(
            SelfReciprocalFactor::for_measure(&zs, &MeasureModel::lebesgue()),
            Err(Error::InvalidFactor(_))
        ));
    }

    #[test]
    fn make_factor_rejects() {
        let leb = MeasureModel::lebesgue();
        assert!(SelfReciprocalFactor::for_measure(&[c64(0.0, 0.0), c64(2.0, 0.0)], &leb).is_err());
        assert!(SelfReciprocalFactor::for_measure(&[c64(2.0, 0.0), c64(0.4, 0.0)], &leb).is_err());
        assert!(SelfReciprocalFactor::for_measure(&[c64(2.0, 0.0)], &leb).is_err());
        assert!(SelfReciprocalFactor::new(&[c64(2.0, 0.0), c64(0.5, 0.0)], &[0.0; 10]).is_err());
    }

    #[test]
    fn factor_families() {
        let alpha = c64(-0.3, 0.2);
        let m = MeasureModel::geronimus(alpha).unwrap();
        let g = SelfReciprocalFactor::for_measure(&reference::geronimus_zeros(alpha), &m).unwrap();
        // -e^{i vt}(z - z_1)(z - z_2)
        let vt = ((1.0 + alpha.conj()) / (1.0 + alpha)).arg();
        let want = Poly::from_roots(&reference::geronimus_zeros(alpha)).scale(-C64::from_polar(1.0, vt));
        for k in 0..3 {
            assert!((g.poly().coeff(k) - want.coeff(k)).norm() < 1e-13);
        }
        let (q, b) = (0.5, c64(0.7, 0.3));
        let m = MeasureModel::qhyper(q, b).unwrap();
        let zs = reference::qhyper_zeros(q, b);
        let g = SelfReciprocalFactor::for_measure(&zs, &m).unwrap();
        // -q^{-conj b} (z - z_1)(z - z_2)
        let want = Poly::from_roots(&zs).scale(-crate::special::qpow(q, -b.conj()));
        for k in 0..3 {
            assert!((g.poly().coeff(k) - want.coeff(k)).norm() < 1e-13);
        }
        let h = MeasureModel::hyper_jacobi(c64(1.0, 0.0)).unwrap();
        let g = SelfReciprocalFactor::for_measure(&[c64(1.0, 0.0), c64(1.0, 0.0)], &h).unwrap();
        assert_eq!(g.distinct_zeros().len(), 1);
        for (k, want) in [-1.0, 2.0, -1.0].iter().enumerate() {
            assert!((g.poly().coeff(k) - want).norm() < 1e-14);
        }
    }

    #[test]
    fn admissible_examples() {
        let f = AdmissibleSet::floor(1);
        let expo: Vec<usize> = f.polys().iter().map(|p| p.degree().unwrap()).collect();
        assert_eq!(expo, vec![0, 0, 1]);
        assert!(f.conditions().degree_below_index && f.conditions().degree_below_m);
        let c = AdmissibleSet::ceil(1);
        let expo: Vec<usize> = c.polys().iter().map(|p| p.degree().unwrap()).collect();
        assert_eq!(expo, vec![0, 1, 1]);
        assert!(c.conditions().vanish_at_origin);
        assert_eq!(AdmissibleSet::floor(2).hat(), AdmissibleSet::ceil(2));
        for m in 1..5 {
            assert_eq!(AdmissibleSet::floor(m).hat().hat(), AdmissibleSet::floor(m));
        }
        let one = Poly::one();
        assert!(AdmissibleSet::new(vec![one.clone(), Poly::monomial(2, c64(1.0, 0.0)), Poly::monomial(1, c64(1.0, 0.0))]).is_err());
        assert!(AdmissibleSet::new(vec![one.clone(), Poly::zero(), Poly::monomial(1, c64(1.0, 0.0))]).is_err());
        let none = AdmissibleSet::new(vec![one, Poly::from_real(&[1.0, 2.0]), Poly::monomial(1, c64(1.0, 0.0))]);
        assert!(matches!(none, Err(Error::InvalidAdmissibleSet(_))));
    }

    #[test]
    fn build_q_example() {
        let t = OpucTable::build(&MeasureModel::lebesgue(), 4).unwrap();
        let q = build_q(&t, &AdmissibleSet::floor(1), &leb_factor(), 1, c64(1.0, 0.0)).unwrap();
        assert_eq!(q.top[0], Poly::from_real(&[1.0, 1.0, 1.0, 1.0]));
        assert_eq!(q.top[1], Poly::from_real(&[1.0, 1.0, 1.0]));
        assert_eq!(q.top[2], Poly::from_real(&[0.0, 1.0, 1.0]));
        assert_eq!(q.rows.len(), 2);
        // rows ordered by |z|: 1/2 first
        assert!((q.rows[0][0] - 1.875).norm() < 1e-15 && (q.rows[1][2] - 6.0).norm() < 1e-15);
    }

    #[test]
    fn build_q_confluent_uses_derivatives() {
        let t = OpucTable::build(&MeasureModel::lebesgue(), 5).unwrap();
        let zs = [c64(0.0, 1.0), c64(0.0, 1.0)];
        let m = MeasureModel::lebesgue();
        let g = SelfReciprocalFactor::for_measure(&zs, &m).unwrap();
        let q = build_q(&t, &AdmissibleSet::floor(1), &g, 2, c64(1.0, 0.0)).unwrap();
        for j in 0..3 {
            assert!((q.rows[0][j] - q.top[j].eval(zs[0])).norm() < 1e-15);
            assert!((q.rows[1][j] - q.top[j].derivative().eval(zs[0])).norm() < 1e-15);
        }
    }

    #[test]
    fn lebesgue_at_origin_is_degenerate() {
        let leb = MeasureModel::lebesgue();
        let t = OpucTable::build(&leb, 10).unwrap();
        let g = leb_factor();
        let q = build_q(&t, &AdmissibleSet::floor(1), &g, 2, c64(0.0, 0.0)).unwrap();
        assert!(q.top.iter().take(2).all(|p| p == &Poly::one()));
        let nu = oracle::transform_moments(&oracle::moments_from_alpha(&leb, 10).unwrap(), &g, 8).unwrap();
        for p in [AdmissibleSet::floor(1), AdmissibleSet::ceil(1)] {
            let r = transform_kernel(&t, &p, &g, 3, c64(0.0, 0.0), &nu).unwrap();
            assert!(r.degenerate && r.kernel_nu.is_none());
        }
        let (d0, dm) = minors(&t, &AdmissibleSet::floor(1), &g, 3, c64(0.0, 0.0)).unwrap();
        assert!(dm.norm() < 1e-15 && d0.norm() > 1.0);
        let (d0, _) = minors(&t, &AdmissibleSet::ceil(1), &g, 3, c64(0.0, 0.0)).unwrap();
        assert!(d0.norm() < 1e-15);
    }

    #[test]
    fn minors_examples() {
        let leb = MeasureModel::lebesgue();
        let t = OpucTable::build(&leb, 10).unwrap();
        let g = leb_factor();
        let (d0, _) = minors(&t, &AdmissibleSet::floor(1), &g, 1, c64(1.0, 0.0)).unwrap();
        // det [[K_2(1/2), K_1(1/2)/2], [K_2(2), 2 K_1(2)]]
        assert!((d0 - (1.75 * 6.0 - 0.75 * 7.0)).norm() < 1e-13);
        let (d0, _) = minors(&t, &AdmissibleSet::ceil(1), &g, 2, C64::from_polar(1.0, 0.9)).unwrap();
        assert!(d0.norm() > 1e-6);
        let h = MeasureModel::hyper_jacobi(c64(1.0, 0.0)).unwrap();
        let gh = SelfReciprocalFactor::for_measure(&[c64(1.0, 0.0), c64(1.0, 0.0)], &h).unwrap();
        let th = OpucTable::build(&h, 6).unwrap();
        assert!(matches!(minors(&th, &AdmissibleSet::floor(1), &gh, 1, c64(1.0, 0.0)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn transform_matches_oracle_lebesgue() {
        let leb = MeasureModel::lebesgue();
        let t = OpucTable::build(&leb, 10).unwrap();
        let g = leb_factor();
        let lv = oracle::transformed_levinson(&leb, &g, 8).unwrap();
        let nu = oracle::transform_moments(&oracle::moments_from_alpha(&leb, 10).unwrap(), &g, 8).unwrap();
        let r = transform_kernel(&t, &AdmissibleSet::floor(1), &g, 2, c64(1.0, 0.0), &nu).unwrap();
        let want = oracle::kernel_oracle_poly(&lv.alphas, lv.total_mass(), 2, c64(1.0, 0.0)).unwrap();
        let k = r.kernel_nu.unwrap();
        let s = want.max_abs();
        for i in 0..=2 {
            assert!((k.coeff(i) - want.coeff(i)).norm() <= 1e-9 * s);
        }
        let back = &(g.poly() * r.deflated.as_ref().unwrap()) - &r.raw_det;
        assert!(back.max_abs() <= 1e-8 * r.raw_det.max_abs());
    }

    #[test]
    fn origin_limit_matches_closed_shape() {
        let leb = MeasureModel::lebesgue();
        let z1 = c64(2.0, 0.0);
        let g = leb_factor();
        let t = OpucTable::build(&leb, 12).unwrap();
        let nu = oracle::transform_moments(&oracle::moments_from_alpha(&leb, 12).unwrap(), &g, 10).unwrap();
        for n in 1..=6 {
            let k = transform_kernel_origin_limit(&t, &AdmissibleSet::floor(1), &g, n, 1e-6, &nu).unwrap();
            let shape = lebesgue_origin_kernel_shape(z1, n);
            let norm: C64 = shape.coeffs().iter().enumerate().map(|(i, a)| a * nu.get(-(i as i64))).sum();
            let want = shape.scale(1.0 / norm);
            for i in 0..=n {
                assert!((k.coeff(i) - want.coeff(i)).norm() <= 1e-6 * want.max_abs(), "n={n} {k:?} {want:?}");
            }
        }
    }
}
