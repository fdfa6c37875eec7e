//! Dense complex polynomials in `z`, stored lowest degree first.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, Schur};

use crate::{Error, Result, C64};

/// Relative magnitude below which a coefficient counts as zero for degree
/// decisions.
pub const TRIM_REL: f64 = 1e-12;

/// Dense polynomial, `coeffs[k]` is the coefficient of `z^k`.
///
/// Storage keeps every coefficient that is not exactly zero. Degree queries
/// and [`Poly::trim`] apply the relative threshold [`TRIM_REL`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<C64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(C64::new(1.0, 0.0))
    }

    /// `c * z^k`.
    pub fn monomial(k: usize, c: C64) -> Self {
        let mut v = vec![C64::new(0.0, 0.0); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// Monic polynomial with the given zeros.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut p = Poly::one();
        for &r in roots {
            p = &p * &Poly::new(vec![-r, C64::new(1.0, 0.0)]);
        }
        p
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Copy with trailing coefficients at or below the trim threshold removed.
    pub fn trim(&self) -> Poly {
        let m = self.max_abs();
        let mut v = self.coeffs.clone();
        while v.last().is_some_and(|c| c.norm() <= TRIM_REL * m) {
            v.pop();
        }
        Poly { coeffs: v }
    }

    pub fn is_zero(&self) -> bool {
        self.trim().coeffs.is_empty()
    }

    /// Degree after trimming; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.trim().coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value of the `k`-th derivative at `z`.
    pub fn eval_derivative(&self, k: usize, z: C64) -> C64 {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p.eval(z)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * (k as f64 + 1.0))
                .collect(),
        )
    }

    /// `z^d conj(p(1/conj z))`: conjugate the coefficients and reverse them
    /// against the declared degree `d`.
    pub fn reverse(&self, declared_degree: usize) -> Result<Poly> {
        if let Some(deg) = self.degree() {
            if deg > declared_degree {
                return Err(Error::Contract(format!(
                    "declared degree {declared_degree} below actual degree {deg}"
                )));
            }
        }
        Ok(Poly::new(
            (0..=declared_degree)
                .map(|k| self.coeff(declared_degree - k).conj())
                .collect(),
        ))
    }

    pub fn conj_coeffs(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn scale(&self, s: C64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut v = vec![C64::new(0.0, 0.0); k];
        v.extend_from_slice(&self.coeffs);
        Poly::new(v)
    }

    /// Long division. The divisor is trimmed first so its leading
    /// coefficient is significant.
    pub fn divide(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let d = d.trim();
        let Some(dd) = d.degree() else {
            return Err(Error::Contract("division by the zero polynomial".into()));
        };
        let lead = d.coeffs[dd];
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let qlen = r.len() - dd;
        let mut q = vec![C64::new(0.0, 0.0); qlen];
        for k in (0..qlen).rev() {
            let t = r[k + dd] / lead;
            q[k] = t;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= t * dc;
            }
            r[k + dd] = C64::new(0.0, 0.0);
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Divide out the linear factors `(z - r)` one at a time. Roots inside
    /// the closed disk are removed by forward synthetic division from the top
    /// coefficient, roots outside by the reversed recurrence from the constant
    /// term, which keeps both directions stable.
    pub fn deflate(&self, roots: &[C64]) -> Poly {
        let mut p = self.coeffs.clone();
        for &r in roots {
            if p.len() <= 1 {
                return Poly::zero();
            }
            let n = p.len() - 1;
            let mut q = vec![C64::new(0.0, 0.0); n];
            if r.norm() <= 1.0 {
                q[n - 1] = p[n];
                for k in (1..n).rev() {
                    q[k - 1] = p[k] + r * q[k];
                }
            } else {
                q[0] = -p[0] / r;
                for k in 1..n {
                    q[k] = (q[k - 1] - p[k]) / r;
                }
            }
            p = q;
        }
        Poly::new(p)
    }

    /// Zeros of the trimmed polynomial: eigenvalues of the companion matrix
    /// (complex Schur form) polished by Newton steps on `self`.
    pub fn roots(&self) -> Result<Vec<C64>> {
        let p = self.trim();
        let Some(n) = p.degree() else {
            return Err(Error::Contract("roots of the zero polynomial".into()));
        };
        if n == 0 {
            return Ok(Vec::new());
        }
        // Exact zeros at the origin are split off; the companion matrix of
        // z^k is nilpotent and the shifted QR does not converge on it.
        let zeros_at_origin = p.coeffs.iter().take_while(|c| **c == C64::new(0.0, 0.0)).count();
        if zeros_at_origin > 0 {
            let rest = Poly::new(p.coeffs[zeros_at_origin..].to_vec());
            let mut roots = vec![C64::new(0.0, 0.0); zeros_at_origin];
            roots.extend(rest.roots()?);
            return Ok(roots);
        }
        let lead = p.coeffs[n];
        let mut comp = DMatrix::<C64>::zeros(n, n);
        for i in 1..n {
            comp[(i, i - 1)] = C64::new(1.0, 0.0);
        }
        for i in 0..n {
            comp[(i, n - 1)] = -p.coeffs[i] / lead;
        }
        let start: Vec<C64> = match Schur::try_new(comp, f64::EPSILON, 10_000) {
            Some(schur) => {
                let (_, t) = schur.unpack();
                (0..n).map(|i| t[(i, i)]).collect()
            }
            None => p.aberth()?,
        };
        let dp = p.derivative();
        let roots = start
            .into_iter()
            .map(|z0| {
                let mut z = z0;
                let mut best = p.eval(z).norm();
                for _ in 0..8 {
                    let d = dp.eval(z);
                    if d.norm() == 0.0 {
                        break;
                    }
                    let cand = z - p.eval(z) / d;
                    let v = p.eval(cand).norm();
                    if !(v < best) {
                        break;
                    }
                    z = cand;
                    best = v;
                }
                z
            })
            .collect();
        Ok(roots)
    }

    /// Ehrlich-Aberth simultaneous iteration, used when the Schur form fails.
    fn aberth(&self) -> Result<Vec<C64>> {
        let n = self.degree().unwrap_or(0);
        let dp = self.derivative();
        let lead = self.coeffs[n].norm();
        let radius = 1.0 + self.coeffs[..n].iter().map(|c| c.norm() / lead).fold(0.0, f64::max);
        let mut z: Vec<C64> = (0..n)
            .map(|k| C64::from_polar(0.5 * radius, (k as f64 + 0.25) * std::f64::consts::TAU / n as f64))
            .collect();
        for _ in 0..2000 {
            let mut moved = 0.0f64;
            for i in 0..n {
                let ratio = self.eval(z[i]) / dp.eval(z[i]);
                let s: C64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
                let step = ratio / (1.0 - ratio * s);
                if step.is_finite() {
                    z[i] -= step;
                    moved = moved.max(step.norm() / z[i].norm().max(1.0));
                }
            }
            if moved < 1e-15 {
                return Ok(z);
            }
        }
        Err(Error::Inconsistency("root iteration did not converge".into()))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.len().max(o.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.len().max(o.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_empty() || o.is_empty() {
            return Poly::zero();
        }
        let mut v = vec![C64::new(0.0, 0.0); self.len() + o.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}
