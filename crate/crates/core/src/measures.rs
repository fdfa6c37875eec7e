//! Catalogue of measures on the unit circle: normalized Lebesgue, the
//! rotated Geronimus measure, the q-hypergeometric family, the
//! hypergeometric (Jacobi-type) family and user-supplied data.
//!
//! Every model exposes Verblunsky coefficients, the `(c, g)` sequences and,
//! where available, a density against `d theta` plus point masses.

use std::f64::consts::PI;

use crate::cgrec::{self, reference};
use crate::quadrature::{self, CompensatedSum};
use crate::special::{qhyp_2phi1, qpoch_inf, qpow};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Lebesgue,
    Geronimus { alpha: C64 },
    QHyper { q: f64, b: C64 },
    HyperJacobi { b: C64 },
    ExplicitAlpha { alphas: Vec<C64> },
    ExplicitCg { c: Vec<f64>, g: Vec<f64> },
}

/// How the oracle integrates a density-backed measure.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadraturePlan {
    /// Periodic trapezoid on the whole circle (smooth weights).
    Trapezoid,
    /// Composite Gauss panels on each interval, graded toward both of its
    /// ends. Angles may be negative; densities are `2pi`-periodic.
    Graded { intervals: Vec<(f64, f64)>, panels: usize },
}

impl QuadraturePlan {
    /// Nodes and weights (without the density) of the plan; the trapezoid
    /// plan uses `n` nodes.
    pub fn rule(&self, n: usize) -> quadrature::Rule {
        match self {
            QuadraturePlan::Trapezoid => quadrature::trapezoid_rule(n),
            QuadraturePlan::Graded { intervals, panels } => intervals
                .iter()
                .flat_map(|&(a, b)| quadrature::graded_rule(a, b, *panels, 0.5, 16))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMass {
    pub angle: f64,
    pub mass: f64,
}

/// A positive measure on the unit circle. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureModel {
    family: Family,
    total_mass: f64,
    /// Density prefactor: `rho` for the q-family, the reciprocal of the
    /// integrated raw weight for the hypergeometric family.
    norm: f64,
}

impl MeasureModel {
    pub fn lebesgue() -> Self {
        MeasureModel { family: Family::Lebesgue, total_mass: 1.0, norm: 1.0 }
    }

    pub fn geronimus(alpha: C64) -> Result<Self> {
        let r = alpha.norm();
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidMeasure(format!("Geronimus needs 0 < |alpha| < 1, got {alpha}")));
        }
        Ok(MeasureModel { family: Family::Geronimus { alpha }, total_mass: 1.0, norm: 1.0 })
    }

    pub fn qhyper(q: f64, b: C64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) || !(b.re > 0.0) {
            return Err(Error::InvalidMeasure(format!(
                "q-family needs 0 < q < 1 and Re b > 0, got q={q}, b={b}"
            )));
        }
        let bb = b.conj();
        let one = C64::new(1.0, 0.0);
        let phi = qhyp_2phi1(C64::new(q, 0.0), qpow(q, one - b), qpow(q, bb + 1.0), q, qpow(q, b));
        let rho = (1.0 - qpow(q, bb)) / phi * qpoch_inf(C64::new(q, 0.0), q) * qpoch_inf(qpow(q, b + bb), q)
            / (qpoch_inf(qpow(q, b), q) * qpoch_inf(qpow(q, bb), q));
        Ok(MeasureModel { family: Family::QHyper { q, b }, total_mass: 1.0, norm: rho.re })
    }

    pub fn hyper_jacobi(b: C64) -> Result<Self> {
        if !(b.re > -0.5) {
            return Err(Error::InvalidMeasure(format!("hypergeometric family needs Re b > -1/2, got {b}")));
        }
        let mut m = MeasureModel { family: Family::HyperJacobi { b }, total_mass: 1.0, norm: 1.0 };
        let mut s = CompensatedSum::default();
        for (t, w) in m.quadrature_plan()?.rule(0) {
            s.add(C64::new(w * m.hyper_raw_weight(t), 0.0));
        }
        m.norm = 1.0 / s.value().re;
        Ok(m)
    }

    pub fn explicit_alpha(alphas: Vec<C64>, total_mass: f64) -> Result<Self> {
        check_mass(total_mass)?;
        if let Some((n, a)) = alphas.iter().enumerate().find(|(_, a)| !(a.norm() < 1.0)) {
            return Err(Error::InvalidMeasure(format!("|alpha_{n}| = {} is not below 1", a.norm())));
        }
        Ok(MeasureModel { family: Family::ExplicitAlpha { alphas }, total_mass, norm: 1.0 })
    }

    pub fn explicit_cg(c: Vec<f64>, g: Vec<f64>, total_mass: f64) -> Result<Self> {
        check_mass(total_mass)?;
        if c.len() != g.len() {
            return Err(Error::InvalidMeasure("c and g lists differ in length".into()));
        }
        if let Some((n, v)) = g.iter().enumerate().find(|(_, v)| !(**v > 0.0 && **v < 1.0)) {
            return Err(Error::InvalidMeasure(format!("g_{} = {v} is not in (0, 1)", n + 1)));
        }
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMeasure("non-finite c value".into()));
        }
        Ok(MeasureModel { family: Family::ExplicitCg { c, g }, total_mass, norm: 1.0 })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Short human-readable tag used in reports.
    pub fn label(&self) -> String {
        match &self.family {
            Family::Lebesgue => "lebesgue".into(),
            Family::Geronimus { alpha } => format!("geronimus(alpha={})", fmt_c(*alpha)),
            Family::QHyper { q, b } => format!("qhyper(q={q},b={})", fmt_c(*b)),
            Family::HyperJacobi { b } => format!("hyper(b={})", fmt_c(*b)),
            Family::ExplicitAlpha { alphas } => format!("alpha-list(len={})", alphas.len()),
            Family::ExplicitCg { c, .. } => format!("cg-list(len={})", c.len()),
        }
    }

    /// `alpha_0 .. alpha_{count-1}`.
    pub fn alphas(&self, count: usize) -> Result<Vec<C64>> {
        match &self.family {
            Family::Lebesgue => Ok(vec![C64::new(0.0, 0.0); count]),
            Family::Geronimus { alpha } => {
                let w = (1.0 + alpha.conj()) / (1.0 + alpha);
                let mut wp = w;
                Ok((0..count)
                    .map(|_| {
                        let a = wp * alpha;
                        wp *= w;
                        a
                    })
                    .collect())
            }
            Family::ExplicitAlpha { alphas } => {
                if count > alphas.len() {
                    return Err(Error::OutOfRange { index: count - 1, available: alphas.len() });
                }
                Ok(alphas[..count].to_vec())
            }
            Family::QHyper { .. } | Family::HyperJacobi { .. } | Family::ExplicitCg { .. } => {
                let (c, g) = self.cgs(count)?;
                cgrec::alphas_from_cg(&c, &g)
            }
        }
    }

    pub fn alpha(&self, n: usize) -> Result<C64> {
        Ok(self.alphas(n + 1)?[n])
    }

    /// `(c_1 .. c_count, g_1 .. g_count)`.
    pub fn cgs(&self, count: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        match &self.family {
            Family::QHyper { q, b } => Ok((1..=count).map(|k| reference::qhyper_cg(*q, *b, k)).unzip()),
            Family::HyperJacobi { b } => Ok((1..=count).map(|k| reference::hyper_cg(*b, k)).unzip()),
            Family::ExplicitCg { c, g } => {
                if count > c.len() {
                    return Err(Error::OutOfRange { index: count, available: c.len() });
                }
                Ok((c[..count].to_vec(), g[..count].to_vec()))
            }
            _ => {
                let p = cgrec::cg_from_alphas(&self.alphas(count)?)?;
                Ok((p.0, p.1))
            }
        }
    }

    /// `(c_n, g_n)` for `n >= 1`.
    pub fn cg(&self, n: usize) -> Result<(f64, f64)> {
        if n == 0 {
            return Err(Error::Contract("(c_n, g_n) is indexed from n = 1".into()));
        }
        let (c, g) = self.cgs(n)?;
        Ok((c[n - 1], g[n - 1]))
    }

    /// Geronimus support arc `[a, b]` with `0 < a < b < 2pi`.
    pub fn support_arc(&self) -> Option<(f64, f64)> {
        match self.family {
            Family::Geronimus { alpha } => {
                let vt = ((1.0 + alpha.conj()) / (1.0 + alpha)).arg();
                let ta = 2.0 * alpha.norm().asin();
                Some((ta - vt, 2.0 * PI - ta - vt))
            }
            _ => None,
        }
    }

    /// Geronimus: 32 graded panels per arc endpoint. Hypergeometric: graded
    /// from both sides toward `theta = 0` (nodes on `[-pi, pi]`, so angles
    /// near the singularity stay representable), with enough levels that the
    /// innermost panel of `|theta|^{2 Re b}` carries less than ~1e-14.
    pub fn quadrature_plan(&self) -> Result<QuadraturePlan> {
        match self.family {
            Family::Lebesgue | Family::QHyper { .. } => Ok(QuadraturePlan::Trapezoid),
            Family::Geronimus { .. } => {
                let (a, b) = self.support_arc().unwrap();
                Ok(QuadraturePlan::Graded { intervals: vec![(a, b)], panels: 32 })
            }
            Family::HyperJacobi { b } => {
                let expo = (1.0 + 2.0 * b.re).min(1.0);
                let panels = ((14.0 * 10f64.log2() / expo).ceil() as usize).max(32);
                Ok(QuadraturePlan::Graded { intervals: vec![(-PI, 0.0), (0.0, PI)], panels })
            }
            _ => Err(Error::Unsupported(format!("{} has no density", self.label()))),
        }
    }

    pub fn has_density(&self) -> bool {
        !matches!(self.family, Family::ExplicitAlpha { .. } | Family::ExplicitCg { .. })
    }

    /// The exponential factor jumps at `theta = 0`; it is read on `[0, 2pi)`
    /// while the sine uses the raw angle so small negative angles keep
    /// their relative accuracy.
    fn hyper_raw_weight(&self, theta: f64) -> f64 {
        let Family::HyperJacobi { b } = self.family else { unreachable!() };
        let s = (0.5 * theta).sin();
        let t = theta.rem_euclid(2.0 * PI);
        ((PI - t) * b.im).exp() * (s * s).powf(b.re)
    }

    /// Absolutely continuous density with respect to `d theta`.
    pub fn density(&self, theta: f64) -> Result<f64> {
        let t = theta.rem_euclid(2.0 * PI);
        match self.family {
            Family::Lebesgue => Ok(1.0 / (2.0 * PI)),
            Family::Geronimus { alpha } => {
                let (a, b) = self.support_arc().unwrap();
                if t < a || t > b {
                    return Ok(0.0);
                }
                let ta = 2.0 * alpha.norm().asin();
                let vt = ta - a;
                let ch = (0.5 * ta).cos();
                let cx = (0.5 * (t + vt)).cos();
                let num = (ch * ch - cx * cx).max(0.0).sqrt();
                Ok(num / (2.0 * PI * (1.0 + alpha).norm() * (0.5 * t).sin()))
            }
            Family::QHyper { q, b } => {
                let z = C64::from_polar(1.0, t);
                let num = qpoch_inf(q * z, q).norm_sqr();
                let den = qpoch_inf(qpow(q, b) * z, q).norm_sqr();
                Ok(self.norm * num / den / (2.0 * PI))
            }
            Family::HyperJacobi { .. } => Ok(self.norm * self.hyper_raw_weight(theta)),
            _ => Err(Error::Unsupported(format!("{} has no density", self.label()))),
        }
    }

    pub fn point_masses(&self) -> Result<Vec<PointMass>> {
        match self.family {
            Family::Geronimus { alpha } => {
                let m = 2.0 / (1.0 + alpha).norm_sqr() * (alpha.re + alpha.norm_sqr()).max(0.0);
                Ok(if m > 0.0 { vec![PointMass { angle: 0.0, mass: m }] } else { vec![] })
            }
            Family::ExplicitAlpha { .. } | Family::ExplicitCg { .. } => {
                Err(Error::Unsupported(format!("{} has no density", self.label())))
            }
            _ => Ok(vec![]),
        }
    }

    /// Angles sampling the support: `count` points on the Geronimus arc plus
    /// its mass point, a uniform grid on the circle otherwise. Explicit
    /// families are treated as supported on the whole circle.
    pub fn support_samples(&self, count: usize) -> Vec<f64> {
        let count = count.max(2);
        match self.support_arc() {
            Some((a, b)) => {
                let mut v: Vec<f64> =
                    (0..count).map(|j| a + (b - a) * j as f64 / (count - 1) as f64).collect();
                v.extend(self.point_masses().unwrap_or_default().iter().map(|p| p.angle));
                v
            }
            None => (0..count).map(|j| 2.0 * PI * j as f64 / count as f64).collect(),
        }
    }
}

fn check_mass(m: f64) -> Result<()> {
    if m > 0.0 && m.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidMeasure(format!("total mass must be positive, got {m}")))
    }
}

/// Format a complex number in the `a+bi` grammar.
pub fn fmt_c(z: C64) -> String {
    // adding +0 turns -0 into 0
    let z = C64::new(z.re + 0.0, z.im + 0.0);
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Representative members of each built-in family, used by the
/// verification sweeps.
pub fn catalogue() -> Vec<MeasureModel> {
    let c = |re, im| C64::new(re, im);
    vec![
        MeasureModel::lebesgue(),
        MeasureModel::geronimus(c(-0.5, 0.0)).unwrap(),
        MeasureModel::geronimus(c(-0.3, 0.2)).unwrap(),
        MeasureModel::geronimus(c(0.4, 0.3)).unwrap(),
        MeasureModel::qhyper(0.5, c(1.0, 0.0)).unwrap(),
        MeasureModel::qhyper(0.5, c(0.7, 0.3)).unwrap(),
        MeasureModel::qhyper(0.3, c(1.2, 0.0)).unwrap(),
        MeasureModel::hyper_jacobi(c(1.0, 0.0)).unwrap(),
        MeasureModel::hyper_jacobi(c(0.8, 0.5)).unwrap(),
        MeasureModel::hyper_jacobi(c(-0.3, 0.2)).unwrap(),
    ]
}
