//! Quadrature rules on `[0, 2pi)`: Gauss–Legendre, composite Gauss panels
//! graded toward interval endpoints, and the periodic trapezoid rule.

use std::f64::consts::PI;

use crate::C64;

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn add(&mut self, z: C64) {
        neumaier(&mut self.re, &mut self.re_c, z.re);
        neumaier(&mut self.im, &mut self.im_c, z.im);
    }

    pub fn value(&self) -> C64 {
        C64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, Newton on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = nf * (z * p - pm1) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Quadrature rule as `(node, weight)` pairs.
pub type Rule = Vec<(f64, f64)>;

fn map_panel(rule: &mut Rule, a: f64, b: f64, gx: &[f64], gw: &[f64]) {
    let h = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    for (x, w) in gx.iter().zip(gw) {
        rule.push((mid + h * x, h * w));
    }
}

/// Composite Gauss rule on `[a, b]` with `panels` geometrically shrinking
/// panels (ratio `ratio`) toward each endpoint, `order` nodes per panel.
pub fn graded_rule(a: f64, b: f64, panels: usize, ratio: f64, order: usize) -> Rule {
    let (gx, gw) = gauss_legendre(order);
    let half = 0.5 * (b - a);
    let mut rule = Vec::with_capacity(2 * (panels + 1) * order);
    let mut breaks: Vec<f64> = (0..=panels).map(|i| half * ratio.powi(i as i32)).collect();
    breaks.push(0.0);
    for k in 0..breaks.len() - 1 {
        let (outer, inner) = (breaks[k], breaks[k + 1]);
        map_panel(&mut rule, a + inner, a + outer, &gx, &gw);
        map_panel(&mut rule, b - outer, b - inner, &gx, &gw);
    }
    rule
}

/// Periodic trapezoid rule with `n` nodes on `[0, 2pi)`.
pub fn trapezoid_rule(n: usize) -> Rule {
    let h = 2.0 * PI / n as f64;
    (0..n).map(|j| (j as f64 * h, h)).collect()
}

/// `int e^{-ik theta} f(theta) d theta` for `k = 0..=kmax` over a rule whose
/// weights already include `f`.
pub fn fourier_moments(weighted: &[(f64, f64)], kmax: usize) -> Vec<C64> {
    let mut sums = vec![CompensatedSum::default(); kmax + 1];
    for &(theta, w) in weighted {
        let step = C64::from_polar(1.0, -theta);
        let mut e = C64::new(w, 0.0);
        for s in sums.iter_mut() {
            s.add(e);
            e *= step;
        }
    }
    sums.iter().map(CompensatedSum::value).collect()
}
