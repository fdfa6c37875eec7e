//! Monic and orthonormal polynomials of a measure via the Szegő recurrence.

use crate::dd::Cdd;
use crate::measures::MeasureModel;
use crate::poly::Poly;
use crate::{Error, Result, C64};

/// `Phi_0..Phi_N`, `Phi*_0..Phi*_N`, `kappa_0..kappa_N`, `tau_0..tau_N` and
/// the Verblunsky coefficients `alpha_0..alpha_{N-1}` that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct OpucTable {
    pub monic: Vec<Poly>,
    pub reversed: Vec<Poly>,
    pub kappa: Vec<f64>,
    pub tau: Vec<C64>,
    pub alphas: Vec<C64>,
    pub total_mass: f64,
}

impl OpucTable {
    pub fn build(m: &MeasureModel, n_max: usize) -> Result<Self> {
        OpucTable::from_alphas(&m.alphas(n_max)?, m.total_mass())
    }

    pub fn from_alphas(alphas: &[C64], total_mass: f64) -> Result<Self> {
        if !(total_mass > 0.0) {
            return Err(Error::InvalidMeasure(format!("total mass {total_mass}")));
        }
        let one = C64::new(1.0, 0.0);
        let mut monic = vec![Poly::one()];
        let mut reversed = vec![Poly::one()];
        let mut kappa = vec![total_mass.powf(-0.5)];
        let mut tau = vec![one];
        // The Möbius map for tau amplifies rounding by ~|1 - conj(alpha)/tau|^-1
        // per step when mu has a mass point at 1, so it runs in double-double.
        let dd_one = Cdd::from_c64(one);
        let mut t = dd_one;
        for (n, &a) in alphas.iter().enumerate() {
            let r2 = a.norm_sqr();
            if !(r2 < 1.0) {
                return Err(Error::InvalidMeasure(format!("|alpha_{n}| = {} >= 1", a.norm())));
            }
            let zp = monic[n].shift(1);
            let next = &zp - &reversed[n].scale(a.conj());
            let next_rev = &reversed[n] - &zp.scale(a);
            monic.push(next);
            reversed.push(next_rev);
            kappa.push(kappa[n] / (1.0 - r2).sqrt());
            let ad = Cdd::from_c64(a);
            t = (t - ad.conj()) / (dd_one - t * ad);
            let nt = t.to_c64();
            tau.push(nt / nt.norm());
        }
        Ok(OpucTable { monic, reversed, kappa, tau, alphas: alphas.to_vec(), total_mass })
    }

    /// Largest available index `N`.
    pub fn size(&self) -> usize {
        self.monic.len() - 1
    }

    pub fn orthonormal(&self, n: usize) -> Poly {
        self.monic[n].scale(C64::new(self.kappa[n], 0.0))
    }

    pub fn orthonormal_reversed(&self, n: usize) -> Poly {
        self.reversed[n].scale(C64::new(self.kappa[n], 0.0))
    }

    /// `(phi_j(z), phi*_j(z))` for `j = 0..=n`, run through the recurrence
    /// on values rather than coefficients.
    pub fn values(&self, n: usize, z: C64) -> Vec<(C64, C64)> {
        // double-double: at a mass point of mu both values decay and the
        // recurrence amplifies rounding by a constant factor per step
        let mut out = Vec::with_capacity(n + 1);
        let zd = Cdd::from_c64(z);
        let (mut p, mut ps) = (Cdd::ONE, Cdd::ONE);
        out.push((C64::new(self.kappa[0], 0.0), C64::new(self.kappa[0], 0.0)));
        for j in 0..n {
            let a = Cdd::from_c64(self.alphas[j]);
            let zp = zd * p;
            (p, ps) = (zp - a.conj() * ps, ps - a * zp);
            out.push((p.to_c64() * self.kappa[j + 1], ps.to_c64() * self.kappa[j + 1]));
        }
        out
    }

    /// `tau_n = Phi_n(1)/Phi*_n(1)` from the values at `1` rather than the
    /// Möbius recursion.
    pub fn tau_direct(&self, n: usize) -> C64 {
        let (p, ps) = self.values(n, C64::new(1.0, 0.0))[n];
        p / ps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::measures::MeasureModel;
    use crate::oracle;

    #[test]
    fn lebesgue_is_monomials() {
        let t = OpucTable::build(&MeasureModel::lebesgue(), 3).unwrap();
        for n in 0..=3 {
            assert_eq!(t.monic[n], Poly::monomial(n, c64(1.0, 0.0)));
            assert_eq!(t.kappa[n], 1.0);
            assert_eq!(t.tau[n], c64(1.0, 0.0));
        }
    }

    #[test]
    fn single_step() {
        let m = MeasureModel::explicit_alpha(vec![c64(0.5, 0.0)], 1.0).unwrap();
        let t = OpucTable::build(&m, 1).unwrap();
        assert_eq!(t.monic[1], Poly::from_real(&[-0.5, 1.0]));
        assert_eq!(t.reversed[1], Poly::from_real(&[1.0, -0.5]));
        assert!((t.kappa[1] - 1.0 / 0.75f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn geronimus_tau_is_one() {
        let t = OpucTable::build(&MeasureModel::geronimus(c64(-0.5, 0.0)).unwrap(), 4).unwrap();
        assert!(t.tau.iter().all(|x| (x - 1.0).norm() < 1e-15));
    }

    #[test]
    fn rejects_unit_alpha() {
        assert!(matches!(
            OpucTable::from_alphas(&[c64(0.0, 1.0)], 1.0),
            Err(Error::InvalidMeasure(_))
        ));
    }

    fn families() -> Vec<MeasureModel> {
        vec![
            MeasureModel::lebesgue(),
            MeasureModel::geronimus(c64(-0.5, 0.0)).unwrap(),
            MeasureModel::geronimus(c64(0.4, 0.3)).unwrap(),
            MeasureModel::qhyper(0.5, c64(0.7, 0.3)).unwrap(),
            MeasureModel::hyper_jacobi(c64(0.8, 0.5)).unwrap(),
            MeasureModel::hyper_jacobi(c64(-0.3, 0.2)).unwrap(),
        ]
    }

    #[test]
    fn reversed_and_tau_are_consistent() {
        for m in families() {
            let t = OpucTable::build(&m, 20).unwrap();
            for n in 0..=20 {
                assert_eq!(t.monic[n].degree(), Some(n));
                assert!((t.monic[n].coeff(n) - 1.0).norm() < 1e-15);
                let rev = t.monic[n].reverse(n).unwrap();
                for k in 0..=n {
                    assert!((rev.coeff(k) - t.reversed[n].coeff(k)).norm() < 1e-13);
                }
                assert!((t.tau[n].norm() - 1.0).abs() < 1e-14);
                assert!((t.tau_direct(n) - t.tau[n]).norm() < 1e-10, "{} n={n}", m.label());
            }
        }
    }

    #[test]
    fn zeros_lie_inside_the_disk() {
        for m in families() {
            let t = OpucTable::build(&m, 20).unwrap();
            for n in 1..=20 {
                let r = t.monic[n].roots().unwrap();
                let max = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(max <= 1.0 - 1e-10, "{} n={n}: {max}", m.label());
            }
        }
    }

    #[test]
    fn orthonormal_against_quadrature() {
        for m in families() {
            let t = OpucTable::build(&m, 12).unwrap();
            let mom = oracle::moments_quadrature(&m, 24).unwrap();
            for a in 0..=12 {
                let pa = t.orthonormal(a);
                for b in 0..=12 {
                    let pb = t.orthonormal(b);
                    // int conj(phi_b) phi_a dmu = sum_{j,k} conj(b_k) a_j int zeta^{j-k}
                    let mut s = C64::new(0.0, 0.0);
                    for (j, aj) in pa.coeffs().iter().enumerate() {
                        for (k, bk) in pb.coeffs().iter().enumerate() {
                            s += bk.conj() * aj * mom.get(k as i64 - j as i64);
                        }
                    }
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((s - want).norm() < 1e-7, "{} ({a},{b}) {s}", m.label());
                }
            }
        }
    }
}
