//! Christoffel–Darboux kernels `K_n(z, w) = sum_{j<=n} conj(phi_j(w)) phi_j(z)`.

use crate::opuc::OpucTable;
use crate::poly::Poly;
use crate::{Error, Result, C64};

/// Below this `|conj(w) z - 1|` the CD quotient falls back to the sum.
pub const CD_SINGULAR: f64 = 1e-8;

/// `K_n(., w)` as a polynomial in `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelEval {
    pub n: usize,
    pub w: C64,
    pub poly: Poly,
}

pub fn kernel_sum(t: &OpucTable, n: usize, z: C64, w: C64) -> C64 {
    let vz = t.values(n, z);
    let vw = t.values(n, w);
    vz.iter().zip(&vw).map(|((pz, _), (pw, _))| pw.conj() * pz).sum()
}

/// Closed CD form
/// `[conj(phi_{n+1}(w)) phi_{n+1}(z) - conj(phi*_{n+1}(w)) phi*_{n+1}(z)] / (conj(w) z - 1)`.
pub fn kernel_cd(t: &OpucTable, n: usize, z: C64, w: C64) -> C64 {
    let den = w.conj() * z - 1.0;
    if den.norm() < CD_SINGULAR {
        return kernel_sum(t, n, z, w);
    }
    let (pz, psz) = t.values(n + 1, z)[n + 1];
    let (pw, psw) = t.values(n + 1, w)[n + 1];
    (pw.conj() * pz - psw.conj() * psz) / den
}

/// `sum_{l=lo+1}^{hi} conj(phi_l(w)) phi_l` as a polynomial; `K_hi - K_lo`
/// without the cancellation of subtracting the two kernels.
pub fn kernel_tail_poly(t: &OpucTable, lo: Option<usize>, hi: usize, w: C64) -> Poly {
    let vw = t.values(hi, w);
    let start = lo.map_or(0, |l| l + 1);
    let mut acc = vec![C64::new(0.0, 0.0); hi + 1];
    for l in start..=hi {
        let s = vw[l].0.conj() * t.kappa[l];
        for (k, c) in t.monic[l].coeffs().iter().enumerate() {
            acc[k] += s * c;
        }
    }
    Poly::new(acc)
}

pub fn kernel_poly(t: &OpucTable, n: usize, w: C64) -> KernelEval {
    KernelEval { n, w, poly: kernel_tail_poly(t, None, n, w) }
}

pub fn kernel_deriv_poly(t: &OpucTable, n: usize, w: C64) -> Poly {
    kernel_poly(t, n, w).poly.derivative()
}

pub fn kernel_roots(k: &KernelEval) -> Result<Vec<C64>> {
    if k.poly.is_zero() {
        return Err(Error::Contract("roots of the zero kernel".into()));
    }
    k.poly.roots()
}
