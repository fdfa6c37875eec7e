//! Pochhammer symbols, q-Pochhammer products and the hypergeometric series
//! used by the closed-form families.

use crate::C64;

/// Stop infinite q-products once `|a| q^k` drops below this.
pub const QPROD_TAIL: f64 = 1e-17;

/// Rising factorial `(a)_n`.
pub fn pochhammer(a: C64, n: usize) -> C64 {
    (0..n).fold(C64::new(1.0, 0.0), |acc, k| acc * (a + k as f64))
}

/// `q^b` for real `0 < q < 1` and complex `b`.
pub fn qpow(q: f64, b: C64) -> C64 {
    (b * q.ln()).exp()
}

/// Finite q-Pochhammer `(a; q)_n`.
pub fn qpoch(a: C64, q: f64, n: usize) -> C64 {
    let mut r = C64::new(1.0, 0.0);
    let mut t = a;
    for _ in 0..n {
        r *= 1.0 - t;
        t *= q;
    }
    r
}

/// Infinite q-Pochhammer `(a; q)_inf`, truncated at the first factor with
/// `|a q^k| < 1e-17`.
pub fn qpoch_inf(a: C64, q: f64) -> C64 {
    let mut r = C64::new(1.0, 0.0);
    let mut t = a;
    while t.norm() >= QPROD_TAIL {
        r *= 1.0 - t;
        t *= q;
    }
    r
}

/// Basic hypergeometric series `2phi1(a, b; c; q, z)` summed until the terms
/// stop contributing. Requires `|z| < 1`.
pub fn qhyp_2phi1(a: C64, b: C64, c: C64, q: f64, z: C64) -> C64 {
    let mut sum = C64::new(0.0, 0.0);
    let mut term = C64::new(1.0, 0.0);
    let (mut aq, mut bq, mut cq, mut qk1) = (a, b, c, q);
    for _ in 0..10_000 {
        sum += term;
        term *= (1.0 - aq) * (1.0 - bq) / ((1.0 - cq) * (1.0 - qk1)) * z;
        if term.norm() <= 1e-18 * sum.norm() || term.norm() == 0.0 {
            break;
        }
        aq *= q;
        bq *= q;
        cq *= q;
        qk1 *= q;
    }
    sum
}

/// Terminating Gauss series `2F1(-n, b; c; x)`.
pub fn hyp2f1_terminating(n: usize, b: C64, c: C64, x: C64) -> C64 {
    let mut sum = C64::new(1.0, 0.0);
    let mut term = C64::new(1.0, 0.0);
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(c64(1.0, 0.0), 4), c64(24.0, 0.0));
        assert_eq!(pochhammer(c64(0.5, 0.0), 0), c64(1.0, 0.0));
    }

    #[test]
    fn q_binomial_theorem() {
        // 1phi0(a;;q,z) = (az;q)_inf/(z;q)_inf; 2phi1 with b = c reduces to it.
        let (q, a, z) = (0.4, c64(0.3, 0.2), c64(0.5, -0.1));
        let lhs = qhyp_2phi1(a, c64(0.7, 0.0), c64(0.7, 0.0), q, z);
        let rhs = qpoch_inf(a * z, q) / qpoch_inf(z, q);
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn finite_and_infinite_products_agree() {
        let a = c64(0.9, 0.1);
        let q = 0.5;
        let tail = qpoch_inf(a * qpow(q, c64(60.0, 0.0)), q);
        assert!((qpoch(a, q, 60) * tail - qpoch_inf(a, q)).norm() < 1e-15);
    }

    #[test]
    fn chu_vandermonde() {
        // 2F1(-n, b; c; 1) = (c-b)_n/(c)_n
        let (b, c) = (c64(1.3, 0.4), c64(2.5, -0.2));
        for n in 0..12 {
            let lhs = hyp2f1_terminating(n, b, c, c64(1.0, 0.0));
            let rhs = pochhammer(c - b, n) / pochhammer(c, n);
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }
}
