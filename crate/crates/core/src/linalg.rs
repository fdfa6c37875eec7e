//! Small dense complex linear algebra: LU with partial pivoting and column
//! equilibration. Matrices are row-major `Vec<Vec<C64>>`.

use crate::{Error, Result, C64};

/// Pivots smaller than this, relative to the largest scaled entry, make a
/// system singular.
pub const SINGULAR_REL: f64 = 1e-12;

fn column_scales(a: &[Vec<C64>]) -> Vec<f64> {
    let n = a.first().map_or(0, |r| r.len());
    (0..n)
        .map(|j| a.iter().map(|r| r[j].norm()).fold(0.0, f64::max))
        .collect()
}

/// Determinant of a square matrix with columns scaled to unit max before
/// elimination and the scales restored afterwards.
pub fn det(a: &[Vec<C64>]) -> C64 {
    let n = a.len();
    if n == 0 {
        return C64::new(1.0, 0.0);
    }
    let s = column_scales(a);
    if s.contains(&0.0) {
        return C64::new(0.0, 0.0);
    }
    let mut m: Vec<Vec<C64>> = a
        .iter()
        .map(|r| r.iter().zip(&s).map(|(x, sj)| x / sj).collect())
        .collect();
    let mut d = C64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm()))
            .unwrap();
        if m[p][k].norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if p != k {
            m.swap(p, k);
            d = -d;
        }
        let piv = m[k][k];
        d *= piv;
        for i in k + 1..n {
            let f = m[i][k] / piv;
            if f.norm() == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let t = m[k][j];
                m[i][j] -= f * t;
            }
        }
    }
    d * s.iter().product::<f64>()
}

/// Solve `a x = b` by LU with partial pivoting after column equilibration.
pub fn solve(a: &[Vec<C64>], b: &[C64]) -> Result<Vec<C64>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Contract("solve: dimension mismatch".into()));
    }
    let s = column_scales(a);
    if s.contains(&0.0) {
        return Err(Error::Singular("zero column".into()));
    }
    let mut m: Vec<Vec<C64>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row: Vec<C64> = r.iter().zip(&s).map(|(x, sj)| x / sj).collect();
            row.push(*bi);
            row
        })
        .collect();
    let amax = m
        .iter()
        .flat_map(|r| r[..n].iter().map(|x| x.norm()))
        .fold(0.0, f64::max);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm()))
            .unwrap();
        if m[p][k].norm() <= SINGULAR_REL * amax {
            return Err(Error::Singular(format!("pivot {k} vanishes")));
        }
        m.swap(p, k);
        let piv = m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / piv;
            for j in k..=n {
                let t = m[k][j];
                m[i][j] -= f * t;
            }
        }
    }
    let mut x = vec![C64::new(0.0, 0.0); n];
    for k in (0..n).rev() {
        let mut acc = m[k][n];
        for j in k + 1..n {
            acc -= m[k][j] * x[j];
        }
        x[k] = acc / m[k][k];
    }
    Ok(x.iter().zip(&s).map(|(xi, sj)| xi / sj).collect())
}

/// For an `r x (r+1)` matrix, the determinants with column `j` removed.
pub fn column_minors(b: &[Vec<C64>]) -> Vec<C64> {
    let cols = b.first().map_or(1, |r| r.len());
    (0..cols)
        .map(|skip| {
            let sub: Vec<Vec<C64>> = b
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != skip)
                        .map(|(_, x)| *x)
                        .collect()
                })
                .collect();
            det(&sub)
        })
        .collect()
}
