//! Dense exact linear algebra over ℚ.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::QVector;

/// Reduced row-echelon form. Returns the nonzero rows and their pivot columns.
pub(crate) fn rref(rows: &[QVector], ncols: usize) -> (Vec<QVector>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m.into_iter().map(QVector::new).collect(), pivots)
}

/// Component of `v` orthogonal to the span of `basis` (standard inner product).
/// `basis` must be linearly independent.
pub(crate) fn project_out(v: &QVector, basis: &[QVector]) -> QVector {
    if basis.is_empty() {
        return v.clone();
    }
    let k = basis.len();
    let gram: Vec<QVector> = basis.iter().map(|a| basis.iter().map(|b| a.dot(b)).collect()).collect();
    let rhs: Vec<BigRational> = basis.iter().map(|a| a.dot(v)).collect();
    let coeffs = solve_square(gram, rhs).expect("independent basis has invertible Gram matrix");
    let mut out = v.clone();
    for (c, b) in coeffs.iter().zip(basis) {
        out.add_scaled(&-c.clone(), b);
    }
    debug_assert_eq!(k, coeffs.len());
    out
}

/// Solves a nonsingular square system by Gauss–Jordan elimination.
pub(crate) fn solve_square(a: Vec<QVector>, b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    let rows: Vec<QVector> = a
        .into_iter()
        .zip(b)
        .map(|(r, x)| r.concat(&QVector::new(vec![x])))
        .collect();
    let (red, pivots) = rref(&rows, n + 1);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(red.iter().map(|r| r[n].clone()).collect())
}

/// Any solution of `Σ x_i cols_i = target`, or `None` if inconsistent.
pub(crate) fn solve_columns(cols: &[QVector], target: &QVector) -> Option<Vec<BigRational>> {
    let dim = target.dim();
    let n = cols.len();
    let rows: Vec<QVector> = (0..dim)
        .map(|i| {
            cols.iter()
                .map(|c| c[i].clone())
                .chain(std::iter::once(target[i].clone()))
                .collect()
        })
        .collect();
    let (red, pivots) = rref(&rows, n + 1);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &pc) in red.iter().zip(&pivots) {
        x[pc] = row[n].clone();
    }
    Some(x)
}
