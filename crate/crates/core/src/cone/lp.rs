//! Exact phase-one simplex with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::QVector;

/// Finds `λ ≥ 0` and free `μ` with `Σ λ_i rays_i + Σ μ_j lines_j = target`.
pub(crate) fn conic_combination(
    rays: &[QVector],
    lines: &[QVector],
    target: &QVector,
) -> Option<(Vec<BigRational>, Vec<BigRational>)> {
    let m = target.dim();
    let (nr, nl) = (rays.len(), lines.len());
    let n = nr + 2 * nl;
    let column = |j: usize, i: usize| -> BigRational {
        if j < nr {
            rays[j][i].clone()
        } else if j < nr + nl {
            lines[j - nr][i].clone()
        } else {
            -lines[j - nr - nl][i].clone()
        }
    };

    // Columns 0..n are structural, n..n+m artificial.
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = target[i].is_negative();
        let mut row: Vec<BigRational> = (0..n)
            .map(|j| if flip { -column(j, i) } else { column(j, i) })
            .collect();
        row.extend((0..m).map(|k| {
            if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
        tab.push(row);
        rhs.push(target[i].abs());
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let total = n + m;

    loop {
        let cost = |j: usize| -> BigRational {
            let own = if j >= n {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            let mut d = own;
            for (i, &b) in basis.iter().enumerate() {
                if b >= n && !tab[i][j].is_zero() {
                    d -= &tab[i][j];
                }
            }
            d
        };
        let Some(enter) = (0..total)
            .filter(|j| !basis.contains(j))
            .find(|&j| cost(j).is_negative())
        else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[i] / &tab[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so a leaving row always exists.
        let (r, _) = leave?;
        pivot(&mut tab, &mut rhs, r, enter);
        basis[r] = enter;
    }

    let infeasible = basis.iter().zip(&rhs).any(|(&b, x)| b >= n && !x.is_zero());
    if infeasible {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (&b, v) in basis.iter().zip(&rhs) {
        if b < n {
            x[b] = v.clone();
        }
    }
    let lam = x[..nr].to_vec();
    let mu = (0..nl).map(|j| &x[nr + j] - &x[nr + nl + j]).collect();
    Some((lam, mu))
}

fn pivot(tab: &mut [Vec<BigRational>], rhs: &mut [BigRational], r: usize, c: usize) {
    let inv = BigRational::one() / &tab[r][c];
    for x in tab[r].iter_mut() {
        *x *= &inv;
    }
    rhs[r] *= &inv;
    let prow = tab[r].clone();
    let prhs = rhs[r].clone();
    for i in 0..tab.len() {
        if i == r || tab[i][c].is_zero() {
            continue;
        }
        let f = tab[i][c].clone();
        for (x, y) in tab[i].iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        rhs[i] -= &f * &prhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn recombine(rays: &[QVector], lines: &[QVector], lam: &[BigRational], mu: &[BigRational]) -> QVector {
        let mut out = QVector::zeros(rays.first().or(lines.first()).map_or(0, |v| v.dim()));
        for (c, r) in lam.iter().zip(rays) {
            out.add_scaled(c, r);
        }
        for (c, l) in mu.iter().zip(lines) {
            out.add_scaled(c, l);
        }
        out
    }

    #[test]
    fn half_half() {
        let rays = vec![QVector::from_ints(&[-1, 3]), QVector::from_ints(&[3, -1])];
        let (lam, mu) = conic_combination(&rays, &[], &QVector::from_ints(&[1, 1])).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(lam, vec![half.clone(), half]);
        assert!(mu.is_empty());
    }

    #[test]
    fn outside_is_infeasible() {
        let rays = vec![QVector::from_ints(&[-1, 3]), QVector::from_ints(&[3, -1])];
        assert!(conic_combination(&rays, &[], &QVector::from_ints(&[-1, 0])).is_none());
    }

    #[test]
    fn uses_lines_with_negative_coefficient() {
        let rays = vec![QVector::from_ints(&[0, 1, 0])];
        let lines = vec![QVector::from_ints(&[1, 0, 0]), QVector::from_ints(&[0, 0, 1])];
        let target = QVector::from_ints(&[-4, 2, -7]);
        let (lam, mu) = conic_combination(&rays, &lines, &target).unwrap();
        assert!(lam.iter().all(|x| !x.is_negative()));
        assert_eq!(recombine(&rays, &lines, &lam, &mu), target);
    }

    #[test]
    fn degenerate_redundant_rays() {
        let rays: Vec<QVector> = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [2, 1, 0], [0, 0, 1], [1, 1, 1]]
            .iter()
            .map(|r| QVector::from_ints(r))
            .collect();
        let target = QVector::from_ints(&[3, 2, 1]);
        let (lam, mu) = conic_combination(&rays, &[], &target).unwrap();
        assert!(lam.iter().all(|x| !x.is_negative()));
        assert_eq!(recombine(&rays, &[], &lam, &mu), target);
    }
}
