//! Double description over the integers.
//!
//! Input is a homogeneous system `{x : E x = 0, A x ≥ 0}`; output is a minimal
//! generating set: a basis of the lineality space plus one representative of
//! every extreme ray of the quotient by it. Constraints are processed one at a
//! time. While the current cone still has lines not annihilated by the new
//! constraint, one of them is consumed to re-base the others; otherwise the
//! rays are split by sign and adjacent pairs of opposite sign are combined.
//! Adjacency uses the combinatorial test on zero sets, which is exact as long
//! as the current ray set is minimal (an invariant of the iteration).

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::arith::{int_combine, int_dot, is_zero_ints, make_primitive};

#[derive(Clone, Debug, Default)]
pub(crate) struct Generators {
    pub rays: Vec<Vec<BigInt>>,
    pub lines: Vec<Vec<BigInt>>,
}

struct Ray {
    v: Vec<BigInt>,
    zeros: FixedBitSet,
}

pub(crate) fn generators_of(dim: usize, equations: &[Vec<BigInt>], inequalities: &[Vec<BigInt>]) -> Generators {
    let constraints: Vec<(&[BigInt], bool)> = equations
        .iter()
        .map(|e| (e.as_slice(), true))
        .chain(inequalities.iter().map(|a| (a.as_slice(), false)))
        .filter(|(a, _)| !is_zero_ints(a))
        .collect();
    let m = constraints.len();

    let mut lines: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, &(a, is_eq)) in constraints.iter().enumerate() {
        if let Some(idx) = lines.iter().position(|l| !int_dot(a, l).is_zero()) {
            let mut l = lines.swap_remove(idx);
            let mut al = int_dot(a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|x| *x = -&*x);
                al = -al;
            }
            for other in lines.iter_mut() {
                let v = int_dot(a, other);
                if !v.is_zero() {
                    *other = int_combine(&al, other, &v, &l);
                }
            }
            for r in rays.iter_mut() {
                let v = int_dot(a, &r.v);
                if !v.is_zero() {
                    r.v = int_combine(&al, &r.v, &v, &l);
                }
                r.zeros.insert(k);
            }
            if !is_eq {
                let mut zeros = FixedBitSet::with_capacity(m);
                zeros.insert_range(..k);
                rays.push(Ray {
                    v: make_primitive(l),
                    zeros,
                });
            }
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| int_dot(a, &r.v)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();

        let mut created = Vec::new();
        for &i in &plus {
            for &j in &minus {
                let mut common = rays[i].zeros.clone();
                common.intersect_with(&rays[j].zeros);
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(t, r)| t != i && t != j && common.is_subset(&r.zeros));
                if blocked {
                    continue;
                }
                // values[i] > 0 > values[j]; the combination is a positive one.
                let v = int_combine(&values[i], &rays[j].v, &values[j], &rays[i].v);
                common.insert(k);
                created.push(Ray { v, zeros: common });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_zero() {
                r.zeros.insert(k);
                next.push(r);
            } else if values[i].is_positive() && !is_eq {
                next.push(r);
            }
        }
        next.extend(created);
        rays = next;
    }

    Generators {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lines,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn orthant() {
        let g = generators_of(2, &[], &[iv(&[1, 0]), iv(&[0, 1])]);
        assert!(g.lines.is_empty());
        let mut rays = g.rays;
        rays.sort();
        assert_eq!(rays, vec![iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn redundant_constraints_do_not_add_rays() {
        let ineqs = [
            iv(&[1, 0, 0]),
            iv(&[0, 1, 0]),
            iv(&[0, 0, 1]),
            iv(&[1, 1, 0]),
            iv(&[1, 1, 1]),
        ];
        let g = generators_of(3, &[], &ineqs);
        assert_eq!(g.rays.len(), 3);
        assert!(g.lines.is_empty());
    }

    #[test]
    fn square_pyramid_has_four_rays() {
        // Cone over the square with corners (±1, ±1, 1).
        let ineqs = [iv(&[1, 0, 1]), iv(&[-1, 0, 1]), iv(&[0, 1, 1]), iv(&[0, -1, 1])];
        let g = generators_of(3, &[], &ineqs);
        let mut rays = g.rays;
        rays.sort();
        assert_eq!(
            rays,
            vec![iv(&[-1, -1, 1]), iv(&[-1, 1, 1]), iv(&[1, -1, 1]), iv(&[1, 1, 1])]
        );
    }

    #[test]
    fn equation_leaves_a_line() {
        let g = generators_of(2, &[iv(&[1, -1])], &[]);
        assert!(g.rays.is_empty());
        assert_eq!(g.lines.len(), 1);
        assert!(int_dot(&iv(&[1, -1]), &g.lines[0]).is_zero());
    }

    #[test]
    fn infeasible_halfspaces_give_zero_cone() {
        let g = generators_of(1, &[], &[iv(&[1]), iv(&[-1])]);
        assert!(g.rays.is_empty() && g.lines.is_empty());
    }
}
