//! Rational polyhedral cones with exact arithmetic.
//!
//! A [`Cone`] carries a generator representation, a constraint
//! representation, or both. [`Cone::complete`] fills in whichever is missing
//! and brings both into canonical form: lines and equations as primitive
//! reduced row-echelon bases, rays projected onto the orthogonal complement of
//! the lineality space, inequalities projected onto the span of the cone, all
//! primitive and sorted. Two cones are equal as sets exactly when their
//! completions are identical.

mod arith;
mod dd;
mod linalg;
mod lp;
mod vector;

use std::borrow::Cow;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub use arith::normalize_primitive;
pub use vector::{LinearForm, LinearMap, QVector};

pub(crate) use linalg::solve_columns;

use crate::error::{Error, Result};

/// `{Σ λ_i rays_i + Σ μ_j lines_j : λ_i ≥ 0}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GeneratorRep {
    pub rays: Vec<QVector>,
    pub lines: Vec<QVector>,
}

/// `{v : ineq(v) ≥ 0, eq(v) = 0}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConstraintRep {
    pub inequalities: Vec<LinearForm>,
    pub equations: Vec<LinearForm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    gen: Option<GeneratorRep>,
    con: Option<ConstraintRep>,
    complete: bool,
}

/// Outcome of a membership query, with a certificate either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Coefficients, keyed by generator index, of a combination reproducing
    /// the query. Zero coefficients are omitted; ray coefficients are positive.
    Inside {
        ray_coeffs: BTreeMap<usize, BigRational>,
        line_coeffs: BTreeMap<usize, BigRational>,
    },
    /// A form that is nonnegative on the cone and negative on the query.
    Outside { violated_form: LinearForm },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }

    /// Checks the certificate against the cone and the queried vector.
    pub fn verify(&self, cone: &Cone, v: &QVector) -> bool {
        let c = cone.completed();
        let gen = c.gen.as_ref().expect("complete cone has generators");
        match self {
            Membership::Inside {
                ray_coeffs,
                line_coeffs,
            } => {
                let mut acc = QVector::zeros(cone.dim);
                for (&i, x) in ray_coeffs {
                    if x.is_negative() || i >= gen.rays.len() {
                        return false;
                    }
                    acc.add_scaled(x, &gen.rays[i]);
                }
                for (&i, x) in line_coeffs {
                    if i >= gen.lines.len() {
                        return false;
                    }
                    acc.add_scaled(x, &gen.lines[i]);
                }
                acc == *v
            }
            Membership::Outside { violated_form } => {
                violated_form.eval(v).is_negative()
                    && gen.rays.iter().all(|r| !violated_form.eval(r).is_negative())
                    && gen.lines.iter().all(|l| violated_form.eval(l).is_zero())
            }
        }
    }
}

impl Cone {
    pub fn from_generators(dim: usize, rays: Vec<QVector>, lines: Vec<QVector>) -> Result<Self> {
        for v in rays.iter().chain(&lines) {
            v.check_dim(dim)?;
        }
        Ok(Self {
            dim,
            gen: Some(GeneratorRep { rays, lines }),
            con: None,
            complete: false,
        })
    }

    pub fn from_constraints(dim: usize, inequalities: Vec<LinearForm>, equations: Vec<LinearForm>) -> Result<Self> {
        for f in inequalities.iter().chain(&equations) {
            f.coeffs().check_dim(dim)?;
        }
        Ok(Self {
            dim,
            gen: None,
            con: Some(ConstraintRep {
                inequalities,
                equations,
            }),
            complete: false,
        })
    }

    /// Convenience constructor from integer rays.
    pub fn from_int_rays<I: Into<BigInt> + Copy>(dim: usize, rays: &[&[I]]) -> Result<Self> {
        Self::from_generators(dim, rays.iter().map(|r| QVector::from_ints(r)).collect(), vec![])
    }

    /// Convenience constructor from integer inequality coefficients.
    pub fn from_int_inequalities<I: Into<BigInt> + Copy>(dim: usize, ineqs: &[&[I]]) -> Result<Self> {
        Self::from_constraints(dim, ineqs.iter().map(|f| LinearForm::from_ints(f)).collect(), vec![])
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_generators(dim, vec![], vec![]).expect("no vectors")
    }

    pub fn full(dim: usize) -> Self {
        Self::from_constraints(dim, vec![], vec![]).expect("no forms")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> Option<&GeneratorRep> {
        self.gen.as_ref()
    }

    pub fn constraints(&self) -> Option<&ConstraintRep> {
        self.con.as_ref()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Both representations, canonical and minimal. Idempotent.
    pub fn complete(&self) -> Cone {
        if self.complete {
            return self.clone();
        }
        let p = match (&self.gen, &self.con) {
            (Some(g), _) => {
                let h = dd::generators_of(self.dim, &ints(&g.lines), &ints(&g.rays));
                let v = dd::generators_of(self.dim, &h.lines, &h.rays);
                Both { v, h }
            }
            (None, Some(c)) => {
                let eqs: Vec<QVector> = c.equations.iter().map(|f| f.coeffs().clone()).collect();
                let ineqs: Vec<QVector> = c.inequalities.iter().map(|f| f.coeffs().clone()).collect();
                let v = dd::generators_of(self.dim, &ints(&eqs), &ints(&ineqs));
                let h = dd::generators_of(self.dim, &v.lines, &v.rays);
                Both { v, h }
            }
            (None, None) => unreachable!("a cone always has a representation"),
        };
        let lines = canonical_basis(&p.v.lines, self.dim);
        let rays = canonical_rays(&p.v.rays, &lines);
        let eqs = canonical_basis(&p.h.lines, self.dim);
        let ineqs = canonical_rays(&p.h.rays, &eqs);
        Cone {
            dim: self.dim,
            gen: Some(GeneratorRep { rays, lines }),
            con: Some(ConstraintRep {
                inequalities: ineqs.into_iter().map(LinearForm::new).collect(),
                equations: eqs.into_iter().map(LinearForm::new).collect(),
            }),
            complete: true,
        }
    }

    /// Borrowed when already complete.
    pub fn completed(&self) -> Cow<'_, Cone> {
        if self.complete {
            Cow::Borrowed(self)
        } else {
            Cow::Owned(self.complete())
        }
    }

    /// `{f : f(v) ≥ 0 for all v in self}`, with forms identified with vectors.
    pub fn dual(&self) -> Cone {
        let gen = self.con.as_ref().map(|c| GeneratorRep {
            rays: c.inequalities.iter().map(|f| f.coeffs().clone()).collect(),
            lines: c.equations.iter().map(|f| f.coeffs().clone()).collect(),
        });
        let con = self.gen.as_ref().map(|g| ConstraintRep {
            inequalities: g.rays.iter().cloned().map(LinearForm::new).collect(),
            equations: g.lines.iter().cloned().map(LinearForm::new).collect(),
        });
        Cone {
            dim: self.dim,
            gen,
            con,
            complete: self.complete,
        }
    }

    /// Decides membership of `v`, returning a certificate.
    pub fn member(&self, v: &QVector) -> Result<Membership> {
        v.check_dim(self.dim)?;
        let c = self.completed();
        let con = c.con.as_ref().expect("complete");
        let mut worst: Option<(BigRational, LinearForm)> = None;
        let mut consider = |value: BigRational, form: LinearForm| {
            if value.is_negative() && worst.as_ref().is_none_or(|(w, _)| value < *w) {
                worst = Some((value, form));
            }
        };
        for f in &con.inequalities {
            consider(f.eval(v), f.clone());
        }
        for f in &con.equations {
            let value = f.eval(v);
            if value.is_positive() {
                consider(-value, f.neg());
            } else {
                consider(value, f.clone());
            }
        }
        if let Some((_, violated_form)) = worst {
            return Ok(Membership::Outside { violated_form });
        }
        let gen = c.gen.as_ref().expect("complete");
        let (lam, mu) = lp::conic_combination(&gen.rays, &gen.lines, v)
            .ok_or_else(|| Error::Internal("constraint and generator representations disagree".into()))?;
        let keep = |xs: Vec<BigRational>| -> BTreeMap<usize, BigRational> {
            xs.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
        };
        Ok(Membership::Inside {
            ray_coeffs: keep(lam),
            line_coeffs: keep(mu),
        })
    }

    /// Membership without a certificate.
    pub fn contains(&self, v: &QVector) -> Result<bool> {
        v.check_dim(self.dim)?;
        let c = self.completed();
        Ok(satisfies(c.con.as_ref().expect("complete"), v))
    }

    pub fn is_subset_of(&self, other: &Cone) -> Result<bool> {
        self.check_same_dim(other)?;
        let a = if self.gen.is_some() {
            Cow::Borrowed(self)
        } else {
            Cow::Owned(self.complete())
        };
        let b = if other.con.is_some() {
            Cow::Borrowed(other)
        } else {
            Cow::Owned(other.complete())
        };
        let g = a.gen.as_ref().expect("generators present");
        let h = b.con.as_ref().expect("constraints present");
        let rays_ok = g.rays.iter().all(|r| satisfies(h, r));
        let lines_ok = g.lines.iter().all(|l| {
            h.equations.iter().all(|f| f.eval(l).is_zero()) && h.inequalities.iter().all(|f| f.eval(l).is_zero())
        });
        Ok(rays_ok && lines_ok)
    }

    pub fn equals(&self, other: &Cone) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        self.check_same_dim(other)?;
        let a = self.constraint_rep();
        let b = other.constraint_rep();
        let mut inequalities = a.inequalities.clone();
        inequalities.extend(b.inequalities.iter().cloned());
        let mut equations = a.equations.clone();
        equations.extend(b.equations.iter().cloned());
        Ok(Cone::from_constraints(self.dim, inequalities, equations)?.complete())
    }

    pub fn sum(&self, other: &Cone) -> Result<Cone> {
        self.check_same_dim(other)?;
        let a = self.generator_rep();
        let b = other.generator_rep();
        let mut rays = a.rays.clone();
        rays.extend(b.rays.iter().cloned());
        let mut lines = a.lines.clone();
        lines.extend(b.lines.iter().cloned());
        Ok(Cone::from_generators(self.dim, rays, lines)?.complete())
    }

    /// Image under a linear map.
    pub fn image(&self, map: &LinearMap) -> Result<Cone> {
        if map.source_dim() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: map.source_dim(),
            });
        }
        let g = self.generator_rep();
        let rays = g.rays.iter().map(|r| map.apply(r)).collect::<Result<_>>()?;
        let lines = g.lines.iter().map(|l| map.apply(l)).collect::<Result<_>>()?;
        Ok(Cone::from_generators(map.target_dim(), rays, lines)?.complete())
    }

    /// Basis of the largest linear subspace contained in the cone.
    pub fn lineality(&self) -> Vec<QVector> {
        self.completed().gen.as_ref().expect("complete").lines.clone()
    }

    /// Generator representation, completing if necessary.
    pub fn generator_rep(&self) -> Cow<'_, GeneratorRep> {
        match &self.gen {
            Some(g) => Cow::Borrowed(g),
            None => Cow::Owned(self.complete().gen.expect("complete")),
        }
    }

    /// Constraint representation, completing if necessary.
    pub fn constraint_rep(&self) -> Cow<'_, ConstraintRep> {
        match &self.con {
            Some(c) => Cow::Borrowed(c),
            None => Cow::Owned(self.complete().con.expect("complete")),
        }
    }

    fn check_same_dim(&self, other: &Cone) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimMismatch {
                expected: self.dim,
                found: other.dim,
            })
        }
    }
}

fn satisfies(h: &ConstraintRep, v: &QVector) -> bool {
    h.equations.iter().all(|f| f.eval(v).is_zero()) && h.inequalities.iter().all(|f| !f.eval(v).is_negative())
}

fn ints(vs: &[QVector]) -> Vec<Vec<BigInt>> {
    vs.iter().filter_map(arith::primitive_ints).collect()
}

/// Minimal generators of a cone (`v`) and of its dual (`h`).
struct Both {
    v: dd::Generators,
    h: dd::Generators,
}

/// Primitive RREF basis of the span of `vs`.
fn canonical_basis(vs: &[Vec<BigInt>], dim: usize) -> Vec<QVector> {
    let rows: Vec<QVector> = vs.iter().map(|v| QVector::from_bigints(v)).collect();
    let (red, _) = linalg::rref(&rows, dim);
    red.iter()
        .map(|r| arith::positive_leading(normalize_primitive(r).expect("nonzero RREF row")))
        .collect()
}

/// Projects onto the complement of `span(basis)`, then primitive, sorted, deduplicated.
fn canonical_rays(vs: &[Vec<BigInt>], basis: &[QVector]) -> Vec<QVector> {
    let mut out: Vec<QVector> = vs
        .iter()
        .map(|v| linalg::project_out(&QVector::from_bigints(v), basis))
        .filter_map(|v| normalize_primitive(&v).ok())
        .collect();
    out.sort();
    out.dedup();
    out
}
