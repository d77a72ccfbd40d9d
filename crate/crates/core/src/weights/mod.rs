//! Weight vectors, generator families and weight cones of a stratum.
//!
//! Weights live in `ℚ^𝔹` with coordinates in flat `(cycle, pos)` order. All
//! cones here are saturated rational cones: membership statements are about
//! the cone a family of weights spans, never about the existence of a section
//! of a particular weight.

mod functional;
mod gl2;
mod recipe;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::cone::{Cone, GeneratorRep, QVector};
use crate::error::{Error, Result};
use crate::splitting::{EmbeddingId, SplittingConfig, Stratum};

pub use functional::{
    cone_dtf, explicit_constraints, forced_divisors, functional_lf, functional_lt, functional_window, lift_jt,
    lift_map, minimal_cone, minimal_halfspaces, phi_reduce, reduce_it, reduced_coordinates, reduction_map,
    MinimalVariant, PhiReduction,
};
pub use gl2::{delta_class, gl2_cone, gl2_generators, gl2_product_cone, BiWeight, DeltaClass};
pub use recipe::{f_recipe, section_recipe, FRecipe, FormalMonomial, Section, SectionKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightKind {
    E,
    H,
    B,
}

/// Which generator family to span `𝒟_T` with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    G,
    GPrime,
}

pub(crate) fn power(p: u64, n: usize) -> BigRational {
    BigRational::from_integer(Pow::pow(BigInt::from(p), n))
}

fn unit(config: &SplittingConfig, b: EmbeddingId) -> QVector {
    QVector::unit(config.d(), config.flat(b))
}

/// `e_β`, `h_β = −e_β + p·e_{σ^{-1}β}` or `b_β = e_β + p·e_{σ^{-1}β}`.
pub fn weight_basis(config: &SplittingConfig, kind: WeightKind, b: EmbeddingId) -> Result<QVector> {
    config.validate(b)?;
    let e = unit(config, b);
    let prev = unit(config, config.sigma(b, -1));
    let p = power(config.p(), 1);
    Ok(match kind {
        WeightKind::E => e,
        WeightKind::H => {
            let mut v = e.neg();
            v.add_scaled(&p, &prev);
            v
        }
        WeightKind::B => {
            let mut v = e;
            v.add_scaled(&p, &prev);
            v
        }
    })
}

/// The `n ∈ (0, f]` with `σ^n β′ = β`.
pub fn pair_exponent(config: &SplittingConfig, b: EmbeddingId, bp: EmbeddingId) -> Result<usize> {
    config.validate(b)?;
    config.validate(bp)?;
    if b.cycle != bp.cycle {
        return Err(Error::DifferentCycles(b, bp));
    }
    let f = config.cycle_len(b.cycle);
    let n = (b.pos + f - bp.pos) % f;
    Ok(if n == 0 { f } else { n })
}

/// `h_β^{β′} = −e_β + p^n e_{β′}` or `b_β^{β′} = e_β + p^n e_{β′}`, `σ^n β′ = β`.
pub fn weight_pair(config: &SplittingConfig, kind: WeightKind, b: EmbeddingId, bp: EmbeddingId) -> Result<QVector> {
    let n = pair_exponent(config, b, bp)?;
    let mut v = match kind {
        WeightKind::H => unit(config, b).neg(),
        WeightKind::B => unit(config, b),
        WeightKind::E => return Err(Error::InvalidPair("pair weights are of kind h or b".into())),
    };
    v.add_scaled(&power(config.p(), n), &unit(config, bp));
    Ok(v)
}

/// `f_β(T)`: `h^β_{σ^nβ}` off `T̃`, `−b^β_{σ^nβ}` on `T̃ − T`, with the
/// extended `n_β`.
pub fn f_weight(t: &Stratum, b: EmbeddingId) -> Result<QVector> {
    let config = t.config();
    config.validate(b)?;
    if t.contains(b) {
        return Err(Error::InStratum(b));
    }
    let n = t.n(b, true)?;
    let target = config.sigma(b, n as i64);
    let kind = if t.in_tilde(b) { WeightKind::B } else { WeightKind::H };
    let w = weight_pair(config, kind, target, b)?;
    Ok(if t.in_tilde(b) { w.neg() } else { w })
}

/// Whether `β`'s cycle has `T̃_𝔭 = 𝔹_𝔭` without `T_𝔭 = 𝔹_𝔭`.
pub fn is_degenerate_cycle(t: &Stratum, cycle: usize) -> bool {
    let cm = t.config().cycle_mask(cycle);
    t.tables().tilde & cm == cm && !t.is_full_cycle(cycle)
}

fn b_lines(t: &Stratum) -> Vec<QVector> {
    t.members()
        .into_iter()
        .map(|b| weight_basis(t.config(), WeightKind::B, b).expect("valid"))
        .collect()
}

/// `ℋ(T_𝔭) = 𝔹_𝔭 − T_𝔭`.
pub fn family_h(t: &Stratum, cycle: usize) -> Vec<EmbeddingId> {
    t.config().cycle_embeddings(cycle).filter(|&b| !t.contains(b)).collect()
}

/// `𝒯(T_𝔭) = (𝔹_𝔭 − T̃_𝔭) ∪ σ(T̃_𝔭 − T_𝔭)`, in position order.
pub fn family_t(t: &Stratum, cycle: usize) -> Vec<EmbeddingId> {
    let config = t.config();
    let mut out: Vec<EmbeddingId> = config
        .cycle_embeddings(cycle)
        .filter(|&b| !t.in_tilde(b))
        .chain(
            config
                .cycle_embeddings(cycle)
                .filter(|&b| t.in_tilde(b) && !t.contains(b))
                .map(|b| config.sigma(b, 1)),
        )
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `𝒢(T)`: rays `h_β^{β′}` for `β ∈ ℋ`, `β′ ∈ 𝒯` in the same cycle; lines `b_β`, `β ∈ T`.
pub fn generators_g(t: &Stratum) -> GeneratorRep {
    let config = t.config();
    let mut rays = Vec::new();
    for c in 0..config.num_cycles() {
        let targets = family_t(t, c);
        for b in family_h(t, c) {
            for &bp in &targets {
                rays.push(weight_pair(config, WeightKind::H, b, bp).expect("same cycle"));
            }
        }
    }
    GeneratorRep {
        rays,
        lines: b_lines(t),
    }
}

/// `𝒢′(T)`: one ray per `β ∉ T` (`f_β(T)`, or `−e_β` on degenerate cycles)
/// and lines `b_β`, `β ∈ T`.
pub fn generators_gprime(t: &Stratum) -> GeneratorRep {
    let config = t.config();
    let rays = t
        .complement()
        .into_iter()
        .map(|b| {
            if is_degenerate_cycle(t, b.cycle) {
                unit(config, b).neg()
            } else {
                f_weight(t, b).expect("b outside T")
            }
        })
        .collect();
    GeneratorRep {
        rays,
        lines: b_lines(t),
    }
}

/// `𝒟_T` spanned by the chosen family, completed.
pub fn cone_d(t: &Stratum, family: Family) -> Cone {
    let g = match family {
        Family::G => generators_g(t),
        Family::GPrime => generators_gprime(t),
    };
    Cone::from_generators(t.config().d(), g.rays, g.lines)
        .expect("weights have dimension d")
        .complete()
}

/// `⟨h_β : β ∉ T⟩ + ⟨±b_β : β ∈ T⟩`.
pub fn hasse_type_cone(t: &Stratum) -> Cone {
    let config = t.config();
    let rays = t
        .complement()
        .into_iter()
        .map(|b| weight_basis(config, WeightKind::H, b).expect("valid"))
        .collect();
    Cone::from_generators(config.d(), rays, b_lines(t))
        .expect("weights have dimension d")
        .complete()
}

/// The cone spanned by every `h_β`.
pub fn hasse_cone(config: &SplittingConfig) -> Cone {
    hasse_type_cone(&Stratum::empty(config))
}

/// `−(1 + p^f) e_β`, the closed form of `f_β(T)` on degenerate cycles.
pub fn degenerate_f_closed_form(config: &SplittingConfig, b: EmbeddingId) -> QVector {
    let f = config.cycle_len(b.cycle);
    unit(config, b).scale(&-(BigRational::one() + power(config.p(), f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::LinearForm;

    fn cfg(p: u64, cycles: &[usize]) -> SplittingConfig {
        SplittingConfig::new(p, cycles.to_vec()).unwrap()
    }

    fn b(i: usize) -> EmbeddingId {
        EmbeddingId::new(0, i)
    }

    fn t(config: &SplittingConfig, pos: &[usize]) -> Stratum {
        Stratum::new(config, pos.iter().map(|&i| b(i))).unwrap()
    }

    fn v(xs: &[i64]) -> QVector {
        QVector::from_ints(xs)
    }

    fn sorted(mut xs: Vec<QVector>) -> Vec<QVector> {
        xs.sort();
        xs
    }

    #[test]
    fn basis_weights() {
        let a = cfg(3, &[2]);
        assert_eq!(weight_basis(&a, WeightKind::H, b(0)).unwrap(), v(&[-1, 3]));
        assert_eq!(weight_basis(&a, WeightKind::B, b(1)).unwrap(), v(&[3, 1]));
        let d = cfg(5, &[1, 1]);
        let h = weight_basis(&d, WeightKind::H, EmbeddingId::new(1, 0)).unwrap();
        assert_eq!(h, v(&[0, 4]));
    }

    #[test]
    fn pair_weights() {
        let bb = cfg(2, &[3]);
        assert_eq!(weight_pair(&bb, WeightKind::H, b(2), b(0)).unwrap(), v(&[4, 0, -1]));
        assert_eq!(weight_pair(&bb, WeightKind::H, b(2), b(2)).unwrap(), v(&[0, 0, 7]));
        let a = cfg(3, &[2]);
        assert_eq!(weight_pair(&a, WeightKind::B, b(0), b(1)).unwrap(), v(&[1, 3]));
        let two = cfg(3, &[1, 1]);
        assert_eq!(
            weight_pair(&two, WeightKind::H, EmbeddingId::new(0, 0), EmbeddingId::new(1, 0)),
            Err(Error::DifferentCycles(EmbeddingId::new(0, 0), EmbeddingId::new(1, 0)))
        );
    }

    #[test]
    fn f_weights() {
        let bb = cfg(2, &[3]);
        let s = t(&bb, &[1]);
        assert_eq!(f_weight(&s, b(2)).unwrap(), v(&[0, 0, 7]));
        assert_eq!(f_weight(&s, b(0)).unwrap(), v(&[-4, 0, -1]));
        assert_eq!(f_weight(&s, b(1)), Err(Error::InStratum(b(1))));
        let a = cfg(3, &[2]);
        let s = t(&a, &[1]);
        assert_eq!(f_weight(&s, b(0)).unwrap(), v(&[-10, 0]));
        assert_eq!(f_weight(&s, b(0)).unwrap(), degenerate_f_closed_form(&a, b(0)));
    }

    #[test]
    fn families() {
        let a = cfg(3, &[2]);
        let g = generators_g(&Stratum::empty(&a));
        assert_eq!(
            sorted(g.rays),
            sorted(vec![v(&[8, 0]), v(&[-1, 3]), v(&[0, 8]), v(&[3, -1])])
        );
        assert!(g.lines.is_empty());

        let g = generators_g(&t(&a, &[1]));
        assert_eq!(g.rays, vec![v(&[-1, 3])]);
        assert_eq!(g.lines, vec![v(&[3, 1])]);

        let g = generators_g(&Stratum::all(&a));
        assert!(g.rays.is_empty());
        assert_eq!(g.lines.len(), 2);
    }

    #[test]
    fn optimal_families() {
        let bb = cfg(2, &[3]);
        let g = generators_gprime(&t(&bb, &[1]));
        assert_eq!(g.rays, vec![v(&[-4, 0, -1]), v(&[0, 0, 7])]);
        assert_eq!(g.lines, vec![v(&[2, 1, 0])]);

        let a = cfg(3, &[2]);
        let g = generators_gprime(&t(&a, &[1]));
        assert_eq!(g.rays, vec![v(&[-1, 0])]);
        assert_eq!(g.lines, vec![v(&[3, 1])]);

        let g = generators_gprime(&Stratum::empty(&a));
        assert_eq!(g.rays, vec![v(&[3, -1]), v(&[-1, 3])]);
        assert!(cone_d(&Stratum::empty(&a), Family::GPrime)
            .equals(&hasse_cone(&a))
            .unwrap());
    }

    #[test]
    fn d_cones() {
        let a = cfg(3, &[2]);
        let c = cone_d(&t(&a, &[1]), Family::G);
        let con = c.constraints().unwrap();
        assert_eq!(con.inequalities, vec![LinearForm::from_ints(&[-1, 3])]);
        assert!(con.equations.is_empty());
        assert_eq!(c.lineality(), vec![v(&[3, 1])]);

        let cc = cfg(2, &[4]);
        let c = cone_d(&t(&cc, &[0, 1, 2]), Family::GPrime);
        let con = c.constraints().unwrap();
        assert_eq!(con.inequalities, vec![LinearForm::from_ints(&[2, -4, 8, -1])]);
        assert_eq!(c.lineality().len(), 3);

        for config in [cfg(2, &[3]), cfg(3, &[2, 1]), cfg(5, &[1, 1, 1])] {
            assert!(cone_d(&Stratum::all(&config), Family::G)
                .equals(&Cone::full(config.d()))
                .unwrap());
        }
    }
}
