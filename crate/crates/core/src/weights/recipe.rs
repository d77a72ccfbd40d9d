//! Formal monomials in the sections `h_τ(T⁰)`, `b_τ(T⁰)` and the recipes that
//! produce `h_β^{β′}(T)` and `f_β(T)` from them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};

use super::gl2::{delta_class, DeltaClass};
use super::{family_h, family_t, pair_exponent, weight_basis, WeightKind};
use crate::cone::QVector;
use crate::error::{Error, Result};
use crate::splitting::{EmbeddingId, Stratum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SectionKind {
    H,
    B,
}

/// `h_τ(T⁰)` or `b_τ(T⁰)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub kind: SectionKind,
    pub at: EmbeddingId,
    pub base: Stratum,
}

impl Section {
    pub fn label(&self) -> String {
        let k = match self.kind {
            SectionKind::H => "h",
            SectionKind::B => "b",
        };
        format!("{k}_{}", self.at)
    }

    pub fn weight(&self) -> QVector {
        let kind = match self.kind {
            SectionKind::H => WeightKind::H,
            SectionKind::B => WeightKind::B,
        };
        weight_basis(self.base.config(), kind, self.at).expect("valid embedding")
    }
}

/// A product of sections with integer exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalMonomial {
    pub factors: Vec<(Section, BigInt)>,
}

impl FormalMonomial {
    /// Multiplies in `s^e`, merging with an equal label.
    pub fn push(&mut self, s: Section, e: BigInt) {
        if let Some((_, x)) = self.factors.iter_mut().find(|(t, _)| *t == s) {
            *x += e;
        } else {
            self.factors.push((s, e));
        }
        self.factors.retain(|(_, x)| !x.is_zero());
    }

    /// `Σ exponent · weight(section)`.
    pub fn weight(&self, d: usize) -> QVector {
        let mut w = QVector::zeros(d);
        for (s, e) in &self.factors {
            w.add_scaled(&BigRational::from_integer(e.clone()), &s.weight());
        }
        w
    }

    /// Negative exponents occur only on `b`-sections.
    pub fn is_well_formed(&self) -> bool {
        self.factors
            .iter()
            .all(|(s, e)| s.kind == SectionKind::B || !e.is_negative())
    }
}

impl fmt::Display for FormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{}({{{}}})^{}", s.label(), s.base, e)?;
        }
        Ok(())
    }
}

/// Monomial of weight `h_β^{β′}` for `β ∈ ℋ(T_𝔭)`, `β′ ∈ 𝒯(T_𝔭)`.
pub fn section_recipe(t: &Stratum, b: EmbeddingId, bp: EmbeddingId) -> Result<FormalMonomial> {
    let config = t.config();
    let m = pair_exponent(config, b, bp)?;
    if !family_h(t, b.cycle).contains(&b) {
        return Err(Error::InvalidPair(format!("{b} lies in T, not in 𝔹 − T")));
    }
    if !family_t(t, bp.cycle).contains(&bp) {
        return Err(Error::InvalidPair(format!("{bp} is not in (𝔹 − T̃) ∪ σ(T̃ − T)")));
    }
    let mut mask = t.mask();
    for j in 1..m {
        let x = config.sigma(b, -(j as i64));
        if t.in_tilde(x) {
            mask |= 1 << config.flat(x);
        }
    }
    let base = Stratum::from_mask(config, mask)?;
    let p = BigInt::from(config.p());
    let mut out = FormalMonomial::default();
    for i in 0..m {
        let tau = config.sigma(b, -(i as i64));
        let m_tau = (0..config.cycle_len(b.cycle))
            .find(|&j| !base.contains(config.sigma(tau, j as i64)))
            .expect("β itself lies outside T⁰");
        let mut e: BigInt = Pow::pow(&p, i);
        if m_tau % 2 == 1 {
            e = -e;
        }
        let kind = if base.contains(tau) {
            SectionKind::B
        } else {
            SectionKind::H
        };
        out.push(
            Section {
                kind,
                at: tau,
                base: base.clone(),
            },
            e,
        );
    }
    Ok(out)
}

/// A monomial for `f_β(T)` with its `δ`-weight tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FRecipe {
    pub monomial: FormalMonomial,
    pub delta: DeltaClass,
}

/// `h^{β}_{σ^nβ}(T)` off `T̃`; `h^{σβ}_{σ^nβ}(T) · b_{σβ}(T)^{−p^{n−1}}` on `T̃ − T`,
/// with the extended `n_β`.
pub fn f_recipe(t: &Stratum, b: EmbeddingId) -> Result<FRecipe> {
    let config = t.config();
    config.validate(b)?;
    if t.contains(b) {
        return Err(Error::InStratum(b));
    }
    let n = t.n(b, true)?;
    let target = config.sigma(b, n as i64);
    if !t.in_tilde(b) {
        return Ok(FRecipe {
            monomial: section_recipe(t, target, b)?,
            delta: DeltaClass::zero(config),
        });
    }
    let next = config.sigma(b, 1);
    let mut monomial = section_recipe(t, target, next)?;
    let e: BigInt = Pow::pow(BigInt::from(config.p()), n - 1);
    monomial.push(
        Section {
            kind: SectionKind::B,
            at: next,
            base: t.clone(),
        },
        -e,
    );
    let delta = delta_class(config, &QVector::unit(config.d(), config.flat(target)))?;
    Ok(FRecipe { monomial, delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitting::SplittingConfig;
    use crate::weights::{f_weight, weight_pair};

    fn b(i: usize) -> EmbeddingId {
        EmbeddingId::new(0, i)
    }

    fn t(config: &SplittingConfig, pos: &[usize]) -> Stratum {
        Stratum::new(config, pos.iter().map(|&i| b(i))).unwrap()
    }

    #[test]
    fn single_hasse_factor() {
        let bb = SplittingConfig::new(2, vec![3]).unwrap();
        let s = Stratum::empty(&bb);
        let r = section_recipe(&s, b(1), b(0)).unwrap();
        assert_eq!(r.factors.len(), 1);
        assert_eq!(r.factors[0].0.kind, SectionKind::H);
        assert_eq!(r.factors[0].1, BigInt::from(1));
        assert_eq!(r.weight(3), weight_basis(&bb, WeightKind::H, b(1)).unwrap());
    }

    #[test]
    fn recipes_on_three_cycle() {
        let bb = SplittingConfig::new(2, vec![3]).unwrap();
        let s = t(&bb, &[1]);
        let r = section_recipe(&s, b(0), b(1)).unwrap();
        assert_eq!(r.weight(3), QVector::from_ints(&[-1, 4, 0]));
        assert_eq!(r.to_string(), "h_0.0({0.1})^1 * h_0.2({0.1})^2");

        let r = section_recipe(&s, b(2), b(2)).unwrap();
        assert_eq!(r.weight(3), QVector::from_ints(&[0, 0, 7]));
        assert_eq!(
            r.to_string(),
            "h_0.2({0.0,0.1})^1 * b_0.1({0.0,0.1})^-2 * b_0.0({0.0,0.1})^4"
        );
        assert!(r.is_well_formed());

        assert!(matches!(section_recipe(&s, b(2), b(0)), Err(Error::InvalidPair(_))));
        assert!(matches!(section_recipe(&s, b(1), b(2)), Err(Error::InvalidPair(_))));
    }

    #[test]
    fn f_recipes() {
        let bb = SplittingConfig::new(2, vec![3]).unwrap();
        let s = t(&bb, &[1]);
        let r = f_recipe(&s, b(2)).unwrap();
        assert_eq!(r.monomial.weight(3), f_weight(&s, b(2)).unwrap());
        assert_eq!(r.monomial, section_recipe(&s, b(2), b(2)).unwrap());
        assert!(r.delta.is_zero());

        let r = f_recipe(&s, b(0)).unwrap();
        assert_eq!(r.monomial.weight(3), QVector::from_ints(&[-4, 0, -1]));
        assert_eq!(r.delta, delta_class(&bb, &QVector::from_ints(&[0, 0, 1])).unwrap());

        let a = SplittingConfig::new(3, vec![2]).unwrap();
        let s = t(&a, &[1]);
        let r = f_recipe(&s, b(0)).unwrap();
        assert_eq!(r.monomial.weight(2), QVector::from_ints(&[-10, 0]));
        assert_eq!(r.delta, delta_class(&a, &QVector::from_ints(&[1, 0])).unwrap());
    }

    #[test]
    fn recipe_matches_pair_on_all_pairs() {
        let c = SplittingConfig::new(3, vec![5]).unwrap();
        for mask in 0u64..32 {
            let s = Stratum::from_mask(&c, mask).unwrap();
            for x in family_h(&s, 0) {
                for y in family_t(&s, 0) {
                    let r = section_recipe(&s, x, y).unwrap();
                    assert!(r.is_well_formed());
                    assert_eq!(r.weight(5), weight_pair(&c, WeightKind::H, x, y).unwrap());
                }
            }
        }
    }
}
