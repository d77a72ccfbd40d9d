//! Window functionals, explicit half-space descriptions, the reduction
//! `i_T`, divisibility cones and minimal cones.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::{f_weight, power, weight_basis, WeightKind};
use crate::cone::{Cone, ConstraintRep, LinearForm, LinearMap, QVector};
use crate::error::{Error, Result};
use crate::splitting::{EmbeddingId, SplittingConfig, Stratum};

/// `L^ε[β, β′](κ) = Σ_{0≤i≤n} ε(σ^iβ) p^i k_{σ^iβ}` with `β′ = σ^nβ`,
/// `0 ≤ n < f`. `eps` is indexed by flat position.
pub fn functional_window(config: &SplittingConfig, eps: &[i8], b: EmbeddingId, bp: EmbeddingId) -> Result<LinearForm> {
    config.validate(b)?;
    config.validate(bp)?;
    if b.cycle != bp.cycle {
        return Err(Error::DifferentCycles(b, bp));
    }
    if eps.len() != config.d() {
        return Err(Error::DimMismatch {
            expected: config.d(),
            found: eps.len(),
        });
    }
    let f = config.cycle_len(b.cycle);
    let n = (bp.pos + f - b.pos) % f;
    let mut coeffs = QVector::zeros(config.d());
    for i in 0..=n {
        let at = config.sigma(b, i as i64);
        let k = config.flat(at);
        coeffs.set(k, power(config.p(), i) * BigRational::from_integer(eps[k].into()));
    }
    Ok(LinearForm::new(coeffs))
}

/// `L^ε[β]`, the window of full length ending at `σ^{-1}β`.
fn full_window(config: &SplittingConfig, eps: &[i8], b: EmbeddingId) -> LinearForm {
    functional_window(config, eps, b, config.sigma(b, -1)).expect("valid window")
}

/// `L_{T,β}` for `β ∉ T`.
pub fn functional_lt(t: &Stratum, b: EmbeddingId) -> Result<LinearForm> {
    let config = t.config();
    config.validate(b)?;
    if t.contains(b) {
        return Err(Error::InStratum(b));
    }
    let eps = &t.tables().eps;
    let mu = t.mu(b)? as i64;
    if t.in_tilde(b) {
        functional_window(config, eps, b, config.sigma(b, mu - 1))
    } else {
        Ok(full_window(config, eps, config.sigma(b, mu)))
    }
}

/// `{κ : L_{T,β}(κ) ≥ 0 for all β ∉ T}`.
pub fn explicit_constraints(t: &Stratum) -> ConstraintRep {
    ConstraintRep {
        inequalities: t
            .complement()
            .into_iter()
            .map(|b| functional_lt(t, b).expect("b outside T"))
            .collect(),
        equations: vec![],
    }
}

/// The coordinates of `ℚ^{𝔹−T}`, in `(cycle, pos)` order.
pub fn reduced_coordinates(t: &Stratum) -> Vec<EmbeddingId> {
    t.complement()
}

/// The matrix of `i_T`: `ℓ_β = Σ_{i<μ_β} (−p)^i k_{σ^iβ}`.
pub fn reduction_map(t: &Stratum) -> LinearMap {
    let config = t.config();
    let rows = reduced_coordinates(t)
        .into_iter()
        .map(|b| {
            let mut row = QVector::zeros(config.d());
            let mu = t.tables().mu[config.flat(b)];
            for i in 0..mu {
                let mut c = power(config.p(), i);
                if i % 2 == 1 {
                    c = -c;
                }
                row.set(config.flat(config.sigma(b, i as i64)), c);
            }
            row
        })
        .collect();
    LinearMap::new(config.d(), rows).expect("rows of length d")
}

pub fn reduce_it(t: &Stratum, kappa: &QVector) -> Result<QVector> {
    reduction_map(t).apply(kappa)
}

/// `j_T`: the inclusion `ℚ^{𝔹−T} → ℚ^𝔹`.
pub fn lift_jt(t: &Stratum, ell: &QVector) -> Result<QVector> {
    let coords = reduced_coordinates(t);
    ell.check_dim(coords.len())?;
    let config = t.config();
    let mut out = QVector::zeros(config.d());
    for (x, b) in ell.iter().zip(coords) {
        out.set(config.flat(b), x.clone());
    }
    Ok(out)
}

/// The matrix of `j_T`.
pub fn lift_map(t: &Stratum) -> LinearMap {
    let config = t.config();
    let coords = reduced_coordinates(t);
    let rows = (0..config.d())
        .map(|i| {
            let mut row = QVector::zeros(coords.len());
            if let Some(j) = coords.iter().position(|&b| config.flat(b) == i) {
                row.set(j, BigRational::from_integer(1.into()));
            }
            row
        })
        .collect();
    LinearMap::new(coords.len(), rows).expect("rows of reduced length")
}

fn check_admissible(t: &Stratum, b: EmbeddingId) -> Result<()> {
    t.config().validate(b)?;
    if t.is_admissible(b) {
        Ok(())
    } else {
        Err(Error::NotAdmissible(b))
    }
}

/// `σ^{n_β}β` for admissible `β`.
fn partner(t: &Stratum, b: EmbeddingId) -> EmbeddingId {
    let n = t.n(b, false).expect("admissible implies n defined");
    t.config().sigma(b, n as i64)
}

/// `ε_T` with the sign flipped on `β, …, σ^{μ_β−1}β`.
fn eps_f(t: &Stratum, b: EmbeddingId) -> Vec<i8> {
    let config = t.config();
    let mut eps = t.tables().eps.clone();
    let mu = t.tables().mu[config.flat(b)];
    for i in 0..mu {
        let k = config.flat(config.sigma(b, i as i64));
        eps[k] = -eps[k];
    }
    eps
}

/// `L_{T,f_β,τ}` for `β ∈ 𝔹(T)` and `τ ∉ T ∪ {σ^{n_β}β}`.
pub fn functional_lf(t: &Stratum, b: EmbeddingId, tau: EmbeddingId) -> Result<LinearForm> {
    check_admissible(t, b)?;
    let config = t.config();
    config.validate(tau)?;
    if t.contains(tau) {
        return Err(Error::InStratum(tau));
    }
    let bp = partner(t, b);
    if tau == bp {
        return Err(Error::InvalidPair(format!(
            "{tau} is the partner σ^n of {b} and carries no functional"
        )));
    }
    if tau.cycle != b.cycle {
        return functional_lt(t, tau);
    }
    let eps = eps_f(t, b);
    let mu = |x: EmbeddingId| t.tables().mu[config.flat(x)] as i64;
    let beta_tilde = config.sigma(bp, mu(bp));
    match (tau == b, t.in_tilde(tau)) {
        (false, false) => Ok(full_window(config, &eps, config.sigma(tau, mu(tau)))),
        (false, true) => functional_lt(t, tau),
        (true, false) => functional_window(config, &eps, b, config.sigma(beta_tilde, -1)),
        (true, true) => Ok(full_window(config, &eps, beta_tilde)),
    }
}

/// `𝒟_{T,f_β} = {κ : L_{T,f_β,τ}(κ) ≥ 0 for every admissible τ}`, as constraints.
pub fn cone_dtf(t: &Stratum, b: EmbeddingId) -> Result<Cone> {
    check_admissible(t, b)?;
    let bp = partner(t, b);
    let forms = t
        .complement()
        .into_iter()
        .filter(|&tau| tau != bp)
        .map(|tau| functional_lf(t, b, tau))
        .collect::<Result<Vec<_>>>()?;
    Cone::from_constraints(t.config().d(), forms, vec![])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MinimalVariant {
    /// `i_T(𝒞_T ∩ ⋂_β 𝒟_{T,f_β})`.
    Min,
    /// `i_T` of `𝒞_T` cut by the diagonal forms `L_{T,f_β,β}` only.
    Min0,
}

/// The minimal cone in `ℚ^{𝔹−T}`, completed.
pub fn minimal_cone(t: &Stratum, variant: MinimalVariant) -> Result<Cone> {
    let d = t.config().d();
    let mut forms = explicit_constraints(t).inequalities;
    for b in t.admissible_set() {
        match variant {
            MinimalVariant::Min => {
                let c = cone_dtf(t, b)?;
                forms.extend(c.constraints().expect("constraint cone").inequalities.iter().cloned());
            }
            MinimalVariant::Min0 => forms.push(functional_lf(t, b, b)?),
        }
    }
    let cut = Cone::from_constraints(d, forms, vec![])?.complete();
    for b in t.members() {
        let line = weight_basis(t.config(), WeightKind::B, b)?;
        if !cut.contains(&line)? || !cut.contains(&line.neg())? {
            return Err(Error::Internal(format!(
                "±b_{b} is not in the cut cone, so its image is not the reduced cone"
            )));
        }
    }
    cut.image(&reduction_map(t))
}

/// `{ℓ : p^{n_β} ℓ_{σ^{n_β}β} ≥ ℓ_β for all β ∉ T}` in `ℚ^{𝔹−T}`; only
/// meaningful (and only returned) when `T̃ = T`.
pub fn minimal_halfspaces(t: &Stratum) -> Option<Cone> {
    if t.tables().tilde != t.mask() {
        return None;
    }
    let config = t.config();
    let coords = reduced_coordinates(t);
    let index: BTreeMap<EmbeddingId, usize> = coords.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let forms = coords
        .iter()
        .map(|&b| {
            let n = t.n(b, false).expect("T̃ = T leaves n defined off T");
            let target = config.sigma(b, n as i64);
            let mut row = QVector::zeros(coords.len());
            row.set(index[&b], BigRational::from_integer((-1).into()));
            let cur = row[index[&target]].clone();
            row.set(index[&target], cur + power(config.p(), n));
            LinearForm::new(row)
        })
        .collect();
    Some(
        Cone::from_constraints(coords.len(), forms, vec![])
            .expect("forms of reduced length")
            .complete(),
    )
}

/// `{β ∈ 𝔹(T) : κ ∉ 𝒟_{T,f_β}}`.
pub fn forced_divisors(t: &Stratum, kappa: &QVector) -> Result<Vec<EmbeddingId>> {
    kappa.check_dim(t.config().d())?;
    let mut out = Vec::new();
    for b in t.admissible_set() {
        let c = cone_dtf(t, b)?;
        let violated = c
            .constraints()
            .expect("constraint cone")
            .inequalities
            .iter()
            .any(|f| f.eval(kappa) < BigRational::zero());
        if violated {
            out.push(b);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiReduction {
    /// `κ − Σ a_β f_β(T)`.
    pub kappa0: QVector,
    /// `i_T(κ0)`.
    pub ell: QVector,
    pub kappa0_in_cone: bool,
    pub ell_in_minimal: bool,
}

/// Strips `Σ a_β f_β(T)` from `κ` and reduces.
pub fn phi_reduce(t: &Stratum, kappa: &QVector, a: &BTreeMap<EmbeddingId, u64>) -> Result<PhiReduction> {
    let config = t.config();
    kappa.check_dim(config.d())?;
    let mut kappa0 = kappa.clone();
    for (&b, &k) in a {
        let f = f_weight(t, b)?;
        kappa0.add_scaled(&-BigRational::from_integer(k.into()), &f);
    }
    let ell = reduce_it(t, &kappa0)?;
    let c_t = Cone::from_constraints(config.d(), explicit_constraints(t).inequalities, vec![])?;
    let kappa0_in_cone = c_t.contains(&kappa0)?;
    let ell_in_minimal = minimal_cone(t, MinimalVariant::Min)?.contains(&ell)?;
    Ok(PhiReduction {
        kappa0,
        ell,
        kappa0_in_cone,
        ell_in_minimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{cone_d, Family};

    fn cfg(p: u64, cycles: &[usize]) -> SplittingConfig {
        SplittingConfig::new(p, cycles.to_vec()).unwrap()
    }

    fn b(i: usize) -> EmbeddingId {
        EmbeddingId::new(0, i)
    }

    fn t(config: &SplittingConfig, pos: &[usize]) -> Stratum {
        Stratum::new(config, pos.iter().map(|&i| b(i))).unwrap()
    }

    fn form(xs: &[i64]) -> LinearForm {
        LinearForm::from_ints(xs)
    }

    fn v(xs: &[i64]) -> QVector {
        QVector::from_ints(xs)
    }

    fn halfspaces(c: &Cone) -> Vec<LinearForm> {
        c.completed().constraints().unwrap().inequalities.clone()
    }

    #[test]
    fn windows() {
        let a = cfg(3, &[2]);
        assert_eq!(functional_window(&a, &[1, 1], b(1), b(0)).unwrap(), form(&[3, 1]));
        let bb = cfg(2, &[3]);
        let s = t(&bb, &[1]);
        let eps = &s.tables().eps;
        assert_eq!(full_window(&bb, eps, b(0)), form(&[-1, 2, 4]));
        assert_eq!(functional_window(&bb, eps, b(1), b(1)).unwrap(), form(&[0, 1, 0]));
    }

    #[test]
    fn lt_functionals() {
        let a = cfg(3, &[2]);
        assert_eq!(functional_lt(&Stratum::empty(&a), b(0)).unwrap(), form(&[3, 1]));
        let bb = cfg(2, &[3]);
        let s = t(&bb, &[1]);
        assert_eq!(functional_lt(&s, b(0)).unwrap(), form(&[-1, 2, 0]));
        assert_eq!(functional_lt(&s, b(2)).unwrap(), form(&[-1, 2, 4]));
        assert_eq!(functional_lt(&s, b(1)), Err(Error::InStratum(b(1))));
        let cc = cfg(2, &[4]);
        assert_eq!(functional_lt(&t(&cc, &[0, 1, 2]), b(3)).unwrap(), form(&[2, -4, 8, -1]));
    }

    #[test]
    fn explicit() {
        let a = cfg(3, &[2]);
        assert_eq!(
            explicit_constraints(&Stratum::empty(&a)).inequalities,
            vec![form(&[3, 1]), form(&[1, 3])]
        );
        assert!(explicit_constraints(&Stratum::all(&a)).inequalities.is_empty());
        let bb = cfg(2, &[3]);
        let s = t(&bb, &[1]);
        let c = Cone::from_constraints(3, explicit_constraints(&s).inequalities, vec![]).unwrap();
        assert!(c.equals(&cone_d(&s, Family::GPrime)).unwrap());
    }

    #[test]
    fn reduction() {
        let bb = cfg(2, &[3]);
        let s = t(&bb, &[1]);
        assert_eq!(reduce_it(&s, &v(&[5, 7, 11])).unwrap(), v(&[5 - 14, 11]));
        let b1 = weight_basis(&bb, WeightKind::B, b(1)).unwrap();
        assert!(reduce_it(&s, &b1).unwrap().is_zero());
        assert_eq!(lift_jt(&s, &v(&[4, 9])).unwrap(), v(&[4, 0, 9]));
        let e = Stratum::empty(&bb);
        assert_eq!(reduce_it(&e, &v(&[1, 2, 3])).unwrap(), v(&[1, 2, 3]));
    }

    #[test]
    fn divisibility_functionals() {
        let a = cfg(3, &[2]);
        let e = Stratum::empty(&a);
        assert_eq!(functional_lf(&e, b(0), b(0)).unwrap(), form(&[-1, 3]));
        assert_eq!(halfspaces(&cone_dtf(&e, b(0)).unwrap()), vec![form(&[-1, 3])]);

        let bb = cfg(2, &[3]);
        let s = t(&bb, &[1]);
        assert_eq!(functional_lf(&s, b(0), b(0)).unwrap(), form(&[1, -2, 4]));
        assert_eq!(halfspaces(&cone_dtf(&s, b(0)).unwrap()), vec![form(&[1, -2, 4])]);
        assert!(matches!(functional_lf(&s, b(0), b(2)), Err(Error::InvalidPair(_))));
        assert_eq!(cone_dtf(&s, b(2)).unwrap_err(), Error::NotAdmissible(b(2)));

        let f0 = f_weight(&s, b(0)).unwrap();
        assert_eq!(
            functional_lf(&s, b(0), b(0)).unwrap().eval(&f0),
            BigRational::from_integer((-8).into())
        );
    }

    #[test]
    fn cross_cycle_forms_are_unchanged() {
        let c = cfg(2, &[3, 2]);
        let s = Stratum::new(&c, [EmbeddingId::new(0, 1)]).unwrap();
        let tau = EmbeddingId::new(1, 0);
        assert_eq!(functional_lf(&s, b(0), tau).unwrap(), functional_lt(&s, tau).unwrap());
    }

    #[test]
    fn minimal_cones() {
        let a = cfg(3, &[2]);
        let m = minimal_cone(&Stratum::empty(&a), MinimalVariant::Min).unwrap();
        assert_eq!(halfspaces(&m), vec![form(&[-1, 3]), form(&[3, -1])]);

        let bb = cfg(2, &[3]);
        let m = minimal_cone(&t(&bb, &[1]), MinimalVariant::Min).unwrap();
        assert_eq!(halfspaces(&m), vec![form(&[-1, 0]), form(&[1, 4])]);

        let m = minimal_cone(&Stratum::all(&a), MinimalVariant::Min).unwrap();
        assert_eq!(m.dim(), 0);

        let e = Stratum::empty(&a);
        assert!(minimal_cone(&e, MinimalVariant::Min)
            .unwrap()
            .equals(&minimal_halfspaces(&e).unwrap())
            .unwrap());
    }

    #[test]
    fn forced() {
        let bb = cfg(2, &[3]);
        let s = t(&bb, &[1]);
        assert_eq!(forced_divisors(&s, &v(&[-1, 0, 0])).unwrap(), vec![b(0)]);
        assert_eq!(forced_divisors(&s, &v(&[-4, 0, -1])).unwrap(), vec![b(0)]);
        assert!(forced_divisors(&s, &v(&[0, 0, 0])).unwrap().is_empty());
    }

    #[test]
    fn phi() {
        let a = cfg(3, &[2]);
        let r = phi_reduce(&Stratum::empty(&a), &v(&[-1, 3]), &BTreeMap::from([(b(1), 1)])).unwrap();
        assert!(r.kappa0.is_zero() && r.ell.is_zero() && r.ell_in_minimal);

        let bb = cfg(2, &[3]);
        let s = t(&bb, &[1]);
        let r = phi_reduce(&s, &v(&[-1, 0, 0]), &BTreeMap::from([(b(0), 1)])).unwrap();
        assert_eq!(r.kappa0, v(&[3, 0, 1]));
        assert_eq!(r.ell, v(&[3, 1]));
        assert!(!r.kappa0_in_cone);

        let r = phi_reduce(&s, &v(&[2, 1, 5]), &BTreeMap::new()).unwrap();
        assert_eq!(r.kappa0, v(&[2, 1, 5]));
        assert_eq!(r.ell, reduce_it(&s, &v(&[2, 1, 5])).unwrap());
        assert_eq!(
            phi_reduce(&s, &v(&[0, 0, 0]), &BTreeMap::from([(b(1), 1)])).unwrap_err(),
            Error::InStratum(b(1))
        );
    }
}
