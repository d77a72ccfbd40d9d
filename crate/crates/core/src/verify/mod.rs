//! Finite-instance checks of the cone identities, single-stratum dossiers and
//! the exhaustive sweep.
//!
//! Every check produces a [`CheckResult`]. A failing check always carries a
//! [`Witness`] that can be re-verified with the cone engine alone, see
//! [`witness_separates`]. The open question `𝒞^min = 𝒞^{min,0}` is reported
//! with status `info` and never counts as a failure.

mod report;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;

pub use report::{
    CheckResult, ConeRecord, ConfigEcho, ConfigReport, Counts, FRecord, FactorRecord, GeneratorRecord, OpenQuestions,
    Report, Status, StratumRecord, StratumRef, Summary, TableRow, Witness, SCHEMA_VERSION,
};

use crate::cone::{solve_columns, Cone, LinearForm, Membership, QVector};
use crate::error::{Error, Result};
use crate::splitting::{CycleChains, EmbeddingId, SplittingConfig, Stratum};
use crate::weights::{
    cone_d, cone_dtf, delta_class, explicit_constraints, f_recipe, f_weight, family_h, family_t, functional_lf,
    functional_lt, generators_g, generators_gprime, gl2_cone, gl2_product_cone, hasse_cone, hasse_type_cone,
    is_degenerate_cycle, lift_jt, lift_map, minimal_cone, minimal_halfspaces, reduce_it, reduced_coordinates,
    reduction_map, section_recipe, weight_basis, weight_pair, Family, MinimalVariant, WeightKind,
};
use report::{chain_record, cone_record, delta_record, generator_record, monomial_record, strings};

pub(crate) const MIN_QUESTION: &str = "min_question";
pub(crate) const MIN_EQUAL: &str = "equal";
pub(crate) const DICHOTOMY: &str = "admissibility_dichotomy";

/// Detail of the `info` result on strata where [`is_dichotomy_exception`] holds.
pub const DICHOTOMY_EXCEPTION: &str =
    "T̃ ≠ T, yet D_T equals the Hasse-type cone: every cycle with T̃_p ≠ T_p is even with one embedding outside T";

/// Names of every check emitted per stratum, in emission order.
pub const CHECK_NAMES: &[&str] = &[
    "splitting_invariants",
    "optimal_basis",
    "explicit_description",
    "biorthogonality",
    "general_case",
    DICHOTOMY,
    "hasse_cone",
    "hasse_identity",
    "torsion_relation",
    "reduction_identities",
    "recipe_weights",
    "f_outside_dtf",
    "minimal_inclusion",
    "minimal_halfspaces",
    "gl2_product",
    "product_structure",
    MIN_QUESTION,
];

/// Largest total degree accepted by [`explore`].
pub const MAX_SWEEP_DEGREE: usize = 12;

/// Largest number of strata accepted by [`explore`].
pub const MAX_SWEEP_STRATA: usize = 250_000;

/// Whether `w.vector ∈ inner`, `w.violated_form` is valid on `outer` and
/// negative on `w.vector`.
pub fn witness_separates(inner: &Cone, outer: &Cone, w: &Witness) -> bool {
    let Some(form) = &w.violated_form else {
        return false;
    };
    let (Some(v), Some(f)) = (parse_vector(&w.vector), parse_vector(form)) else {
        return false;
    };
    let m = Membership::Outside {
        violated_form: LinearForm::new(f),
    };
    inner.contains(&v).unwrap_or(false) && m.verify(outer, &v)
}

fn parse_vector(xs: &[String]) -> Option<QVector> {
    xs.iter()
        .map(|s| s.parse::<BigRational>().ok())
        .collect::<Option<Vec<_>>>()
        .map(QVector::new)
}

/// A generator of `a` outside `b`, with `b`'s violated form.
fn inclusion_witness(a: &Cone, b: &Cone, note: &str) -> Option<Witness> {
    let g = a.generator_rep();
    let candidates = g
        .rays
        .iter()
        .cloned()
        .chain(g.lines.iter().cloned())
        .chain(g.lines.iter().map(QVector::neg));
    for v in candidates {
        if let Ok(Membership::Outside { violated_form }) = b.member(&v) {
            return Some(Witness {
                vector: strings(&v),
                violated_form: Some(strings(violated_form.coeffs())),
                note: note.to_string(),
            });
        }
    }
    None
}

fn compare(name: &str, a: &Cone, b: &Cone, a_name: &str, b_name: &str) -> CheckResult {
    if let Some(w) = inclusion_witness(a, b, &format!("in {a_name}, outside {b_name}")) {
        return CheckResult::fail(name, format!("{a_name} ⊄ {b_name}"), w);
    }
    if let Some(w) = inclusion_witness(b, a, &format!("in {b_name}, outside {a_name}")) {
        return CheckResult::fail(name, format!("{b_name} ⊄ {a_name}"), w);
    }
    CheckResult::pass(name)
}

fn include(name: &str, a: &Cone, b: &Cone, a_name: &str, b_name: &str) -> Option<CheckResult> {
    inclusion_witness(a, b, &format!("in {a_name}, outside {b_name}"))
        .map(|w| CheckResult::fail(name, format!("{a_name} ⊄ {b_name}"), w))
}

fn plain_witness(v: &QVector, note: impl Into<String>) -> Witness {
    Witness {
        vector: strings(v),
        violated_form: None,
        note: note.into(),
    }
}

fn error_result(name: &str, e: &Error) -> CheckResult {
    CheckResult::fail(
        name,
        format!("computation failed: {e}"),
        Witness {
            vector: vec![],
            violated_form: None,
            note: e.to_string(),
        },
    )
}

/// Cones shared between checks.
struct Workspace<'a> {
    t: &'a Stratum,
    d_g: Cone,
    d_gp: Cone,
    min: Result<Cone>,
    min0: Result<Cone>,
}

impl<'a> Workspace<'a> {
    fn new(t: &'a Stratum) -> Self {
        Self {
            t,
            d_g: cone_d(t, Family::G),
            d_gp: cone_d(t, Family::GPrime),
            min: minimal_cone(t, MinimalVariant::Min),
            min0: minimal_cone(t, MinimalVariant::Min0),
        }
    }
}

fn check_splitting(t: &Stratum) -> CheckResult {
    const NAME: &str = "splitting_invariants";
    let config = t.config();
    let tab = t.tables();
    let fail = |what: String| CheckResult::fail(NAME, what.clone(), plain_witness(&QVector::zeros(0), what));
    if t.mask() & !tab.tilde != 0 {
        return fail(format!("T ⊄ T̃ for T = {{{t}}}"));
    }
    if t.tilde().tables().tilde != tab.tilde {
        return fail("closure is not idempotent".into());
    }
    let all_odd = tab.chains.iter().all(|c| match c {
        CycleChains::Full => true,
        CycleChains::Chains(list) => list.iter().all(|ch| ch.m() % 2 == 1),
    });
    if all_odd != (tab.tilde == t.mask()) {
        return fail("T̃ = T does not match chain parities".into());
    }
    if !tab.places.len().is_multiple_of(2) {
        return fail(format!("|S(T)| = {} is odd", tab.places.len()));
    }
    for b in config.embeddings() {
        let i = config.flat(b);
        let f = config.cycle_len(b.cycle);
        let mu = tab.mu[i];
        if t.is_full_cycle(b.cycle) {
            if mu != 0 || tab.nu[i].is_some() {
                return fail(format!("μ/ν wrong on full cycle at {b}"));
            }
        } else if mu == 0 || mu > f || tab.nu[i].is_none_or(|nu| nu >= f) {
            return fail(format!("μ/ν out of range at {b}"));
        }
        if !t.contains(b) {
            let expected = tab.n[i].is_some_and(|n| config.sigma(b, n as i64) != b);
            if expected != t.is_admissible(b) {
                return fail(format!("admissible set disagrees with n at {b}"));
            }
        } else if t.is_admissible(b) {
            return fail(format!("{b} ∈ T is marked admissible"));
        }
    }
    for r in t.refinements() {
        if r.iw() != t.iw() || r.mask() & t.mask() != t.mask() || r.mask() & !tab.tilde != 0 {
            return fail(format!("bad refinement {{{r}}}"));
        }
    }
    CheckResult::pass(NAME)
}

fn check_biorthogonality(t: &Stratum) -> CheckResult {
    const NAME: &str = "biorthogonality";
    let g = generators_gprime(t);
    let outside = t.complement();
    for &b in &outside {
        let l = functional_lt(t, b).expect("b outside T");
        for (tau, ray) in outside.iter().zip(&g.rays) {
            let value = l.eval(ray);
            let ok = if *tau == b {
                value.is_positive()
            } else {
                value.is_zero()
            };
            if !ok {
                return CheckResult::fail(
                    NAME,
                    format!("L_{{T,{b}}}(g_{tau}) = {value}"),
                    Witness {
                        vector: strings(ray),
                        violated_form: Some(strings(l.coeffs())),
                        note: format!("generator g_{tau} against L_{{T,{b}}}"),
                    },
                );
            }
        }
        for line in &g.lines {
            if !l.eval(line).is_zero() {
                return CheckResult::fail(
                    NAME,
                    format!("L_{{T,{b}}} does not vanish on a lineality generator"),
                    Witness {
                        vector: strings(line),
                        violated_form: Some(strings(l.coeffs())),
                        note: "lineality generator".into(),
                    },
                );
            }
        }
    }
    CheckResult::pass(NAME)
}

fn check_general_case(ws: &Workspace) -> CheckResult {
    const NAME: &str = "general_case";
    let t = ws.t;
    let forms: Vec<LinearForm> = t
        .complement()
        .into_iter()
        .filter(|&b| t.in_tilde(b))
        .map(|b| functional_lt(t, b).expect("b outside T"))
        .collect();
    if forms.is_empty() {
        return CheckResult::info(NAME, "T̃ = T");
    }
    let h = Cone::from_constraints(t.config().d(), forms, vec![]).expect("dimension d");
    include(NAME, &ws.d_gp, &h, "D_T", "{L_{T,β} ≥ 0 : β ∈ T̃ − T}").unwrap_or_else(|| CheckResult::pass(NAME))
}

/// Whether every cycle with `T̃_𝔭 ≠ T_𝔭` has `T̃_𝔭 = 𝔹_𝔭` and exactly one
/// embedding outside `T`. On such strata `f_β(T) ≡ h_β` modulo the `b`-lines,
/// so the cone equals the Hasse-type cone although `T̃ ≠ T`.
pub fn is_dichotomy_exception(t: &Stratum) -> bool {
    let config = t.config();
    let tilde = t.tables().tilde;
    tilde != t.mask()
        && (0..config.num_cycles()).all(|c| {
            let cm = config.cycle_mask(c);
            tilde & cm == t.mask() & cm || (is_degenerate_cycle(t, c) && (cm & !t.mask()).count_ones() == 1)
        })
}

fn check_dichotomy(ws: &Workspace) -> CheckResult {
    const NAME: &str = DICHOTOMY;
    let t = ws.t;
    let hasse = hasse_type_cone(t);
    if t.tables().tilde == t.mask() {
        return compare(NAME, &ws.d_gp, &hasse, "D_T", "Hasse-type cone").with_detail_if_pass("T̃ = T: equality");
    }
    if is_dichotomy_exception(t) {
        let r = compare(NAME, &ws.d_gp, &hasse, "D_T", "Hasse-type cone");
        if r.status == Status::Fail {
            return r;
        }
        return CheckResult::info(NAME, DICHOTOMY_EXCEPTION);
    }
    if let Some(r) = include(NAME, &hasse, &ws.d_gp, "Hasse-type cone", "D_T") {
        return r;
    }
    for b in t.complement() {
        let f = f_weight(t, b).expect("b outside T");
        if let Ok(Membership::Outside { violated_form }) = hasse.member(&f) {
            return CheckResult::pass(NAME).with_detail(format!(
                "T̃ ≠ T: f_{b}(T) = ({f}) lies outside, separated by {}",
                violated_form.render("k")
            ));
        }
    }
    let first = t.complement()[0];
    CheckResult::fail(
        NAME,
        "T̃ ≠ T but no f_β(T) leaves the Hasse-type cone",
        plain_witness(&f_weight(t, first).expect("outside T"), format!("f_{first}(T)")),
    )
}

trait DetailIfPass {
    fn with_detail_if_pass(self, detail: &str) -> Self;
}

impl DetailIfPass for CheckResult {
    fn with_detail_if_pass(self, detail: &str) -> Self {
        if self.status == Status::Pass {
            self.with_detail(detail)
        } else {
            self
        }
    }
}

fn check_hasse_cone(ws: &Workspace) -> CheckResult {
    const NAME: &str = "hasse_cone";
    if !ws.t.is_empty() {
        return CheckResult::info(NAME, "only for T = ∅");
    }
    compare(NAME, &ws.d_gp, &hasse_cone(ws.t.config()), "D_∅", "Hasse cone")
}

/// Every `(β, n, m)` with `n, m ≥ 1`, `n + m ≤ f` at which
/// `h_{σ^{n+m}β}^{σ^nβ} + p^m h_{σ^nβ}^β = h_{σ^{n+m}β}^β` fails.
pub fn hasse_identity_violations(config: &SplittingConfig) -> Vec<Witness> {
    let mut out = Vec::new();
    for b in config.embeddings() {
        let f = config.cycle_len(b.cycle);
        for n in 1..f {
            for m in 1..=(f - n) {
                let bn = config.sigma(b, n as i64);
                let bnm = config.sigma(b, (n + m) as i64);
                let mut lhs = weight_pair(config, WeightKind::H, bnm, bn).expect("same cycle");
                let pm = BigRational::from_integer(Pow::pow(BigInt::from(config.p()), m));
                lhs.add_scaled(&pm, &weight_pair(config, WeightKind::H, bn, b).expect("same cycle"));
                let rhs = weight_pair(config, WeightKind::H, bnm, b).expect("same cycle");
                if lhs != rhs {
                    out.push(plain_witness(
                        &lhs.sub(&rhs),
                        format!("difference at β = {b}, n = {n}, m = {m}"),
                    ));
                }
            }
        }
    }
    out
}

fn check_hasse_identity(t: &Stratum) -> CheckResult {
    const NAME: &str = "hasse_identity";
    match hasse_identity_violations(t.config()).into_iter().next() {
        Some(w) => CheckResult::fail(NAME, "identity violated", w),
        None => CheckResult::pass(NAME),
    }
}

fn check_torsion(t: &Stratum) -> CheckResult {
    const NAME: &str = "torsion_relation";
    let config = t.config();
    let full: Vec<usize> = (0..config.num_cycles()).filter(|&c| t.is_full_cycle(c)).collect();
    if full.is_empty() {
        return CheckResult::info(NAME, "no cycle inside T");
    }
    let p = BigInt::from(config.p());
    for c in full {
        let f = config.cycle_len(c);
        let bs: Vec<QVector> = config
            .cycle_embeddings(c)
            .map(|b| weight_basis(config, WeightKind::B, b).expect("valid"))
            .collect();
        let n: BigInt = Pow::pow(-&p, f) - BigInt::one();
        for b in config.cycle_embeddings(c) {
            let target = QVector::unit(config.d(), config.flat(b)).scale(&BigRational::from_integer(n.clone()));
            let ok = solve_columns(&bs, &target).is_some_and(|xs| xs.iter().all(|x| x.is_integer()));
            if !ok {
                return CheckResult::fail(
                    NAME,
                    format!("((−p)^{f} − 1)·e_{b} is not an integral combination of the b_τ"),
                    plain_witness(&target, format!("cycle {c}")),
                );
            }
        }
    }
    CheckResult::pass(NAME)
}

fn check_reduction(ws: &Workspace) -> CheckResult {
    const NAME: &str = "reduction_identities";
    let t = ws.t;
    let d = t.config().d();
    let r = reduced_coordinates(t).len();
    for j in 0..r {
        let e = QVector::unit(r, j);
        let back = lift_jt(t, &e).and_then(|v| reduce_it(t, &v));
        if back.as_ref() != Ok(&e) {
            return CheckResult::fail(NAME, "i_T ∘ j_T ≠ id", plain_witness(&e, "basis vector"));
        }
    }
    let i_t = reduction_map(t);
    let kernel = Cone::from_constraints(d, vec![], i_t.rows().iter().cloned().map(LinearForm::new).collect())
        .expect("dimension d");
    let b_lines = Cone::from_generators(d, vec![], generators_g(t).lines).expect("dimension d");
    let k = compare(NAME, &kernel, &b_lines, "ker i_T", "⟨±b_β⟩");
    if k.status == Status::Fail {
        return k;
    }
    let reduced = match ws.d_gp.image(&i_t) {
        Ok(c) => c,
        Err(e) => return error_result(NAME, &e),
    };
    let rebuilt = reduced.image(&lift_map(t)).and_then(|c| c.sum(&b_lines));
    match rebuilt {
        Ok(c) => compare(NAME, &ws.d_gp, &c, "D_T", "j_T(i_T(D_T)) + ker"),
        Err(e) => error_result(NAME, &e),
    }
}

fn check_recipes(t: &Stratum) -> CheckResult {
    const NAME: &str = "recipe_weights";
    let config = t.config();
    let d = config.d();
    for c in 0..config.num_cycles() {
        for b in family_h(t, c) {
            for bp in family_t(t, c) {
                let r = match section_recipe(t, b, bp) {
                    Ok(r) => r,
                    Err(e) => return error_result(NAME, &e),
                };
                let w = r.weight(d);
                let expected = weight_pair(config, WeightKind::H, b, bp).expect("same cycle");
                if w != expected || !r.is_well_formed() {
                    return CheckResult::fail(
                        NAME,
                        format!("recipe for h_{b}^{bp} has weight ({w}) or a negative h-exponent"),
                        plain_witness(&w.sub(&expected), r.to_string()),
                    );
                }
            }
        }
    }
    for b in t.complement() {
        let r = match f_recipe(t, b) {
            Ok(r) => r,
            Err(e) => return error_result(NAME, &e),
        };
        let w = r.monomial.weight(d);
        let expected = f_weight(t, b).expect("b outside T");
        if w != expected || !r.monomial.is_well_formed() {
            return CheckResult::fail(
                NAME,
                format!("recipe for f_{b}(T) has weight ({w})"),
                plain_witness(&w.sub(&expected), r.monomial.to_string()),
            );
        }
        let tag = if t.in_tilde(b) {
            let n = t.n(b, true).expect("extended n");
            let target = config.sigma(b, n as i64);
            let mut e = QVector::zeros(d);
            e.set(config.flat(target), BigRational::one());
            delta_class(config, &e).expect("integral")
        } else {
            delta_class(config, &QVector::zeros(d)).expect("integral")
        };
        if r.delta != tag {
            return CheckResult::fail(
                NAME,
                format!("δ-tag of f_{b}(T) is {} instead of {tag}", r.delta),
                plain_witness(&expected, format!("f_{b}(T)")),
            );
        }
    }
    CheckResult::pass(NAME)
}

fn is_minus_two_power_of(v: &BigRational, p: u64) -> bool {
    if !v.is_integer() || !v.is_negative() {
        return false;
    }
    let mut x = -v.to_integer();
    if x.is_odd() {
        return false;
    }
    x /= 2;
    let p = BigInt::from(p);
    while x > BigInt::one() {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return false;
        }
        x = q;
    }
    x.is_one()
}

fn check_f_outside(t: &Stratum) -> CheckResult {
    const NAME: &str = "f_outside_dtf";
    let adm = t.admissible_set();
    if adm.is_empty() {
        return CheckResult::info(NAME, "𝔹(T) = ∅");
    }
    for b in adm {
        let f = f_weight(t, b).expect("admissible implies outside T");
        let c = match cone_dtf(t, b) {
            Ok(c) => c,
            Err(e) => return error_result(NAME, &e),
        };
        if c.contains(&f).unwrap_or(true) {
            return CheckResult::fail(
                NAME,
                format!("f_{b}(T) ∈ D_{{T,f_{b}}}"),
                plain_witness(&f, format!("f_{b}(T)")),
            );
        }
        let value = functional_lf(t, b, b).expect("admissible").eval(&f);
        if !is_minus_two_power_of(&value, t.config().p()) {
            return CheckResult::fail(
                NAME,
                format!("L_{{T,f_{b},{b}}}(f_{b}(T)) = {value} is not −2·p^k"),
                plain_witness(&f, format!("f_{b}(T)")),
            );
        }
    }
    CheckResult::pass(NAME)
}

fn check_minimal_inclusion(ws: &Workspace) -> CheckResult {
    const NAME: &str = "minimal_inclusion";
    let (min, min0) = match (&ws.min, &ws.min0) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return error_result(NAME, e),
    };
    if let Some(r) = include(NAME, min, min0, "C^min", "C^min0") {
        return r;
    }
    match ws.d_gp.image(&reduction_map(ws.t)) {
        Ok(red) => include(NAME, min, &red, "C^min", "i_T(D_T)").unwrap_or_else(|| CheckResult::pass(NAME)),
        Err(e) => error_result(NAME, &e),
    }
}

fn check_minimal_halfspaces(ws: &Workspace) -> CheckResult {
    const NAME: &str = "minimal_halfspaces";
    let Some(h) = minimal_halfspaces(ws.t) else {
        return CheckResult::info(NAME, "only for T̃ = T");
    };
    match &ws.min {
        Ok(min) => compare(NAME, min, &h, "C^min", "{p^n ℓ_{σ^nβ} ≥ ℓ_β}"),
        Err(e) => error_result(NAME, e),
    }
}

fn check_gl2(t: &Stratum) -> CheckResult {
    compare(
        "gl2_product",
        &gl2_cone(t),
        &gl2_product_cone(t),
        "gl2 cone",
        "Q^B × D_T",
    )
}

fn check_product(ws: &Workspace) -> CheckResult {
    const NAME: &str = "product_structure";
    let t = ws.t;
    let config = t.config();
    if config.num_cycles() == 1 {
        return CheckResult::info(NAME, "single cycle");
    }
    let d = config.d();
    let mut rays = Vec::new();
    let mut lines = Vec::new();
    for c in 0..config.num_cycles() {
        let sub = t.restrict_to_cycle(c);
        let offset = config.flat(EmbeddingId::new(c, 0));
        let embed = |v: &QVector| {
            let mut out = QVector::zeros(d);
            for (i, x) in v.iter().enumerate() {
                out.set(offset + i, x.clone());
            }
            out
        };
        let g = cone_d(&sub, Family::G);
        let rep = g.generators().expect("complete");
        rays.extend(rep.rays.iter().map(embed));
        lines.extend(rep.lines.iter().map(embed));
    }
    let product = Cone::from_generators(d, rays, lines).expect("dimension d");
    compare(NAME, &ws.d_g, &product, "D_T", "sum of per-cycle cones")
}

fn min_question(ws: &Workspace) -> CheckResult {
    match (&ws.min, &ws.min0) {
        (Ok(a), Ok(b)) => {
            let eq = a.equals(b).unwrap_or(false);
            let mut r = CheckResult::info(MIN_QUESTION, if eq { MIN_EQUAL } else { "unequal" });
            if !eq {
                r.witness = inclusion_witness(b, a, "in C^min0, outside C^min");
            }
            r
        }
        (Err(e), _) | (_, Err(e)) => error_result(MIN_QUESTION, e),
    }
}

fn run_checks(ws: &Workspace) -> Vec<CheckResult> {
    let t = ws.t;
    let explicit =
        Cone::from_constraints(t.config().d(), explicit_constraints(t).inequalities, vec![]).expect("dimension d");
    vec![
        check_splitting(t),
        compare("optimal_basis", &ws.d_g, &ws.d_gp, "D_T(G)", "D_T(G')"),
        compare("explicit_description", &ws.d_gp, &explicit, "D_T", "{L_{T,β} ≥ 0}"),
        check_biorthogonality(t),
        check_general_case(ws),
        check_dichotomy(ws),
        check_hasse_cone(ws),
        check_hasse_identity(t),
        check_torsion(t),
        check_reduction(ws),
        check_recipes(t),
        check_f_outside(t),
        check_minimal_inclusion(ws),
        check_minimal_halfspaces(ws),
        check_gl2(t),
        check_product(ws),
        min_question(ws),
    ]
}

/// Every applicable check for one stratum.
pub fn check_stratum(t: &Stratum) -> Vec<CheckResult> {
    run_checks(&Workspace::new(t))
}

/// Whether `𝒞^min = 𝒞^{min,0}`, as an `info` result.
pub fn check_min_question(t: &Stratum) -> CheckResult {
    min_question(&Workspace::new(t))
}

/// The full dossier of a stratum, including its checks.
pub fn analyze_stratum(t: &Stratum) -> StratumRecord {
    let ws = Workspace::new(t);
    let checks = run_checks(&ws);
    let config = t.config();
    let tab = t.tables();
    let (chains, full_cycles) = chain_record(t);
    let tables = config
        .embeddings()
        .map(|b| {
            let i = config.flat(b);
            TableRow {
                beta: b.to_string(),
                in_t: t.contains(b),
                in_tilde: t.in_tilde(b),
                mu: tab.mu[i],
                nu: tab.nu[i],
                n: tab.n[i],
                n_ext: tab.n_ext[i],
                eps: tab.eps[i],
                admissible: t.is_admissible(b),
            }
        })
        .collect();
    let f_weights = t
        .complement()
        .into_iter()
        .map(|b| {
            let w = f_weight(t, b).expect("b outside T");
            let r = f_recipe(t, b).expect("b outside T");
            FRecord {
                beta: b.to_string(),
                weight: strings(&w),
                recipe: monomial_record(&r.monomial),
                delta: delta_record(&r.delta),
            }
        })
        .collect();
    let empty = || ConeRecord::default();
    StratumRecord {
        t: t.to_string(),
        key: t.mask().to_string(),
        tilde: t.tilde().to_string(),
        places: t.places().iter().map(|p| p.to_string()).collect(),
        iw: t.iw().to_vec(),
        chains,
        full_cycles,
        admissible: t.admissible_set().iter().map(|b| b.to_string()).collect(),
        tables,
        generators_g: generator_record(&generators_g(t)),
        generators_gprime: generator_record(&generators_gprime(t)),
        halfspaces: cone_record(&ws.d_gp),
        f_weights,
        minimal: ws.min.as_ref().map(cone_record).unwrap_or_else(|_| empty()),
        minimal0: ws.min0.as_ref().map(cone_record).unwrap_or_else(|_| empty()),
        checks,
    }
}

/// Report for a single stratum.
pub fn check_report(t: &Stratum) -> Report {
    let config = t.config();
    Report::from_configs(vec![ConfigReport {
        config: ConfigEcho {
            p: config.p(),
            cycles: config.cycles().to_vec(),
        },
        strata: vec![analyze_stratum(t)],
    }])
}

/// Partitions of `d` into positive parts, each in non-increasing order,
/// listed in reverse lexicographic order (`[d]` first).
pub fn partitions(d: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        go(d, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Every configuration of the sweep: primes in the given order, then `d`
/// ascending, then partitions as in [`partitions`].
pub fn sweep_configs(p_list: &[u64], d_max: usize) -> Result<Vec<SplittingConfig>> {
    let mut out = Vec::new();
    for &p in p_list {
        for d in 1..=d_max {
            for cycles in partitions(d) {
                out.push(SplittingConfig::new(p, cycles)?);
            }
        }
    }
    Ok(out)
}

/// Runs [`analyze_stratum`] on all `2^d` strata of every configuration of
/// the sweep. The output does not depend on `jobs`.
pub fn explore(p_list: &[u64], d_max: usize, jobs: Option<usize>) -> Result<Report> {
    if d_max == 0 {
        return Err(Error::InvalidConfig("d_max must be at least 1".into()));
    }
    if d_max > MAX_SWEEP_DEGREE {
        return Err(Error::ResourceLimit(format!(
            "d_max = {d_max} exceeds the sweep bound {MAX_SWEEP_DEGREE}"
        )));
    }
    let configs = sweep_configs(p_list, d_max)?;
    let total: usize = configs.iter().map(|c| 1usize << c.d()).sum();
    if total > MAX_SWEEP_STRATA {
        return Err(Error::ResourceLimit(format!(
            "sweep has {total} strata, more than {MAX_SWEEP_STRATA}"
        )));
    }
    let tasks: Vec<(usize, u64)> = configs
        .iter()
        .enumerate()
        .flat_map(|(i, c)| (0u64..1 << c.d()).map(move |m| (i, m)))
        .collect();
    let run = || -> Vec<StratumRecord> {
        tasks
            .par_iter()
            .map(|&(i, m)| {
                let t = Stratum::from_mask(&configs[i], m).expect("mask within d");
                analyze_stratum(&t)
            })
            .collect()
    };
    let records = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::ResourceLimit(format!("cannot start worker pool: {e}")))?
            .install(run),
        None => run(),
    };
    let mut grouped: BTreeMap<usize, Vec<StratumRecord>> = BTreeMap::new();
    for ((i, _), r) in tasks.iter().zip(records) {
        grouped.entry(*i).or_default().push(r);
    }
    let reports = configs
        .iter()
        .enumerate()
        .map(|(i, c)| ConfigReport {
            config: ConfigEcho {
                p: c.p(),
                cycles: c.cycles().to_vec(),
            },
            strata: grouped.remove(&i).unwrap_or_default(),
        })
        .collect();
    Ok(Report::from_configs(reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: u64, cycles: &[usize]) -> SplittingConfig {
        SplittingConfig::new(p, cycles.to_vec()).unwrap()
    }

    fn t(config: &SplittingConfig, pos: &[usize]) -> Stratum {
        Stratum::new(config, pos.iter().map(|&i| EmbeddingId::new(0, i))).unwrap()
    }

    fn status(checks: &[CheckResult], name: &str) -> Status {
        checks.iter().find(|c| c.name == name).unwrap().status
    }

    #[test]
    fn partition_listing() {
        assert_eq!(partitions(1), vec![vec![1]]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(partitions(5).len(), 7);
        assert!(partitions(0).is_empty());
    }

    #[test]
    fn three_cycle_stratum_passes() {
        let a = cfg(3, &[2]);
        let checks = check_stratum(&t(&a, &[1]));
        assert_eq!(checks.len(), CHECK_NAMES.len());
        for (c, name) in checks.iter().zip(CHECK_NAMES) {
            assert_eq!(c.name, *name);
            assert_ne!(c.status, Status::Fail, "{c:?}");
        }
    }

    #[test]
    fn admissible_four_cycle() {
        let c = cfg(2, &[4]);
        let s = t(&c, &[1, 2]);
        let checks = check_stratum(&s);
        assert_eq!(status(&checks, "admissibility_dichotomy"), Status::Pass);
        assert_eq!(status(&checks, "minimal_halfspaces"), Status::Pass);
        let h3 = weight_basis(&c, WeightKind::H, EmbeddingId::new(0, 3)).unwrap();
        let b1 = weight_basis(&c, WeightKind::B, EmbeddingId::new(0, 1)).unwrap();
        let b2 = weight_basis(&c, WeightKind::B, EmbeddingId::new(0, 2)).unwrap();
        let mut w = h3;
        w.add_scaled(&BigRational::from_integer(4.into()), &b1);
        w.add_scaled(&BigRational::from_integer((-2).into()), &b2);
        assert_eq!(w, QVector::from_ints(&[8, 0, 0, -1]));
        assert!(cone_d(&s, Family::GPrime).contains(&w).unwrap());
    }

    #[test]
    fn dichotomy_exception_on_even_cycle() {
        let a = cfg(3, &[2]);
        let s = t(&a, &[1]);
        assert!(is_dichotomy_exception(&s));
        let r = &check_stratum(&s)[5];
        assert_eq!((r.name.as_str(), r.status), (DICHOTOMY, Status::Info));
        let f = f_weight(&s, EmbeddingId::new(0, 0)).unwrap();
        assert!(hasse_type_cone(&s).contains(&f).unwrap());

        let c = cfg(2, &[4]);
        let s = t(&c, &[0, 2]);
        assert!(!is_dichotomy_exception(&s));
        assert_eq!(status(&check_stratum(&s), DICHOTOMY), Status::Pass);
    }

    #[test]
    fn hasse_cone_for_empty_stratum() {
        let a = cfg(3, &[2]);
        assert_eq!(status(&check_stratum(&Stratum::empty(&a)), "hasse_cone"), Status::Pass);
    }

    #[test]
    fn min_question_examples() {
        for (config, pos) in [(cfg(3, &[2]), vec![]), (cfg(2, &[3]), vec![1]), (cfg(3, &[2]), vec![1])] {
            let r = check_min_question(&t(&config, &pos));
            assert_eq!(r.status, Status::Info);
            assert_eq!(r.detail, MIN_EQUAL);
        }
    }

    #[test]
    fn witnesses_reverify() {
        let small = Cone::from_int_rays(2, &[&[1, 0]]).unwrap().complete();
        let big = Cone::from_int_rays(2, &[&[1, 0], &[0, 1]]).unwrap().complete();
        let r = compare("x", &big, &small, "big", "small");
        assert_eq!(r.status, Status::Fail);
        assert!(witness_separates(&big, &small, r.witness.as_ref().unwrap()));
        assert_eq!(compare("x", &big, &big, "a", "b").status, Status::Pass);
    }

    #[test]
    fn sweep_bounds() {
        assert!(matches!(explore(&[2], 0, None), Err(Error::InvalidConfig(_))));
        assert!(matches!(explore(&[2], 40, None), Err(Error::ResourceLimit(_))));
        assert!(matches!(explore(&[4], 1, None), Err(Error::NotPrime(4))));
        let r = explore(&[], 3, None).unwrap();
        assert!(r.configs.is_empty() && r.summary.strata == 0);
    }

    #[test]
    fn small_sweep() {
        let r = explore(&[2], 2, Some(2)).unwrap();
        assert_eq!(r.configs.len(), 3);
        assert_eq!(r.summary.strata, 2 + 4 + 4);
        assert!(r.all_passed(), "{:?}", r.failures().next());
        let again = explore(&[2], 2, Some(1)).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            serde_json::to_string(&again).unwrap()
        );
        let back: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn length_one_cycle_cones() {
        let r = explore(&[3], 1, None).unwrap();
        let strata = &r.configs[0].strata;
        assert_eq!(strata[0].halfspaces.rays, vec![vec!["1".to_string()]]);
        assert_eq!(strata[0].generators_gprime.rays, vec![vec!["2".to_string()]]);
        assert_eq!(strata[1].halfspaces.lines, vec![vec!["1".to_string()]]);
    }
}
