//! Serialisable report records. Arbitrary-precision numbers are written as
//! decimal strings (`a` or `a/b`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cone::{Cone, GeneratorRep, LinearForm, QVector};
use crate::splitting::{CycleChains, Stratum};
use crate::weights::{DeltaClass, FormalMonomial};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

/// A counterexample: a vector, and when the claim is an inclusion, a form
/// that is nonnegative on the other cone and negative on the vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub vector: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violated_form: Option<Vec<String>>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckResult {
    pub fn pass(name: &str) -> Self {
        Self {
            name: name.into(),
            status: Status::Pass,
            detail: String::new(),
            witness: None,
        }
    }

    pub fn info(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Info,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(name: &str, detail: impl Into<String>, witness: Witness) -> Self {
        Self {
            name: name.into(),
            status: Status::Fail,
            detail: detail.into(),
            witness: Some(witness),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub beta: String,
    pub in_t: bool,
    pub in_tilde: bool,
    pub mu: usize,
    pub nu: Option<usize>,
    pub n: Option<usize>,
    pub n_ext: usize,
    pub eps: i8,
    pub admissible: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub rays: Vec<Vec<String>>,
    pub lines: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeRecord {
    pub dim: usize,
    pub rays: Vec<Vec<String>>,
    pub lines: Vec<Vec<String>>,
    pub inequalities: Vec<Vec<String>>,
    pub equations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub label: String,
    pub base: String,
    pub exponent: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FRecord {
    pub beta: String,
    pub weight: Vec<String>,
    pub recipe: Vec<FactorRecord>,
    pub delta: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub t: String,
    pub key: String,
    pub tilde: String,
    #[serde(rename = "S")]
    pub places: Vec<String>,
    pub iw: Vec<usize>,
    pub chains: Vec<Vec<String>>,
    pub full_cycles: Vec<usize>,
    pub admissible: Vec<String>,
    pub tables: Vec<TableRow>,
    #[serde(rename = "generators_G")]
    pub generators_g: GeneratorRecord,
    #[serde(rename = "generators_Gprime")]
    pub generators_gprime: GeneratorRecord,
    pub halfspaces: ConeRecord,
    pub f_weights: Vec<FRecord>,
    pub minimal: ConeRecord,
    pub minimal0: ConeRecord,
    pub checks: Vec<CheckResult>,
}

impl StratumRecord {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub p: u64,
    pub cycles: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigReport {
    pub config: ConfigEcho,
    pub strata: Vec<StratumRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub info: usize,
}

impl Counts {
    pub fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Info => self.info += 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub configs: usize,
    pub strata: usize,
    pub total: Counts,
    pub by_check: BTreeMap<String, Counts>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRef {
    pub p: u64,
    pub cycles: Vec<usize>,
    pub t: String,
}

/// Status of `𝒞^min = 𝒞^{min,0}` over every stratum in the report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenQuestions {
    pub min_equals_min0_checked: usize,
    pub min_equals_min0_equal: usize,
    pub min_equals_min0_unequal: Vec<StratumRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub configs: Vec<ConfigReport>,
    pub summary: Summary,
    pub open_questions: OpenQuestions,
    /// Strata with `T̃ ≠ T` whose cone still equals the Hasse-type cone.
    pub dichotomy_exceptions: Vec<StratumRef>,
}

impl Report {
    pub fn from_configs(configs: Vec<ConfigReport>) -> Self {
        let mut summary = Summary {
            configs: configs.len(),
            ..Summary::default()
        };
        let mut open = OpenQuestions::default();
        let mut exceptions = Vec::new();
        for cr in &configs {
            for s in &cr.strata {
                summary.strata += 1;
                let here = || StratumRef {
                    p: cr.config.p,
                    cycles: cr.config.cycles.clone(),
                    t: s.t.clone(),
                };
                for c in &s.checks {
                    summary.total.add(c.status);
                    if c.name == super::DICHOTOMY && c.status == Status::Info {
                        exceptions.push(here());
                    }
                    summary.by_check.entry(c.name.clone()).or_default().add(c.status);
                    if c.name == super::MIN_QUESTION {
                        open.min_equals_min0_checked += 1;
                        if c.detail == super::MIN_EQUAL {
                            open.min_equals_min0_equal += 1;
                        } else {
                            open.min_equals_min0_unequal.push(here());
                        }
                    }
                }
            }
        }
        Self {
            schema: SCHEMA_VERSION,
            configs,
            summary,
            open_questions: open,
            dichotomy_exceptions: exceptions,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.total.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = (&ConfigEcho, &StratumRecord, &CheckResult)> {
        self.configs.iter().flat_map(|c| {
            c.strata
                .iter()
                .flat_map(move |s| s.failures().map(move |f| (&c.config, s, f)))
        })
    }
}

pub(crate) fn strings(v: &QVector) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub(crate) fn form_strings(f: &LinearForm) -> Vec<String> {
    strings(f.coeffs())
}

pub(crate) fn generator_record(g: &GeneratorRep) -> GeneratorRecord {
    GeneratorRecord {
        rays: g.rays.iter().map(strings).collect(),
        lines: g.lines.iter().map(strings).collect(),
    }
}

pub(crate) fn cone_record(c: &Cone) -> ConeRecord {
    let c = c.completed();
    let g = c.generators().expect("complete");
    let h = c.constraints().expect("complete");
    ConeRecord {
        dim: c.dim(),
        rays: g.rays.iter().map(strings).collect(),
        lines: g.lines.iter().map(strings).collect(),
        inequalities: h.inequalities.iter().map(form_strings).collect(),
        equations: h.equations.iter().map(form_strings).collect(),
    }
}

pub(crate) fn monomial_record(m: &FormalMonomial) -> Vec<FactorRecord> {
    m.factors
        .iter()
        .map(|(s, e)| FactorRecord {
            label: s.label(),
            base: s.base.to_string(),
            exponent: e.to_string(),
        })
        .collect()
}

pub(crate) fn delta_record(d: &DeltaClass) -> Vec<String> {
    d.residues.iter().map(|r| r.to_string()).collect()
}

pub(crate) fn chain_record(t: &Stratum) -> (Vec<Vec<String>>, Vec<usize>) {
    let mut chains = Vec::new();
    let mut full = Vec::new();
    for (c, cc) in t.chains().iter().enumerate() {
        match cc {
            CycleChains::Full => full.push(c),
            CycleChains::Chains(list) => {
                chains.extend(list.iter().map(|ch| ch.members.iter().map(|b| b.to_string()).collect()))
            }
        }
    }
    (chains, full)
}
