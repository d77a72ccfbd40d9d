//! Frobenius-orbit combinatorics on the embedding set.
//!
//! Embeddings are indexed as `(cycle, pos)` with Frobenius acting by
//! `pos ↦ pos + 1` inside each cycle. A [`Stratum`] is a subset `T`, stored as
//! a bitmask over the flat index (cycles laid out consecutively), together with
//! every table derived from it, computed once at construction.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cone::QVector;
use crate::error::{Error, Result};

/// Largest supported number of embeddings.
pub const MAX_DEGREE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EmbeddingId {
    pub cycle: usize,
    pub pos: usize,
}

impl EmbeddingId {
    pub fn new(cycle: usize, pos: usize) -> Self {
        Self { cycle, pos }
    }
}

impl fmt::Display for EmbeddingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.cycle, self.pos)
    }
}

/// A prime `p` together with the Frobenius cycle lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingConfig {
    p: u64,
    cycles: Vec<usize>,
    offsets: Vec<usize>,
}

impl SplittingConfig {
    pub fn new(p: u64, cycles: Vec<usize>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if cycles.is_empty() {
            return Err(Error::InvalidConfig("no cycles given".into()));
        }
        if let Some(i) = cycles.iter().position(|&f| f == 0) {
            return Err(Error::InvalidConfig(format!("cycle {i} has length 0")));
        }
        let d: usize = cycles.iter().sum();
        if d > MAX_DEGREE {
            return Err(Error::InvalidConfig(format!("total degree {d} exceeds {MAX_DEGREE}")));
        }
        let offsets = cycles
            .iter()
            .scan(0, |acc, &f| {
                let o = *acc;
                *acc += f;
                Some(o)
            })
            .collect();
        Ok(Self { p, cycles, offsets })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn p_big(&self) -> BigInt {
        BigInt::from(self.p)
    }

    pub fn cycles(&self) -> &[usize] {
        &self.cycles
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycle_len(&self, c: usize) -> usize {
        self.cycles[c]
    }

    pub fn d(&self) -> usize {
        self.cycles.iter().sum()
    }

    pub fn validate(&self, b: EmbeddingId) -> Result<()> {
        if b.cycle < self.cycles.len() && b.pos < self.cycles[b.cycle] {
            Ok(())
        } else {
            Err(Error::InvalidEmbedding(b))
        }
    }

    /// Position of `b` in the flat ordering `(cycle, pos)`.
    pub fn flat(&self, b: EmbeddingId) -> usize {
        self.offsets[b.cycle] + b.pos
    }

    pub fn embedding(&self, i: usize) -> EmbeddingId {
        let cycle = self.offsets.partition_point(|&o| o <= i) - 1;
        EmbeddingId::new(cycle, i - self.offsets[cycle])
    }

    pub fn embeddings(&self) -> impl Iterator<Item = EmbeddingId> + '_ {
        self.cycles
            .iter()
            .enumerate()
            .flat_map(|(c, &f)| (0..f).map(move |i| EmbeddingId::new(c, i)))
    }

    pub fn cycle_embeddings(&self, c: usize) -> impl Iterator<Item = EmbeddingId> {
        (0..self.cycles[c]).map(move |i| EmbeddingId::new(c, i))
    }

    /// Bitmask of the flat indices of cycle `c`.
    pub fn cycle_mask(&self, c: usize) -> u64 {
        let f = self.cycles[c];
        let ones = if f == 64 { u64::MAX } else { (1u64 << f) - 1 };
        ones << self.offsets[c]
    }

    pub fn full_mask(&self) -> u64 {
        (0..self.cycles.len()).fold(0, |m, c| m | self.cycle_mask(c))
    }

    /// `σ^i b`, for any integer `i`.
    pub fn frobenius_shift(&self, b: EmbeddingId, i: i64) -> Result<EmbeddingId> {
        self.validate(b)?;
        Ok(self.sigma(b, i))
    }

    pub(crate) fn sigma(&self, b: EmbeddingId, i: i64) -> EmbeddingId {
        let f = self.cycles[b.cycle] as i64;
        EmbeddingId::new(b.cycle, (b.pos as i64 + i).rem_euclid(f) as usize)
    }

    /// Zero vector of dimension `d`.
    pub fn zero_weight(&self) -> QVector {
        QVector::zeros(self.d())
    }

    /// Splitting with only cycle `c`.
    pub fn sub_config(&self, c: usize) -> SplittingConfig {
        SplittingConfig::new(self.p, vec![self.cycles[c]]).expect("valid cycle")
    }
}

impl fmt::Display for SplittingConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<String> = self.cycles.iter().map(|c| c.to_string()).collect();
        write!(f, "p={} cycles=[{}]", self.p, cycles.join(","))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i.saturating_mul(i) <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// A place in `S(T)`: an embedding or a prime above `p` (by cycle index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Embedding(EmbeddingId),
    Prime(usize),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Embedding(b) => write!(f, "{b}"),
            Place::Prime(c) => write!(f, "p{c}"),
        }
    }
}

/// A maximal run `β, σ^{-1}β, …, σ^{-m}β` inside `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub members: Vec<EmbeddingId>,
}

impl Chain {
    pub fn head(&self) -> EmbeddingId {
        self.members[0]
    }

    pub fn m(&self) -> usize {
        self.members.len() - 1
    }
}

/// Chains of one cycle, or the marker for a cycle entirely inside `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleChains {
    Full,
    Chains(Vec<Chain>),
}

/// Everything derived from `T`, indexed by flat position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumTables {
    pub chains: Vec<CycleChains>,
    pub tilde: u64,
    pub places: Vec<Place>,
    pub iw: Vec<usize>,
    pub mu: Vec<usize>,
    pub nu: Vec<Option<usize>>,
    pub n: Vec<Option<usize>>,
    pub n_ext: Vec<usize>,
    pub eps: Vec<i8>,
    pub bset: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    config: SplittingConfig,
    mask: u64,
    tables: StratumTables,
}

impl Stratum {
    pub fn new(config: &SplittingConfig, members: impl IntoIterator<Item = EmbeddingId>) -> Result<Self> {
        let mut mask = 0u64;
        for b in members {
            config.validate(b)?;
            mask |= 1 << config.flat(b);
        }
        Ok(Self::from_mask_unchecked(config, mask))
    }

    pub fn from_mask(config: &SplittingConfig, mask: u64) -> Result<Self> {
        if mask & !config.full_mask() != 0 {
            return Err(Error::InvalidConfig(format!(
                "mask {mask:#x} has bits beyond d = {}",
                config.d()
            )));
        }
        Ok(Self::from_mask_unchecked(config, mask))
    }

    pub fn empty(config: &SplittingConfig) -> Self {
        Self::from_mask_unchecked(config, 0)
    }

    pub fn all(config: &SplittingConfig) -> Self {
        Self::from_mask_unchecked(config, config.full_mask())
    }

    fn from_mask_unchecked(config: &SplittingConfig, mask: u64) -> Self {
        let tables = compute_tables(config, mask);
        Self {
            config: config.clone(),
            mask,
            tables,
        }
    }

    pub fn config(&self) -> &SplittingConfig {
        &self.config
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn tables(&self) -> &StratumTables {
        &self.tables
    }

    pub fn contains(&self, b: EmbeddingId) -> bool {
        self.mask >> self.config.flat(b) & 1 == 1
    }

    pub fn members(&self) -> Vec<EmbeddingId> {
        self.config.embeddings().filter(|&b| self.contains(b)).collect()
    }

    pub fn complement(&self) -> Vec<EmbeddingId> {
        self.config.embeddings().filter(|&b| !self.contains(b)).collect()
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full_cycle(&self, c: usize) -> bool {
        let cm = self.config.cycle_mask(c);
        self.mask & cm == cm
    }

    pub fn in_tilde(&self, b: EmbeddingId) -> bool {
        self.tables.tilde >> self.config.flat(b) & 1 == 1
    }

    /// `T̃` as a stratum of its own.
    pub fn tilde(&self) -> Stratum {
        Self::from_mask_unchecked(&self.config, self.tables.tilde)
    }

    pub fn tilde_members(&self) -> Vec<EmbeddingId> {
        self.config.embeddings().filter(|&b| self.in_tilde(b)).collect()
    }

    pub fn chains(&self) -> &[CycleChains] {
        &self.tables.chains
    }

    pub fn places(&self) -> &[Place] {
        &self.tables.places
    }

    pub fn iw(&self) -> &[usize] {
        &self.tables.iw
    }

    pub fn mu(&self, b: EmbeddingId) -> Result<usize> {
        self.config.validate(b)?;
        Ok(self.tables.mu[self.config.flat(b)])
    }

    pub fn nu(&self, b: EmbeddingId) -> Result<usize> {
        self.config.validate(b)?;
        self.tables.nu[self.config.flat(b)].ok_or(Error::UndefinedIndex { name: "nu", at: b })
    }

    /// `n_β`; with `extended`, also defined (as the cycle length) when
    /// `T̃` fills the cycle.
    pub fn n(&self, b: EmbeddingId, extended: bool) -> Result<usize> {
        self.config.validate(b)?;
        let i = self.config.flat(b);
        if extended {
            Ok(self.tables.n_ext[i])
        } else {
            self.tables.n[i].ok_or(Error::UndefinedIndex { name: "n", at: b })
        }
    }

    pub fn eps(&self, b: EmbeddingId) -> Result<i8> {
        self.config.validate(b)?;
        Ok(self.tables.eps[self.config.flat(b)])
    }

    pub fn is_admissible(&self, b: EmbeddingId) -> bool {
        self.tables.bset >> self.config.flat(b) & 1 == 1
    }

    /// `𝔹(T)` in `(cycle, pos)` order.
    pub fn admissible_set(&self) -> Vec<EmbeddingId> {
        self.config.embeddings().filter(|&b| self.is_admissible(b)).collect()
    }

    /// All `T′` with `T ⊆ T′ ⊆ T̃` and `Iw(T′) = Iw(T)`, ordered by bitmask.
    pub fn refinements(&self) -> Vec<Stratum> {
        let extra: Vec<u64> = (0..self.config.d())
            .map(|i| 1u64 << i)
            .filter(|bit| self.tables.tilde & bit != 0 && self.mask & bit == 0)
            .collect();
        let mut out: Vec<Stratum> = (0u64..1 << extra.len())
            .map(|sel| {
                let add = extra
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| sel >> j & 1 == 1)
                    .fold(0, |m, (_, bit)| m | bit);
                Self::from_mask_unchecked(&self.config, self.mask | add)
            })
            .filter(|t| t.tables.iw == self.tables.iw)
            .collect();
        out.sort_by_key(|t| t.mask);
        out
    }

    /// Whether `κ` satisfies `k_{σ^i β} = 0` for `β ∈ T′ − T`, `0 ≤ i < μ_β`,
    /// with `μ` taken relative to `T`.
    pub fn pullback_compatible(&self, refined: &Stratum, kappa: &QVector) -> Result<bool> {
        kappa.check_dim(self.config.d())?;
        if refined.config != self.config || !self.refinements().iter().any(|t| t.mask == refined.mask) {
            return Err(Error::NotRefinement(format!(
                "{{{}}} is not a refinement of {{{}}}",
                refined, self
            )));
        }
        for b in refined.members() {
            if self.contains(b) {
                continue;
            }
            let mu = self.tables.mu[self.config.flat(b)];
            for i in 0..mu {
                let t = self.config.sigma(b, i as i64);
                if !kappa[self.config.flat(t)].is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `T ∩ 𝔹_𝔭` as a stratum of the single-cycle configuration.
    pub fn restrict_to_cycle(&self, c: usize) -> Stratum {
        let sub = self.config.sub_config(c);
        let bits = (self.mask & self.config.cycle_mask(c)) >> self.config.flat(EmbeddingId::new(c, 0));
        Self::from_mask_unchecked(&sub, bits)
    }
}

/// `c.i` list in `(cycle, pos)` order; the empty stratum renders as "".
impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members().iter().map(|b| b.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

fn compute_tables(config: &SplittingConfig, mask: u64) -> StratumTables {
    let d = config.d();
    let inside = |b: EmbeddingId| mask >> config.flat(b) & 1 == 1;
    let mut chains = Vec::with_capacity(config.num_cycles());
    let mut tilde = 0u64;
    let mut places = Vec::new();
    let mut iw = Vec::new();
    let mut mu = vec![0; d];
    let mut nu = vec![None; d];
    let mut n = vec![None; d];
    let mut n_ext = vec![0; d];
    let mut eps = vec![0i8; d];
    let mut bset = 0u64;

    for c in 0..config.num_cycles() {
        let f = config.cycle_len(c);
        let cm = config.cycle_mask(c);
        if mask & cm == cm {
            chains.push(CycleChains::Full);
            tilde |= cm;
            if f.is_multiple_of(2) {
                iw.push(c);
            } else {
                places.push(Place::Prime(c));
            }
            for b in config.cycle_embeddings(c) {
                n_ext[config.flat(b)] = f;
            }
            continue;
        }

        let mut cyc = Vec::new();
        for b in config.cycle_embeddings(c) {
            if !inside(b) || inside(config.sigma(b, 1)) {
                continue;
            }
            let mut members = vec![b];
            let mut cur = config.sigma(b, -1);
            while inside(cur) {
                members.push(cur);
                cur = config.sigma(cur, -1);
            }
            let chain = Chain { members };
            for m in &chain.members {
                tilde |= 1 << config.flat(*m);
            }
            if chain.m().is_multiple_of(2) {
                tilde |= 1 << config.flat(cur);
            }
            cyc.push(chain);
        }
        chains.push(CycleChains::Chains(cyc));

        let in_tilde = |b: EmbeddingId| tilde >> config.flat(b) & 1 == 1;
        let outside: Vec<EmbeddingId> = config.cycle_embeddings(c).filter(|&b| !in_tilde(b)).collect();
        for b in config.cycle_embeddings(c) {
            let i = config.flat(b);
            mu[i] = (1..=f)
                .find(|&k| !inside(config.sigma(b, k as i64)))
                .expect("cycle not full");
            nu[i] = (0..f).find(|&k| !inside(config.sigma(b, -(k as i64))));
            n[i] = (1..=f).find(|&k| !in_tilde(config.sigma(b, k as i64)));
            n_ext[i] = n[i].unwrap_or(f);
            eps[i] = if !in_tilde(b) || mu[i] % 2 == 1 { 1 } else { -1 };
        }
        let keep = |b: EmbeddingId| match outside.len() {
            0 => false,
            1 => !inside(b) && b != outside[0],
            _ => !inside(b),
        };
        for b in config.cycle_embeddings(c) {
            if keep(b) {
                bset |= 1 << config.flat(b);
            }
        }
    }

    places.extend(
        config
            .embeddings()
            .filter(|&b| tilde >> config.flat(b) & 1 == 1)
            .map(Place::Embedding),
    );
    places.sort();

    StratumTables {
        chains,
        tilde,
        places,
        iw,
        mu,
        nu,
        n,
        n_ext,
        eps,
        bset,
    }
}
