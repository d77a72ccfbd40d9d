//! Bi-weights `(λ, κ)` and the quotient `Δ = ℤ^𝔹 / ⟨h_β⟩`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::{cone_d, f_weight, weight_basis, Family, WeightKind};
use crate::cone::{Cone, GeneratorRep, QVector};
use crate::error::{Error, Result};
use crate::splitting::{SplittingConfig, Stratum};

/// `(λ, κ)`, flattened as `λ ++ κ` when it meets the cone engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiWeight {
    pub lambda: QVector,
    pub kappa: QVector,
}

impl BiWeight {
    pub fn new(lambda: QVector, kappa: QVector) -> Result<Self> {
        kappa.check_dim(lambda.dim())?;
        Ok(Self { lambda, kappa })
    }

    pub fn to_vector(&self) -> QVector {
        self.lambda.concat(&self.kappa)
    }

    pub fn neg(&self) -> BiWeight {
        Self {
            lambda: self.lambda.neg(),
            kappa: self.kappa.neg(),
        }
    }
}

impl fmt::Display for BiWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.lambda, self.kappa)
    }
}

/// Per-cycle residues `Σ_j k_{β_j} p^j mod (p^f − 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaClass {
    pub residues: Vec<BigInt>,
    pub moduli: Vec<BigInt>,
}

impl DeltaClass {
    pub fn zero(config: &SplittingConfig) -> Self {
        let moduli = moduli(config);
        Self {
            residues: vec![BigInt::zero(); moduli.len()],
            moduli,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for DeltaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (r, m)) in self.residues.iter().zip(&self.moduli).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r} mod {m}")?;
        }
        Ok(())
    }
}

fn moduli(config: &SplittingConfig) -> Vec<BigInt> {
    config
        .cycles()
        .iter()
        .map(|&f| Pow::pow(BigInt::from(config.p()), f) - BigInt::one())
        .collect()
}

/// Class of an integer weight in `Δ`.
pub fn delta_class(config: &SplittingConfig, kappa: &QVector) -> Result<DeltaClass> {
    kappa.check_dim(config.d())?;
    let ints = kappa.to_integers().ok_or(Error::NonInteger)?;
    let moduli = moduli(config);
    let p = BigInt::from(config.p());
    let residues = (0..config.num_cycles())
        .map(|c| {
            let mut acc = BigInt::zero();
            let mut pw = BigInt::one();
            for b in config.cycle_embeddings(c) {
                acc += &ints[config.flat(b)] * &pw;
                pw *= &p;
            }
            acc.mod_floor(&moduli[c])
        })
        .collect();
    Ok(DeltaClass { residues, moduli })
}

/// Lines `±(h_β, 0)` for all `β` and `±(−e_β, b_β)` for `β ∈ T`; rays
/// `(0, f_β(T))` off `T̃` and `(e_{σ^nβ}, f_β(T))` on `T̃ − T` (extended `n`).
pub fn gl2_generators(t: &Stratum) -> (Vec<BiWeight>, Vec<BiWeight>) {
    let config = t.config();
    let d = config.d();
    let zero = QVector::zeros(d);
    let mut lines = Vec::new();
    for b in config.embeddings() {
        let h = weight_basis(config, WeightKind::H, b).expect("valid");
        lines.push(BiWeight::new(h, zero.clone()).expect("same dim"));
    }
    for b in t.members() {
        let e = weight_basis(config, WeightKind::E, b).expect("valid");
        let bw = weight_basis(config, WeightKind::B, b).expect("valid");
        lines.push(BiWeight::new(e.neg(), bw).expect("same dim"));
    }
    let rays = t
        .complement()
        .into_iter()
        .map(|b| {
            let f = f_weight(t, b).expect("b outside T");
            let lambda = if t.in_tilde(b) {
                let n = t.n(b, true).expect("extended n");
                QVector::unit(d, config.flat(config.sigma(b, n as i64)))
            } else {
                zero.clone()
            };
            BiWeight::new(lambda, f).expect("same dim")
        })
        .collect();
    (rays, lines)
}

/// The cone spanned by [`gl2_generators`], completed.
pub fn gl2_cone(t: &Stratum) -> Cone {
    let (rays, lines) = gl2_generators(t);
    let rep = GeneratorRep {
        rays: rays.iter().map(BiWeight::to_vector).collect(),
        lines: lines.iter().map(BiWeight::to_vector).collect(),
    };
    Cone::from_generators(2 * t.config().d(), rep.rays, rep.lines)
        .expect("bi-weights have dimension 2d")
        .complete()
}

/// `ℚ^𝔹 × 𝒟_T`.
pub fn gl2_product_cone(t: &Stratum) -> Cone {
    let d = t.config().d();
    let dt = cone_d(t, Family::GPrime);
    let g = dt.generators().expect("complete");
    let zero = QVector::zeros(d);
    let lift = |v: &QVector| zero.concat(v);
    let mut lines: Vec<QVector> = (0..d).map(|i| QVector::unit(d, i).concat(&zero)).collect();
    lines.extend(g.lines.iter().map(lift));
    let rays = g.rays.iter().map(lift).collect();
    Cone::from_generators(2 * d, rays, lines)
        .expect("dimension 2d")
        .complete()
}
