//! Exact weight cones of Goren–Oort strata of Hilbert modular varieties.
//!
//! The crate is organised bottom-up:
//!
//! * [`cone`] is a self-contained engine for rational polyhedral cones:
//!   generator and constraint representations, conversion between them by
//!   double description, duality, membership with certificates, and cone
//!   algebra. Everything is exact (`BigRational` / `BigInt`).
//! * [`splitting`] holds the Frobenius-orbit combinatorics of the embedding
//!   set: cycles, strata `T`, chains, the closure `T̃`, the index tables
//!   `μ, n, ν`, sign functions and the admissible set.
//! * [`weights`] builds the weight vectors, generator families, functionals,
//!   reductions, minimal cones, section recipes and the GL₂ bi-weight data of
//!   a stratum on top of the two modules above.
//! * [`verify`] runs every finitely checkable identity over single strata or
//!   whole sweeps and produces deterministic, serialisable reports.
//!
//! All membership statements concern saturated rational cones, never the
//! existence of sections at individual lattice points.

pub mod cone;
pub mod encoding;
mod error;
pub mod splitting;
pub mod verify;
pub mod weights;

pub use cone::{Cone, ConstraintRep, GeneratorRep, LinearForm, LinearMap, Membership, QVector};
pub use error::{Error, Result};
pub use splitting::{EmbeddingId, Place, SplittingConfig, Stratum, StratumTables};
pub use weights::{BiWeight, DeltaClass, FormalMonomial, MinimalVariant, WeightKind};
