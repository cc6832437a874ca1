//! Exact essential-dimension computations for sums of Galois symbols over
//! valued fields.
//!
//! The pipeline: a symbol class (a formal sum of symbols `(a_1,...,a_d)_{p^n}`
//! whose slots are Laurent monomials in the uniformizers) is pushed through
//! the wedge-valuation map into the torsion exterior algebra `⋀Z^r ⊗ Q_p/Z_p`
//! of the value group. Contracting the resulting multivector against dual
//! basis wedges generates a finite abelian p-group whose minimal number of
//! generators is the width of the class; the width is the essential-dimension
//! lower bound, and is exact for monomial classes. Degree-2 classes also get
//! an independent route through a skew-symmetric integer matrix and its
//! elementary divisors, which cross-checks the contraction calculus.
//!
//! All arithmetic is exact: arbitrary-precision integers everywhere, no
//! floating point. Batch sweeps fan out with rayon when the `parallel`
//! feature (default) is enabled and fall back to sequential iteration
//! otherwise; results are bit-identical either way.

pub mod claims;
pub mod coeff;
pub mod corpus;
pub mod ed;
pub mod lattice;
pub mod matrix;
pub mod multivector;
pub mod sweep;
pub mod symbol;

pub(crate) mod util;

pub use coeff::PCoeff;
pub use ed::{
    brauer_invariants, brauer_matrix, classify, contraction_group, ed_report, membership,
    split_bound_check, width, witness, AbelianPGroup, BrauerBlock, BrauerInvariants,
    Classification, EdReport, Overlattice,
};
pub use lattice::Lattice;
pub use matrix::{elementary_divisors, minors_gcd_divisors, smith, IntMatrix, SmithDecomposition};
pub use multivector::Multivector;
pub use symbol::{Slot, SymbolClass, SymbolTerm};

use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-prime modulus {0}")]
    NonPrimeModulus(u64),

    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {0} out of range for rank {1}")]
    IndexOutOfRange(usize, usize),

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("saturate first")]
    NotSaturated,

    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,

    #[error("minors-gcd oracle is limited to matrices with min dimension {0}")]
    MinorsGuard(usize),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("classification requires homogeneous class")]
    MixedDegree,

    #[error("mixed levels: all terms must share one prime power")]
    MixedLevels,

    #[error("index not a p-power divisor of p^{0}")]
    BadOverlatticeIndex(u32),

    #[error("CLAIM FALSIFIED: no zero-sum {d}-subset of Z/{n} containing {j}")]
    ClaimFalsified { n: u64, d: usize, j: u64 },

    #[error("{0} is not coprime to {1}")]
    NotCoprime(u64, u64),

    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
