//! Subgroups of `Z^r` presented by bases, with saturation and basis
//! extension.
//!
//! Bases are canonicalized by row Hermite normal form, so equal lattices
//! compare equal and all output is deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::matrix::{self, IntMatrix};
use crate::{Error, Result};

/// A full-rank-by-construction basis of a subgroup of `Z^ambient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: IntMatrix::zero(0, ambient),
        }
    }

    /// Builds the lattice spanned by the given (possibly dependent)
    /// generators. Zero rows drop out of the Hermite form.
    pub fn from_generators(ambient: usize, gens: Vec<Vec<BigInt>>) -> Result<Self> {
        for g in &gens {
            if g.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    got: g.len(),
                });
            }
        }
        let m = IntMatrix::from_rows(gens)?;
        let basis = if m.rows() == 0 {
            IntMatrix::zero(0, ambient)
        } else {
            matrix::hermite_basis(&m)
        };
        Ok(Lattice { ambient, basis })
    }

    pub fn from_generators_i64(ambient: usize, gens: &[&[i64]]) -> Self {
        Self::from_generators(
            ambient,
            gens.iter()
                .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("generator length mismatch")
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Joint span with another lattice in the same ambient space.
    pub fn join(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient != other.ambient {
            return Err(Error::RankMismatch(self.ambient, other.ambient));
        }
        let mut gens: Vec<Vec<BigInt>> = (0..self.rank()).map(|i| self.basis.row_vec(i)).collect();
        gens.extend((0..other.rank()).map(|i| other.basis.row_vec(i)));
        Lattice::from_generators(self.ambient, gens)
    }

    /// True when the basis spans a direct summand of `Z^ambient`, i.e. all
    /// elementary divisors of the basis matrix are 1.
    pub fn is_saturated(&self) -> bool {
        if self.rank() == 0 {
            return true;
        }
        matrix::elementary_divisors(&self.basis)
            .iter()
            .all(BigInt::is_one)
    }

    /// The largest subgroup of `Z^ambient` with the same rational span:
    /// `(L ⊗ Q) ∩ Z^ambient`. Idempotent and rank preserving.
    pub fn saturate(&self) -> Lattice {
        let s = self.rank();
        if s == 0 {
            return self.clone();
        }
        // u*b*v = d with all diagonal entries nonzero (full row rank), so the
        // rational row span of b is spanned over Z by the first s rows of
        // v^-1 once the divisors are divided out.
        let snf = matrix::smith(&self.basis);
        let vinv = matrix::inverse_unimodular(&snf.v).expect("v is unimodular by construction");
        let gens: Vec<Vec<BigInt>> = (0..s).map(|i| vinv.row_vec(i)).collect();
        Lattice::from_generators(self.ambient, gens).expect("rows have ambient length")
    }

    /// A unimodular `ambient x ambient` matrix whose first `rank` rows are
    /// the basis of this lattice. Requires the lattice to be saturated.
    pub fn basis_extend(&self) -> Result<IntMatrix> {
        if !self.is_saturated() {
            return Err(Error::NotSaturated);
        }
        let r = self.ambient;
        let s = self.rank();
        if s == 0 {
            return Ok(IntMatrix::identity(r));
        }
        let snf = matrix::smith(&self.basis);
        let vinv = matrix::inverse_unimodular(&snf.v).expect("v is unimodular by construction");
        // rows of vinv form a basis of Z^r whose first s rows span the same
        // lattice as our basis; splicing our basis rows on top keeps the
        // determinant +-1.
        let mut rows: Vec<Vec<BigInt>> = (0..s).map(|i| self.basis.row_vec(i)).collect();
        rows.extend((s..r).map(|i| vinv.row_vec(i)));
        let ext = IntMatrix::from_rows(rows)?;
        debug_assert!(ext.is_unimodular());
        Ok(ext)
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.basis.to_string_rows()
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() == 0 {
            return write!(f, "0 (rank 0 in Z^{})", self.ambient);
        }
        write!(f, "{}", self.basis)
    }
}
