//! Sparse graded exterior algebra over `Z^rank` with p-primary torsion
//! coefficients.
//!
//! A [`Multivector`] maps strictly increasing index tuples (subsets of the
//! standard basis) to nonzero canonical [`PCoeff`] values; absent keys mean
//! zero. Wedges of integer vectors expand through exact minor determinants,
//! contractions follow the alternating-sign interior product, and base
//! change substitutes basis rows through a unimodular matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coeff::PCoeff;
use crate::matrix::{self, IntMatrix};
use crate::util::{self, increasing_tuples};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivector {
    p: u64,
    rank: usize,
    terms: BTreeMap<Vec<usize>, PCoeff>,
}

impl Multivector {
    pub fn zero(p: u64, rank: usize) -> Result<Self> {
        if !util::is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(Self::zero_unchecked(p, rank))
    }

    pub(crate) fn zero_unchecked(p: u64, rank: usize) -> Self {
        Multivector {
            p,
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// `c ⊗ v_1 ∧ ... ∧ v_d` expanded in the standard basis: the
    /// coefficient of `e_I` is `c` times the `d x d` minor of the stacked
    /// vectors on columns `I`.
    pub fn wedge_vectors(p: u64, rank: usize, c: &PCoeff, vectors: &[Vec<BigInt>]) -> Result<Self> {
        if c.p() != p {
            return Err(Error::PrimeMismatch(p, c.p()));
        }
        let mut out = Self::zero(p, rank)?;
        for v in vectors {
            if v.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: v.len(),
                });
            }
        }
        if c.is_zero() {
            return Ok(out);
        }
        let d = vectors.len();
        if d == 0 {
            out.accumulate(Vec::new(), c.clone());
            return Ok(out);
        }
        let stacked = IntMatrix::from_rows(vectors.to_vec())?;
        let all_rows: Vec<usize> = (0..d).collect();
        for idx in increasing_tuples(rank, d) {
            let det = stacked.submatrix(&all_rows, &idx).det()?;
            if det.is_zero() {
                continue;
            }
            out.accumulate(idx, c.scale(&det));
        }
        Ok(out)
    }

    /// Builds from explicit terms; test and fixture helper.
    pub fn from_terms(p: u64, rank: usize, terms: &[(&[usize], PCoeff)]) -> Result<Self> {
        let mut out = Self::zero(p, rank)?;
        for (idx, c) in terms {
            if c.p() != p {
                return Err(Error::PrimeMismatch(p, c.p()));
            }
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Contract(
                    "index tuples must be strictly increasing".into(),
                ));
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= rank) {
                return Err(Error::IndexOutOfRange(bad, rank));
            }
            out.accumulate(idx.to_vec(), c.clone());
        }
        Ok(out)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &PCoeff)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coeff(&self, idx: &[usize]) -> Option<&PCoeff> {
        self.terms.get(idx)
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.terms.keys().map(Vec::len).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The single degree of a homogeneous nonzero multivector.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let ds = self.degrees();
        if ds.len() == 1 {
            Some(ds[0])
        } else {
            None
        }
    }

    fn accumulate(&mut self, idx: Vec<usize>, c: PCoeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&idx) {
            None => {
                self.terms.insert(idx, c);
            }
            Some(old) => {
                let sum = old.add(&c).expect("same prime within one multivector");
                if !sum.is_zero() {
                    self.terms.insert(idx, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.accumulate(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero_unchecked(self.p, self.rank);
        for (idx, c) in &self.terms {
            out.terms.insert(idx.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, m: &BigInt) -> Self {
        let mut out = Self::zero_unchecked(self.p, self.rank);
        for (idx, c) in &self.terms {
            let sc = c.scale(m);
            if !sc.is_zero() {
                out.terms.insert(idx.clone(), sc);
            }
        }
        out
    }

    /// Terms of degree exactly `d`.
    pub fn degree_part(&self, d: usize) -> Self {
        let mut out = Self::zero_unchecked(self.p, self.rank);
        for (idx, c) in &self.terms {
            if idx.len() == d {
                out.terms.insert(idx.clone(), c.clone());
            }
        }
        out
    }

    /// Interior product against the linear form `sum_j v[j] e^j`. Each index
    /// at position i contributes with sign `(-1)^i`.
    pub fn contract_vector(&self, v: &[BigInt]) -> Result<Self> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: v.len(),
            });
        }
        let mut out = Self::zero_unchecked(self.p, self.rank);
        for (idx, c) in &self.terms {
            for (pos, &gi) in idx.iter().enumerate() {
                if v[gi].is_zero() {
                    continue;
                }
                let mut coeff = c.scale(&v[gi]);
                if pos % 2 == 1 {
                    coeff = coeff.neg();
                }
                let mut rest = idx.clone();
                rest.remove(pos);
                out.accumulate(rest, coeff);
            }
        }
        Ok(out)
    }

    /// Interior product against a single dual basis vector `e^j`.
    pub fn contract_index(&self, j: usize) -> Result<Self> {
        if j >= self.rank {
            return Err(Error::IndexOutOfRange(j, self.rank));
        }
        let mut out = Self::zero_unchecked(self.p, self.rank);
        for (idx, c) in &self.terms {
            if let Ok(pos) = idx.binary_search(&j) {
                let coeff = if pos % 2 == 1 { c.neg() } else { c.clone() };
                let mut rest = idx.clone();
                rest.remove(pos);
                out.accumulate(rest, coeff);
            }
        }
        Ok(out)
    }

    /// Interior product against the dual wedge `e^{j_1} ∧ ... ∧ e^{j_k}`,
    /// composed as single contractions applied right to left; an empty list
    /// is the identity.
    pub fn contract_dual(&self, js: &[usize]) -> Result<Self> {
        if js.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Contract(
                "dual indices must be strictly increasing".into(),
            ));
        }
        let mut cur = self.clone();
        for &j in js.iter().rev() {
            cur = cur.contract_index(j)?;
        }
        Ok(cur)
    }

    /// Substitutes `e_i` by row i of `a` and re-expands all wedges. The
    /// result lives in rank `a.cols()`.
    pub fn substitute_rows(&self, a: &IntMatrix) -> Result<Self> {
        if a.rows() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: a.rows(),
            });
        }
        let out_rank = a.cols();
        let mut out = Self::zero_unchecked(self.p, out_rank);
        for (idx, c) in &self.terms {
            let vecs: Vec<Vec<BigInt>> = idx.iter().map(|&i| a.row_vec(i)).collect();
            let w = Self::wedge_vectors(self.p, out_rank, c, &vecs)?;
            out = out.add(&w)?;
        }
        Ok(out)
    }

    /// Coordinates of this multivector with respect to the basis given by
    /// the rows of the unimodular matrix `t`. Inverse to `change_basis`
    /// with `t^-1`.
    pub fn change_basis(&self, t: &IntMatrix) -> Result<Self> {
        if t.rows() != self.rank || t.cols() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: t.rows(),
            });
        }
        let inv = matrix::inverse_unimodular(t)?;
        self.substitute_rows(&inv)
    }

    /// The skew integer matrix `S` (with denominator exponent `n`)
    /// representing a homogeneous degree-2 multivector: contraction against
    /// any vector `v` is exactly `S v / p^n`.
    pub fn as_skew_matrix(&self) -> Result<(IntMatrix, u32)> {
        if self.terms.keys().any(|k| k.len() != 2) {
            return Err(Error::Contract(
                "skew matrix form requires a homogeneous degree-2 multivector".into(),
            ));
        }
        let n = self.terms.values().map(PCoeff::exponent).max().unwrap_or(0);
        let mut s = IntMatrix::zero(self.rank, self.rank);
        for (idx, c) in &self.terms {
            let (i, j) = (idx[0], idx[1]);
            let num = c.numerator_at(n);
            s.set(j, i, num.clone());
            s.set(i, j, -num);
        }
        Ok((s, n))
    }

    /// Coordinate vector of a homogeneous degree-1 multivector.
    pub fn degree1_coords(&self) -> Result<Vec<PCoeff>> {
        if self.terms.keys().any(|k| k.len() != 1) {
            return Err(Error::Contract(
                "coordinates require a degree-1 multivector".into(),
            ));
        }
        let mut out = vec![PCoeff::reduce(self.p, BigInt::zero(), 0); self.rank];
        for (idx, c) in &self.terms {
            out[idx[0]] = c.clone();
        }
        Ok(out)
    }

    /// Integer numerators of a degree-1 multivector over the common
    /// denominator `p^exp`, returned with that exponent.
    pub fn numerator_vector(&self) -> Result<(Vec<BigInt>, u32)> {
        let coords = self.degree1_coords()?;
        let n = coords.iter().map(PCoeff::exponent).max().unwrap_or(0);
        Ok((coords.iter().map(|c| c.numerator_at(n)).collect(), n))
    }

    pub fn to_json(&self) -> MultivectorJson {
        MultivectorJson {
            p: self.p,
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(idx, c)| TermJson {
                    idx: idx.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &MultivectorJson) -> Result<Self> {
        let mut out = Self::zero(json.p, json.rank)?;
        for t in &json.terms {
            if t.idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Contract(
                    "index tuples must be strictly increasing".into(),
                ));
            }
            if let Some(&bad) = t.idx.iter().find(|&&i| i >= json.rank) {
                return Err(Error::IndexOutOfRange(bad, json.rank));
            }
            out.accumulate(t.idx.clone(), PCoeff::parse(&t.coeff, json.p)?);
        }
        Ok(out)
    }
}

/// Canonical JSON form: terms sorted by index tuple, coefficients rendered
/// as `num/p^exp` strings. Round-trips bit-exactly.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MultivectorJson {
    pub p: u64,
    pub rank: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub idx: Vec<usize>,
    pub coeff: String,
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if idx.is_empty() {
                write!(f, "{c}")?;
            } else {
                let basis: Vec<String> = idx.iter().map(|i| format!("e{i}")).collect();
                write!(f, "{c} {}", basis.join("∧"))?;
            }
        }
        Ok(())
    }
}
