//! Brute-force verifiers for the self-contained combinatorial and lattice
//! facts the width calculus leans on.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::matrix::{self, IntMatrix};
use crate::util::{self, increasing_tuples};
use crate::{Error, Result};

/// A set of `d` distinct residues mod `n`, containing `j`, summing to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetWitness {
    pub n: u64,
    pub d: usize,
    pub j: u64,
    pub set: Vec<u64>,
}

/// Finds a zero-sum `d`-subset of `Z/n` through `j` by bounded enumeration.
/// One exists for every `d >= 3`, `n >= d + 2`; exhausting the search space
/// is a falsification and comes back as a dedicated fatal error.
pub fn find_zero_sum_subset(n: u64, d: usize, j: u64) -> Result<SubsetWitness> {
    if d < 3 || n < d as u64 + 2 {
        return Err(Error::Contract(
            "subset witness needs d >= 3 and n >= d + 2".into(),
        ));
    }
    if j >= n {
        return Err(Error::Contract(format!("residue {j} out of range mod {n}")));
    }
    let others: Vec<u64> = (0..n).filter(|&x| x != j).collect();
    for combo in increasing_tuples(others.len(), d - 1) {
        let mut sum = j % n;
        for &idx in &combo {
            sum = (sum + others[idx]) % n;
        }
        if sum == 0 {
            let mut set: Vec<u64> = combo.iter().map(|&idx| others[idx]).collect();
            set.push(j);
            set.sort_unstable();
            return Ok(SubsetWitness { n, d, j, set });
        }
    }
    Err(Error::ClaimFalsified { n, d, j })
}

/// Checks that a finite-index sublattice of `Z^r` with index prime to `p`
/// induces a bijection on all exterior powers mod `p^n`.
///
/// The sublattice is `rowspan(diag(d_values) * t)` inside `Z^r`. For each
/// degree the basis wedges of the sublattice are expressed in the ambient
/// wedge basis (products of the `d_values` times minors of `t`); the map is
/// onto mod `p^n` exactly when that matrix stacked over `p^n * I` has all
/// elementary divisors 1, and onto between equal finite groups means
/// bijective.
pub fn verify_prime_index_iso(d_values: &[u64], t: &IntMatrix, p: u64, n: u32) -> Result<bool> {
    if !util::is_prime(p) {
        return Err(Error::NonPrimeModulus(p));
    }
    let r = d_values.len();
    if t.rows() != r || t.cols() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            got: t.rows(),
        });
    }
    if !t.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    for &d in d_values {
        if d == 0 || d % p == 0 {
            return Err(Error::NotCoprime(d, p));
        }
    }
    let pn = util::pow_big(p, n);
    for degree in 1..=r {
        let tuples = increasing_tuples(r, degree);
        let k = tuples.len();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(k + k);
        for ti in &tuples {
            let scale: BigInt = ti.iter().map(|&i| BigInt::from(d_values[i])).product();
            let row: Vec<BigInt> = tuples
                .iter()
                .map(|tj| &scale * t.submatrix(ti, tj).det().expect("square minor"))
                .collect();
            rows.push(row);
        }
        for i in 0..k {
            let mut rel = vec![BigInt::zero(); k];
            rel[i] = pn.clone();
            rows.push(rel);
        }
        let stacked = IntMatrix::from_rows(rows)?;
        let divisors = matrix::elementary_divisors(&stacked);
        if divisors.iter().any(|d| !num_traits::One::is_one(d)) {
            return Ok(false);
        }
    }
    Ok(true)
}
