//! Seeded random corpora for the cross-check sweeps and benches.
//!
//! Everything here is deterministic: a fixed ChaCha stream per corpus, so
//! identical invocations produce identical cases and bit-identical reports.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ed::Overlattice;
use crate::lattice::Lattice;
use crate::matrix::IntMatrix;
use crate::multivector::Multivector;
use crate::symbol::{Slot, SymbolClass, SymbolTerm};

pub const DEGREE2_SEED: u64 = 0xed00_0004;
pub const HOMOGENEOUS_SEED: u64 = 0xed00_0006;
pub const LATTICE_SEED: u64 = 0xed00_0007;
pub const SNF_SEED: u64 = 0xed00_0008;
pub const PRIME_INDEX_SEED: u64 = 0xed00_0010;
pub const SPLIT_SEED: u64 = 0xed00_0011;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random unimodular matrix: a short product of shears, swaps, and row
/// negations applied to the identity. Entries stay desk scale.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        match rng.gen_range(0..6) {
            0 => m.swap_rows(i, j),
            1 => m.negate_row(i),
            _ => {
                let c = BigInt::from(rng.gen_range(-2i64..=2));
                m.row_op(i, j, &c);
            }
        }
    }
    m
}

fn random_slot(rng: &mut ChaCha8Rng, rank: usize) -> Slot {
    let valuation = (0..rank)
        .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
        .collect();
    Slot {
        valuation,
        scalar: BigInt::from(1),
    }
}

fn random_class(rng: &mut ChaCha8Rng, degree: usize, primes: &[u64]) -> SymbolClass {
    let p = primes[rng.gen_range(0..primes.len())];
    let n = rng.gen_range(1u32..=3);
    let rank = rng.gen_range(2usize..=6);
    let term_count = rng.gen_range(1usize..=4);
    let terms = (0..term_count)
        .map(|_| {
            let weight = match rng.gen_range(0..6) {
                0 => BigInt::from(2),
                1 => BigInt::from(3),
                2 => BigInt::from(-1),
                _ => BigInt::from(1),
            };
            SymbolTerm {
                level: n,
                weight,
                slots: (0..degree).map(|_| random_slot(rng, rank)).collect(),
            }
        })
        .collect();
    SymbolClass::new(p, rank, terms).expect("constructed within contract")
}

/// Random degree-2 classes: r <= 6, up to 4 terms, slot entries in [-9, 9],
/// p in {2, 3, 5}, level up to 3, occasional integer weights.
pub fn random_degree2_classes(count: usize, seed: u64) -> Vec<SymbolClass> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| random_class(&mut rng, 2, &[2, 3, 5]))
        .collect()
}

/// Random homogeneous classes of degree 2 or 3 under the same bounds.
pub fn random_homogeneous_classes(count: usize, seed: u64) -> Vec<SymbolClass> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let d = if rng.gen_bool(0.5) { 2 } else { 3 };
            random_class(&mut rng, d, &[2, 3, 5])
        })
        .collect()
}

/// Random integer matrices up to `max_dim` square-ish shapes with entries
/// in `[-bound, bound]`.
pub fn random_matrices(count: usize, max_dim: usize, bound: i64, seed: u64) -> Vec<IntMatrix> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let r = rng.gen_range(1..=max_dim);
            let c = rng.gen_range(1..=max_dim);
            let rows: Vec<Vec<BigInt>> = (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                        .collect()
                })
                .collect();
            IntMatrix::from_rows(rows).expect("rectangular by construction")
        })
        .collect()
}

pub fn random_lattice(rng: &mut ChaCha8Rng, ambient: usize) -> Lattice {
    let rows = rng.gen_range(1..=ambient);
    let gens: Vec<Vec<BigInt>> = (0..rows)
        .map(|_| {
            (0..ambient)
                .map(|_| BigInt::from(rng.gen_range(-4i64..=4)))
                .collect()
        })
        .collect();
    Lattice::from_generators(ambient, gens).expect("ambient length respected")
}

/// One split-bound scenario: a degree-2 multivector killed by an
/// overlattice of index `p^index_exp` with `index_exp <= n`.
pub struct SplitCase {
    pub multivector: Multivector,
    pub overlattice: Overlattice,
    pub p: u64,
    pub n: u32,
    /// Width the construction guarantees (2 * pair count).
    pub expected_width: usize,
}

/// Builds `count` scenarios. The first is the hand-checked index-p case
/// `1/p ⊗ e0∧e1` killed by `<e0/p, e1>` with width 2 = 2n; the rest are
/// the same pattern on more pairs, pushed through random unimodular
/// coordinate changes.
pub fn split_cases(count: usize, seed: u64) -> Vec<SplitCase> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    for case_idx in 0..count {
        let (r, pairs, p, extra) = if case_idx == 0 {
            (2usize, 1usize, 2u64, 0u32)
        } else {
            let r = rng.gen_range(2usize..=6);
            let pairs = rng.gen_range(1..=r / 2);
            let p = if rng.gen_bool(0.5) { 2 } else { 3 };
            (r, pairs, p, rng.gen_range(0u32..=1))
        };
        let n = pairs as u32 + extra;
        let coeff = crate::coeff::PCoeff::new(p, 1, 1).expect("prime");
        let mut terms: Vec<(Vec<usize>, crate::coeff::PCoeff)> = Vec::new();
        for k in 0..pairs {
            terms.push((vec![2 * k, 2 * k + 1], coeff.clone()));
        }
        let refs: Vec<(&[usize], crate::coeff::PCoeff)> = terms
            .iter()
            .map(|(i, c)| (i.as_slice(), c.clone()))
            .collect();
        let m0 = Multivector::from_terms(p, r, &refs).expect("valid terms");
        // overlattice divides the even coordinate of each pair by p;
        // scaled basis at denominator p: rows p*e_i except e_{2k} rows
        let mut basis = IntMatrix::zero(r, r);
        for i in 0..r {
            let halved = i % 2 == 0 && i / 2 < pairs;
            basis.set(i, i, BigInt::from(if halved { 1 } else { p as i64 }));
        }
        let (m, basis) = if case_idx == 0 {
            (m0, basis)
        } else {
            let t = random_unimodular(&mut rng, r);
            (
                m0.substitute_rows(&t).expect("square substitution"),
                basis.mul(&t).expect("square product"),
            )
        };
        out.push(SplitCase {
            multivector: m,
            overlattice: Overlattice::new(basis, 1).expect("square"),
            p,
            n,
            expected_width: 2 * pairs,
        });
    }
    out
}

pub struct PrimeIndexCase {
    pub d_values: Vec<u64>,
    pub t: IntMatrix,
    pub p: u64,
    pub n: u32,
}

/// Random prime-to-p index scenarios: r <= 4, n <= 2, p in {2, 3}.
pub fn prime_index_cases(count: usize, seed: u64) -> Vec<PrimeIndexCase> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let r = rng.gen_range(1usize..=4);
            let p = if rng.gen_bool(0.5) { 2u64 } else { 3 };
            let n = rng.gen_range(1u32..=2);
            let d_values = (0..r)
                .map(|_| loop {
                    let d = rng.gen_range(1u64..=9);
                    if d % p != 0 {
                        break d;
                    }
                })
                .collect();
            let t = random_unimodular(&mut rng, r);
            PrimeIndexCase { d_values, t, p, n }
        })
        .collect()
}
