//! Width, witnesses, classification, and essential-dimension reports.
//!
//! The central object is the finite abelian p-group generated by the
//! degree-1 parts of all contractions of a multivector. Its invariant
//! factors come out of a Smith normal form of the numerator matrix
//! augmented by p-power relations; the factor count is the width, which is
//! the essential-dimension lower bound and is exact for monomial classes.
//! Degree-2 classes additionally run through a skew-symmetric integer
//! matrix whose elementary divisors give the same answers by an
//! independent route.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::PCoeff;
use crate::lattice::Lattice;
use crate::matrix::{self, IntMatrix};
use crate::multivector::Multivector;
use crate::symbol::SymbolClass;
use crate::util::{self, increasing_tuples};
use crate::{Error, Result};

/// A finite abelian p-group presented by invariant factors
/// `k_1 | k_2 | ... | k_s` (each greater than 1, ascending divisibility)
/// together with degree-1 multivector generators of matching orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPGroup {
    p: u64,
    factors: Vec<BigInt>,
    generators: Vec<Multivector>,
}

impl AbelianPGroup {
    pub fn trivial(p: u64) -> Self {
        AbelianPGroup {
            p,
            factors: Vec::new(),
            generators: Vec::new(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn generators(&self) -> &[Multivector] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Minimal number of generators, i.e. the F_p-dimension of group mod p.
    pub fn min_generators(&self) -> usize {
        self.factors.len()
    }

    /// Recomputes invariant factors from the stored generators and checks
    /// they reproduce the stored list. Used by tests.
    pub fn verify(&self) -> bool {
        let vectors: Vec<Vec<PCoeff>> = self
            .generators
            .iter()
            .map(|g| g.degree1_coords().expect("generators are degree 1"))
            .collect();
        let rank = self.generators.first().map_or(0, Multivector::rank);
        let recomputed = factors_from_generator_coords(self.p, rank, &vectors);
        recomputed.is_ok_and(|(f, _)| f == self.factors)
    }
}

/// Invariant factors and reduced generators of the subgroup of
/// `(Q_p/Z_p)^rank` generated by the given coordinate vectors.
fn factors_from_generator_coords(
    p: u64,
    rank: usize,
    gens: &[Vec<PCoeff>],
) -> Result<(Vec<BigInt>, Vec<Vec<PCoeff>>)> {
    let denom_exp = gens
        .iter()
        .flat_map(|g| g.iter().map(PCoeff::exponent))
        .max()
        .unwrap_or(0);
    if denom_exp == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let pn = util::pow_big(p, denom_exp);
    // rows generating the lift of the group inside Z^rank, relations p^N Z^rank included
    let mut rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.iter().map(|c| c.numerator_at(denom_exp)).collect())
        .collect();
    for i in 0..rank {
        let mut rel = vec![BigInt::zero(); rank];
        rel[i] = pn.clone();
        rows.push(rel);
    }
    let stacked = IntMatrix::from_rows(rows)?;
    let snf = matrix::smith(&stacked);
    let vinv = matrix::inverse_unimodular(&snf.v).expect("v is unimodular by construction");
    let mut factors = Vec::new();
    let mut generators = Vec::new();
    for i in (0..rank).rev() {
        let e = snf.d.get(i, i);
        debug_assert!(pn.mod_floor(e).is_zero(), "divisor must divide p^N");
        let k = &pn / e;
        if k.is_one() {
            continue;
        }
        factors.push(k);
        let coords: Vec<PCoeff> = vinv
            .row(i)
            .iter()
            .map(|w| PCoeff::reduce(p, e * w, denom_exp))
            .collect();
        generators.push(coords);
    }
    Ok((factors, generators))
}

/// The finite subgroup of `(Q_p/Z_p)^rank` generated by degree-1 parts of
/// all contractions of `m`. Dual-basis wedge tuples of size `d - 1` against
/// each homogeneous degree-`d` part suffice (contraction is linear in the
/// dual argument); the empty tuple picks up degree-1 parts of `m` itself.
pub fn contraction_group(m: &Multivector) -> AbelianPGroup {
    let rank = m.rank();
    let p = m.p();
    let mut gens: Vec<Vec<PCoeff>> = Vec::new();
    for d in m.degrees() {
        if d == 0 {
            continue;
        }
        let part = m.degree_part(d);
        for js in increasing_tuples(rank, d - 1) {
            let g = part
                .contract_dual(&js)
                .expect("indices in range by construction");
            if !g.is_zero() {
                gens.push(g.degree1_coords().expect("contraction drops to degree 1"));
            }
        }
    }
    let (factors, coord_gens) =
        factors_from_generator_coords(p, rank, &gens).expect("internally consistent dimensions");
    let generators = coord_gens
        .into_iter()
        .map(|coords| {
            let terms: Vec<(Vec<usize>, PCoeff)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (vec![i], c))
                .collect();
            let refs: Vec<(&[usize], PCoeff)> = terms
                .iter()
                .map(|(i, c)| (i.as_slice(), c.clone()))
                .collect();
            Multivector::from_terms(p, rank, &refs).expect("valid degree-1 terms")
        })
        .collect();
    let group = AbelianPGroup {
        p,
        factors,
        generators,
    };
    debug_assert!(group.verify(), "reduced generators must present the group");
    group
}

/// Width of a torsion multivector: the minimal rank of a subgroup
/// `W ⊂ Z^rank` supporting it, computed as the minimal number of
/// generators of the contraction group.
pub fn width(m: &Multivector) -> usize {
    contraction_group(m).min_generators()
}

/// A rank-`width` subgroup witnessing the width: generators of the
/// contraction group are lifted to integer vectors and saturated.
pub fn witness(m: &Multivector) -> Lattice {
    witness_from_group(m, &contraction_group(m))
}

fn witness_from_group(m: &Multivector, group: &AbelianPGroup) -> Lattice {
    let rank = m.rank();
    let rows: Vec<Vec<BigInt>> = group
        .generators()
        .iter()
        .map(|g| g.numerator_vector().expect("generators are degree 1").0)
        .collect();
    Lattice::from_generators(rank, rows)
        .expect("generator coordinates have ambient length")
        .saturate()
}

/// Whether `m` lies in the image of `⋀W/p^∞ -> ⋀Z^rank/p^∞`. Only the
/// saturation of `W` matters: the torsion coefficients are divisible, so
/// scaling a basis vector by a nonzero integer does not change the image.
pub fn membership(m: &Multivector, w: &Lattice) -> bool {
    assert_eq!(
        w.ambient_rank(),
        m.rank(),
        "lattice ambient rank must match the multivector rank"
    );
    if m.is_zero() {
        return true;
    }
    let sat = w.saturate();
    let ext = sat.basis_extend().expect("saturated by construction");
    let coords = m.change_basis(&ext).expect("basis extension is unimodular");
    let inside = coords
        .terms()
        .all(|(idx, _)| idx.iter().all(|&i| i < sat.rank()));
    inside
}

/// How a homogeneous class sits in the symbol hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Zero,
    Symbol,
    NonSymbol,
    Mixed,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::Zero => "Zero",
            Classification::Symbol => "Symbol",
            Classification::NonSymbol => "NonSymbol",
            Classification::Mixed => "Mixed",
        };
        write!(f, "{s}")
    }
}

/// Classifies a homogeneous multivector of degree >= 1 by its width:
/// zero, a single symbol (width <= degree), or a non-symbol
/// (width >= degree + 2). Width degree + 1 cannot occur; hitting it is a
/// loud internal failure rather than a return value.
pub fn classify(m: &Multivector) -> Result<Classification> {
    if m.is_zero() {
        return Ok(Classification::Zero);
    }
    let d = match m.homogeneous_degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::MixedDegree),
    };
    Ok(classify_by_width(width(m), d))
}

fn classify_by_width(rho: usize, degree: usize) -> Classification {
    if rho == 0 {
        Classification::Zero
    } else if rho <= degree {
        Classification::Symbol
    } else if rho == degree + 1 {
        panic!(
            "width {} equals degree + 1 for a homogeneous degree-{} class; \
             this falsifies the width gap and must be investigated",
            rho, degree
        );
    } else {
        Classification::NonSymbol
    }
}

/// The skew-symmetric integer matrix of a homogeneous degree-2 class at a
/// single level: `M = sum_i w_i (ν(a_i) ν(b_i)^t - ν(b_i) ν(a_i)^t)`.
pub fn brauer_matrix(c: &SymbolClass) -> Result<IntMatrix> {
    if c.homogeneous_degree() != Some(2) {
        return Err(Error::Contract(
            "brauer matrix requires a homogeneous degree-2 class".into(),
        ));
    }
    if c.common_level().is_none() {
        return Err(Error::MixedLevels);
    }
    let r = c.rank();
    let mut m = IntMatrix::zero(r, r);
    for term in c.terms() {
        let a = &term.slots[0].valuation;
        let b = &term.slots[1].valuation;
        for i in 0..r {
            for j in 0..r {
                let add = &term.weight * (&a[i] * &b[j] - &b[i] * &a[j]);
                if !add.is_zero() {
                    let v = m.get(i, j) + add;
                    m.set(i, j, v);
                }
            }
        }
    }
    Ok(m)
}

/// Elementary-divisor data of the Brauer route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerInvariants {
    /// Elementary divisors `d_1 | d_2 | ... | d_r` of the skew matrix.
    pub divisors: Vec<BigInt>,
    /// Count of divisors not divisible by `p^n`; zero divisors never count.
    pub i0: usize,
    /// Invariant factors `p^n / gcd(p^n, d_i)` with trivial ones dropped,
    /// ascending divisibility.
    pub factors: Vec<BigInt>,
}

pub fn brauer_invariants(m: &IntMatrix, p: u64, n: u32) -> Result<BrauerInvariants> {
    if !m.is_square() {
        return Err(Error::NotSkewSymmetric);
    }
    for i in 0..m.rows() {
        for j in 0..=i {
            if *m.get(i, j) != -m.get(j, i) {
                return Err(Error::NotSkewSymmetric);
            }
        }
    }
    if !util::is_prime(p) {
        return Err(Error::NonPrimeModulus(p));
    }
    let divisors = matrix::elementary_divisors(m);
    let pn = util::pow_big(p, n);
    let mut factors = Vec::new();
    for d in divisors.iter().rev() {
        // p^n divides 0, so zero divisors contribute nothing
        let g = if d.is_zero() { pn.clone() } else { pn.gcd(d) };
        let k = &pn / g;
        if !k.is_one() {
            factors.push(k);
        }
    }
    let i0 = factors.len();
    Ok(BrauerInvariants {
        divisors,
        i0,
        factors,
    })
}

/// Degree-2 block of an [`EdReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerBlock {
    pub matrix: IntMatrix,
    pub divisors: Vec<BigInt>,
    pub i0: usize,
}

/// Everything the calculator knows about one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdReport {
    pub p: u64,
    pub rank: usize,
    /// Slot count shared by all terms; `None` for mixed-degree classes.
    pub degree: Option<usize>,
    pub rho: usize,
    pub ed_lower_bound: usize,
    /// True when the bound is an equality: no unit-scalar slots, or the
    /// caller asserted a strictly Henselian base field.
    pub exact: bool,
    pub classification: Classification,
    pub a_omega: AbelianPGroup,
    pub witness: Lattice,
    pub brauer: Option<BrauerBlock>,
}

/// Runs the full pipeline on a class. `henselian` asserts a strictly
/// Henselian base so the report may claim exactness despite unit slots.
pub fn ed_report(c: &SymbolClass, henselian: bool) -> EdReport {
    let omega = c.wedge_valuation();
    let group = contraction_group(&omega);
    let rho = group.min_generators();
    let wit = witness_from_group(&omega, &group);
    let degree = c.homogeneous_degree();
    let classification = match degree {
        None => Classification::Mixed,
        Some(_) if omega.is_zero() => Classification::Zero,
        Some(d) => classify_by_width(rho, d),
    };
    let brauer = if degree == Some(2) {
        // mixed levels are lifted to the common maximum first:
        // w (a,b)_{p^n} = w p^{N-n} (a,b)_{p^N}
        let (lifted, n) = c.at_common_level();
        let m = brauer_matrix(&lifted).expect("homogeneous degree 2 at one level");
        let inv = brauer_invariants(&m, c.p(), n).expect("skew-symmetric by construction");
        Some(BrauerBlock {
            matrix: m,
            divisors: inv.divisors,
            i0: inv.i0,
        })
    } else {
        None
    };
    EdReport {
        p: c.p(),
        rank: c.rank(),
        degree,
        rho,
        ed_lower_bound: rho,
        exact: henselian || !c.has_unit_slot(),
        classification,
        a_omega: group,
        witness: wit,
        brauer,
    }
}

impl EdReport {
    pub fn to_json(&self) -> EdReportJson {
        EdReportJson {
            p: self.p,
            rank: self.rank,
            degree: self.degree,
            rho: self.rho,
            ed_lower_bound: self.ed_lower_bound,
            exact: self.exact,
            classification: self.classification,
            a_omega: FactorsJson {
                factors: self
                    .a_omega
                    .factors()
                    .iter()
                    .map(BigInt::to_string)
                    .collect(),
            },
            witness: self.witness.to_string_rows(),
            brauer: self.brauer.as_ref().map(|b| BrauerJson {
                M: b.matrix.to_string_rows(),
                divisors: b.divisors.iter().map(BigInt::to_string).collect(),
                i0: b.i0,
            }),
        }
    }
}

/// Stable-field-order JSON form of a report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdReportJson {
    pub p: u64,
    pub rank: usize,
    pub degree: Option<usize>,
    pub rho: usize,
    pub ed_lower_bound: usize,
    pub exact: bool,
    pub classification: Classification,
    pub a_omega: FactorsJson,
    pub witness: Vec<Vec<String>>,
    pub brauer: Option<BrauerJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorsJson {
    pub factors: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[allow(non_snake_case)]
pub struct BrauerJson {
    pub M: Vec<Vec<String>>,
    pub divisors: Vec<String>,
    pub i0: usize,
}

/// An overlattice `Γ' = (1/p^denom_exp) · rowspan(basis)` of `Z^r`,
/// encoded integrally.
#[derive(Clone, Debug)]
pub struct Overlattice {
    pub basis: IntMatrix,
    pub denom_exp: u32,
}

impl Overlattice {
    pub fn new(basis: IntMatrix, denom_exp: u32) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::DimensionMismatch {
                expected: basis.rows(),
                got: basis.cols(),
            });
        }
        Ok(Overlattice { basis, denom_exp })
    }
}

/// Split bound: if a degree-2 multivector dies in an overlattice of index
/// dividing `p^n`, its width is at most `2n`. Returns the truth of that
/// implication for the given pair; a `false` return would falsify the
/// bound and is reported as a property failure by the sweeps.
pub fn split_bound_check(m: &Multivector, over: &Overlattice, p: u64, n: u32) -> Result<bool> {
    if m.p() != p {
        return Err(Error::PrimeMismatch(m.p(), p));
    }
    if !m.is_zero() && m.homogeneous_degree() != Some(2) {
        return Err(Error::Contract(
            "split bound applies to homogeneous degree-2 multivectors".into(),
        ));
    }
    let r = m.rank();
    if over.basis.rows() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            got: over.basis.rows(),
        });
    }
    // Coordinates of the standard basis inside the overlattice:
    // C = p^N B^-1 = V diag(p^N / d_i) U from the Smith form of B. The
    // inclusion is valid only when every d_i divides p^N, and the index
    // prod(p^N / d_i) must divide p^n.
    let pn_denom = util::pow_big(p, over.denom_exp);
    let snf = matrix::smith(&over.basis);
    let mut index_exp: u64 = 0;
    let mut diag = IntMatrix::zero(r, r);
    for i in 0..r {
        let d = snf.d.get(i, i);
        if d.is_zero() || !pn_denom.mod_floor(d).is_zero() {
            return Err(Error::BadOverlatticeIndex(n));
        }
        let q = &pn_denom / d;
        // q is a power of p because d divides p^N
        let mut exp = 0u64;
        let mut rest = q.clone();
        let big_p = BigInt::from(p);
        while !rest.is_one() {
            rest /= &big_p;
            exp += 1;
        }
        index_exp += exp;
        diag.set(i, i, q);
    }
    if index_exp > u64::from(n) {
        return Err(Error::BadOverlatticeIndex(n));
    }
    let coords = snf.v.mul(&diag)?.mul(&snf.u)?;
    let image = m.substitute_rows(&coords)?;
    if !image.is_zero() {
        // hypothesis fails, claim vacuously true
        return Ok(true);
    }
    Ok(width(m) <= 2 * n as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(p: u64, num: i64, exp: u32) -> PCoeff {
        PCoeff::new(p, num, exp).unwrap()
    }

    fn factors_i64(g: &AbelianPGroup) -> Vec<i64> {
        g.factors()
            .iter()
            .map(|f| i64::try_from(f).unwrap())
            .collect()
    }

    #[test]
    fn contraction_group_generic_family() {
        for (r, d, p, n) in [(1usize, 2usize, 2u64, 1u32), (2, 3, 3, 1), (2, 2, 2, 2)] {
            let c = SymbolClass::generic(r, d, p, n).unwrap();
            let g = contraction_group(&c.wedge_valuation());
            let pn = i64::try_from(util::pow_big(p, n)).unwrap();
            assert_eq!(factors_i64(&g), vec![pn; r * d]);
            assert!(g.verify());
        }
    }

    #[test]
    fn contraction_group_zero() {
        let m = Multivector::zero(2, 4).unwrap();
        let g = contraction_group(&m);
        assert!(g.is_trivial());
        assert_eq!(width(&m), 0);
    }

    #[test]
    fn contraction_group_mixed_orders() {
        // 1/2 (e0^e1 + e2^e3) + 1/4 e4^e5 over rank 6
        let m = Multivector::from_terms(
            2,
            6,
            &[
                (&[0, 1], pc(2, 1, 1)),
                (&[2, 3], pc(2, 1, 1)),
                (&[4, 5], pc(2, 1, 2)),
            ],
        )
        .unwrap();
        let g = contraction_group(&m);
        assert_eq!(factors_i64(&g), vec![2, 2, 2, 2, 4, 4]);
        assert!(g.verify());
    }

    #[test]
    fn width_examples() {
        let c = SymbolClass::generic(2, 3, 3, 1).unwrap();
        assert_eq!(width(&c.wedge_valuation()), 6);
        assert_eq!(width(&Multivector::zero(2, 3).unwrap()), 0);
        let c = SymbolClass::chain(3, 2).unwrap();
        assert_eq!(width(&c.wedge_valuation()), 7);
    }

    #[test]
    fn witness_examples() {
        let m = Multivector::from_terms(2, 3, &[(&[0, 1], pc(2, 1, 1))]).unwrap();
        let w = witness(&m);
        assert_eq!(
            w,
            Lattice::from_generators_i64(3, &[&[1, 0, 0], &[0, 1, 0]])
        );
        assert!(membership(&m, &w));

        let w = witness(&Multivector::zero(2, 4).unwrap());
        assert_eq!(w.rank(), 0);

        let c = SymbolClass::chain(2, 2).unwrap();
        let m = c.wedge_valuation();
        let w = witness(&m);
        assert_eq!(w.rank(), 5);
        assert_eq!(
            w,
            Lattice::from_generators_i64(
                5,
                &[
                    &[1, 0, 0, 0, 0],
                    &[0, 1, 0, 0, 0],
                    &[0, 0, 1, 0, 0],
                    &[0, 0, 0, 1, 0],
                    &[0, 0, 0, 0, 1]
                ]
            )
        );
    }

    #[test]
    fn membership_examples() {
        let m = Multivector::from_terms(2, 2, &[(&[0, 1], pc(2, 1, 1))]).unwrap();
        let w = Lattice::from_generators_i64(2, &[&[2, 0], &[0, 1]]);
        assert!(membership(&m, &w));

        let m3 = Multivector::from_terms(2, 3, &[(&[0, 1], pc(2, 1, 1))]).unwrap();
        let w = Lattice::from_generators_i64(3, &[&[1, 0, 0], &[0, 0, 1]]);
        assert!(!membership(&m3, &w));

        let full = Lattice::from_generators_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(membership(&m3, &full));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&Multivector::zero(2, 3).unwrap()).unwrap(),
            Classification::Zero
        );
        // 1/2 e0^(e1 + e2) is a pure tensor: width 2 = degree
        let m = Multivector::from_terms(2, 3, &[(&[0, 1], pc(2, 1, 1)), (&[0, 2], pc(2, 1, 1))])
            .unwrap();
        assert_eq!(width(&m), 2);
        assert_eq!(classify(&m).unwrap(), Classification::Symbol);

        let c = SymbolClass::chain(2, 2).unwrap();
        assert_eq!(
            classify(&c.wedge_valuation()).unwrap(),
            Classification::NonSymbol
        );

        let mixed =
            Multivector::from_terms(2, 3, &[(&[0], pc(2, 1, 1)), (&[0, 1], pc(2, 1, 1))]).unwrap();
        assert_eq!(classify(&mixed), Err(Error::MixedDegree));
    }

    #[test]
    fn brauer_matrix_examples() {
        let c = SymbolClass::block_brauer(2, 2, 1).unwrap();
        let m = brauer_matrix(&c).unwrap();
        let expected =
            IntMatrix::from_i64(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
        assert_eq!(m, expected);

        let c = SymbolClass::parse("(t0,t0)_2").unwrap();
        assert_eq!(brauer_matrix(&c).unwrap(), IntMatrix::zero(1, 1));

        let c = SymbolClass::parse("(t0*t1, t0)_2").unwrap();
        assert_eq!(
            brauer_matrix(&c).unwrap(),
            IntMatrix::from_i64(&[&[0, -1], &[1, 0]])
        );

        let deg3 = SymbolClass::parse("(t0,t1,t2)_2").unwrap();
        assert!(brauer_matrix(&deg3).is_err());
        let mixed_levels = SymbolClass::parse("(t0,t1)_2 + (t2,t3)_4").unwrap();
        assert_eq!(brauer_matrix(&mixed_levels), Err(Error::MixedLevels));
    }

    #[test]
    fn brauer_invariants_examples() {
        // block example: all divisors 1, i0 = 2r
        for r in 1..=3 {
            let c = SymbolClass::block_brauer(r, 2, 2).unwrap();
            let m = brauer_matrix(&c).unwrap();
            let inv = brauer_invariants(&m, 2, 2).unwrap();
            assert!(inv.divisors.iter().all(BigInt::is_one));
            assert_eq!(inv.i0, 2 * r);
        }

        let m = IntMatrix::from_i64(&[&[0, 2], &[-2, 0]]);
        let inv = brauer_invariants(&m, 2, 2).unwrap();
        assert_eq!(inv.divisors, vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(inv.i0, 2);
        assert_eq!(inv.factors, vec![BigInt::from(2), BigInt::from(2)]);

        let m = IntMatrix::from_i64(&[&[0, 4], &[-4, 0]]);
        let inv = brauer_invariants(&m, 2, 2).unwrap();
        assert_eq!(inv.i0, 0);
        assert!(inv.factors.is_empty());

        let not_skew = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            brauer_invariants(&not_skew, 2, 1),
            Err(Error::NotSkewSymmetric)
        );
    }

    #[test]
    fn ed_report_examples() {
        let r = ed_report(&SymbolClass::generic(2, 2, 2, 1).unwrap(), false);
        assert_eq!(r.rho, 4);
        assert!(r.exact);
        assert_eq!(r.brauer.as_ref().unwrap().i0, 4);
        assert_eq!(r.classification, Classification::NonSymbol);

        let r = ed_report(&SymbolClass::chain(3, 2).unwrap(), false);
        assert_eq!(r.rho, 7);
        assert!(r.exact);
        assert!(r.brauer.is_none());

        let r = ed_report(&SymbolClass::parse("(5*t0, t1)_2").unwrap(), false);
        assert_eq!(r.rho, 2);
        assert!(!r.exact);
        let r = ed_report(&SymbolClass::parse("(5*t0, t1)_2").unwrap(), true);
        assert!(r.exact);
    }

    #[test]
    fn ed_report_mixed_level_brauer() {
        let c = SymbolClass::parse("(t0,t1)_2 + (t2,t3)_4").unwrap();
        let r = ed_report(&c, false);
        let b = r.brauer.as_ref().unwrap();
        // lifted to level 4: weights (2, 1)
        assert_eq!(
            b.matrix,
            IntMatrix::from_i64(&[&[0, 2, 0, 0], &[-2, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]])
        );
        assert_eq!(b.i0, r.rho);
    }

    #[test]
    fn ed_report_json_round_trip() {
        let r = ed_report(&SymbolClass::block_brauer(2, 2, 1).unwrap(), false);
        let json = r.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let back: EdReportJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, json);
        // stable field order
        let keys: Vec<&str> = text.split('"').skip(1).step_by(2).take(7).collect();
        assert_eq!(
            keys,
            vec![
                "p",
                "rank",
                "degree",
                "rho",
                "ed_lower_bound",
                "exact",
                "classification"
            ]
        );
    }

    #[test]
    fn split_bound_examples() {
        // 1/2 e0^e1 dies in <e0/2, e1>, width 2 <= 2
        let m = Multivector::from_terms(2, 2, &[(&[0, 1], pc(2, 1, 1))]).unwrap();
        let over = Overlattice::new(IntMatrix::from_i64(&[&[1, 0], &[0, 2]]), 1).unwrap();
        assert!(split_bound_check(&m, &over, 2, 1).unwrap());

        // hypothesis fails: identity overlattice does not kill m
        let trivial = Overlattice::new(IntMatrix::identity(2), 0).unwrap();
        assert!(split_bound_check(&m, &trivial, 2, 1).unwrap());

        // two disjoint killed blocks at index p^2, width 4 = 2n
        let m = Multivector::from_terms(2, 4, &[(&[0, 1], pc(2, 1, 1)), (&[2, 3], pc(2, 1, 1))])
            .unwrap();
        let over = Overlattice::new(
            IntMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 2]]),
            1,
        )
        .unwrap();
        assert!(split_bound_check(&m, &over, 2, 2).unwrap());

        // index p^2 exceeds the allowance p^1
        assert_eq!(
            split_bound_check(&m, &over, 2, 1),
            Err(Error::BadOverlatticeIndex(1))
        );
    }

    #[test]
    fn group_invariant_under_base_change() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let c = SymbolClass::parse("(t0,t1)_4 + (t1,t2)_2").unwrap();
        let m = c.wedge_valuation();
        let base = contraction_group(&m);
        for _ in 0..10 {
            let t = crate::corpus::random_unimodular(&mut rng, m.rank());
            let moved = m.change_basis(&t).unwrap();
            let g = contraction_group(&moved);
            assert_eq!(g.factors(), base.factors());
        }
    }

    #[test]
    fn membership_sees_only_the_saturation() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let classes = crate::corpus::random_homogeneous_classes(40, 0xa11ce);
        for c in &classes {
            let omega = c.wedge_valuation();
            let w = crate::corpus::random_lattice(&mut rng, omega.rank());
            // scaling the basis does not change the image of the wedge
            // powers, because the torsion coefficients are divisible
            let doubled = Lattice::from_generators(
                w.ambient_rank(),
                (0..w.rank())
                    .map(|i| w.basis().row(i).iter().map(|x| x * 2).collect())
                    .collect(),
            )
            .unwrap();
            assert_eq!(membership(&omega, &w), membership(&omega, &doubled));
        }
    }

    /// Plain Gaussian elimination rank over F_p; no normal-form machinery.
    fn fp_rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot_row) = (rank..rows.len()).find(|&i| rows[i][col] % p != 0) else {
                continue;
            };
            rows.swap(rank, pivot_row);
            let inv = mod_inverse(rows[rank][col] % p, p);
            for j in 0..cols {
                rows[rank][j] = rows[rank][j] % p * inv % p;
            }
            for i in 0..rows.len() {
                if i != rank && rows[i][col] % p != 0 {
                    let factor = rows[i][col] % p;
                    for j in 0..cols {
                        rows[i][j] = (rows[i][j] % p + p * p - factor * rows[rank][j] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn mod_inverse(a: u64, p: u64) -> u64 {
        // p is a small prime; a^(p-2) mod p via exponentiation
        let mut base = a % p;
        let mut exp = p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp % 2 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp /= 2;
        }
        acc
    }

    /// At level 1 the contraction group lives in (1/p)Z^r / Z^r, an
    /// F_p-vector space, so the width must equal the F_p-rank of the raw
    /// contraction generators. That rank comes from independent modular
    /// Gaussian elimination, giving the width an oracle that bypasses the
    /// Smith machinery entirely (and covers degrees with no matrix route).
    #[test]
    fn width_matches_fp_rank_at_level_one() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xfeed);
        for case in 0..200 {
            let p = [2u64, 3, 5][case % 3];
            let rank = rng.gen_range(2usize..=6);
            let degree = rng.gen_range(1usize..=3);
            let terms: Vec<crate::symbol::SymbolTerm> = (0..rng.gen_range(1usize..=4))
                .map(|_| crate::symbol::SymbolTerm {
                    level: 1,
                    weight: BigInt::from(rng.gen_range(1i64..=3)),
                    slots: (0..degree)
                        .map(|_| {
                            crate::symbol::Slot::monomial(
                                (0..rank)
                                    .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
                                    .collect(),
                            )
                        })
                        .collect(),
                })
                .collect();
            let class = SymbolClass::new(p, rank, terms).unwrap();
            let omega = class.wedge_valuation();

            let mut raw_rows: Vec<Vec<u64>> = Vec::new();
            for d in omega.degrees() {
                if d == 0 {
                    continue;
                }
                let part = omega.degree_part(d);
                for js in increasing_tuples(rank, d - 1) {
                    let g = part.contract_dual(&js).unwrap();
                    if g.is_zero() {
                        continue;
                    }
                    let (nums, exp) = g.numerator_vector().unwrap();
                    assert!(exp <= 1, "level-1 class produced a deeper coefficient");
                    let scale = if exp == 0 { p } else { 1 };
                    raw_rows.push(
                        nums.iter()
                            .map(|v| {
                                let reduced = v.mod_floor(&BigInt::from(p));
                                u64::try_from(&reduced).unwrap() * scale % p
                            })
                            .collect(),
                    );
                }
            }
            let expected = fp_rank(raw_rows, p);
            assert_eq!(width(&omega), expected, "class {}", class.render());
        }
    }
}
