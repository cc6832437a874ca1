//! Symbol classes and their textual DSL.
//!
//! A [`SymbolClass`] is a formal integer combination of symbols
//! `(a_1,...,a_d)_{p^n}` whose slots are Laurent monomials in the
//! uniformizers `t_0..t_{rank-1}`, optionally carrying a unit scalar. Only
//! the valuation vector of each slot matters for the wedge-valuation map;
//! unit scalars are tracked because they downgrade exactness of the
//! essential-dimension report.

mod parse;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::PCoeff;
use crate::multivector::Multivector;
use crate::{util, Error, Result};

/// One slot of a symbol: the exponent vector of a Laurent monomial plus the
/// integer scalar in front of it. A scalar other than +-1 is a nontrivial
/// unit; it never changes the valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub valuation: Vec<BigInt>,
    pub scalar: BigInt,
}

impl Slot {
    pub fn monomial(valuation: Vec<BigInt>) -> Self {
        Slot {
            valuation,
            scalar: BigInt::one(),
        }
    }

    pub fn has_unit(&self) -> bool {
        !self.scalar.magnitude().is_one()
    }
}

/// A weighted symbol at level `p^level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTerm {
    pub level: u32,
    pub weight: BigInt,
    pub slots: Vec<Slot>,
}

impl SymbolTerm {
    pub fn degree(&self) -> usize {
        self.slots.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolClass {
    p: u64,
    rank: usize,
    terms: Vec<SymbolTerm>,
}

impl SymbolClass {
    pub fn new(p: u64, rank: usize, terms: Vec<SymbolTerm>) -> Result<Self> {
        if !util::is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        for t in &terms {
            if t.level == 0 {
                return Err(Error::Contract("term level must be at least 1".into()));
            }
            if t.weight.is_zero() {
                return Err(Error::Contract("term weight must be nonzero".into()));
            }
            if t.slots.is_empty() {
                return Err(Error::Contract("every term needs at least one slot".into()));
            }
            for s in &t.slots {
                if s.valuation.len() != rank {
                    return Err(Error::DimensionMismatch {
                        expected: rank,
                        got: s.valuation.len(),
                    });
                }
                if s.scalar.is_zero() {
                    return Err(Error::Contract("zero scalar factor".into()));
                }
            }
        }
        Ok(SymbolClass { p, rank, terms })
    }

    /// Parses the DSL; see the crate README for the grammar.
    pub fn parse(text: &str) -> Result<Self> {
        parse::parse_class(text)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[SymbolTerm] {
        &self.terms
    }

    /// Slot count shared by all terms, or `None` for a mixed-degree class.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.iter().map(SymbolTerm::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Level shared by all terms, or `None` when levels are mixed.
    pub fn common_level(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(|t| t.level);
        let first = it.next()?;
        it.all(|n| n == first).then_some(first)
    }

    pub fn has_unit_slot(&self) -> bool {
        self.terms
            .iter()
            .any(|t| t.slots.iter().any(Slot::has_unit))
    }

    /// Re-embeds into a larger ambient rank by zero padding.
    pub fn embed_in_rank(&self, rank: usize) -> Result<Self> {
        if rank < self.rank {
            return Err(Error::Contract(format!(
                "rank {rank} is too small: class uses rank {}",
                self.rank
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| SymbolTerm {
                level: t.level,
                weight: t.weight.clone(),
                slots: t
                    .slots
                    .iter()
                    .map(|s| {
                        let mut v = s.valuation.clone();
                        v.resize(rank, BigInt::zero());
                        Slot {
                            valuation: v,
                            scalar: s.scalar.clone(),
                        }
                    })
                    .collect(),
            })
            .collect();
        SymbolClass::new(self.p, rank, terms)
    }

    /// Rewrites every term at the maximal level present, multiplying weights
    /// by the matching p-power: `w (a,b)_{p^n} = w p^{N-n} (a,b)_{p^N}`.
    pub fn at_common_level(&self) -> (Self, u32) {
        let top = self.terms.iter().map(|t| t.level).max().unwrap_or(1);
        let terms = self
            .terms
            .iter()
            .map(|t| SymbolTerm {
                level: top,
                weight: &t.weight * util::pow_big(self.p, top - t.level),
                slots: t.slots.clone(),
            })
            .collect();
        (
            SymbolClass {
                p: self.p,
                rank: self.rank,
                terms,
            },
            top,
        )
    }

    /// The wedge-valuation image: the sum over terms of
    /// `weight/p^level ⊗ ν(a_1) ∧ ... ∧ ν(a_d)`. Slots with zero valuation
    /// kill their term; unit scalars are ignored here.
    pub fn wedge_valuation(&self) -> Multivector {
        let mut acc = Multivector::zero_unchecked(self.p, self.rank);
        for t in &self.terms {
            let coeff = PCoeff::reduce(self.p, t.weight.clone(), t.level);
            if coeff.is_zero() {
                continue;
            }
            let vectors: Vec<Vec<BigInt>> = t.slots.iter().map(|s| s.valuation.clone()).collect();
            let wedge = Multivector::wedge_vectors(self.p, self.rank, &coeff, &vectors)
                .expect("slot lengths validated at construction");
            acc = acc.add(&wedge).expect("same prime and rank");
        }
        acc
    }

    /// Canonical DSL rendering; parses back to an equal class.
    pub fn render(&self) -> String {
        let natural = self.natural_rank();
        let mut out = String::new();
        if self.rank != natural {
            out.push_str(&format!("rank {}; ", self.rank));
        }
        let rendered: Vec<String> = self.terms.iter().map(|t| self.render_term(t)).collect();
        out.push_str(&rendered.join(" + "));
        out
    }

    fn natural_rank(&self) -> usize {
        let mut max_used: Option<usize> = None;
        for t in &self.terms {
            for s in &t.slots {
                for (i, v) in s.valuation.iter().enumerate() {
                    if !v.is_zero() {
                        max_used = Some(max_used.map_or(i, |m| m.max(i)));
                    }
                }
            }
        }
        max_used.map_or(0, |m| m + 1)
    }

    fn render_term(&self, t: &SymbolTerm) -> String {
        let mut s = String::new();
        if !t.weight.is_one() {
            s.push_str(&format!("{}*", t.weight));
        }
        s.push('(');
        let slots: Vec<String> = t.slots.iter().map(render_slot).collect();
        s.push_str(&slots.join(","));
        s.push_str(&format!(")_{}", util::pow_big(self.p, t.level)));
        s
    }

    pub fn to_json(&self) -> SymbolClassJson {
        SymbolClassJson {
            p: self.p,
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|t| SymbolTermJson {
                    n: t.level,
                    weight: t.weight.to_string(),
                    slots: t
                        .slots
                        .iter()
                        .map(|s| SlotJson {
                            val: s.valuation.iter().map(BigInt::to_string).collect(),
                            unit: s.has_unit(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Rebuilds from the JSON mirror. The JSON carries only the unit flag,
    /// not the scalar itself; flagged slots come back with the canonical
    /// unit scalar 2.
    pub fn from_json(json: &SymbolClassJson) -> Result<Self> {
        let terms = json
            .terms
            .iter()
            .map(|t| {
                let weight: BigInt = t.weight.parse().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad weight {:?}", t.weight),
                })?;
                let slots = t
                    .slots
                    .iter()
                    .map(|s| {
                        let valuation = s
                            .val
                            .iter()
                            .map(|x| {
                                x.parse().map_err(|_| Error::Parse {
                                    pos: 0,
                                    msg: format!("bad valuation entry {x:?}"),
                                })
                            })
                            .collect::<Result<Vec<BigInt>>>()?;
                        Ok(Slot {
                            valuation,
                            scalar: if s.unit {
                                BigInt::from(2)
                            } else {
                                BigInt::one()
                            },
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SymbolTerm {
                    level: t.n,
                    weight,
                    slots,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SymbolClass::new(json.p, json.rank, terms)
    }

    // ------------------------------------------------------------------
    // Generator families
    // ------------------------------------------------------------------

    /// `r` disjoint degree-`d` symbols at level `p^n` in `r*d` independent
    /// variables; term i uses `t_{(i-1)d} .. t_{id-1}`.
    pub fn generic(r: usize, d: usize, p: u64, n: u32) -> Result<Self> {
        if r < 1 || d < 1 || n < 1 {
            return Err(Error::Contract("generic family needs r, d, n >= 1".into()));
        }
        let rank = r * d;
        let terms = (0..r)
            .map(|i| SymbolTerm {
                level: n,
                weight: BigInt::one(),
                slots: (0..d).map(|j| basis_slot(rank, i * d + j)).collect(),
            })
            .collect();
        SymbolClass::new(p, rank, terms)
    }

    /// `r` degree-2 symbols on consecutive variable pairs; the Brauer-matrix
    /// route sees this as a block diagonal of 2x2 skew blocks.
    pub fn block_brauer(r: usize, p: u64, n: u32) -> Result<Self> {
        Self::generic(r, 2, p, n)
    }

    /// Chain family: `r` degree-3 terms at level `p`, all sharing the first
    /// slot `t_0`; width is `2r + 1`.
    pub fn chain(r: usize, p: u64) -> Result<Self> {
        if r < 1 {
            return Err(Error::Contract("chain family needs r >= 1".into()));
        }
        let rank = 2 * r + 1;
        let terms = (0..r)
            .map(|i| SymbolTerm {
                level: 1,
                weight: BigInt::one(),
                slots: vec![
                    basis_slot(rank, 0),
                    basis_slot(rank, 2 * i + 1),
                    basis_slot(rank, 2 * i + 2),
                ],
            })
            .collect();
        SymbolClass::new(p, rank, terms)
    }

    /// Congruence family: one degree-`d` term at level `p` for every
    /// increasing `d`-tuple in `nv` variables whose index sum is 0 mod `nv`.
    pub fn congruence(nv: usize, d: usize, p: u64) -> Result<Self> {
        if d < 3 || nv < d + 2 {
            return Err(Error::Contract(
                "congruence family needs d >= 3 and nv >= d + 2".into(),
            ));
        }
        let mut terms = Vec::new();
        for tuple in util::increasing_tuples(nv, d) {
            if tuple.iter().sum::<usize>() % nv != 0 {
                continue;
            }
            terms.push(SymbolTerm {
                level: 1,
                weight: BigInt::one(),
                slots: tuple.iter().map(|&i| basis_slot(nv, i)).collect(),
            });
        }
        SymbolClass::new(p, nv, terms)
    }
}

fn basis_slot(rank: usize, index: usize) -> Slot {
    let mut v = vec![BigInt::zero(); rank];
    v[index] = BigInt::one();
    Slot::monomial(v)
}

fn render_slot(s: &Slot) -> String {
    let mut factors: Vec<String> = Vec::new();
    if !s.scalar.is_one() {
        factors.push(s.scalar.to_string());
    }
    for (i, e) in s.valuation.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            factors.push(format!("t{i}"));
        } else {
            factors.push(format!("t{i}^{e}"));
        }
    }
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

impl fmt::Display for SymbolClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// JSON mirror of the DSL.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SymbolClassJson {
    pub p: u64,
    pub rank: usize,
    pub terms: Vec<SymbolTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SymbolTermJson {
    pub n: u32,
    pub weight: String,
    pub slots: Vec<SlotJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SlotJson {
    pub val: Vec<String>,
    pub unit: bool,
}
