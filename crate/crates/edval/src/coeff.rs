//! Exact arithmetic in the p-primary torsion group of the rationals mod 1.
//!
//! A [`PCoeff`] is a fraction `num / p^exp` taken modulo 1 and kept in a
//! canonical form: `0 <= num < p^exp`, a nonzero `num` is coprime to `p`,
//! and zero is stored as `0 / p^0`. These fractions are the coefficients of
//! every torsion multivector in this crate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::{util, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PCoeff {
    p: u64,
    num: BigInt,
    exp: u32,
}

impl PCoeff {
    /// Canonical representative of `num / p^exp` modulo 1. Negative
    /// numerators are shifted into range, common p-factors cancelled.
    pub fn new(p: u64, num: impl Into<BigInt>, exp: u32) -> Result<Self> {
        if !util::is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(Self::reduce(p, num.into(), exp))
    }

    pub fn zero(p: u64) -> Result<Self> {
        Self::new(p, 0, 0)
    }

    /// Internal constructor: `p` is already known to be prime.
    pub(crate) fn reduce(p: u64, num: BigInt, exp: u32) -> Self {
        let modulus = util::pow_big(p, exp);
        let big_p = BigInt::from(p);
        let mut num = num.mod_floor(&modulus);
        let mut exp = exp;
        while exp > 0 && !num.is_zero() {
            let (q, r) = num.div_rem(&big_p);
            if !r.is_zero() {
                break;
            }
            num = q;
            exp -= 1;
        }
        if num.is_zero() {
            exp = 0;
        }
        PCoeff { p, num, exp }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Group law of Q_p/Z_p.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let exp = self.exp.max(other.exp);
        let a = &self.num * util::pow_big(self.p, exp - self.exp);
        let b = &other.num * util::pow_big(self.p, exp - other.exp);
        Ok(Self::reduce(self.p, a + b, exp))
    }

    pub fn neg(&self) -> Self {
        Self::reduce(self.p, -&self.num, self.exp)
    }

    /// Integer multiple `m * self`.
    pub fn scale(&self, m: &BigInt) -> Self {
        Self::reduce(self.p, m * &self.num, self.exp)
    }

    /// Smallest p-power `m` with `m * self = 0`; 1 for zero.
    pub fn order(&self) -> BigInt {
        util::pow_big(self.p, self.exp)
    }

    /// Numerator after rescaling to the common denominator `p^exp`.
    /// Requires `exp >= self.exponent()`.
    pub fn numerator_at(&self, exp: u32) -> BigInt {
        assert!(exp >= self.exp, "cannot rescale to a smaller denominator");
        &self.num * util::pow_big(self.p, exp - self.exp)
    }

    /// Parses the textual rendering back, given the prime in force.
    /// Accepts `"0"` and `"num/den"` where `den` is a positive power of `p`.
    pub fn parse(text: &str, p: u64) -> Result<Self> {
        let t = text.trim();
        if t == "0" {
            return Self::zero(p);
        }
        let (a, b) = t.split_once('/').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("expected \"0\" or \"num/den\", got {t:?}"),
        })?;
        let num: BigInt = a.trim().parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("bad numerator {a:?}"),
        })?;
        let den: BigInt = b.trim().parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("bad denominator {b:?}"),
        })?;
        let big_p = BigInt::from(p);
        let mut rest = den.clone();
        let mut exp = 0u32;
        while rest.magnitude().gt(&num_bigint::BigUint::from(1u32)) {
            let (q, r) = rest.div_rem(&big_p);
            if !r.is_zero() {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("denominator {den} is not a power of {p}"),
                });
            }
            rest = q;
            exp += 1;
        }
        if rest != BigInt::from(1) || exp == 0 {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("denominator {den} is not a positive power of {p}"),
            });
        }
        Self::new(p, num, exp)
    }
}

impl fmt::Display for PCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.order())
        }
    }
}
