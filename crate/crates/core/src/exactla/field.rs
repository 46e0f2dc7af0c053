use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Scalar;
use crate::error::{Error, Result};

const MAX_MODULUS: u64 = 1 << 31;

/// The base field of a computation: the rationals or a prime field GF(p).
///
/// GF(2) is constructible so that the linear-algebra layer can be checked
/// against exhaustive enumeration over the smallest field; algebra
/// construction rejects characteristic 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    /// Number of elements, when finite.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Residue { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::one()),
            Field::Prime(p) => Scalar::Residue { value: 1 % p, modulus: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    /// `num / den` in this field; fails when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self {
            Field::Rationals => {
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
            }
            Field::Prime(p) => {
                let n = reduce_bigint(num, *p);
                let d = reduce_bigint(den, *p);
                let n = Scalar::Residue { value: n, modulus: *p };
                let d = Scalar::Residue { value: d, modulus: *p };
                Ok(&n * &d.inv()?)
            }
        }
    }

    /// Map an element of the rationals into this field (identity for `Rationals`).
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        self.from_fraction(q.numer(), q.denom())
    }

    /// Scalar built from a residue index `0..p`; used when enumerating GF(p).
    pub fn element(&self, index: u64) -> Scalar {
        match self {
            Field::Rationals => self.from_i64(index as i64),
            Field::Prime(p) => Scalar::Residue { value: index % p, modulus: *p },
        }
    }

    pub fn unit_vector(&self, dim: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.zero(); dim];
        v[i] = self.one();
        v
    }

    pub fn zero_vector(&self, dim: usize) -> Vec<Scalar> {
        vec![self.zero(); dim]
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let mut r = n % &m;
    if r < BigInt::zero() {
        r += &m;
    }
    // r < p < 2^31
    r.to_u64_digits().1.first().copied().unwrap_or(0)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_accepts_small_primes() {
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(5).is_ok());
        assert!(matches!(Field::prime(1 << 40), Err(Error::ModulusTooLarge(_))));
    }

    #[test]
    fn fractions_reduce_mod_p() {
        let f = Field::prime(5).unwrap();
        // 1/2 = 3 mod 5
        let half = f.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half, f.from_i64(3));
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!(
            f.from_fraction(&BigInt::from(1), &BigInt::from(10)),
            Err(Error::DivisionByZero)
        );
    }
}
