use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Field;
use crate::error::{Error, Result};

/// An exact field element.
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// `num-rational` invariant), so derived equality is structural. Residues
/// live in `[0, modulus)`.
///
/// Arithmetic between scalars of different fields is a programming error and
/// panics; the public entry points that accept user scalars check fields
/// first and report [`Error::MixedFields`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    /// Sign for display: rationals carry their own sign, residues are never
    /// negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// Coefficient text used inside linear combinations: `1/2`, `-3`, `4`.
    /// Unlike [`Display`](fmt::Display) this omits the ` mod p` suffix.
    pub fn coefficient_text(&self) -> String {
        match self {
            Scalar::Rational(q) => q.to_string(),
            Scalar::Residue { value, .. } => value.to_string(),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn same_modulus(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "scalar arithmetic across different prime fields");
    a
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let m = same_modulus(*p, *q);
                Scalar::Residue { value: (a + b) % m, modulus: m }
            }
            _ => panic!("scalar arithmetic across Q and GF(p)"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let m = same_modulus(*p, *q);
                Scalar::Residue { value: (a + m - b) % m, modulus: m }
            }
            _ => panic!("scalar arithmetic across Q and GF(p)"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let m = same_modulus(*p, *q);
                Scalar::Residue { value: a * b % m, modulus: m }
            }
            _ => panic!("scalar arithmetic across Q and GF(p)"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for canonical sorting: rationals numerically,
/// residues by representative, and all rationals before all residues.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                (p, a).cmp(&(q, b))
            }
            (Scalar::Rational(_), Scalar::Residue { .. }) => Ordering::Less,
            (Scalar::Residue { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

/// Canonical rendering: `p/q` in lowest terms (integers print bare), `k mod p`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let q = Field::Rationals;
        let a = q.from_fraction(&BigInt::from(2), &BigInt::from(-4)).unwrap();
        let b = q.from_fraction(&BigInt::from(-1), &BigInt::from(2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "-1/2");
        assert_eq!((&a + &b).to_string(), "-1");
    }

    #[test]
    fn residue_inverse_and_display() {
        let f = Field::prime(7).unwrap();
        let three = f.from_i64(3);
        let inv = three.inv().unwrap();
        assert!((&three * &inv).is_one());
        assert_eq!(inv.to_string(), "5 mod 7");
        assert_eq!(f.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!((-&three).to_string(), "4 mod 7");
    }

    #[test]
    #[should_panic]
    fn mixing_fields_panics() {
        let _ = &Field::Rationals.one() + &Field::prime(3).unwrap().one();
    }
}
