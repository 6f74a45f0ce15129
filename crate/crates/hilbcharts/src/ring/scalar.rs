//! Exact field scalars: arbitrary-precision rationals and prime-field residues.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The coefficient field of a computation: the rationals or a prime field
/// with modulus below 2^16.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Field {
    Rational,
    /// Prime field with the given modulus.
    Prime(u16),
}

impl Field {
    /// Checks the modulus of a prime field by trial division.
    pub fn prime(p: u16) -> Result<Field, FieldError> {
        if p < 2 {
            return Err(FieldError::NotPrime(p));
        }
        let mut d = 2u32;
        while d * d <= p as u32 {
            if p as u32 % d == 0 {
                return Err(FieldError::NotPrime(p));
            }
            d += 1;
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { p: *p, val: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::one()),
            Field::Prime(p) => Scalar::Fp { p: *p, val: 1 },
        }
    }

    /// The scalar for an integer, reduced into the field.
    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let m = *p as i64;
                Scalar::Fp {
                    p: *p,
                    val: (n.rem_euclid(m)) as u16,
                }
            }
        }
    }

    /// The fraction a/b in this field. Over F_p the denominator is inverted;
    /// a denominator divisible by p is an error.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        match self {
            Field::Rational => Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(p) => {
                let pm = BigInt::from(*p);
                let n = ((num % &pm) + &pm) % &pm;
                let d = ((den % &pm) + &pm) % &pm;
                let n: u16 = n.try_into().unwrap();
                let d: u16 = d.try_into().unwrap();
                if d == 0 {
                    return Err(FieldError::DenominatorDivisibleByP(*p));
                }
                let inv = fp_inv(d, *p);
                Ok(Scalar::Fp {
                    p: *p,
                    val: fp_mul(n, inv, *p),
                })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{}", p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u16),
    ZeroDenominator,
    DenominatorDivisibleByP(u16),
    Mismatch { left: Field, right: Field },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{} is not prime", p),
            FieldError::ZeroDenominator => write!(f, "zero denominator"),
            FieldError::DenominatorDivisibleByP(p) => {
                write!(f, "denominator divisible by the modulus {}", p)
            }
            FieldError::Mismatch { left, right } => {
                write!(f, "incompatible coefficient fields {} and {}", left, right)
            }
        }
    }
}

impl std::error::Error for FieldError {}

/// An element of the coefficient field. Rationals are kept in lowest terms
/// with positive denominator (num-rational maintains this); prime-field
/// residues lie in [0, p).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Fp { p: u16, val: u16 },
}

fn fp_mul(a: u16, b: u16, p: u16) -> u16 {
    ((a as u32 * b as u32) % p as u32) as u16
}

fn fp_inv(a: u16, p: u16) -> u16 {
    // Fermat: a^(p-2) mod p.
    assert!(a != 0, "inverse of zero in F_{}", p);
    let mut base = a as u32;
    let mut exp = p as u32 - 2;
    let mut acc = 1u32;
    let m = p as u32;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u16
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    /// True for rationals strictly below zero; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) if p == q => Scalar::Fp {
                p: *p,
                val: ((*a as u32 + *b as u32) % *p as u32) as u16,
            },
            _ => panic!("scalar field mismatch: {} vs {}", self.field(), other.field()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) if p == q => Scalar::Fp {
                p: *p,
                val: fp_mul(*a, *b, *p),
            },
            _ => panic!("scalar field mismatch: {} vs {}", self.field(), other.field()),
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Rat(a.recip())
            }
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: fp_inv(*val, *p),
            },
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// The absolute value (identity over F_p).
    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.abs()),
            fp => fp.clone(),
        }
    }

    /// Reduce a scalar into F_p. Rationals map via numerator times inverse
    /// denominator; fails when the denominator is divisible by p.
    pub fn reduce_mod(&self, p: u16) -> Result<Scalar, FieldError> {
        match self {
            Scalar::Rat(r) => {
                Field::Prime(p).from_fraction(r.numer(), r.denom())
            }
            Scalar::Fp { p: q, val } => {
                if *q == p {
                    Ok(Scalar::Fp { p, val: *val })
                } else {
                    Err(FieldError::Mismatch {
                        left: Field::Prime(*q),
                        right: Field::Prime(p),
                    })
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", r),
            Scalar::Fp { val, .. } => write!(f, "{}", val),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(65521).is_ok());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(65535).is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = Field::Prime(7);
        let a = f.from_int(3);
        let b = f.from_int(5);
        assert_eq!(a.add(&b), f.from_int(1));
        assert_eq!(a.mul(&b), f.from_int(1));
        assert_eq!(a.inv(), f.from_int(5));
        assert_eq!(f.from_int(-1), f.from_int(6));
    }

    #[test]
    fn rational_lowest_terms() {
        let f = Field::Rational;
        let half = f
            .from_fraction(&BigInt::from(2), &BigInt::from(4))
            .unwrap();
        assert_eq!(half.to_string(), "1/2");
        let neg = f
            .from_fraction(&BigInt::from(1), &BigInt::from(-2))
            .unwrap();
        assert_eq!(neg.to_string(), "-1/2");
    }

    #[test]
    fn reduce_rational_mod_p() {
        let f = Field::Rational;
        let x = f
            .from_fraction(&BigInt::from(2), &BigInt::from(3))
            .unwrap();
        assert_eq!(x.reduce_mod(5).unwrap(), Field::Prime(5).from_int(4));
        assert!(x.reduce_mod(3).is_err());
    }
}
