//! Coefficient fields: prime fields `F_p` with word-sized residues and the
//! rationals with arbitrary-precision numerators and denominators.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

/// A coefficient field: `F_p` for a prime `p < 2^31`, or `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Prime(u32),
    Rational,
}

/// A field element. `Mod` residues are always in `[0, p)`; `Rat` values are
/// kept in lowest terms with a positive denominator (guaranteed by
/// `BigRational`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u32),
    Rat(Box<BigRational>),
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// `F_p`, after checking that `p` is a prime below `2^31`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::CharacteristicTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    /// `0` for `Q`, `p` for `F_p`.
    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(0),
            Field::Rational => Scalar::Rat(Box::new(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod(v.rem_euclid(*p as i64) as u32),
            Field::Rational => Scalar::Rat(Box::new(BigRational::from_integer(BigInt::from(v)))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::Mod(r.to_u32().expect("residue fits in u32"))
            }
            Field::Rational => Scalar::Rat(Box::new(BigRational::from_integer(v.clone()))),
        }
    }

    /// Builds `num / den` in this field. `den` must be nonzero (and a unit
    /// mod `p` in characteristic `p`).
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        let inv = self.inv(&d)?;
        Ok(self.mul(&self.from_i64(num), &inv))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                let s = *x as u64 + *y as u64;
                let p = *p as u64;
                Scalar::Mod(if s >= p { s - p } else { s } as u32)
            }
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(Box::new(&**x + &**y)),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod(if *x == 0 { 0 } else { p - x }),
            (Field::Rational, Scalar::Rat(x)) => Scalar::Rat(Box::new(-&**x)),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(Box::new(&**x * &**y)),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    /// `a^e` by binary powering.
    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; Fermat's little theorem in `F_p`.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (Field::Prime(p), _) => self.pow(a, *p as u64 - 2),
            (Field::Rational, Scalar::Rat(x)) => Scalar::Rat(Box::new(x.recip())),
            _ => panic!("scalar does not belong to field {self:?}"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Whether `a` is a "negative" value for display purposes: residues above
    /// `p/2` print as negatives.
    pub fn is_negative(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => *x > p / 2,
            (Field::Rational, Scalar::Rat(x)) => x.is_negative(),
            _ => false,
        }
    }

    /// Renders `a` in canonical text: symmetric residues for `F_p`, `n` or
    /// `n/d` for `Q`.
    pub fn render(&self, a: &Scalar) -> String {
        match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => {
                if *x > p / 2 {
                    format!("-{}", p - x)
                } else {
                    x.to_string()
                }
            }
            (_, Scalar::Rat(x)) => {
                if x.is_integer() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            (Field::Rational, Scalar::Mod(x)) => x.to_string(),
        }
    }

    /// Checks that `a` is a valid element of this field.
    pub fn owns(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => x < p,
            (Field::Rational, Scalar::Rat(_)) => true,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

impl Scalar {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trial_division() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(matches!(Field::prime(6), Err(Error::NotPrime(6))));
        assert!(matches!(Field::prime(1), Err(Error::NotPrime(1))));
        assert!(matches!(Field::prime(1 << 31), Err(Error::CharacteristicTooLarge(_))));
        assert_eq!(Field::prime(7).unwrap(), Field::Prime(7));
    }

    #[test]
    fn modular_sum_wraps() {
        // 3 + 5 = 8 = 1 mod 7
        let f = Field::Prime(7);
        assert_eq!(f.add(&f.from_i64(3), &f.from_i64(5)), Scalar::Mod(1));
    }

    #[test]
    fn fermat_inverse() {
        let f = Field::Prime(7);
        assert_eq!(f.inv(&f.from_i64(3)).unwrap(), Scalar::Mod(5));
        assert!(matches!(f.inv(&f.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rendering() {
        let f = Field::Prime(7);
        assert_eq!(f.render(&f.from_i64(6)), "-1");
        assert_eq!(f.render(&f.from_i64(3)), "3");
        let q = Field::Rational;
        assert_eq!(q.render(&q.from_ratio(-2, 3).unwrap()), "-2/3");
        assert_eq!(q.render(&q.from_ratio(4, 2).unwrap()), "2");
    }

    proptest! {
        #[test]
        fn prime_field_axioms(a in 0i64..101, b in 0i64..101, c in 0i64..101) {
            let f = Field::Prime(101);
            let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
            if !f.is_zero(&a) {
                prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            }
            let lhs = f.mul(&a, &f.add(&b, &c));
            let rhs = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rational_field_axioms(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20, cn in -50i64..50) {
            let f = Field::Rational;
            let a = f.from_ratio(an, ad).unwrap();
            let b = f.from_ratio(bn, bd).unwrap();
            let c = f.from_i64(cn);
            if !f.is_zero(&a) {
                prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            }
            let lhs = f.mul(&a, &f.add(&b, &c));
            let rhs = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
