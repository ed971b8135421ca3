use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

/// Largest supported modulus. Products of two residues must fit in `u128`
/// and sums in `u64`.
const MAX_MODULUS: u64 = 1 << 62;

impl FieldSpec {
    /// Prime field with primality checked.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// True when the characteristic divides `n!`.
    pub fn divides_factorial(&self, n: usize) -> bool {
        match self {
            FieldSpec::Rationals => false,
            FieldSpec::PrimeField(p) => (*p as u128) <= n as u128,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar(Repr::Small(Ratio::from_integer(v))),
            FieldSpec::PrimeField(p) => Scalar(Repr::Mod {
                v: (v as i128).rem_euclid(*p as i128) as u64,
                p: *p,
            }),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::from_big(BigRational::from_integer(v.clone())),
            FieldSpec::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar(Repr::Mod {
                    v: r.to_u64().expect("residue fits"),
                    p: *p,
                })
            }
        }
    }

    /// `num / den` in this field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let d = self.from_i64(den);
        if d.is_zero() {
            return Err(Error::Invalid(format!(
                "denominator {den} vanishes in {self}"
            )));
        }
        Ok(self.from_i64(num).div(&d))
    }

    /// Parses an integer or `p/q` literal (with optional sign).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Invalid(format!("malformed coefficient `{text}`"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let dn = self.from_bigint(&d);
        if dn.is_zero() {
            return Err(Error::Invalid(format!(
                "denominator {den} vanishes in {self}"
            )));
        }
        Ok(self.from_bigint(&n).div(&dn))
    }

    /// Checks that `s` lives in this field.
    pub fn check(&self, s: &Scalar) -> Result<()> {
        if s.field() == *self {
            Ok(())
        } else {
            Err(Error::FieldMismatch(*self, s.field()))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F {p}"),
        }
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An exact field element of either the rationals or a prime field.
///
/// Rationals are kept in lowest terms with positive denominator; small
/// values use machine integers and promote to big integers on overflow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Small(Ratio<i64>),
    Big(BigRational),
    Mod { v: u64, p: u64 },
}

const SMALL_LIMIT: i64 = 1 << 62;

fn small_ok(r: &Ratio<i64>) -> bool {
    let n = *r.numer();
    let d = *r.denom();
    n > -SMALL_LIMIT && n < SMALL_LIMIT && d < SMALL_LIMIT
}

fn to_big(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Scalar {
    fn from_big(b: BigRational) -> Scalar {
        if let (Some(n), Some(d)) = (b.numer().to_i64(), b.denom().to_i64()) {
            let r = Ratio::new_raw(n, d);
            if small_ok(&r) {
                return Scalar(Repr::Small(r));
            }
        }
        Scalar(Repr::Big(b))
    }

    fn from_small(r: Option<Ratio<i64>>, fallback: impl FnOnce() -> BigRational) -> Scalar {
        match r {
            Some(r) if small_ok(&r) => Scalar(Repr::Small(r)),
            _ => Scalar::from_big(fallback()),
        }
    }

    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Small(_) | Repr::Big(_) => FieldSpec::Rationals,
            Repr::Mod { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(b) => b.is_zero(),
            Repr::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_one(),
            Repr::Big(b) => b.is_one(),
            Repr::Mod { v, .. } => *v == 1,
        }
    }

    /// Rational value as a big rational (None for prime-field elements).
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Repr::Small(r) => Some(to_big(r)),
            Repr::Big(b) => Some(b.clone()),
            Repr::Mod { .. } => None,
        }
    }

    /// Residue representative in `0..p` for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Mod { v, .. } => Some(*v),
            _ => None,
        }
    }

    /// Image of a rational in a prime field; None if the denominator vanishes
    /// or if `self` is not rational.
    pub fn reduce_mod(&self, field: FieldSpec) -> Option<Scalar> {
        let q = self.to_rational()?;
        let n = field.from_bigint(q.numer());
        let d = field.from_bigint(q.denom());
        if d.is_zero() {
            return None;
        }
        Some(n.div(&d))
    }

    fn mismatch(&self, other: &Scalar) -> ! {
        panic!(
            "scalar field mismatch: {} versus {}",
            self.field(),
            other.field()
        )
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => {
                Scalar::from_small(a.checked_add(b), || to_big(a) + to_big(b))
            }
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => {
                let s = a + b;
                Scalar(Repr::Mod {
                    v: if s >= *p { s - p } else { s },
                    p: *p,
                })
            }
            _ => match (self.to_rational(), other.to_rational()) {
                (Some(a), Some(b)) => Scalar::from_big(a + b),
                _ => self.mismatch(other),
            },
        }
    }

    pub fn neg(&self) -> Scalar {
        match &self.0 {
            Repr::Small(a) => Scalar(Repr::Small(-*a)),
            Repr::Big(b) => Scalar::from_big(-b.clone()),
            Repr::Mod { v, p } => Scalar(Repr::Mod {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            }),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => {
                Scalar::from_small(a.checked_sub(b), || to_big(a) - to_big(b))
            }
            _ => self.add(&other.neg()),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => {
                Scalar::from_small(a.checked_mul(b), || to_big(a) * to_big(b))
            }
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => Scalar(Repr::Mod {
                v: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            }),
            _ => match (self.to_rational(), other.to_rational()) {
                (Some(a), Some(b)) => Scalar::from_big(a * b),
                _ => self.mismatch(other),
            },
        }
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(a) => Scalar(Repr::Small(a.recip())),
            Repr::Big(b) => Scalar::from_big(b.recip()),
            Repr::Mod { v, p } => {
                let (mut t, mut new_t) = (0i128, 1i128);
                let (mut r, mut new_r) = (*p as i128, *v as i128);
                while new_r != 0 {
                    let q = r / new_r;
                    (t, new_t) = (new_t, t - q * new_t);
                    (r, new_r) = (new_r, r - q * new_r);
                }
                Scalar(Repr::Mod {
                    v: t.rem_euclid(*p as i128) as u64,
                    p: *p,
                })
            }
        })
    }

    /// Division; panics on division by zero.
    pub fn div(&self, other: &Scalar) -> Scalar {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            assert!(!b.is_zero(), "division by zero");
            return Scalar::from_small(a.checked_div(b), || to_big(a) / to_big(b));
        }
        self.mul(&other.inv().expect("division by zero"))
    }

    /// Multiplication by an integer.
    pub fn scale_int(&self, k: i64) -> Scalar {
        self.mul(&self.field().from_i64(k))
    }

    /// True for a rational with negative value. Prime-field elements are never
    /// negative.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(a) => a.is_negative(),
            Repr::Big(b) => b.is_negative(),
            Repr::Mod { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
            Repr::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$method(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar::$method(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(1));
        assert!(!is_prime(561));
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(7).is_ok());
    }

    #[test]
    fn rational_overflow_promotes() {
        let q = FieldSpec::Rationals;
        let big = q.from_i64(1 << 61);
        let sq = &big * &big;
        assert_eq!(&sq / &big, big);
        assert_eq!(&sq - &sq, q.zero());
        assert_eq!(q.parse_scalar("-6/4").unwrap(), q.from_ratio(-3, 2).unwrap());
    }

    #[test]
    fn prime_field_inverse() {
        let f = FieldSpec::prime(101).unwrap();
        for v in 1..101 {
            let x = f.from_i64(v);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert_eq!(f.from_i64(-1).residue(), Some(100));
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(51));
    }
}
