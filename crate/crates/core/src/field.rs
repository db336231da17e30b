//! Exact scalars over Q (arbitrary precision) and F_p (p an odd prime).
//!
//! A [`Scalar`] carries its field with it, so that every geometric object built
//! on top of it knows where it lives. Representations are canonical: rationals
//! are reduced with a positive denominator and residues are taken in `[0, p)`.
//! Equality of scalars is therefore plain structural equality.
//!
//! Mixing scalars from two different fields in one arithmetic expression is a
//! programming error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The base field: either Q or F_p for an odd prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    modulus: Option<u64>,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { modulus: None };

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    /// F_p. Rejects 2 (characteristic two) and anything composite.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(FieldSpec { modulus: Some(p) })
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_rationals(&self) -> bool {
        self.modulus.is_none()
    }

    /// Only Q carries an order compatible with the field operations.
    pub fn is_ordered(&self) -> bool {
        self.is_rationals()
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.modulus {
            None => Scalar(Repr::Rational(BigRational::from_integer(n.clone()))),
            Some(p) => Scalar(Repr::Residue { value: reduce_bigint(n, p), modulus: p }),
        }
    }

    /// `n / d` in this field.
    pub fn ratio(&self, n: i64, d: i64) -> Result<Scalar> {
        self.ratio_big(&BigInt::from(n), &BigInt::from(d))
    }

    pub fn ratio_big(&self, n: &BigInt, d: &BigInt) -> Result<Scalar> {
        match self.modulus {
            None => make_rational(n.clone(), d.clone()),
            Some(_) => {
                let d = self.from_bigint(d);
                let inv = d.inv().ok_or(Error::ZeroDenominator)?;
                Ok(self.from_bigint(n) * inv)
            }
        }
    }

    /// Parses the decimal-free literal forms `n` and `n/d`.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::BadLiteral(text.to_string());
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = match den {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        self.ratio_big(&num, &den)
    }

    /// All elements, for finite fields only.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        let p = self.modulus?;
        Some((0..p).map(move |value| Scalar(Repr::Residue { value, modulus: p })))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "Q"),
            Some(p) => write!(f, "Fp {p}"),
        }
    }
}

/// Reduced rational `n / d`.
pub fn make_rational(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Scalar> {
    let d = d.into();
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Scalar(Repr::Rational(BigRational::new(n.into(), d))))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// An exact element of a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn from_rational(r: BigRational) -> Self {
        Scalar(Repr::Rational(r))
    }

    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Rational(_) => FieldSpec::RATIONALS,
            Repr::Residue { modulus, .. } => FieldSpec { modulus: Some(*modulus) },
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Residue { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Residue { value, .. } => Some(*value),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Rational(r) => Scalar(Repr::Rational(r.recip())),
            Repr::Residue { value, modulus } => {
                Scalar(Repr::Residue { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus })
            }
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Whether some y in the field has y^2 = self.
    pub fn is_square(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => !r.is_negative() && is_perfect_square(r.numer()) && is_perfect_square(r.denom()),
            Repr::Residue { value, modulus } => *value == 0 || pow_mod(*value, (modulus - 1) / 2, *modulus) == 1,
        }
    }

    /// Canonical square root: nonnegative over Q, least residue over F_p.
    pub fn sqrt(&self) -> Result<Scalar> {
        let not_square = || Error::NotASquare(self.to_string());
        match &self.0 {
            Repr::Rational(r) => {
                if r.is_negative() {
                    return Err(not_square());
                }
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                if &(&n * &n) != r.numer() || &(&d * &d) != r.denom() {
                    return Err(not_square());
                }
                Ok(Scalar(Repr::Rational(BigRational::new(n, d))))
            }
            Repr::Residue { value, modulus } => {
                let root = sqrt_mod(*value, *modulus).ok_or_else(not_square)?;
                Ok(Scalar(Repr::Residue { value: root.min(modulus - root), modulus: *modulus }))
            }
        }
    }

    /// Lossy conversion for drawing; `None` over F_p.
    pub fn to_f64(&self) -> Option<f64> {
        self.as_rational().and_then(|r| r.to_f64())
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert_eq!(self.field(), other.field(), "arithmetic on scalars from different fields");
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Total order used for canonical sorting. Numeric over Q; by residue over F_p,
/// which carries no field-compatible meaning.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, modulus: q }) => p.cmp(q).then(a.cmp(b)),
            (Repr::Rational(_), Repr::Residue { .. }) => Ordering::Less,
            (Repr::Residue { .. }, Repr::Rational(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rational(r) => Scalar(Repr::Rational(-r)),
            Repr::Residue { value, modulus } => {
                Scalar(Repr::Residue { value: (modulus - value) % modulus, modulus: *modulus })
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a + b)),
            (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => Scalar(Repr::Residue {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            }),
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a * b)),
            (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => {
                Scalar(Repr::Residue { value: mul_mod(*a, *b, *modulus), modulus: *modulus })
            }
            _ => unreachable!(),
        }
    }
}

/// Panics on division by zero, like the integer types.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.sign() == Sign::Minus { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &(&s * &s) == n
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all of u64.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Tonelli-Shanks. Returns some root of `a` mod odd prime `p`, if any.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1).expect("odd prime has a nonresidue");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        make_rational(n, d).unwrap()
    }

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn make_rational_is_canonical() {
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q(0, 7).to_string(), "0");
        assert_eq!(q(0, 7), q(0, 1));
        assert_eq!(q(-6, -4).to_string(), "3/2");
        assert_eq!(make_rational(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(FieldSpec::prime(2), Err(Error::InvalidModulus(2)));
        assert_eq!(FieldSpec::prime(9), Err(Error::InvalidModulus(9)));
        assert_eq!(FieldSpec::prime(1), Err(Error::InvalidModulus(1)));
        assert!(FieldSpec::prime(97).is_ok());
        assert!(FieldSpec::prime(1_000_000_007).is_ok());
    }

    #[test]
    fn squares_over_q() {
        assert!(q(4, 9).is_square());
        assert!(!q(-1, 1).is_square());
        assert!(!q(2, 1).is_square());
        assert!(!q(4, 3).is_square());
        assert_eq!(q(9, 4).sqrt().unwrap(), q(3, 2));
        assert!(matches!(q(2, 1).sqrt(), Err(Error::NotASquare(_))));
    }

    #[test]
    fn squares_mod_p() {
        assert!(fp(5).int(-1).is_square());
        assert!(fp(13).int(3).is_square());
        assert_eq!(fp(13).int(3).sqrt().unwrap(), fp(13).int(4));
        assert!(!fp(13).int(2).is_square());
    }

    #[test]
    fn parse_mod_p_divides() {
        let f = fp(97);
        assert_eq!(f.parse("1/3").unwrap().residue(), Some(65));
        assert_eq!(f.parse("-1").unwrap().residue(), Some(96));
        assert_eq!(f.parse("1/97"), Err(Error::ZeroDenominator));
        assert!(matches!(f.parse("x"), Err(Error::BadLiteral(_))));
    }

    #[test]
    fn tonelli_shanks_hits_the_p_1_mod_8_path() {
        // 17 and 41 are 1 mod 8, forcing the full loop.
        for p in [17u64, 41, 73, 97, 113] {
            for a in 0..p {
                if let Some(r) = sqrt_mod(a, p) {
                    assert_eq!(mul_mod(r, r, p), a);
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixed_fields_panic() {
        let _ = fp(5).one() + fp(7).one();
    }
}
