//! Exact scalars.
//!
//! [`Integer`] is an arbitrary-precision integer that stays on a machine word
//! while the value fits and promotes to a [`BigInt`] on overflow. [`Rational`]
//! is a reduced fraction of two such integers with a positive denominator.
//! Both are plain values: every operation returns a fresh number.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive};

/// Ring operations shared by the two matrix entry types.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_i64(v: i64) -> Self;
}

/// Arbitrary-precision integer with an `i64` fast path.
///
/// Invariant: the `Big` variant only holds values outside the `i64` range.
#[derive(Clone)]
pub enum Integer {
    Small(i64),
    Big(BigInt),
}

impl Integer {
    pub fn new(v: i64) -> Self {
        Integer::Small(v)
    }

    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Integer::Small(v),
            None => Integer::Big(b),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Integer::Small(v) => BigInt::from(*v),
            Integer::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Integer::Small(v) => Some(*v),
            Integer::Big(_) => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Integer::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Integer::Small(v) => *v < 0,
            Integer::Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Integer::Small(v) => *v > 0,
            Integer::Big(b) => b.is_positive(),
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Integer::Small(v) => match v.checked_abs() {
                Some(a) => Integer::Small(a),
                None => Integer::from_big(BigInt::from(*v).abs()),
            },
            Integer::Big(b) => Integer::from_big(b.abs()),
        }
    }

    pub fn signum(&self) -> i64 {
        match self {
            Integer::Small(v) => v.signum(),
            Integer::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    /// Floor division; panics on a zero divisor.
    pub fn div_floor(&self, other: &Self) -> Self {
        if let (Integer::Small(a), Integer::Small(b)) = (self, other) {
            if !(*a == i64::MIN && *b == -1) {
                return Integer::Small(a.div_floor(b));
            }
        }
        Integer::from_big(self.to_bigint().div_floor(&other.to_bigint()))
    }

    /// Remainder with the sign of the divisor, matching [`Integer::div_floor`].
    pub fn mod_floor(&self, other: &Self) -> Self {
        if let (Integer::Small(a), Integer::Small(b)) = (self, other) {
            if *b != -1 {
                return Integer::Small(a.mod_floor(b));
            }
            return Integer::Small(0);
        }
        Integer::from_big(self.to_bigint().mod_floor(&other.to_bigint()))
    }

    /// Exact division; the caller guarantees divisibility.
    pub fn div_exact(&self, other: &Self) -> Self {
        let q = self.div_floor(other);
        debug_assert!(
            q.mul_ref(other) == *self,
            "inexact division {self} / {other}"
        );
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.mod_floor(self).is_zero()
    }

    /// Non-negative gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if let (Integer::Small(a), Integer::Small(b)) = (self, other) {
            let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
            while y != 0 {
                let r = x % y;
                x = y;
                y = r;
            }
            if let Ok(v) = i64::try_from(x) {
                return Integer::Small(v);
            }
        }
        Integer::from_big(self.to_bigint().gcd(&other.to_bigint()))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Integer::Small(0);
        }
        self.div_exact(&self.gcd(other)).mul_ref(other).abs()
    }
}

impl Scalar for Integer {
    fn zero() -> Self {
        Integer::Small(0)
    }
    fn one() -> Self {
        Integer::Small(1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }
    fn add_ref(&self, other: &Self) -> Self {
        if let (Integer::Small(a), Integer::Small(b)) = (self, other) {
            if let Some(c) = a.checked_add(*b) {
                return Integer::Small(c);
            }
        }
        Integer::from_big(self.to_bigint() + other.to_bigint())
    }
    fn sub_ref(&self, other: &Self) -> Self {
        if let (Integer::Small(a), Integer::Small(b)) = (self, other) {
            if let Some(c) = a.checked_sub(*b) {
                return Integer::Small(c);
            }
        }
        Integer::from_big(self.to_bigint() - other.to_bigint())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if let (Integer::Small(a), Integer::Small(b)) = (self, other) {
            if let Some(c) = a.checked_mul(*b) {
                return Integer::Small(c);
            }
        }
        Integer::from_big(self.to_bigint() * other.to_bigint())
    }
    fn neg_ref(&self) -> Self {
        match self {
            Integer::Small(v) => match v.checked_neg() {
                Some(n) => Integer::Small(n),
                None => Integer::from_big(-BigInt::from(*v)),
            },
            Integer::Big(b) => Integer::from_big(-b),
        }
    }
    fn from_i64(v: i64) -> Self {
        Integer::Small(v)
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer::Small(v)
    }
}

impl From<BigInt> for Integer {
    fn from(b: BigInt) -> Self {
        Integer::from_big(b)
    }
}

impl PartialEq for Integer {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a == b,
            (Integer::Big(a), Integer::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Integer {}

impl Hash for Integer {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Integer::Small(v) => v.hash(state),
            Integer::Big(b) => b.hash(state),
        }
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(v) => write!(f, "{v}"),
            Integer::Big(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Integer {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Integer::Small(v));
        }
        s.parse::<BigInt>()
            .map(Integer::from_big)
            .map_err(|e| format!("invalid integer {s:?}: {e}"))
    }
}

impl Add for Integer {
    type Output = Integer;
    fn add(self, rhs: Integer) -> Integer {
        self.add_ref(&rhs)
    }
}

impl Sub for Integer {
    type Output = Integer;
    fn sub(self, rhs: Integer) -> Integer {
        self.sub_ref(&rhs)
    }
}

impl Mul for Integer {
    type Output = Integer;
    fn mul(self, rhs: Integer) -> Integer {
        self.mul_ref(&rhs)
    }
}

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        self.neg_ref()
    }
}

/// Reduced fraction `num / den` with `den ≥ 1` and `gcd(|num|, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: Integer,
    den: Integer,
}

impl Rational {
    /// Builds `num / den`, reducing to lowest terms. Panics if `den` is zero.
    pub fn new(num: Integer, den: Integer) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        if d.is_negative() {
            n = n.neg_ref();
            d = d.neg_ref();
        }
        Rational { num: n, den: d }
    }

    pub fn from_integer(n: Integer) -> Self {
        Rational {
            num: n,
            den: Integer::one(),
        }
    }

    pub fn numer(&self) -> &Integer {
        &self.num
    }

    pub fn denom(&self) -> &Integer {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Self {
        Rational::new(self.den.clone(), self.num.clone())
    }

    pub fn div_ref(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero");
        Rational::new(self.num.mul_ref(&other.den), self.den.mul_ref(&other.num))
    }

    pub fn abs(&self) -> Self {
        Rational {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::from_integer(Integer::zero())
    }
    fn one() -> Self {
        Rational::from_integer(Integer::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Rational::new(self.num.add_ref(&other.num), self.den.clone());
        }
        Rational::new(
            self.num
                .mul_ref(&other.den)
                .add_ref(&other.num.mul_ref(&self.den)),
            self.den.mul_ref(&other.den),
        )
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Rational::zero();
        }
        Rational::new(self.num.mul_ref(&other.num), self.den.mul_ref(&other.den))
    }
    fn neg_ref(&self) -> Self {
        Rational {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(Integer::Small(v))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_i64(v)
    }
}

impl From<Integer> for Rational {
    fn from(n: Integer) -> Self {
        Rational::from_integer(n)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num
            .mul_ref(&other.den)
            .cmp(&other.num.mul_ref(&self.den))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integers print bare; everything else as `p/q`.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            Some((n, d)) => {
                let n: Integer = n.parse()?;
                let d: Integer = d.parse()?;
                if d.is_zero() {
                    return Err(format!("zero denominator in {s:?}"));
                }
                Ok(Rational::new(n, d))
            }
            None => Ok(Rational::from_integer(s.parse()?)),
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        self.add_ref(&rhs)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self.sub_ref(&rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        self.mul_ref(&rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i128) -> Integer {
        Integer::from(BigInt::from(v))
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let a = Integer::new(i64::MAX);
        let b = a.add_ref(&Integer::one());
        assert!(matches!(b, Integer::Big(_)));
        assert_eq!(b, big(i64::MAX as i128 + 1));
        let c = b.sub_ref(&Integer::one());
        assert!(matches!(c, Integer::Small(_)));
        assert_eq!(Integer::new(i64::MIN).neg_ref(), big(-(i64::MIN as i128)));
        assert_eq!(Integer::new(i64::MIN).abs(), big(1i128 << 63));
    }

    #[test]
    fn rational_normal_form() {
        let r = Rational::new(Integer::new(4), Integer::new(-6));
        assert_eq!(r.numer(), &Integer::new(-2));
        assert_eq!(r.denom(), &Integer::new(3));
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!("-2/3".parse::<Rational>().unwrap(), r);
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from(7));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn floor_semantics() {
        assert_eq!(
            Integer::new(-7).div_floor(&Integer::new(2)),
            Integer::new(-4)
        );
        assert_eq!(
            Integer::new(-7).mod_floor(&Integer::new(2)),
            Integer::new(1)
        );
        assert_eq!(
            Integer::new(-7).mod_floor(&Integer::new(-1)),
            Integer::new(0)
        );
        assert_eq!(Integer::new(12).gcd(&Integer::new(-18)), Integer::new(6));
        assert_eq!(Integer::new(4).lcm(&Integer::new(6)), Integer::new(12));
    }

    proptest! {
        #[test]
        fn integer_ops_match_bigint(a in any::<i64>(), b in any::<i64>()) {
            let (x, y) = (Integer::new(a), Integer::new(b));
            let (ba, bb) = (BigInt::from(a), BigInt::from(b));
            prop_assert_eq!(x.add_ref(&y).to_bigint(), &ba + &bb);
            prop_assert_eq!(x.sub_ref(&y).to_bigint(), &ba - &bb);
            prop_assert_eq!(x.mul_ref(&y).to_bigint(), &ba * &bb);
            prop_assert_eq!(x.gcd(&y).to_bigint(), ba.gcd(&bb));
            if b != 0 {
                prop_assert_eq!(x.div_floor(&y).to_bigint(), ba.div_floor(&bb));
                prop_assert_eq!(x.mod_floor(&y).to_bigint(), ba.mod_floor(&bb));
            }
        }

        #[test]
        fn rational_field_laws(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20) {
            let x = Rational::new(Integer::new(a), Integer::new(b));
            let y = Rational::new(Integer::new(c), Integer::new(d));
            prop_assert_eq!(x.add_ref(&y).sub_ref(&y), x.clone());
            if !y.is_zero() {
                prop_assert_eq!(x.mul_ref(&y).div_ref(&y), x.clone());
            }
            prop_assert!(x.numer().gcd(x.denom()).is_one() || x.is_zero());
            prop_assert!(x.denom().is_positive());
        }
    }
}
