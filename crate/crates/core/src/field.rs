//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Field`]. Two families are
//! provided: arbitrary-precision rationals ([`Rational`]) and prime fields
//! [`Fp<P>`] with the modulus fixed at compile time.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

/// Arbitrary-precision rational numbers, always in lowest terms.
pub type Rational = BigRational;

/// An exact field usable as the coefficient ring of every construction.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    /// Human-readable field name as it appears in JSON (`"Q"`, `"GF(p)"`).
    fn field_name() -> String;

    /// Characteristic, `None` for characteristic zero.
    fn characteristic() -> Option<u64>;

    fn from_i64(n: i64) -> Self;

    /// Parses `"a"` or `"a/b"`.
    fn parse_scalar(s: &str) -> Option<Self>;

    /// A uniformly chosen element for prime fields; a small integer for `Q`.
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::one() / self.clone()
    }
}

impl Field for BigRational {
    fn field_name() -> String {
        "Q".to_string()
    }

    fn characteristic() -> Option<u64> {
        None
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse_scalar(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((num, den)) => {
                let num = BigInt::from_str(num.trim()).ok()?;
                let den = BigInt::from_str(den.trim()).ok()?;
                if den.is_zero() {
                    return None;
                }
                Some(BigRational::new(num, den))
            }
            None => BigInt::from_str(s).ok().map(BigRational::from_integer),
        }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_i64(rng.gen_range(-3..=3))
    }
}

/// Element of the prime field `Z/PZ`, stored in `[0, P)`.
///
/// `P` must be prime; this is checked (debug builds) on every construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        debug_assert!(is_prime(P), "modulus {P} is not prime");
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        let m = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in GF({P})");
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn field_name() -> String {
        format!("GF({P})")
    }

    fn characteristic() -> Option<u64> {
        Some(P)
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn parse_scalar(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((num, den)) => {
                let num: i64 = num.trim().parse().ok()?;
                let den: i64 = den.trim().parse().ok()?;
                let den = Fp::<P>::new(den);
                if den.is_zero() {
                    return None;
                }
                Some(Fp::new(num) / den)
            }
            None => s.parse::<i64>().ok().map(Fp::new),
        }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }
}

/// Prime field with 101 elements, the default for randomized suites.
pub type Gf101 = Fp<101>;

/// Prime moduli accepted by runtime field dispatch (JSON files, CLI).
pub const SUPPORTED_PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13, 101, 32003];

/// Runtime description of a field, as carried by JSON documents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl FieldKind {
    pub fn of<F: Field>() -> Self {
        match F::characteristic() {
            None => FieldKind::Rational,
            Some(p) => FieldKind::Prime(p),
        }
    }

    /// Accepts `Q`, `GF(p)`, `GFp` and `GF101`-style spellings.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Some(FieldKind::Rational);
        }
        let rest = s.strip_prefix("GF").or_else(|| s.strip_prefix("gf"))?;
        let rest = rest.trim_start_matches('(').trim_end_matches(')');
        let p: u64 = rest.parse().ok()?;
        SUPPORTED_PRIMES.contains(&p).then_some(FieldKind::Prime(p))
    }

    pub fn name(self) -> String {
        match self {
            FieldKind::Rational => "Q".to_string(),
            FieldKind::Prime(p) => format!("GF({p})"),
        }
    }
}

/// Runs a generic body with `$F` bound to the concrete field for `$kind`.
///
/// Unsupported primes evaluate `$fallback`.
#[macro_export]
macro_rules! with_field {
    ($kind:expr, $F:ident => $body:expr, else $fallback:expr) => {
        match $kind {
            $crate::field::FieldKind::Rational => {
                type $F = $crate::field::Rational;
                $body
            }
            $crate::field::FieldKind::Prime(2) => {
                type $F = $crate::field::Fp<2>;
                $body
            }
            $crate::field::FieldKind::Prime(3) => {
                type $F = $crate::field::Fp<3>;
                $body
            }
            $crate::field::FieldKind::Prime(5) => {
                type $F = $crate::field::Fp<5>;
                $body
            }
            $crate::field::FieldKind::Prime(7) => {
                type $F = $crate::field::Fp<7>;
                $body
            }
            $crate::field::FieldKind::Prime(11) => {
                type $F = $crate::field::Fp<11>;
                $body
            }
            $crate::field::FieldKind::Prime(13) => {
                type $F = $crate::field::Fp<13>;
                $body
            }
            $crate::field::FieldKind::Prime(101) => {
                type $F = $crate::field::Fp<101>;
                $body
            }
            $crate::field::FieldKind::Prime(32003) => {
                type $F = $crate::field::Fp<32003>;
                $body
            }
            $crate::field::FieldKind::Prime(_) => $fallback,
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let a = Gf101::new(57);
        let b = Gf101::new(-3);
        assert_eq!(b.value(), 98);
        assert_eq!((a * a.inv()).value(), 1);
        assert_eq!((a + b).value(), 54);
        assert_eq!((a / b * b), a);
        assert_eq!(-Gf101::zero(), Gf101::zero());
    }

    #[test]
    fn rational_parse_is_lowest_terms() {
        let q = Rational::parse_scalar("6/-4").unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert!(Rational::parse_scalar("1/0").is_none());
        assert_eq!(Rational::parse_scalar("7").unwrap(), Rational::from_i64(7));
    }

    #[test]
    fn field_kind_spellings() {
        assert_eq!(FieldKind::parse("Q"), Some(FieldKind::Rational));
        assert_eq!(FieldKind::parse("GF(101)"), Some(FieldKind::Prime(101)));
        assert_eq!(FieldKind::parse("GF101"), Some(FieldKind::Prime(101)));
        assert_eq!(FieldKind::parse("GF(4)"), None);
        assert_eq!(FieldKind::of::<Gf101>().name(), "GF(101)");
    }
}
