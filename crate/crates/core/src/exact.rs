//! Exact coefficient arithmetic: big integers, big rationals, and the
//! circle group ℚ/ℤ. No floating point anywhere.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Shorthand for an exact integer.
pub type Int = BigInt;
/// Shorthand for an exact rational.
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// The unique representative of `r` mod 1 lying in `[0, 1)`.
pub fn canonical_lift_rat(r: &Rat) -> Rat {
    r - r.floor()
}

/// An element of the circle group ℚ/ℤ, stored as its canonical
/// representative in `[0, 1)` (fully reduced).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircleValue {
    value: Rat,
}

impl Serialize for CircleValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rat(&self.value))
    }
}

impl<'de> Deserialize<'de> for CircleValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rat(&s)
            .map(CircleValue::new)
            .ok_or_else(|| serde::de::Error::custom(format!("invalid rational: {s:?}")))
    }
}

impl CircleValue {
    pub fn new(r: Rat) -> Self {
        CircleValue {
            value: canonical_lift_rat(&r),
        }
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::new(rat(num, den))
    }

    pub fn zero() -> Self {
        CircleValue {
            value: <Rat as Zero>::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// The canonical representative in `[0, 1)`.
    pub fn lift(&self) -> Rat {
        self.value.clone()
    }

    pub fn numer(&self) -> &Int {
        self.value.numer()
    }

    pub fn denom(&self) -> &Int {
        self.value.denom()
    }

    /// Scalar multiple `k·x` in ℚ/ℤ.
    pub fn scale(&self, k: &Int) -> Self {
        CircleValue::new(Rat::from(k.clone()) * &self.value)
    }

    /// Order of the element in ℚ/ℤ (its reduced denominator).
    pub fn order(&self) -> Int {
        self.value.denom().clone()
    }
}

impl Add for &CircleValue {
    type Output = CircleValue;
    fn add(self, rhs: &CircleValue) -> CircleValue {
        CircleValue::new(&self.value + &rhs.value)
    }
}

impl Add for CircleValue {
    type Output = CircleValue;
    fn add(self, rhs: CircleValue) -> CircleValue {
        &self + &rhs
    }
}

impl Zero for CircleValue {
    fn zero() -> Self {
        CircleValue::zero()
    }
    fn is_zero(&self) -> bool {
        CircleValue::is_zero(self)
    }
}

impl Sub for &CircleValue {
    type Output = CircleValue;
    fn sub(self, rhs: &CircleValue) -> CircleValue {
        CircleValue::new(&self.value - &rhs.value)
    }
}

impl Neg for &CircleValue {
    type Output = CircleValue;
    fn neg(self) -> CircleValue {
        CircleValue::new(-&self.value)
    }
}

impl fmt::Debug for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.denom().is_one() {
            write!(f, "{}", self.value.numer())
        } else {
            write!(f, "{}/{}", self.value.numer(), self.value.denom())
        }
    }
}

/// Renders a rational as `num/den` (or plain integer when the denominator
/// is one); inverse of [`parse_rat`].
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: Int = s.parse().ok()?;
            Some(Rat::from(n))
        }
    }
}

/// Reference-operator bundle for coefficient rings, in the style of
/// `for<'a> &'a R: CoeffOps<R>` bounds at use sites.
pub trait CoeffOps<T = Self>: Add<Output = T> + Sub<Output = T> + Neg<Output = T> + Sized {}

impl<T, U> CoeffOps<T> for U where U: Add<Output = T> + Sub<Output = T> + Neg<Output = T> {}

/// Coefficient rings a cochain can take values in: ℤ, ℚ, or ℚ/ℤ.
///
/// `solve_primitive` is the ring-specific back end for coboundary
/// queries: given the SNF of an integer matrix `A` it produces `x` with
/// `A·x = rhs` in the ring, or certifies that none exists.
pub trait Coeff: Clone + Eq + fmt::Debug + Zero
where
    for<'a> &'a Self: CoeffOps<Self>,
{
    const RING_NAME: &'static str;

    fn solve_primitive(snf: &crate::matrix::SnfDecomposition, rhs: &[Self]) -> Option<Vec<Self>>;

    fn render(&self) -> String;
    fn parse(s: &str) -> Option<Self>;
}

impl Coeff for Int {
    const RING_NAME: &'static str = "Z";

    fn solve_primitive(snf: &crate::matrix::SnfDecomposition, rhs: &[Self]) -> Option<Vec<Self>> {
        snf.solve(rhs)
    }

    fn render(&self) -> String {
        format!("{}", self)
    }
    fn parse(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
}

impl Coeff for Rat {
    const RING_NAME: &'static str = "Q";

    fn solve_primitive(snf: &crate::matrix::SnfDecomposition, rhs: &[Self]) -> Option<Vec<Self>> {
        snf.solve_rational(rhs)
    }

    fn render(&self) -> String {
        format_rat(self)
    }
    fn parse(s: &str) -> Option<Self> {
        parse_rat(s)
    }
}

impl Coeff for CircleValue {
    const RING_NAME: &'static str = "Q/Z";

    fn solve_primitive(snf: &crate::matrix::SnfDecomposition, rhs: &[Self]) -> Option<Vec<Self>> {
        snf.solve_mod1(rhs)
    }

    fn render(&self) -> String {
        format!("{}", self)
    }
    fn parse(s: &str) -> Option<Self> {
        parse_rat(s).map(CircleValue::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_lift_basics() {
        assert_eq!(CircleValue::from_frac(0, 1).lift(), rat(0, 1));
        assert_eq!(CircleValue::from_frac(1, 2).lift(), rat(1, 2));
        // 7/3 reduces to 1/3 mod 1
        assert_eq!(CircleValue::new(rat(7, 3)).lift(), rat(1, 3));
        assert_eq!(CircleValue::new(rat(-1, 4)).lift(), rat(3, 4));
        assert_eq!(CircleValue::new(rat(-6, 3)).lift(), rat(0, 1));
    }

    #[test]
    fn parse_render_roundtrip() {
        for s in ["0", "1/2", "-3/7", "5"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }

    proptest! {
        #[test]
        fn circle_group_laws(an in -40i64..40, ad in 1i64..12,
                             bn in -40i64..40, bd in 1i64..12,
                             cn in -40i64..40, cd in 1i64..12) {
            let a = CircleValue::from_frac(an, ad);
            let b = CircleValue::from_frac(bn, bd);
            let c = CircleValue::from_frac(cn, cd);
            // associativity and inverses
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a + &(-&a)).is_zero());
            // representative always lands in [0,1)
            prop_assert!(a.lift() >= rat(0, 1) && a.lift() < rat(1, 1));
        }

        #[test]
        fn lift_is_section(n in -100i64..100, d in 1i64..50) {
            let c = CircleValue::from_frac(n, d);
            prop_assert_eq!(CircleValue::new(c.lift()), c);
        }
    }
}
