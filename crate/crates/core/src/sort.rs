//! The sorting semiring `L` that indexes the layers of a layered semiring.
//!
//! Every supported instance embeds in `ℚ ∪ {∞}`, so a single [`Layer`]
//! encoding is shared by all of them and [`SortKind`] decides which encodings
//! are valid and how they add and multiply.
//!
//! The layer `0` is accepted by every sort. It marks the inessential
//! coefficients that appear in full forms and behaves as an additive identity
//! and a multiplicative zero.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// The supported sorting semirings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SortKind {
    /// `L = {1}` with `1 + 1 = 1`: plain max-plus algebra.
    Unit,
    /// `L = {1, ∞}`: `1·1 = 1`, every other sum or product is `∞`.
    Supertropical,
    /// `L = {1, …, q}` with sums and products capped at `q`.
    Truncated(u32),
    /// Positive integers with ordinary arithmetic.
    Naturals,
    /// Positive rationals with ordinary arithmetic.
    PosRationals,
    /// All rationals; the layer `0` absorbs multiplicatively.
    Rationals,
}

/// A layer in the universal encoding: a rational or the symbol `∞`.
///
/// The derived order places every finite layer below `∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layer {
    Finite(Rational),
    Infinite,
}

impl Layer {
    pub fn int(n: i64) -> Self {
        Layer::Finite(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Layer::Finite(Rational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn zero() -> Self {
        Layer::Finite(Rational::zero())
    }

    pub fn one() -> Self {
        Layer::Finite(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Layer::Finite(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Layer::Finite(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Layer::Finite(r) => Some(r),
            Layer::Infinite => None,
        }
    }

    fn is_positive_integer(&self) -> bool {
        matches!(self, Layer::Finite(r) if r.is_integer() && r.is_positive())
    }

    fn at_most(&self, q: u32) -> bool {
        match self {
            Layer::Finite(r) => *r <= Rational::from_integer(BigInt::from(q)),
            Layer::Infinite => false,
        }
    }
}

impl From<Rational> for Layer {
    fn from(r: Rational) -> Self {
        Layer::Finite(r)
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Layer::Finite(r) => write!(f, "{r}"),
            Layer::Infinite => f.write_str("inf"),
        }
    }
}

/// Compares two layers in the universal encoding; `∞` is maximal.
pub fn layer_cmp(k: &Layer, l: &Layer) -> Ordering {
    k.cmp(l)
}

/// The quotient map collapsing every layer `≥ q` onto `q`.
pub fn truncate_layer(l: &Layer, q: &Layer) -> Result<Layer> {
    match q {
        Layer::Finite(r) if r.is_positive() => Ok(if l < q { l.clone() } else { q.clone() }),
        _ => Err(Error::PreconditionViolated(format!(
            "truncation level must be a finite positive layer, got {q}"
        ))),
    }
}

impl SortKind {
    pub fn is_valid(&self, l: &Layer) -> bool {
        if l.is_zero() {
            return true;
        }
        match self {
            SortKind::Unit => l.is_one(),
            SortKind::Supertropical => l.is_one() || *l == Layer::Infinite,
            SortKind::Truncated(q) => *q >= 1 && l.is_positive_integer() && l.at_most(*q),
            SortKind::Naturals => *l == Layer::Infinite || l.is_positive_integer(),
            SortKind::PosRationals => match l {
                Layer::Finite(r) => r.is_positive(),
                Layer::Infinite => true,
            },
            SortKind::Rationals => matches!(l, Layer::Finite(_)),
        }
    }

    pub fn check(&self, l: &Layer) -> Result<()> {
        if self.is_valid(l) {
            Ok(())
        } else {
            Err(Error::InvalidLayer {
                layer: l.clone(),
                sort: *self,
            })
        }
    }

    /// `k + l` in `L`, validating both operands.
    pub fn layer_add(&self, k: &Layer, l: &Layer) -> Result<Layer> {
        self.check(k)?;
        self.check(l)?;
        Ok(self.sum(k, l))
    }

    /// `k · l` in `L`, validating both operands.
    pub fn layer_mul(&self, k: &Layer, l: &Layer) -> Result<Layer> {
        self.check(k)?;
        self.check(l)?;
        Ok(self.product(k, l))
    }

    /// Unchecked layer sum. Operands are assumed valid for the sort.
    pub fn sum(&self, k: &Layer, l: &Layer) -> Layer {
        if k.is_zero() {
            return l.clone();
        }
        if l.is_zero() {
            return k.clone();
        }
        match self {
            SortKind::Unit => Layer::one(),
            SortKind::Supertropical => Layer::Infinite,
            SortKind::Truncated(q) => self.cap(ordinary(k, l, |a, b| a + b), *q),
            _ => ordinary(k, l, |a, b| a + b),
        }
    }

    /// Unchecked layer product. Operands are assumed valid for the sort.
    pub fn product(&self, k: &Layer, l: &Layer) -> Layer {
        if k.is_zero() || l.is_zero() {
            return Layer::zero();
        }
        match self {
            SortKind::Unit => Layer::one(),
            SortKind::Supertropical => {
                if k.is_one() && l.is_one() {
                    Layer::one()
                } else {
                    Layer::Infinite
                }
            }
            SortKind::Truncated(q) => self.cap(ordinary(k, l, |a, b| a * b), *q),
            _ => ordinary(k, l, |a, b| a * b),
        }
    }

    fn cap(&self, l: Layer, q: u32) -> Layer {
        if l.at_most(q) {
            l
        } else {
            Layer::int(q as i64)
        }
    }

    /// A layer is infinite when adding any positive layer leaves it fixed.
    pub fn is_infinite(&self, l: &Layer) -> bool {
        match self {
            SortKind::Unit => l.is_one(),
            SortKind::Truncated(q) => *l == Layer::int(*q as i64),
            _ => *l == Layer::Infinite,
        }
    }

    /// Whether `l = base + p` for some positive `p ∈ L`.
    ///
    /// In a totally ordered sort this is `l > base`, or `l = base` with
    /// `base` infinite.
    pub fn is_ghost_sort(&self, l: &Layer, base: &Layer) -> bool {
        match l.cmp(base) {
            Ordering::Greater => true,
            Ordering::Equal => self.is_infinite(base),
            Ordering::Less => false,
        }
    }

    /// The image of the natural number `n = 1 + ⋯ + 1` in `L`.
    pub fn embed(&self, n: u64) -> Layer {
        if n == 0 {
            return Layer::zero();
        }
        match self {
            SortKind::Unit => Layer::one(),
            SortKind::Supertropical if n >= 2 => Layer::Infinite,
            SortKind::Supertropical => Layer::one(),
            SortKind::Truncated(q) => Layer::int(n.min(*q as u64) as i64),
            _ => Layer::Finite(Rational::from_integer(BigInt::from(n))),
        }
    }

    /// The unique `x ∈ L` with `l · x = k`, when the sort provides one.
    pub fn divide(&self, k: &Layer, l: &Layer) -> Result<Layer> {
        let fail = || Error::LayerNotDivisible {
            numerator: Box::new(k.clone()),
            denominator: Box::new(l.clone()),
            sort: *self,
        };
        if l.is_zero() {
            return Err(fail());
        }
        if k.is_zero() {
            return Ok(Layer::zero());
        }
        if l.is_one() {
            return Ok(k.clone());
        }
        let quotient = match (k, l) {
            (Layer::Finite(a), Layer::Finite(b)) => Layer::Finite(a / b),
            (Layer::Infinite, Layer::Finite(_)) => Layer::Infinite,
            _ => return Err(fail()),
        };
        let exact = match self {
            SortKind::Unit | SortKind::Supertropical => false,
            SortKind::Truncated(q) => {
                // a capped numerator has many preimages
                *k != Layer::int(*q as i64) && self.is_valid(&quotient)
            }
            _ => self.is_valid(&quotient),
        };
        if exact {
            Ok(quotient)
        } else {
            Err(fail())
        }
    }

    pub fn inverse(&self, l: &Layer) -> Result<Layer> {
        self.divide(&Layer::one(), l)
            .map_err(|_| Error::NonInvertibleLayer {
                layer: l.clone(),
                sort: *self,
            })
    }

    /// `l^e` for a rational exponent. Fractional powers must have an exact
    /// rational root that lies in `L`.
    pub fn pow(&self, l: &Layer, e: &Rational) -> Result<Layer> {
        if e.is_zero() {
            return Ok(Layer::one());
        }
        if e.is_negative() {
            let positive = self.pow(l, &-e)?;
            return self.inverse(&positive);
        }
        let invalid = || Error::InvalidLayer {
            layer: l.clone(),
            sort: *self,
        };
        let numer = e.numer().to_u64().ok_or_else(invalid)?;
        let denom = e.denom().to_u32().ok_or_else(invalid)?;
        let base = if denom == 1 {
            l.clone()
        } else {
            let root = match l {
                Layer::Infinite => Layer::Infinite,
                Layer::Finite(r) if r.is_zero() => Layer::zero(),
                Layer::Finite(r) if r.is_positive() => {
                    let n = r.numer().nth_root(denom);
                    let d = r.denom().nth_root(denom);
                    let root = Rational::new(n, d);
                    if num_traits::pow(root.clone(), denom as usize) != *r {
                        return Err(invalid());
                    }
                    Layer::Finite(root)
                }
                Layer::Finite(_) => return Err(invalid()),
            };
            if let SortKind::Truncated(q) = self {
                if *l == Layer::int(*q as i64) && root != *l {
                    return Err(invalid());
                }
            }
            if !self.is_valid(&root) {
                return Err(invalid());
            }
            root
        };
        Ok(self.int_pow(&base, numer))
    }

    /// `l^n` for a natural exponent by repeated squaring in `L`.
    pub fn int_pow(&self, l: &Layer, mut n: u64) -> Layer {
        let mut acc = Layer::one();
        let mut base = l.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.product(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.product(&base, &base);
            }
        }
        acc
    }

    /// Whether the sort admits every layer quotient needed by factorization.
    pub fn is_divisible(&self) -> bool {
        matches!(self, SortKind::PosRationals | SortKind::Rationals)
    }
}

fn ordinary(k: &Layer, l: &Layer, op: impl Fn(&Rational, &Rational) -> Rational) -> Layer {
    match (k, l) {
        (Layer::Finite(a), Layer::Finite(b)) => Layer::Finite(op(a, b)),
        _ => Layer::Infinite,
    }
}

impl fmt::Display for SortKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SortKind::Unit => f.write_str("unit"),
            SortKind::Supertropical => f.write_str("super"),
            SortKind::Truncated(q) => write!(f, "trunc:{q}"),
            SortKind::Naturals => f.write_str("nat"),
            SortKind::PosRationals => f.write_str("posq"),
            SortKind::Rationals => f.write_str("q"),
        }
    }
}

impl FromStr for SortKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(SortKind::Unit),
            "super" => Ok(SortKind::Supertropical),
            "nat" => Ok(SortKind::Naturals),
            "posq" => Ok(SortKind::PosRationals),
            "q" => Ok(SortKind::Rationals),
            _ => {
                let q = s
                    .strip_prefix("trunc:")
                    .ok_or_else(|| Error::parse(0, format!("unknown sort `{s}`")))?;
                match q.parse::<u32>() {
                    Ok(q) if q >= 1 => Ok(SortKind::Truncated(q)),
                    _ => Err(Error::parse(6, format!("bad truncation level `{q}`"))),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n(v: i64) -> Layer {
        Layer::int(v)
    }

    #[test]
    fn add_examples() {
        assert_eq!(SortKind::Naturals.layer_add(&n(2), &n(3)).unwrap(), n(5));
        assert_eq!(
            SortKind::Truncated(4).layer_add(&n(3), &n(3)).unwrap(),
            n(4)
        );
        assert_eq!(SortKind::Unit.layer_add(&n(1), &n(1)).unwrap(), n(1));
    }

    #[test]
    fn mul_examples() {
        let half = Layer::ratio(1, 2);
        assert_eq!(
            SortKind::PosRationals.layer_mul(&half, &n(4)).unwrap(),
            n(2)
        );
        assert_eq!(
            SortKind::Supertropical
                .layer_mul(&n(1), &Layer::Infinite)
                .unwrap(),
            Layer::Infinite
        );
        assert_eq!(SortKind::Rationals.layer_mul(&n(0), &n(7)).unwrap(), n(0));
    }

    #[test]
    fn invalid_layers_rejected() {
        assert!(matches!(
            SortKind::Naturals.layer_add(&Layer::ratio(1, 2), &n(1)),
            Err(Error::InvalidLayer { .. })
        ));
        assert!(SortKind::Unit.layer_mul(&n(2), &n(1)).is_err());
        assert!(SortKind::Truncated(3).layer_add(&n(4), &n(1)).is_err());
        assert!(SortKind::Rationals.check(&Layer::Infinite).is_err());
        assert!(SortKind::PosRationals.check(&n(-1)).is_err());
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(layer_cmp(&n(2), &n(3)), Ordering::Less);
        assert_eq!(layer_cmp(&Layer::Infinite, &n(5)), Ordering::Greater);
        assert_eq!(layer_cmp(&n(1), &n(1)), Ordering::Equal);
    }

    #[test]
    fn ghost_sorts() {
        assert!(SortKind::Naturals.is_ghost_sort(&n(3), &n(1)));
        assert!(SortKind::Supertropical.is_ghost_sort(&Layer::Infinite, &Layer::Infinite));
        assert!(!SortKind::Naturals.is_ghost_sort(&n(1), &n(1)));
        assert!(SortKind::Truncated(3).is_ghost_sort(&n(3), &n(3)));
        assert!(!SortKind::Truncated(3).is_ghost_sort(&n(2), &n(2)));
        // in max-plus every layer is infinite
        assert!(SortKind::Unit.is_ghost_sort(&n(1), &n(1)));
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(truncate_layer(&n(5), &n(2)).unwrap(), n(2));
        assert_eq!(truncate_layer(&n(1), &n(2)).unwrap(), n(1));
        assert_eq!(truncate_layer(&Layer::Infinite, &n(3)).unwrap(), n(3));
        assert!(truncate_layer(&n(1), &Layer::Infinite).is_err());
    }

    #[test]
    fn division_and_powers() {
        let s = SortKind::Naturals;
        assert_eq!(s.divide(&n(6), &n(3)).unwrap(), n(2));
        assert!(s.divide(&n(3), &n(2)).is_err());
        assert_eq!(
            SortKind::PosRationals.divide(&n(3), &n(2)).unwrap(),
            Layer::ratio(3, 2)
        );
        assert!(SortKind::Truncated(4).divide(&n(4), &n(2)).is_err());
        assert_eq!(SortKind::Truncated(4).divide(&n(2), &n(2)).unwrap(), n(1));
        assert_eq!(
            SortKind::PosRationals
                .pow(&n(4), &Rational::new(1.into(), 2.into()))
                .unwrap(),
            n(2)
        );
        assert!(SortKind::PosRationals
            .pow(&n(2), &Rational::new(1.into(), 2.into()))
            .is_err());
        assert_eq!(SortKind::Truncated(5).int_pow(&n(2), 3), n(5));
        assert_eq!(SortKind::Naturals.embed(4), n(4));
        assert_eq!(SortKind::Supertropical.embed(2), Layer::Infinite);
    }

    #[test]
    fn sort_strings_round_trip() {
        for s in ["unit", "super", "trunc:4", "nat", "posq", "q"] {
            assert_eq!(s.parse::<SortKind>().unwrap().to_string(), s);
        }
        assert!("trunc:0".parse::<SortKind>().is_err());
        assert!("reals".parse::<SortKind>().is_err());
    }

    fn sorts() -> impl Strategy<Value = SortKind> {
        prop_oneof![
            Just(SortKind::Unit),
            Just(SortKind::Supertropical),
            (1u32..6).prop_map(SortKind::Truncated),
            Just(SortKind::Naturals),
            Just(SortKind::PosRationals),
            Just(SortKind::Rationals),
        ]
    }

    fn layer_for(sort: SortKind) -> BoxedStrategy<Layer> {
        match sort {
            SortKind::Unit => prop_oneof![Just(n(1)), Just(n(0))].boxed(),
            SortKind::Supertropical => {
                prop_oneof![Just(n(1)), Just(Layer::Infinite), Just(n(0))].boxed()
            }
            SortKind::Truncated(q) => (0..=q as i64).prop_map(n).boxed(),
            SortKind::Naturals => {
                prop_oneof![(0i64..20).prop_map(n), Just(Layer::Infinite)].boxed()
            }
            SortKind::PosRationals => prop_oneof![
                (1i64..20, 1i64..6).prop_map(|(a, b)| Layer::ratio(a, b)),
                Just(Layer::Infinite),
                Just(n(0)),
            ]
            .boxed(),
            SortKind::Rationals => (-20i64..20, 1i64..6)
                .prop_map(|(a, b)| Layer::ratio(a, b))
                .boxed(),
        }
    }

    fn sort_and_triple() -> impl Strategy<Value = (SortKind, Layer, Layer, Layer)> {
        sorts().prop_flat_map(|s| (Just(s), layer_for(s), layer_for(s), layer_for(s)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn semiring_laws((s, a, b, c) in sort_and_triple()) {
            prop_assert_eq!(s.sum(&a, &b), s.sum(&b, &a));
            prop_assert_eq!(s.product(&a, &b), s.product(&b, &a));
            prop_assert_eq!(s.sum(&s.sum(&a, &b), &c), s.sum(&a, &s.sum(&b, &c)));
            prop_assert_eq!(s.product(&s.product(&a, &b), &c), s.product(&a, &s.product(&b, &c)));
            prop_assert_eq!(
                s.product(&a, &s.sum(&b, &c)),
                s.sum(&s.product(&a, &b), &s.product(&a, &c))
            );
            prop_assert!(s.is_valid(&s.sum(&a, &b)));
            prop_assert!(s.is_valid(&s.product(&a, &b)));
        }

        #[test]
        fn monotonicity((s, k, l, m) in sort_and_triple()) {
            prop_assume!(s != SortKind::Rationals);
            let (lo, hi) = if k <= l { (k, l) } else { (l, k) };
            prop_assert!(s.sum(&lo, &m) <= s.sum(&hi, &m));
            if !m.is_zero() {
                prop_assert!(s.product(&lo, &m) <= s.product(&hi, &m));
            }
        }

        #[test]
        fn truncation_is_homomorphism(a in 1i64..30, b in 1i64..30, q in 1u32..8) {
            let nat = SortKind::Naturals;
            let tr = SortKind::Truncated(q);
            let ql = n(q as i64);
            let t = |x: &Layer| truncate_layer(x, &ql).unwrap();
            prop_assert_eq!(t(&nat.sum(&n(a), &n(b))), tr.sum(&t(&n(a)), &t(&n(b))));
            prop_assert_eq!(t(&nat.product(&n(a), &n(b))), tr.product(&t(&n(a)), &t(&n(b))));
        }
    }
}
