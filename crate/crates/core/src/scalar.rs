//! Elements `⟨a⟩^ℓ` of the layered semiring `R(L, ℚ)` in logarithmic notation.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::error::Result;
use crate::sort::{Layer, SortKind};
use crate::Rational;

/// A layered scalar: a rational value together with its layer (sort).
///
/// The multiplicative identity is `⟨0⟩^1`. There is no zero element; the
/// formal bottom `𝟘` is modelled as `None` wherever it is needed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LayeredScalar {
    pub value: Rational,
    pub layer: Layer,
}

impl LayeredScalar {
    pub fn new(value: Rational, layer: Layer) -> Self {
        LayeredScalar { value, layer }
    }

    pub fn int(value: i64, layer: i64) -> Self {
        LayeredScalar::new(Rational::from_integer(value.into()), Layer::int(layer))
    }

    /// A layer-1 scalar.
    pub fn tangible(value: Rational) -> Self {
        LayeredScalar::new(value, Layer::one())
    }

    pub fn one() -> Self {
        LayeredScalar::new(Rational::zero(), Layer::one())
    }

    pub fn is_one(&self) -> bool {
        self.value.is_zero() && self.layer.is_one()
    }

    pub fn mul(&self, other: &Self, sort: SortKind) -> Self {
        LayeredScalar::new(
            &self.value + &other.value,
            sort.product(&self.layer, &other.layer),
        )
    }

    /// Bipotent addition: the ν-larger summand wins, ties add layers.
    pub fn add(&self, other: &Self, sort: SortKind) -> Self {
        match self.value.cmp(&other.value) {
            Ordering::Greater => self.clone(),
            Ordering::Less => other.clone(),
            Ordering::Equal => {
                LayeredScalar::new(self.value.clone(), sort.sum(&self.layer, &other.layer))
            }
        }
    }

    /// Compares values only, ignoring layers.
    pub fn nu_cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }

    pub fn nu_eq(&self, other: &Self) -> bool {
        self.value == other.value
    }

    pub fn is_ell_ghost(&self, l: &Layer, sort: SortKind) -> bool {
        sort.is_ghost_sort(&self.layer, l)
    }

    /// The `ℓ`-surpassing relation `self ⊨_ℓ other`.
    ///
    /// Holds when the two are equal, or when `self` is an `ℓ`-ghost that is
    /// not ν-below `other`. If `self >ν other` then `self = other + self`;
    /// if they are ν-equal the ν-equivalence clause applies directly.
    pub fn surpasses(&self, other: &Self, l: &Layer, sort: SortKind) -> bool {
        self == other || (self.is_ell_ghost(l, sort) && self.value >= other.value)
    }

    /// `self ⊨_L other`, i.e. `⊨_ℓ` at `ℓ = s(other)`.
    pub fn surpasses_l(&self, other: &Self, sort: SortKind) -> bool {
        self.surpasses(other, &other.layer, sort)
    }

    pub fn inv(&self, sort: SortKind) -> Result<Self> {
        Ok(LayeredScalar::new(-&self.value, sort.inverse(&self.layer)?))
    }

    /// `self^n` for a rational exponent.
    pub fn pow(&self, n: &Rational, sort: SortKind) -> Result<Self> {
        Ok(LayeredScalar::new(
            &self.value * n,
            sort.pow(&self.layer, n)?,
        ))
    }

    pub fn int_pow(&self, n: u64, sort: SortKind) -> Self {
        LayeredScalar::new(
            &self.value * Rational::from_integer(n.into()),
            sort.int_pow(&self.layer, n),
        )
    }

    /// `self / other`, dividing layers in `L`.
    pub fn div(&self, other: &Self, sort: SortKind) -> Result<Self> {
        Ok(LayeredScalar::new(
            &self.value - &other.value,
            sort.divide(&self.layer, &other.layer)?,
        ))
    }

    pub fn is_tangible(&self) -> bool {
        self.layer.is_one()
    }

    pub fn with_layer(&self, layer: Layer) -> Self {
        LayeredScalar::new(self.value.clone(), layer)
    }
}

impl Default for LayeredScalar {
    fn default() -> Self {
        LayeredScalar::one()
    }
}

impl fmt::Display for LayeredScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.value, self.layer)
    }
}

/// Layered addition with the formal bottom element adjoined.
pub fn add_opt(x: Option<LayeredScalar>, y: &LayeredScalar, sort: SortKind) -> LayeredScalar {
    match x {
        None => y.clone(),
        Some(x) => x.add(y, sort),
    }
}
