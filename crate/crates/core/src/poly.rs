//! Sparse univariate layered polynomials.
//!
//! Polynomials are stored exactly as given; nothing is normalized behind the
//! caller's back. [`LayeredPoly::essential_form`] and
//! [`LayeredPoly::full_form`] produce the minimal and maximal representatives
//! of the same function, computed from the upper concave hull of the points
//! `(i, value(α_i))` with exact rational arithmetic.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::LayeredScalar;
use crate::sort::{Layer, SortKind};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LayeredPoly {
    coeffs: BTreeMap<u32, LayeredScalar>,
}

/// A maximal run of equal consecutive slopes of a full-form polynomial.
///
/// `root` is the common value `value(α_i) − value(α_{i+1})` for
/// `lo ≤ i < hi`; it is the ν-value of the corner root carried by the
/// homogeneous part spanning exponents `lo..=hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeRun {
    pub root: Rational,
    pub lo: u32,
    pub hi: u32,
}

impl SlopeRun {
    pub fn len(&self) -> u32 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }
}

impl LayeredPoly {
    pub fn zero() -> Self {
        LayeredPoly::default()
    }

    pub fn constant(c: LayeredScalar) -> Self {
        LayeredPoly::monomial(0, c)
    }

    pub fn monomial(exp: u32, c: LayeredScalar) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(exp, c);
        LayeredPoly { coeffs }
    }

    /// The monic linear polynomial `λ + c`.
    pub fn linear(c: LayeredScalar) -> Self {
        LayeredPoly::from_terms([(1, LayeredScalar::one()), (0, c)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; a repeated
    /// exponent keeps the last coefficient.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, LayeredScalar)>) -> Self {
        LayeredPoly {
            coeffs: terms.into_iter().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn lowest_exponent(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading(&self) -> Option<&LayeredScalar> {
        self.coeffs.values().next_back()
    }

    pub fn coeff(&self, exp: u32) -> Option<&LayeredScalar> {
        self.coeffs.get(&exp)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &LayeredScalar)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.value.is_zero())
    }

    pub fn add(&self, other: &Self, sort: SortKind) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            coeffs
                .entry(*e)
                .and_modify(|x| *x = x.add(c, sort))
                .or_insert_with(|| c.clone());
        }
        LayeredPoly { coeffs }
    }

    pub fn mul(&self, other: &Self, sort: SortKind) -> Self {
        let mut coeffs: BTreeMap<u32, LayeredScalar> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let term = a.mul(b, sort);
                coeffs
                    .entry(i + j)
                    .and_modify(|x| *x = x.add(&term, sort))
                    .or_insert(term);
            }
        }
        LayeredPoly { coeffs }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &LayeredScalar, sort: SortKind) -> Self {
        LayeredPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, x)| (*e, x.mul(c, sort)))
                .collect(),
        }
    }

    /// Multiplies by `λ^u`.
    pub fn shift(&self, u: u32) -> Self {
        LayeredPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, x)| (e + u, x.clone()))
                .collect(),
        }
    }

    /// Divides by `λ^u`; every exponent must be at least `u`.
    pub fn unshift(&self, u: u32) -> Self {
        LayeredPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, x)| (e - u, x.clone()))
                .collect(),
        }
    }

    /// The coefficients with exponents in `lo..=hi`, exponents unchanged.
    pub fn slice(&self, lo: u32, hi: u32) -> Self {
        LayeredPoly {
            coeffs: self
                .coeffs
                .range(lo..=hi)
                .map(|(e, x)| (*e, x.clone()))
                .collect(),
        }
    }

    /// Evaluates at `x`; the zero polynomial evaluates to `𝟘` (`None`).
    pub fn eval(&self, x: &LayeredScalar, sort: SortKind) -> Option<LayeredScalar> {
        self.coeffs
            .iter()
            .map(|(e, c)| c.mul(&x.int_pow(*e as u64, sort), sort))
            .reduce(|acc, t| acc.add(&t, sort))
    }

    /// Exponents of the vertices of the upper concave hull of the points
    /// `(i, value(α_i))`.
    pub fn hull_vertices(&self) -> Vec<u32> {
        let mut hull: Vec<(u32, &Rational)> = Vec::new();
        for (e, c) in &self.coeffs {
            while hull.len() >= 2 {
                let (x0, y0) = hull[hull.len() - 2];
                let (x1, y1) = hull[hull.len() - 1];
                // pop the middle point when it lies on or below the chord
                let lhs = (y1 - y0) * Rational::from_integer((e - x0).into());
                let rhs = (&c.value - y0) * Rational::from_integer((x1 - x0).into());
                if lhs <= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push((*e, &c.value));
        }
        hull.into_iter().map(|(e, _)| e).collect()
    }

    /// The hull value at `exp` between the hull vertices `lo` and `hi`.
    fn interpolate(&self, lo: u32, hi: u32, exp: u32) -> Rational {
        let a = &self.coeffs[&lo].value;
        let b = &self.coeffs[&hi].value;
        let t = Rational::new((exp - lo).into(), (hi - lo).into());
        a + (b - a) * t
    }

    /// The minimal representative of `f` as a function.
    ///
    /// Monomials strictly below the upper hull are removed. Monomials on the
    /// hull are kept, except non-vertex ones of layer `0`.
    pub fn essential_form(&self) -> Self {
        let vertices = self.hull_vertices();
        let mut coeffs = BTreeMap::new();
        for w in vertices.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            for (e, c) in self.coeffs.range(lo + 1..hi) {
                if c.value == self.interpolate(lo, hi, *e) && !c.layer.is_zero() {
                    coeffs.insert(*e, c.clone());
                }
            }
        }
        for v in vertices {
            coeffs.insert(v, self.coeffs[&v].clone());
        }
        LayeredPoly { coeffs }
    }

    /// The maximal representative of `f` as a function: every exponent
    /// strictly between consecutive hull vertices that carries no hull
    /// monomial receives the interpolated value in layer `0`.
    pub fn full_form(&self) -> Self {
        let essential = self.essential_form();
        let vertices = essential.hull_vertices();
        let mut coeffs = essential.coeffs.clone();
        for w in vertices.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            for e in lo + 1..hi {
                coeffs.entry(e).or_insert_with(|| {
                    LayeredScalar::new(essential.interpolate(lo, hi, e), Layer::zero())
                });
            }
        }
        LayeredPoly { coeffs }
    }

    pub fn is_full_form(&self) -> bool {
        *self == self.full_form()
    }

    /// Slope runs of a full-form polynomial, in ascending exponent order.
    ///
    /// Root values `value(α_i) − value(α_{i+1})` weakly increase with `i`.
    pub fn slopes(&self) -> Result<Vec<SlopeRun>> {
        if !self.is_full_form() {
            return Err(Error::NotFullForm);
        }
        let mut runs: Vec<SlopeRun> = Vec::new();
        let terms: Vec<_> = self.coeffs.iter().collect();
        for w in terms.windows(2) {
            let (i, a) = w[0];
            let (_, b) = w[1];
            let root = &a.value - &b.value;
            match runs.last_mut() {
                Some(run) if run.root == root => run.hi = i + 1,
                _ => runs.push(SlopeRun {
                    root,
                    lo: *i,
                    hi: i + 1,
                }),
            }
        }
        Ok(runs)
    }

    /// The homogeneous parts of a full-form polynomial, one per slope run.
    /// Neighbouring parts share their boundary monomial.
    pub fn homogeneous_parts(&self) -> Result<Vec<LayeredPoly>> {
        Ok(self
            .slopes()?
            .iter()
            .map(|run| self.slice(run.lo, run.hi))
            .collect())
    }

    /// Every coefficient divided by `c`.
    pub fn divide_by(&self, c: &LayeredScalar, sort: SortKind) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, x)| Ok((*e, x.div(c, sort)?)))
            .collect::<Result<_>>()?;
        Ok(LayeredPoly { coeffs })
    }

    pub fn validate(&self, sort: SortKind) -> Result<()> {
        self.coeffs.values().try_for_each(|c| sort.check(&c.layer))
    }

    /// `λ`.
    pub fn lambda() -> Self {
        LayeredPoly::monomial(1, LayeredScalar::one())
    }
}

impl FromIterator<(u32, LayeredScalar)> for LayeredPoly {
    fn from_iter<I: IntoIterator<Item = (u32, LayeredScalar)>>(iter: I) -> Self {
        LayeredPoly::from_terms(iter)
    }
}

/// A probe grid that crosses every corner root of `f`: each root value, the
/// midpoints between consecutive roots, and points beyond both ends, each
/// combined with every requested coordinate layer.
pub fn probe_points(f: &LayeredPoly, layers: &[Layer]) -> Vec<LayeredScalar> {
    let full = f.full_form();
    let mut values: Vec<Rational> = match full.slopes() {
        Ok(runs) => runs.into_iter().map(|r| r.root).collect(),
        Err(_) => Vec::new(),
    };
    values.sort();
    values.dedup();
    let mut probes = Vec::new();
    let one = Rational::one();
    match (values.first(), values.last()) {
        (Some(lo), Some(hi)) => {
            probes.push(lo - &one - &one);
            probes.push(lo - &one);
            probes.push(hi + &one);
            probes.push(hi + &one + &one);
        }
        _ => probes.push(Rational::zero()),
    }
    for w in values.windows(2) {
        probes.push((&w[0] + &w[1]) / Rational::from_integer(2.into()));
    }
    probes.extend(values);
    probes.sort();
    probes.dedup();
    probes
        .into_iter()
        .flat_map(|v| {
            layers
                .iter()
                .map(move |l| LayeredScalar::new(v.clone(), l.clone()))
        })
        .collect()
}
