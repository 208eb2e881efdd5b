//! Layered derivative, antiderivative and discriminant.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::LayeredPoly;
use crate::resultant::resultant;
use crate::scalar::LayeredScalar;
use crate::sort::{Layer, SortKind};
use crate::Rational;

/// `⟨α⟩^ℓ λ^j ↦ ⟨α⟩^{jℓ} λ^{j−1}` applied to the representative as given.
/// Constant terms vanish.
pub fn formal_derivative(f: &LayeredPoly, sort: SortKind) -> LayeredPoly {
    f.terms()
        .filter(|(e, _)| *e > 0)
        .map(|(e, c)| {
            let layer = sort.product(&sort.embed(e as u64), &c.layer);
            (e - 1, LayeredScalar::new(c.value.clone(), layer))
        })
        .collect()
}

/// The layered derivative, taken on the essential form of `f`.
pub fn derivative(f: &LayeredPoly, sort: SortKind) -> LayeredPoly {
    formal_derivative(&f.essential_form(), sort)
}

/// `⟨α⟩^ℓ λ^m ↦ ⟨α⟩^{ℓ/(m+1)} λ^{m+1}`, without a constant of integration.
pub fn antiderivative(f: &LayeredPoly, sort: SortKind) -> Result<LayeredPoly> {
    f.terms()
        .map(|(e, c)| {
            let layer = sort.divide(&c.layer, &sort.embed(e as u64 + 1))?;
            Ok((e + 1, LayeredScalar::new(c.value.clone(), layer)))
        })
        .collect::<Result<Vec<_>>>()
        .map(LayeredPoly::from_terms)
}

/// `|ℜ(f, f′)|`; `None` is the bottom element.
pub fn discriminant(f: &LayeredPoly, sort: SortKind) -> Result<Option<LayeredScalar>> {
    match f.degree() {
        None => Err(Error::ZeroPolynomial("discriminant")),
        Some(0) => Err(Error::DegreeZero),
        Some(_) => resultant(f, &derivative(f, sort), sort),
    }
}

/// The layer of the discriminant of a monic separable polynomial of degree
/// `m` with tangible coefficients: `(2m − 1)!! = ∏_{k=2}^m (k/(k−1))^{m−k} (2k−1)/(k−1)`.
pub fn separable_discriminant_sort(m: u32) -> Rational {
    let m = m as i64;
    let r = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
    (2..=m).fold(r(1, 1), |acc, k| {
        acc * num_traits::pow(r(k, k - 1), (m - k) as usize) * r(2 * k - 1, k - 1)
    })
}

/// Whether the discriminant of `f` has the separable sort for its degree.
///
/// Requires PosRationals, degree at least 2, leading coefficient `⟨0⟩^1`
/// and tangible coefficients at every vertex of the coefficient hull.
pub fn is_separable(f: &LayeredPoly, sort: SortKind) -> Result<bool> {
    let bad = |why: &str| Error::PreconditionViolated(why.to_string());
    if sort != SortKind::PosRationals {
        return Err(bad("separability test needs the posq sort"));
    }
    let m = f.degree().ok_or_else(|| bad("polynomial is zero"))?;
    if m < 2 {
        return Err(bad("degree must be at least 2"));
    }
    if !f.leading().is_some_and(LayeredScalar::is_one) {
        return Err(bad(
            "polynomial must be monic with a tangible leading coefficient",
        ));
    }
    let vertices_tangible = f
        .hull_vertices()
        .into_iter()
        .all(|e| f.coeff(e).is_some_and(LayeredScalar::is_tangible));
    if !vertices_tangible {
        return Err(bad("essential coefficients must be tangible"));
    }
    let expected = Layer::Finite(separable_discriminant_sort(m));
    Ok(discriminant(f, sort)?.is_some_and(|d| d.layer == expected))
}
