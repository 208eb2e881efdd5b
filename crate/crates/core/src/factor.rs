//! Primary polynomials and the primary decomposition of univariate
//! polynomials, separable factorization, and the transfer `ψ_a` of an
//! `a`-primary polynomial to a classical polynomial over `ℚ`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::LayeredPoly;
use crate::scalar::LayeredScalar;
use crate::sort::{Layer, SortKind};
use crate::Rational;

/// A monic `a`-primary factor: every coefficient `α_j` of `poly` has value
/// `(degree − j)·root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryFactor {
    pub root: Rational,
    pub degree: u32,
    pub poly: LayeredPoly,
}

/// `f = unit · λ^lambda_power · ∏ factors`, factors in strictly decreasing
/// root order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryDecomposition {
    pub unit: LayeredScalar,
    pub lambda_power: u32,
    pub factors: Vec<PrimaryFactor>,
    /// Set when a Naturals input needed non-integer layers.
    pub promoted_sort: bool,
    /// The sort the factors live in.
    pub sort: SortKind,
}

impl PrimaryDecomposition {
    /// Multiplies everything back together.
    pub fn product(&self) -> LayeredPoly {
        let mut acc = LayeredPoly::monomial(self.lambda_power, self.unit.clone());
        for f in &self.factors {
            acc = acc.mul(&f.poly, self.sort);
        }
        acc
    }
}

/// Dense polynomial over `ℚ`, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassicalPoly {
    pub coeffs: Vec<Rational>,
}

impl ClassicalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ClassicalPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        ClassicalPoly::new(
            coeffs
                .iter()
                .map(|c| Rational::from_integer((*c).into()))
                .collect(),
        )
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return ClassicalPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ClassicalPoly::new(out)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Synthetic division by `λ − r`: returns quotient and remainder.
    pub fn divide_linear(&self, r: &Rational) -> (ClassicalPoly, Rational) {
        let mut quotient = Vec::with_capacity(self.coeffs.len());
        let mut carry = Rational::zero();
        for c in self.coeffs.iter().rev() {
            carry = carry * r + c;
            quotient.push(carry.clone());
        }
        let remainder = quotient.pop().unwrap_or_default();
        quotient.reverse();
        (ClassicalPoly::new(quotient), remainder)
    }
}

impl fmt::Display for ClassicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => f.write_str("x")?,
                1 => write!(f, "{c}*x")?,
                _ if c.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The root value `a` when the monic `f` is `a`-primary.
pub fn is_primary(f: &LayeredPoly) -> Result<Option<Rational>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.lowest_exponent() != Some(0) || f.degree() == Some(0) {
        return Ok(None);
    }
    let runs = f.full_form().slopes()?;
    Ok(match runs.as_slice() {
        [only] => Some(only.root.clone()),
        _ => None,
    })
}

fn require_primary(f: &LayeredPoly) -> Result<Rational> {
    match is_primary(f) {
        Ok(Some(a)) => Ok(a),
        _ => Err(Error::NotPrimary),
    }
}

/// Splits `f` into a unit, a power of `λ` and primary factors with strictly
/// decreasing roots. Naturals inputs are promoted to PosRationals.
pub fn primary_decomposition(f: &LayeredPoly, sort: SortKind) -> Result<PrimaryDecomposition> {
    let u = f
        .lowest_exponent()
        .ok_or(Error::ZeroPolynomial("primary decomposition"))?;
    let work = match sort {
        SortKind::Naturals => SortKind::PosRationals,
        other => other,
    };
    let full = f.unshift(u).full_form();
    let unit = full.leading().cloned().expect("nonzero");
    let mut rest = full.divide_by(&unit, work)?;
    let mut factors = Vec::new();
    while rest.degree().unwrap_or(0) > 0 {
        let run = rest.slopes()?.remove(0);
        let top = rest.coeff(run.hi).cloned().expect("full form is dense");
        let poly = rest.slice(0, run.hi).divide_by(&top, work)?;
        let deg = rest.degree().unwrap_or(0);
        factors.push(PrimaryFactor {
            root: run.root,
            degree: run.hi,
            poly,
        });
        rest = rest.slice(run.hi, deg).unshift(run.hi);
    }
    factors.reverse();
    let promoted_sort = sort == SortKind::Naturals
        && std::iter::once(&unit)
            .chain(factors.iter().flat_map(|p| p.poly.terms().map(|(_, c)| c)))
            .any(|c| !sort.is_valid(&c.layer));
    let decomposition = PrimaryDecomposition {
        unit,
        lambda_power: u,
        factors,
        promoted_sort,
        sort: work,
    };
    if decomposition.product().full_form() != f.full_form() {
        return Err(Error::ReconstructionMismatch);
    }
    Ok(decomposition)
}

/// Linear factors `λ + ⟨β_i⟩^{k_i}` of a monic separable `f` in decreasing
/// root order, with `f = α_t · ∏ (λ + ⟨β_i⟩^{k_i})`.
pub fn separable_factor(f: &LayeredPoly, sort: SortKind) -> Result<Vec<LayeredPoly>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let deg = f.degree().unwrap_or(0);
    if f.lowest_exponent() != Some(0) || f.len() as u32 != deg + 1 {
        return Err(Error::NotSeparable);
    }
    if f.essential_form() != *f || f.full_form() != *f {
        return Err(Error::NotSeparable);
    }
    let runs = f.slopes()?;
    if runs.iter().any(|r| r.len() != 1) {
        return Err(Error::NotSeparable);
    }
    runs.iter()
        .rev()
        .map(|r| {
            let hi = f.coeff(r.hi).expect("dense");
            let lo = f.coeff(r.lo).expect("dense");
            let k = sort.divide(&lo.layer, &hi.layer)?;
            Ok(LayeredPoly::linear(LayeredScalar::new(r.root.clone(), k)))
        })
        .collect()
}

/// `ψ_a(f) = Σ ℓ_i λ^i` for an `a`-primary `f`, read off its full form.
pub fn psi_a(f: &LayeredPoly) -> Result<ClassicalPoly> {
    require_primary(f)?;
    let full = f.full_form();
    let deg = full.degree().unwrap_or(0);
    let coeffs = (0..=deg)
        .map(|i| match full.coeff(i).map(|c| &c.layer) {
            None => Ok(Rational::zero()),
            Some(Layer::Finite(r)) => Ok(r.clone()),
            Some(Layer::Infinite) => Err(Error::PreconditionViolated(
                "ψ_a needs finite layers".to_string(),
            )),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassicalPoly::new(coeffs))
}

/// Multiplicity of `−ℓ` as a root of `ψ_a(f)`, i.e. the largest `m` with
/// `(λ + ⟨a⟩^ℓ)^m` dividing `f`.
pub fn linear_multiplicity(f: &LayeredPoly, l: &Layer) -> Result<u32> {
    let mut psi = psi_a(f)?;
    let r = match l {
        Layer::Finite(r) => -r,
        Layer::Infinite => {
            return Err(Error::PreconditionViolated(
                "root layer must be finite".to_string(),
            ))
        }
    };
    let mut m = 0;
    while psi.degree().unwrap_or(0) > 0 {
        let (q, rem) = psi.divide_linear(&r);
        if !rem.is_zero() {
            break;
        }
        psi = q;
        m += 1;
    }
    Ok(m)
}

/// Layer of `f(b)` for an `a`-primary `f` of degree `t` at `b` with
/// `s(b) = k`: `ℓ_t k^t` above the root, `Σ ℓ_i k^i` at it, `ℓ_0` below.
pub fn primary_eval_sort(f: &PrimaryFactor, b: &LayeredScalar, sort: SortKind) -> Layer {
    let full = f.poly.full_form();
    let k = &b.layer;
    let term = |i: u32| -> Layer {
        full.coeff(i)
            .map(|c| sort.product(&c.layer, &sort.int_pow(k, i as u64)))
            .unwrap_or_else(Layer::zero)
    };
    match b.value.cmp(&f.root) {
        Ordering::Greater => term(f.degree),
        Ordering::Less => term(0),
        Ordering::Equal => (0..=f.degree).fold(Layer::zero(), |acc, i| sort.sum(&acc, &term(i))),
    }
}

/// Layer of `f(b)` computed from a primary decomposition of `f`.
pub fn eval_sort(d: &PrimaryDecomposition, b: &LayeredScalar) -> Layer {
    let sort = d.sort;
    let base = sort.product(
        &d.unit.layer,
        &sort.int_pow(&b.layer, d.lambda_power as u64),
    );
    d.factors.iter().fold(base, |acc, f| {
        sort.product(&acc, &primary_eval_sort(f, b, sort))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::probe_points;
    use crate::poly::tests::{p, poly_strategy, s, sq};
    use proptest::prelude::*;

    const POSQ: SortKind = SortKind::PosRationals;
    const NAT: SortKind = SortKind::Naturals;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn primary_detection() {
        assert_eq!(
            is_primary(&p(&[(2, s(0, 1)), (1, s(2, 1)), (0, s(4, 1))])).unwrap(),
            Some(q(2))
        );
        assert_eq!(
            is_primary(&p(&[(2, s(0, 1)), (1, s(2, 1)), (0, s(3, 1))])).unwrap(),
            None
        );
        assert_eq!(
            is_primary(&LayeredPoly::linear(s(7, 3))).unwrap(),
            Some(q(7))
        );
        assert_eq!(
            is_primary(&p(&[(1, s(1, 1)), (0, s(2, 1))])),
            Err(Error::NotMonic)
        );
    }

    #[test]
    fn decomposes_separable_quadratic() {
        let f = p(&[(2, s(0, 1)), (1, s(2, 1)), (0, s(3, 1))]);
        let d = primary_decomposition(&f, POSQ).unwrap();
        assert_eq!(d.unit, s(0, 1));
        assert_eq!(d.lambda_power, 0);
        let roots: Vec<_> = d.factors.iter().map(|f| f.root.clone()).collect();
        assert_eq!(roots, vec![q(2), q(1)]);
        assert_eq!(d.factors[0].poly, LayeredPoly::linear(s(2, 1)));
        assert_eq!(d.factors[1].poly, LayeredPoly::linear(s(1, 1)));
        assert!(!d.promoted_sort);
    }

    #[test]
    fn half_layer_factor() {
        // λ² + ⟨b⟩^2 λ + ⟨a+b⟩^1 with a = 1 < b = 3
        let f = p(&[(2, s(0, 1)), (1, s(3, 2)), (0, s(4, 1))]);
        let d = primary_decomposition(&f, POSQ).unwrap();
        assert_eq!(d.factors[0].poly, LayeredPoly::linear(s(3, 2)));
        assert_eq!(
            d.factors[1].poly,
            LayeredPoly::linear(sq(1, 1, Layer::ratio(1, 2)))
        );

        let promoted = primary_decomposition(&f, NAT).unwrap();
        assert!(promoted.promoted_sort);
        assert_eq!(promoted.sort, POSQ);
        assert_eq!(
            primary_decomposition(&f, SortKind::Truncated(3)),
            Err(Error::LayerNotDivisible {
                numerator: Box::new(Layer::int(1)),
                denominator: Box::new(Layer::int(2)),
                sort: SortKind::Truncated(3)
            })
        );
    }

    #[test]
    fn primary_input_is_its_own_factor() {
        let f = p(&[(2, s(0, 1)), (1, s(2, 1)), (0, s(4, 1))]);
        let d = primary_decomposition(&f, NAT).unwrap();
        assert_eq!(d.unit, s(0, 1));
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].poly, f);
        assert_eq!(d.factors[0].degree, 2);
    }

    #[test]
    fn lambda_power_and_unit() {
        // ⟨3⟩^2 λ (λ + 1)
        let f = p(&[(2, s(3, 2)), (1, s(4, 2))]);
        let d = primary_decomposition(&f, POSQ).unwrap();
        assert_eq!(d.lambda_power, 1);
        assert_eq!(d.unit, s(3, 2));
        assert_eq!(d.factors[0].poly, LayeredPoly::linear(s(1, 1)));
    }

    #[test]
    fn separable_factorization() {
        let f = p(&[(2, s(0, 1)), (1, s(2, 1)), (0, s(3, 1))]);
        assert_eq!(
            separable_factor(&f, NAT).unwrap(),
            vec![LayeredPoly::linear(s(2, 1)), LayeredPoly::linear(s(1, 1))]
        );
        let g = p(&[(2, s(0, 1)), (1, s(2, 3)), (0, s(3, 6))]);
        assert_eq!(
            separable_factor(&g, POSQ).unwrap(),
            vec![LayeredPoly::linear(s(2, 3)), LayeredPoly::linear(s(1, 2))]
        );
        let sq2 = LayeredPoly::linear(s(2, 1)).mul(&LayeredPoly::linear(s(2, 1)), NAT);
        assert_eq!(separable_factor(&sq2, NAT), Err(Error::NotSeparable));
    }

    #[test]
    fn psi_reads_layers() {
        let f = p(&[(2, s(0, 1)), (1, s(1, 3)), (0, s(2, 5))]);
        assert_eq!(psi_a(&f).unwrap(), ClassicalPoly::from_ints(&[5, 3, 1]));
        assert_eq!(
            psi_a(&LayeredPoly::linear(s(4, 7))).unwrap(),
            ClassicalPoly::from_ints(&[7, 1])
        );
        let gap = p(&[(2, s(0, 1)), (0, s(2, 5))]);
        assert_eq!(psi_a(&gap).unwrap(), ClassicalPoly::from_ints(&[5, 0, 1]));
        let not_primary = p(&[(2, s(0, 1)), (1, s(2, 1)), (0, s(3, 1))]);
        assert_eq!(psi_a(&not_primary), Err(Error::NotPrimary));
    }

    #[test]
    fn multiplicities() {
        let f = p(&[(2, s(0, 1)), (1, s(1, 2)), (0, s(2, 1))]);
        assert_eq!(linear_multiplicity(&f, &Layer::one()).unwrap(), 2);
        let g = p(&[(2, s(0, 1)), (1, s(1, 3)), (0, s(2, 5))]);
        assert_eq!(linear_multiplicity(&g, &Layer::one()).unwrap(), 0);
        assert_eq!(
            linear_multiplicity(&LayeredPoly::linear(s(0, 4)), &Layer::int(4)).unwrap(),
            1
        );
    }

    #[test]
    fn evaluation_sorts() {
        let f = p(&[(2, s(0, 1)), (1, s(2, 1)), (0, s(4, 1))]);
        let d = primary_decomposition(&f, NAT).unwrap();
        assert_eq!(eval_sort(&d, &s(2, 1)), Layer::int(3));
        assert_eq!(eval_sort(&d, &s(9, 1)), Layer::int(1));

        let sq2 = LayeredPoly::linear(s(2, 1)).mul(&LayeredPoly::linear(s(2, 1)), NAT);
        let d = primary_decomposition(&sq2, NAT).unwrap();
        assert_eq!(eval_sort(&d, &s(2, 1)), Layer::int(4));
    }

    fn bar(f: &LayeredPoly) -> LayeredPoly {
        let t = f.degree().unwrap();
        f.terms().map(|(e, c)| (t - e, c.clone())).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn reconstruction_and_eval_sort(f in poly_strategy(6, POSQ)) {
            let d = primary_decomposition(&f, POSQ).unwrap();
            let full = f.full_form();
            prop_assert_eq!(d.product().full_form(), full.clone());
            for w in d.factors.windows(2) {
                prop_assert!(w[0].root > w[1].root);
            }
            for pf in &d.factors {
                prop_assert_eq!(is_primary(&pf.poly).unwrap(), Some(pf.root.clone()));
            }
            let layers = [Layer::one(), Layer::int(2), Layer::ratio(1, 2)];
            for x in probe_points(&f, &layers) {
                prop_assert_eq!(eval_sort(&d, &x), f.eval(&x, POSQ).unwrap().layer);
            }
        }

        #[test]
        fn root_data_ignores_inessential_monomials(f in poly_strategy(6, POSQ), extra in 0u32..7, drop in 1i64..4) {
            let full = f.full_form();
            let (lo, hi) = (full.lowest_exponent().unwrap(), full.degree().unwrap());
            prop_assume!(lo < extra && extra < hi);
            let below = full.coeff(extra).unwrap();
            let perturbed = f.add(&LayeredPoly::monomial(extra, LayeredScalar::new(&below.value - q(drop), Layer::int(3))), POSQ);
            let key = |d: &PrimaryDecomposition| d.factors.iter().map(|p| (p.root.clone(), p.degree)).collect::<Vec<_>>();
            prop_assert_eq!(
                key(&primary_decomposition(&f, POSQ).unwrap()),
                key(&primary_decomposition(&perturbed, POSQ).unwrap())
            );
        }

        #[test]
        fn top_first_order_agrees(f in poly_strategy(6, POSQ)) {
            let d = primary_decomposition(&f, POSQ).unwrap();
            let g = f.unshift(d.lambda_power);
            let rev = primary_decomposition(&bar(&g), POSQ).unwrap();
            let forward: Vec<_> = d.factors.iter().map(|p| (p.root.clone(), p.degree)).collect();
            let mut backward: Vec<_> = rev.factors.iter().map(|p| (-p.root.clone(), p.degree)).collect();
            backward.reverse();
            prop_assert_eq!(forward, backward);
        }

        #[test]
        fn psi_is_multiplicative(a in -5i64..5, fl in proptest::collection::vec(1i64..5, 1..4), gl in proptest::collection::vec(1i64..5, 1..4)) {
            let primary = |ls: &[i64]| -> LayeredPoly {
                let t = ls.len() as i64;
                let mut terms: Vec<_> = ls.iter().enumerate().map(|(i, l)| (i as u32, s((t - i as i64) * a, *l))).collect();
                terms.push((t as u32, s(0, 1)));
                p(&terms)
            };
            let (f, g) = (primary(&fl), primary(&gl));
            let fg = f.mul(&g, NAT);
            prop_assert_eq!(psi_a(&fg).unwrap(), psi_a(&f).unwrap().mul(&psi_a(&g).unwrap()));
        }

        #[test]
        fn separable_iff_linear_distinct(f in poly_strategy(5, POSQ)) {
            let d = primary_decomposition(&f, POSQ).unwrap();
            let g = f.unshift(d.lambda_power).full_form().divide_by(&d.unit, POSQ).unwrap();
            let linear = d.factors.iter().all(|p| p.degree == 1);
            prop_assert_eq!(separable_factor(&g.essential_form(), POSQ).is_ok() && g.essential_form() == g, linear);
        }
    }
}
