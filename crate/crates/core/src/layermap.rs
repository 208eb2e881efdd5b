//! Multivariate layered polynomials, the layering map, corner supports and
//! components, and rasterization of corner loci over finite grids.

use std::collections::BTreeMap;
use std::io;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::LayeredScalar;
use crate::sort::{Layer, SortKind};
use crate::Rational;

/// Exponent vector of a monomial.
pub type Exponent = Vec<Rational>;

/// A sparse polynomial in `arity` variables with rational exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Exponent, LayeredScalar>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial; a repeated exponent keeps the last coefficient.
    pub fn from_terms(
        arity: usize,
        terms: impl IntoIterator<Item = (Exponent, LayeredScalar)>,
    ) -> Result<Self> {
        let mut out = MultiPoly::zero(arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: e.len(),
                });
            }
            out.terms.insert(e, c);
        }
        Ok(out)
    }

    /// Integer exponents, for convenience.
    pub fn from_int_terms(arity: usize, terms: &[(&[i64], LayeredScalar)]) -> Result<Self> {
        MultiPoly::from_terms(
            arity,
            terms.iter().map(|(e, c)| {
                (
                    e.iter()
                        .map(|x| Rational::from_integer((*x).into()))
                        .collect(),
                    c.clone(),
                )
            }),
        )
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &LayeredScalar)> + '_ {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self, sort: SortKind) -> Result<Self> {
        self.same_arity(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            terms
                .entry(e.clone())
                .and_modify(|x| *x = x.add(c, sort))
                .or_insert_with(|| c.clone());
        }
        Ok(MultiPoly {
            arity: self.arity,
            terms,
        })
    }

    pub fn mul(&self, other: &Self, sort: SortKind) -> Result<Self> {
        self.same_arity(other)?;
        let mut terms: BTreeMap<Exponent, LayeredScalar> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let e: Exponent = i.iter().zip(j).map(|(x, y)| x + y).collect();
                let t = a.mul(b, sort);
                terms
                    .entry(e)
                    .and_modify(|x| *x = x.add(&t, sort))
                    .or_insert(t);
            }
        }
        Ok(MultiPoly {
            arity: self.arity,
            terms,
        })
    }

    fn same_arity(&self, other: &Self) -> Result<()> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            })
        }
    }

    fn check_point(&self, p: &[LayeredScalar]) -> Result<()> {
        if p.len() == self.arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                expected: self.arity,
                got: p.len(),
            })
        }
    }

    /// Every monomial evaluated at `p`, keyed by exponent.
    pub fn monomial_values(
        &self,
        p: &[LayeredScalar],
        sort: SortKind,
    ) -> Result<Vec<(&Exponent, LayeredScalar)>> {
        self.check_point(p)?;
        self.terms
            .iter()
            .map(|(e, c)| {
                let v = e.iter().zip(p).try_fold(c.clone(), |acc, (k, x)| {
                    if k.is_zero() {
                        Ok(acc)
                    } else {
                        Ok::<_, Error>(acc.mul(&x.pow(k, sort)?, sort))
                    }
                })?;
                Ok((e, v))
            })
            .collect()
    }
}

/// `F(p)`.
pub fn mp_eval(f: &MultiPoly, p: &[LayeredScalar], sort: SortKind) -> Result<LayeredScalar> {
    f.monomial_values(p, sort)?
        .into_iter()
        .map(|(_, v)| v)
        .reduce(|a, b| a.add(&b, sort))
        .ok_or(Error::ZeroPolynomial("value"))
}

/// The layering map `ϑ_F(p) = s(F(p))`.
pub fn theta(f: &MultiPoly, p: &[LayeredScalar], sort: SortKind) -> Result<Layer> {
    Ok(mp_eval(f, p, sort)?.layer)
}

/// Exponents of the monomials of positive layer that attain `F(p)` in value.
pub fn corner_support(f: &MultiPoly, p: &[LayeredScalar], sort: SortKind) -> Result<Vec<Exponent>> {
    let values = f.monomial_values(p, sort)?;
    let top = values
        .iter()
        .map(|(_, v)| &v.value)
        .max()
        .ok_or(Error::ZeroPolynomial("corner support"))?
        .clone();
    Ok(values
        .into_iter()
        .filter(|(_, v)| v.value == top && layer_positive(&v.layer))
        .map(|(e, _)| e.clone())
        .collect())
}

fn layer_positive(l: &Layer) -> bool {
    match l {
        Layer::Finite(r) => r.is_positive(),
        Layer::Infinite => true,
    }
}

pub fn is_corner_root(f: &MultiPoly, p: &[LayeredScalar], sort: SortKind) -> Result<bool> {
    Ok(corner_support(f, p, sort)?.len() >= 2)
}

/// Whether `F(p)` is an `ℓ`-ghost.
pub fn is_ell_root(f: &MultiPoly, p: &[LayeredScalar], l: &Layer, sort: SortKind) -> Result<bool> {
    Ok(mp_eval(f, p, sort)?.is_ell_ghost(l, sort))
}

/// The exponent of the unique monomial equal to `F(p)` in value and layer.
pub fn component_index(
    f: &MultiPoly,
    p: &[LayeredScalar],
    sort: SortKind,
) -> Result<Option<Exponent>> {
    let values = f.monomial_values(p, sort)?;
    let total = values
        .iter()
        .map(|(_, v)| v.clone())
        .reduce(|a, b| a.add(&b, sort))
        .ok_or(Error::ZeroPolynomial("component"))?;
    let mut hits = values.into_iter().filter(|(_, v)| *v == total);
    Ok(match (hits.next(), hits.next()) {
        (Some((e, _)), None) => Some(e.clone()),
        _ => None,
    })
}

/// `ϑ_I(p)` for a finite generator list: the least layer among the generators.
pub fn ideal_theta(fs: &[MultiPoly], p: &[LayeredScalar], sort: SortKind) -> Result<Option<Layer>> {
    fs.iter()
        .map(|f| theta(f, p, sort))
        .try_fold(None::<Layer>, |acc, l| {
            let l = l?;
            Ok(Some(match acc {
                Some(a) if a <= l => a,
                _ => l,
            }))
        })
}

/// The lattice `start, start + step, …` up to and including `end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisRange {
    pub start: Rational,
    pub end: Rational,
    pub step: Rational,
}

impl AxisRange {
    pub fn new(start: Rational, end: Rational, step: Rational) -> Result<Self> {
        if !step.is_positive() {
            return Err(Error::PreconditionViolated(format!(
                "grid step must be positive, got {step}"
            )));
        }
        Ok(AxisRange { start, end, step })
    }

    pub fn points(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut x = self.start.clone();
        while x <= self.end {
            out.push(x.clone());
            x += &self.step;
        }
        out
    }
}

/// One grid sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRow {
    pub point: Vec<Rational>,
    pub value: LayeredScalar,
    pub csupp: usize,
    pub component: Option<Exponent>,
}

/// Lattice points of the region in lexicographic order, first axis slowest.
pub fn grid_points(region: &[AxisRange]) -> Vec<Vec<Rational>> {
    region.iter().fold(vec![Vec::new()], |acc, axis| {
        let pts = axis.points();
        acc.into_iter()
            .flat_map(|prefix| {
                pts.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect()
    })
}

fn layered_point(point: &[Rational], layers: &[Layer]) -> Vec<LayeredScalar> {
    point
        .iter()
        .zip(layers)
        .map(|(v, l)| LayeredScalar::new(v.clone(), l.clone()))
        .collect()
}

fn check_region(arity: usize, region: &[AxisRange], layers: &[Layer]) -> Result<()> {
    for got in [region.len(), layers.len()] {
        if got != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                got,
            });
        }
    }
    Ok(())
}

/// Samples `F` at every lattice point of the region, with coordinate `i`
/// placed in layer `layers[i]`.
pub fn grid_scan(
    f: &MultiPoly,
    region: &[AxisRange],
    layers: &[Layer],
    sort: SortKind,
) -> Result<Vec<GridRow>> {
    check_region(f.arity, region, layers)?;
    if region.iter().any(|a| a.start > a.end) {
        return Ok(Vec::new());
    }
    grid_points(region)
        .into_iter()
        .map(|point| {
            let p = layered_point(&point, layers);
            Ok(GridRow {
                value: mp_eval(f, &p, sort)?,
                csupp: corner_support(f, &p, sort)?.len(),
                component: component_index(f, &p, sort)?,
                point,
            })
        })
        .collect()
}

/// Lattice points where every polynomial in `fs` has a corner root.
pub fn corner_locus_on_grid(
    fs: &[MultiPoly],
    region: &[AxisRange],
    layers: &[Layer],
    sort: SortKind,
) -> Result<Vec<Vec<Rational>>> {
    for f in fs {
        check_region(f.arity, region, layers)?;
    }
    if region.iter().any(|a| a.start > a.end) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for point in grid_points(region) {
        let p = layered_point(&point, layers);
        let mut all = true;
        for f in fs {
            if !is_corner_root(f, &p, sort)? {
                all = false;
                break;
            }
        }
        if all {
            out.push(point);
        }
    }
    Ok(out)
}

/// Writes rows as CSV with header `x1,…,xn,value,layer,csupp,component`.
/// The component is its exponent vector joined by `;`, empty at corners.
pub fn write_csv<W: io::Write>(rows: &[GridRow], arity: usize, w: W) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header: Vec<String> = (1..=arity).map(|i| format!("x{i}")).collect();
    header.extend(["value", "layer", "csupp", "component"].map(String::from));
    out.write_record(&header)?;
    for row in rows {
        let mut rec: Vec<String> = row.point.iter().map(|x| x.to_string()).collect();
        rec.push(row.value.value.to_string());
        rec.push(row.value.layer.to_string());
        rec.push(row.csupp.to_string());
        rec.push(row.component.as_ref().map_or_else(String::new, |e| {
            e.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(";")
        }));
        out.write_record(&rec)?;
    }
    out.flush()
}
