//! Layered permanents, Sylvester matrices and layered resultants.
//!
//! The permanent is evaluated by dynamic programming over subsets of
//! columns. Because layered multiplication distributes over layered
//! addition, this is exactly the sum over all permutations, ν-ties included.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::factor::{is_primary, primary_decomposition};
use crate::poly::LayeredPoly;
use crate::scalar::{add_opt, LayeredScalar};
use crate::sort::{Layer, SortKind};
use crate::Rational;

/// A rectangular matrix of layered scalars; `None` is the bottom `𝟘`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Option<LayeredScalar>>,
}

impl LayeredMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        LayeredMatrix {
            rows,
            cols,
            entries: vec![None; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Option<LayeredScalar>>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::ArityMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        Ok(LayeredMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&LayeredScalar> {
        self.entries[i * self.cols + j].as_ref()
    }

    pub fn set(&mut self, i: usize, j: usize, x: Option<LayeredScalar>) {
        self.entries[i * self.cols + j] = x;
    }

    /// The layer matrix, with `0` for empty entries.
    pub fn layers(&self) -> Result<LayerMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| match e.as_ref().map(|x| &x.layer) {
                None => Ok(Rational::zero()),
                Some(Layer::Finite(r)) => Ok(r.clone()),
                Some(Layer::Infinite) => Err(Error::PreconditionViolated(
                    "layer matrices need finite layers".to_string(),
                )),
            })
            .collect::<Result<_>>()?;
        Ok(LayerMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    fn require_square(&self) -> Result<()> {
        if self.rows == self.cols {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl fmt::Display for LayeredMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    self.get(i, j)
                        .map_or_else(|| "_".to_string(), |x| x.to_string())
                })
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// A rectangular matrix over `ℚ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Rational>,
}

impl LayerMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::ArityMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        Ok(LayerMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl fmt::Display for LayerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// The layered permanent; `None` when every permutation product meets `𝟘`.
pub fn layered_permanent(m: &LayeredMatrix, sort: SortKind) -> Result<Option<LayeredScalar>> {
    m.require_square()?;
    let n = m.rows;
    // dp[mask]: sum over assignments of the first |mask| rows to the columns in mask
    let mut dp: Vec<Option<LayeredScalar>> = vec![None; 1 << n];
    dp[0] = Some(LayeredScalar::one());
    for mask in 0usize..(1 << n) {
        let Some(acc) = dp[mask].clone() else {
            continue;
        };
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) != 0 {
                continue;
            }
            if let Some(x) = m.get(row, col) {
                let next = mask | (1 << col);
                dp[next] = Some(add_opt(dp[next].take(), &acc.mul(x, sort), sort));
            }
        }
    }
    Ok(dp[(1 << n) - 1].take())
}

/// The layered permanent by enumerating every permutation.
pub fn layered_permanent_naive(m: &LayeredMatrix, sort: SortKind) -> Result<Option<LayeredScalar>> {
    m.require_square()?;
    let mut perm: Vec<usize> = (0..m.rows).collect();
    let mut total = None;
    for_each_permutation(&mut perm, 0, &mut |p| {
        let product = p
            .iter()
            .enumerate()
            .try_fold(LayeredScalar::one(), |acc, (i, &j)| {
                m.get(i, j).map(|x| acc.mul(x, sort))
            });
        if let Some(t) = product {
            total = Some(add_opt(total.take(), &t, sort));
        }
    });
    Ok(total)
}

fn for_each_permutation(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        for_each_permutation(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// The classical permanent over `ℚ`.
pub fn layer_permanent(m: &LayerMatrix) -> Result<Rational> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut dp = vec![Rational::zero(); 1 << n];
    dp[0] = Rational::from_integer(1.into());
    for mask in 0usize..(1 << n) {
        if dp[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) == 0 && !m.get(row, col).is_zero() {
                let term = &dp[mask] * m.get(row, col);
                dp[mask | (1 << col)] += term;
            }
        }
    }
    Ok(dp[(1 << n) - 1].clone())
}

/// The Sylvester matrix of the full forms of `f` (degree `m`) and `g`
/// (degree `n`): `n` shifted rows of `α_0 … α_m`, then `m` shifted rows of
/// `β_0 … β_n`.
pub fn sylvester(f: &LayeredPoly, g: &LayeredPoly) -> Result<LayeredMatrix> {
    let (f, g) = (f.full_form(), g.full_form());
    let m = f
        .degree()
        .ok_or(Error::ZeroPolynomial("Sylvester matrix"))? as usize;
    let n = g
        .degree()
        .ok_or(Error::ZeroPolynomial("Sylvester matrix"))? as usize;
    if m == 0 || n == 0 {
        return Err(Error::DegreeZero);
    }
    let size = m + n;
    let mut out = LayeredMatrix::new(size, size);
    for r in 0..n {
        for (e, c) in f.terms() {
            out.set(r, r + e as usize, Some(c.clone()));
        }
    }
    for r in 0..m {
        for (e, c) in g.terms() {
            out.set(n + r, r + e as usize, Some(c.clone()));
        }
    }
    Ok(out)
}

/// The layered resultant `|ℜ(f, g)|`; `None` is `𝟘`.
pub fn resultant(
    f: &LayeredPoly,
    g: &LayeredPoly,
    sort: SortKind,
) -> Result<Option<LayeredScalar>> {
    let m = f.degree().ok_or(Error::ZeroPolynomial("resultant"))?;
    let n = g.degree().ok_or(Error::ZeroPolynomial("resultant"))?;
    if m == 0 {
        return Ok(f.coeff(0).map(|a| a.int_pow(n as u64, sort)));
    }
    if n == 0 {
        return Ok(g.coeff(0).map(|b| b.int_pow(m as u64, sort)));
    }
    layered_permanent(&sylvester(f, g)?, sort)
}

/// The layer Sylvester matrix of two polynomials that are primary for a
/// common root.
pub fn layer_sylvester(f: &LayeredPoly, g: &LayeredPoly) -> Result<LayerMatrix> {
    let a = is_primary(f).ok().flatten();
    let b = is_primary(g).ok().flatten();
    match (a, b) {
        (Some(a), Some(b)) if a == b => sylvester(f, g)?.layers(),
        _ => Err(Error::NotPrimaryPair),
    }
}

/// `f^{(u)} = Σ_{i ≥ u} α_i λ^{i−u}`.
pub fn reduction(f: &LayeredPoly, u: u32) -> Result<LayeredPoly> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial("reduction"))?;
    if u > deg {
        return Err(Error::OutOfRange { index: u, max: deg });
    }
    Ok(f.slice(u, deg).unshift(u))
}

/// The resultant assembled from primary decompositions: unit and `λ`-power
/// contributions times the resultants of every pair of primary factors.
pub fn blockwise_resultant(
    f: &LayeredPoly,
    g: &LayeredPoly,
    sort: SortKind,
) -> Result<Option<LayeredScalar>> {
    let df = primary_decomposition(f, sort)?;
    let dg = primary_decomposition(g, sort)?;
    let work = df.sort;
    let m = f.degree().unwrap_or(0) as u64;
    let n = g.degree().unwrap_or(0) as u64;
    if df.lambda_power > 0 && dg.lambda_power > 0 {
        return Ok(None);
    }
    let mut acc = df
        .unit
        .int_pow(n, work)
        .mul(&dg.unit.int_pow(m, work), work);
    // λ^u f' against g' contributes the constant term of g' per power, and dually
    let f_rest = f
        .unshift(df.lambda_power)
        .full_form()
        .divide_by(&df.unit, work)?;
    let g_rest = g
        .unshift(dg.lambda_power)
        .full_form()
        .divide_by(&dg.unit, work)?;
    if df.lambda_power > 0 {
        let b0 = g_rest.coeff(0).expect("λ does not divide g");
        acc = acc.mul(&b0.int_pow(df.lambda_power as u64, work), work);
    }
    if dg.lambda_power > 0 {
        let a0 = f_rest.coeff(0).expect("λ does not divide f");
        acc = acc.mul(&a0.int_pow(dg.lambda_power as u64, work), work);
    }
    for fa in &df.factors {
        for gb in &dg.factors {
            match resultant(&fa.poly, &gb.poly, work)? {
                Some(r) => acc = acc.mul(&r, work),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tests::{p, poly_strategy, s};
    use proptest::prelude::*;

    const NAT: SortKind = SortKind::Naturals;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn lm(rows: &[&[i64]]) -> LayerMatrix {
        LayerMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| q(*x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn permanent_examples() {
        let m = LayeredMatrix::from_rows(vec![
            vec![Some(s(1, 1)), Some(s(0, 1))],
            vec![Some(s(0, 1)), Some(s(1, 1))],
        ])
        .unwrap();
        // the anti-diagonal product has value 0, so the diagonal wins alone
        assert_eq!(layered_permanent(&m, NAT).unwrap(), Some(s(2, 1)));
        let tied = LayeredMatrix::from_rows(vec![
            vec![Some(s(1, 1)), Some(s(1, 1))],
            vec![Some(s(1, 1)), Some(s(1, 1))],
        ])
        .unwrap();
        assert_eq!(layered_permanent(&tied, NAT).unwrap(), Some(s(2, 2)));
        let id =
            LayeredMatrix::from_rows(vec![vec![Some(s(0, 1)), None], vec![None, Some(s(0, 1))]])
                .unwrap();
        assert_eq!(layered_permanent(&id, NAT).unwrap(), Some(s(0, 1)));
        let one = LayeredMatrix::from_rows(vec![vec![Some(s(7, 3))]]).unwrap();
        assert_eq!(layered_permanent(&one, NAT).unwrap(), Some(s(7, 3)));
        let rect = LayeredMatrix::new(2, 3);
        assert_eq!(
            layered_permanent(&rect, NAT),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
        assert_eq!(layer_permanent(&lm(&[&[1, 1], &[1, 1]])).unwrap(), q(2));
    }

    #[test]
    fn sylvester_layout() {
        let f = LayeredPoly::linear(s(3, 1));
        let g = LayeredPoly::linear(s(5, 2));
        let m = sylvester(&f, &g).unwrap();
        let expect = LayeredMatrix::from_rows(vec![
            vec![Some(s(3, 1)), Some(s(0, 1))],
            vec![Some(s(5, 2)), Some(s(0, 1))],
        ])
        .unwrap();
        assert_eq!(m, expect);

        let f2 = p(&[(2, s(0, 1)), (1, s(5, 1)), (0, s(7, 1))]);
        let g2 = p(&[(2, s(0, 1)), (1, s(4, 1)), (0, s(6, 1))]);
        let m = sylvester(&f2, &g2).unwrap();
        assert_eq!((m.rows, m.cols), (4, 4));
        assert_eq!(m.get(0, 3), None);
        assert_eq!(m.get(1, 0), None);
        assert_eq!(m.get(1, 1), Some(&s(7, 1)));
        assert_eq!(m.get(3, 3), Some(&s(0, 1)));
        assert_eq!(
            sylvester(&f2, &LayeredPoly::linear(s(1, 1))).unwrap().rows,
            3
        );
        assert_eq!(
            sylvester(&f2, &LayeredPoly::constant(s(1, 1))),
            Err(Error::DegreeZero)
        );
    }

    #[test]
    fn resultant_examples() {
        let f = p(&[(2, s(0, 1)), (1, s(5, 1)), (0, s(7, 1))]);
        let g = p(&[(2, s(0, 1)), (1, s(4, 1)), (0, s(6, 1))]);
        assert_eq!(resultant(&f, &g, NAT).unwrap(), Some(s(16, 2)));
        assert_eq!(
            resultant(&f, &LayeredPoly::lambda(), NAT).unwrap(),
            Some(s(7, 1))
        );
        let r = resultant(
            &LayeredPoly::linear(s(3, 2)),
            &LayeredPoly::linear(s(3, 5)),
            NAT,
        )
        .unwrap();
        assert_eq!(r, Some(s(3, 7)));
        assert_eq!(
            resultant(&LayeredPoly::constant(s(2, 3)), &f, NAT).unwrap(),
            Some(s(4, 9))
        );
        assert_eq!(
            resultant(&LayeredPoly::zero(), &f, NAT),
            Err(Error::ZeroPolynomial("resultant"))
        );
    }

    #[test]
    fn layer_matrices() {
        let f = LayeredPoly::linear(s(3, 4));
        let g = LayeredPoly::linear(s(3, 2));
        assert_eq!(layer_sylvester(&f, &g).unwrap(), lm(&[&[4, 1], &[2, 1]]));
        assert_eq!(
            layer_sylvester(&f, &LayeredPoly::linear(s(2, 1))),
            Err(Error::NotPrimaryPair)
        );
        // f of degree m against a linear g: one row of f, m rows of g
        let f3 = p(&[(3, s(0, 1)), (2, s(1, 2)), (1, s(2, 3)), (0, s(3, 5))]);
        let g1 = LayeredPoly::linear(s(1, 2));
        let per = layer_permanent(&layer_sylvester(&f3, &g1).unwrap()).unwrap();
        // k_0 + k_1 ℓ + k_2 ℓ² + ℓ³ at ℓ = 2
        assert_eq!(per, q(5 + 3 * 2 + 2 * 4 + 8));
    }

    #[test]
    fn counterexample_to_multiplicativity() {
        let (k0, k1, l, lh) = (1, 1, 1, 1);
        let a = 2;
        let f = p(&[(2, s(0, 1)), (1, s(a, k1)), (0, s(2 * a, k0))]);
        let g = LayeredPoly::linear(s(a, l));
        let h = LayeredPoly::linear(s(a, lh));
        let gh = g.mul(&h, NAT);
        let per_gh = layer_permanent(&layer_sylvester(&f, &gh).unwrap()).unwrap();
        let per_g = layer_permanent(&layer_sylvester(&f, &g).unwrap()).unwrap();
        let per_h = layer_permanent(&layer_sylvester(&f, &h).unwrap()).unwrap();
        let pp = (l * l + k1 * l + k0) * (lh * lh + k1 * lh + k0);
        assert_eq!(per_gh, q(pp + 4 * k0 * l * lh));
        assert_eq!(per_gh - per_g * per_h, q(4));
        assert_ne!(
            resultant(&f, &gh, NAT).unwrap(),
            Some(
                resultant(&f, &g, NAT)
                    .unwrap()
                    .unwrap()
                    .mul(&resultant(&f, &h, NAT).unwrap().unwrap(), NAT)
            )
        );
    }

    #[test]
    fn reductions() {
        let f = p(&[(2, s(0, 1)), (1, s(2, 1)), (0, s(3, 1))]);
        assert_eq!(reduction(&f, 1).unwrap(), LayeredPoly::linear(s(2, 1)));
        assert_eq!(reduction(&f, 0).unwrap(), f);
        assert_eq!(reduction(&f, 2).unwrap(), LayeredPoly::constant(s(0, 1)));
        assert_eq!(
            reduction(&f, 3),
            Err(Error::OutOfRange { index: 3, max: 2 })
        );
    }

    fn primary(a: i64, layers: &[i64]) -> LayeredPoly {
        let t = layers.len() as i64;
        let mut terms: Vec<_> = layers
            .iter()
            .enumerate()
            .map(|(i, l)| (i as u32, s((t - i as i64) * a, *l)))
            .collect();
        terms.push((t as u32, s(0, 1)));
        p(&terms)
    }

    fn matrix_strategy() -> impl Strategy<Value = LayeredMatrix> {
        (1usize..6).prop_flat_map(|n| {
            proptest::collection::vec(
                proptest::option::weighted(0.7, (-2i64..3, 1i64..4).prop_map(|(v, l)| s(v, l))),
                n * n,
            )
            .prop_map(move |e| LayeredMatrix {
                rows: n,
                cols: n,
                entries: e,
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn dp_matches_naive(m in matrix_strategy()) {
            prop_assert_eq!(layered_permanent(&m, NAT).unwrap(), layered_permanent_naive(&m, NAT).unwrap());
        }

        #[test]
        fn primary_pair_formula(a in -4i64..5, fl in proptest::collection::vec(1i64..4, 1..4), gl in proptest::collection::vec(1i64..4, 1..4)) {
            let (f, g) = (primary(a, &fl), primary(a, &gl));
            let (m, n) = (fl.len() as i64, gl.len() as i64);
            let per = layer_permanent(&layer_sylvester(&f, &g).unwrap()).unwrap();
            prop_assert_eq!(
                resultant(&f, &g, NAT).unwrap(),
                Some(LayeredScalar::new(q(m * n * a), Layer::Finite(per)))
            );
        }

        #[test]
        fn separated_primary_pairs(a in -4i64..5, gap in 1i64..4, fl in proptest::collection::vec(1i64..4, 1..4), gl in proptest::collection::vec(1i64..4, 1..4)) {
            let (f, g) = (primary(a, &fl), primary(a + gap, &gl));
            let m = fl.len() as u64;
            let b0 = g.coeff(0).unwrap().int_pow(m, NAT);
            prop_assert_eq!(resultant(&f, &g, NAT).unwrap(), Some(b0.clone()));
            // with the higher root on the left, the constant term of the left factor wins
            prop_assert_eq!(resultant(&g, &f, NAT).unwrap(), Some(b0));
        }

        #[test]
        fn lambda_factor_rule(f in poly_strategy(3, NAT), g in poly_strategy(3, NAT), t in 1u32..3) {
            prop_assume!(f.degree().unwrap() > 0 && g.degree().unwrap() > 0);
            let lhs = resultant(&f, &g.shift(t), NAT).unwrap();
            let rhs = match (f.full_form().coeff(0), resultant(&f, &g, NAT).unwrap()) {
                (Some(a0), Some(r)) => Some(a0.int_pow(t as u64, NAT).mul(&r, NAT)),
                _ => None,
            };
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn essential_and_full_inputs_agree(f in poly_strategy(4, NAT), g in poly_strategy(4, NAT)) {
            prop_assume!(f.degree().unwrap() > 0 && g.degree().unwrap() > 0);
            let r = resultant(&f, &g, NAT).unwrap();
            prop_assert_eq!(&r, &resultant(&f.essential_form(), &g.essential_form(), NAT).unwrap());
            prop_assert_eq!(&r, &resultant(&f.full_form(), &g.full_form(), NAT).unwrap());
        }

        #[test]
        fn resultant_is_symmetric(f in poly_strategy(3, NAT), g in poly_strategy(3, NAT)) {
            prop_assert_eq!(resultant(&f, &g, NAT).unwrap(), resultant(&g, &f, NAT).unwrap());
        }

        #[test]
        fn blockwise_product(f in poly_strategy(4, SortKind::PosRationals), g in poly_strategy(4, SortKind::PosRationals)) {
            let sort = SortKind::PosRationals;
            prop_assume!(f.degree().unwrap() > 0 && g.degree().unwrap() > 0);
            prop_assert_eq!(resultant(&f, &g, sort).unwrap(), blockwise_resultant(&f, &g, sort).unwrap());
        }
    }
}
