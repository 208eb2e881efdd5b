//! Deterministic inputs shared by the benchmarks.

use layered_core::resultant::LayeredMatrix;
use layered_core::{Layer, LayeredPoly, LayeredScalar, Rational, SortKind};

/// Small linear congruential generator so inputs do not depend on an RNG crate.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self, bound: i64) -> i64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((self.0 >> 33) % bound as u64) as i64
    }
}

/// A dense `n × n` matrix with values in `-5..5` and layers in `1..=3`.
pub fn matrix(n: usize, seed: u64) -> LayeredMatrix {
    let mut r = Lcg(seed);
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Some(LayeredScalar::int(r.next(10) - 5, r.next(3) + 1)))
                .collect()
        })
        .collect();
    LayeredMatrix::from_rows(rows).expect("square")
}

/// A monic product of `deg` linear factors with roots in `-10..10` and
/// layers in `1..=3`, multiplied out under PosRationals.
pub fn product_poly(deg: usize, seed: u64) -> LayeredPoly {
    let mut r = Lcg(seed);
    (0..deg).fold(LayeredPoly::constant(LayeredScalar::one()), |acc, _| {
        let a = LayeredScalar::new(
            Rational::from_integer((r.next(20) - 10).into()),
            Layer::int(r.next(3) + 1),
        );
        acc.mul(&LayeredPoly::linear(a), SortKind::PosRationals)
    })
}
