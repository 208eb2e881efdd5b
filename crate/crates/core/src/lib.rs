//! Exact computer algebra over layered tropical semirings.
//!
//! Elements are pairs `⟨a⟩^ℓ` written in logarithmic notation: the value `a`
//! is an exact rational, tropical multiplication adds values, and tropical
//! addition keeps the larger value. When two summands tie, their layers are
//! added in the sorting semiring, which is how multiplicities of roots are
//! recorded.
//!
//! The crate is organized bottom-up:
//!
//! * [`sort`]: the sorting semiring of layers and its supported instances.
//! * [`scalar`]: layered scalars, ghosts and surpassing relations.
//! * [`poly`]: sparse univariate polynomials, essential and full forms.
//! * [`factor`]: primary decomposition, separable factorization, `ψ_a`.
//! * [`resultant`]: layered permanents, Sylvester matrices and resultants.
//! * [`calculus`]: layered derivative, antiderivative and discriminant.
//! * [`layermap`]: multivariate polynomials, layering maps and corner loci.
//! * [`text`]: the `v:l` scalar grammar and polynomial text grammar.

pub mod calculus;
pub mod error;
pub mod factor;
pub mod layermap;
pub mod poly;
pub mod resultant;
pub mod scalar;
pub mod sort;
pub mod text;

pub use error::{Error, Result};
pub use factor::{PrimaryDecomposition, PrimaryFactor};
pub use layermap::{AxisRange, GridRow, MultiPoly};
pub use poly::{LayeredPoly, SlopeRun};
pub use resultant::{LayerMatrix, LayeredMatrix};
pub use scalar::LayeredScalar;
pub use sort::{Layer, SortKind};

/// Exact rationals used for values, layers and exponents.
pub type Rational = num_rational::BigRational;
