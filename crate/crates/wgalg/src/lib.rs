//! Weighted ℓ^p convolution algebras on discrete groups — free groups, ℤ
//! and ℤ_n — together with machine checks, at desk scale, of the
//! inequalities that make them Banach algebras: the length-weight bound on
//! free groups, the failure of the classical convolution condition there,
//! the p ≤ 2 obstruction, and the symmetric-algebra inequalities.
//!
//! The numeric core is generic over the scalar: `f64`/`Complex<f64>` for
//! sampling sweeps and `BigRational`/`Complex<BigRational>` wherever an
//! identity is checked exactly. Concrete aliases live at the crate root.

pub mod algebra;
pub mod groups;
pub mod io;
pub mod report;
pub mod scalar;
pub mod series;
pub mod suites;
pub mod symcheck;
pub mod theorem1;
pub mod weights;

pub use algebra::{PExponent, SparseFunction};
pub use groups::{CyclicGroup, DiscreteGroup, DynGroup, FreeGroup, GroupKind, IntGroup, Word};
pub use report::{VerificationReport, Verdict, Witness};
pub use scalar::{RealScalar, Scalar};
pub use weights::Weight;

/// Complex double-precision scalar.
pub type C64 = num_complex::Complex<f64>;
/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Exact complex-rational scalar.
pub type CRational = num_complex::Complex<Rational>;

/// Float-path complex function on a group `G`.
pub type SparseC64<G> = SparseFunction<G, C64>;
/// Float-path real function (the Theorem 1.1 sweeps run on these).
pub type SparseF64<G> = SparseFunction<G, f64>;
/// Exact-path complex function.
pub type SparseCRational<G> = SparseFunction<G, CRational>;
/// Exact-path nonnegative-real function.
pub type SparseRational<G> = SparseFunction<G, Rational>;
