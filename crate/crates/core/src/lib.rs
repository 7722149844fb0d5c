//! Computational commutative algebra over prime fields.
//!
//! The toolkit covers the pipeline needed to certify invariants of homogeneous
//! ideals in polynomial rings: Gröbner bases (for ideals and submodules of
//! free modules), the ideal calculus (sums, intersections, colons, saturation,
//! linkage, unmixed parts), Hilbert series with the derived invariants
//! (dimension, height, multiplicity), minimal free resolutions with a
//! Buchsbaum–Eisenbud exactness auditor, a classifier for small matrices of
//! linear forms, and a registry of ideal families with expected invariants
//! that the verification suite replays.

pub mod error;
pub mod field;
pub mod ring;
pub mod monomial;
pub mod poly;
pub mod groebner;
pub mod module_gb;
pub mod ideal;
pub mod hilbert;
pub mod linkage;
pub mod resolution;
pub mod script;

pub use error::{Error, Result};
pub use groebner::{groebner_basis, ideal_membership, GbBudget, ReducedGB};
pub use field::{Fp, Scalar};
pub use monomial::{order_compare, Monomial};
pub use poly::{Polynomial, Term};
pub use ring::{MonomialOrder, Ring, RingSpec, DEFAULT_CHARACTERISTIC};
