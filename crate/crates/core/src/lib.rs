//! Exact combinatorics of twisted conjugacy classes in symmetric groups and
//! the unipotent (and almost-unipotent) bilinear-form classes attached to
//! them, together with small finite-field models on which the combinatorial
//! claims can be verified by brute force.
//!
//! Everything here is integer- or finite-field-exact; there is no floating
//! point anywhere in the crate.
//!
//! The crate is organised bottom-up:
//!
//! * [`partitions`] — partitions, dual partitions, dominance, and decorated
//!   partitions (Jordan type plus an ε-marking on odd parts) with their
//!   closure order;
//! * [`weyl`] — the symmetric group with the order-reversing twist, twisted
//!   conjugacy classes, the distinguished minimal-length representatives
//!   `z_p`, and the invariant `mu` counting twist-orbits outside a minimal
//!   elliptic support;
//! * [`classmaps`] — the part-splitting map `phi_prime`, its section
//!   `psi_prime`, the elliptic char-2 map onto decorated partitions, the
//!   length = dimension identity, and two frozen exceptional-group tables;
//! * [`field`] / [`matrix`] — table-driven arithmetic in small fields
//!   `F_{p^m}` and exact row-echelon linear algebra over them;
//! * [`semilinear`] — the graded monoid of twisted-linear maps `V -> V` /
//!   `V -> V*` under the `*`-product, the standard binomial model of a
//!   unipotent bilinear form, Jordan types, and the ε invariant in
//!   characteristic 2;
//! * [`varieties`] — complete flags, relative position, the fixed-point
//!   sets cut out by a form and a twisted permutation, their line-sequence
//!   models, and point counts for the unitary Deligne–Lusztig varieties;
//! * [`oracle`] — exhaustive enumeration of form classes over a small
//!   field, the support map `Sigma`, and end-to-end theorem checks;
//! * [`verify`] — the acceptance checklist run by the CLI and the test
//!   suite.

pub mod bounds;
pub mod classmaps;
pub mod error;
pub mod field;
pub mod matrix;
pub mod oracle;
pub mod partitions;
pub mod semilinear;
pub mod varieties;
pub mod verify;
pub mod weyl;

pub use bounds::Bounds;
pub use error::{Error, Result};
pub use field::Field;
pub use matrix::{Mat, Subspace};
pub use partitions::{DecoratedPartition, Partition};
pub use semilinear::SemilinearElement;
pub use varieties::Flag;
pub use weyl::{Perm, TwistedClassLabel};
