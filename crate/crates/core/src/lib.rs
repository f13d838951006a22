//! Twisted group algebras over finite groups.
//!
//! A twist `t: G x G -> {-1, +1}` turns the real vector space with basis
//! `{i_p : p in G}` into an algebra via `i_p i_q = t(p, q) i_{pq}`. The
//! Cayley-Dickson algebras (reals, complex numbers, quaternions, octonions,
//! sedenions, ...) and the Euclidean Clifford algebras both arise this way
//! on `Z_2^N` under bitwise XOR.
//!
//! Modules:
//! - [`groups`]: XOR and cyclic groups on integer indices.
//! - [`twists`]: sign tables, generators, and law predicates.
//! - [`algebra`]: elements and the direct, matrix, and Fourier products.
//! - [`cayley_dickson`]: the recursive pair product used as an oracle.
//! - [`clifford`]: blade-level multiplication and notation.
//! - [`search`]: proper-twist enumeration and zero-divisor search.
//! - [`cli`]: the `tga` command surface and the norm-ratio scan.

pub mod algebra;
pub mod cayley_dickson;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod groups;
pub mod scalar;
pub mod search;
pub mod twists;

pub use algebra::{AlgebraElement, Context, ExactElement, FloatElement, FourierForm};
pub use error::{Error, Result};
pub use groups::GroupSpec;
pub use scalar::{Scalar, ScalarMode};
pub use twists::{Law, PropertyReport, TwistKind, TwistTable};
