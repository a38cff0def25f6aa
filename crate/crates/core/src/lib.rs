//! Exact-arithmetic toolkit for verifying identities between simplicial
//! cohomology, group cohomology of finite transformation groups, flat
//! circle bundles and their central extensions, on finite fixtures.
//!
//! Everything is computed over ℤ, ℚ and ℚ/ℤ with arbitrary precision;
//! every claim is certified by explicit witnesses that can be re-checked
//! without re-running any solver.

pub mod bicomplex;
pub mod cert;
pub mod exact;
pub mod fixture_io;
pub mod flatbundle;
pub mod gk;
pub mod groupcoh;
pub mod matrix;
pub mod simplicial;

pub use exact::{CircleValue, Coeff, Int, Rat};
pub use matrix::{snf, snf_diagonal, solve_integer, solve_mod1, IntMatrix, SnfDecomposition};
