//! Coderivation calculus on the tensor coalgebra of a ℤ₂-graded vector space.
//!
//! A graded associative multiplication on `V` is the same thing as an odd
//! degree-2 codifferential `d` on the tensor coalgebra of `W = ΠV`, and the
//! Hochschild coboundary becomes `D(φ) = [d, φ]`. This crate implements that
//! calculus over exact rationals:
//!
//! - [`graded`]: graded bases, multi-indices, Koszul signs;
//! - [`linalg`]: sparse rational matrices with rank, kernel, and solve;
//! - [`coder`]: basis cochains, insertion composition, the Gerstenhaber
//!   bracket, the coboundary `D`, and the `λ^I`/`θ`/`Ch` operators;
//! - [`cohomology`]: coboundary matrices, cohomology dimensions with the
//!   even/odd split, and representative cocycles;
//! - [`moduli`]: the moduli space of 1|1-dimensional structures: solving
//!   `[d,d] = 0`, classification under even automorphisms into `d1..d6`,
//!   multiplication tables, and structural predicates;
//! - [`deform`]: infinitesimal deformations, obstruction brackets, jump
//!   deformations, and the deformation diagram;
//! - [`selfcheck`]: runnable consistency suites shared by tests and the CLI.

pub mod coder;
pub mod cohomology;
pub mod deform;
mod error;
pub mod graded;
pub mod linalg;
pub mod moduli;
pub mod selfcheck;

pub use error::Error;
