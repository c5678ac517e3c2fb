//! Computational algebra around affine Weyl groups, degenerate double affine and
//! affine Hecke algebras, cyclic-quiver KLR algebras, nilpotent quiver orbits and
//! the SL2 Knizhnik–Zamolodchikov monodromy.

pub mod cyclotomic;
pub mod error;
pub mod hecke;
pub mod klr;
pub mod linalg;
pub mod lp;
pub mod monodromy;
pub mod poly;
pub mod quiver;
pub mod rational;
pub mod rootdata;
pub mod schur_comb;
pub mod spirals;

pub use error::{Error, Result};
pub use rational::Q;
