//! K-theoretic obstructions to splitting the quotient maps
//! `A * B → A ⊗ B` and `A *_ℂ B → A ⊗ B` for unital C*-algebras with
//! finitely generated K-theory.
//!
//! The crate is layered bottom-up:
//!
//! * [`fgab`]: finitely generated abelian groups, Smith normal form,
//!   tensor/Tor, and integer congruence solving.
//! * [`kinv`]: invariants `L(A) = (K₀, K₁, [1])`, the Künneth and
//!   free-product formulas, and the induced maps `π_*`.
//! * [`obstruct`]: obstruction tests, the four-case classifier, and
//!   K-level section existence.
//! * [`catalog`]: builtin invariants and the algebra expression language.
//! * [`sweep`]: batch evaluation over many pairs, parallel when the
//!   `parallel` feature is enabled.

pub mod catalog;
pub mod error;
pub mod fgab;
pub mod kinv;
pub mod obstruct;
pub mod sweep;

pub use error::{Error, Result};
