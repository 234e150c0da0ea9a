//! Exact computations in affine type A Schubert calculus.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`]: the affine symmetric group in window notation, lengths,
//!   marked strong covers, Grassmannian factorizations.
//! * [`nilcoxeter`]: the affine nilCoxeter algebra, the elements `h_i` and
//!   noncommutative k-Schur functions.
//! * [`symfunc`]: symmetric functions with exact rational coefficients,
//!   k-Schur, affine Schur and affine Stanley functions.
//! * [`fk_action`]: Bruhat operators of the affine Fomin–Kirillov algebra
//!   (single letters, Dunkl elements, Murnaghan–Nakayama elements) and the
//!   divided differences on words.
//! * [`strong_order`]: BSS operators on the labelled strong order,
//!   k-strong-ribbons and ribbon tableaux.
//! * [`schubert_ring`]: the ring `R_n`, divided difference operators, affine
//!   Schubert polynomials, structure constants and cap operators.
//!
//! All arithmetic is exact over `Q` ([`Q`] is a big rational).

pub mod error;
pub mod fk_action;
pub mod linalg;
mod memo;
pub mod nilcoxeter;
pub mod partition;
pub mod perm;
pub mod rational;
pub mod schubert_ring;
pub mod strong_order;
pub mod symfunc;

pub use error::{Error, Result};
pub use nilcoxeter::NilCoxElement;
pub use partition::Partition;
pub use perm::{AffinePermutation, MarkedCover, TranspositionIndex};
pub use rational::Q;
pub use schubert_ring::{RnElement, SchubertRing};
pub use symfunc::{Basis, SymFunc};
