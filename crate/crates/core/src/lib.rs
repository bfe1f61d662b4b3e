//! Exact characteristic-class calculus for families Seiberg-Witten invariants.
//!
//! The crate is organised bottom-up:
//!
//! * [`gring`]: graded-commutative rings, normal forms, truncated series.
//! * [`charclass`]: Chern, Segre, Todd and Â classes, equivariant classes and
//!   projective pushforwards.
//! * [`steenrod`]: mod-2 binomials, the Steenrod square formula on SW classes
//!   and the relations it forces.
//! * [`wallcross`]: cohomological wall crossing and the sphere-bundle
//!   obstruction algebra.
//! * [`kdiv`]: K-theoretic invariants and the divisibility ledger.
//!
//! Sweeps run on rayon when the `parallel` feature is on (the default); see
//! [`exec`].

pub mod binom;
pub mod charclass;
pub mod exec;
pub mod gring;
pub mod kdiv;
pub mod steenrod;
pub mod wallcross;

pub use gring::{CoeffRing, Element, Ring, RingError, RingPresentation};
