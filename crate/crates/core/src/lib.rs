//! Annihilators of top local cohomology over squarefree monomial quotients.
//!
//! Everything here works with `R = S/J`, where `S = K[u_1, …, u_d]` and `J` is a
//! squarefree monomial ideal, and with monomial ideals `a` of `R` given by a
//! lift to `S`. On that class every quantity below is exactly computable:
//!
//! * [`cohomdim`]: cohomological dimension `cd(a, R)` per minimal prime of `J`,
//!   via Hochster's formula and Lyubeznik's `cd = pd` equality.
//! * [`annihilator`]: lower and upper bounds for `ann H^c_a(R)`, the `T(a, R)`
//!   submodule, witness search for exactness, contractions and symbolic powers.
//! * [`lynch`]: the parametric family of counterexamples to Lynch's conjecture.
//! * [`cech`]: a brute-force multigraded Čech complex used as an independent
//!   check of the values above.

pub mod annihilator;
pub mod cech;
pub mod cli;
pub mod cohomdim;
pub mod error;
pub mod linalg;
pub mod lynch;
pub mod monomial;
pub mod sr_complex;

pub use error::{Error, Result};
pub use linalg::FieldSpec;
pub use monomial::{Monomial, MonomialIdeal, VarSet};
pub use sr_complex::{QuotientIdeal, QuotientRing, SimplicialComplex};
