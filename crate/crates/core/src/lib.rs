//! Exact finite computations behind the window/tilting argument for the
//! 12-dimensional GL₂ flop `[Hom(C⁶,T) ⊕ Sym³T∨ / GL(T)]`.
//!
//! Everything here is exact: integers, rationals, and Eisenstein integers.
//! The modules are layered roughly bottom-up:
//!
//! * [`weights`]: the GL₂ weight lattice and one-parameter subgroups.
//! * [`cubic`]: binary cubic forms, discriminant and root strata.
//! * [`characters`]: torus characters, plethysm and graded Hom series.
//! * [`gamma`]: the order-18 stabilizer of `t₁³+t₂³` and its character table.
//! * [`git`]: η-invariants, KN strata and semistability.
//! * [`windows`]: grade restriction rules and the window sets ∇₋, ∇₊.
//! * [`bott`]: Bott pushforwards on `P(T)` and Weyman complexes.
//! * [`closure`]: generation closure under exact sequence templates.
//! * [`koszul`]: graded Koszul homology and Tor-weight reports.
//! * [`potential`]: the superpotential and its critical locus.
//! * [`verify`]: the named check suite used by the CLI and the acceptance tests.

pub mod bott;
pub mod characters;
pub mod closure;
pub mod cubic;
mod error;
pub mod figures;
pub mod gamma;
pub mod git;
pub mod koszul;
pub mod linalg;
pub mod poly;
pub mod potential;
pub mod rational;
pub mod verify;
pub mod weights;
pub mod windows;

pub use error::{Error, Result};
pub use weights::{OnePs, Weight};
pub use characters::{IrrepDecomp, LaurentChar};
pub use cubic::{BinaryCubic, ProjectivePoint, Stratum};
pub use git::{GitProblem, PointV, Side};
