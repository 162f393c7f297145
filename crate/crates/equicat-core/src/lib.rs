//! Exact engines for bounding the equivariant Lusternik-Schnirelmann category
//! of finite group actions.
//!
//! Two complementary halves:
//!
//! * a discrete half — finite permutation groups acting simplicially on finite
//!   abstract simplicial complexes, with orbit-type stratification ([`strata`])
//!   giving certified lower bounds and verified categorical covers ([`cover`])
//!   giving certified upper bounds;
//! * an exact-rational PL half ([`weyl`]) — models of Weyl group actions on
//!   sections (torus with coordinate permutations, real projective space with
//!   even sign changes, circle with a reflection) whose covers are generated
//!   and re-verified in exact arithmetic.
//!
//! Everything is deterministic and allocation-only (`no_std` + `alloc`); all
//! I/O and serialization live in the companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod action;
pub mod complex;
pub mod cover;
pub mod perm;
pub mod strata;
pub mod weyl;

pub use action::GComplex;
pub use complex::Complex;
pub use perm::{Perm, PermGroup};
