//! Bisets as groupoids, functors over them, and an exact verifier for the
//! decomposition of a tensor product of induced bimodules
//!
//! ```text
//! Ind_Y^{K×H} N ⊗_{RH} Ind_X^{H×G} M  ≅  ⊕_{t ∈ [p₂(Y)\H/p₁(X)]} Ind_{Y∗(t,1)X}^{K×G} (N ⊗_{k₂(Y)∩ᵗk₁(X)} (t,1)M)
//! ```
//!
//! over `Q` and prime fields, on small finite groups.
//!
//! Conventions used throughout:
//! * an `(H,G)`-bimodule is a left `H×G`-module via `h·m·g⁻¹ = (h,g)·m`
//!   (see [`rep::BimoduleRep`]);
//! * `hᵗ = t⁻¹ h t` and `ᵗA = t A t⁻¹`.

// Matrix code reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod biset;
pub mod case;
pub mod error;
pub mod functor;
pub mod group;
pub mod linalg;
pub mod product;
pub mod rep;
pub mod sweep;
pub mod theorem;

pub use error::{Error, Result};
