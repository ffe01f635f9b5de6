//! Exact arithmetic in the finite segments of Dunwoody's inaccessible group
//! and mechanical checks of its centralizer certificates.
//!
//! The building blocks, bottom up:
//!
//! * [`perm`]: the permutation group H = ⟨(0 1), s⟩ and its truncations H_i;
//! * [`charmap`]: finitely supported maps ℤ → ℤ/2ℤ with the H-action;
//! * [`semidirect`]: the factors G_i = V_i ⋊ H_i and the edge groups K_i;
//! * [`amalgam`]: words, reduction and equality in G_i ∗_{K_i} G_{i+1};
//! * [`tree`]: the Bass-Serre tree of that splitting;
//! * [`certify`]: witnesses, commutation certificates and the report.

pub mod amalgam;
pub mod certify;
pub mod charmap;
pub mod cli;
pub mod config;
pub mod error;
pub mod par;
pub mod perm;
pub mod semidirect;
pub mod text;
pub mod tree;

pub use error::{Error, Result};
