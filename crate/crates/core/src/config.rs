//! Enumeration caps and resource budgets.
//!
//! Every cap has a default; a `key = value` file (TOML syntax) may override
//! any subset of them.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    /// Largest `i` accepted by `enumerate_h_i`.
    pub enum_cap_h: u32,
    /// Largest `i` accepted by `enumerate_g`.
    pub enum_cap_g: u32,
    /// Largest `i` accepted by `enumerate_k`.
    pub enum_cap_k: u32,
    pub ball_max_level: u32,
    pub ball_max_radius: u32,
    /// Projected vertex count above which ball construction refuses.
    pub ball_max_vertices: u64,
    /// Largest factor group order for which a coset table is built.
    pub coset_table_max: u64,
    pub census_max_level: u32,
    pub census_max_depth: u32,
    pub landau_cap: u32,
    pub run_max_level: u32,
    /// Random elements of H_i drawn per level by `verify`.
    pub samples_per_level: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enum_cap_h: 3,
            enum_cap_g: 2,
            enum_cap_k: 3,
            ball_max_level: 3,
            ball_max_radius: 3,
            ball_max_vertices: 200_000,
            coset_table_max: 1_000_000,
            census_max_level: 2,
            census_max_depth: 4,
            landau_cap: 60,
            run_max_level: 12,
            samples_per_level: 64,
        }
    }
}

impl Limits {
    pub fn from_toml_str(src: &str) -> Result<Self> {
        toml::from_str(src).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&src)
    }
}
