//! Process-wide size guards.
//!
//! The defaults can be replaced once at startup (the CLI does this from its
//! flags) and `WEYLWORKS_MAX_DIM` overrides the module dimension guard.

use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIM_ENV: &str = "WEYLWORKS_MAX_DIM";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest basis any module constructor will materialize.
    pub max_dim: usize,
    /// Largest |λ| for semistandard tableau enumeration.
    pub max_tableau_size: usize,
    /// Largest estimated number of echelon forms visited by a flag count.
    pub max_echelon_forms: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: 1_000_000,
            max_tableau_size: 12,
            max_echelon_forms: 100_000_000,
        }
    }
}

impl Limits {
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(dim) = std::env::var(MAX_DIM_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
        {
            limits.max_dim = dim;
        }
        limits
    }

    pub(crate) fn check_dim(&self, what: &'static str, dim: u128) -> Result<()> {
        if dim > self.max_dim as u128 {
            return Err(Error::Resource {
                what,
                estimate: dim,
                limit: self.max_dim as u128,
            });
        }
        Ok(())
    }
}

static CURRENT: RwLock<Option<Limits>> = RwLock::new(None);

/// The limits in force. Initialized from the environment on first use.
pub fn current() -> Limits {
    if let Some(l) = *CURRENT.read().unwrap() {
        return l;
    }
    let mut guard = CURRENT.write().unwrap();
    *guard.get_or_insert_with(Limits::from_env)
}

pub fn set(limits: Limits) {
    *CURRENT.write().unwrap() = Some(limits);
}
