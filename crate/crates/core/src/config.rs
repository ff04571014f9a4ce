//! Run configuration and resource guards.

use crate::error::{Error, Result};

/// Environment variable that overrides every resource guard with a byte budget.
pub const GUARD_BYTES_ENV: &str = "OPG_GUARD_BYTES";

/// Caps on the exponential parts of normalisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Maximum number of term nodes produced by game-to-term unfolding.
    pub term_nodes: usize,
    /// Maximum number of states in a certification arena.
    pub arena_states: usize,
    /// Maximum number of (exit, priority) outcomes a certification arena may
    /// enumerate candidate clauses over.
    pub outcome_universe: usize,
    /// Maximum number of clauses in any intermediate normal form.
    pub clauses: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            term_nodes: 1_000_000,
            arena_states: 100_000,
            outcome_universe: 24,
            clauses: 200_000,
        }
    }
}

impl Guards {
    /// Scale the guards to a memory budget in bytes. The outcome universe is
    /// left alone: it bounds time, not memory.
    pub fn from_bytes(bytes: usize) -> Self {
        Guards {
            term_nodes: (bytes / 48).max(1),
            arena_states: (bytes / 64).max(1),
            outcome_universe: Guards::default().outcome_universe,
            clauses: (bytes / 256).max(1),
        }
    }

    /// Default guards, overridden by `OPG_GUARD_BYTES` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(GUARD_BYTES_ENV) {
            Ok(raw) => {
                let bytes = raw.trim().parse::<usize>().map_err(|_| {
                    Error::Precondition(format!("{GUARD_BYTES_ENV} must be a byte count, got {raw:?}"))
                })?;
                Ok(Guards::from_bytes(bytes))
            }
            Err(_) => Ok(Guards::default()),
        }
    }

    pub(crate) fn check_clauses(&self, n: usize) -> Result<()> {
        if n > self.clauses {
            return Err(Error::Resource(format!(
                "normal form with {n} clauses exceeds the clause guard ({})",
                self.clauses
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub max_priority: u32,
    pub guards: Guards,
    pub seed: u64,
    pub format: OutputFormat,
    pub trace_path: Option<std::path::PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_priority: 12,
            guards: Guards::default(),
            seed: 0,
            format: OutputFormat::Text,
            trace_path: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_priority < 2 {
            return Err(Error::Precondition(format!(
                "max priority must be at least 2, got {}",
                self.max_priority
            )));
        }
        Ok(())
    }
}
