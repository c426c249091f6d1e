//! Size limits for the exhaustive enumerators.
//!
//! Every enumerator refuses sizes above its cap instead of silently running
//! for hours. Defaults can be overridden from the environment:
//!
//! | variable                  | governs                                   | default |
//! |---------------------------|-------------------------------------------|---------|
//! | `ALTPERM_MAX_PERM_N`      | full permutation and derangement streams  | 12      |
//! | `ALTPERM_MAX_ALT_N`       | alternating backtracking stream           | 14      |
//! | `ALTPERM_MAX_TABLEAU_N`   | permutation tableau stream (semiperimeter)| 10      |

use std::env;

use thiserror::Error;

pub const ENV_MAX_PERM_N: &str = "ALTPERM_MAX_PERM_N";
pub const ENV_MAX_ALT_N: &str = "ALTPERM_MAX_ALT_N";
pub const ENV_MAX_TABLEAU_N: &str = "ALTPERM_MAX_TABLEAU_N";

/// Which enumerator refused the request.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamKind {
    Permutations,
    Derangements,
    Alternating,
    Tableaux,
}

impl StreamKind {
    /// The variable that overrides this enumerator's cap.
    pub fn env_var(self) -> &'static str {
        match self {
            StreamKind::Permutations | StreamKind::Derangements => ENV_MAX_PERM_N,
            StreamKind::Alternating => ENV_MAX_ALT_N,
            StreamKind::Tableaux => ENV_MAX_TABLEAU_N,
        }
    }
}

impl std::fmt::Display for StreamKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StreamKind::Permutations => "permutation",
            StreamKind::Derangements => "derangement",
            StreamKind::Alternating => "alternating permutation",
            StreamKind::Tableaux => "permutation tableau",
        })
    }
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error(
    "{kind} enumeration refused: n = {n} exceeds the configured cap of {cap} (set {} to raise it)",
    kind.env_var()
)]
pub struct CapExceeded {
    pub kind: StreamKind,
    pub n: usize,
    pub cap: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("environment variable {var} = {value:?} is not a non-negative integer")]
pub struct BadCapOverride {
    pub var: &'static str,
    pub value: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub permutations: usize,
    pub alternating: usize,
    pub tableaux: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            permutations: 12,
            alternating: 14,
            tableaux: 10,
        }
    }
}

impl Caps {
    /// Defaults, with any of the `ALTPERM_MAX_*` variables applied on top.
    pub fn from_env() -> Result<Self, BadCapOverride> {
        let mut caps = Caps::default();
        for (var, slot) in [
            (ENV_MAX_PERM_N, &mut caps.permutations),
            (ENV_MAX_ALT_N, &mut caps.alternating),
            (ENV_MAX_TABLEAU_N, &mut caps.tableaux),
        ] {
            if let Ok(value) = env::var(var) {
                *slot = value
                    .trim()
                    .parse()
                    .map_err(|_| BadCapOverride { var, value })?;
            }
        }
        Ok(caps)
    }

    pub(crate) fn check(&self, kind: StreamKind, n: usize) -> Result<(), CapExceeded> {
        let cap = match kind {
            StreamKind::Permutations | StreamKind::Derangements => self.permutations,
            StreamKind::Alternating => self.alternating,
            StreamKind::Tableaux => self.tableaux,
        };
        if n > cap {
            Err(CapExceeded { kind, n, cap })
        } else {
            Ok(())
        }
    }
}
