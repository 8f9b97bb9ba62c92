//! Size caps for the exhaustive oracles.
//!
//! `STC_EXACT_LIMIT` overrides the cap on exact cut, bisection and expansion
//! searches; `STC_HB_LIMIT` overrides the cap on exact hereditary bisection.

use std::sync::OnceLock;

/// Subset searches run on 64-bit masks.
pub const HARD_CAP: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub exact: usize,
    pub hereditary: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exact: 20,
            hereditary: 12,
        }
    }
}

impl Limits {
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = read_var("STC_EXACT_LIMIT") {
            limits.exact = v;
        }
        if let Some(v) = read_var("STC_HB_LIMIT") {
            limits.hereditary = v;
        }
        limits
    }
}

fn read_var(name: &str) -> Option<usize> {
    std::env::var(name)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .map(|v| v.min(HARD_CAP))
}

/// Process-wide limits, read from the environment once.
pub fn limits() -> Limits {
    static LIMITS: OnceLock<Limits> = OnceLock::new();
    *LIMITS.get_or_init(Limits::from_env)
}
