//! Size limits for the brute-force enumerators.
//!
//! `TREELAB_CUTOFF`, when set to an integer, caps every limit below. It can
//! only lower a limit, never raise one.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const PLANE_EDGES: usize = 12;
/// Largest `n + x + q` for explicit Γ enumeration.
pub const GAMMA_SIZE: usize = 6;
pub const BICOLORED_EDGES: usize = 10;
pub const MARKED_EDGES: usize = 10;
pub const MATCH_SETS: usize = 5;
pub const PAIR_SIZE: usize = 7;

fn env_cap() -> Option<usize> {
    static CAP: OnceLock<Option<usize>> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("TREELAB_CUTOFF")
            .ok()
            .and_then(|v| v.trim().parse().ok())
    })
}

pub fn effective(default: usize) -> usize {
    env_cap().map_or(default, |cap| cap.min(default))
}

pub fn check(what: &'static str, requested: usize, default: usize) -> Result<()> {
    let cutoff = effective(default);
    if requested > cutoff {
        Err(Error::AboveCutoff {
            what,
            requested,
            cutoff,
        })
    } else {
        Ok(())
    }
}
