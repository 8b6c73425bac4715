//! Resource limits for operations whose cost can explode.

use crate::error::{Error, Result};

pub const DEFAULT_PATCH_VERTICES: u64 = 5_000_000;
pub const DEFAULT_CYCLES: u64 = 1_000_000;
pub const DEFAULT_PREFIX_EDGES: u64 = 10_000_000;
pub const DEFAULT_HULL_SUBSETS: u64 = 10_000;

/// Environment variable read by [`Budgets::from_env`].
pub const BUDGET_ENV: &str = "VELO_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Maximum number of vertices in an unrolled patch.
    pub patch_vertices: u64,
    /// Maximum number of simple cycles enumerated.
    pub cycles: u64,
    /// Maximum length of a scheduled trajectory prefix.
    pub prefix_edges: u64,
    /// Maximum number of candidate point subsets examined for facets.
    pub hull_subsets: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            patch_vertices: DEFAULT_PATCH_VERTICES,
            cycles: DEFAULT_CYCLES,
            prefix_edges: DEFAULT_PREFIX_EDGES,
            hull_subsets: DEFAULT_HULL_SUBSETS,
        }
    }
}

impl Budgets {
    /// Parses a budget override.
    ///
    /// Accepts either a bare integer, applied to every budget, or a comma
    /// separated list of `key=value` pairs with keys `patch`, `cycles`,
    /// `prefix` and `hull`. Unmentioned budgets keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut b = Budgets::default();
        let text = text.trim();
        if text.is_empty() {
            return Ok(b);
        }
        if let Ok(all) = text.parse::<u64>() {
            return Ok(Budgets {
                patch_vertices: all,
                cycles: all,
                prefix_edges: all,
                hull_subsets: all,
            });
        }
        for item in text.split(',') {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("bad budget entry `{item}`")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad budget value `{value}`")))?;
            match key.trim() {
                "patch" => b.patch_vertices = value,
                "cycles" => b.cycles = value,
                "prefix" => b.prefix_edges = value,
                "hull" => b.hull_subsets = value,
                other => return Err(Error::Invalid(format!("unknown budget key `{other}`"))),
            }
        }
        Ok(b)
    }

    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }
}
