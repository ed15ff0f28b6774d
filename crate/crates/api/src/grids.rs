use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex};

use bwythoff::solver::{solve_grid_with, GridExport};
use bwythoff::{parse_beta_spec, Error, OutcomeGrid, RuleSet, SolverConfig};
use lru::LruCache;

use crate::error::ApiResult;

pub const DEFAULT_GRID_CAPACITY: u64 = 2_000;
pub const DEFAULT_CACHED_GRIDS: usize = 8;

const MIN_SIDE: u64 = 64;

/// Solved grids keyed by `(β, n_max)`. Grid sizes are rounded up to a
/// power of two so that nearby requests share one solve.
pub struct GridCache {
    capacity: u64,
    entries: Mutex<LruCache<(String, u64), Arc<OutcomeGrid>>>,
    populate: Mutex<()>,
}

impl GridCache {
    pub fn new(capacity: u64, slots: usize) -> Self {
        let slots = NonZeroUsize::new(slots.max(1)).expect("nonzero");
        GridCache {
            capacity,
            entries: Mutex::new(LruCache::new(slots)),
            populate: Mutex::new(()),
        }
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn check_capacity(&self, n: u64) -> ApiResult<()> {
        if n > self.capacity {
            return Err(Error::CapacityExceeded {
                requested: n,
                limit: self.capacity,
            }
            .into());
        }
        Ok(())
    }

    fn bucket(&self, n: u64) -> u64 {
        n.max(MIN_SIDE)
            .next_power_of_two()
            .min(self.capacity)
            .max(n)
    }

    /// A grid for `rules` covering `[0, n]²`.
    pub fn grid(&self, rules: &RuleSet, n: u64) -> ApiResult<Arc<OutcomeGrid>> {
        self.check_capacity(n)?;
        let key = (rules.to_string(), self.bucket(n));
        if let Some(grid) = self.entries.lock().unwrap().get(&key) {
            return Ok(grid.clone());
        }
        let _writer = self.populate.lock().unwrap();
        if let Some(grid) = self.entries.lock().unwrap().get(&key) {
            return Ok(grid.clone());
        }
        let config = SolverConfig {
            capacity: self.capacity,
        };
        let grid = Arc::new(solve_grid_with(rules, key.1, &config)?);
        self.entries.lock().unwrap().put(key, grid.clone());
        Ok(grid)
    }

    /// Compact P-position export for `spec` on `[0, n]²`.
    pub fn slice(&self, spec: &str, n: u64) -> ApiResult<GridExport> {
        let rules = RuleSet::variant(parse_beta_spec(spec)?)?;
        let grid = self.grid(&rules, n)?;
        Ok(GridExport::truncated(&grid, n))
    }

    pub fn cached(&self) -> usize {
        self.entries.lock().unwrap().len()
    }
}

impl Default for GridCache {
    fn default() -> Self {
        GridCache::new(DEFAULT_GRID_CAPACITY, DEFAULT_CACHED_GRIDS)
    }
}
