use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::{Outcome, OutcomeGrid};

/// Compact JSON form: only the P positions, lexicographically sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridExport {
    pub n_max: u64,
    pub p_positions: Vec<[u64; 2]>,
}

impl GridExport {
    pub fn from_grid(grid: &OutcomeGrid) -> Self {
        Self::truncated(grid, grid.n_max())
    }

    /// P positions with both coordinates at most `n_max`.
    pub fn truncated(grid: &OutcomeGrid, n_max: u64) -> Self {
        let n_max = n_max.min(grid.n_max());
        let p_positions = grid
            .p_positions()
            .into_iter()
            .filter(|p| p.x <= n_max && p.y <= n_max)
            .map(|p| [p.x, p.y])
            .collect();
        GridExport { n_max, p_positions }
    }
}

/// `x,y,outcome` rows for every cell, `x` major.
pub fn write_csv<W: Write>(grid: &OutcomeGrid, mut out: W) -> io::Result<()> {
    writeln!(out, "x,y,outcome")?;
    let n = grid.n_max();
    for x in 0..=n {
        for y in 0..=n {
            let o = if grid.is_p_unchecked(x as usize, y as usize) {
                Outcome::P
            } else {
                Outcome::N
            };
            writeln!(out, "{x},{y},{o}")?;
        }
    }
    out.flush()
}
