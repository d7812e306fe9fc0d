//! Simulated two-tier memory backend for tableau updates.
//!
//! The tableau lives in "host" memory. A fixed-capacity "device" arena holds
//! either the whole tableau (in-core case) or one partition of consecutive
//! rows at a time (tiled case). Pivot updates run as 16×16 tile kernels on
//! the arena, and every element access and host/device transfer is counted
//! in [`MemoryCounters`].

mod arena;
mod counters;
mod kernel;

use std::ops::Range;

use thiserror::Error;

pub use arena::TiledEngine;
pub use counters::MemoryCounters;
pub use kernel::{tile_kernel, TileView};

pub const DEFAULT_TILE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("device budget of {budget} bytes cannot hold a data row and the pivot row ({needed} bytes)")]
    BudgetTooSmall { budget: u64, needed: u64 },
    #[error("tableau must have at least one row and one column")]
    EmptyTableau,
    #[error("tile dimensions must be positive")]
    EmptyTile,
}

/// Capacity of the simulated device memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoryBudget {
    /// `None` means unlimited.
    pub device_bytes: Option<u64>,
    pub element_bytes: u64,
}

impl MemoryBudget {
    pub const fn unlimited() -> Self {
        MemoryBudget {
            device_bytes: None,
            element_bytes: 8,
        }
    }

    pub const fn bytes(device_bytes: u64) -> Self {
        MemoryBudget {
            device_bytes: Some(device_bytes),
            element_bytes: 8,
        }
    }
}

impl Default for MemoryBudget {
    fn default() -> Self {
        Self::unlimited()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    /// Whole tableau resident on the device for the entire solve.
    InCore,
    /// Tableau split into row partitions streamed through the device.
    Tiled,
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Case::InCore => "InCore",
            Case::Tiled => "Tiled",
        })
    }
}

/// Update kernel flavour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum KernelMode {
    /// Pivot row/column segments staged in tile-local memory; zero products skipped.
    #[default]
    Cached,
    /// Every element reads its operands from device memory.
    Naive,
}

impl std::fmt::Display for KernelMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            KernelMode::Cached => "cached",
            KernelMode::Naive => "naive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilePlan {
    pub case: Case,
    /// Disjoint, contiguous row ranges covering every tableau row in order.
    pub partitions: Vec<Range<usize>>,
    pub resident_partition: usize,
    pub tile_rows: usize,
    pub tile_cols: usize,
    pub row_width: usize,
}

impl TilePlan {
    pub fn num_partitions(&self) -> usize {
        self.partitions.len()
    }

    pub fn partition_of(&self, row: usize) -> usize {
        self.partitions
            .iter()
            .position(|p| p.contains(&row))
            .expect("row outside plan")
    }

    pub fn largest_partition_rows(&self) -> usize {
        self.partitions.iter().map(|p| p.len()).max().unwrap_or(0)
    }

    pub fn with_tile(mut self, tile_rows: usize, tile_cols: usize) -> Result<Self, EngineError> {
        if tile_rows == 0 || tile_cols == 0 {
            return Err(EngineError::EmptyTile);
        }
        self.tile_rows = tile_rows;
        self.tile_cols = tile_cols;
        Ok(self)
    }
}

/// Decides between the in-core and tiled cases for a tableau of `rows`
/// rows of `row_width` elements.
///
/// In the tiled case each partition gets as many whole rows as fit in the
/// budget after reserving one row for the pivot-row buffer, and the last
/// partition starts out resident.
pub fn plan(rows: usize, row_width: usize, budget: MemoryBudget) -> Result<TilePlan, EngineError> {
    if rows == 0 || row_width == 0 {
        return Err(EngineError::EmptyTableau);
    }
    let row_bytes = row_width as u64 * budget.element_bytes;
    let total = rows as u64 * row_bytes;
    let base = TilePlan {
        case: Case::InCore,
        partitions: std::iter::once(0..rows).collect(),
        resident_partition: 0,
        tile_rows: DEFAULT_TILE,
        tile_cols: DEFAULT_TILE,
        row_width,
    };
    let device = match budget.device_bytes {
        None => return Ok(base),
        Some(d) if total <= d => return Ok(base),
        Some(d) => d,
    };
    let per_part = (device / row_bytes).saturating_sub(1);
    if per_part == 0 {
        return Err(EngineError::BudgetTooSmall {
            budget: device,
            needed: 2 * row_bytes,
        });
    }
    let per_part = per_part as usize;
    let partitions: Vec<Range<usize>> = (0..rows)
        .step_by(per_part)
        .map(|s| s..(s + per_part).min(rows))
        .collect();
    Ok(TilePlan {
        case: Case::Tiled,
        resident_partition: partitions.len() - 1,
        partitions,
        ..base
    })
}
