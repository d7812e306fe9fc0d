//! Revised simplex on the explicit-inverse tableau.
//!
//! The tableau has `m + 1` rows of `m + 2` elements. Row 0 holds the simplex
//! multipliers `W = c_B B⁻¹`, the objective `c_B b̄` and the reduced cost of
//! the entering column; row `i + 1` holds row `i` of `B⁻¹`, `b̄_i` and the
//! entering direction `y_ik`. Pivots are applied to all rows at once through
//! the [`TiledEngine`](crate::engine::TiledEngine).

mod ops;
mod solve;
mod tableau;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::engine::{Case, EngineError, KernelMode, MemoryBudget, MemoryCounters, DEFAULT_TILE};

pub use ops::{
    compute_direction, direction, pivot_update, price, ratio_test, select_leaving, Pricing,
    RatioTest,
};
pub use solve::{two_phase_solve, two_phase_solve_observed};
pub use tableau::Tableau;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimplexError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("pivot element {value:e} in row {row} is below the pivot tolerance")]
    PivotTooSmall { row: usize, value: f64 },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AntiCycle {
    #[default]
    Tabu,
    /// Plain Dantzig pricing; ratio-test ties go to the lowest row.
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub opt_tol: f64,
    pub pivot_tol: f64,
    pub feas_tol: f64,
    /// Relative tolerance for ratio-test ties.
    pub ratio_tie_tol: f64,
    /// Total pivot limit over both phases; `None` means `50·(m + n_total)`.
    pub max_iter: Option<usize>,
    pub anticycle: AntiCycle,
    pub budget: MemoryBudget,
    pub kernel: KernelMode,
    pub workers: usize,
    pub tile_rows: usize,
    pub tile_cols: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            opt_tol: 1e-7,
            pivot_tol: 1e-7,
            feas_tol: 1e-7,
            ratio_tie_tol: 1e-9,
            max_iter: None,
            anticycle: AntiCycle::Tabu,
            budget: MemoryBudget::unlimited(),
            kernel: KernelMode::Cached,
            workers: 1,
            tile_rows: DEFAULT_TILE,
            tile_cols: DEFAULT_TILE,
        }
    }
}

impl SolverConfig {
    /// Tolerances must be finite and nonnegative. Zero is accepted so that
    /// exact-arithmetic behaviour (e.g. cycling) can be reproduced.
    pub fn validate(&self) -> Result<(), SimplexError> {
        let tols = [
            ("opt_tol", self.opt_tol),
            ("pivot_tol", self.pivot_tol),
            ("feas_tol", self.feas_tol),
            ("ratio_tie_tol", self.ratio_tie_tol),
        ];
        for (name, v) in tols {
            if !(v.is_finite() && v >= 0.0) {
                return Err(SimplexError::InvalidConfig(format!("{name} = {v}")));
            }
        }
        if self.workers == 0 {
            return Err(SimplexError::InvalidConfig("workers = 0".into()));
        }
        if self.tile_rows == 0 || self.tile_cols == 0 {
            return Err(SimplexError::InvalidConfig("empty tile".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Optimal,
    Unbounded,
    Infeasible,
    IterationLimit,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Optimal => "Optimal",
            Status::Unbounded => "Unbounded",
            Status::Infeasible => "Infeasible",
            Status::IterationLimit => "IterationLimit",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub status: Status,
    /// `cᵀx` of the standard-form point in `x`.
    pub objective: f64,
    /// Standard-form point (structural and slack columns, no artificials).
    pub x: Vec<f64>,
    /// Final basis as column indices; indices `≥ x.len()` are artificials
    /// left in redundant rows.
    pub basis: Vec<usize>,
    pub iterations_phase1: usize,
    pub iterations_phase2: usize,
    pub phase1_seconds: f64,
    pub phase2_seconds: f64,
    pub total_seconds: f64,
    pub tpi_seconds: f64,
    pub memory: MemoryCounters,
    pub case_used: Case,
    /// Rows whose artificial could not be pivoted out after phase 1.
    pub redundant_rows: Vec<usize>,
}

impl SolveReport {
    pub fn iterations(&self) -> usize {
        self.iterations_phase1 + self.iterations_phase2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    One,
    Two,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub basic: Vec<usize>,
    pub in_basis: Vec<bool>,
}

impl Basis {
    pub fn new(basic: Vec<usize>, num_cols: usize) -> Self {
        let mut in_basis = vec![false; num_cols];
        for &j in &basic {
            debug_assert!(!in_basis[j], "duplicate basic column {j}");
            in_basis[j] = true;
        }
        Basis { basic, in_basis }
    }

    /// Column `k` replaces the variable basic in row `r`; returns the leaving column.
    pub fn replace(&mut self, r: usize, k: usize) -> usize {
        let out = self.basic[r];
        self.in_basis[out] = false;
        self.in_basis[k] = true;
        self.basic[r] = k;
        out
    }
}

/// Leaving variables banned per entering column while the objective stalls.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TabuState {
    pub banned: BTreeMap<usize, BTreeSet<usize>>,
    pub last_objective: f64,
}

impl TabuState {
    pub fn new(objective: f64) -> Self {
        TabuState {
            banned: BTreeMap::new(),
            last_objective: objective,
        }
    }

    pub fn is_banned(&self, entering: usize, var: usize) -> bool {
        self.banned.get(&entering).is_some_and(|s| s.contains(&var))
    }

    pub fn ban(&mut self, entering: usize, var: usize) {
        self.banned.entry(entering).or_default().insert(var);
    }

    pub fn is_empty(&self) -> bool {
        self.banned.values().all(|s| s.is_empty())
    }

    /// Records the objective after a pivot and clears every ban when it
    /// dropped by more than `opt_tol`. Returns whether bans were cleared.
    pub fn observe(&mut self, objective: f64, opt_tol: f64) -> bool {
        let improved = self.last_objective - objective > opt_tol;
        if improved {
            self.banned.clear();
        }
        self.last_objective = objective;
        improved
    }
}

/// Passed to the observer of [`two_phase_solve_observed`] after each pivot.
#[derive(Debug)]
pub struct IterationEvent<'a> {
    pub phase: Phase,
    /// Pivots performed so far, both phases.
    pub iteration: usize,
    pub entering: usize,
    pub leaving_row: usize,
    pub leaving_var: usize,
    pub theta: f64,
    /// Objective of the current phase after the pivot.
    pub objective: f64,
    pub tableau: &'a Tableau,
    pub basis: &'a Basis,
    pub tabu: &'a TabuState,
}
