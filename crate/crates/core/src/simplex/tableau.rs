use std::sync::Arc;

use rayon::ThreadPool;

use crate::engine::{plan, KernelMode, MemoryBudget, MemoryCounters, TiledEngine};

use super::SimplexError;

/// Tableau state stored in a [`TiledEngine`].
#[derive(Debug, Clone)]
pub struct Tableau {
    m: usize,
    engine: TiledEngine,
}

impl Tableau {
    /// Builds a tableau from its blocks and performs the initial upload.
    ///
    /// `inverse` is row-major `m × m`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        inverse: &[f64],
        rhs_bar: &[f64],
        multipliers: &[f64],
        objective: f64,
        budget: MemoryBudget,
        kernel: KernelMode,
        tile: (usize, usize),
        pool: Option<Arc<ThreadPool>>,
    ) -> Result<Self, SimplexError> {
        let m = rhs_bar.len();
        assert_eq!(inverse.len(), m * m);
        assert_eq!(multipliers.len(), m);
        let width = m + 2;
        let p = plan(m + 1, width, budget)?.with_tile(tile.0, tile.1)?;
        let mut data = Vec::with_capacity((m + 1) * width);
        data.extend_from_slice(multipliers);
        data.push(objective);
        data.push(0.0);
        for i in 0..m {
            data.extend_from_slice(&inverse[i * m..(i + 1) * m]);
            data.push(rhs_bar[i]);
            data.push(0.0);
        }
        let mut engine =
            TiledEngine::with_plan(p, m + 1, kernel, budget.element_bytes).with_pool(pool);
        engine.load(data);
        Ok(Tableau { m, engine })
    }

    /// Identity basis with `b̄ = b`.
    pub fn identity(
        b: &[f64],
        multipliers: &[f64],
        objective: f64,
        budget: MemoryBudget,
        kernel: KernelMode,
    ) -> Result<Self, SimplexError> {
        let m = b.len();
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        Self::from_parts(&inv, b, multipliers, objective, budget, kernel, (16, 16), None)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Column index of `b̄` within a tableau row.
    pub fn rhs_col(&self) -> usize {
        self.m
    }

    /// Column index of the entering direction within a tableau row.
    pub fn y_col(&self) -> usize {
        self.m + 1
    }

    pub fn inverse(&self, i: usize, j: usize) -> f64 {
        self.engine.get(i + 1, j)
    }

    pub fn inverse_row(&self, i: usize) -> &[f64] {
        &self.engine.row(i + 1)[..self.m]
    }

    pub fn rhs_bar(&self, i: usize) -> f64 {
        self.engine.get(i + 1, self.m)
    }

    pub fn rhs_bar_vec(&self) -> Vec<f64> {
        (0..self.m).map(|i| self.rhs_bar(i)).collect()
    }

    pub fn multipliers(&self) -> &[f64] {
        &self.engine.row(0)[..self.m]
    }

    pub fn objective(&self) -> f64 {
        self.engine.get(0, self.m)
    }

    pub fn entering_col(&self, i: usize) -> f64 {
        self.engine.get(i + 1, self.m + 1)
    }

    pub fn entering_col_vec(&self) -> Vec<f64> {
        (0..self.m).map(|i| self.entering_col(i)).collect()
    }

    pub fn entering_red_cost(&self) -> f64 {
        self.engine.get(0, self.m + 1)
    }

    /// Stores an entering direction and its reduced cost.
    pub fn set_entering_col(&mut self, y: &[f64], red_cost: f64) {
        assert_eq!(y.len(), self.m);
        let yc = self.y_col();
        self.engine.set(0, yc, red_cost);
        for (i, &v) in y.iter().enumerate() {
            self.engine.set(i + 1, yc, v);
        }
    }

    pub fn engine(&self) -> &TiledEngine {
        &self.engine
    }

    pub(crate) fn engine_mut(&mut self) -> &mut TiledEngine {
        &mut self.engine
    }

    pub fn counters(&self) -> &MemoryCounters {
        self.engine.counters()
    }

    /// Whole tableau, row-major, top row first.
    pub fn snapshot(&self) -> Vec<f64> {
        self.engine.snapshot()
    }

    /// Overwrites the top row's multipliers and objective.
    pub(crate) fn set_top(&mut self, multipliers: &[f64], objective: f64) {
        let m = self.m;
        let row = self.engine.row_mut(0);
        row[..m].copy_from_slice(multipliers);
        row[m] = objective;
    }

    /// Largest `|(B⁻¹B − I)_ij|` for the given basic columns.
    pub fn inverse_residual(&self, basic_columns: &[Vec<f64>]) -> f64 {
        let m = self.m;
        let mut worst = 0.0f64;
        for i in 0..m {
            let row = self.inverse_row(i);
            for (j, col) in basic_columns.iter().enumerate() {
                let v: f64 = row.iter().zip(col).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }
}
