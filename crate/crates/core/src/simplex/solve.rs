use std::sync::Arc;
use std::time::Instant;

use crate::lp::{dot, ColumnKind, StandardFormLP};

use super::ops::{compute_direction, pivot_update, price, ratio_test, select_leaving, Pricing, RatioTest};
use super::{
    Basis, IterationEvent, Phase, SimplexError, SolveReport, SolverConfig, Status, TabuState,
    Tableau,
};

enum Outcome {
    Optimal,
    Unbounded,
    Limit,
}

struct Solver<'a, F> {
    work: StandardFormLP,
    cfg: &'a SolverConfig,
    tab: Tableau,
    basis: Basis,
    tabu: TabuState,
    iterations: usize,
    max_iter: usize,
    observer: F,
}

/// Solves `lp` with the two-phase method.
pub fn two_phase_solve(lp: &StandardFormLP, cfg: &SolverConfig) -> Result<SolveReport, SimplexError> {
    two_phase_solve_observed(lp, cfg, |_| {})
}

/// [`two_phase_solve`] with a callback invoked after every pivot.
///
/// Phase 1 starts from slack columns with a `+1` entry where available and
/// artificial columns elsewhere. Artificials left basic at zero level are
/// pivoted out on the non-artificial column with the largest `|α_rj|`; rows
/// where none exceeds `pivot_tol` are reported as redundant.
pub fn two_phase_solve_observed<F>(
    lp: &StandardFormLP,
    cfg: &SolverConfig,
    observer: F,
) -> Result<SolveReport, SimplexError>
where
    F: FnMut(&IterationEvent<'_>),
{
    cfg.validate()?;
    let start = Instant::now();
    let m = lp.m;

    let mut slack_for_row: Vec<Option<usize>> = vec![None; m];
    for j in 0..lp.n_total {
        if lp.col_kind[j] != ColumnKind::Slack {
            continue;
        }
        let nz: Vec<usize> = (0..m).filter(|&i| lp.coeff(i, j) != 0.0).collect();
        if let [i] = nz[..] {
            if lp.coeff(i, j) == 1.0 && slack_for_row[i].is_none() {
                slack_for_row[i] = Some(j);
            }
        }
    }
    let art_rows: Vec<usize> = (0..m).filter(|&i| slack_for_row[i].is_none()).collect();
    let work = with_artificials(lp, &art_rows);
    let mut basic = Vec::with_capacity(m);
    let mut next_art = lp.n_total;
    for slot in &slack_for_row {
        match slot {
            Some(j) => basic.push(*j),
            None => {
                basic.push(next_art);
                next_art += 1;
            }
        }
    }

    let phase1_costs: Vec<f64> = work
        .col_kind
        .iter()
        .map(|&k| if k == ColumnKind::Artificial { 1.0 } else { 0.0 })
        .collect();
    let phase2_costs = work.c.clone();
    let initial_costs = if art_rows.is_empty() { &phase2_costs } else { &phase1_costs };
    let w: Vec<f64> = basic.iter().map(|&j| initial_costs[j]).collect();
    let objective = dot(&w, &lp.b);

    let pool = if cfg.workers > 1 {
        let p = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| SimplexError::InvalidConfig(e.to_string()))?;
        Some(Arc::new(p))
    } else {
        None
    };
    let mut identity = vec![0.0; m * m];
    for i in 0..m {
        identity[i * m + i] = 1.0;
    }
    let mut tab = Tableau::from_parts(
        &identity,
        &lp.b,
        &w,
        objective,
        cfg.budget,
        cfg.kernel,
        (cfg.tile_rows, cfg.tile_cols),
        pool,
    )?;
    tab.engine_mut()
        .stage_matrix((m * work.n_total) as u64 * cfg.budget.element_bytes);

    let n_work = work.n_total;
    let mut s = Solver {
        basis: Basis::new(basic, n_work),
        tabu: TabuState::new(objective),
        work,
        cfg,
        tab,
        iterations: 0,
        max_iter: cfg.max_iter.unwrap_or(50 * (m + n_work)),
        observer,
    };

    let mut redundant = Vec::new();
    let mut status = None;
    if !art_rows.is_empty() {
        match s.run_phase(Phase::One, &phase1_costs)? {
            Outcome::Limit => status = Some(Status::IterationLimit),
            Outcome::Optimal | Outcome::Unbounded => {
                let infeasibility: f64 = (0..m)
                    .filter(|&i| s.is_artificial(s.basis.basic[i]))
                    .map(|i| s.tab.rhs_bar(i))
                    .sum();
                if infeasibility > cfg.feas_tol {
                    status = Some(Status::Infeasible);
                } else {
                    redundant = s.drive_out_artificials(&phase1_costs)?;
                }
            }
        }
    }
    let iterations_phase1 = s.iterations;
    let phase1_seconds = start.elapsed().as_secs_f64();

    let status = match status {
        Some(st) => st,
        None => {
            if !art_rows.is_empty() {
                s.recompute_top(&phase2_costs);
                s.tabu = TabuState::new(s.tab.objective());
            }
            match s.run_phase(Phase::Two, &phase2_costs)? {
                Outcome::Optimal => Status::Optimal,
                Outcome::Unbounded => Status::Unbounded,
                Outcome::Limit => Status::IterationLimit,
            }
        }
    };
    s.tab.engine_mut().finish();
    let total_seconds = start.elapsed().as_secs_f64();

    let mut x = vec![0.0; lp.n_total];
    for (i, &j) in s.basis.basic.iter().enumerate() {
        if j < lp.n_total {
            x[j] = s.tab.rhs_bar(i);
        }
    }
    let iterations = s.iterations;
    Ok(SolveReport {
        status,
        objective: dot(&lp.c, &x),
        x,
        basis: s.basis.basic.clone(),
        iterations_phase1,
        iterations_phase2: iterations - iterations_phase1,
        phase1_seconds,
        phase2_seconds: total_seconds - phase1_seconds,
        total_seconds,
        tpi_seconds: total_seconds / iterations.max(1) as f64,
        memory: *s.tab.counters(),
        case_used: s.tab.engine().plan().case,
        redundant_rows: redundant,
    })
}

/// `lp` with one identity column per listed row appended.
fn with_artificials(lp: &StandardFormLP, rows: &[usize]) -> StandardFormLP {
    if rows.is_empty() {
        return lp.clone();
    }
    let (m, n0) = (lp.m, lp.n_total);
    let n = n0 + rows.len();
    let mut a = vec![0.0; m * n];
    for i in 0..m {
        a[i * n..i * n + n0].copy_from_slice(lp.row(i));
    }
    for (t, &i) in rows.iter().enumerate() {
        a[i * n + n0 + t] = 1.0;
    }
    let mut c = lp.c.clone();
    c.resize(n, 0.0);
    let mut col_kind = lp.col_kind.clone();
    col_kind.resize(n, ColumnKind::Artificial);
    StandardFormLP {
        m,
        n_total: n,
        a,
        c,
        b: lp.b.clone(),
        col_kind,
    }
}

impl<F: FnMut(&IterationEvent<'_>)> Solver<'_, F> {
    fn is_artificial(&self, j: usize) -> bool {
        self.work.col_kind[j] == ColumnKind::Artificial
    }

    fn run_phase(&mut self, phase: Phase, costs: &[f64]) -> Result<Outcome, SimplexError> {
        loop {
            if self.iterations >= self.max_iter {
                return Ok(Outcome::Limit);
            }
            let (k, red_cost) = match price(&mut self.tab, &self.work, costs, &self.basis, self.cfg) {
                Pricing::Optimal => return Ok(Outcome::Optimal),
                Pricing::Enter { k, red_cost } => (k, red_cost),
            };
            compute_direction(&mut self.tab, &self.work.column(k), red_cost);
            let (rows, theta) = match ratio_test(&self.tab, self.cfg) {
                RatioTest::Unbounded => return Ok(Outcome::Unbounded),
                RatioTest::Candidates { rows, theta } => (rows, theta),
            };
            let r = select_leaving(
                &rows,
                k,
                &self.tab,
                &self.basis,
                &mut self.tabu,
                &self.work,
                costs,
                self.cfg,
            )?;
            self.pivot(phase, r, k, theta)?;
        }
    }

    fn pivot(&mut self, phase: Phase, r: usize, k: usize, theta: f64) -> Result<(), SimplexError> {
        pivot_update(&mut self.tab, r, self.cfg.pivot_tol)?;
        let leaving = self.basis.replace(r, k);
        self.iterations += 1;
        let objective = self.tab.objective();
        self.tabu.observe(objective, self.cfg.opt_tol);
        (self.observer)(&IterationEvent {
            phase,
            iteration: self.iterations,
            entering: k,
            leaving_row: r,
            leaving_var: leaving,
            theta,
            objective,
            tableau: &self.tab,
            basis: &self.basis,
            tabu: &self.tabu,
        });
        Ok(())
    }

    /// Pivots zero-level artificials out of the basis; returns the rows
    /// where that was impossible.
    fn drive_out_artificials(&mut self, costs: &[f64]) -> Result<Vec<usize>, SimplexError> {
        let (m, n) = (self.work.m, self.work.n_total);
        let mut redundant = Vec::new();
        for r in 0..m {
            if !self.is_artificial(self.basis.basic[r]) {
                continue;
            }
            // Row r of B⁻¹A, accumulated over rows of A in ascending order.
            let mut alpha = vec![0.0; n];
            for (l, &v) in self.tab.inverse_row(r).iter().enumerate() {
                if v != 0.0 {
                    for (s, &a) in alpha.iter_mut().zip(self.work.row(l)) {
                        *s += v * a;
                    }
                }
            }
            let mut best: Option<(usize, f64)> = None;
            for (j, &a) in alpha.iter().enumerate() {
                if self.basis.in_basis[j] || self.is_artificial(j) {
                    continue;
                }
                if a.abs() > self.cfg.pivot_tol && best.is_none_or(|(_, b)| a.abs() > b) {
                    best = Some((j, a.abs()));
                }
            }
            let Some((k, _)) = best else {
                redundant.push(r);
                continue;
            };
            let a_k = self.work.column(k);
            let red_cost = dot(self.tab.multipliers(), &a_k) - costs[k];
            compute_direction(&mut self.tab, &a_k, red_cost);
            self.pivot(Phase::One, r, k, 0.0)?;
        }
        Ok(redundant)
    }

    /// Sets `W = c_B B⁻¹` and the objective `c_B b̄` for new costs.
    fn recompute_top(&mut self, costs: &[f64]) {
        let m = self.work.m;
        let mut w = vec![0.0; m];
        let mut objective = 0.0;
        for i in 0..m {
            let cb = costs[self.basis.basic[i]];
            if cb == 0.0 {
                continue;
            }
            for (wl, &v) in w.iter_mut().zip(self.tab.inverse_row(i)) {
                *wl += cb * v;
            }
            objective += cb * self.tab.rhs_bar(i);
        }
        self.tab.set_top(&w, objective);
    }
}
