use rayon::prelude::*;

use crate::lp::{ColumnKind, StandardFormLP};

use super::{AntiCycle, Basis, SimplexError, SolverConfig, TabuState, Tableau};

/// Columns per parallel pricing chunk.
const PRICE_CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Pricing {
    Optimal,
    Enter { k: usize, red_cost: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum RatioTest {
    Unbounded,
    /// Rows attaining the minimum ratio, ascending.
    Candidates { rows: Vec<usize>, theta: f64 },
}

/// Reduced costs `z_j − c_j = W·a_j − c_j` for columns `lo..hi`, accumulated
/// over rows in ascending order.
fn reduced_costs_chunk(w: &[f64], lp: &StandardFormLP, costs: &[f64], lo: usize, hi: usize) -> Vec<f64> {
    let n = lp.n_total;
    let mut acc = vec![0.0; hi - lo];
    for (i, &wi) in w.iter().enumerate() {
        if wi == 0.0 {
            continue;
        }
        let row = &lp.a[i * n + lo..i * n + hi];
        for (s, &a) in acc.iter_mut().zip(row) {
            *s += wi * a;
        }
    }
    for (s, &c) in acc.iter_mut().zip(&costs[lo..hi]) {
        *s -= c;
    }
    acc
}

/// Dantzig pricing over non-basic, non-artificial columns.
///
/// Returns the column with the largest reduced cost (lowest index on ties),
/// or [`Pricing::Optimal`] when that maximum is at most `opt_tol`.
pub fn price(
    tab: &mut Tableau,
    lp: &StandardFormLP,
    costs: &[f64],
    basis: &Basis,
    cfg: &SolverConfig,
) -> Pricing {
    let n = lp.n_total;
    let bytes = (lp.m * n) as u64 * cfg.budget.element_bytes;
    tab.engine_mut().pricing_pass(bytes);
    let w = tab.multipliers().to_vec();
    let d: Vec<f64> = match tab.engine().pool() {
        Some(pool) => pool.install(|| {
            (0..n.div_ceil(PRICE_CHUNK))
                .into_par_iter()
                .flat_map_iter(|c| {
                    let lo = c * PRICE_CHUNK;
                    reduced_costs_chunk(&w, lp, costs, lo, (lo + PRICE_CHUNK).min(n))
                })
                .collect()
        }),
        None => reduced_costs_chunk(&w, lp, costs, 0, n),
    };
    let mut best: Option<(usize, f64)> = None;
    for (j, &dj) in d.iter().enumerate() {
        if basis.in_basis[j] || lp.col_kind[j] == ColumnKind::Artificial {
            continue;
        }
        if best.is_none_or(|(_, b)| dj > b) {
            best = Some((j, dj));
        }
    }
    match best {
        Some((k, red_cost)) if red_cost > cfg.opt_tol => Pricing::Enter { k, red_cost },
        _ => Pricing::Optimal,
    }
}

/// `B⁻¹ a_k`.
pub fn direction(tab: &Tableau, a_k: &[f64]) -> Vec<f64> {
    let m = tab.m();
    assert_eq!(a_k.len(), m);
    let nz: Vec<usize> = (0..m).filter(|&l| a_k[l] != 0.0).collect();
    (0..m)
        .map(|i| {
            let row = tab.inverse_row(i);
            let mut s = 0.0;
            for &l in &nz {
                s += row[l] * a_k[l];
            }
            s
        })
        .collect()
}

/// Stores `Y_k = B⁻¹ a_k` and the entering reduced cost in the tableau.
pub fn compute_direction(tab: &mut Tableau, a_k: &[f64], red_cost: f64) {
    let y = direction(tab, a_k);
    tab.set_entering_col(&y, red_cost);
}

/// Minimum-ratio test over rows with `y_ik > pivot_tol`.
///
/// Negative `b̄_i` (within the feasibility tolerance) count as zero. Rows
/// whose ratio is within `ratio_tie_tol` (relative) of the minimum are all
/// returned.
pub fn ratio_test(tab: &Tableau, cfg: &SolverConfig) -> RatioTest {
    let m = tab.m();
    let mut ratios: Vec<(usize, f64)> = Vec::new();
    for i in 0..m {
        let y = tab.entering_col(i);
        if y > cfg.pivot_tol {
            ratios.push((i, tab.rhs_bar(i).max(0.0) / y));
        }
    }
    if ratios.is_empty() {
        return RatioTest::Unbounded;
    }
    let theta = ratios.iter().map(|&(_, t)| t).fold(f64::INFINITY, f64::min);
    let limit = theta + cfg.ratio_tie_tol * theta;
    let rows = ratios
        .into_iter()
        .filter(|&(_, t)| t <= limit)
        .map(|(i, _)| i)
        .collect();
    RatioTest::Candidates { rows, theta }
}

/// Chooses the leaving row among ratio-test ties.
///
/// With the tabu rule, candidates whose basic variable is banned for `k`
/// are dropped unless that would drop all of them. Remaining ties are broken
/// by a one-step lookahead: each candidate is pivoted in a scratch copy and
/// scored by the next iteration's `(z_k′ − c_k′)·θ′` (0 if the scratch copy
/// is optimal, `+∞` if it is unbounded). The chosen leaving variable is then
/// banned for `k`.
#[allow(clippy::too_many_arguments)]
pub fn select_leaving(
    candidates: &[usize],
    k: usize,
    tab: &Tableau,
    basis: &Basis,
    tabu: &mut TabuState,
    lp: &StandardFormLP,
    costs: &[f64],
    cfg: &SolverConfig,
) -> Result<usize, SimplexError> {
    assert!(!candidates.is_empty());
    if candidates.len() == 1 || cfg.anticycle == AntiCycle::None {
        return Ok(candidates[0]);
    }
    let allowed: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&r| !tabu.is_banned(k, basis.basic[r]))
        .collect();
    let pool = if allowed.is_empty() { candidates.to_vec() } else { allowed };
    let r = if pool.len() == 1 {
        pool[0]
    } else {
        let mut best = (pool[0], f64::NEG_INFINITY);
        for &r in &pool {
            let s = lookahead_score(r, k, tab, basis, lp, costs, cfg)?;
            if s > best.1 {
                best = (r, s);
            }
        }
        best.0
    };
    tabu.ban(k, basis.basic[r]);
    Ok(r)
}

fn lookahead_score(
    r: usize,
    k: usize,
    tab: &Tableau,
    basis: &Basis,
    lp: &StandardFormLP,
    costs: &[f64],
    cfg: &SolverConfig,
) -> Result<f64, SimplexError> {
    let mut scratch = tab.clone();
    let mut b = basis.clone();
    pivot_update(&mut scratch, r, cfg.pivot_tol)?;
    b.replace(r, k);
    let (k2, d2) = match price(&mut scratch, lp, costs, &b, cfg) {
        Pricing::Optimal => return Ok(0.0),
        Pricing::Enter { k, red_cost } => (k, red_cost),
    };
    compute_direction(&mut scratch, &lp.column(k2), d2);
    Ok(match ratio_test(&scratch, cfg) {
        RatioTest::Unbounded => f64::INFINITY,
        RatioTest::Candidates { theta, .. } => d2 * theta,
    })
}

/// Pivots on row `r` of the entering column currently stored in `tab`.
///
/// Row `r` is divided by `y_rk`; every row `i` (top row included) then gets
/// `(−y_i)·row_r` added, with the multiplier of row `r` itself set to zero
/// so the update needs no row test. The entering column ends as `e_r` and
/// the top row's reduced cost entry as 0.
pub fn pivot_update(tab: &mut Tableau, r: usize, pivot_tol: f64) -> Result<(), SimplexError> {
    let m = tab.m();
    let yc = tab.y_col();
    let y = tab.entering_col(r);
    if y.is_nan() || y.abs() <= pivot_tol {
        return Err(SimplexError::PivotTooSmall { row: r, value: y });
    }
    let e = tab.engine_mut();
    for v in e.row_mut(r + 1).iter_mut() {
        *v /= y;
    }
    let mut mult: Vec<f64> = (0..=m).map(|i| e.get(i, yc)).collect();
    mult[r + 1] = 0.0;
    e.pivot_update(r + 1, &mult);
    e.set(r + 1, yc, 1.0);
    Ok(())
}
