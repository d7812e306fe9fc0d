//! Problem representations and the reduction of a general LP to the
//! standard form `min cᵀx  s.t.  Ax = b, b ≥ 0, x ≥ 0`.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("column {col}: lower bound {lower} exceeds upper bound {upper}")]
    InconsistentBounds { col: usize, lower: f64, upper: f64 },
    #[error("problem has no constraints or no variables")]
    EmptyProblem,
    #[error("expected a vector of length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Relation of a constraint row. `Free` is an unconstrained (MPS `N`) row
/// that is not the objective; it is carried along and ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowKind {
    Eq,
    Le,
    Ge,
    Free,
}

/// An LP as read from a file or produced by the generator.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralLP {
    pub name: String,
    pub sense: Sense,
    pub num_rows: usize,
    pub num_cols: usize,
    pub row_kinds: Vec<RowKind>,
    /// Dense row-major `num_rows × num_cols` constraint matrix.
    pub coeffs: Vec<f64>,
    pub objective: Vec<f64>,
    /// Constant added to the objective value.
    pub objective_offset: f64,
    pub rhs: Vec<f64>,
    pub ranges: Vec<Option<f64>>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl GeneralLP {
    /// Builds a problem with default bounds `0 ≤ x < ∞` and no ranges.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        sense: Sense,
        num_rows: usize,
        num_cols: usize,
        coeffs: Vec<f64>,
        objective: Vec<f64>,
        rhs: Vec<f64>,
        row_kinds: Vec<RowKind>,
    ) -> Result<Self, LpError> {
        check_len(num_rows * num_cols, coeffs.len())?;
        check_len(num_cols, objective.len())?;
        check_len(num_rows, rhs.len())?;
        check_len(num_rows, row_kinds.len())?;
        Ok(GeneralLP {
            name: name.into(),
            sense,
            num_rows,
            num_cols,
            row_kinds,
            coeffs,
            objective,
            objective_offset: 0.0,
            rhs,
            ranges: vec![None; num_rows],
            lower: vec![0.0; num_cols],
            upper: vec![f64::INFINITY; num_cols],
        })
    }

    pub fn coeff(&self, row: usize, col: usize) -> f64 {
        self.coeffs[row * self.num_cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.coeffs[row * self.num_cols..(row + 1) * self.num_cols]
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        dot(&self.objective, x) + self.objective_offset
    }

    /// Largest violation of any row relation, range or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for ((&l, &u), &xj) in self.lower.iter().zip(&self.upper).zip(x) {
            worst = worst.max(l - xj).max(xj - u);
        }
        for i in 0..self.num_rows {
            let lhs = dot(self.row(i), x);
            let (lo, hi) = self.row_interval(i);
            worst = worst.max(lo - lhs).max(lhs - hi);
        }
        worst
    }

    /// Interval `[lo, hi]` the row activity must lie in, with ranges applied.
    pub fn row_interval(&self, i: usize) -> (f64, f64) {
        let b = self.rhs[i];
        match (self.row_kinds[i], self.ranges[i]) {
            (RowKind::Free, _) => (f64::NEG_INFINITY, f64::INFINITY),
            (RowKind::Le, None) => (f64::NEG_INFINITY, b),
            (RowKind::Ge, None) => (b, f64::INFINITY),
            (RowKind::Eq, None) => (b, b),
            (RowKind::Le, Some(r)) => (b - r.abs(), b),
            (RowKind::Ge, Some(r)) => (b, b + r.abs()),
            (RowKind::Eq, Some(r)) if r >= 0.0 => (b, b + r),
            (RowKind::Eq, Some(r)) => (b + r, b),
        }
    }

    fn validate(&self) -> Result<(), LpError> {
        if self.num_rows == 0 || self.num_cols == 0 {
            return Err(LpError::EmptyProblem);
        }
        check_len(self.num_rows * self.num_cols, self.coeffs.len())?;
        check_len(self.num_cols, self.objective.len())?;
        check_len(self.num_rows, self.rhs.len())?;
        check_len(self.num_rows, self.row_kinds.len())?;
        check_len(self.num_rows, self.ranges.len())?;
        check_len(self.num_cols, self.lower.len())?;
        check_len(self.num_cols, self.upper.len())?;
        for j in 0..self.num_cols {
            if self.lower[j] > self.upper[j] || self.lower[j] == f64::INFINITY {
                return Err(LpError::InconsistentBounds {
                    col: j,
                    lower: self.lower[j],
                    upper: self.upper[j],
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

/// `min cᵀx  s.t.  Ax = b, x ≥ 0` with `b ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardFormLP {
    pub m: usize,
    pub n_total: usize,
    /// Dense row-major `m × n_total`.
    pub a: Vec<f64>,
    pub c: Vec<f64>,
    pub b: Vec<f64>,
    pub col_kind: Vec<ColumnKind>,
}

impl StandardFormLP {
    pub fn coeff(&self, row: usize, col: usize) -> f64 {
        self.a[row * self.n_total + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.a[row * self.n_total..(row + 1) * self.n_total]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.m).map(|i| self.coeff(i, col)).collect()
    }

    /// Appends a column, keeping the row-major layout.
    pub fn push_column(&mut self, column: &[f64], cost: f64, kind: ColumnKind) {
        assert_eq!(column.len(), self.m);
        let old = self.n_total;
        let mut a = Vec::with_capacity(self.m * (old + 1));
        for (i, &v) in column.iter().enumerate() {
            a.extend_from_slice(&self.a[i * old..(i + 1) * old]);
            a.push(v);
        }
        self.a = a;
        self.n_total += 1;
        self.c.push(cost);
        self.col_kind.push(kind);
    }

    pub fn count_kind(&self, kind: ColumnKind) -> usize {
        self.col_kind.iter().filter(|&&k| k == kind).count()
    }

    /// Largest violation of `Ax = b, x ≥ 0`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = x.iter().fold(0.0f64, |w, &v| w.max(-v));
        for i in 0..self.m {
            worst = worst.max((dot(self.row(i), x) - self.b[i]).abs());
        }
        worst
    }
}

/// Bookkeeping needed to map a standard-form point back to the source problem.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalMap {
    pub num_original_cols: usize,
    /// Shift applied to each original variable (its finite lower bound, else 0).
    pub shift: Vec<f64>,
    /// One flag per standard-form row: the row was multiplied by −1 to make `b ≥ 0`.
    pub negated_row: Vec<bool>,
    /// `(j⁺, j⁻)` standard column pairs for split free variables; `j⁺` is the
    /// original column index.
    pub split_pairs: Vec<(usize, usize)>,
    pub objective_sign: f64,
    pub objective_constant: f64,
}

impl CanonicalMap {
    /// Undoes shifts, splits and the objective sign/constant.
    pub fn recover_solution(&self, x_std: &[f64], z_std: f64) -> Result<(Vec<f64>, f64), LpError> {
        let min_len = self.num_original_cols + self.split_pairs.len();
        if x_std.len() < min_len {
            return Err(LpError::LengthMismatch {
                expected: min_len,
                actual: x_std.len(),
            });
        }
        let mut x: Vec<f64> = (0..self.num_original_cols)
            .map(|j| x_std[j] + self.shift[j])
            .collect();
        for &(pos, neg) in &self.split_pairs {
            x[pos] -= x_std[neg];
        }
        Ok((x, self.objective_sign * z_std + self.objective_constant))
    }
}

struct PendingRow {
    coeffs: Vec<f64>,
    rhs: f64,
    kind: RowKind,
}

/// Reduces `p` to standard form.
///
/// Finite lower bounds are shifted to zero, variables without a finite lower
/// bound are split into a difference of two nonnegative columns, finite upper
/// bounds become explicit `≤` rows and ranged rows become a `≥`/`≤` pair.
/// Rows with a negative right-hand side are negated before the slack (`+1`
/// for `≤`) or surplus (`−1` for `≥`) column is attached.
pub fn canonicalize(p: &GeneralLP) -> Result<(StandardFormLP, CanonicalMap), LpError> {
    p.validate()?;
    let n0 = p.num_cols;

    let shift: Vec<f64> = p
        .lower
        .iter()
        .map(|&l| if l.is_finite() { l } else { 0.0 })
        .collect();
    let split_cols: Vec<usize> = (0..n0).filter(|&j| !p.lower[j].is_finite()).collect();
    let n_struct = n0 + split_cols.len();
    let split_pairs: Vec<(usize, usize)> = split_cols
        .iter()
        .enumerate()
        .map(|(t, &j)| (j, n0 + t))
        .collect();

    // Expand an original coefficient row over the structural columns.
    let expand = |row: &[f64]| -> Vec<f64> {
        let mut out = Vec::with_capacity(n_struct);
        out.extend_from_slice(row);
        out.extend(split_cols.iter().map(|&j| -row[j]));
        out
    };

    let mut pending = Vec::new();
    for i in 0..p.num_rows {
        if p.row_kinds[i] == RowKind::Free {
            continue;
        }
        let row = p.row(i);
        let shifted = dot(row, &shift);
        let coeffs = expand(row);
        match p.ranges[i] {
            None => pending.push(PendingRow {
                coeffs,
                rhs: p.rhs[i] - shifted,
                kind: p.row_kinds[i],
            }),
            Some(_) => {
                let (lo, hi) = p.row_interval(i);
                pending.push(PendingRow {
                    coeffs: coeffs.clone(),
                    rhs: lo - shifted,
                    kind: RowKind::Ge,
                });
                pending.push(PendingRow {
                    coeffs,
                    rhs: hi - shifted,
                    kind: RowKind::Le,
                });
            }
        }
    }
    for j in 0..n0 {
        if p.upper[j].is_finite() {
            let mut coeffs = vec![0.0; n_struct];
            coeffs[j] = 1.0;
            if let Some(&(_, neg)) = split_pairs.iter().find(|&&(pos, _)| pos == j) {
                coeffs[neg] = -1.0;
            }
            pending.push(PendingRow {
                coeffs,
                rhs: p.upper[j] - shift[j],
                kind: RowKind::Le,
            });
        }
    }

    let m = pending.len();
    let n_slack = pending.iter().filter(|r| r.kind != RowKind::Eq).count();
    let n_total = n_struct + n_slack;
    let mut a = vec![0.0; m * n_total];
    let mut b = vec![0.0; m];
    let mut negated_row = vec![false; m];
    let mut col_kind = vec![ColumnKind::Structural; n_struct];
    col_kind.resize(n_total, ColumnKind::Slack);

    let mut next_slack = n_struct;
    for (i, mut row) in pending.into_iter().enumerate() {
        if row.rhs < 0.0 {
            row.rhs = -row.rhs;
            row.coeffs.iter_mut().for_each(|v| *v = -*v);
            row.kind = match row.kind {
                RowKind::Le => RowKind::Ge,
                RowKind::Ge => RowKind::Le,
                k => k,
            };
            negated_row[i] = true;
        }
        let dst = &mut a[i * n_total..(i + 1) * n_total];
        // `0.0 - 0.0` style negation leaves -0.0 behind; normalize.
        for (d, v) in dst.iter_mut().zip(&row.coeffs) {
            *d = *v + 0.0;
        }
        match row.kind {
            RowKind::Le => {
                dst[next_slack] = 1.0;
                next_slack += 1;
            }
            RowKind::Ge => {
                dst[next_slack] = -1.0;
                next_slack += 1;
            }
            _ => {}
        }
        b[i] = row.rhs + 0.0;
    }

    let sign = match p.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let mut c = vec![0.0; n_total];
    for (cj, &oj) in c.iter_mut().zip(&p.objective) {
        *cj = sign * oj;
    }
    for &(pos, neg) in &split_pairs {
        c[neg] = -c[pos];
    }

    let std_lp = StandardFormLP {
        m,
        n_total,
        a,
        c,
        b,
        col_kind,
    };
    let map = CanonicalMap {
        num_original_cols: n0,
        shift: shift.clone(),
        negated_row,
        split_pairs,
        objective_sign: sign,
        objective_constant: dot(&p.objective, &shift) + p.objective_offset,
    };
    Ok((std_lp, map))
}

fn check_len(expected: usize, actual: usize) -> Result<(), LpError> {
    if expected == actual {
        Ok(())
    } else {
        Err(LpError::LengthMismatch { expected, actual })
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_var(kind: RowKind, coeff: f64, rhs: f64, sense: Sense, cost: f64) -> GeneralLP {
        GeneralLP::new("t", sense, 1, 1, vec![coeff], vec![cost], vec![rhs], vec![kind]).unwrap()
    }

    #[test]
    fn single_slack_insertion() {
        let (s, map) = canonicalize(&one_var(RowKind::Le, 1.0, 4.0, Sense::Minimize, 1.0)).unwrap();
        assert_eq!(s.m, 1);
        assert_eq!(s.a, vec![1.0, 1.0]);
        assert_eq!(s.b, vec![4.0]);
        assert_eq!(s.c, vec![1.0, 0.0]);
        assert_eq!(s.col_kind, vec![ColumnKind::Structural, ColumnKind::Slack]);
        assert_eq!(map.objective_sign, 1.0);
    }

    #[test]
    fn negative_rhs_row_is_negated() {
        // -x ≤ -2 becomes x ≥ 2 with a surplus column.
        let (s, map) = canonicalize(&one_var(RowKind::Le, -1.0, -2.0, Sense::Minimize, 1.0)).unwrap();
        assert_eq!(s.a, vec![1.0, -1.0]);
        assert_eq!(s.b, vec![2.0]);
        assert_eq!(map.negated_row, vec![true]);
    }

    #[test]
    fn maximize_flips_objective() {
        let (s, map) = canonicalize(&one_var(RowKind::Le, 1.0, 5.0, Sense::Maximize, 3.0)).unwrap();
        assert_eq!(s.c, vec![-3.0, 0.0]);
        assert_eq!(map.objective_sign, -1.0);
        // Optimal standard point x=5, slack 0, z_std=-15.
        let (x, z) = map.recover_solution(&[5.0, 0.0], -15.0).unwrap();
        assert_eq!(x, vec![5.0]);
        assert_eq!(z, 15.0);
    }

    #[test]
    fn recover_identity_shift_and_split() {
        let map = CanonicalMap {
            num_original_cols: 2,
            shift: vec![0.0, 0.0],
            negated_row: vec![],
            split_pairs: vec![],
            objective_sign: 1.0,
            objective_constant: 0.0,
        };
        assert_eq!(map.recover_solution(&[1.0, 2.0], 7.0).unwrap(), (vec![1.0, 2.0], 7.0));

        let shifted = CanonicalMap {
            shift: vec![3.0, 0.0],
            ..map.clone()
        };
        assert_eq!(shifted.recover_solution(&[0.0, 0.0], 0.0).unwrap().0[0], 3.0);

        let split = CanonicalMap {
            num_original_cols: 1,
            shift: vec![0.0],
            split_pairs: vec![(0, 1)],
            ..map
        };
        assert_eq!(split.recover_solution(&[1.0, 4.0], 0.0).unwrap().0, vec![-3.0]);
    }

    #[test]
    fn recover_rejects_short_vector() {
        let (_, map) = canonicalize(&one_var(RowKind::Le, 1.0, 4.0, Sense::Minimize, 1.0)).unwrap();
        assert!(matches!(
            map.recover_solution(&[], 0.0),
            Err(LpError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn bounds_shift_and_split() {
        // x0 in [2, 5], x1 free; x0 + x1 = 1
        let mut p = GeneralLP::new(
            "b",
            Sense::Minimize,
            1,
            2,
            vec![1.0, 1.0],
            vec![1.0, 2.0],
            vec![1.0],
            vec![RowKind::Eq],
        )
        .unwrap();
        p.lower = vec![2.0, f64::NEG_INFINITY];
        p.upper = vec![5.0, f64::INFINITY];
        let (s, map) = canonicalize(&p).unwrap();
        // Columns: x0', x1+, x1-, slack(bound row)
        assert_eq!(s.n_total, 4);
        assert_eq!(s.m, 2);
        // Row 0: x0' + x1+ - x1- = 1 - 2 = -1 → negated.
        assert_eq!(s.row(0), &[-1.0, -1.0, 1.0, 0.0]);
        assert_eq!(s.b[0], 1.0);
        // Bound row: x0' + s = 3
        assert_eq!(s.row(1), &[1.0, 0.0, 0.0, 1.0]);
        assert_eq!(s.b[1], 3.0);
        assert_eq!(map.split_pairs, vec![(1, 2)]);
        assert_eq!(map.objective_constant, 2.0);
        assert_eq!(s.c, vec![1.0, 2.0, -2.0, 0.0]);
    }

    #[test]
    fn ranged_row_becomes_two_rows() {
        let mut p = one_var(RowKind::Le, 1.0, 10.0, Sense::Minimize, 1.0);
        p.ranges[0] = Some(4.0);
        let (s, _) = canonicalize(&p).unwrap();
        assert_eq!(s.m, 2);
        assert_eq!(s.b, vec![6.0, 10.0]);
        assert_eq!(s.row(0), &[1.0, -1.0, 0.0]);
        assert_eq!(s.row(1), &[1.0, 0.0, 1.0]);
    }

    #[test]
    fn errors() {
        let mut p = one_var(RowKind::Le, 1.0, 4.0, Sense::Minimize, 1.0);
        p.lower[0] = 3.0;
        p.upper[0] = 1.0;
        assert!(matches!(canonicalize(&p), Err(LpError::InconsistentBounds { col: 0, .. })));
        let empty = GeneralLP::new("e", Sense::Minimize, 0, 1, vec![], vec![1.0], vec![], vec![]).unwrap();
        assert_eq!(canonicalize(&empty), Err(LpError::EmptyProblem));
    }

    #[test]
    fn free_rows_are_dropped() {
        let p = GeneralLP::new(
            "f",
            Sense::Minimize,
            2,
            1,
            vec![1.0, 7.0],
            vec![1.0],
            vec![4.0, 0.0],
            vec![RowKind::Le, RowKind::Free],
        )
        .unwrap();
        let (s, _) = canonicalize(&p).unwrap();
        assert_eq!(s.m, 1);
    }
}
