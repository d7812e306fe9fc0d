//! Textbook two-phase full-tableau simplex with Bland's rule.
//!
//! Written against the row relations directly (no shared canonicalization)
//! so it can serve as an oracle for the solver under test. Every variable is
//! nonnegative and unbounded above.

#![allow(clippy::needless_range_loop)]

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct Problem {
    /// Row-major `m × n`.
    pub a: Vec<Vec<f64>>,
    pub rel: Vec<Rel>,
    pub b: Vec<f64>,
    /// Minimized.
    pub c: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Answer {
    pub outcome: Outcome,
    pub objective: f64,
    pub x: Vec<f64>,
}

const EPS: f64 = 1e-9;

struct Tab {
    /// `m` constraint rows followed by the cost row; last column is the rhs.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
}

impl Tab {
    fn pivot(&mut self, r: usize, k: usize) {
        let p = self.t[r][k];
        for v in self.t[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[k];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        self.basis[r] = k;
    }

    /// Minimizes the cost row over columns allowed by `usable`.
    fn run(&mut self, usable: &dyn Fn(usize) -> bool) -> bool {
        let m = self.basis.len();
        let width = self.t[0].len() - 1;
        loop {
            // Cost row holds reduced costs c_j − z_j; enter the first negative one.
            let Some(k) = (0..width).find(|&j| usable(j) && self.t[m][j] < -EPS) else {
                return true;
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..m {
                let y = self.t[i][k];
                if y > EPS {
                    let ratio = self.t[i][width] / y;
                    let better = match best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < br - EPS || (ratio <= br + EPS && self.basis[i] < self.basis[bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, k),
            }
        }
    }
}

pub fn solve(p: &Problem) -> Answer {
    let m = p.b.len();
    let n = p.c.len();
    let slack_count = p.rel.iter().filter(|&&r| r != Rel::Eq).count();
    let art0 = n + slack_count;
    let width = art0 + m;

    let mut t = vec![vec![0.0; width + 1]; m + 1];
    let mut s = n;
    for i in 0..m {
        let sign = if p.b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = sign * p.a[i][j];
        }
        match p.rel[i] {
            Rel::Le => {
                t[i][s] = sign;
                s += 1;
            }
            Rel::Ge => {
                t[i][s] = -sign;
                s += 1;
            }
            Rel::Eq => {}
        }
        t[i][art0 + i] = 1.0;
        t[i][width] = sign * p.b[i];
    }
    // Phase-1 reduced costs: 1 on artificials minus the sum of all rows.
    for j in 0..=width {
        let col_sum: f64 = (0..m).map(|i| t[i][j]).sum();
        let cost = if (art0..width).contains(&j) { 1.0 } else { 0.0 };
        t[m][j] = cost - col_sum;
    }
    let mut tab = Tab {
        t,
        basis: (art0..width).collect(),
    };
    tab.run(&|_| true);
    if -tab.t[m][width] > 1e-7 {
        return Answer {
            outcome: Outcome::Infeasible,
            objective: f64::NAN,
            x: vec![],
        };
    }

    // Pivot zero-level artificials out where possible.
    for r in 0..m {
        if tab.basis[r] >= art0 {
            if let Some(k) = (0..art0).find(|&j| tab.t[r][j].abs() > EPS) {
                tab.pivot(r, k);
            }
        }
    }

    // Phase-2 cost row.
    for j in 0..=width {
        let mut v = if j < n { p.c[j] } else { 0.0 };
        for i in 0..m {
            let cb = if tab.basis[i] < n { p.c[tab.basis[i]] } else { 0.0 };
            v -= cb * tab.t[i][j];
        }
        tab.t[m][j] = v;
    }
    if !tab.run(&|j| j < art0) {
        return Answer {
            outcome: Outcome::Unbounded,
            objective: f64::NEG_INFINITY,
            x: vec![],
        };
    }
    let mut x = vec![0.0; n];
    for i in 0..m {
        if tab.basis[i] < n {
            x[tab.basis[i]] = tab.t[i][width];
        }
    }
    let objective = x.iter().zip(&p.c).map(|(a, b)| a * b).sum();
    Answer {
        outcome: Outcome::Optimal,
        objective,
        x,
    }
}

