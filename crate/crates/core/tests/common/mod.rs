#![allow(dead_code)]

pub mod bland;

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tiled_simplex::{
    canonicalize, generate, parse_mps, two_phase_solve, GenSpec, GeneralLP, RowKind, Sense,
    SolveReport, SolverConfig, SparsityClass, Status,
};

use bland::{Outcome, Problem, Rel};

pub fn netlib_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data/netlib")
        .join(format!("{name}.mps"))
}

pub fn netlib_lp(name: &str) -> GeneralLP {
    let bytes = std::fs::read(netlib_path(name)).expect("fixture present");
    parse_mps(&bytes).unwrap().to_general_lp().unwrap()
}

/// Solves `lp` and returns the report with the objective of the original problem.
pub fn solve_general(lp: &GeneralLP, cfg: &SolverConfig) -> (SolveReport, Vec<f64>, f64) {
    let (s, map) = canonicalize(lp).unwrap();
    let rep = two_phase_solve(&s, cfg).unwrap();
    let (x, z) = map.recover_solution(&rep.x, rep.objective).unwrap();
    (rep, x, z)
}

pub fn class_for(i: u64) -> SparsityClass {
    [SparsityClass::D, SparsityClass::S20, SparsityClass::S60][(i % 3) as usize]
}

/// Random problem with `m, n ≤ 30`, mixed row relations and a mix of
/// optimal, unbounded and infeasible outcomes. Minimization, `x ≥ 0`.
pub fn random_lp(seed: u64) -> GeneralLP {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let m = rng.gen_range(1..=30);
    let n = rng.gen_range(1..=30);
    let base = generate(&GenSpec::new(m, n, class_for(seed), seed)).unwrap();
    let variant = seed % 4;
    let x_hat: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    let mut kinds = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let act: f64 = base.row(i).iter().zip(&x_hat).map(|(a, x)| a * x).sum();
        let kind = [RowKind::Le, RowKind::Ge, RowKind::Eq][rng.gen_range(0..3)];
        let slack = rng.gen::<f64>();
        let b = match (variant, kind) {
            (3, _) => rng.gen_range(-1.0..1.0) * act * 2.0,
            (_, RowKind::Le) => act + slack,
            (_, RowKind::Ge) => act - slack,
            _ => act,
        };
        kinds.push(kind);
        rhs.push(b);
    }
    let objective: Vec<f64> = match variant {
        2 => (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        _ => (0..n).map(|_| rng.gen_range(-0.2..1.0)).collect(),
    };
    GeneralLP::new(format!("rand{seed}"), Sense::Minimize, m, n, base.coeffs, objective, rhs, kinds)
        .unwrap()
}

pub fn to_oracle(lp: &GeneralLP) -> Problem {
    assert_eq!(lp.sense, Sense::Minimize);
    Problem {
        a: (0..lp.num_rows).map(|i| lp.row(i).to_vec()).collect(),
        rel: lp
            .row_kinds
            .iter()
            .map(|k| match k {
                RowKind::Le => Rel::Le,
                RowKind::Ge => Rel::Ge,
                RowKind::Eq => Rel::Eq,
                RowKind::Free => panic!("free rows not supported by the oracle"),
            })
            .collect(),
        b: lp.rhs.clone(),
        c: lp.objective.clone(),
    }
}

pub fn outcome_of(status: Status) -> Outcome {
    match status {
        Status::Optimal => Outcome::Optimal,
        Status::Unbounded => Outcome::Unbounded,
        Status::Infeasible => Outcome::Infeasible,
        Status::IterationLimit => panic!("iteration limit"),
    }
}

pub fn close(a: f64, b: f64, abs: f64, rel: f64) -> bool {
    (a - b).abs() <= abs || (a - b).abs() <= rel * a.abs().max(b.abs())
}

/// Beale's cycling example:
/// `min −3/4 x₄ + 20 x₅ − 1/2 x₆ + 6 x₇` subject to
/// `1/4 x₄ − 8 x₅ − x₆ + 9 x₇ ≤ 0`, `1/2 x₄ − 12 x₅ − 1/2 x₆ + 3 x₇ ≤ 0`, `x₆ ≤ 1`.
pub fn beale() -> GeneralLP {
    GeneralLP::new(
        "beale",
        Sense::Minimize,
        3,
        4,
        vec![
            0.25, -8.0, -1.0, 9.0, //
            0.5, -12.0, -0.5, 3.0, //
            0.0, 0.0, 1.0, 0.0,
        ],
        vec![-0.75, 20.0, -0.5, 6.0],
        vec![0.0, 0.0, 1.0],
        vec![RowKind::Le; 3],
    )
    .unwrap()
}

/// Budget (bytes) that splits a tableau of `rows × width` doubles into
/// exactly `parts` partitions, if one exists.
pub fn budget_for_parts(rows: usize, width: usize, parts: usize) -> Option<u64> {
    (1..=rows)
        .find(|&per| rows.div_ceil(per) == parts)
        .map(|per| ((per + 1) * width * 8) as u64)
}
