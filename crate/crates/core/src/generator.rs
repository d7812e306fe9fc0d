//! Random feasible LP families: dense (`D`) and sparse with 20% (`S20`) or
//! 60% (`S60`) expected zeros in the constraint matrix.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lp::{GeneralLP, RowKind, Sense};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("generator needs at least one row and one column (got {m}×{n})")]
    DegenerateSpec { m: usize, n: usize },
    #[error("unknown sparsity class {0:?} (expected D, S20 or S60)")]
    UnknownClass(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SparsityClass {
    D,
    S20,
    S60,
}

impl SparsityClass {
    pub fn zero_probability(self) -> f64 {
        match self {
            SparsityClass::D => 0.0,
            SparsityClass::S20 => 0.2,
            SparsityClass::S60 => 0.6,
        }
    }
}

impl fmt::Display for SparsityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SparsityClass::D => "D",
            SparsityClass::S20 => "S20",
            SparsityClass::S60 => "S60",
        })
    }
}

impl FromStr for SparsityClass {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        match s.to_ascii_uppercase().as_str() {
            "D" => Ok(SparsityClass::D),
            "S20" => Ok(SparsityClass::S20),
            "S60" => Ok(SparsityClass::S60),
            _ => Err(GenError::UnknownClass(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub m: usize,
    pub n: usize,
    pub class: SparsityClass,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(m: usize, n: usize, class: SparsityClass, seed: u64) -> Self {
        GenSpec { m, n, class, seed }
    }

    /// Instance name, e.g. `200_370_S20`.
    pub fn name(&self) -> String {
        format!("{}_{}_{}", self.m, self.n, self.class)
    }
}

/// Draws from `(0, 1]`.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - rng.gen::<f64>()
}

struct Draw {
    a: Vec<f64>,
    c: Vec<f64>,
    x_hat: Vec<f64>,
}

fn draw(spec: &GenSpec) -> Result<Draw, GenError> {
    let GenSpec { m, n, class, seed } = *spec;
    if m == 0 || n == 0 {
        return Err(GenError::DegenerateSpec { m, n });
    }
    let p_zero = class.zero_probability();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = vec![0.0; m * n];
    for row in a.chunks_mut(n) {
        loop {
            for v in row.iter_mut() {
                let value = 1.0 - rng.gen::<f64>() * 0.99;
                let zeroed = p_zero > 0.0 && rng.gen::<f64>() < p_zero;
                *v = if zeroed { 0.0 } else { value };
            }
            if row.iter().any(|&v| v != 0.0) {
                break;
            }
        }
    }
    let c = (0..n).map(|_| unit(&mut rng)).collect();
    let x_hat = (0..n).map(|_| unit(&mut rng)).collect();
    Ok(Draw { a, c, x_hat })
}

/// Generates `min cᵀx  s.t.  Ax = b, x ≥ 0` with `b = A·x̂` for a random
/// interior point `x̂`, so every instance is feasible.
///
/// Nonzero entries of `A` lie in `(0.01, 1]`; each is zeroed independently
/// with the class's probability, and a row that comes out all zero is
/// redrawn. Costs and `x̂` are drawn from `(0, 1]`.
pub fn generate(spec: &GenSpec) -> Result<GeneralLP, GenError> {
    let Draw { a, c, x_hat } = draw(spec)?;
    let (m, n) = (spec.m, spec.n);
    let b: Vec<f64> = a
        .chunks(n)
        .map(|row| row.iter().zip(&x_hat).map(|(a, x)| a * x).sum())
        .collect();
    let lp = GeneralLP::new(spec.name(), Sense::Minimize, m, n, a, c, b, vec![RowKind::Eq; m])
        .expect("dimensions are consistent by construction");
    Ok(lp)
}

/// The point `x̂` used to build `b` for `spec`.
pub fn reference_point(spec: &GenSpec) -> Result<Vec<f64>, GenError> {
    Ok(draw(spec)?.x_hat)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_has_no_zeros() {
        let lp = generate(&GenSpec::new(200, 370, SparsityClass::D, 1)).unwrap();
        assert_eq!(lp.coeffs.len(), 74000);
        assert_eq!(lp.coeffs.iter().filter(|&&v| v == 0.0).count(), 0);
        assert_eq!(lp.name, "200_370_D");
    }

    #[test]
    fn entries_stay_in_range() {
        let lp = generate(&GenSpec::new(30, 40, SparsityClass::S60, 9)).unwrap();
        assert!(lp.coeffs.iter().all(|&v| v == 0.0 || (v > 0.01 && v <= 1.0)));
        assert!(lp.objective.iter().all(|&v| v > 0.0 && v <= 1.0));
        assert!(lp.row_kinds.iter().all(|&k| k == RowKind::Eq));
    }

    #[test]
    fn reference_point_is_feasible() {
        let spec = GenSpec::new(20, 30, SparsityClass::S20, 4);
        let lp = generate(&spec).unwrap();
        let x = reference_point(&spec).unwrap();
        assert!(lp.max_violation(&x) < 1e-12);
    }

    #[test]
    fn empty_spec_is_rejected() {
        assert_eq!(
            generate(&GenSpec::new(0, 3, SparsityClass::D, 0)),
            Err(GenError::DegenerateSpec { m: 0, n: 3 })
        );
    }

    #[test]
    fn class_parsing() {
        assert_eq!("s20".parse::<SparsityClass>().unwrap(), SparsityClass::S20);
        assert!("S40".parse::<SparsityClass>().is_err());
    }
}
