//! Dense revised simplex solver with a simulated two-tier memory backend.
//!
//! The solver keeps the classic revised-simplex tableau (simplex multipliers,
//! explicit basis inverse, basic solution and entering column) and applies
//! every pivot through [`engine::TiledEngine`], which models a small fast
//! "device" memory next to a large "host" memory. When the tableau does not
//! fit the device budget it is updated partition by partition, and every
//! element access and host/device transfer is counted.
//!
//! The crate also ships an MPS reader/writer, a random feasible instance
//! generator and the benchmark harness used by the command line front end.
//!
//! ```
//! use tiled_simplex::{canonicalize, two_phase_solve, GeneralLP, RowKind, Sense, SolverConfig, Status};
//!
//! // max 3x s.t. x <= 5
//! let lp = GeneralLP::new("tiny", Sense::Maximize, 1, 1, vec![1.0], vec![3.0],
//!     vec![5.0], vec![RowKind::Le]).unwrap();
//! let (std_lp, map) = canonicalize(&lp).unwrap();
//! let report = two_phase_solve(&std_lp, &SolverConfig::default()).unwrap();
//! assert_eq!(report.status, Status::Optimal);
//! let (x, z) = map.recover_solution(&report.x, report.objective).unwrap();
//! assert_eq!(x, vec![5.0]);
//! assert_eq!(z, 15.0);
//! ```

pub mod engine;
pub mod generator;
pub mod harness;
pub mod lp;
pub mod mps;
pub mod simplex;

pub use engine::{
    plan, Case, EngineError, KernelMode, MemoryBudget, MemoryCounters, TilePlan, TiledEngine,
};
pub use generator::{generate, GenError, GenSpec, SparsityClass};
pub use harness::{
    read_csv, run_suite, speedup, tpi, write_csv, BenchMode, BenchRow, HarnessError, MetricError,
    SuiteInput, SuiteOptions, CSV_HEADER,
};
pub use lp::{
    canonicalize, CanonicalMap, ColumnKind, GeneralLP, LpError, RowKind, Sense, StandardFormLP,
};
pub use mps::{parse_mps, BoundKind, MpsDocument, MpsError, MpsRowType};
pub use simplex::{
    two_phase_solve, two_phase_solve_observed, AntiCycle, Basis, IterationEvent, Phase,
    SimplexError, SolveReport, SolverConfig, Status, TabuState, Tableau,
};
