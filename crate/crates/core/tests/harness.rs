mod common;

use common::netlib_path;
use proptest::prelude::*;
use tiled_simplex::{
    read_csv, run_suite, speedup, tpi, write_csv, BenchMode, BenchRow, GenSpec, SolverConfig,
    SparsityClass, SuiteInput, SuiteOptions, CSV_HEADER,
};

fn real() -> impl Strategy<Value = f64> {
    prop_oneof![-1e9..1e9f64, 0.0..1e-3f64, Just(0.0), Just(f64::INFINITY)]
}

fn row() -> impl Strategy<Value = BenchRow> {
    (
        "[a-z0-9_#@:]{1,12}",
        prop_oneof![Just("Optimal"), Just("Unbounded"), Just("Infeasible"), Just("ParseError")],
        prop::option::of(-1e9..1e9f64),
        (any::<u32>(), any::<u32>()),
        (0.0..1e4f64, 0.0..1.0f64),
        prop_oneof![Just(""), Just("InCore"), Just("Tiled")],
        (any::<u64>(), any::<u64>(), any::<u64>(), any::<u64>()),
        prop::option::of((1e-6..1e3f64, real())),
    )
        .prop_map(|(instance, status, objective, (p1, p2), (total, per), case, (dr, dw, h2d, d2h), refs)| {
            BenchRow {
                instance,
                status: status.into(),
                objective,
                iterations_p1: p1 as u64,
                iterations_p2: p2 as u64,
                total_seconds: total,
                tpi_seconds: per,
                case: case.into(),
                device_reads: dr,
                device_writes: dw,
                h2d_bytes: h2d,
                d2h_bytes: d2h,
                reference_seconds: refs.map(|r| r.0),
                speedup: refs.map(|r| r.1),
            }
            .quantized()
        })
}

proptest! {
    #[test]
    fn csv_round_trip_is_field_exact(rows in prop::collection::vec(row(), 0..8)) {
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        prop_assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        let back = read_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(back, rows);
    }
}

#[test]
fn metric_examples() {
    assert!((speedup(2.682403, 1.042).unwrap() - 2.574283).abs() <= 1e-6);
    assert!((speedup(997.583, 14.08333).unwrap() - 70.8343).abs() <= 1e-3);
    assert!((tpi(2.682403, 2031).unwrap() - 0.001321).abs() <= 1e-6);
    assert!((tpi(1.042, 3243).unwrap() - 0.000321).abs() <= 1e-6);
    assert_eq!(tpi(0.75, 1).unwrap(), 0.75);
}

fn modes() -> Vec<BenchMode> {
    BenchMode::parse_list("unlimited:cached,512:naive").unwrap()
}

fn fast_opts() -> SuiteOptions {
    SuiteOptions {
        runs: 1,
        ..SuiteOptions::default()
    }
}

#[test]
fn one_instance_two_modes_gives_two_rows() {
    let inputs = [SuiteInput::Generated(GenSpec::new(12, 20, SparsityClass::S20, 3))];
    let rows = run_suite(&inputs, &SolverConfig::default(), &modes(), &fast_opts());
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].instance, "12_20_S20#3@unlimited:cached");
    assert_eq!(rows[1].instance, "12_20_S20#3@512:naive");
    assert_eq!(rows[0].case, "InCore");
    assert_eq!(rows[1].case, "Tiled");
    for r in &rows {
        assert_eq!(r.status, "Optimal");
        assert!(r.reference_seconds.is_none() && r.speedup.is_none());
    }
}

#[test]
fn unparseable_file_is_isolated() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("broken.mps");
    std::fs::write(&bad, "NAME X\nROWS\n N COST\nCOLUMNS\n    X1  NOPE  1.0\nENDATA\n").unwrap();
    let inputs = [
        SuiteInput::File(bad),
        SuiteInput::File(netlib_path("recipe")),
        SuiteInput::File(dir.path().join("missing.mps")),
    ];
    let modes = BenchMode::parse_list("unlimited:cached,65536:naive").unwrap();
    let rows = run_suite(&inputs, &SolverConfig::default(), &modes, &fast_opts());
    let status: Vec<&str> = rows.iter().map(|r| r.status.as_str()).collect();
    assert_eq!(status, ["ParseError", "ParseError", "Optimal", "Optimal", "ParseError", "ParseError"]);
    assert!(rows[0].objective.is_none());
    let z = rows[2].objective.unwrap();
    assert!((z - -266.616).abs() <= 1e-4 * 266.616, "recipe {z}");
}

#[test]
fn results_are_mode_independent_and_reference_pairs_with_speedup() {
    let inputs = [
        SuiteInput::Generated(GenSpec::new(30, 45, SparsityClass::D, 11)),
        SuiteInput::File(netlib_path("scsd1")),
    ];
    let all = BenchMode::parse_list("unlimited:cached,unlimited:naive,8192:cached,2048:naive").unwrap();
    let opts = SuiteOptions {
        runs: 1,
        reference: true,
    };
    let rows = run_suite(&inputs, &SolverConfig::default(), &all, &opts);
    assert_eq!(rows.len(), 8);
    for group in rows.chunks(4) {
        for r in group {
            assert_eq!(r.status, "Optimal", "{}", r.instance);
            assert_eq!(r.objective, group[0].objective, "{}", r.instance);
            assert_eq!(r.iterations_p1, group[0].iterations_p1, "{}", r.instance);
            assert_eq!(r.iterations_p2, group[0].iterations_p2, "{}", r.instance);
            assert_eq!(r.reference_seconds.is_some(), r.speedup.is_some());
            assert!(r.speedup.is_some());
        }
    }
    let mut buf = Vec::new();
    write_csv(&mut buf, &rows).unwrap();
    assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
}
