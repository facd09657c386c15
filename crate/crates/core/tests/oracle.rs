mod common;

use common::exact_averages;
use ising_fss::engine::{run_chain, RunParams};
use ising_fss::stats::binning_error;

#[test]
fn enumeration_matches_closed_forms() {
    // beta = 0: every state equally likely. For L = 2, m takes
    // 0, +-1/2, +-1 with multiplicities 6, 8, 2.
    let e = exact_averages(2, 0.0, 1.0);
    assert!((e.abs_m - (8.0 * 0.5 + 2.0) / 16.0).abs() < 1e-15);
    assert!((e.m2 - (8.0 * 0.25 + 2.0) / 16.0).abs() < 1e-15);
    // Very low temperature: only the two ground states survive.
    let cold = exact_averages(4, 20.0, 1.0);
    assert!((cold.abs_m - 1.0).abs() < 1e-12 && (cold.binder() - 1.0).abs() < 1e-12);
}

#[test]
fn wolff_chain_matches_enumeration_at_l4() {
    let params = RunParams::new(4, 0.3, 1.0, 400_000, 11).unwrap();
    let series = run_chain(&params).unwrap();
    let m2: Vec<f64> = series.magnetizations().map(|m| m * m).collect();
    let mean = m2.iter().sum::<f64>() / m2.len() as f64;
    let err = binning_error(&m2, 1000).unwrap().error;
    let exact = exact_averages(4, 0.3, 1.0).m2;
    assert!(
        (mean - exact).abs() < 5.0 * err,
        "{mean} +- {err} vs {exact}"
    );
}
