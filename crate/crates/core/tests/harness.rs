mod common;

use perscontext::harness::{
    aggregate_window, default_window_spec, generate_stream, simulate, Channel, QueryStrategy, RunConfig,
};
use perscontext::labels::is_consistent;

use common::travel;

fn mean_of(readings: &[perscontext::harness::SensorReading], c: &Channel) -> f64 {
    let xs: Vec<f64> = readings.iter().filter(|r| &r.channel == c).map(|r| r.value).collect();
    xs.iter().sum::<f64>() / xs.len() as f64
}

#[test]
fn travel_script_has_two_regimes() {
    let t = travel();
    let windows = generate_stream(&t.scenario, 1800, &t.etg, &t.eg).unwrap();
    assert_eq!(windows.len(), 2);
    let acc = Channel::AccelerometerMagnitude;
    let (train, walk) = (mean_of(&windows[0].readings, &acc), mean_of(&windows[1].readings, &acc));
    assert!((train - 0.2).abs() < 0.1 && (walk - 1.8).abs() < 0.2, "{train} {walk}");
    assert_eq!(windows[0].truth.location.as_deref(), Some("Train 1"));
    assert_eq!(windows[1].truth.location.as_deref(), Some("Roads 2"));
    let spec = default_window_spec(&t.scenario, 1800);
    let x = aggregate_window(&windows[1].readings, windows[1].begin, windows[1].end, &spec);
    assert_eq!(x.values.len(), spec.dim());
}

#[test]
fn never_query_never_learns() {
    let t = travel();
    let config = RunConfig {
        window_s: 300,
        strategy: QueryStrategy::Never,
        ..RunConfig::default()
    };
    let out = simulate(&t.scenario, &t.etg, &t.eg, &config).unwrap();
    assert_eq!(out.summary.queries, 0);
    assert!(out.predictions.iter().all(|p| p.count_ones() == 0));
}

#[test]
fn margin_query_asks_less_once_trained() {
    let t = travel();
    let mut script = t.scenario.clone();
    script.cycles = 20;
    let config = RunConfig {
        window_s: 300,
        strategy: QueryStrategy::Margin(0.5),
        ..RunConfig::default()
    };
    let out = simulate(&script, &t.etg, &t.eg, &config).unwrap();
    assert!(out.summary.queries > 0);
    assert!(out.summary.queries < out.summary.windows);
    assert!(out.predictions.iter().all(|p| is_consistent(&out.space, p)));
}

#[test]
fn seed_override_changes_readings() {
    let t = travel();
    let base = RunConfig {
        window_s: 300,
        ..RunConfig::default()
    };
    let a = simulate(&t.scenario, &t.etg, &t.eg, &base).unwrap();
    let b = simulate(&t.scenario, &t.etg, &t.eg, &RunConfig { seed: Some(99), ..base }).unwrap();
    assert_eq!(a.summary.seed, 7);
    assert_eq!(b.summary.seed, 99);
    assert_ne!(a.events[0].features, b.events[0].features);
}
