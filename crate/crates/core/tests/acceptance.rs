//! Exit criteria for the laboratory. Each test prints one PASS/FAIL line.

use std::f64::consts::PI;
use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use hardy_lab::apparatus::{simulate_run, simulated_report};
use hardy_lab::ladder::{
    condition_residuals, evaluate_ladder, hardy_fraction_closed_form, ladder_angles, ladder_terms,
    optimize_t, s_statistic, violation_threshold, LadderConfig,
};
use hardy_lab::lhv::{ch_equivalence_residual, enumerate_strategies, lhv_max, BehaviorTable};
use hardy_lab::quantum::{distribution, make_state, JointDistribution, NoisyState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: u32, name: &str, ok: bool, detail: String) {
    println!(
        "[{}] AC{id:02} {name}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "AC{id:02} {name} failed: {detail}");
}

fn within(elapsed: Duration, limit_secs: f64) -> bool {
    elapsed.as_secs_f64() < limit_secs
}

#[test]
fn ac01_hardy_optimum_k1() {
    let start = Instant::now();
    let (t, s) = optimize_t(1, 1.0, PI).unwrap();
    let elapsed = start.elapsed();
    let ok = (0.45..=0.47).contains(&t) && (s - 0.0902).abs() <= 0.0005 && within(elapsed, 1.0);
    verdict(
        1,
        "Hardy optimum K=1",
        ok,
        format!("t*={t:.6}, S*={s:.6}, {elapsed:?}"),
    );
}

#[test]
fn ac02_hardy_optimum_k2() {
    let start = Instant::now();
    let (t, s) = optimize_t(2, 1.0, PI).unwrap();
    let elapsed = start.elapsed();
    let ok = (0.56..=0.58).contains(&t) && (s - 0.1746).abs() <= 0.0005 && within(elapsed, 1.0);
    verdict(
        2,
        "Hardy optimum K=2",
        ok,
        format!("t*={t:.6}, S*={s:.6}, {elapsed:?}"),
    );
}

#[test]
fn ac03_exact_zero_conditions() {
    let start = Instant::now();
    let mut worst_residual: f64 = 0.0;
    let mut worst_closed_form: f64 = 0.0;
    for k in 1..=3 {
        for i in 1..=99 {
            let t = i as f64 * 0.01;
            let state: NoisyState = make_state(t, PI).unwrap().into();
            let angles = ladder_angles(k, t).unwrap();
            for r in condition_residuals(&state, &angles) {
                worst_residual = worst_residual.max(r);
            }
            let report = evaluate_ladder(LadderConfig::new(k, t).unwrap(), PI, 1.0).unwrap();
            let closed = hardy_fraction_closed_form(k, t).unwrap();
            worst_closed_form = worst_closed_form.max((report.hardy_fraction - closed).abs());
        }
    }
    let elapsed = start.elapsed();
    let ok = worst_residual < 1e-12 && worst_closed_form < 1e-12 && within(elapsed, 5.0);
    verdict(
        3,
        "exact-zero conditions",
        ok,
        format!("max residual={worst_residual:.2e}, max |P_K - closed form|={worst_closed_form:.2e}, {elapsed:?}"),
    );
}

#[test]
fn ac04_lhv_bound() {
    let start = Instant::now();
    let mut detail = Vec::new();
    let mut ok = true;
    for (k, expected_count) in [(1, 16), (2, 64), (3, 256)] {
        let count = enumerate_strategies(k).unwrap().count();
        let max = lhv_max(k).unwrap();
        ok &= count == expected_count && max == 0.0;
        detail.push(format!("K={k}: max={max} over {count}"));
    }
    let elapsed = start.elapsed();
    ok &= within(elapsed, 1.0);
    verdict(
        4,
        "LHV bound",
        ok,
        format!("{}, {elapsed:?}", detail.join("; ")),
    );
}

#[test]
fn ac05_ch_hardy_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let entries = (0..4)
            .map(|_| {
                let w: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>());
                let total: f64 = w.iter().sum();
                JointDistribution::from_probabilities(
                    w[0] / total,
                    w[1] / total,
                    w[2] / total,
                    w[3] / total,
                )
            })
            .collect();
        let table = BehaviorTable::new(1, entries).unwrap();
        worst = worst.max(ch_equivalence_residual(&table).unwrap());
    }
    let state = make_state(0.46, PI).unwrap().into();
    let quantum = BehaviorTable::from_state(&state, &ladder_angles(1, 0.46).unwrap());
    let quantum_residual = ch_equivalence_residual(&quantum).unwrap();
    let elapsed = start.elapsed();
    let ok = worst < 1e-12 && quantum_residual < 1e-12 && within(elapsed, 1.0);
    verdict(
        5,
        "CH/Hardy equivalence",
        ok,
        format!("random max={worst:.2e}, quantum={quantum_residual:.2e}, {elapsed:?}"),
    );
}

#[test]
fn ac06_table_statistic_arithmetic() {
    let s1 = s_statistic(0.095, 0.007, &[0.005, 0.005]).unwrap();
    let s2 = s_statistic(0.170, 0.011, &[0.007, 0.009, 0.009, 0.009]).unwrap();
    let ok =
        (s1 - 0.078).abs() < 1e-12 && (s2 - 0.125).abs() < 1e-12 && (s2 - 0.124).abs() <= 0.002;
    verdict(
        6,
        "reported-table statistic arithmetic",
        ok,
        format!("S1={s1:.6}, S2={s2:.6}"),
    );
}

#[test]
fn ac07_simulated_experiment_adequacy() {
    let start = Instant::now();
    let r1 = simulated_report(LadderConfig::new(1, 0.46).unwrap(), PI, 0.96, 100_000, 0).unwrap();
    let r2 = simulated_report(LadderConfig::new(2, 0.57).unwrap(), PI, 0.96, 100_000, 0).unwrap();
    let elapsed = start.elapsed();
    let ok = (r1.s_value - 0.078).abs() <= 0.02
        && (r2.s_value - 0.124).abs() <= 0.03
        && within(elapsed, 5.0);
    verdict(
        7,
        "simulated experiment adequacy",
        ok,
        format!(
            "S1={:.4} (vs 0.078), S2={:.4} (vs 0.124), {elapsed:?}",
            r1.s_value, r2.s_value
        ),
    );
}

#[test]
fn ac08_violation_loss_at_high_t() {
    let start = Instant::now();
    let cross = violation_threshold(1, 0.96, PI).unwrap();
    let elapsed = start.elapsed();
    let ok = cross.is_some_and(|t| (0.6..=0.95).contains(&t)) && within(elapsed, 1.0);
    verdict(
        8,
        "violation loss at high t",
        ok,
        format!("t_cross={cross:?}, {elapsed:?}"),
    );
}

#[test]
fn ac09_statistical_soundness() {
    let start = Instant::now();
    let config = LadderConfig::new(1, 0.46).unwrap();
    let n = 100_000u64;
    let state = NoisyState::new(make_state(0.46, PI).unwrap(), 0.96).unwrap();
    let angles = ladder_angles(1, 0.46).unwrap();
    let born: Vec<f64> = ladder_terms(1)
        .iter()
        .map(|term| {
            distribution(&state, &angles.alice(term.alice), &angles.bob(term.bob))
                .get(term.a, term.b)
        })
        .collect();

    let mut s_values = Vec::new();
    let mut reported_sigmas = Vec::new();
    let (mut inside, mut total) = (0usize, 0usize);
    for seed in 0..50u64 {
        let run = simulate_run(config, PI, 0.96, n, seed).unwrap();
        s_values.push(run.report.s_value);
        reported_sigmas.push(run.report.uncertainties.as_ref().unwrap().s_value);
        for (est, p) in run.estimates.iter().zip(&born) {
            let sigma = (p * (1.0 - p) / n as f64).sqrt();
            total += 1;
            if (est.p - p).abs() <= 4.0 * sigma {
                inside += 1;
            }
        }
    }
    let mean = s_values.iter().sum::<f64>() / s_values.len() as f64;
    let empirical_sd = (s_values.iter().map(|s| (s - mean).powi(2)).sum::<f64>()
        / (s_values.len() - 1) as f64)
        .sqrt();
    let reported = reported_sigmas.iter().sum::<f64>() / reported_sigmas.len() as f64;
    let ratio = empirical_sd / reported;
    let coverage = inside as f64 / total as f64;
    let elapsed = start.elapsed();
    let ok = (1.0 / 1.3..=1.3).contains(&ratio) && coverage >= 0.99 && within(elapsed, 30.0);
    verdict(
        9,
        "statistical soundness",
        ok,
        format!(
            "sd ratio={ratio:.3}, 4-sigma coverage={coverage:.3} ({inside}/{total}), {elapsed:?}"
        ),
    );
}

#[test]
fn ac10_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let commands: [&[&str]; 6] = [
        &[
            "simulate",
            "--k",
            "2",
            "--t",
            "0.57",
            "--visibility",
            "0.96",
            "--n",
            "20000",
            "--seed",
            "42",
        ],
        &[
            "table",
            "--visibility",
            "0.96",
            "--n",
            "20000",
            "--seed",
            "7",
        ],
        &[
            "scan",
            "--k",
            "1",
            "--t-min",
            "0.1",
            "--t-max",
            "0.9",
            "--steps",
            "81",
            "--visibility",
            "0.96",
        ],
        &["optimize", "--k", "2"],
        &["angles", "--k", "3", "--t", "0.6", "--format", "csv"],
        &["lhv", "--k", "2"],
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (i, args) in commands.iter().enumerate() {
        let outputs: Vec<Vec<u8>> = (0..2)
            .map(|rep| {
                let path = dir.path().join(format!("out-{i}-{rep}"));
                let status = Command::new(env!("CARGO_BIN_EXE_hardy"))
                    .args(*args)
                    .arg("--out")
                    .arg(&path)
                    .status()
                    .unwrap();
                assert!(status.success(), "{args:?}");
                fs::read(&path).unwrap()
            })
            .collect();
        let same = outputs[0] == outputs[1] && !outputs[0].is_empty();
        ok &= same;
        detail.push(format!(
            "{}={}",
            args[0],
            if same { "identical" } else { "DIFFERENT" }
        ));
    }
    verdict(10, "CLI determinism", ok, detail.join(", "));
}
