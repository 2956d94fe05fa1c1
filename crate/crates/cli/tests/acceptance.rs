//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! with the measured numbers (run with `--nocapture` to see them).
//!
//! Criteria 4 and 6 encode the published pulsed-contrast and probability
//! table. With the quoted device parameters and an ideal 4.2 GHz Gaussian
//! probe, the model predicts a deeper ground-state dip than those reference
//! numbers, so the two checks fail; the printed details carry the measured
//! values. See the repository README for the status note.

use std::process::Command;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dotgate::{
    cooperativity, fit, homogeneous_linewidth, mean_field_steady_state, mean_field_transient,
    pulse_averaged_intensity, reflection_bare, reflection_coupled, synthesize, BackgroundPoly64,
    ChannelBackgrounds64, Detuning, DeviceParams, DeviceParams64, DiffusionQuadrature64,
    FitDataset, FitOptions, FitProblem, NoiseSpec, ParamId, PolarizationPair, PulseSpectrum64,
    QdState, SPEED_OF_LIGHT_NM_GHZ,
};

fn nu_cav() -> f64 {
    SPEED_OF_LIGHT_NM_GHZ / 920.97
}

fn nu_qd() -> f64 {
    SPEED_OF_LIGHT_NM_GHZ / 920.96
}

fn fitted_device() -> DeviceParams64 {
    DeviceParams64::from_ghz(12.9, 31.9, 5.2, 530.0, nu_cav(), nu_qd()).unwrap()
}

fn symmetric_device() -> DeviceParams64 {
    DeviceParams64::from_ghz(12.9, 31.9, 5.2, 530.0, nu_qd(), nu_qd()).unwrap()
}

fn quad40() -> DiffusionQuadrature64 {
    DiffusionQuadrature64::new(40).unwrap()
}

fn report(id: &str, pass: bool, detail: &str) {
    println!(
        "criterion {id}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} failed: {detail}");
}

#[test]
fn criterion_01_resonant_reflection() {
    let d = symmetric_device();
    let c = cooperativity(&d);
    let r = reflection_coupled(d.nu_qd(), 0.0, &d).unwrap();
    let via_cooperativity = (c - 1.0) / (c + 1.0);
    // 50-digit independent evaluation of the closed form at triple resonance
    #[allow(clippy::excessive_precision)]
    let pinned = 0.971_626_031_857_351_856_193_805_4_f64;
    let rel_form = (r.re - via_cooperativity).abs() / via_cooperativity;
    let rel_pinned = (r.re - pinned).abs() / pinned;
    let pass =
        rel_form < 1e-9 && rel_pinned < 1e-9 && r.im.abs() < 1e-12 && (c - 69.487).abs() < 0.01;
    report(
        "1 (resonant reflection)",
        pass,
        &format!("C = {c:.6}, r = {:.12}, vs (C-1)/(C+1) rel {rel_form:.2e}, vs pinned rel {rel_pinned:.2e}", r.re),
    );
}

#[test]
fn criterion_02_ode_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0dd5eed);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let g = rng.gen_range(2.0..30.0);
        let kappa = rng.gen_range(8.0..60.0);
        let lifetime = rng.gen_range(150.0..1500.0);
        let cavity = 325_500.0 + rng.gen_range(-30.0..30.0);
        let dot = cavity + rng.gen_range(-25.0..25.0);
        let device: DeviceParams<f64> =
            DeviceParams::from_ghz(g, kappa, 5.0, lifetime, cavity, dot).unwrap();
        let nu = cavity + rng.gen_range(-40.0..40.0);
        let drive = Complex::new(rng.gen_range(0.2..1.5), rng.gen_range(-1.0..1.0));

        // slowest decay from the 2x2 eigenvalues fixes the horizon
        let det = Detuning::of(nu, 0.0, &device);
        let gamma = homogeneous_linewidth(&device);
        let a = Complex::new(device.kappa() / 2.0, det.delta_c);
        let b = Complex::new(gamma, det.delta_a());
        let root = ((a - b) * (a - b) / 4.0 - Complex::new(device.g() * device.g(), 0.0)).sqrt();
        let slow = ((a + b) / 2.0 + root).re.min(((a + b) / 2.0 - root).re);
        let t_end = 30.0 / slow;
        let dt = 0.009
            / device
                .kappa()
                .max(device.g())
                .max(det.delta_c.abs())
                .max(det.delta_a().abs());

        let traj = mean_field_transient(&device, drive, nu, t_end, dt).unwrap();
        let a_ss = mean_field_steady_state(&device, drive, nu).unwrap();
        let rel = (traj.final_sample().cavity - a_ss).norm() / a_ss.norm();
        worst = worst.max(rel);

        let r_implied = traj.implied_reflection(&device, drive);
        let r_closed = reflection_coupled(nu, 0.0, &device).unwrap();
        worst = worst.max((r_implied - r_closed).norm() / r_closed.norm().max(1e-3));
    }
    report(
        "2 (transient oracle equivalence)",
        worst < 1e-6,
        &format!("worst relative deviation over 20 random devices = {worst:.3e}"),
    );
}

#[test]
fn criterion_03_unitarity_suites() {
    let d = fitted_device();
    let span = 10.0 * d.kappa_ghz();
    let mut worst_bare = 0.0f64;
    for i in 0..=1000 {
        let nu = d.nu_cavity() - span + 2.0 * span * i as f64 / 1000.0;
        worst_bare = worst_bare.max((reflection_bare(nu, &d).norm() - 1.0).abs());
    }

    let lossless =
        DeviceParams64::from_ghz(12.9, 31.9, 5.2, f64::INFINITY, nu_cav(), nu_qd()).unwrap();
    let mut worst_lossless = 0.0f64;
    for i in 0..=1000 {
        let nu = nu_cav() - span + 2.0 * span * i as f64 / 1000.0;
        let r = reflection_coupled(nu, 0.0, &lossless).unwrap();
        worst_lossless = worst_lossless.max((r.norm() - 1.0).abs());
    }

    let q = quad40();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst_partition = 0.0f64;
    for _ in 0..40 {
        let probe = PulseSpectrum64::new(
            d.nu_cavity() + rng.gen_range(-50.0..50.0),
            rng.gen_range(0.0..15.0),
            rng.gen_range(0.2..4.0),
        )
        .unwrap();
        for (cross, co) in [
            (PolarizationPair::VH, PolarizationPair::VV),
            (PolarizationPair::HV, PolarizationPair::HH),
        ] {
            let wc = pulse_averaged_intensity(&probe, cross, QdState::Minus, &d, &q).unwrap();
            let ws = pulse_averaged_intensity(&probe, co, QdState::Minus, &d, &q).unwrap();
            worst_partition =
                worst_partition.max(((wc + ws) - probe.total_energy).abs() / probe.total_energy);
        }
    }

    let pass = worst_bare < 1e-12 && worst_lossless < 1e-12 && worst_partition < 1e-10;
    report(
        "3 (unitarity and energy partition)",
        pass,
        &format!(
            "bare | |r|-1 | = {worst_bare:.2e}, lossless = {worst_lossless:.2e}, partition = {worst_partition:.2e}"
        ),
    );
}

#[test]
fn criterion_04_pulsed_contrast() {
    let d = fitted_device();
    let q = quad40();
    let probe = PulseSpectrum64::new(nu_cav(), 4.2, 1.0).unwrap();
    let w_minus =
        pulse_averaged_intensity(&probe, PolarizationPair::VH, QdState::Minus, &d, &q).unwrap();
    let w_ground =
        pulse_averaged_intensity(&probe, PolarizationPair::VH, QdState::Ground, &d, &q).unwrap();
    let contrast = (w_minus - w_ground) / w_minus;
    let pass = (contrast - 0.60).abs() <= 0.05;
    report(
        "4 (pulsed contrast 0.60 ± 0.05)",
        pass,
        &format!(
            "model contrast = {contrast:.4} (W- = {w_minus:.4}, Wg = {w_ground:.4}); the quoted-parameter model exceeds the reference contrast"
        ),
    );
}

#[test]
fn criterion_05_mixture_ratio() {
    let d = fitted_device();
    let q = quad40();
    let probe = PulseSpectrum64::new(nu_cav(), 4.2, 1.0).unwrap();
    let w_minus =
        pulse_averaged_intensity(&probe, PolarizationPair::VH, QdState::Minus, &d, &q).unwrap();
    let w_pi =
        pulse_averaged_intensity(&probe, PolarizationPair::VH, QdState::Mixture(0.93), &d, &q)
            .unwrap();
    let ratio = w_pi / w_minus;
    let pass = (ratio - 0.95).abs() <= 0.02;
    report(
        "5 (mixture ratio 0.95 ± 0.02)",
        pass,
        &format!("model ratio = {ratio:.4}"),
    );
}

#[test]
fn criterion_06_truth_table_against_published_values() {
    // run the actual CLI with its built-in defaults
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_dotgate"))
        .args(["truth-table"])
        .arg("--csv")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "truth-table command failed");
    let text = std::fs::read_to_string(&out).unwrap();
    let mut model = std::collections::BTreeMap::new();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        model.insert(
            (f[0].to_string(), f[1].to_string(), f[2].to_string()),
            f[3].parse::<f64>().unwrap(),
        );
    }
    let published = [
        (("g", "V", "V"), 0.58),
        (("g", "V", "H"), 0.38),
        (("g", "H", "V"), 0.35),
        (("g", "H", "H"), 0.61),
        (("minus", "V", "V"), 0.10),
        (("minus", "V", "H"), 0.98),
        (("minus", "H", "V"), 0.93),
        (("minus", "H", "H"), 0.07),
    ];
    let mut worst = 0.0f64;
    let mut detail = String::new();
    let mut pass = true;
    for ((state, i, j), reference) in published {
        let p = model[&(state.to_string(), i.to_string(), j.to_string())];
        let dev = (p - reference).abs();
        worst = worst.max(dev);
        if dev > 0.08 {
            pass = false;
        }
        detail.push_str(&format!(
            "{state} {i}->{j}: {p:.3} vs {reference} (|Δ| = {dev:.3}); "
        ));
    }
    report(
        "6 (truth table within ±0.08)",
        pass,
        &format!("worst |Δ| = {worst:.3}. {detail}"),
    );
}

#[test]
fn criterion_07_lifetime_model() {
    let model = dotgate::LifetimeModel64::from_ghz(12.9, 31.9, 530.0).unwrap();
    let mut pass = true;
    let mut detail = String::new();
    for (delta, reference) in [(113.0, 230.0), (169.0, 350.0), (230.0, 460.0)] {
        let t = dotgate::qubit_lifetime(delta, &model);
        let ok = (t - reference).abs() <= 0.15 * reference;
        pass &= ok;
        detail.push_str(&format!("Δ={delta}: {t:.1} ps vs {reference} ps; "));
    }
    let asymptote = dotgate::qubit_lifetime(1e6, &model);
    pass &= (asymptote - 530.0).abs() / 530.0 < 1e-3;
    detail.push_str(&format!("Δ→∞: {asymptote:.2} ps vs 530 ps"));
    report("7 (Purcell lifetimes within ±15%)", pass, &detail);
}

#[test]
fn criterion_08_ideal_gate_limit() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ideal.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_dotgate"))
        .args(["truth-table", "--ideal"])
        .arg("--csv")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut worst = 0.0f64;
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let cross = f[1] != f[2];
        let ideal = match (f[0], cross) {
            ("minus", true) | ("g", false) => 1.0,
            _ => 0.0,
        };
        let p: f64 = f[3].parse().unwrap();
        worst = worst.max((p - ideal).abs());
    }
    report(
        "8 (ideal cNOT permutation table)",
        worst < 1e-9,
        &format!("worst deviation from 0/1 entries = {worst:.2e}"),
    );
}

#[test]
fn criterion_09_fit_round_trip_and_coverage() {
    let start = std::time::Instant::now();
    let q = quad40();

    // noiseless recovery on the quoted device to 0.1%
    let truth = fitted_device();
    let probe = PulseSpectrum64::monochromatic(truth.nu_qd(), 1.0).unwrap();
    let grid: Vec<f64> = (0..=120)
        .map(|i| truth.nu_qd() - 45.0 + 0.75 * i as f64)
        .collect();
    let clean = synthesize(
        &truth,
        QdState::Ground,
        &probe,
        &grid,
        &BackgroundPoly64::zero(),
        NoiseSpec::None,
        0,
        &q,
    )
    .unwrap();
    let init = DeviceParams64::from_ghz(
        12.9 * 1.15,
        31.9 * 0.85,
        5.2 * 1.2,
        530.0,
        truth.nu_cavity(),
        truth.nu_qd(),
    )
    .unwrap();
    let problem = FitProblem {
        device: init,
        datasets: vec![FitDataset {
            spectrum: clean,
            pair: PolarizationPair::VH,
            state: QdState::Ground,
            scale: 1.0,
            background: BackgroundPoly64::zero(),
            probe_fwhm_ghz: 0.0,
        }],
        free: vec![ParamId::Coupling, ParamId::CavityDecay, ParamId::InhomWidth],
        bounds: vec![(1.0, 40.0), (5.0, 80.0), (0.1, 15.0)],
        quad: q.clone(),
        options: FitOptions::default(),
    };
    let result = fit(&problem).unwrap();
    let mut noiseless_worst = 0.0f64;
    for (id, t) in [
        (ParamId::Coupling, 12.9),
        (ParamId::CavityDecay, 31.9),
        (ParamId::InhomWidth, 5.2),
    ] {
        noiseless_worst = noiseless_worst.max((result.estimate(id).unwrap() / t - 1.0).abs());
    }

    // 100-seed coverage with 1% multiplicative noise (fast-path device)
    let nu0 = 325_521.0;
    let cov_truth = DeviceParams64::from_ghz(12.0, 30.0, 2.0, 530.0, nu0 - 2.0, nu0).unwrap();
    let cov_probe = PulseSpectrum64::monochromatic(nu0, 1.0).unwrap();
    let cov_grid: Vec<f64> = (0..=160).map(|i| nu0 - 45.0 + 0.5625 * i as f64).collect();
    // marginal coverage per parameter; the joint count is reported for
    // information only (three near-independent 95% intervals cover jointly
    // ~86% of the time even when perfectly calibrated)
    let mut inside = [0usize; 3];
    let mut inside_joint = 0usize;
    for seed in 0..100u64 {
        let data = synthesize(
            &cov_truth,
            QdState::Ground,
            &cov_probe,
            &cov_grid,
            &BackgroundPoly64::zero(),
            NoiseSpec::Multiplicative { sigma_rel: 0.01 },
            seed,
            &q,
        )
        .unwrap();
        let init =
            DeviceParams64::from_ghz(12.0 * 1.1, 30.0 * 0.92, 2.0 * 1.1, 530.0, nu0 - 2.0, nu0)
                .unwrap();
        let problem = FitProblem {
            device: init,
            datasets: vec![FitDataset {
                spectrum: data,
                pair: PolarizationPair::VH,
                state: QdState::Ground,
                scale: 1.0,
                background: BackgroundPoly64::zero(),
                probe_fwhm_ghz: 0.0,
            }],
            free: vec![
                ParamId::Coupling,
                ParamId::CavityDecay,
                ParamId::InhomWidth,
                ParamId::Scale(0),
            ],
            bounds: vec![(1.0, 40.0), (5.0, 80.0), (0.05, 15.0), (0.2, 5.0)],
            quad: q.clone(),
            options: FitOptions::default(),
        };
        let r = fit(&problem).unwrap();
        let covered: Vec<bool> = [
            (ParamId::Coupling, 12.0),
            (ParamId::CavityDecay, 30.0),
            (ParamId::InhomWidth, 2.0),
        ]
        .iter()
        .map(|&(id, t)| (r.estimate(id).unwrap() - t).abs() <= r.ci95_of(id).unwrap())
        .collect();
        for (slot, ok) in inside.iter_mut().zip(&covered) {
            *slot += *ok as usize;
        }
        if covered.iter().all(|&c| c) {
            inside_joint += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let min_coverage = *inside.iter().min().unwrap();
    let pass = noiseless_worst < 1e-3 && min_coverage >= 90 && elapsed < 120.0;
    report(
        "9 (fit round trip and ci95 coverage)",
        pass,
        &format!(
            "noiseless worst rel err = {noiseless_worst:.2e}, per-parameter coverage g/kappa/gamma_inhom = {}/{}/{} of 100 (joint {inside_joint}), runtime = {elapsed:.1} s",
            inside[0], inside[1], inside[2]
        ),
    );
}

#[test]
fn criterion_10_quadrature_convergence() {
    let d = fitted_device();
    let q40 = DiffusionQuadrature64::new(40).unwrap();
    let q80 = DiffusionQuadrature64::new(80).unwrap();
    let probe = PulseSpectrum64::new(nu_qd(), 4.2, 1.0).unwrap();
    let mut worst = 0.0f64;
    for pair in PolarizationPair::ALL {
        for state in [QdState::Minus, QdState::Ground, QdState::Mixture(0.93)] {
            let a = pulse_averaged_intensity(&probe, pair, state, &d, &q40).unwrap();
            let b = pulse_averaged_intensity(&probe, pair, state, &d, &q80).unwrap();
            worst = worst.max((a - b).abs() / a.abs().max(1e-12));
        }
    }
    // the ideal-limit reference curves double through the same machinery
    let table40 = dotgate::truth_table(
        &d,
        &probe,
        0.93,
        &ChannelBackgrounds64::zero(),
        nu_qd(),
        &q40,
    )
    .unwrap();
    let table80 = dotgate::truth_table(
        &d,
        &probe,
        0.93,
        &ChannelBackgrounds64::zero(),
        nu_qd(),
        &q80,
    )
    .unwrap();
    for ((_, _, a), (_, _, b)) in table40.iter().zip(table80.iter()) {
        worst = worst.max((a.probability - b.probability).abs());
    }
    report(
        "10 (quadrature doubling < 1e-8)",
        worst < 1e-8,
        &format!("worst relative change on doubling 40 → 80 nodes = {worst:.2e}"),
    );
}
