//! Acceptance suite: one test per release criterion. Each prints a PASS line
//! with its measured margin (visible under `--nocapture`).

use noma_secrecy::channel::{sample_channel, ChannelSample, ChannelStream, ConfigParams, SystemConfig};
use noma_secrecy::config::LoadedConfig;
use noma_secrecy::montecarlo::{branch_occupancy, sop_monte_carlo};
use noma_secrecy::sinr::{stage1_sinrs, stage2_sinr_u1, stage2_sinr_u2, RiModel};
use noma_secrecy::sop_asymptotic::sop_asymptotic;
use noma_secrecy::sop_exact::{
    imperfect_sic_probability_u1, imperfect_sic_probability_u2, quad_coeffs_u1, root_window,
    sop_exact, Method,
};
use noma_secrecy::sweep::{
    emit, parse_model, run_sweep, Axis, OutputFormat, Scale, SweepSpec,
};

/// Small deterministic generator for drawing random test configurations.
struct TestRng(u64);

impl TestRng {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        lo + (hi - lo) * u
    }

    fn log_uniform(&mut self, lo_exp: f64, hi_exp: f64) -> f64 {
        10f64.powf(self.uniform(lo_exp, hi_exp))
    }

    fn exponential(&mut self, lambda: f64) -> f64 {
        let u = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        -lambda * u.ln()
    }
}

fn db(v: f64) -> f64 {
    10f64.powf(v / 10.0)
}

fn grid_config(alpha: f64, rho_db: f64, gamma_th: f64, rth: f64) -> SystemConfig {
    SystemConfig::defaults()
        .with_alpha(alpha)
        .unwrap()
        .with_transmit_snr(db(rho_db))
        .unwrap()
        .with_gamma_th(gamma_th)
        .unwrap()
        .with_target_rates(rth, rth)
        .unwrap()
}

#[test]
fn criterion_1_oracle_equivalence() {
    let mut worst_margin = f64::NEG_INFINITY;
    let mut worst_at = String::new();
    let mut seed = 0u64;
    for alpha in [0.2, 0.33, 0.4, 0.7] {
        for rho_db in [50.0, 60.0, 70.0] {
            for zeta in [1e-11, 1e-10, 1e-9] {
                for gamma_th in [0.5, 1.0, 2.0] {
                    for rth in [0.1, 0.5] {
                        let c = grid_config(alpha, rho_db, gamma_th, rth);
                        let (e1, e2) = sop_exact(&c, zeta).unwrap();
                        seed += 1;
                        let (m1, m2) = sop_monte_carlo(
                            &c,
                            &RiModel::Proposed { zeta },
                            1_000_000,
                            seed,
                        )
                        .unwrap();
                        for (e, m) in [(e1, m1), (e2, m2)] {
                            let tol = (3.0 * m.std_error.unwrap()).max(2e-3);
                            let diff = (e.value - m.value).abs();
                            let margin = diff - tol;
                            if margin > worst_margin {
                                worst_margin = margin;
                                worst_at = format!(
                                    "alpha={alpha} rho={rho_db}dB zeta={zeta} \
                                     gamma_th={gamma_th} rth={rth} user={}",
                                    e.user
                                );
                            }
                            assert!(
                                diff <= tol,
                                "exact {} vs mc {} (tol {tol}) at {worst_at}",
                                e.value,
                                m.value
                            );
                        }
                    }
                }
            }
        }
    }
    println!(
        "criterion 1 (oracle equivalence, 216-point grid, 1e6 samples): PASS \
         (worst margin {worst_margin:.2e} at {worst_at})"
    );
}

#[test]
fn criterion_2_asymptotic_convergence() {
    let zeta = 1e-10;
    let mut gaps = Vec::new();
    for rho_db in [80.0, 90.0] {
        let c = SystemConfig::defaults()
            .with_alpha(0.33)
            .unwrap()
            .with_transmit_snr(db(rho_db))
            .unwrap();
        let (e1, e2) = sop_exact(&c, zeta).unwrap();
        let (a1, a2) = sop_asymptotic(&c, zeta);
        let g1 = (e1.value - a1.value).abs();
        let g2 = (e2.value - a2.value).abs();
        assert!(g1 <= 1e-2, "user 1 gap {g1} at {rho_db} dB");
        assert!(g2 <= 1e-2, "user 2 gap {g2} at {rho_db} dB");
        gaps.push((g1, g2));
    }
    assert!(gaps[1].0 <= gaps[0].0, "user 1 gap grew: {gaps:?}");
    assert!(gaps[1].1 <= gaps[0].1, "user 2 gap grew: {gaps:?}");
    println!(
        "criterion 2 (asymptotic convergence): PASS \
         (gaps 80dB=({:.2e},{:.2e}) 90dB=({:.2e},{:.2e}))",
        gaps[0].0, gaps[0].1, gaps[1].0, gaps[1].1
    );
}

#[test]
fn criterion_3_branch_occupancy_closed_form() {
    let n = 1_000_000u64;
    let model = RiModel::Proposed { zeta: 1e-10 };
    let mut rng = TestRng(2026);
    let mut forced_seen = 0u32;
    for i in 0..20u64 {
        let alpha = rng.uniform(0.1, 0.9);
        let gamma_th = rng.log_uniform(-0.5, 0.5);
        let rho_db = rng.uniform(50.0, 80.0);
        let d1 = rng.uniform(30.0, 80.0);
        let d2 = rng.uniform(80.0, 150.0);
        let c = SystemConfig::from_params(ConfigParams {
            alpha,
            d1_m: d1,
            d2_m: d2,
            gamma_th,
            total_power_watts: db(rho_db) * 1e-12,
            ..ConfigParams::default()
        })
        .unwrap();
        let p1 = imperfect_sic_probability_u1(&c);
        let p2 = imperfect_sic_probability_u2(&c);
        let (o1, o2) = branch_occupancy(&c, &model, n, 7000 + i).unwrap();
        for (cf, oc, user) in [(p1, o1, 1), (p2, o2, 2)] {
            let sigma = ((cf * (1.0 - cf)).max(1e-12) / n as f64).sqrt();
            assert!(
                (cf - oc).abs() <= 3.0 * sigma + 1e-9,
                "config {i} user {user}: closed form {cf} vs occupancy {oc} (sigma {sigma:.2e})"
            );
        }
        if (1.0 - alpha) / alpha <= gamma_th {
            forced_seen += 1;
            assert_eq!(p1, 1.0);
            assert_eq!(o1, 1.0, "forced imperfect branch must be certain (user 1)");
        }
        if alpha / (1.0 - alpha) <= gamma_th {
            forced_seen += 1;
            assert_eq!(p2, 1.0);
            assert_eq!(o2, 1.0, "forced imperfect branch must be certain (user 2)");
        }
    }
    // explicit forced cases on both sides of the bound
    let c = SystemConfig::defaults().with_alpha(0.7).unwrap();
    let (o1, _) = branch_occupancy(&c, &model, 100_000, 99).unwrap();
    assert_eq!(o1, 1.0);
    let c = SystemConfig::defaults().with_alpha(0.3).unwrap();
    let (_, o2) = branch_occupancy(&c, &model, 100_000, 99).unwrap();
    assert_eq!(o2, 1.0);
    forced_seen += 2;
    println!(
        "criterion 3 (branch occupancy vs closed form, 20 random configs): PASS \
         ({forced_seen} forced cases, all exactly 1.0)"
    );
}

#[test]
fn criterion_4_degenerate_model_identities() {
    let c = SystemConfig::defaults().with_alpha(0.33).unwrap();
    let models = [
        RiModel::Proposed { zeta: 0.0 },
        RiModel::Fixed { beta: 0.0 },
        RiModel::Constant {
            gamma_cap_21: 0.0,
            gamma_cap_12: 0.0,
        },
    ];
    let mut stream = ChannelStream::new(314);
    let mut perfect_branch_seen = 0u32;
    for _ in 0..10_000 {
        let s = sample_channel(&c, &mut stream);
        let (ref1, flag1) = stage2_sinr_u1(&s, &c, &RiModel::PerfectSic);
        let (ref2, _) = stage2_sinr_u2(&s, &c, &RiModel::PerfectSic);
        assert!(flag1);
        let (g21, _) = stage1_sinrs(&s, &c);
        if g21 >= c.gamma_th() {
            perfect_branch_seen += 1;
        }
        for m in &models {
            let (g11, _) = stage2_sinr_u1(&s, &c, m);
            let (g22, _) = stage2_sinr_u2(&s, &c, m);
            assert_eq!(g11.to_bits(), ref1.to_bits(), "{m:?}");
            assert_eq!(g22.to_bits(), ref2.to_bits(), "{m:?}");
        }
    }
    // the identity must hold across both first-stage branches
    assert!(perfect_branch_seen > 0 && perfect_branch_seen < 10_000);
    println!(
        "criterion 4 (degenerate-model bit identities, 1e4 samples): PASS \
         ({perfect_branch_seen} samples on the perfect branch)"
    );
}

#[test]
fn criterion_5_window_event_equivalence() {
    let mut rng = TestRng(20260815);
    let mut disagreements = 0u32;
    for _ in 0..10_000 {
        let alpha = rng.uniform(0.1, 0.9);
        let zeta = rng.log_uniform(-12.0, -9.0);
        let rho_db = rng.uniform(50.0, 70.0);
        let gamma_th = rng.log_uniform(-0.5, 0.5);
        let rth = rng.uniform(0.05, 1.0);
        let c = grid_config(alpha, rho_db, gamma_th, rth);
        let y = rng.exponential(c.lambda2());
        let g1 = rng.exponential(c.lambda1());

        // direct predicate on the imperfect-branch SINR algebra
        let (gamma_21, gamma_12) = stage1_sinrs(&ChannelSample { g1, g2: y }, &c);
        let denom = (gamma_th - gamma_21) * zeta + 1.0 / c.transmit_snr();
        assert!(denom > 0.0);
        let gamma_11 = alpha * g1 / denom;
        let direct = (1.0 + gamma_11) / (1.0 + gamma_12) < c.pi1();

        // window from the quadratic roots
        let (v, w) = root_window(&quad_coeffs_u1(y, &c, zeta));
        let window = v < g1 && g1 < w;
        if direct != window {
            disagreements += 1;
        }
    }
    assert_eq!(disagreements, 0);
    println!("criterion 5 (outage window event equivalence, 1e4 triples): PASS");
}

#[test]
fn criterion_6_monotonicity_suite() {
    let tol = 1e-9;
    let zeta = 1e-10;

    // (a) non-decreasing in the target secrecy rate, 11 points 0.05..1.0
    let mut prev = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for i in 0..11 {
        let r = 0.05 + 0.95 * i as f64 / 10.0;
        let c = SystemConfig::defaults().with_target_rates(r, r).unwrap();
        let (s1, s2) = sop_exact(&c, zeta).unwrap();
        assert!(s1.value >= prev.0 - tol, "S1 fell at rth={r}");
        assert!(s2.value >= prev.1 - tol, "S2 fell at rth={r}");
        prev = (s1.value, s2.value);
    }

    // (b) non-decreasing in zeta, 7-point log sweep
    let spec = SweepSpec {
        axis: Axis::Zeta,
        start: 1e-12,
        stop: 1e-6,
        points: 7,
        scale: Scale::Log,
        methods: vec![Method::Exact],
        models: vec![parse_model("proposed").unwrap()],
        mc_samples: 1,
        seed: 0,
    };
    let rows = run_sweep(&spec, &LoadedConfig::defaults()).unwrap();
    for pair in rows.windows(2) {
        for u in 0..2 {
            assert!(
                pair[1].estimates[u].value >= pair[0].estimates[u].value - tol,
                "S{} fell between zeta={} and {}",
                u + 1,
                pair[0].axis_value,
                pair[1].axis_value
            );
        }
    }

    // (c) non-increasing in received SNR, 6 points 40..90 dB
    let spec = SweepSpec {
        axis: Axis::ReceivedSnrDb,
        start: 40.0,
        stop: 90.0,
        points: 6,
        scale: Scale::Linear,
        methods: vec![Method::Exact],
        models: vec![parse_model("proposed").unwrap()],
        mc_samples: 1,
        seed: 0,
    };
    let rows = run_sweep(&spec, &LoadedConfig::defaults()).unwrap();
    for pair in rows.windows(2) {
        for u in 0..2 {
            assert!(
                pair[1].estimates[u].value <= pair[0].estimates[u].value + tol,
                "S{} rose between {} and {} dB",
                u + 1,
                pair[0].axis_value,
                pair[1].axis_value
            );
        }
    }
    println!("criterion 6 (monotonicity in target rate, zeta, received SNR): PASS");
}

#[test]
fn criterion_7_structural_trends() {
    let alpha_spec = |_d2: f64| SweepSpec {
        axis: Axis::Alpha,
        start: 0.01,
        stop: 0.99,
        points: 99,
        scale: Scale::Linear,
        methods: vec![Method::Exact],
        models: vec![parse_model("proposed").unwrap()],
        mc_samples: 1,
        seed: 0,
    };
    let mut curves = Vec::new();
    for d2 in [80.0, 120.0] {
        let base = LoadedConfig {
            system: SystemConfig::from_params(ConfigParams {
                d1_m: 40.0,
                d2_m: d2,
                ..ConfigParams::default()
            })
            .unwrap(),
            zeta: 1e-10,
        };
        let rows = run_sweep(&alpha_spec(d2), &base).unwrap();
        let s1: Vec<f64> = rows.iter().map(|r| r.estimates[0].value).collect();
        let s2: Vec<f64> = rows.iter().map(|r| r.estimates[1].value).collect();
        for (name, s) in [("S1", &s1), ("S2", &s2)] {
            let argmin = s
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .unwrap()
                .0;
            assert!(
                argmin > 0 && argmin < 98,
                "{name} argmin at edge (index {argmin}) for d2={d2}"
            );
        }
        curves.push((s1, s2));
    }
    // moving the far user away helps the near user and hurts the far user
    for i in 0..99 {
        assert!(
            curves[1].0[i] <= curves[0].0[i] + 1e-9,
            "S1 rose with d2 at point {i}"
        );
        assert!(
            curves[1].1[i] >= curves[0].1[i] - 1e-9,
            "S2 fell with d2 at point {i}"
        );
    }

    // widening the mean-gain ratio has the opposite effect per user
    let spec = SweepSpec {
        axis: Axis::GainRatio,
        start: 2.0,
        stop: 32.0,
        points: 5,
        scale: Scale::Log,
        methods: vec![Method::Exact],
        models: vec![parse_model("proposed").unwrap()],
        mc_samples: 1,
        seed: 0,
    };
    let rows = run_sweep(&spec, &LoadedConfig::defaults()).unwrap();
    for pair in rows.windows(2) {
        assert!(
            pair[1].estimates[0].value <= pair[0].estimates[0].value + 1e-9,
            "S1 rose with the gain ratio"
        );
        assert!(
            pair[1].estimates[1].value >= pair[0].estimates[1].value - 1e-9,
            "S2 fell with the gain ratio"
        );
    }
    println!("criterion 7 (interior optimal alpha, distance and gain-ratio trends): PASS");
}

#[test]
fn criterion_8_byte_identical_artifacts() {
    let spec = SweepSpec {
        axis: Axis::Alpha,
        start: 0.25,
        stop: 0.75,
        points: 5,
        scale: Scale::Linear,
        methods: vec![Method::Exact, Method::Asymptotic, Method::MonteCarlo],
        models: vec![parse_model("proposed").unwrap(), parse_model("perfect").unwrap()],
        mc_samples: 400_000,
        seed: 42,
    };
    let base = LoadedConfig::defaults();
    let render = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let rows = run_sweep(&spec, &base).unwrap();
            let mut csv = Vec::new();
            emit(&rows, &spec, OutputFormat::Csv, &mut csv).unwrap();
            let mut json = Vec::new();
            emit(&rows, &spec, OutputFormat::Json, &mut json).unwrap();
            (csv, json)
        })
    };
    let (csv1, json1) = render(1);
    let (csv4, json4) = render(4);
    assert_eq!(csv1, csv4, "CSV differs across thread counts");
    assert_eq!(json1, json4, "JSON differs across thread counts");
    let (csv1b, json1b) = render(1);
    assert_eq!(csv1, csv1b, "CSV differs across repeated runs");
    assert_eq!(json1, json1b);
    assert!(!csv1.is_empty() && csv1.starts_with(b"axis,"));
    println!(
        "criterion 8 (byte-identical artifacts across thread counts): PASS \
         ({} CSV bytes)",
        csv1.len()
    );
}
