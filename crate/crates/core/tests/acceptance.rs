//! The ten acceptance criteria, one test each, at the stated tolerances.
//! Each test prints a single `criterion N: PASS|FAIL ...` line; run with
//! `cargo test --test acceptance -- --nocapture --test-threads 1` to see them in order.

use std::f64::consts::PI;
use std::time::Instant;

use caralab::boundary::{self, BoundaryConfig, DerivativeTable, NontangentialGrid, FD_SCHEDULE};
use caralab::extrapolate::StepSchedule;
use caralab::hermitian::operator_norm;
use caralab::random::{self, SpectrumKind};
use caralab::realization::DEFAULT_ISOTOL;
use caralab::suite::{self, SuiteConfig, SuiteModel};
use caralab::{
    BoundaryPoint, Classification, Colligation, ComplexMatrix, Direction, GeneralizedRealization, OperatorPencil,
    PositiveContraction, ScalarInner, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(n: u32, pass: bool, detail: String) {
    println!("criterion {n:>2}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

fn ys() -> impl Iterator<Item = f64> {
    (1..10).map(|k| k as f64 / 10.0)
}

fn taus() -> [BoundaryPoint; 3] {
    [
        BoundaryPoint::one(),
        BoundaryPoint::new(C64::new(1.0, 0.0), C64::new(-1.0, 0.0)).unwrap(),
        BoundaryPoint::from_angles(PI / 3.0, -PI / 5.0),
    ]
}

fn rotation_model() -> GeneralizedRealization {
    let v = ComplexMatrix::from_real_rows(&[&[0.6, 0.8], &[0.8, -0.6]]).unwrap();
    GeneralizedRealization::new(
        OperatorPencil::new(PositiveContraction::diagonal(&[0.5]).unwrap(), BoundaryPoint::one()),
        Colligation::validate(&v, DEFAULT_ISOTOL).unwrap(),
    )
    .unwrap()
}

/// Suite models, constructed edge cases, and the rotation realization.
fn validated_models() -> Vec<SuiteModel> {
    let mut all = suite::generate_models(7, 50, 6);
    all.extend(suite::edge_cases());
    all.push(SuiteModel {
        label: "rotation".into(),
        kind: suite::ModelKind::Edge,
        expected: None,
        model: rotation_model(),
    });
    all
}

#[test]
fn criterion_01_scalar_model_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for y in ys() {
        for tau in taus() {
            let phi = ScalarInner::new(y, tau).unwrap();
            for _ in 0..1000 {
                let (l, m) = (random::bidisk_point(&mut rng), random::bidisk_point(&mut rng));
                worst = worst.max(phi.model_residual(&l, &m).unwrap());
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        1,
        worst <= 1e-10 && secs <= 5.0,
        format!("max residual {worst:.2e} (<= 1e-10), {secs:.3} s (<= 5 s)"),
    );
}

#[test]
fn criterion_02_ray_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let rs: Vec<f64> = (0..1000).map(|_| rng.gen_range(0.0..1.0)).collect();
    let mut worst = 0.0f64;
    for y in ys() {
        for tau in taus() {
            let phi = ScalarInner::new(y, tau).unwrap();
            for &r in &rs {
                let v = phi.eval(&tau.ray_point(1.0 - r)).unwrap();
                worst = worst.max((v - r).norm());
            }
        }
    }
    verdict(2, worst <= 1e-12, format!("max |phi(r tau) - r| {worst:.2e} (<= 1e-12)"));
}

#[test]
fn criterion_03_pencil_cross_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let kinds = [SpectrumKind::Interior, SpectrumKind::Projection, SpectrumKind::Mixed];
    let mut gap = 0.0f64;
    for i in 0..1000 {
        let n = rng.gen_range(1..=8);
        let kind = if n == 1 { SpectrumKind::Interior } else { kinds[i % 3] };
        let pencil = OperatorPencil::new(random::positive_contraction(n, kind, &mut rng), random::torus_point(&mut rng));
        let l = random::bidisk_point(&mut rng);
        let diff = &pencil.eval(&l).unwrap() - &pencil.spectral_form(&l).unwrap();
        gap = gap.max(operator_norm(&diff).unwrap());
    }
    let mut max_norm = 0.0f64;
    let mut samples = 0;
    for i in 0..10 {
        let n = rng.gen_range(2..=8);
        let pencil = OperatorPencil::new(
            random::positive_contraction(n, kinds[i % 3], &mut rng),
            random::torus_point(&mut rng),
        );
        let scan = pencil.contractivity_scan(1000, &mut rng).unwrap();
        max_norm = max_norm.max(scan.max_norm);
        samples += scan.samples;
    }
    verdict(
        3,
        gap <= 1e-10 && max_norm <= 1.0 + 1e-10 && samples >= 10_000,
        format!("eval vs spectral {gap:.2e} (<= 1e-10), max ||I_Y|| over {samples} points {max_norm:.15}"),
    );
}

#[test]
fn criterion_04_realization_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let kinds = [SpectrumKind::Interior, SpectrumKind::Projection, SpectrumKind::Mixed];
    let mut worst = 0.0f64;
    for i in 0..50 {
        let n = rng.gen_range(1..=8);
        let kind = if n == 1 { SpectrumKind::Interior } else { kinds[i % 3] };
        let y = random::positive_contraction(n, kind, &mut rng);
        let model = GeneralizedRealization::new(
            OperatorPencil::new(y, random::torus_point(&mut rng)),
            Colligation::random(n, &mut rng),
        )
        .unwrap();
        worst = worst.max(suite::max_model_residual(&model, 400, &mut rng).unwrap());
    }
    let shear = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
    let rejected = Colligation::validate(&shear, DEFAULT_ISOTOL).is_err();
    let forced = GeneralizedRealization::new(
        OperatorPencil::new(PositiveContraction::diagonal(&[0.5]).unwrap(), BoundaryPoint::one()),
        Colligation::unchecked(&shear).unwrap(),
    )
    .unwrap();
    let control = suite::max_model_residual(&forced, 400, &mut rng).unwrap();
    verdict(
        4,
        worst <= 1e-9 && rejected && control > 1e-3,
        format!("max residual {worst:.2e} (<= 1e-9), shear rejected {rejected}, shear residual {control:.3e} (> 1e-3)"),
    );
}

#[test]
fn criterion_05_derivative_agreement() {
    let mut worst = 0.0f64;
    let mut min_deltas = usize::MAX;
    for sm in suite::generate_models(7, 50, 6) {
        let model = &sm.model;
        let tau = model.tau();
        let limit = model.v_at_tau(StepSchedule::RAY);
        let deltas = boundary::pair_directions(&boundary::default_pairs(&tau));
        let analytic = DerivativeTable::analytic(model, &limit, &deltas).unwrap();
        let fd = DerivativeTable::finite_difference(model, &tau, &deltas, FD_SCHEDULE).unwrap();
        min_deltas = min_deltas.min(deltas.len());
        for (a, f) in analytic.entries.iter().zip(&fd.entries) {
            worst = worst.max((a.value - f.value).norm());
        }
    }

    let tau = BoundaryPoint::one();
    let half = ScalarInner::new(0.5, tau).unwrap();
    let swap = suite::edge_cases().remove(0).model;
    let rotation = rotation_model();
    let d11 = Direction::real(-1.0, -1.0);
    let d21 = Direction::real(-2.0, -1.0);
    let oracle = |m: &GeneralizedRealization, d: &Direction| {
        boundary::derivative_model(m, &m.v_at_tau(StepSchedule::RAY), d).unwrap()
    };
    let fd = |f: &dyn Fn(&caralab::DiskPoint) -> caralab::Result<C64>, d: &Direction| {
        boundary::derivative_fd(&f, &tau, d, FD_SCHEDULE).unwrap().value
    };
    let phi_half = |l: &caralab::DiskPoint| half.eval(l);
    let phi_rot = |l: &caralab::DiskPoint| rotation.phi(l);
    let hand = [
        (half.directional_derivative(&d11).unwrap(), -1.0),
        (fd(&phi_half, &d11), -1.0),
        (half.directional_derivative(&d21).unwrap(), -4.0 / 3.0),
        (fd(&phi_half, &d21), -4.0 / 3.0),
        (oracle(&swap, &d21), -4.0 / 3.0),
        (oracle(&rotation, &d11), -4.0),
        (fd(&phi_rot, &d11), -4.0),
    ];
    let hand_err = hand.iter().map(|(v, e)| (v - e).norm()).fold(0.0, f64::max);
    verdict(
        5,
        worst <= 1e-5 && min_deltas >= 10 && hand_err <= 1e-6,
        format!(
            "max |model - fd| {worst:.2e} (<= 1e-5) with >= {min_deltas} directions per model, hand oracles -1, -4/3, -4 within {hand_err:.1e}"
        ),
    );
}

#[test]
fn criterion_06_julia_identity() {
    let mut worst = 0.0f64;
    let mut alpha_gap = 0.0f64;
    let mut compared = 0;
    for sm in validated_models() {
        let model = &sm.model;
        for row in boundary::julia_quotient_ray(model, StepSchedule::RAY).unwrap() {
            worst = worst.max(row.residual);
        }
        let limit = model.v_at_tau(StepSchedule::RAY);
        if limit.converged {
            let grid = NontangentialGrid::build(model.tau(), 2.0, 12).unwrap();
            let alpha = boundary::detect_carapoint(model, &grid).unwrap().alpha;
            alpha_gap = alpha_gap.max((alpha - limit.norm().powi(2)).abs());
            compared += 1;
        }
    }
    verdict(
        6,
        worst <= 1e-9 && alpha_gap <= 1e-6 && compared > 0,
        format!("max Julia residual {worst:.2e} (<= 1e-9), max |alpha - ||v_tau||^2| {alpha_gap:.2e} (<= 1e-6) over {compared} models"),
    );
}

#[test]
fn criterion_07_classification_theorem() {
    let cfg = BoundaryConfig::default();
    let mut disagreements = Vec::new();
    let mut expected_misses = Vec::new();
    let mut n = 0;
    for sm in suite::generate_models(7, 50, 6).into_iter().chain(suite::edge_cases()) {
        let r = boundary::classify_model(&sm.model, &cfg).unwrap();
        n += 1;
        let regular = r.classification == Classification::Regular;
        if regular != (r.linearity_defect <= 1e-6) {
            disagreements.push(sm.label.clone());
        }
        if let Some(e) = sm.expected {
            if e != r.classification {
                expected_misses.push(sm.label.clone());
            }
        }
    }
    verdict(
        7,
        disagreements.is_empty() && expected_misses.is_empty(),
        format!("{n} models, disagreements {disagreements:?}, unexpected classes {expected_misses:?}"),
    );
}

#[test]
fn criterion_08_standard_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut residual = 0.0f64;
    let mut ratio = 0.0f64;
    let c = 2.0;
    for sm in validated_models() {
        residual = residual.max(suite::max_standard_residual(&sm.model, 100, &mut rng).unwrap());
        let grid = NontangentialGrid::build(sm.model.tau(), c, 12).unwrap();
        ratio = ratio.max(suite::standard_bound_ratio(&sm.model, &grid).unwrap());
    }
    verdict(
        8,
        residual <= 1e-9 && ratio <= c + 1.0,
        format!("max standard residual {residual:.2e} (<= 1e-9), max ||U^i v|| / ||v|| {ratio:.4} (<= c + 1 = 3)"),
    );
}

#[test]
fn criterion_09_scalar_b_point_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut worst = 0.0f64;
    let mut counts = Vec::new();
    for c in [1.0, 2.0, 5.0] {
        for y in ys() {
            let tau = random::torus_point(&mut rng);
            let phi = ScalarInner::new(y, tau).unwrap();
            let grid = NontangentialGrid::sample(tau, c, 1000, &mut rng).unwrap();
            counts.push(grid.len());
            let bound = 2.0 * c * (y * (1.0 - y)).sqrt() + 1.0;
            for p in grid.points() {
                worst = worst.max(phi.model_vector(&p.lambda).unwrap().norm() / bound);
            }
        }
    }
    let min_count = counts.into_iter().min().unwrap();
    verdict(
        9,
        worst <= 1.0 && min_count >= 1000,
        format!("max ||u|| / (2c sqrt(y(1-y)) + 1) {worst:.4} (<= 1) with {min_count} points per grid, c in {{1, 2, 5}}"),
    );
}

#[test]
fn criterion_10_whole_suite() {
    let cfg = SuiteConfig::default();
    let start = Instant::now();
    let first = suite::run_suite(&cfg).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let second = suite::run_suite(&cfg).unwrap();
    let same = serde_json::to_string(&first).unwrap() == serde_json::to_string(&second).unwrap();
    verdict(
        10,
        first.all_passed() && first.count == 50 && secs <= 60.0 && same,
        format!(
            "{}/{} models and {}/{} edge cases pass in {secs:.2} s (<= 60 s), rerun identical {same}",
            first.passed,
            first.count,
            first.edge_passed,
            first.edge_passed + first.edge_failed
        ),
    );
}
