//! Structural invariants as property tests over random inputs.

use caralab::boundary::{self, NontangentialGrid};
use caralab::extrapolate::StepSchedule;
use caralab::hermitian::operator_norm;
use caralab::random::{self, SpectrumKind};
use caralab::{
    BoundaryPoint, Colligation, ComplexMatrix, Direction, DiskPoint, GeneralizedRealization, OperatorPencil,
    PositiveContraction, ScalarInner, SpectralDecomposition, C64,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn disk_coord() -> impl Strategy<Value = C64> {
    (0.0..0.999f64, 0.0..std::f64::consts::TAU).prop_map(|(r, a)| C64::from_polar(r, a))
}

fn disk_point() -> impl Strategy<Value = DiskPoint> {
    (disk_coord(), disk_coord()).prop_map(|(a, b)| DiskPoint::new(a, b))
}

fn torus() -> impl Strategy<Value = BoundaryPoint> {
    (0.0..1.0f64, 0.0..1.0f64).prop_map(|(a, b)| BoundaryPoint::from_turns(a, b))
}

fn interior_y() -> impl Strategy<Value = f64> {
    0.01..0.99f64
}

/// Rotated direction with both real parts strictly negative.
fn admissible(tau: BoundaryPoint) -> impl Strategy<Value = Direction> {
    (0.2..3.0f64, -2.0..2.0f64, 0.2..3.0f64, -2.0..2.0f64)
        .prop_map(move |(a, b, c, d)| Direction::from_rotated(&tau, [C64::new(-a, b), C64::new(-c, d)]))
}

fn model(seed: u64) -> GeneralizedRealization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 1 + (seed % 6) as usize;
    let kind = match (n, seed % 3) {
        (1, _) | (_, 0) => SpectrumKind::Interior,
        (_, 1) => SpectrumKind::Projection,
        _ => SpectrumKind::Mixed,
    };
    let y = random::positive_contraction(n, kind, &mut rng);
    GeneralizedRealization::new(
        OperatorPencil::new(y, random::torus_point(&mut rng)),
        Colligation::random(n, &mut rng),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scalar_phi_is_schur(y in interior_y(), tau in torus(), l in disk_point()) {
        let phi = ScalarInner::new(y, tau).unwrap();
        prop_assert!(phi.eval(&l).unwrap().norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn scalar_model_identity(y in interior_y(), tau in torus(), l in disk_point(), m in disk_point()) {
        let phi = ScalarInner::new(y, tau).unwrap();
        prop_assert!(phi.model_residual(&l, &m).unwrap() <= 1e-10);
    }

    #[test]
    fn scalar_ray_identity(y in interior_y(), tau in torus(), r in 0.0..1.0f64) {
        let phi = ScalarInner::new(y, tau).unwrap();
        prop_assert!((phi.eval(&tau.ray_point(1.0 - r)).unwrap() - r).norm() <= 1e-12);
    }

    #[test]
    fn scalar_symmetry_under_y_swap(y in interior_y(), l in disk_point()) {
        let tau = BoundaryPoint::one();
        let swapped = DiskPoint::new(l.coords()[1], l.coords()[0]);
        let a = ScalarInner::new(y, tau).unwrap().eval(&l).unwrap();
        let b = ScalarInner::new(1.0 - y, tau).unwrap().eval(&swapped).unwrap();
        prop_assert!((a - b).norm() <= 1e-12);
    }

    #[test]
    fn derivative_is_positively_homogeneous(y in interior_y(), s in 0.1..10.0f64, seed in any::<u64>()) {
        let tau = BoundaryPoint::one();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = Direction::real(-rand::Rng::gen_range(&mut rng, 0.2..3.0), -rand::Rng::gen_range(&mut rng, 0.2..3.0));
        let phi = ScalarInner::new(y, tau).unwrap();
        let one = phi.directional_derivative(&d).unwrap();
        let scaled = phi.directional_derivative(&d.scale(s)).unwrap();
        prop_assert!((scaled - one * s).norm() <= 1e-12 * (1.0 + s * one.norm()));
    }

    #[test]
    fn scalar_derivative_matches_fd(y in interior_y(), tau in torus(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rot = [
            C64::new(-rand::Rng::gen_range(&mut rng, 0.2..3.0), rand::Rng::gen_range(&mut rng, -2.0..2.0)),
            C64::new(-rand::Rng::gen_range(&mut rng, 0.2..3.0), rand::Rng::gen_range(&mut rng, -2.0..2.0)),
        ];
        let d = Direction::from_rotated(&tau, rot);
        let phi = ScalarInner::new(y, tau).unwrap();
        let fd = boundary::derivative_fd(&phi, &tau, &d, boundary::FD_SCHEDULE).unwrap();
        prop_assert!((fd.value - phi.directional_derivative(&d).unwrap()).norm() <= 1e-6);
    }

    #[test]
    fn pencil_agrees_with_spectral_form(seed in any::<u64>(), l in disk_point()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 + (seed % 8) as usize;
        let kind = if n == 1 { SpectrumKind::Interior } else { SpectrumKind::Mixed };
        let pencil = OperatorPencil::new(random::positive_contraction(n, kind, &mut rng), random::torus_point(&mut rng));
        let e = pencil.eval(&l).unwrap();
        prop_assert!(operator_norm(&(&e - &pencil.spectral_form(&l).unwrap())).unwrap() <= 1e-10);
        prop_assert!(operator_norm(&e).unwrap() <= 1.0 + 1e-10);
    }

    #[test]
    fn pencil_is_identity_at_tau(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 + (seed % 5) as usize;
        let tau = random::torus_point(&mut rng);
        let pencil = OperatorPencil::new(random::positive_contraction(n, SpectrumKind::Interior, &mut rng), tau);
        let at = pencil.eval(&tau.as_disk_point()).unwrap();
        prop_assert!((&at - &ComplexMatrix::identity(n)).max_abs() <= 1e-12);
    }

    #[test]
    fn pencil_on_ray_is_scalar(seed in any::<u64>(), t in 0.001..1.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 + (seed % 5) as usize;
        let tau = random::torus_point(&mut rng);
        let pencil = OperatorPencil::new(random::positive_contraction(n, SpectrumKind::Interior, &mut rng), tau);
        let at = pencil.eval(&tau.ray_point(t)).unwrap();
        let expect = ComplexMatrix::identity(n).scale(C64::new(1.0 - t, 0.0));
        prop_assert!((&at - &expect).max_abs() <= 1e-12);
    }

    #[test]
    fn spectral_decomposition_reconstructs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 + (seed % 8) as usize;
        let y = random::positive_contraction(n, SpectrumKind::Interior, &mut rng);
        let d: &SpectralDecomposition = y.decomposition();
        let mut sum = ComplexMatrix::zeros(n, n);
        let mut recon = ComplexMatrix::zeros(n, n);
        for (lam, p) in d.iter() {
            prop_assert!((&(p * p) - p).max_abs() <= 1e-10);
            sum = &sum + p;
            recon = &recon + &p.scale(C64::new(lam, 0.0));
        }
        prop_assert!((&sum - &ComplexMatrix::identity(n)).max_abs() <= 1e-10);
        prop_assert!((&recon - y.matrix()).max_abs() <= 1e-10);
    }

    #[test]
    fn kernel_projectors_partition(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2 + (seed % 6) as usize;
        let y = random::positive_contraction(n, SpectrumKind::Mixed, &mut rng);
        let k = y.kernel_projectors();
        let total = &(&k.e1 + &k.e0) + &k.e;
        prop_assert!((&total - &ComplexMatrix::identity(n)).max_abs() <= 1e-10);
        prop_assert!((&(y.matrix() * &k.e1) - &k.e1).max_abs() <= 1e-10);
        prop_assert!((y.matrix() * &k.e0).max_abs() <= 1e-10);
    }

    #[test]
    fn realization_identity(seed in any::<u64>(), l in disk_point(), m in disk_point()) {
        let model = model(seed);
        prop_assert!(model.phi(&l).unwrap().norm() <= 1.0 + 1e-10);
        prop_assert!(model.model_residual(&l, &m).unwrap() <= 1e-9);
    }

    #[test]
    fn standard_model_identity(seed in any::<u64>(), l in disk_point(), m in disk_point()) {
        prop_assert!(boundary::standard_model_residual(&model(seed), &l, &m).unwrap() <= 1e-9);
    }

    #[test]
    fn julia_quotient_matches_state_norm(seed in any::<u64>()) {
        // For any V, 1 - |phi|^2 = (1 - r^2) ||v||^2 + y*(1 - V*V) y with y = (r v, 1),
        // so the stored V's rounding defect enters the quotient divided by 1 - r^2.
        let m = model(seed);
        let defect = m.colligation().isometry_defect();
        for row in boundary::julia_quotient_ray(&m, StepSchedule::RAY).unwrap() {
            let intrinsic = (row.lhs + 1.0) * defect / (row.t * (2.0 - row.t));
            prop_assert!(row.residual <= 1e-9 + 2.0 * intrinsic, "t = {} residual {} intrinsic {}", row.t, row.residual, intrinsic);
        }
    }

    #[test]
    fn model_derivative_is_homogeneous(seed in any::<u64>(), s in 0.1..10.0f64) {
        let m = model(seed);
        let tau = m.tau();
        let limit = m.v_at_tau(StepSchedule::RAY);
        let d = Direction::from_rotated(&tau, [C64::new(-1.0, 0.3), C64::new(-0.7, -0.2)]);
        let one = boundary::derivative_model(&m, &limit, &d).unwrap();
        let scaled = boundary::derivative_model(&m, &limit, &d.scale(s)).unwrap();
        prop_assert!((scaled - one * s).norm() <= 1e-10 * (1.0 + s * one.norm()));
    }

    #[test]
    fn grid_points_lie_in_cone(tau in torus(), c in 1.0..6.0f64, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let grid = NontangentialGrid::sample(tau, c, 64, &mut rng).unwrap();
        prop_assert_eq!(grid.len(), 64);
        for p in grid.points() {
            prop_assert!(p.lambda.is_interior());
            prop_assert!(boundary::aperture_ratio(&tau, &p.lambda) <= c * (1.0 + 1e-9));
        }
    }

    #[test]
    fn admissible_directions_enter_bidisk(
        (tau, d) in torus().prop_flat_map(|tau| (Just(tau), admissible(tau))),
        frac in 0.01..0.99f64,
    ) {
        prop_assert!(d.is_admissible(&tau));
        let t = frac * d.max_step(&tau).min(1.0);
        prop_assert!(tau.shifted(&d, t).is_interior());
    }

    #[test]
    fn positive_contraction_snaps_endpoints(a in 0.0..1e-12f64, b in 0.0..1e-12f64) {
        let y = PositiveContraction::diagonal(&[-a, 1.0 + b]).unwrap();
        let k = y.kernel_projectors();
        prop_assert!(k.e.max_abs() <= 1e-15);
    }
}
