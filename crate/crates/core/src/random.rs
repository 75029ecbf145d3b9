//! Seeded random generators for points, unitaries and positive contractions.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::hermitian::PositiveContraction;
use crate::linalg::{self, ComplexMatrix, C64};
use crate::scalar_family::{BoundaryPoint, DiskPoint};

pub fn complex_normal<R: Rng>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Uniform point of the unit disk, scaled by `radius`.
pub fn disk_point<R: Rng>(rng: &mut R, radius: f64) -> C64 {
    let r = radius * rng.gen::<f64>().sqrt();
    C64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Random point of the open bidisk. Half the draws are uniform; the other
/// half push one or both coordinates to within `1e-6 .. 1e-1` of the torus.
pub fn bidisk_point<R: Rng>(rng: &mut R) -> DiskPoint {
    if rng.gen_bool(0.5) {
        return DiskPoint::new(disk_point(rng, 1.0), disk_point(rng, 1.0));
    }
    let mut near = || {
        let gap = 10f64.powf(-rng.gen_range(1.0..6.0));
        C64::from_polar(1.0 - gap, rng.gen_range(0.0..std::f64::consts::TAU))
    };
    let (l1, l2) = (near(), near());
    match rng.gen_range(0..3) {
        0 => DiskPoint::new(l1, l2),
        1 => DiskPoint::new(l1, disk_point(rng, 1.0)),
        _ => DiskPoint::new(disk_point(rng, 1.0), l2),
    }
}

pub fn torus_point<R: Rng>(rng: &mut R) -> BoundaryPoint {
    BoundaryPoint::from_turns(rng.gen(), rng.gen())
}

/// Orthonormalizes the columns of `m` (two passes of modified Gram-Schmidt).
fn orthonormalize(m: &mut ComplexMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    for j in 0..cols {
        let mut v = m.column(j);
        for _ in 0..2 {
            for k in 0..j {
                let q = m.column(k);
                let proj = linalg::inner(&v, &q);
                v = linalg::axpy(-proj, &q, &v);
            }
        }
        let nv = linalg::norm(&v);
        for i in 0..rows {
            m[(i, j)] = v[i] / nv;
        }
    }
}

/// Haar-like random unitary from orthonormalized Gaussian columns.
pub fn unitary<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let data = (0..n * n).map(|_| complex_normal(rng)).collect();
    let mut m = ComplexMatrix::from_vec(n, n, data).expect("nonempty");
    orthonormalize(&mut m);
    m
}

/// Random unitary whose first column is `first / ||first||`.
pub fn unitary_with_first_column<R: Rng>(first: &[C64], rng: &mut R) -> ComplexMatrix {
    let n = first.len();
    let mut data: Vec<C64> = (0..n * n).map(|_| complex_normal(rng)).collect();
    for i in 0..n {
        data[i * n] = first[i];
    }
    let mut m = ComplexMatrix::from_vec(n, n, data).expect("nonempty");
    orthonormalize(&mut m);
    m
}

/// Spectrum shapes used by the randomized suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    /// all eigenvalues inside `(0, 1)`
    Interior,
    /// eigenvalues in `{0, 1}` only
    Projection,
    /// at least one endpoint eigenvalue and at least one interior one
    Mixed,
}

/// Eigenvalues for a random positive contraction of dimension `n`.
/// Interior eigenvalues are drawn from `[0.15, 0.85]`.
pub fn spectrum<R: Rng>(n: usize, kind: SpectrumKind, rng: &mut R) -> Vec<f64> {
    let interior = |rng: &mut R| rng.gen_range(0.15..0.85);
    let endpoint = |rng: &mut R| if rng.gen_bool(0.5) { 1.0 } else { 0.0 };
    match kind {
        SpectrumKind::Interior => (0..n).map(|_| interior(rng)).collect(),
        SpectrumKind::Projection => (0..n).map(|_| endpoint(rng)).collect(),
        SpectrumKind::Mixed => {
            assert!(n >= 2, "mixed spectrum needs dimension >= 2");
            let mut s: Vec<f64> = (0..n)
                .map(|_| if rng.gen_bool(0.5) { endpoint(rng) } else { interior(rng) })
                .collect();
            s[0] = endpoint(rng);
            s[n - 1] = interior(rng);
            s
        }
    }
}

pub fn positive_contraction<R: Rng>(n: usize, kind: SpectrumKind, rng: &mut R) -> PositiveContraction {
    let spec = spectrum(n, kind, rng);
    let u = unitary(n, rng);
    PositiveContraction::from_spectrum(&u, &spec, crate::hermitian::DEFAULT_EIGTOL)
        .expect("spectrum lies in [0, 1]")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..9 {
            let u = unitary(n, &mut rng);
            let err = (&(&u.adjoint() * &u) - &ComplexMatrix::identity(n)).max_abs();
            assert!(err < 1e-14, "n = {n}: {err}");
        }
    }

    #[test]
    fn prescribed_first_column() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let first = [C64::new(1.0, 0.0), C64::new(0.0, 2.0), C64::new(-1.0, 1.0)];
        let u = unitary_with_first_column(&first, &mut rng);
        let nf = linalg::norm(&first);
        for i in 0..3 {
            assert!((u[(i, 0)] - first[i] / nf).norm() < 1e-15);
        }
        assert!((&(&u.adjoint() * &u) - &ComplexMatrix::identity(3)).max_abs() < 1e-14);
    }

    #[test]
    fn bidisk_points_are_interior() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!((0..10_000).all(|_| bidisk_point(&mut rng).is_interior()));
    }

    #[test]
    fn spectrum_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = positive_contraction(5, SpectrumKind::Projection, &mut rng);
        assert!(p.is_projection());
        let m = spectrum(4, SpectrumKind::Mixed, &mut rng);
        assert!(m.iter().any(|&y| y == 0.0 || y == 1.0));
        assert!(m.iter().any(|&y| y > 0.0 && y < 1.0));
    }
}
