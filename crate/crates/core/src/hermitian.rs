//! Hermitian spectral decomposition, positive contractions and their
//! functional calculus.
//!
//! Eigenpairs come from nalgebra's Hermitian QR iteration; this module adds
//! eigenvalue clustering, snapping to the endpoints `0` and `1`, and the
//! calculus on top.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// Default clustering and snapping tolerance for eigenvalues.
pub const DEFAULT_EIGTOL: f64 = 1e-9;

const MAX_ITERATIONS: usize = 10_000;

/// Eigenvalues (ascending) and unitary eigenvector matrix (columns) of a Hermitian matrix.
///
/// The input must already be Hermitian; only its Hermitian part is used.
pub fn eigh(a: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !a.is_square() {
        return Err(Error::Shape("eigendecomposition requires a square matrix".into()));
    }
    let eig = nalgebra::SymmetricEigen::try_new(a.hermitian_part().to_nalgebra(), f64::EPSILON, MAX_ITERATIONS)
        .ok_or(Error::NoConvergence { iterations: MAX_ITERATIONS })?;
    let mut order: Vec<usize> = (0..a.rows()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let vecs = eig.eigenvectors.select_columns(&order);
    Ok((
        order.iter().map(|&i| eig.eigenvalues[i]).collect(),
        ComplexMatrix::from_nalgebra(&vecs),
    ))
}

/// Operator 2-norm, from the spectrum of the Hermitian square `A* A`.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    let square = &a.adjoint() * a;
    let (vals, _) = eigh(&square)?;
    Ok(vals.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// Distinct eigenvalues with their orthogonal spectral projectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    projectors: Vec<ComplexMatrix>,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &ComplexMatrix)> {
        self.eigenvalues.iter().copied().zip(&self.projectors)
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].rows()
    }

    /// `sum_j f(y_j) E_j`
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.dim();
        self.iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, (y, e)| acc.add_scaled(f(y), e))
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|y| C64::new(y, 0.0))
    }
}

/// Spectral decomposition of a Hermitian matrix; eigenvalues closer than
/// `eigtol` are merged into a single projector.
pub fn spectral_decompose(a: &ComplexMatrix, eigtol: f64) -> Result<SpectralDecomposition> {
    if !a.is_square() {
        return Err(Error::Shape("spectral decomposition requires a square matrix".into()));
    }
    let defect = a.hermitian_defect();
    if defect > eigtol {
        return Err(Error::NotHermitian { defect, tol: eigtol });
    }
    let (vals, vecs) = eigh(a)?;
    Ok(cluster(&vals, &vecs, eigtol))
}

fn cluster(vals: &[f64], vecs: &ComplexMatrix, eigtol: f64) -> SpectralDecomposition {
    let n = vals.len();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match groups.last_mut() {
            Some(g) if vals[i] - vals[*g.last().unwrap()] <= eigtol => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut eigenvalues = Vec::with_capacity(groups.len());
    let mut projectors = Vec::with_capacity(groups.len());
    for g in groups {
        eigenvalues.push(g.iter().map(|&i| vals[i]).sum::<f64>() / g.len() as f64);
        let mut p = ComplexMatrix::zeros(n, n);
        for &k in &g {
            let col = vecs.column(k);
            p = &p + &ComplexMatrix::outer(&col, &col);
        }
        projectors.push(p);
    }
    SpectralDecomposition {
        eigenvalues,
        projectors,
    }
}

/// A Hermitian operator with spectrum in `[0, 1]`.
///
/// The stored matrix is rebuilt from the (snapped) decomposition, so the
/// matrix and its spectral form describe exactly the same operator.
#[derive(Debug, Clone)]
pub struct PositiveContraction {
    matrix: ComplexMatrix,
    decomposition: SpectralDecomposition,
    eigtol: f64,
}

impl PositiveContraction {
    pub fn new(a: &ComplexMatrix, eigtol: f64) -> Result<Self> {
        validate_positive_contraction(a, eigtol)
    }

    /// Diagonal positive contraction with the given spectrum.
    pub fn diagonal(spectrum: &[f64]) -> Result<Self> {
        Self::new(&ComplexMatrix::from_diag(spectrum), DEFAULT_EIGTOL)
    }

    /// `U diag(spectrum) U*` for a unitary `U`.
    pub fn from_spectrum(unitary: &ComplexMatrix, spectrum: &[f64], eigtol: f64) -> Result<Self> {
        let d = ComplexMatrix::from_diag(spectrum);
        let a = &(unitary * &d) * &unitary.adjoint();
        Self::new(&a.hermitian_part(), eigtol)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomposition
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eigtol(&self) -> f64 {
        self.eigtol
    }

    /// True when `sigma(Y)` meets `(0, 1)` nowhere.
    pub fn is_projection(&self) -> bool {
        self.decomposition
            .eigenvalues
            .iter()
            .all(|&y| y == 0.0 || y == 1.0)
    }

    pub fn apply_calculus(&self, f: impl Fn(f64) -> C64) -> Result<ComplexMatrix> {
        apply_calculus(self, f)
    }

    pub fn kernel_projectors(&self) -> KernelProjectors {
        kernel_projectors(self, self.eigtol)
    }
}

/// Checks that `a` is Hermitian with spectrum in `[-eigtol, 1 + eigtol]`;
/// eigenvalues within `eigtol` of 0 or 1 are snapped onto the endpoint.
pub fn validate_positive_contraction(a: &ComplexMatrix, eigtol: f64) -> Result<PositiveContraction> {
    let mut dec = spectral_decompose(a, eigtol)?;
    for y in &dec.eigenvalues {
        if *y < -eigtol || *y > 1.0 + eigtol {
            return Err(Error::SpectrumOutOfRange { eigenvalue: *y });
        }
    }
    for y in dec.eigenvalues.iter_mut() {
        if y.abs() <= eigtol {
            *y = 0.0;
        } else if (*y - 1.0).abs() <= eigtol {
            *y = 1.0;
        }
        *y = y.clamp(0.0, 1.0);
    }
    merge_equal(&mut dec);
    let matrix = dec.reconstruct().hermitian_part();
    Ok(PositiveContraction {
        matrix,
        decomposition: dec,
        eigtol,
    })
}

// Snapping can make two neighbouring clusters coincide at an endpoint.
fn merge_equal(dec: &mut SpectralDecomposition) {
    let mut vals: Vec<f64> = Vec::new();
    let mut projs: Vec<ComplexMatrix> = Vec::new();
    for (y, p) in dec.eigenvalues.drain(..).zip(dec.projectors.drain(..)) {
        if vals.last() == Some(&y) {
            let last = projs.last_mut().unwrap();
            *last = &*last + &p;
        } else {
            vals.push(y);
            projs.push(p);
        }
    }
    dec.eigenvalues = vals;
    dec.projectors = projs;
}

/// `f(Y) = sum_j f(y_j) E_j`. Fails if `f` is not finite at some eigenvalue.
pub fn apply_calculus(y: &PositiveContraction, f: impl Fn(f64) -> C64) -> Result<ComplexMatrix> {
    let mut values = Vec::with_capacity(y.decomposition.eigenvalues.len());
    for &eig in &y.decomposition.eigenvalues {
        let fy = f(eig);
        if !fy.re.is_finite() || !fy.im.is_finite() {
            return Err(Error::SingularCalculus { eigenvalue: eig });
        }
        values.push(fy);
    }
    let n = y.dim();
    Ok(values
        .into_iter()
        .zip(&y.decomposition.projectors)
        .fold(ComplexMatrix::zeros(n, n), |acc, (fy, e)| acc.add_scaled(fy, e)))
}

/// Projectors onto the eigenspaces of 1 and 0 and onto `N^perp`, where `N = ker Y(1 - Y)`.
#[derive(Debug, Clone)]
pub struct KernelProjectors {
    /// eigenspace of the eigenvalue 1
    pub e1: ComplexMatrix,
    /// eigenspace of the eigenvalue 0
    pub e0: ComplexMatrix,
    /// `1 - E1 - E0`
    pub e: ComplexMatrix,
}

impl KernelProjectors {
    /// Projector onto `N = ker Y(1 - Y)`.
    pub fn kernel(&self) -> ComplexMatrix {
        &self.e1 + &self.e0
    }
}

pub fn kernel_projectors(y: &PositiveContraction, eigtol: f64) -> KernelProjectors {
    let n = y.dim();
    let mut e1 = ComplexMatrix::zeros(n, n);
    let mut e0 = ComplexMatrix::zeros(n, n);
    for (eig, p) in y.decomposition.iter() {
        if (eig - 1.0).abs() <= eigtol {
            e1 = &e1 + p;
        } else if eig.abs() <= eigtol {
            e0 = &e0 + p;
        }
    }
    let e = &(&ComplexMatrix::identity(n) - &e1) - &e0;
    KernelProjectors { e1, e0, e }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        (a - b).max_abs() <= tol
    }

    #[test]
    fn diagonal_input() {
        let a = ComplexMatrix::from_diag(&[1.0, 0.0]);
        let dec = spectral_decompose(&a, DEFAULT_EIGTOL).unwrap();
        assert_eq!(dec.eigenvalues(), &[0.0, 1.0]);
        assert!(close(&dec.projectors()[0], &ComplexMatrix::from_diag(&[0.0, 1.0]), 1e-15));
        assert!(close(&dec.projectors()[1], &ComplexMatrix::from_diag(&[1.0, 0.0]), 1e-15));
    }

    #[test]
    fn two_by_two_hand_solution() {
        // det([[0.5-l, 0.25], [0.25, 0.5-l]]) = (0.5-l)^2 - 1/16 -> l = 0.25, 0.75
        let a = ComplexMatrix::from_real_rows(&[&[0.5, 0.25], &[0.25, 0.5]]).unwrap();
        let dec = spectral_decompose(&a, DEFAULT_EIGTOL).unwrap();
        assert!((dec.eigenvalues()[0] - 0.25).abs() < 1e-15);
        assert!((dec.eigenvalues()[1] - 0.75).abs() < 1e-15);
        let minus = [re(1.0 / 2f64.sqrt()), re(-1.0 / 2f64.sqrt())];
        let plus = [re(1.0 / 2f64.sqrt()), re(1.0 / 2f64.sqrt())];
        assert!(close(&dec.projectors()[0], &ComplexMatrix::outer(&minus, &minus), 1e-14));
        assert!(close(&dec.projectors()[1], &ComplexMatrix::outer(&plus, &plus), 1e-14));
    }

    #[test]
    fn identity_is_single_cluster() {
        let dec = spectral_decompose(&ComplexMatrix::identity(4), DEFAULT_EIGTOL).unwrap();
        assert_eq!(dec.eigenvalues(), &[1.0]);
        assert!(close(&dec.projectors()[0], &ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let a = ComplexMatrix::from_rows(&[
            vec![re(2.0), C64::new(1.0, -1.0), C64::new(0.0, 0.5)],
            vec![C64::new(1.0, 1.0), re(-1.0), C64::new(0.3, 0.0)],
            vec![C64::new(0.0, -0.5), C64::new(0.3, 0.0), re(0.5)],
        ])
        .unwrap();
        let dec = spectral_decompose(&a, DEFAULT_EIGTOL).unwrap();
        assert_eq!(dec.eigenvalues().len(), 3);
        assert!(close(&dec.reconstruct(), &a, 1e-13));
        let sum = dec
            .projectors()
            .iter()
            .fold(ComplexMatrix::zeros(3, 3), |acc, p| &acc + p);
        assert!(close(&sum, &ComplexMatrix::identity(3), 1e-13));
        for p in dec.projectors() {
            assert!(close(&(p * p), p, 1e-13));
            assert!(p.hermitian_defect() < 1e-13);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(
            spectral_decompose(&a, DEFAULT_EIGTOL),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn scalar_above_one_rejected() {
        let a = ComplexMatrix::from_real_rows(&[&[1.2]]).unwrap();
        match validate_positive_contraction(&a, DEFAULT_EIGTOL) {
            Err(Error::SpectrumOutOfRange { eigenvalue }) => assert!((eigenvalue - 1.2).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn negative_eigenvalue_rejected() {
        // eigenvalues 0.5 +- 0.6
        let a = ComplexMatrix::from_real_rows(&[&[0.5, 0.6], &[0.6, 0.5]]).unwrap();
        match validate_positive_contraction(&a, DEFAULT_EIGTOL) {
            Err(Error::SpectrumOutOfRange { eigenvalue }) => assert!((eigenvalue + 0.1).abs() < 1e-14),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn diagonal_contraction_accepted() {
        let y = PositiveContraction::diagonal(&[1.0, 0.5, 0.0]).unwrap();
        assert_eq!(y.decomposition().eigenvalues(), &[0.0, 0.5, 1.0]);
        assert!(!y.is_projection());
    }

    #[test]
    fn near_endpoint_eigenvalues_snap() {
        let y = PositiveContraction::diagonal(&[1.0 + 5e-10, -3e-10, 0.4]).unwrap();
        assert_eq!(y.decomposition().eigenvalues(), &[0.0, 0.4, 1.0]);
        let p = PositiveContraction::diagonal(&[1.0 - 1e-12, 1.0, 0.0]).unwrap();
        assert!(p.is_projection());
        assert_eq!(p.decomposition().eigenvalues(), &[0.0, 1.0]);
    }

    #[test]
    fn calculus_identity_and_constant() {
        let a = ComplexMatrix::from_real_rows(&[&[0.5, 0.25], &[0.25, 0.5]]).unwrap();
        let y = PositiveContraction::new(&a, DEFAULT_EIGTOL).unwrap();
        assert!(close(&y.apply_calculus(re).unwrap(), &a, 1e-14));
        assert!(close(
            &y.apply_calculus(|_| re(1.0)).unwrap(),
            &ComplexMatrix::identity(2),
            1e-14
        ));
    }

    #[test]
    fn calculus_square() {
        let y = PositiveContraction::diagonal(&[0.25, 0.75]).unwrap();
        let sq = y.apply_calculus(|t| re(t * t)).unwrap();
        assert!(close(&sq, &ComplexMatrix::from_diag(&[0.0625, 0.5625]), 1e-15));
    }

    #[test]
    fn calculus_pole_reported() {
        let y = PositiveContraction::diagonal(&[0.0, 0.5]).unwrap();
        match y.apply_calculus(|t| re(1.0 / t)) {
            Err(Error::SingularCalculus { eigenvalue }) => assert_eq!(eigenvalue, 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn kernel_projectors_diagonal() {
        let y = PositiveContraction::diagonal(&[1.0, 0.5, 0.0]).unwrap();
        let k = y.kernel_projectors();
        assert!(close(&k.e1, &ComplexMatrix::from_diag(&[1.0, 0.0, 0.0]), 0.0));
        assert!(close(&k.e0, &ComplexMatrix::from_diag(&[0.0, 0.0, 1.0]), 0.0));
        assert!(close(&k.e, &ComplexMatrix::from_diag(&[0.0, 1.0, 0.0]), 0.0));
    }

    #[test]
    fn kernel_projectors_middle_scalar() {
        let y = PositiveContraction::diagonal(&[0.5]).unwrap();
        let k = y.kernel_projectors();
        assert_eq!(k.e1.max_abs(), 0.0);
        assert_eq!(k.e0.max_abs(), 0.0);
        assert!(close(&k.e, &ComplexMatrix::identity(1), 0.0));
    }

    #[test]
    fn kernel_projectors_of_projection() {
        let y = PositiveContraction::diagonal(&[1.0, 0.0]).unwrap();
        let k = y.kernel_projectors();
        assert!(close(&k.e1, &ComplexMatrix::from_diag(&[1.0, 0.0]), 0.0));
        assert!(close(&k.e0, &ComplexMatrix::from_diag(&[0.0, 1.0]), 0.0));
        assert_eq!(k.e.max_abs(), 0.0);
        assert!(close(&(&y.matrix().clone() * &k.e1), &k.e1, 1e-15));
        assert!((y.matrix() * &k.e0).max_abs() < 1e-15);
    }

    #[test]
    fn operator_norm_of_rank_one() {
        let x = [C64::new(3.0, 0.0), C64::new(0.0, 4.0)];
        let m = ComplexMatrix::outer(&x, &x);
        assert!((operator_norm(&m).unwrap() - 25.0).abs() < 1e-12);
    }
}
