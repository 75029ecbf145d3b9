//! The operator map `I_Y`: pencil solve against the spectral form, the value
//! at `tau`, and a contractivity scan over the bidisk.

use caralab::random::{self, SpectrumKind};
use caralab::{BoundaryPoint, OperatorPencil};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> caralab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (n, kind) in [(3, SpectrumKind::Interior), (5, SpectrumKind::Mixed), (4, SpectrumKind::Projection)] {
        let y = random::positive_contraction(n, kind, &mut rng);
        let tau = random::torus_point(&mut rng);
        let pencil = OperatorPencil::new(y, tau);
        let mut gap = 0.0f64;
        for _ in 0..200 {
            let l = random::bidisk_point(&mut rng);
            gap = gap.max((&pencil.eval(&l)? - &pencil.spectral_form(&l)?).max_abs());
        }
        let at_tau = pencil.eval(&tau.as_disk_point())?;
        let scan = pencil.contractivity_scan(2000, &mut rng)?;
        println!(
            "{kind:?} n={n}: eval vs spectral {gap:.2e}, I(tau) = 1 off by {:.1e}, max ||I|| = {:.12}",
            (&at_tau - &caralab::ComplexMatrix::identity(n)).max_abs(),
            scan.max_norm
        );
    }
    let one = OperatorPencil::new(caralab::PositiveContraction::diagonal(&[1.0, 0.0])?, BoundaryPoint::one());
    let l = caralab::DiskPoint::real(0.3, -0.6);
    let e = one.eval(&l)?;
    println!("Y = diag(1, 0) at (0.3, -0.6): I_Y = diag({}, {})", e[(0, 0)], e[(1, 1)]);
    Ok(())
}
