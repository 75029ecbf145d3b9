//! Schur functions from an isometric colligation: the generalized model
//! identity on random pairs, and the shear matrix as a negative control.

use caralab::boundary::SchurFunction;
use caralab::random;
use caralab::realization::DEFAULT_ISOTOL;
use caralab::{BoundaryPoint, Colligation, ComplexMatrix, GeneralizedRealization, OperatorPencil, PositiveContraction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> caralab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let n = rand::Rng::gen_range(&mut rng, 1..=8);
        let y = random::positive_contraction(n, random::SpectrumKind::Interior, &mut rng);
        let model = GeneralizedRealization::new(
            OperatorPencil::new(y, random::torus_point(&mut rng)),
            Colligation::random(n, &mut rng),
        )?;
        for _ in 0..100 {
            let (l, m) = (random::bidisk_point(&mut rng), random::bidisk_point(&mut rng));
            worst = worst.max(model.model_residual(&l, &m)?);
        }
    }
    println!("20 random models, 100 pairs each: max residual {worst:.2e}");

    let shear = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]])?;
    match Colligation::validate(&shear, DEFAULT_ISOTOL) {
        Err(e) => println!("shear rejected: {e}"),
        Ok(_) => unreachable!("the shear is not an isometry"),
    }
    let pencil = OperatorPencil::new(PositiveContraction::diagonal(&[0.5])?, BoundaryPoint::one());
    let forced = GeneralizedRealization::new(pencil, Colligation::unchecked(&shear)?)?;
    let (l, m) = (caralab::DiskPoint::real(0.5, 0.2), caralab::DiskPoint::real(-0.3, 0.4));
    println!(
        "shear forced through: phi(l) = {:.4}, residual {:.3e}",
        forced.eval(&l)?,
        forced.model_residual(&l, &m)?
    );
    Ok(())
}
