//! The scalar inner functions `phi_y`: values on the ray, the two-dimensional
//! model identity, and the B-point bound on `||u_{y, lambda}||` in a cone.

use caralab::boundary::NontangentialGrid;
use caralab::random;
use caralab::{BoundaryPoint, ScalarInner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> caralab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let tau = BoundaryPoint::from_angles(std::f64::consts::PI / 3.0, -std::f64::consts::PI / 5.0);
    println!("   y   |phi(r tau) - r|   model residual   max ||u|| / bound (c = 2)");
    for k in 1..10 {
        let y = k as f64 / 10.0;
        let phi = ScalarInner::new(y, tau)?;
        let ray = (1..100)
            .map(|i| {
                let r = i as f64 / 100.0;
                Ok((phi.eval(&tau.ray_point(1.0 - r))?.re - r).abs())
            })
            .collect::<caralab::Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        let mut residual = 0.0f64;
        for _ in 0..200 {
            let (l, m) = (random::bidisk_point(&mut rng), random::bidisk_point(&mut rng));
            residual = residual.max(phi.model_residual(&l, &m)?);
        }
        let c = 2.0;
        let bound = 2.0 * c * (y * (1.0 - y)).sqrt() + 1.0;
        let grid = NontangentialGrid::sample(tau, c, 500, &mut rng)?;
        let mut worst = 0.0f64;
        for p in grid.points() {
            worst = worst.max(phi.model_vector(&p.lambda)?.norm() / bound);
        }
        println!("  {y:.1}   {ray:.2e}         {residual:.2e}         {worst:.4}");
    }
    Ok(())
}
