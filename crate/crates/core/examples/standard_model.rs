//! The standard model `(U_1 v_lambda, U_2 v_lambda)` derived from a
//! generalized model: its identity residual and the cone bound `(c + 1) ||v||`.

use caralab::boundary::{self, NontangentialGrid};
use caralab::{random, suite};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> caralab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for sm in suite::generate_models(7, 8, 6) {
        let residual = suite::max_standard_residual(&sm.model, 100, &mut rng)?;
        let grid = NontangentialGrid::build(sm.model.tau(), 2.0, 12)?;
        let ratio = suite::standard_bound_ratio(&sm.model, &grid)?;
        let l = random::bidisk_point(&mut rng);
        let s = boundary::derive_standard_model(&sm.model, &l)?;
        println!(
            "{} dim {}: residual {:.1e}, max ||U_i v|| / ||v|| on cone = {:.4} (bound 3), |U_1 v|^2 + |U_2 v|^2 at a random point = {:.4}",
            sm.label,
            sm.model.dim(),
            residual,
            ratio,
            caralab::linalg::norm(&s.first).powi(2) + caralab::linalg::norm(&s.second).powi(2)
        );
    }
    Ok(())
}
