//! Both sides of the Julia-quotient identity along `(1 - t) tau`, and the
//! carapoint constant `alpha` against `||v_tau||^2`.

use caralab::boundary::{self, NontangentialGrid};
use caralab::extrapolate::StepSchedule;
use caralab::suite;

fn main() -> caralab::Result<()> {
    let model = suite::generate_model(7, 0, 6).model;
    println!("          t               lhs                 rhs          residual");
    for row in boundary::julia_quotient_ray(&model, StepSchedule::RAY)? {
        println!("{:>12.4e}  {:>18.15}  {:>18.15}  {:.2e}", row.t, row.lhs, row.rhs, row.residual);
    }
    let limit = model.v_at_tau(StepSchedule::RAY);
    let grid = NontangentialGrid::build(model.tau(), 2.0, 12)?;
    let verdict = boundary::detect_carapoint(&model, &grid)?;
    println!(
        "carapoint {}  alpha = {:.12}  ||v_tau||^2 = {:.12}  grid quotient in [{:.6}, {:.6}]",
        verdict.carapoint,
        verdict.alpha,
        limit.norm().powi(2),
        verdict.grid_min,
        verdict.grid_max
    );
    Ok(())
}
