//! Directional derivatives at `tau` by the spectral calculus of `Y` and by
//! extrapolated finite differences, with the linearity defect of each.

use caralab::boundary::{self, DerivativeTable, FD_SCHEDULE};
use caralab::extrapolate::StepSchedule;
use caralab::suite;

fn main() -> caralab::Result<()> {
    for sm in suite::generate_models(7, 4, 6).into_iter().chain(suite::edge_cases()) {
        let model = &sm.model;
        let tau = model.tau();
        let limit = model.v_at_tau(StepSchedule::RAY);
        let pairs = boundary::default_pairs(&tau);
        let deltas = boundary::pair_directions(&pairs);
        let analytic = DerivativeTable::analytic(model, &limit, &deltas)?;
        let fd = DerivativeTable::finite_difference(model, &tau, &deltas, FD_SCHEDULE)?;
        let gap = analytic
            .entries
            .iter()
            .zip(&fd.entries)
            .map(|(a, f)| (a.value - f.value).norm())
            .fold(0.0, f64::max);
        println!(
            "{:<28} {:<16} max |model - fd| = {:.1e}   defect model {:.3e}  fd {:.3e}",
            sm.label,
            format!("{:?}", sm.kind),
            gap,
            analytic.linearity_defect(&pairs).unwrap_or(f64::NAN),
            fd.linearity_defect(&pairs).unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
