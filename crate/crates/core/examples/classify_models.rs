//! Regular / singular classification of the constructed boundary cases and of
//! the model files in `models/`, cross-checked against the linearity defect.

use caralab::boundary::{self, BoundaryConfig};
use caralab::{suite, ModelSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = BoundaryConfig::default();
    for sm in suite::edge_cases() {
        let r = boundary::classify_model(&sm.model, &cfg)?;
        println!(
            "{:<28} {:?}  alpha {:.6}  ||E v|| {:.2e}  ||(E0+E1) v|| {:.2e}  defect {:.3e}  consistent {}",
            sm.label,
            r.classification,
            r.alpha,
            r.projection_norms.singular,
            r.projection_norms.kernel,
            r.linearity_defect,
            r.consistent
        );
    }
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("models");
    for name in ["swap.json", "projection.json", "mixed_regular.json", "mixed_singular.json"] {
        let spec = ModelSpec::load(&dir.join(name))??;
        let r = boundary::classify_model(&spec.build(1e-9, 1e-8)?, &cfg)?;
        println!("models/{name:<22} {:?}", r.classification);
    }
    Ok(())
}
