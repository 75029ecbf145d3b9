//! Writes the model files under `models/` used by the CLI tests and examples.

use caralab::realization::ModelSpec;
use caralab::{suite, ComplexMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("models");
    std::fs::create_dir_all(&dir)?;
    let edges = suite::edge_cases();
    let mut specs: Vec<(&str, ModelSpec)> = vec![
        ("swap", edges[0].model.to_spec()),
        ("projection", edges[1].model.to_spec()),
        ("mixed_regular", edges[2].model.to_spec()),
        ("mixed_singular", edges[3].model.to_spec()),
    ];
    let scalar = |v: &[&[f64]], y: f64| -> Result<ModelSpec, caralab::Error> {
        Ok(ModelSpec {
            dim: 1,
            tau: [[1.0, 0.0], [1.0, 0.0]],
            y: ComplexMatrix::from_real_rows(&[&[y]])?,
            v: ComplexMatrix::from_real_rows(v)?,
        })
    };
    specs.push(("rotation", scalar(&[&[0.6, 0.8], &[0.8, -0.6]], 0.5)?));
    specs.push(("shear", scalar(&[&[1.0, 1.0], &[0.0, 1.0]], 0.5)?));
    specs.push(("y_out_of_range", scalar(&[&[0.0, 1.0], &[1.0, 0.0]], 1.2)?));
    specs.push(("identity", scalar(&[&[1.0, 0.0], &[0.0, 1.0]], 0.5)?));
    specs.push(("generic", suite::generate_model(7, 0, 6).model.to_spec()));
    for (name, spec) in specs {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&spec)? + "\n")?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
