//! End to end: write a synthetic catalog to disk, load it back, run the
//! pipeline and emit every output file.
//!
//! `cargo run --example synthetic_catalog -- /tmp/wallscale-demo`

use std::fs;
use std::path::PathBuf;

use wallscale::diagnostics::render_table_text;
use wallscale::io::{
    emit_outputs, load_catalog, run_catalog, write_profile, CatalogOptions, EmitOptions,
    PipelineConfig,
};
use wallscale::{generate_ensemble, SynthSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("wallscale-demo"));
    let data = root.join("data");
    fs::create_dir_all(&data)?;

    let specs: Vec<SynthSpec> = (0..8)
        .map(|i| {
            let mut s = SynthSpec::new(9.0 + 0.5 * i as f64);
            s.noise_rel_sigma = 0.002;
            s.seed = i;
            s.include_sublayer = true;
            s.y_plus_min = 1.0;
            s
        })
        .collect();
    for p in generate_ensemble(&specs)? {
        fs::write(data.join(format!("{}.dat", p.run_id())), write_profile(&p))?;
    }

    let catalog = load_catalog(&data, &CatalogOptions::default())?;
    let output = run_catalog(catalog, &PipelineConfig::default())?;
    print!("{}", render_table_text(&output.table));
    let written = emit_outputs(&output, &root.join("out"), &EmitOptions::default())?;
    println!(
        "wrote {} files under {}",
        written.len(),
        root.join("out").display()
    );
    Ok(())
}
