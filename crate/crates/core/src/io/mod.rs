//! Profile files, catalogs, the end-to-end pipeline and output emission.

pub mod catalog;
pub mod emit;
pub mod pipeline;
pub mod profile_file;

pub use catalog::{load_catalog, load_profile, Catalog, CatalogOptions, LoadFailure, DATA_DIR_ENV};
pub use emit::{emit_outputs, EmitOptions};
pub use pipeline::{
    analyze_run, run_catalog, run_pipeline, LogLawWindow, PipelineConfig, PipelineOutput, RunReport,
};
pub use profile_file::{
    parse_profile, parse_profile_with, write_profile, ParseOptions, ProfileFile, Units,
};
