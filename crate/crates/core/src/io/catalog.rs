use std::fs;
use std::path::{Path, PathBuf};

use glob::Pattern;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::profile_file::{ParseOptions, ProfileFile};
use crate::profile::VelocityProfile;

/// Environment variable naming the default data directory.
pub const DATA_DIR_ENV: &str = "WALLSCALE_DATA_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CatalogOptions {
    /// Glob matched against file names (not paths).
    pub pattern: String,
    pub parse: ParseOptions,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        Self {
            pattern: "*.dat".to_owned(),
            parse: ParseOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoadFailure {
    pub path: PathBuf,
    pub error: String,
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    /// Sorted by Re_θ, then run id.
    pub profiles: Vec<VelocityProfile>,
    pub failures: Vec<LoadFailure>,
}

impl Catalog {
    pub fn from_profiles(mut profiles: Vec<VelocityProfile>) -> Self {
        sort_profiles(&mut profiles);
        Self {
            profiles,
            failures: Vec::new(),
        }
    }
}

pub(crate) fn sort_profiles(profiles: &mut [VelocityProfile]) {
    profiles.sort_by(|a, b| {
        a.re_theta()
            .total_cmp(&b.re_theta())
            .then_with(|| a.run_id().cmp(b.run_id()))
    });
}

/// Reads one profile file; the file stem is the run id when the header has none.
pub fn load_profile(path: &Path, opts: &ParseOptions) -> Result<VelocityProfile> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "unnamed".to_owned());
    ProfileFile::parse(&text)?.to_profile(opts, &stem)
}

/// Parses every matching file in `dir`. Files that fail are collected in
/// [`Catalog::failures`]; only a directory without a single good file is an
/// error.
pub fn load_catalog(dir: &Path, opts: &CatalogOptions) -> Result<Catalog> {
    let pattern = Pattern::new(&opts.pattern)
        .map_err(|e| Error::InvalidConfig(format!("bad file pattern `{}`: {e}", opts.pattern)))?;
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .filter(|p| {
            p.file_name()
                .map(|n| pattern.matches(&n.to_string_lossy()))
                .unwrap_or(false)
        })
        .collect();
    paths.sort();

    let mut catalog = Catalog::default();
    for path in paths {
        match load_profile(&path, &opts.parse) {
            Ok(p) => catalog.profiles.push(p),
            Err(e) => catalog.failures.push(LoadFailure {
                path,
                error: e.to_string(),
            }),
        }
    }
    if catalog.profiles.is_empty() {
        return Err(Error::EmptyCatalog {
            dir: dir.to_owned(),
            failures: catalog.failures.len(),
        });
    }
    sort_profiles(&mut catalog.profiles);
    Ok(catalog)
}
