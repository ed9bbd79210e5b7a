//! Plain-text profile files.
//!
//! ```text
//! # run_id = run-2532
//! # re_theta = 2532
//! # u_inf = 10.2
//! # u_tau = 0.41
//! # nu = 1.51e-5
//! # units = wall
//! # y_plus u_plus
//! 30.1 12.94
//! 32.7 13.11
//! ```
//!
//! Lines starting with `#` are header lines; those of the form `key = value`
//! are metadata (keys must be unique), anything else is a comment. Every other
//! non-blank line is a record of whitespace-, comma- or semicolon-separated
//! numbers. With `units = wall` (the default) the selected columns are
//! `y⁺ U⁺`; with `units = raw` they are dimensional `y U` and are normalised by
//! `y⁺ = y u_τ / ν`, `U⁺ = U / u_τ`, which makes `u_tau` and `nu` mandatory.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::{Sample, VelocityProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    /// Columns already in wall units.
    #[default]
    Wall,
    /// Dimensional wall distance and velocity.
    Raw,
}

impl FromStr for Units {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "wall" | "plus" => Ok(Units::Wall),
            "raw" | "dimensional" => Ok(Units::Raw),
            other => Err(format!(
                "unknown units `{other}` (expected `wall` or `raw`)"
            )),
        }
    }
}

/// Column mapping and unit overrides for reading profile files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ParseOptions {
    /// Zero-based column holding the wall distance.
    pub y_column: usize,
    /// Zero-based column holding the velocity.
    pub u_column: usize,
    /// Overrides the file's `units` header when set.
    pub units: Option<Units>,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            y_column: 0,
            u_column: 1,
            units: None,
        }
    }
}

/// A profile file before validation: ordered header pairs and numeric rows.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ProfileFile {
    /// `(key, value, line)`, keys lower-cased, in file order.
    pub header: Vec<(String, String, usize)>,
    /// `(line, fields)` for every data record.
    pub rows: Vec<(usize, Vec<f64>)>,
}

fn parse_number(token: &str, line: usize) -> Result<f64> {
    token.parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("malformed number `{token}`"),
    })
}

impl ProfileFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut file = ProfileFile::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix('#') {
                if let Some((key, value)) = rest.split_once('=') {
                    let key = key.trim().to_ascii_lowercase();
                    if key.is_empty() {
                        return Err(Error::Parse {
                            line,
                            message: "empty header key".to_owned(),
                        });
                    }
                    if let Some((_, _, first)) = file.header.iter().find(|(k, _, _)| *k == key) {
                        return Err(Error::Parse {
                            line,
                            message: format!(
                                "duplicate header key `{key}` (first on line {first})"
                            ),
                        });
                    }
                    file.header.push((key, value.trim().to_owned(), line));
                }
                continue;
            }
            let fields = trimmed
                .split(|c: char| c.is_whitespace() || c == ',' || c == ';')
                .filter(|t| !t.is_empty())
                .map(|t| parse_number(t, line))
                .collect::<Result<Vec<f64>>>()?;
            file.rows.push((line, fields));
        }
        Ok(file)
    }

    pub fn get(&self, key: &str) -> Option<(&str, usize)> {
        self.header
            .iter()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, line)| (v.as_str(), *line))
    }

    fn number(&self, key: &str) -> Result<Option<f64>> {
        self.get(key)
            .map(|(v, line)| parse_number(v, line))
            .transpose()
    }

    /// Validates the file into a profile. `fallback_run_id` is used when the
    /// header carries no `run_id`.
    pub fn to_profile(
        &self,
        opts: &ParseOptions,
        fallback_run_id: &str,
    ) -> Result<VelocityProfile> {
        let run_id = self
            .get("run_id")
            .map(|(v, _)| v.to_owned())
            .filter(|v| !v.is_empty())
            .unwrap_or_else(|| fallback_run_id.to_owned());
        let missing = |field| Error::MetadataRequired {
            run_id: run_id.clone(),
            field,
        };
        let re_theta = self
            .number("re_theta")?
            .ok_or_else(|| missing("re_theta"))?;
        let u_inf = self.number("u_inf")?;
        let u_tau = self.number("u_tau")?;
        let nu = self.number("nu")?;
        let units = match opts.units {
            Some(u) => u,
            None => match self.get("units") {
                Some((v, line)) => v
                    .parse()
                    .map_err(|message| Error::Parse { line, message })?,
                None => Units::Wall,
            },
        };
        let scale = match units {
            Units::Wall => None,
            Units::Raw => {
                let u_tau = u_tau.ok_or_else(|| missing("u_tau"))?;
                let nu = nu.ok_or_else(|| missing("nu"))?;
                Some((u_tau / nu, 1.0 / u_tau))
            }
        };
        let needed = opts.y_column.max(opts.u_column) + 1;
        let samples = self
            .rows
            .iter()
            .map(|(line, fields)| {
                if fields.len() < needed {
                    return Err(Error::Parse {
                        line: *line,
                        message: format!(
                            "expected at least {needed} columns, found {}",
                            fields.len()
                        ),
                    });
                }
                let (y, u) = (fields[opts.y_column], fields[opts.u_column]);
                Ok(match scale {
                    None => Sample::new(y, u),
                    Some((y_scale, u_scale)) => Sample::new(y * y_scale, u * u_scale),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        VelocityProfile::with_metadata(run_id, re_theta, u_inf, u_tau, nu, samples)
    }
}

/// Parses a profile in wall units with the default column layout.
pub fn parse_profile(text: &str) -> Result<VelocityProfile> {
    parse_profile_with(text, &ParseOptions::default())
}

pub fn parse_profile_with(text: &str, opts: &ParseOptions) -> Result<VelocityProfile> {
    ProfileFile::parse(text)?.to_profile(opts, "unnamed")
}

/// Serialises a profile in wall units. Values are written in shortest
/// round-trip form, so [`parse_profile`] restores them bit for bit.
pub fn write_profile(profile: &VelocityProfile) -> String {
    let mut out = String::new();
    out.push_str(&format!("# run_id = {}\n", profile.run_id()));
    out.push_str(&format!("# re_theta = {}\n", profile.re_theta()));
    for (key, value) in [
        ("u_inf", profile.u_inf()),
        ("u_tau", profile.u_tau()),
        ("nu", profile.nu()),
    ] {
        if let Some(v) = value {
            out.push_str(&format!("# {key} = {v}\n"));
        }
    }
    out.push_str("# units = wall\n# y_plus u_plus\n");
    for s in profile.samples() {
        out.push_str(&format!("{} {}\n", s.y_plus, s.u_plus));
    }
    out
}
