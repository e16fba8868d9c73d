//! Run configuration: a TOML file with `[problem]`, `[scheme]` and `[output]`
//! sections, overridden field by field from the command line.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::Deserialize;
use telegraph::{GammaChoice, ProblemOverrides};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub problem: ProblemSection,
    #[serde(default)]
    pub scheme: SchemeSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSection {
    pub id: Option<String>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub amplitude: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSection {
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub k: Option<f64>,
    pub t_final: Option<f64>,
    pub gamma: Option<String>,
    /// `"N:k, N:k, ..."` for convergence studies.
    pub schedule: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub kind: Option<String>,
    pub report_times: Option<Vec<f64>>,
    pub path: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("config: cannot read {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("config: {} is invalid", path.display()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GammaSelection {
    K,
    #[value(name = "2sin")]
    TwoSin,
    Both,
}

impl GammaSelection {
    pub fn choices(self) -> Vec<GammaChoice> {
        match self {
            GammaSelection::K => vec![GammaChoice::PlainK],
            GammaSelection::TwoSin => vec![GammaChoice::TwoSinHalfK],
            GammaSelection::Both => GammaChoice::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputKind {
    ErrorTable,
    Snapshot,
    Surface,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Norm {
    Linf,
    L2,
    Rms,
    L2Scaled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Vary {
    /// `h` when N changes along the schedule, `k` otherwise.
    Auto,
    H,
    K,
}

pub fn parse_enum<T: ValueEnum>(field: &str, raw: &str) -> Result<T> {
    T::from_str(raw.trim(), false).map_err(|_| {
        let known: Vec<String> = T::value_variants()
            .iter()
            .filter_map(|v| v.to_possible_value().map(|p| p.get_name().to_string()))
            .collect();
        anyhow::anyhow!(
            "{field}: unknown value '{raw}', expected one of {}",
            known.join(", ")
        )
    })
}

/// `"25:1e-4, 50:1e-4"` into `(N, k)` pairs.
pub fn parse_schedule(raw: &str) -> Result<Vec<(usize, f64)>> {
    let entries: Vec<(usize, f64)> = raw
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|entry| {
            let (n, k) = entry
                .split_once(':')
                .with_context(|| format!("schedule: entry '{entry}' is not N:k"))?;
            let n = n
                .trim()
                .parse()
                .with_context(|| format!("schedule: bad N in '{entry}'"))?;
            let k = k
                .trim()
                .parse()
                .with_context(|| format!("schedule: bad k in '{entry}'"))?;
            Ok((n, k))
        })
        .collect::<Result<_>>()?;
    if entries.len() < 2 {
        bail!(
            "schedule: needs at least two N:k entries, got {}",
            entries.len()
        );
    }
    Ok(entries)
}

/// Problem selection shared by all subcommands.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemChoice {
    pub id: String,
    pub overrides: ProblemOverrides,
}

impl ProblemChoice {
    pub fn resolve(
        flag_id: Option<&str>,
        flags: ProblemOverrides,
        file: &ProblemSection,
    ) -> Result<Self> {
        let id = flag_id
            .map(str::to_string)
            .or_else(|| file.id.clone())
            .context("problem: no problem id given (use --problem or [problem] id)")?;
        Ok(Self {
            id,
            overrides: ProblemOverrides {
                alpha: flags.alpha.or(file.alpha),
                beta: flags.beta.or(file.beta),
                amplitude: flags.amplitude.or(file.amplitude),
            },
        })
    }
}
