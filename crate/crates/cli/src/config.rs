//! Sweep configuration: a single TOML file with a strict schema (unknown
//! keys are errors). Site arrangements are given 1-based, relative to the
//! anchor x = N/2 - 3, mirroring the compact "123"/"135" labels used in the
//! output.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

/// Requested λ values closer to the degenerate point than this are clamped.
pub const LAMBDA_CLAMP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Deserialize, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Concurrence,
    Witness,
}

impl Quantity {
    fn arity(self) -> usize {
        match self {
            Quantity::Concurrence => 2,
            Quantity::Witness => 3,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    n_sites: usize,
    output: PathBuf,
    quantities: Vec<Quantity>,
    arrangements: Vec<Vec<usize>>,
    #[serde(default)]
    seed: u64,
    lambda_grid: Option<Vec<f64>>,
    n_up: Option<usize>,
}

/// One site tuple of a sweep, in every representation the pipeline needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    /// Compact label built from the relative offsets ("123", "135", ...).
    pub label: String,
    /// 1-based offsets relative to the anchor, as given in the config.
    pub offsets: Vec<usize>,
    /// 0-based absolute chain sites, strictly increasing.
    pub sites: Vec<usize>,
    /// 1-based absolute sites joined with '-' (metadata column).
    pub sites_label: String,
}

/// Validated sweep plan.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n_sites: usize,
    pub n_up: usize,
    pub seed: u64,
    pub output: PathBuf,
    pub quantities: Vec<Quantity>,
    pub arrangements: Vec<Arrangement>,
    pub lambdas: Vec<f64>,
    /// Human-readable notices (λ clamping) emitted during validation.
    pub notices: Vec<String>,
}

pub fn load(path: &std::path::Path) -> Result<SweepConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    let raw: RawConfig = toml::from_str(&text).context("invalid sweep config")?;
    resolve(raw)
}

fn resolve(raw: RawConfig) -> Result<SweepConfig> {
    let n = raw.n_sites;
    if !(2..=24).contains(&n) {
        bail!("n_sites = {n} outside the supported range 2..=24");
    }
    let n_up = raw.n_up.unwrap_or(n / 2);
    if n_up > n {
        bail!("n_up = {n_up} exceeds n_sites = {n}");
    }

    let mut quantities = raw.quantities;
    quantities.sort();
    quantities.dedup();
    if quantities.is_empty() {
        bail!("quantities must name at least one of \"concurrence\", \"witness\"");
    }

    // Anchor follows the mid-chain convention x = N/2 - 3 (1-based).
    let anchor = (n as i64) / 2 - 3;
    if anchor < 1 {
        bail!("n_sites = {n} leaves no room for the anchor x = N/2 - 3; need n_sites >= 8");
    }
    let anchor = anchor as usize;

    let mut arrangements = Vec::new();
    for offsets in &raw.arrangements {
        if !(offsets.len() == 2 || offsets.len() == 3) {
            bail!("arrangement {offsets:?} must list 2 or 3 sites");
        }
        if !offsets.windows(2).all(|w| w[0] < w[1]) {
            bail!("arrangement {offsets:?} must be strictly increasing");
        }
        if offsets[0] == 0 {
            bail!("arrangement {offsets:?} is 1-based; offsets start at 1");
        }
        let sites: Vec<usize> = offsets.iter().map(|&o| anchor + o - 1).collect();
        let sites0: Vec<usize> = sites.iter().map(|&s| s - 1).collect();
        if let Some(&worst) = sites.iter().find(|&&s| s > n) {
            bail!(
                "arrangement {offsets:?} reaches absolute site {worst} beyond the chain (N = {n}, anchor x = {anchor})"
            );
        }
        let label = if offsets.iter().all(|&o| o < 10) {
            offsets.iter().map(|o| o.to_string()).collect::<String>()
        } else {
            offsets.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("-")
        };
        let sites_label = sites.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("-");
        arrangements.push(Arrangement {
            label,
            offsets: offsets.clone(),
            sites: sites0,
            sites_label,
        });
    }
    if arrangements.is_empty() {
        bail!("arrangements must list at least one site tuple");
    }
    for q in &quantities {
        if !arrangements.iter().any(|a| a.sites.len() == q.arity()) {
            bail!("quantity {q:?} needs an arrangement of {} sites, none given", q.arity());
        }
    }
    arrangements.sort_by(|a, b| a.offsets.cmp(&b.offsets));
    arrangements.dedup_by(|a, b| a.offsets == b.offsets);

    let mut notices = Vec::new();
    let mut lambdas = match raw.lambda_grid {
        Some(grid) => {
            if grid.iter().any(|l| !l.is_finite()) {
                bail!("lambda_grid contains a non-finite value");
            }
            grid
        }
        None => default_lambda_grid(),
    };
    for l in lambdas.iter_mut() {
        if (*l + 1.0).abs() < LAMBDA_CLAMP {
            notices.push(format!(
                "lambda = {l} clamped to {} (degenerate multiplet at lambda = -1)",
                -1.0 + LAMBDA_CLAMP
            ));
            *l = -1.0 + LAMBDA_CLAMP;
        }
    }
    lambdas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    lambdas.dedup();

    Ok(SweepConfig {
        n_sites: n,
        n_up,
        seed: raw.seed,
        output: raw.output,
        quantities,
        arrangements,
        lambdas,
        notices,
    })
}

/// Default grid: 60 uniform points on [-1.2, 1.2] merged with 60 points
/// densifying logarithmically toward the transition, λ = -1 + δ with δ
/// log-spaced in [1e-3, 0.5].
pub fn default_lambda_grid() -> Vec<f64> {
    let mut grid: Vec<f64> = (0..60).map(|i| -1.2 + 2.4 * i as f64 / 59.0).collect();
    let (lo, hi) = (1e-3_f64, 0.5_f64);
    let ratio = (hi / lo).ln();
    grid.extend((0..60).map(|i| -1.0 + lo * (ratio * i as f64 / 59.0).exp()));
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    grid
}
