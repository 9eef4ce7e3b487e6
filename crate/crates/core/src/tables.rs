//! Reference tables: crossover points against the earlier bounds and the
//! `c_max` scan, next to their published values.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldProfile;
use crate::theorems::{crossover, crossover_best, BoundFormula};
use crate::truncation::{cmax_scan, cmax_scan_tail, CmaxResult};

const CROSSOVER_DATA: &str = include_str!("../data/crossover_tables.json");
const CMAX_DATA: &str = include_str!("../data/cmax_table.json");
const MIN_DISC_DATA: &str = include_str!("../data/min_discriminants.json");

/// A field profile from the crossover tables with its published crossovers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceProfile {
    pub table: String,
    pub n: u32,
    /// Discriminant mantissa, kept as a decimal string.
    pub mantissa: String,
    pub exponent: i32,
    pub r1: u32,
    pub r2: u32,
    pub published: BTreeMap<BoundFormula, u64>,
    pub published_best: BTreeMap<BoundFormula, u64>,
}

impl ReferenceProfile {
    pub fn log_disc(&self) -> Result<f64> {
        let m: f64 = self
            .mantissa
            .parse()
            .map_err(|_| Error::Parse(format!("bad mantissa '{}'", self.mantissa)))?;
        Ok(m.ln() + self.exponent as f64 * std::f64::consts::LN_10)
    }

    pub fn profile(&self) -> Result<FieldProfile> {
        FieldProfile::from_log_disc(self.n, self.log_disc()?, self.r1, self.r2)
    }

    pub fn disc_label(&self) -> String {
        format!("{}e{}", self.mantissa, self.exponent)
    }
}

#[derive(Deserialize)]
struct CrossoverFile {
    profiles: Vec<ReferenceProfile>,
}

pub fn parse_crossover_table(json: &str) -> Result<Vec<ReferenceProfile>> {
    let file: CrossoverFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    for p in &file.profiles {
        p.profile()?;
        for map in [&p.published, &p.published_best] {
            for rival in BoundFormula::RIVALS {
                if !map.contains_key(&rival) {
                    return Err(Error::Parse(format!(
                        "{} n={}: no published value for '{rival}'",
                        p.table, p.n
                    )));
                }
            }
        }
    }
    Ok(file.profiles)
}

/// The embedded crossover reference profiles.
pub fn crossover_reference() -> Vec<ReferenceProfile> {
    parse_crossover_table(CROSSOVER_DATA).expect("embedded crossover table is valid")
}

/// Accepted distance from a published crossover: exact for entries at the
/// rival's validity threshold, otherwise 0.1% or one search-grid step.
pub fn crossover_tolerance(rival: BoundFormula, published: u64) -> u64 {
    if published as f64 == rival.validity_min_x() {
        return 0;
    }
    let rel = (published as f64 * 1e-3).ceil() as u64;
    let step = if published <= 100_000 { 1 } else { rel };
    rel.max(step)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossoverComparison {
    pub table: String,
    pub n: u32,
    pub disc: String,
    pub r1: u32,
    pub r2: u32,
    pub rival: BoundFormula,
    pub best_of: bool,
    pub computed: Option<u64>,
    #[serde(rename = "published")]
    pub published: u64,
    pub delta: Option<i64>,
    pub clamped: Option<bool>,
    pub matches: bool,
    pub error: Option<String>,
}

/// Recompute every crossover of the reference profiles against the three
/// earlier bounds. Rows come back in table order, rivals in fixed order.
pub fn reference_crossovers(profiles: &[ReferenceProfile], best_of: bool, x_cap: u64) -> Vec<CrossoverComparison> {
    let jobs: Vec<(&ReferenceProfile, BoundFormula)> = profiles
        .iter()
        .flat_map(|p| BoundFormula::RIVALS.into_iter().map(move |r| (p, r)))
        .collect();
    jobs.par_iter()
        .map(|&(p, rival)| {
            let published = if best_of {
                p.published_best[&rival]
            } else {
                p.published[&rival]
            };
            let row = p.profile().and_then(|prof| {
                if best_of {
                    crossover_best(&prof, rival, x_cap)
                } else {
                    crossover(&prof, rival, x_cap)
                }
            });
            let (computed, clamped, error) = match row {
                Ok(r) => (Some(r.crossover_x), Some(r.clamped), None),
                Err(e) => (None, None, Some(e.to_string())),
            };
            let delta = computed.map(|c| c as i64 - published as i64);
            let matches = delta.is_some_and(|d| d.unsigned_abs() <= crossover_tolerance(rival, published));
            CrossoverComparison {
                table: p.table.clone(),
                n: p.n,
                disc: p.disc_label(),
                r1: p.r1,
                r2: p.r2,
                rival,
                best_of,
                computed,
                published,
                delta,
                clamped,
                matches,
                error,
            }
        })
        .collect()
}

/// Minimal discriminant per degree, plus a root-discriminant lower bound for
/// the tail row covering all larger degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinDiscTable {
    pub degrees: Vec<MinDiscEntry>,
    pub tail: TailEntry,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinDiscEntry {
    pub n: u32,
    pub disc: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailEntry {
    pub n: u32,
    pub root_disc: f64,
}

impl MinDiscTable {
    pub fn parse(json: &str) -> Result<Self> {
        let t: MinDiscTable = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        for e in &t.degrees {
            if e.n == 0 || !(e.disc >= 1.0) || !e.disc.is_finite() {
                return Err(Error::Parse(format!(
                    "bad minimal discriminant entry n={} disc={}",
                    e.n, e.disc
                )));
            }
        }
        if t.tail.n == 0 || !(t.tail.root_disc >= 1.0) || !t.tail.root_disc.is_finite() {
            return Err(Error::Parse("bad tail entry".into()));
        }
        Ok(t)
    }

    pub fn embedded() -> Self {
        Self::parse(MIN_DISC_DATA).expect("embedded minimal discriminant table is valid")
    }
}

/// One published `c_max` row; `c_max = None` means negative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PublishedCmax {
    pub n: String,
    pub c_max: Option<f64>,
    pub x_at_max: u64,
    pub n_points: u64,
}

#[derive(Deserialize)]
struct CmaxFile {
    rows: Vec<PublishedCmax>,
}

pub fn published_cmax() -> Vec<PublishedCmax> {
    let f: CmaxFile = serde_json::from_str(CMAX_DATA).expect("embedded c_max table is valid");
    f.rows
}

pub const CMAX_TOL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CmaxComparison {
    pub label: String,
    pub computed: Option<CmaxResult>,
    #[serde(rename = "published")]
    pub published: Option<PublishedCmax>,
    pub matches: bool,
    pub error: Option<String>,
}

/// `c_max` as an upper constant: rounded up to 4 decimals, `<0` when negative.
pub fn format_cmax(c: f64) -> String {
    if c < 0.0 {
        "<0".to_string()
    } else {
        format!("{:.4}", (c * 1e4).ceil() / 1e4)
    }
}

fn cmax_matches(c: &CmaxResult, p: &PublishedCmax) -> bool {
    let c_ok = match p.c_max {
        Some(v) => (c.c_max - v).abs() <= CMAX_TOL,
        None => c.c_max < 0.0,
    };
    c_ok && !c.capped && c.x_at_max == p.x_at_max && c.n_points == p.n_points
}

/// Run the scan for every degree of `discs` and the tail row, next to the
/// published rows.
pub fn reference_cmax(discs: &MinDiscTable) -> Vec<CmaxComparison> {
    let published = published_cmax();
    let mut jobs: Vec<(String, u32, f64, bool)> = discs
        .degrees
        .iter()
        .map(|e| (e.n.to_string(), e.n, e.disc, false))
        .collect();
    let tail = discs.tail;
    jobs.push((
        format!(">={}", tail.n),
        tail.n,
        tail.root_disc.powi(tail.n as i32),
        true,
    ));
    jobs.par_iter()
        .map(|(label, n, disc, is_tail)| {
            let res = if *is_tail {
                cmax_scan_tail(*n, *disc)
            } else {
                cmax_scan(*n, *disc)
            };
            let publ = published.iter().find(|p| &p.n == label).cloned();
            match res {
                Ok(c) => CmaxComparison {
                    label: label.clone(),
                    matches: publ.as_ref().is_some_and(|p| cmax_matches(&c, p)),
                    computed: Some(c),
                    published: publ,
                    error: None,
                },
                Err(e) => CmaxComparison {
                    label: label.clone(),
                    computed: None,
                    published: publ,
                    matches: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}
