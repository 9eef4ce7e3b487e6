//! Text inputs: field specifications and run configuration.

use std::f64::consts::LN_10;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldProfile;

/// `log` of a positive decimal such as `23`, `4.9535` or `6.5467e749`,
/// without going through an `f64` that might overflow.
pub fn parse_log_decimal(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("'{s}' is not a positive decimal number"));
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    if mant.is_empty() || mant.starts_with(['+', '-']) && mant.len() == 1 {
        return Err(bad());
    }
    let m: f64 = mant.parse().map_err(|_| bad())?;
    if !(m > 0.0) || !m.is_finite() || exp.unsigned_abs() > 100_000 {
        return Err(bad());
    }
    Ok(m.ln() + exp as f64 * LN_10)
}

/// Parse `n,disc,r1,r2`. `disc` accepts scientific notation of any size.
pub fn parse_field_spec(spec: &str) -> Result<FieldProfile> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!("field spec '{spec}' must be n,disc,r1,r2")));
    }
    let int = |s: &str, what: &str| -> Result<u32> {
        s.parse()
            .map_err(|_| Error::Parse(format!("bad {what} '{s}' in field spec '{spec}'")))
    };
    let n = int(parts[0], "degree")?;
    let log_disc = parse_log_decimal(parts[1])?;
    let r1 = int(parts[2], "r1")?;
    let r2 = int(parts[3], "r2")?;
    FieldProfile::from_log_disc(n, log_disc, r1, r2)
}

/// Parse `n,r1,r2` or `n,_,r1,r2` together with an explicit `log Delta`.
pub fn parse_field_spec_with_log_disc(spec: &str, log_disc: f64) -> Result<FieldProfile> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let ints: Vec<&str> = match parts.len() {
        3 => parts,
        4 => vec![parts[0], parts[2], parts[3]],
        _ => {
            return Err(Error::Parse(format!(
                "field spec '{spec}' must be n,r1,r2 when a log discriminant is given"
            )))
        }
    };
    let mut v = [0u32; 3];
    for (slot, s) in v.iter_mut().zip(&ints) {
        *slot = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer '{s}' in field spec '{spec}'")))?;
    }
    FieldProfile::from_log_disc(v[0], log_disc, v[1], v[2])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Human,
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "human" => Ok(OutputFormat::Human),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Parse(format!("unknown output format '{s}'"))),
        }
    }
}

/// Settings shared by all commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub output_format: OutputFormat,
    pub precision_digits: u32,
    pub x_cap: u64,
    pub min_disc_table: Option<PathBuf>,
    pub strict_validation: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            output_format: OutputFormat::Human,
            precision_digits: 6,
            x_cap: crate::theorems::DEFAULT_X_CAP,
            min_disc_table: None,
            strict_validation: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=17).contains(&self.precision_digits) {
            return Err(Error::Parse(format!(
                "precision must be in 1..=17, got {}",
                self.precision_digits
            )));
        }
        if self.x_cap < 3 {
            return Err(Error::Parse(format!("x_cap must be at least 3, got {}", self.x_cap)));
        }
        Ok(())
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let c: RunConfig = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }
}

/// Parse a `FieldProfile` from its JSON form.
pub fn profile_from_json(json: &str) -> Result<FieldProfile> {
    serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
}

pub fn profile_to_json(profile: &FieldProfile) -> String {
    serde_json::to_string(profile).expect("profiles always serialize")
}
