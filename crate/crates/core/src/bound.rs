use serde::{Deserialize, Serialize};

/// Split of a bound into the pieces proportional to `log Delta_K`, to `n_K`,
/// the field-independent remainder and the unit-rank correction.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Terms {
    pub disc: f64,
    pub degree: f64,
    #[serde(rename = "const")]
    pub constant: f64,
    pub epsilon: f64,
}

impl Terms {
    pub fn total(&self) -> f64 {
        self.disc + self.degree + self.constant + self.epsilon
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub x: f64,
    #[serde(rename = "T")]
    pub t: Option<f64>,
    pub kappa: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub value: f64,
    pub terms: Terms,
    pub params: Params,
}

impl BoundResult {
    pub(crate) fn from_terms(terms: Terms, x: f64, t: Option<f64>, kappa: Option<f64>) -> Self {
        BoundResult {
            value: terms.total(),
            terms,
            params: Params { x, t, kappa },
        }
    }
}
