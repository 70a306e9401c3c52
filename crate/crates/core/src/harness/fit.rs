use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{HarnessError, SettingSummary};
use crate::algorithms::AlgorithmVariant;
use crate::problems::BenchmarkKind;

/// Runtime model used for the scaling fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalingModel {
    /// `n^2 r (r + ln n)`, the tight bound of the strict variant.
    N2RRLogN,
    /// `n^2 r^2 ln n`, the upper bound of the original SEMO.
    N2R2LogN,
}

impl ScalingModel {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalingModel::N2RRLogN => "n2r(r+ln n)",
            ScalingModel::N2R2LogN => "n2r2 ln n",
        }
    }

    pub fn eval(self, n: usize, r: u32) -> f64 {
        let n = n as f64;
        let r = r as f64;
        match self {
            ScalingModel::N2RRLogN => n * n * r * (r + n.ln()),
            ScalingModel::N2R2LogN => n * n * r * r * n.ln(),
        }
    }
}

impl fmt::Display for ScalingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScalingModel {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "n2r-rlogn" | "tight" => Ok(ScalingModel::N2RRLogN),
            "n2r2logn" | "upper" => Ok(ScalingModel::N2R2LogN),
            other => Err(HarnessError::Config(format!(
                "unknown scaling model `{other}` (expected n2r-rlogn or n2r2logn)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub n: usize,
    pub r: u32,
    pub mean: f64,
    /// `mean / (c_hat * model(n, r))`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub benchmark: BenchmarkKind,
    pub variant: AlgorithmVariant,
    pub model: ScalingModel,
    pub c_hat: f64,
    pub residuals: Vec<Residual>,
}

/// Least-squares fit of `mean ≈ c · model(n, r)` through the origin:
/// `c = Σ m·y / Σ m²`.
pub fn fit_scaling(
    summaries: &[SettingSummary],
    model: ScalingModel,
) -> Result<ScalingFit, HarnessError> {
    if summaries.len() < 2 {
        return Err(HarnessError::DegenerateFit(format!(
            "{} setting(s); at least 2 are needed",
            summaries.len()
        )));
    }
    let head = &summaries[0];
    if summaries
        .iter()
        .any(|s| s.benchmark != head.benchmark || s.variant != head.variant)
    {
        return Err(HarnessError::MixedSettings(
            "scaling fit needs one benchmark and one variant".into(),
        ));
    }

    let (mut my, mut mm) = (0.0, 0.0);
    for s in summaries {
        let m = model.eval(s.n, s.r);
        my += m * s.mean;
        mm += m * m;
    }
    let c_hat = my / mm;
    if !(c_hat.is_finite() && c_hat > 0.0) {
        return Err(HarnessError::DegenerateFit(format!("non-positive c_hat {c_hat}")));
    }
    let residuals = summaries
        .iter()
        .map(|s| Residual {
            n: s.n,
            r: s.r,
            mean: s.mean,
            ratio: s.mean / (c_hat * model.eval(s.n, s.r)),
        })
        .collect();
    Ok(ScalingFit {
        benchmark: head.benchmark,
        variant: head.variant,
        model,
        c_hat,
        residuals,
    })
}
