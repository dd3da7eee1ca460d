//! JSON run configuration: a problem descriptor plus optional
//! per-subcommand sections. Command-line flags override file values.

use serde::{Deserialize, Serialize};

use heunwell::potential::PhysicalParams;

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// {"m": …, "hbar": …, "v0": …, "v1": …}
    pub problem: Option<PhysicalParams>,
    pub potential: Option<PotentialSection>,
    pub spectrum: Option<SpectrumSection>,
    pub wavefunctions: Option<WavefunctionsSection>,
    pub twostate: Option<TwoStateSection>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PotentialSection {
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SpectrumSection {
    pub levels: Option<usize>,
    pub verify: Option<bool>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct WavefunctionsSection {
    pub levels: Option<usize>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TwoStateSection {
    pub u0: Option<f64>,
    pub delta0: Option<f64>,
    pub tau: Option<f64>,
    pub tol: Option<f64>,
    pub lambda_min: Option<f64>,
    pub lambda_max: Option<f64>,
    pub lambda_points: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<RunConfig, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trips_losslessly() {
        let cfg = RunConfig {
            problem: Some(PhysicalParams {
                m: 2.0,
                hbar: 0.5,
                v0: -1.0,
                v1: 3.0,
            }),
            potential: Some(PotentialSection {
                x_min: Some(0.05),
                x_max: Some(6.0),
                points: Some(200),
            }),
            spectrum: Some(SpectrumSection {
                levels: Some(5),
                verify: Some(true),
            }),
            wavefunctions: None,
            twostate: Some(TwoStateSection {
                u0: Some(2.0),
                delta0: Some(10.0),
                tau: Some(1.0),
                tol: Some(1e-10),
                lambda_min: Some(10.0),
                lambda_max: Some(400.0),
                lambda_points: Some(12),
            }),
        };
        let json = serde_json::to_string_pretty(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let res: Result<RunConfig, _> = serde_json::from_str(r#"{"problme": {}}"#);
        assert!(res.is_err());
    }
}
