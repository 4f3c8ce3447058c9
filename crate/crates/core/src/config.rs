//! Config documents for reproducible runs.
//!
//! Every field is validated before any computation; unknown keys are
//! rejected; a resolved copy (defaults filled) accompanies every report and
//! feeds the config hash.

use serde::{Deserialize, Serialize};

use crate::coverings::{TransitionKind, WindowProfile};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::harness::FamilyKind;
use crate::symbols::SymbolSpec;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileConfig {
    pub r1: f64,
    pub r2: f64,
    #[serde(default)]
    pub kind: TransitionKind,
}

impl ProfileConfig {
    pub fn to_profile(&self) -> Result<WindowProfile> {
        WindowProfile::new(self.r1, self.r2, self.kind)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub p: Exponent,
    pub q: Exponent,
    pub s: f64,
}

/// Probe selector for `theorem check`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeKind {
    Plancherel,
    Criterion,
    Ek,
    Operator,
    Convolution,
    Bernstein,
    PhaseRemainder,
}

/// Tolerances with spec defaults; a config may tighten or relax them.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Partition sum deviation.
    pub sum_dev: f64,
    /// Stability gates: allowed relative growth under doubling.
    pub growth: f64,
    /// Plancherel ratio deviation from 1.
    pub plancherel_dev: f64,
    /// Window FL^1 max/min ratio.
    pub fl1_ratio: f64,
    /// Derivative-constant drift across the lattice.
    pub deriv_drift: f64,
    /// Relative slope error for cardinality fits.
    pub slope_rel: f64,
    /// Drift of the separating example's class sup under doubling.
    pub fm_drift: f64,
    /// Bernstein p = 2 excess above 1.
    pub bernstein_p2: f64,
    /// Bracket-ratio band and distance bound for overlap geometry.
    pub geometry_band: f64,
    /// Phase-remainder ratio bound (frozen calibration).
    pub remainder_ratio: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            sum_dev: 1e-8,
            growth: 0.10,
            plancherel_dev: 1e-6,
            fl1_ratio: 3.0,
            deriv_drift: 0.10,
            slope_rel: 0.15,
            fm_drift: 0.05,
            bernstein_p2: 1e-6,
            geometry_band: 10.0,
            remainder_ratio: REMAINDER_RATIO_BOUND,
        }
    }
}

/// Frozen calibration bound for phase-remainder ratios. The baseline sweep
/// (bracket-power symbol, alpha = delta = 1/2) realizes a maximum of 1.191
/// at k = 0 against its neighbor windows and stays there for truncations
/// from 30 to 2000, so 2.0 certifies uniform boundedness with slack.
pub const REMAINDER_RATIO_BOUND: f64 = 2.0;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProbeConfig {
    pub probe: ProbeKind,
    pub family: FamilyKind,
    pub seed: u64,
    pub count: usize,
    /// Runs operator probes even when delta sits below the boundedness
    /// threshold (sharpness diagnostics; the stability gate then reports
    /// the growth).
    pub allow_sub_threshold: bool,
    pub tolerances: Tolerances,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            probe: ProbeKind::Plancherel,
            family: FamilyKind::RandomBandLimited,
            seed: 7,
            count: 20,
            allow_sub_threshold: false,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: String,
    pub formats: Vec<String>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: "out".into(), formats: vec!["json".into(), "csv".into()] }
    }
}

/// The command-independent config document.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub alpha: Option<f64>,
    pub n: Option<usize>,
    #[serde(rename = "N")]
    pub samples: Option<usize>,
    #[serde(rename = "L")]
    pub period: Option<f64>,
    pub xi_max: Option<f64>,
    pub profile: Option<ProfileConfig>,
    pub space: Option<SpaceConfig>,
    pub symbol: Option<SymbolSpec>,
    pub delta: Option<f64>,
    pub bump: Option<crate::harness::BumpTrainSpec>,
    pub probe: Option<ProbeConfig>,
    pub output: Option<OutputConfig>,
}

/// Fully resolved configuration (all defaults filled).
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedConfig {
    pub alpha: f64,
    pub n: usize,
    #[serde(rename = "N")]
    pub samples: usize,
    #[serde(rename = "L")]
    pub period: f64,
    pub xi_max: f64,
    pub profile: ProfileConfig,
    pub space: SpaceConfig,
    pub symbol: SymbolSpec,
    pub delta: f64,
    pub bump: crate::harness::BumpTrainSpec,
    pub probe: ProbeConfig,
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("bad config: {e}")))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Fills defaults and validates the result.
    pub fn resolve(&self) -> Result<ResolvedConfig> {
        let n = self.n.unwrap_or(1);
        let resolved = ResolvedConfig {
            alpha: self.alpha.unwrap_or(0.5),
            n,
            samples: self.samples.unwrap_or(2048),
            period: self.period.unwrap_or(64.0),
            xi_max: self.xi_max.unwrap_or(16.0),
            profile: self.profile.clone().unwrap_or_else(|| {
                let p = WindowProfile::default_for_dim(n);
                ProfileConfig { r1: p.r1, r2: p.r2, kind: p.kind }
            }),
            space: self.space.clone().unwrap_or(SpaceConfig {
                p: Exponent::Finite(2.0),
                q: Exponent::Finite(2.0),
                s: 0.0,
            }),
            symbol: self.symbol.clone().unwrap_or(SymbolSpec::Zero),
            delta: self.delta.unwrap_or(0.0),
            bump: self.bump.unwrap_or_default(),
            probe: self.probe.clone().unwrap_or_default(),
            output: self.output.clone().unwrap_or_default(),
        };
        resolved.validate()?;
        Ok(resolved)
    }
}

impl ResolvedConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::Config(format!("alpha must lie in [0,1], got {}", self.alpha)));
        }
        if self.n != 1 && self.n != 2 {
            return Err(Error::Config(format!("dimension must be 1 or 2, got {}", self.n)));
        }
        if !self.samples.is_power_of_two() || self.samples < 2 {
            return Err(Error::Config(format!("N must be a power of two, got {}", self.samples)));
        }
        if self.period <= 0.0 || self.xi_max <= 0.0 {
            return Err(Error::Config("L and xi_max must be positive".into()));
        }
        if self.delta < 0.0 {
            return Err(Error::Config(format!("delta must be nonnegative, got {}", self.delta)));
        }
        self.profile.to_profile()?;
        self.symbol.validate(self.n)?;
        if self.probe.count == 0 {
            return Err(Error::Config("probe count must be positive".into()));
        }
        Ok(())
    }

    /// JSON value of the resolved config (the hash input).
    pub fn as_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("resolved config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_rejected() {
        assert!(RunConfig::from_json(r#"{"alpha":0.5,"mystery":1}"#).is_err());
    }

    #[test]
    fn defaults_are_valid() {
        let cfg = RunConfig::default().resolve().unwrap();
        assert_eq!(cfg.samples, 2048);
        assert_eq!(cfg.period, 64.0);
        assert_eq!(cfg.xi_max, 16.0);
        assert_eq!(cfg.alpha, 0.5);
    }

    #[test]
    fn bad_values_rejected() {
        let cfg = RunConfig::from_json(r#"{"alpha":1.5}"#).unwrap();
        assert!(cfg.resolve().is_err());
        let cfg = RunConfig::from_json(r#"{"N":1000}"#).unwrap();
        assert!(cfg.resolve().is_err());
        let cfg = RunConfig::from_json(r#"{"profile":{"r1":0.6,"r2":0.5}}"#).unwrap();
        assert!(cfg.resolve().is_err());
    }

    #[test]
    fn resolved_config_hash_is_stable() {
        let a = RunConfig::from_json(r#"{"alpha":0.25,"N":4096}"#).unwrap().resolve().unwrap();
        let b = RunConfig::from_json(r#"{"N":4096,"alpha":0.25}"#).unwrap().resolve().unwrap();
        assert_eq!(
            crate::report::config_hash(&a.as_value()),
            crate::report::config_hash(&b.as_value())
        );
    }

    #[test]
    fn exponent_inf_round_trips_through_config() {
        let cfg =
            RunConfig::from_json(r#"{"space":{"p":1,"q":"inf","s":-0.5}}"#).unwrap();
        let r = cfg.resolve().unwrap();
        assert!(r.space.q.is_infinite());
    }
}
