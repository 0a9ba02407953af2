//! Scenario configuration: a single TOML file with a strict schema,
//! plus dotted-path overrides from the command line.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Result, RingsimError};
use crate::geometry::GeometrySpec;

/// Which analysis a scenario runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalysisKind {
    /// Time-domain donor→acceptor transport.
    Transport,
    /// Finite-chain band classification.
    Bands,
    /// Zak phase of the infinite chain.
    Zak,
    /// Edge/corner localization of all modes.
    Edges,
    /// Steady-state trapping-rate scan.
    Steady,
    /// Single-ring closed-form analytics.
    Analytics,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    pub kind: AnalysisKind,
}

/// Where the Gaussian beam is centered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriveCenter {
    Donor,
    Acceptor,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhysicsConfig {
    /// Donor/acceptor detuning Δ in Γ0.
    pub delta: f64,
    /// Acceptor trapping rate Γ_T in Γ0.
    pub trap_rate: f64,
    /// Drive Rabi frequency Ω0 in Γ0.
    pub rabi: f64,
    /// Gaussian beam waist in λ0.
    pub waist: f64,
    /// Beam center (donor by default; the figure captions disagree, so
    /// it is switchable).
    pub drive_center: DriveCenter,
    /// Transport horizon tΓ0.
    pub t_max: f64,
    /// Number of points on the uniform time grid.
    pub time_points: usize,
    /// Trapping rates for the steady scan; a log grid is generated when
    /// empty.
    pub trap_rates: Vec<f64>,
    /// Detuning scan window for the analytics mode.
    pub delta_scan: (f64, f64),
    /// k points for the Zak phase Wilson loop.
    pub zak_k_points: usize,
}

impl Default for PhysicsConfig {
    fn default() -> Self {
        PhysicsConfig {
            delta: 0.0,
            trap_rate: 0.0,
            rabi: 1e-3,
            waist: 0.3,
            drive_center: DriveCenter::Donor,
            t_max: 150.0,
            time_points: 301,
            trap_rates: Vec::new(),
            delta_scan: (-10.0, 10.0),
            zak_k_points: 128,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Name of the swept scalar: one of `delta`, `trap_rate`, `rabi`,
    /// `waist`, `d`, `d_r`, `n_ring`, `rings`, `sigma`, `t_max`.
    pub parameter: String,
    /// Explicit grid; overrides start/stop/points when present.
    #[serde(default)]
    pub values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    /// Logarithmic spacing between start and stop.
    #[serde(default)]
    pub log: bool,
}

impl SweepConfig {
    /// Materialize the sweep grid in documented axis order.
    pub fn grid(&self) -> Result<Vec<f64>> {
        if !self.values.is_empty() {
            return Ok(self.values.clone());
        }
        let (start, stop, points) = match (self.start, self.stop, self.points) {
            (Some(a), Some(b), Some(n)) if n >= 2 => (a, b, n),
            _ => {
                return Err(RingsimError::Config(
                    "sweep needs either `values` or `start`/`stop`/`points >= 2`".into(),
                ))
            }
        };
        if self.log {
            if start <= 0.0 || stop <= 0.0 {
                return Err(RingsimError::Config(
                    "log sweep needs positive start/stop".into(),
                ));
            }
            let (la, lb) = (start.ln(), stop.ln());
            Ok((0..points)
                .map(|i| (la + (lb - la) * i as f64 / (points - 1) as f64).exp())
                .collect())
        } else {
            Ok((0..points)
                .map(|i| start + (stop - start) * i as f64 / (points - 1) as f64)
                .collect())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DisorderKind {
    /// Gaussian lattice frequency shifts of width sigma.
    Frequency,
    /// Uniform random ring rotations.
    Rotational,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisorderConfig {
    pub kind: DisorderKind,
    /// Standard deviation δω in Γ0 (frequency disorder only).
    #[serde(default)]
    pub sigma: f64,
    pub n_realizations: usize,
    #[serde(default)]
    pub base_seed: u64,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    /// Output directory; falls back to `RINGSIM_OUT_DIR`, then `.`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub directory: Option<PathBuf>,
    /// Render SVG plots next to the CSVs.
    pub svg: bool,
}

/// A complete run description; see the bundled examples for the schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub geometry: GeometrySpec,
    #[serde(default)]
    pub physics: PhysicsConfig,
    pub analysis: AnalysisConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disorder: Option<DisorderConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig =
            toml::from_str(text).map_err(|e| RingsimError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| RingsimError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.physics;
        if p.trap_rate < 0.0 {
            return Err(RingsimError::Config("physics.trap_rate must be >= 0".into()));
        }
        if p.t_max <= 0.0 || p.time_points < 2 {
            return Err(RingsimError::Config(
                "physics.t_max must be > 0 and time_points >= 2".into(),
            ));
        }
        if let Some(d) = &self.disorder {
            if d.n_realizations < 1 {
                return Err(RingsimError::Config(
                    "disorder.n_realizations must be >= 1".into(),
                ));
            }
            if d.kind == DisorderKind::Frequency && d.sigma < 0.0 {
                return Err(RingsimError::Config("disorder.sigma must be >= 0".into()));
            }
        }
        if let Some(s) = &self.sweep {
            s.grid()?;
            // reject unknown parameters before any computation
            let known = [
                "delta", "trap_rate", "rabi", "waist", "d", "d_r", "n_ring", "rings", "sigma",
                "t_max",
            ];
            if !known.contains(&s.parameter.as_str()) {
                return Err(RingsimError::Config(format!(
                    "unknown sweep parameter `{}` (expected one of {})",
                    s.parameter,
                    known.join(", ")
                )));
            }
        }
        Ok(())
    }

    /// Apply a `section.key=value` override (CLI `--set`). The value is
    /// parsed as TOML, so strings need quotes: `analysis.kind="zak"`.
    pub fn with_override(&self, assignment: &str) -> Result<Self> {
        let (path, raw) = assignment.split_once('=').ok_or_else(|| {
            RingsimError::Config(format!("override `{assignment}` is not of the form key=value"))
        })?;
        let mut doc: toml::Value = toml::Value::try_from(self)
            .map_err(|e| RingsimError::Config(e.to_string()))?;
        let value: toml::Value = toml::from_str(&format!("v = {raw}"))
            .map(|t: toml::Table| t["v"].clone())
            .or_else(|_| toml::from_str::<toml::Table>(&format!("v = \"{raw}\"")).map(|t| t["v"].clone()))
            .map_err(|e: toml::de::Error| RingsimError::Config(e.to_string()))?;
        let segments: Vec<&str> = path.trim().split('.').collect();
        set_dotted(&mut doc, &segments, value)
            .map_err(|e| RingsimError::Config(format!("`{path}`: {e}")))?;
        let cfg: ScenarioConfig = doc
            .try_into()
            .map_err(|e: toml::de::Error| RingsimError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// SHA-256 of the canonical TOML serialization; stamped on every
    /// output file so artifacts can be traced back to their exact
    /// configuration.
    pub fn hash(&self) -> Result<String> {
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        hasher.update(self.to_toml_string()?.as_bytes());
        Ok(hex::encode(hasher.finalize()))
    }

    /// Set a swept scalar on a copy of the config.
    pub fn with_parameter(&self, name: &str, value: f64) -> Result<Self> {
        let mut cfg = self.clone();
        match name {
            "delta" => cfg.physics.delta = value,
            "trap_rate" => cfg.physics.trap_rate = value,
            "rabi" => cfg.physics.rabi = value,
            "waist" => cfg.physics.waist = value,
            "t_max" => cfg.physics.t_max = value,
            "sigma" => match &mut cfg.disorder {
                Some(d) => d.sigma = value,
                None => {
                    return Err(RingsimError::Config(
                        "sweeping `sigma` needs a [disorder] section".into(),
                    ))
                }
            },
            "d" | "d_r" | "n_ring" | "rings" => {
                cfg.geometry = set_geometry_field(&self.geometry, name, value)?
            }
            other => {
                return Err(RingsimError::Config(format!(
                    "unknown sweep parameter `{other}`"
                )))
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn set_dotted(
    doc: &mut toml::Value,
    segments: &[&str],
    value: toml::Value,
) -> std::result::Result<(), String> {
    let table = doc
        .as_table_mut()
        .ok_or_else(|| format!("`{}` is not inside a table", segments[0]))?;
    if segments.len() == 1 {
        table.insert(segments[0].to_string(), value);
        Ok(())
    } else {
        let next = table
            .entry(segments[0].to_string())
            .or_insert(toml::Value::Table(toml::Table::new()));
        set_dotted(next, &segments[1..], value)
    }
}

fn set_geometry_field(spec: &GeometrySpec, name: &str, value: f64) -> Result<GeometrySpec> {
    let mut doc = toml::Value::try_from(spec).map_err(|e| RingsimError::Config(e.to_string()))?;
    let table = doc
        .as_table_mut()
        .ok_or_else(|| RingsimError::Config("geometry is not a table".into()))?;
    let entry = match name {
        "n_ring" | "rings" => toml::Value::Integer(value.round() as i64),
        _ => toml::Value::Float(value),
    };
    if !table.contains_key(name) {
        return Err(RingsimError::Config(format!(
            "geometry kind `{}` has no field `{name}`",
            table
                .get("kind")
                .and_then(|k| k.as_str())
                .unwrap_or("unknown")
        )));
    }
    table.insert(name.to_string(), entry);
    doc.try_into()
        .map_err(|e: toml::de::Error| RingsimError::Config(e.to_string()))
}

/// Resolve the output directory: config value, then `RINGSIM_OUT_DIR`,
/// then the current directory.
pub fn resolve_output_dir(cfg: &ScenarioConfig) -> PathBuf {
    cfg.output
        .directory
        .clone()
        .or_else(|| std::env::var_os("RINGSIM_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
[geometry]
kind = "ring_chain"
n_ring = 9
rings = 10
d = 0.05
d_r = 0.045

[physics]
delta = 0.0
trap_rate = 2.0

[analysis]
kind = "transport"
"#;

    #[test]
    fn parses_and_hashes() {
        let cfg = ScenarioConfig::from_toml_str(EXAMPLE).unwrap();
        assert_eq!(cfg.physics.trap_rate, 2.0);
        assert_eq!(cfg.physics.time_points, 301); // default
        let h1 = cfg.hash().unwrap();
        let h2 = cfg.hash().unwrap();
        assert_eq!(h1, h2);
        assert_eq!(h1.len(), 64);
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = EXAMPLE.replace("trap_rate = 2.0", "trap_rat = 2.0");
        assert!(matches!(
            ScenarioConfig::from_toml_str(&bad),
            Err(RingsimError::Config(_))
        ));
    }

    #[test]
    fn overrides_apply_and_validate() {
        let cfg = ScenarioConfig::from_toml_str(EXAMPLE).unwrap();
        let patched = cfg.with_override("physics.delta=-1.5").unwrap();
        assert_eq!(patched.physics.delta, -1.5);
        let patched = cfg.with_override("analysis.kind=\"zak\"").unwrap();
        assert_eq!(patched.analysis.kind, AnalysisKind::Zak);
        assert!(cfg.with_override("physics.trap_rate=-1").is_err());
        assert!(cfg.with_override("nonsense").is_err());
    }

    #[test]
    fn sweep_grids() {
        let lin = SweepConfig {
            parameter: "delta".into(),
            values: vec![],
            start: Some(0.0),
            stop: Some(1.0),
            points: Some(5),
            log: false,
        };
        assert_eq!(lin.grid().unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let log = SweepConfig {
            parameter: "trap_rate".into(),
            values: vec![],
            start: Some(0.01),
            stop: Some(1.0),
            points: Some(3),
            log: true,
        };
        let g = log.grid().unwrap();
        assert!((g[1] - 0.1).abs() < 1e-12);
    }

    #[test]
    fn parameter_application_reaches_geometry() {
        let cfg = ScenarioConfig::from_toml_str(EXAMPLE).unwrap();
        let swept = cfg.with_parameter("d_r", 0.03).unwrap();
        match swept.geometry {
            GeometrySpec::RingChain { d_r, .. } => assert_eq!(d_r, 0.03),
            _ => panic!("geometry kind changed"),
        }
        let swept = cfg.with_parameter("n_ring", 8.0).unwrap();
        match swept.geometry {
            GeometrySpec::RingChain { n_ring, .. } => assert_eq!(n_ring, 8),
            _ => panic!("geometry kind changed"),
        }
        assert!(cfg.with_parameter("sites", 10.0).is_err());
    }
}
