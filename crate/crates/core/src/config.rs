//! Sweep configuration: a flat `key = value` document.
//!
//! Blank lines and `#` comments are ignored, values may be quoted, and every
//! key is optional. Unknown or repeated keys are errors. See the README for
//! the full key list.

use std::path::PathBuf;
use std::str::FromStr;

use crate::dynamics::{OscillationParams, DEFAULT_ZETA};
use crate::error::{Error, Result};
use crate::flavor::Flavor;
use crate::pmns::MixingAngles;
use crate::units::{self, parse_length};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    PlaneWave,
    WavePacket,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "plane" | "plane_wave" | "planewave" => Ok(Mode::PlaneWave),
            "wavepacket" | "wave_packet" => Ok(Mode::WavePacket),
            other => Err(format!(
                "unknown mode `{other}` (expected plane or wavepacket)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridScale {
    Linear,
    Log,
}

impl FromStr for GridScale {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lin" | "linear" => Ok(GridScale::Linear),
            "log" => Ok(GridScale::Log),
            other => Err(format!("unknown scale `{other}` (expected lin or log)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// Baselines in km.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineGrid {
    pub min_km: f64,
    pub max_km: f64,
    pub points: usize,
    pub scale: GridScale,
}

impl BaselineGrid {
    pub fn values_km(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    GridScale::Linear => self.min_km + t * (self.max_km - self.min_km),
                    GridScale::Log => self.min_km * (self.max_km / self.min_km).powf(t),
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let bad = |key: &str, message: String| {
            Err(Error::InvalidKey {
                key: key.into(),
                message,
            })
        };
        if !self.min_km.is_finite() || self.min_km < 0.0 {
            return bad(
                "l_min_km",
                format!("{} must be finite and >= 0", self.min_km),
            );
        }
        if !self.max_km.is_finite() || self.max_km <= self.min_km {
            return bad(
                "l_max_km",
                format!(
                    "{} must be finite and > l_min_km = {}",
                    self.max_km, self.min_km
                ),
            );
        }
        if self.points < 2 {
            return bad("l_points", format!("{} must be at least 2", self.points));
        }
        if self.scale == GridScale::Log && self.min_km <= 0.0 {
            return bad("l_scale", "log spacing needs l_min_km > 0".into());
        }
        Ok(())
    }
}

/// Default widths for the coherence-vs-distance figure, in meters. Their
/// `L_coh` for the 3–1 splitting at 10 GeV are roughly 2.1e3, 1.1e4 and
/// 1.1e5 km: well inside, comparable to, and beyond the 3e4 km default range.
pub const FIG1_SIGMA_X_M: [f64; 3] = [1e-17, 5e-17, 5e-16];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub initial_flavor: Flavor,
    pub grid: BaselineGrid,
    /// Effective wave-packet widths in eV⁻¹.
    pub sigma_x: Vec<f64>,
    pub params: OscillationParams,
    pub mode: Mode,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            initial_flavor: Flavor::E,
            grid: BaselineGrid {
                min_km: 0.0,
                max_km: 30_000.0,
                points: 601,
                scale: GridScale::Linear,
            },
            sigma_x: FIG1_SIGMA_X_M
                .iter()
                .map(|&m| units::meters_to_natural(m))
                .collect(),
            params: OscillationParams::reference(),
            mode: Mode::WavePacket,
            format: OutputFormat::Csv,
            output: None,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if self.mode == Mode::WavePacket && self.sigma_x.is_empty() {
            return Err(Error::InvalidKey {
                key: "sigma_x".into(),
                message: "empty list in wavepacket mode".into(),
            });
        }
        if let Some(&bad) = self.sigma_x.iter().find(|s| !s.is_finite() || **s <= 0.0) {
            return Err(Error::InvalidKey {
                key: "sigma_x".into(),
                message: format!("width {bad} must be > 0"),
            });
        }
        self.params.validate()
    }
}

/// Parses a comma-separated list of tagged lengths into eV⁻¹.
pub fn parse_sigma_list(text: &str) -> std::result::Result<Vec<f64>, String> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            parse_length(item)
                .map(|(v, unit)| unit.to_natural(v))
                .ok_or_else(|| {
                    format!("`{}` is not a length with unit m, km or ev^-1", item.trim())
                })
        })
        .collect()
}

struct Surface {
    sin2: [f64; 3],
    delta_cp_deg: f64,
    dm2_small: f64,
    dm2_large: f64,
    energy_gev: f64,
    zeta: f64,
}

const KEYS: &[&str] = &[
    "initial_flavor",
    "mode",
    "l_min_km",
    "l_max_km",
    "l_points",
    "l_scale",
    "sigma_x",
    "sin2_theta12",
    "sin2_theta13",
    "sin2_theta23",
    "delta_cp_deg",
    "dm2_small_ev2",
    "dm2_large_ev2",
    "energy_gev",
    "zeta",
    "format",
    "output",
];

pub fn parse_config(text: &str) -> Result<SweepConfig> {
    let mut config = SweepConfig::default();
    let reference = OscillationParams::reference();
    let mut surface = Surface {
        sin2: [0.314, 0.008, 0.45],
        delta_cp_deg: 0.0,
        dm2_small: reference.small_splitting,
        dm2_large: reference.large_splitting,
        energy_gev: 10.0,
        zeta: DEFAULT_ZETA,
    };
    let mut seen: Vec<(&str, usize)> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::Config { line, message };
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, found `{content}`")))?;
        let key = key.trim();
        let value = value.trim().trim_matches('"').trim();
        let known = KEYS
            .iter()
            .find(|k| **k == key)
            .ok_or_else(|| err(format!("unknown key `{key}`")))?;
        if let Some((_, first)) = seen.iter().find(|(k, _)| k == known) {
            return Err(err(format!("`{key}` already set on line {first}")));
        }
        seen.push((known, line));

        let invalid = |message: String| err(format!("invalid value for `{key}`: {message}"));
        let number = || -> Result<f64> {
            let v: f64 = value
                .parse()
                .map_err(|_| invalid(format!("`{value}` is not a number")))?;
            if !v.is_finite() {
                return Err(invalid(format!("`{value}` is not finite")));
            }
            Ok(v)
        };

        match key {
            "initial_flavor" => config.initial_flavor = value.parse().map_err(invalid)?,
            "mode" => config.mode = value.parse().map_err(invalid)?,
            "l_min_km" => config.grid.min_km = number()?,
            "l_max_km" => config.grid.max_km = number()?,
            "l_points" => {
                let count: i64 = value
                    .parse()
                    .map_err(|_| invalid(format!("`{value}` is not an integer")))?;
                if count < 2 {
                    return Err(invalid(format!("{count} must be at least 2")));
                }
                config.grid.points = count as usize;
            }
            "l_scale" => config.grid.scale = value.parse().map_err(invalid)?,
            "sigma_x" => config.sigma_x = parse_sigma_list(value).map_err(invalid)?,
            "sin2_theta12" => surface.sin2[0] = number()?,
            "sin2_theta13" => surface.sin2[1] = number()?,
            "sin2_theta23" => surface.sin2[2] = number()?,
            "delta_cp_deg" => surface.delta_cp_deg = number()?,
            "dm2_small_ev2" => surface.dm2_small = number()?,
            "dm2_large_ev2" => surface.dm2_large = number()?,
            "energy_gev" => surface.energy_gev = number()?,
            "zeta" => surface.zeta = number()?,
            "format" => config.format = value.parse().map_err(invalid)?,
            "output" => config.output = Some(PathBuf::from(value)),
            _ => unreachable!("key list and match arms disagree"),
        }
    }

    // map parameter-level failures back to the key that caused them
    let at = |key: &str| {
        seen.iter()
            .find(|(k, _)| *k == key)
            .map(|(_, l)| *l)
            .unwrap_or(0)
    };
    let angles = MixingAngles::from_sin2(surface.sin2[0], surface.sin2[1], surface.sin2[2])
        .map_err(|e| {
            let key = match &e {
                Error::OutOfRange { name, .. } | Error::NonFinite(name) => *name,
                _ => "sin2_theta12",
            };
            Error::Config {
                line: at(key),
                message: format!("invalid value for `{key}`: {e}"),
            }
        })?;
    config.params = OscillationParams {
        angles,
        delta_cp: surface.delta_cp_deg.to_radians(),
        small_splitting: surface.dm2_small,
        large_splitting: surface.dm2_large,
        energy: units::gev_to_ev(surface.energy_gev),
        zeta: surface.zeta,
    };
    if let Err(e) = config.params.validate() {
        let key = match &e {
            Error::OutOfRange { name: "energy", .. } => "energy_gev",
            Error::OutOfRange { name: "zeta", .. } => "zeta",
            _ => "energy_gev",
        };
        return Err(Error::Config {
            line: at(key),
            message: format!("invalid value for `{key}`: {e}"),
        });
    }
    config.validate().map_err(|e| match e {
        Error::InvalidKey { key, message } => Error::Config {
            line: at(&key),
            message: format!("invalid value for `{key}`: {message}"),
        },
        other => other,
    })?;
    Ok(config)
}
