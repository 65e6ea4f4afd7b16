//! Parameter sweeps over baseline and wave-packet width.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Mode, SweepConfig};
use crate::correlations::{correlation_report, PROBABILITY_SLACK};
use crate::dynamics::{mass_splittings, plane_wave_row, wave_packet_row, WavePacketConfig};
use crate::error::{Error, Result};
use crate::pmns::build_pmns;
use crate::units;

pub const IDENTITY_TOLERANCE: f64 = 1e-12;
pub const ROW_SUM_TOLERANCE: f64 = 1e-12;

/// One grid point. `sigma_x_m` is 0 for plane-wave sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub sigma_x_m: f64,
    #[serde(rename = "L_km")]
    pub baseline_km: f64,
    #[serde(rename = "P_e")]
    pub p_e: f64,
    #[serde(rename = "P_mu")]
    pub p_mu: f64,
    #[serde(rename = "P_tau")]
    pub p_tau: f64,
    #[serde(rename = "C_l1")]
    pub l1_norm: f64,
    #[serde(rename = "C_emu")]
    pub c_emu: f64,
    #[serde(rename = "C_etau")]
    pub c_etau: f64,
    #[serde(rename = "C_mutau")]
    pub c_mutau: f64,
    pub identity_residual: f64,
}

/// Round-off negatives within the correlation slack are reported as 0.
fn clip_probability(p: f64) -> f64 {
    if (-PROBABILITY_SLACK..0.0).contains(&p) {
        0.0
    } else {
        p
    }
}

/// Evaluates every (σ_x, L) grid point. Records are ordered by σ_x, then L,
/// both ascending, regardless of how the work was scheduled.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let params = config.params;
    let u = build_pmns(params.angles, params.delta_cp)?;
    let splittings = mass_splittings(&params);
    let baselines = config.grid.values_km();

    let widths: Vec<Option<f64>> = match config.mode {
        Mode::PlaneWave => vec![None],
        Mode::WavePacket => {
            let mut w = config.sigma_x.clone();
            w.sort_by(f64::total_cmp);
            w.dedup();
            w.into_iter().map(Some).collect()
        }
    };

    let points: Vec<(Option<f64>, f64)> = widths
        .iter()
        .flat_map(|&w| baselines.iter().map(move |&l| (w, l)))
        .collect();

    points
        .par_iter()
        .map(|&(width, baseline_km)| {
            let sigma_x_m = width.map(units::natural_to_meters).unwrap_or(0.0);
            let at_point = |source: Error| Error::GridPoint {
                sigma_x_m,
                baseline_km,
                source: Box::new(source),
            };
            let l = units::km_to_natural(baseline_km);
            let row = match width {
                None => plane_wave_row(&u, &splittings, params.energy, l, config.initial_flavor),
                Some(sigma) => {
                    let wp = WavePacketConfig::effective(sigma).map_err(at_point)?;
                    wave_packet_row(&u, &params, &wp, l, config.initial_flavor)
                }
            };
            let row_error = (row.sum() - 1.0).abs();
            if row_error >= ROW_SUM_TOLERANCE {
                return Err(at_point(Error::Invariant {
                    name: "probability conservation",
                    value: row_error,
                }));
            }
            let report = correlation_report(&row);
            if report.identity_residual >= IDENTITY_TOLERANCE {
                return Err(at_point(Error::Invariant {
                    name: "coherence-concurrence identity",
                    value: report.identity_residual,
                }));
            }
            let [p_e, p_mu, p_tau] = row.as_array().map(clip_probability);
            Ok(SweepRecord {
                sigma_x_m,
                baseline_km,
                p_e,
                p_mu,
                p_tau,
                l1_norm: report.l1_norm,
                c_emu: report.concurrence_emu,
                c_etau: report.concurrence_etau,
                c_mutau: report.concurrence_mutau,
                identity_residual: report.identity_residual,
            })
        })
        .collect()
}
