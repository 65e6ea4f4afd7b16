//! Three-flavor neutrino oscillation in plane-wave and wave-packet pictures,
//! and the quantum correlations of the evolved flavor state: l1-norm of
//! coherence and pairwise flavor-mode concurrence.
//!
//! ```
//! use nu_correlate::correlations::correlation_report;
//! use nu_correlate::dynamics::{wave_packet_row, OscillationParams, WavePacketConfig};
//! use nu_correlate::flavor::Flavor;
//! use nu_correlate::pmns::build_pmns;
//! use nu_correlate::units::{km_to_natural, meters_to_natural};
//!
//! let params = OscillationParams::reference();
//! let u = build_pmns(params.angles, params.delta_cp).unwrap();
//! let packet = WavePacketConfig::effective(meters_to_natural(5e-17)).unwrap();
//! let row = wave_packet_row(&u, &params, &packet, km_to_natural(4000.0), Flavor::E);
//! let report = correlation_report(&row);
//! assert!(report.identity_residual < 1e-12);
//! ```

pub mod check;
pub mod config;
pub mod correlations;
pub mod dynamics;
pub mod eigen;
pub mod error;
pub mod flavor;
pub mod output;
pub mod pmns;
pub mod quadrature;
pub mod sweep;
pub mod units;

pub use error::{Error, Result};
pub use flavor::Flavor;
