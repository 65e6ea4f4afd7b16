//! The invariant suite behind `nu-correlate check`.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::SweepConfig;
use crate::correlations::{
    coherence_from_probabilities, correlation_report, density_from_amplitudes, l1_norm,
    partial_trace, three_mode_state, wootters_concurrence,
};
use crate::dynamics::{
    coherence_length, mass_splittings, time_integration_check, FlavorAmplitudes,
    TimeIntegrationOptions, WavePacketConfig,
};
use crate::error::Result;
use crate::flavor::Flavor;
use crate::pmns::{build_pmns, MixingAngles};
use crate::sweep::run_sweep;

#[derive(Debug, Clone, Copy)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub worst: f64,
    pub tolerance: f64,
    pub samples: usize,
}

impl PropertyCheck {
    pub fn passed(&self) -> bool {
        self.worst < self.tolerance
    }
}

/// Uniformly random direction in C³.
pub fn random_amplitudes<R: Rng>(rng: &mut R) -> FlavorAmplitudes {
    loop {
        let z: [Complex64; 3] = std::array::from_fn(|_| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let n2: f64 = z.iter().map(|x| x.norm_sqr()).sum();
        if n2 > 1e-6 {
            let n = n2.sqrt();
            return FlavorAmplitudes::new(z[0] / n, z[1] / n, z[2] / n);
        }
    }
}

pub fn run_checks(seed: u64) -> Result<Vec<PropertyCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fig1 = SweepConfig::default();
    let records = run_sweep(&fig1)?;
    let mut out = Vec::new();

    let mut worst = records
        .iter()
        .map(|r| r.identity_residual)
        .fold(0.0, f64::max);
    for _ in 0..10_000 {
        let p = random_amplitudes(&mut rng).probabilities();
        worst = worst.max(correlation_report(&p).identity_residual);
    }
    out.push(PropertyCheck {
        name: "coherence = sum of concurrences",
        worst,
        tolerance: 1e-12,
        samples: 10_000 + records.len(),
    });

    let mut worst = 0.0_f64;
    for _ in 0..1_000 {
        let angles = MixingAngles::new(
            rng.gen_range(0.0..=FRAC_PI_2),
            rng.gen_range(0.0..=FRAC_PI_2),
            rng.gen_range(0.0..=FRAC_PI_2),
        )?;
        worst = worst.max(build_pmns(angles, rng.gen_range(0.0..TAU))?.unitarity_deviation());
    }
    out.push(PropertyCheck {
        name: "mixing matrix unitarity",
        worst,
        tolerance: 1e-12,
        samples: 1_000,
    });

    let mut worst = 0.0_f64;
    for _ in 0..1_000 {
        let a = random_amplitudes(&mut rng);
        let psi = three_mode_state(&a);
        for traced in Flavor::ALL {
            let (b, g) = traced.complement();
            let full = wootters_concurrence(&partial_trace(&psi, traced))?;
            worst = worst.max((full - 2.0 * a.get(b).norm() * a.get(g).norm()).abs());
        }
    }
    out.push(PropertyCheck {
        name: "Wootters pipeline = 2|A_b||A_g|",
        worst,
        tolerance: 1e-10,
        samples: 3_000,
    });

    let mut worst = 0.0_f64;
    for _ in 0..10_000 {
        let a = random_amplitudes(&mut rng);
        let matrix_form = l1_norm(&density_from_amplitudes(&a)?);
        worst = worst.max((matrix_form - coherence_from_probabilities(&a.probabilities())).abs());
    }
    out.push(PropertyCheck {
        name: "pure-state l1 matrix = probability form",
        worst,
        tolerance: 1e-12,
        samples: 10_000,
    });

    let worst = records
        .iter()
        .map(|r| (r.p_e + r.p_mu + r.p_tau - 1.0).abs())
        .fold(0.0, f64::max);
    out.push(PropertyCheck {
        name: "probability conservation",
        worst,
        tolerance: 1e-12,
        samples: records.len(),
    });

    let worst = records
        .iter()
        .map(|r| (r.l1_norm - 2.0).max(0.0))
        .fold(0.0, f64::max);
    out.push(PropertyCheck {
        name: "l1-norm <= d - 1 = 2",
        worst,
        tolerance: 1e-12,
        samples: records.len(),
    });

    let params = fig1.params;
    let u = build_pmns(params.angles, params.delta_cp)?;
    let sigma = fig1.sigma_x[fig1.sigma_x.len() / 2];
    let packet = WavePacketConfig::symmetric(sigma)?;
    let l_coh = coherence_length(&packet, params.energy, mass_splittings(&params).get(2, 0))?;
    let opts = TimeIntegrationOptions::default();
    let mut worst = 0.0_f64;
    for k in 1..=20 {
        let l = 0.3 * l_coh * k as f64 / 20.0;
        let report = time_integration_check(&u, &params, &packet, l, fig1.initial_flavor, &opts)?;
        worst = worst.max(report.max_deviation);
    }
    out.push(PropertyCheck {
        name: "time-integrated amplitude = closed form",
        worst,
        tolerance: opts.tolerance,
        samples: 20,
    });

    Ok(out)
}
