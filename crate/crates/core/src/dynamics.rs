//! Flavor transition amplitudes and probabilities.
//!
//! Two pictures are provided: plane-wave evolution, where the amplitude is a
//! coherent sum of mass eigenstates with relative phases `Δm²_a1 L / 2E`, and
//! the Gaussian wave-packet picture, where interference between mass states
//! `a ≠ b` is damped by the separation of their packets (coherence length)
//! and by the localization of production and detection.
//!
//! Everything here is in natural units: energies in eV, lengths and times in
//! eV⁻¹. Conversions live in [`crate::units`].

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::flavor::Flavor;
use crate::pmns::{MixingAngles, PmnsMatrix};
use crate::quadrature::{self, QuadratureOptions};
use crate::units;

/// Default energy-sharing parameter from pion-decay kinematics.
pub const DEFAULT_ZETA: f64 = 0.2;

/// Physical inputs of an oscillation calculation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationParams {
    pub angles: MixingAngles,
    /// Dirac phase in radians.
    pub delta_cp: f64,
    /// δm² in eV².
    pub small_splitting: f64,
    /// Δm² in eV².
    pub large_splitting: f64,
    /// Neutrino energy in eV.
    pub energy: f64,
    pub zeta: f64,
}

impl OscillationParams {
    pub fn new(
        angles: MixingAngles,
        delta_cp: f64,
        small_splitting: f64,
        large_splitting: f64,
        energy: f64,
        zeta: f64,
    ) -> Result<Self> {
        let params = Self {
            angles,
            delta_cp,
            small_splitting,
            large_splitting,
            energy,
            zeta,
        };
        params.validate()?;
        Ok(params)
    }

    /// sin²θ12 = 0.314, sin²θ13 = 0.008, sin²θ23 = 0.45, δm² = 7.92e-5 eV²,
    /// Δm² = 2.6e-3 eV², E = 10 GeV, δ_CP = 0, ζ = 0.2.
    pub fn reference() -> Self {
        Self {
            angles: MixingAngles::from_sin2(0.314, 0.008, 0.45).expect("valid reference angles"),
            delta_cp: 0.0,
            small_splitting: 7.92e-5,
            large_splitting: 2.6e-3,
            energy: units::gev_to_ev(10.0),
            zeta: DEFAULT_ZETA,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("delta_cp", self.delta_cp),
            ("small_splitting", self.small_splitting),
            ("large_splitting", self.large_splitting),
            ("energy", self.energy),
            ("zeta", self.zeta),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        if self.energy <= 0.0 {
            return Err(Error::OutOfRange {
                name: "energy",
                value: self.energy,
                min: 0.0,
                max: f64::INFINITY,
            });
        }
        if !(0.0..1.0).contains(&self.zeta) {
            return Err(Error::OutOfRange {
                name: "zeta",
                value: self.zeta,
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(())
    }
}

/// `dm2[a][b] = m_a² − m_b²` in eV², zero-based mass indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassSplittings {
    dm2: [[f64; 3]; 3],
}

impl MassSplittings {
    /// Builds the antisymmetric table from squared masses.
    pub fn from_masses_squared(m2: [f64; 3]) -> Self {
        let mut dm2 = [[0.0; 3]; 3];
        for (a, row) in dm2.iter_mut().enumerate() {
            for (b, v) in row.iter_mut().enumerate() {
                *v = m2[a] - m2[b];
            }
        }
        Self { dm2 }
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.dm2[a][b]
    }

    pub fn table(&self) -> &[[f64; 3]; 3] {
        &self.dm2
    }

    /// Squared masses measured from the first mass state (`m_1² = 0`).
    pub fn masses_squared(&self) -> [f64; 3] {
        [0.0, self.dm2[1][0], self.dm2[2][0]]
    }
}

/// Splittings from the (δm², Δm²) pair: `m_2² − m_1² = δm²` and
/// `m_3² − (m_1² + m_2²)/2 = Δm²`, so that `Δm²_31 = Δm² + δm²/2` and
/// `Δm²_32 = Δm² − δm²/2`.
pub fn mass_splittings(params: &OscillationParams) -> MassSplittings {
    let small = params.small_splitting;
    let large = params.large_splitting;
    MassSplittings::from_masses_squared([0.0, small, large + 0.5 * small])
}

/// Gaussian wave-packet width. The effective width `sigma_x` always exists;
/// the production/detection widths are only needed for explicit amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavePacketConfig {
    sigma_x: f64,
    widths: Option<(f64, f64)>,
}

impl WavePacketConfig {
    /// Effective width only (eV⁻¹).
    pub fn effective(sigma_x: f64) -> Result<Self> {
        check_width("sigma_x", sigma_x)?;
        Ok(Self {
            sigma_x,
            widths: None,
        })
    }

    /// From production and detection widths, `σ_x² = σ_xP² + σ_xD²`.
    pub fn from_widths(sigma_production: f64, sigma_detection: f64) -> Result<Self> {
        check_width("sigma_xP", sigma_production)?;
        check_width("sigma_xD", sigma_detection)?;
        Ok(Self {
            sigma_x: sigma_production.hypot(sigma_detection),
            widths: Some((sigma_production, sigma_detection)),
        })
    }

    /// Equal production and detection widths giving effective width `sigma_x`.
    pub fn symmetric(sigma_x: f64) -> Result<Self> {
        check_width("sigma_x", sigma_x)?;
        let half = sigma_x / SQRT_2;
        Ok(Self {
            sigma_x,
            widths: Some((half, half)),
        })
    }

    /// All three widths given explicitly; they must agree to 1e-12 relative.
    pub fn with_widths(sigma_x: f64, sigma_production: f64, sigma_detection: f64) -> Result<Self> {
        check_width("sigma_x", sigma_x)?;
        check_width("sigma_xP", sigma_production)?;
        check_width("sigma_xD", sigma_detection)?;
        let total2 = sigma_x * sigma_x;
        let parts2 = sigma_production * sigma_production + sigma_detection * sigma_detection;
        if (total2 - parts2).abs() > 1e-12 * total2 {
            return Err(Error::InconsistentWidths { total2, parts2 });
        }
        Ok(Self {
            sigma_x,
            widths: Some((sigma_production, sigma_detection)),
        })
    }

    pub fn sigma_x(&self) -> f64 {
        self.sigma_x
    }

    pub fn widths(&self) -> Option<(f64, f64)> {
        self.widths
    }
}

fn check_width(name: &'static str, v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::NonFinite(name));
    }
    if v <= 0.0 {
        return Err(Error::OutOfRange {
            name,
            value: v,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    Ok(())
}

/// Amplitudes `(A_αe, A_αμ, A_ατ)` for one initial flavor α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlavorAmplitudes {
    amps: [Complex64; 3],
}

impl FlavorAmplitudes {
    pub fn new(a_e: Complex64, a_mu: Complex64, a_tau: Complex64) -> Self {
        Self {
            amps: [a_e, a_mu, a_tau],
        }
    }

    pub fn get(&self, flavor: Flavor) -> Complex64 {
        self.amps[flavor.index()]
    }

    pub fn as_array(&self) -> &[Complex64; 3] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> ProbabilityRow {
        ProbabilityRow::new(
            self.amps[0].norm_sqr(),
            self.amps[1].norm_sqr(),
            self.amps[2].norm_sqr(),
        )
    }
}

/// `(P_αe, P_αμ, P_ατ)` for one initial flavor α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityRow {
    p: [f64; 3],
}

impl ProbabilityRow {
    pub fn new(p_e: f64, p_mu: f64, p_tau: f64) -> Self {
        Self {
            p: [p_e, p_mu, p_tau],
        }
    }

    pub fn get(&self, flavor: Flavor) -> f64 {
        self.p[flavor.index()]
    }

    pub fn as_array(&self) -> &[f64; 3] {
        &self.p
    }

    pub fn sum(&self) -> f64 {
        self.p.iter().sum()
    }

    /// Rescaled to unit sum.
    pub fn normalized(&self) -> Self {
        let s = self.sum();
        Self {
            p: self.p.map(|x| x / s),
        }
    }
}

/// Plane-wave amplitudes `A_αβ = Σ_a U*_αa e^{−iφ_a} U_βa`, with
/// `φ_a = Δm²_a1 L / 2E` measured relative to mass state 1.
pub fn plane_wave_amplitudes(
    u: &PmnsMatrix,
    splittings: &MassSplittings,
    energy: f64,
    baseline: f64,
    alpha: Flavor,
) -> FlavorAmplitudes {
    let phases: [Complex64; 3] = std::array::from_fn(|a| {
        let phi = splittings.get(a, 0) * baseline / (2.0 * energy);
        Complex64::from_polar(1.0, -phi)
    });
    let amp = |beta: Flavor| -> Complex64 {
        (0..3)
            .map(|a| u.get(alpha, a).conj() * phases[a] * u.get(beta, a))
            .sum()
    };
    FlavorAmplitudes::new(amp(Flavor::E), amp(Flavor::Mu), amp(Flavor::Tau))
}

/// `|A_αβ|²` row from [`plane_wave_amplitudes`].
pub fn plane_wave_row(
    u: &PmnsMatrix,
    splittings: &MassSplittings,
    energy: f64,
    baseline: f64,
    alpha: Flavor,
) -> ProbabilityRow {
    plane_wave_amplitudes(u, splittings, energy, baseline, alpha).probabilities()
}

/// `4πE/|Δm²_ab|`.
pub fn oscillation_length(energy: f64, dm2_ab: f64) -> Result<f64> {
    if dm2_ab == 0.0 {
        return Err(Error::DegeneratePair);
    }
    Ok(4.0 * PI * energy / dm2_ab.abs())
}

/// `4√2 σ_x E² / |Δm²_ab|`.
pub fn coherence_length(config: &WavePacketConfig, energy: f64, dm2_ab: f64) -> Result<f64> {
    if dm2_ab == 0.0 {
        return Err(Error::DegeneratePair);
    }
    Ok(4.0 * SQRT_2 * config.sigma_x * energy * energy / dm2_ab.abs())
}

/// `exp[−2π²(1−ζ)² (σ_x/L_osc)²]`; exactly 1 for a degenerate pair.
pub fn localization_factor(config: &WavePacketConfig, energy: f64, dm2_ab: f64, zeta: f64) -> f64 {
    match oscillation_length(energy, dm2_ab) {
        Ok(l_osc) => {
            let r = config.sigma_x / l_osc;
            (-2.0 * PI * PI * (1.0 - zeta).powi(2) * r * r).exp()
        }
        Err(_) => 1.0,
    }
}

/// Which damping factors multiply the interference terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Damping {
    /// No coherence-length or localization damping (plane-wave limit).
    None,
    WavePacket {
        config: WavePacketConfig,
        zeta: f64,
    },
}

/// The double sum
/// `Σ_{a,b} U*_αa U_βa U_αb U*_βb exp[−2πi L/L_ab^osc − (L/L_ab^coh)²] F_ab`
/// before taking the real part. Pairs with `Δm²_ab = 0` (including `a = b`)
/// contribute with unit phase and no damping.
pub fn interference_sum(
    u: &PmnsMatrix,
    splittings: &MassSplittings,
    energy: f64,
    baseline: f64,
    alpha: Flavor,
    beta: Flavor,
    damping: &Damping,
) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for a in 0..3 {
        for b in 0..3 {
            let weight =
                u.get(alpha, a).conj() * u.get(beta, a) * u.get(alpha, b) * u.get(beta, b).conj();
            let dm2 = splittings.get(a, b);
            let factor = if a == b || dm2 == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                // signed oscillation length carries the sign of Δm²_ab into the phase
                let l_osc = 4.0 * PI * energy / dm2;
                let phase = Complex64::from_polar(1.0, -2.0 * PI * baseline / l_osc);
                match damping {
                    Damping::None => phase,
                    Damping::WavePacket { config, zeta } => {
                        let l_coh = coherence_length(config, energy, dm2).expect("dm2 is non-zero");
                        let envelope = (-(baseline / l_coh).powi(2)).exp();
                        phase * envelope * localization_factor(config, energy, dm2, *zeta)
                    }
                }
            };
            sum += weight * factor;
        }
    }
    sum
}

/// Time-integrated wave-packet transition probability `P_αβ(L)`.
pub fn wave_packet_probability(
    u: &PmnsMatrix,
    params: &OscillationParams,
    config: &WavePacketConfig,
    baseline: f64,
    alpha: Flavor,
    beta: Flavor,
) -> f64 {
    let splittings = mass_splittings(params);
    let damping = Damping::WavePacket {
        config: *config,
        zeta: params.zeta,
    };
    interference_sum(
        u,
        &splittings,
        params.energy,
        baseline,
        alpha,
        beta,
        &damping,
    )
    .re
}

pub fn wave_packet_row(
    u: &PmnsMatrix,
    params: &OscillationParams,
    config: &WavePacketConfig,
    baseline: f64,
    alpha: Flavor,
) -> ProbabilityRow {
    let [e, mu, tau] =
        Flavor::ALL.map(|beta| wave_packet_probability(u, params, config, baseline, alpha, beta));
    ProbabilityRow::new(e, mu, tau)
}

/// Space-time wave-packet amplitude `A_αβ(L, T)` at `T = L + lag`.
///
/// Kinematics per mass state: `E_a = E + ζ m_a²/2E`, `P_a = E − (1−ζ) m_a²/2E`,
/// group velocity `v_a = 1 − m_a²/2E²`, with `m_1² = 0` as reference. The
/// common phase `e^{−iE·lag}` is dropped, and the time is passed as the lag
/// behind light travel because `L − v_a T` would otherwise cancel
/// catastrophically at astronomical `T`.
pub fn wave_packet_amplitude(
    u: &PmnsMatrix,
    params: &OscillationParams,
    config: &WavePacketConfig,
    baseline: f64,
    lag: f64,
    alpha: Flavor,
    beta: Flavor,
) -> Result<Complex64> {
    let (sp, sd) = config.widths.ok_or(Error::MissingWidths)?;
    let sigma2 = config.sigma_x * config.sigma_x;
    let prefactor = (2.0 * sp * sd / sigma2).sqrt();
    let energy = params.energy;
    let m2 = mass_splittings(params).masses_squared();
    let time = baseline + lag;

    let mut sum = Complex64::new(0.0, 0.0);
    for (a, &m2a) in m2.iter().enumerate() {
        let x = m2a / (2.0 * energy);
        let phase = -(x * baseline + params.zeta * x * lag);
        // L − v_a T
        let offset = -lag + m2a / (2.0 * energy * energy) * time;
        let envelope = -(offset * offset) / (4.0 * sigma2);
        sum +=
            u.get(alpha, a).conj() * u.get(beta, a) * Complex64::from_polar(envelope.exp(), phase);
    }
    Ok(sum * prefactor)
}

#[derive(Debug, Clone, Copy)]
pub struct TimeIntegrationOptions {
    pub tolerance: f64,
    pub quadrature: QuadratureOptions,
}

impl Default for TimeIntegrationOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-3,
            quadrature: QuadratureOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TimeIntegrationReport {
    /// Normalized `∫|A_αβ(L,T)|² dT`.
    pub quadrature_row: ProbabilityRow,
    /// Normalized closed-form wave-packet row.
    pub formula_row: ProbabilityRow,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Largest quadrature error estimate, relative to the row total.
    pub quadrature_error: f64,
}

impl TimeIntegrationReport {
    pub fn passed(&self) -> bool {
        self.max_deviation < self.tolerance
    }
}

/// Integrates `|A_αβ(L,T)|²` over `T` for every β and compares the resulting
/// shape with [`wave_packet_row`]. Uses symmetric production/detection widths
/// when the config only carries an effective width; the prefactor cancels in
/// the normalization.
pub fn time_integration_check(
    u: &PmnsMatrix,
    params: &OscillationParams,
    config: &WavePacketConfig,
    baseline: f64,
    alpha: Flavor,
    opts: &TimeIntegrationOptions,
) -> Result<TimeIntegrationReport> {
    let config = match config.widths {
        Some(_) => *config,
        None => WavePacketConfig::symmetric(config.sigma_x)?,
    };
    let sigma = config.sigma_x;
    let energy = params.energy;

    // packet centres in lag: L − v_a T = 0
    let mut centres: Vec<f64> = mass_splittings(params)
        .masses_squared()
        .iter()
        .map(|&m2| {
            let y = m2 / (2.0 * energy * energy);
            y * baseline / (1.0 - y)
        })
        .collect();
    centres.sort_by(f64::total_cmp);
    centres.dedup();

    let total = |lag: f64| -> f64 {
        Flavor::ALL
            .iter()
            .map(|&beta| {
                wave_packet_amplitude(u, params, &config, baseline, lag, alpha, beta)
                    .map(|a| a.norm_sqr())
                    .unwrap_or(0.0)
            })
            .sum()
    };
    let peak = centres.iter().map(|&c| total(c)).fold(0.0_f64, f64::max);
    let mut half_width = 12.0 * sigma;
    let (lo, hi) = loop {
        let lo = centres[0] - half_width;
        let hi = centres[centres.len() - 1] + half_width;
        if total(lo) <= 1e-16 * peak && total(hi) <= 1e-16 * peak {
            break (lo, hi);
        }
        half_width *= 1.5;
    };
    let mut points = vec![lo];
    points.extend(centres.iter().copied());
    points.push(hi);

    let (sp, sd) = config.widths.expect("set above");
    let scale = 2.0 * sp * sd / (sigma * sigma) * (2.0 * PI).sqrt() * sigma;
    let quad_opts = QuadratureOptions {
        abs_tol: opts.quadrature.abs_tol.max(1e-13 * scale),
        ..opts.quadrature
    };

    let mut integrals = [0.0; 3];
    let mut worst_error = 0.0_f64;
    for beta in Flavor::ALL {
        let integrand = |lag: f64| {
            wave_packet_amplitude(u, params, &config, baseline, lag, alpha, beta)
                .map(|a| a.norm_sqr())
                .unwrap_or(0.0)
        };
        let r = quadrature::integrate(integrand, &points, quad_opts)?;
        integrals[beta.index()] = r.value;
        worst_error = worst_error.max(r.error_estimate);
    }
    let quad_total: f64 = integrals.iter().sum();
    let quadrature_row = ProbabilityRow::new(integrals[0], integrals[1], integrals[2]).normalized();
    let formula_row = wave_packet_row(u, params, &config, baseline, alpha).normalized();
    let max_deviation = (0..3)
        .map(|i| (quadrature_row.p[i] - formula_row.p[i]).abs())
        .fold(0.0, f64::max);
    Ok(TimeIntegrationReport {
        quadrature_row,
        formula_row,
        max_deviation,
        tolerance: opts.tolerance,
        quadrature_error: worst_error / quad_total,
    })
}
