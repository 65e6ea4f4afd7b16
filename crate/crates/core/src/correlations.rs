//! Quantum correlations of the evolved flavor state.
//!
//! The flavor state `Σ_β A_αβ |ν_β⟩` is read two ways: as a pure qutrit,
//! whose l1-norm of coherence sums the off-diagonal moduli of its density
//! matrix, and as a single excitation shared by three occupation-number
//! modes `|n_e n_μ n_τ⟩`, where tracing out one mode leaves a two-qubit
//! state with a well-defined concurrence. In probability form the l1-norm is
//! exactly the sum of the three pairwise concurrences.

use nalgebra::{Matrix3, Matrix4};
use num_complex::Complex64;
use serde::Serialize;

use crate::dynamics::{FlavorAmplitudes, ProbabilityRow};
use crate::error::{Error, Result};
use crate::flavor::Flavor;

/// Probabilities in `[-PROBABILITY_SLACK, 0)` are treated as zero.
pub const PROBABILITY_SLACK: f64 = 1e-12;
/// Eigenvalues of ρρ̃ in `[-EIGENVALUE_CLAMP, 0)` are treated as zero.
pub const EIGENVALUE_CLAMP: f64 = 1e-10;
/// Beyond this, an eigenvalue of ρρ̃ is reported as a spectral failure.
pub const SPECTRAL_TOLERANCE: f64 = 1e-8;

const NORMALIZATION_TOLERANCE: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Pure-state density matrix in the (e, μ, τ) basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlavorDensityMatrix {
    rho: Matrix3<Complex64>,
}

impl FlavorDensityMatrix {
    pub fn matrix(&self) -> &Matrix3<Complex64> {
        &self.rho
    }

    pub fn get(&self, row: Flavor, col: Flavor) -> Complex64 {
        self.rho[(row.index(), col.index())]
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        (self.rho * self.rho).trace().re
    }
}

/// `ρ_βγ = A_αβ A*_αγ`.
pub fn density_from_amplitudes(a: &FlavorAmplitudes) -> Result<FlavorDensityMatrix> {
    let norm = a.norm_sqr();
    if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    let amps = a.as_array();
    let rho = Matrix3::from_fn(|r, c| amps[r] * amps[c].conj());
    Ok(FlavorDensityMatrix { rho })
}

/// Sum of the moduli of the six off-diagonal entries.
pub fn l1_norm(rho: &FlavorDensityMatrix) -> f64 {
    let mut sum = 0.0;
    for r in 0..3 {
        for c in 0..3 {
            if r != c {
                sum += rho.rho[(r, c)].norm();
            }
        }
    }
    sum
}

fn clip(p: f64) -> f64 {
    if (-PROBABILITY_SLACK..0.0).contains(&p) {
        0.0
    } else {
        p
    }
}

/// `2(√(P_e P_μ) + √(P_e P_τ) + √(P_μ P_τ))`.
pub fn coherence_from_probabilities(p: &ProbabilityRow) -> f64 {
    let [e, mu, tau] = p.as_array().map(clip);
    2.0 * ((e * mu).sqrt() + (e * tau).sqrt() + (mu * tau).sqrt())
}

/// A single excitation over three flavor modes, indexed by
/// `4·n_e + 2·n_μ + n_τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeModeState {
    psi: [Complex64; 8],
}

impl ThreeModeState {
    /// Basis position of the state with only `flavor` occupied.
    pub fn occupied_index(flavor: Flavor) -> usize {
        match flavor {
            Flavor::E => 0b100,
            Flavor::Mu => 0b010,
            Flavor::Tau => 0b001,
        }
    }

    pub fn components(&self) -> &[Complex64; 8] {
        &self.psi
    }

    pub fn norm_sqr(&self) -> f64 {
        self.psi.iter().map(|z| z.norm_sqr()).sum()
    }
}

pub fn three_mode_state(a: &FlavorAmplitudes) -> ThreeModeState {
    let mut psi = [ZERO; 8];
    for flavor in Flavor::ALL {
        psi[ThreeModeState::occupied_index(flavor)] = a.get(flavor);
    }
    ThreeModeState { psi }
}

/// Two-qubit density matrix over `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitDensityMatrix {
    rho: Matrix4<Complex64>,
}

impl TwoQubitDensityMatrix {
    /// Wraps a 4×4 matrix, checking Hermiticity and unit trace to 1e-12.
    /// Positivity is checked by [`wootters_concurrence`] through the spectrum.
    pub fn new(rho: Matrix4<Complex64>) -> Result<Self> {
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::NotNormalized(tr.re));
        }
        let herm = (rho - rho.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if herm > 1e-12 {
            return Err(Error::OutOfRange {
                name: "hermiticity residual",
                value: herm,
                min: 0.0,
                max: 1e-12,
            });
        }
        Ok(Self { rho })
    }

    /// Projector onto a normalized pure state.
    pub fn pure(amplitudes: [Complex64; 4]) -> Result<Self> {
        let v = nalgebra::Vector4::from(amplitudes);
        Self::new(v * v.adjoint())
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.rho
    }
}

/// Reduced state of the two flavors other than `traced`, lower-index flavor
/// as the first qubit.
pub fn partial_trace(psi: &ThreeModeState, traced: Flavor) -> TwoQubitDensityMatrix {
    let (first, second) = traced.complement();
    // bit position of each mode in the three-mode index
    let bit = |f: Flavor| 2 - f.index();
    let full_index = |n_first: usize, n_second: usize, n_traced: usize| {
        (n_first << bit(first)) | (n_second << bit(second)) | (n_traced << bit(traced))
    };
    let mut rho = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = ZERO;
            for k in 0..2 {
                let left = psi.psi[full_index(i >> 1, i & 1, k)];
                let right = psi.psi[full_index(j >> 1, j & 1, k)];
                acc += left * right.conj();
            }
            rho[(i, j)] = acc;
        }
    }
    TwoQubitDensityMatrix { rho }
}

/// `σ_y ⊗ σ_y`, which is real.
fn sigma_yy() -> Matrix4<Complex64> {
    let mut m = Matrix4::zeros();
    m[(0, 3)] = Complex64::new(-1.0, 0.0);
    m[(1, 2)] = Complex64::new(1.0, 0.0);
    m[(2, 1)] = Complex64::new(1.0, 0.0);
    m[(3, 0)] = Complex64::new(-1.0, 0.0);
    m
}

/// `ρ̃ = (σ_y ⊗ σ_y) ρ* (σ_y ⊗ σ_y)`.
pub fn spin_flip(rho: &TwoQubitDensityMatrix) -> Matrix4<Complex64> {
    let yy = sigma_yy();
    yy * rho.rho.map(|z| z.conj()) * yy
}

/// Eigenvalues of `ρρ̃`, validated to be real and non-negative, sorted in
/// decreasing order.
pub fn spin_flip_spectrum(rho: &TwoQubitDensityMatrix) -> Result<[f64; 4]> {
    let product = rho.rho * spin_flip(rho);
    let eigenvalues = crate::eigen::eigenvalues4(&product);
    let mut out = [0.0; 4];
    for (slot, z) in out.iter_mut().zip(eigenvalues.iter()) {
        if z.im.abs() > SPECTRAL_TOLERANCE || z.re < -SPECTRAL_TOLERANCE {
            return Err(Error::Spectral { re: z.re, im: z.im });
        }
        *slot = if z.re < 0.0 && z.re >= -EIGENVALUE_CLAMP {
            0.0
        } else {
            z.re.max(0.0)
        };
    }
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

/// `max(λ_1 − λ_2 − λ_3 − λ_4, 0)` with `λ_i` the square roots of the
/// eigenvalues of `ρρ̃` in decreasing order.
///
/// The spectrum of `ρρ̃` is computed and validated, but the `λ_i` themselves
/// are taken from [`spin_flip_singular_values`]: near rank-deficient states
/// the square root of an eigenvalue amplifies round-off of order 1e-17 into
/// errors of order 1e-8.
pub fn wootters_concurrence(rho: &TwoQubitDensityMatrix) -> Result<f64> {
    spin_flip_spectrum(rho)?;
    let l = spin_flip_singular_values(rho);
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Singular values of `τ = Wᵀ (σ_y ⊗ σ_y) W`, where `ρ = W W†`, in decreasing
/// order. Since `ρρ̃` and `τ τ†` share their non-zero spectrum, these are the
/// square roots of the eigenvalues of `ρρ̃`.
pub fn spin_flip_singular_values(rho: &TwoQubitDensityMatrix) -> [f64; 4] {
    let eig = rho.rho.symmetric_eigen();
    let mut w = eig.eigenvectors;
    for (k, &p) in eig.eigenvalues.iter().enumerate() {
        let mut col = w.column_mut(k);
        col *= Complex64::new(p.max(0.0).sqrt(), 0.0);
    }
    let tau = w.transpose() * sigma_yy() * w;
    let sv = tau.singular_values();
    let mut l = [sv[0], sv[1], sv[2], sv[3]];
    l.sort_by(|a, b| b.total_cmp(a));
    l
}

/// `2|α00 α11 − α01 α10|`.
pub fn pure_concurrence(
    a00: Complex64,
    a01: Complex64,
    a10: Complex64,
    a11: Complex64,
) -> Result<f64> {
    let norm = a00.norm_sqr() + a01.norm_sqr() + a10.norm_sqr() + a11.norm_sqr();
    if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    Ok(2.0 * (a00 * a11 - a01 * a10).norm())
}

/// `2√(P_αβ P_αγ)`.
pub fn flavor_concurrence(p_beta: f64, p_gamma: f64) -> f64 {
    2.0 * (clip(p_beta) * clip(p_gamma)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub l1_norm: f64,
    pub concurrence_emu: f64,
    pub concurrence_etau: f64,
    pub concurrence_mutau: f64,
    /// `|l1_norm − (C_eμ + C_eτ + C_μτ)|`.
    pub identity_residual: f64,
}

impl CorrelationReport {
    pub fn concurrence_sum(&self) -> f64 {
        self.concurrence_emu + self.concurrence_etau + self.concurrence_mutau
    }
}

pub fn correlation_report(p: &ProbabilityRow) -> CorrelationReport {
    let [e, mu, tau] = *p.as_array();
    let l1_norm = coherence_from_probabilities(p);
    let concurrence_emu = flavor_concurrence(e, mu);
    let concurrence_etau = flavor_concurrence(e, tau);
    let concurrence_mutau = flavor_concurrence(mu, tau);
    let identity_residual =
        (l1_norm - (concurrence_emu + concurrence_etau + concurrence_mutau)).abs();
    CorrelationReport {
        l1_norm,
        concurrence_emu,
        concurrence_etau,
        concurrence_mutau,
        identity_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn amps(e: Complex64, mu: Complex64, tau: Complex64) -> FlavorAmplitudes {
        FlavorAmplitudes::new(e, mu, tau)
    }

    fn normalized(v: [(f64, f64); 3]) -> FlavorAmplitudes {
        let z = v.map(|(re, im)| Complex64::new(re, im));
        let n = z.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        amps(z[0] / n, z[1] / n, z[2] / n)
    }

    fn close(a: &Matrix4<Complex64>, b: &Matrix4<Complex64>, tol: f64) -> bool {
        (a - b).iter().all(|z| z.norm() < tol)
    }

    fn projector(v: [Complex64; 4]) -> Matrix4<Complex64> {
        let v = nalgebra::Vector4::from(v);
        v * v.adjoint()
    }

    #[test]
    fn density_of_basis_state() {
        let rho = density_from_amplitudes(&amps(c(1.0), c(0.0), c(0.0))).unwrap();
        let mut expect = Matrix3::zeros();
        expect[(0, 0)] = c(1.0);
        assert_eq!(*rho.matrix(), expect);
        assert_eq!(l1_norm(&rho), 0.0);
    }

    #[test]
    fn density_of_uniform_superposition() {
        let x = c(1.0 / 3.0_f64.sqrt());
        let rho = density_from_amplitudes(&amps(x, x, x)).unwrap();
        assert!(rho
            .matrix()
            .iter()
            .all(|z| (z - c(1.0 / 3.0)).norm() < 1e-15));
        assert!((l1_norm(&rho) - 2.0).abs() < 1e-14);
        assert!((rho.trace() - 1.0).abs() < 1e-14);
        assert!((rho.purity() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn density_rejects_unnormalized() {
        assert!(matches!(
            density_from_amplitudes(&amps(c(1.0), c(0.1), c(0.0))),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn density_of_unevolved_neutrino() {
        use crate::dynamics::{mass_splittings, plane_wave_amplitudes, OscillationParams};
        let params = OscillationParams::reference();
        let u = crate::pmns::build_pmns(params.angles, 0.0).unwrap();
        let a = plane_wave_amplitudes(
            &u,
            &mass_splittings(&params),
            params.energy,
            0.0,
            Flavor::Mu,
        );
        let rho = density_from_amplitudes(&a).unwrap();
        for r in Flavor::ALL {
            for col in Flavor::ALL {
                let expect = if r == Flavor::Mu && col == Flavor::Mu {
                    1.0
                } else {
                    0.0
                };
                assert!((rho.get(r, col) - c(expect)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn coherence_from_probability_cases() {
        assert_eq!(
            coherence_from_probabilities(&ProbabilityRow::new(1.0, 0.0, 0.0)),
            0.0
        );
        let third = 1.0 / 3.0;
        assert!(
            (coherence_from_probabilities(&ProbabilityRow::new(third, third, third)) - 2.0).abs()
                < 1e-15
        );
        assert!(
            (coherence_from_probabilities(&ProbabilityRow::new(0.5, 0.5, 0.0)) - 1.0).abs() < 1e-15
        );
        // tiny negative probabilities are clipped rather than producing NaN
        let r = coherence_from_probabilities(&ProbabilityRow::new(1.0, -1e-13, 0.0));
        assert_eq!(r, 0.0);
    }

    #[test]
    fn three_mode_embedding() {
        let psi = three_mode_state(&amps(c(1.0), c(0.0), c(0.0)));
        let mut expect = [ZERO; 8];
        expect[0b100] = c(1.0);
        assert_eq!(*psi.components(), expect);

        let h = c(FRAC_1_SQRT_2);
        let psi = three_mode_state(&amps(h, h, c(0.0)));
        assert_eq!(psi.components()[0b100], h);
        assert_eq!(psi.components()[0b010], h);
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-15);
        for i in [0, 0b011, 0b101, 0b110, 0b111, 0b001] {
            assert_eq!(psi.components()[i], ZERO);
        }
    }

    /// Reduced state by explicit contraction over the traced occupation.
    fn brute_force_trace(psi: &ThreeModeState, traced: Flavor) -> Matrix4<Complex64> {
        let keep: Vec<usize> = Flavor::ALL
            .iter()
            .filter(|&&f| f != traced)
            .map(|f| f.index())
            .collect();
        let occupation = |idx: usize, f: usize| (idx >> (2 - f)) & 1;
        let mut rho = Matrix4::zeros();
        for x in 0..8 {
            for y in 0..8 {
                if occupation(x, traced.index()) != occupation(y, traced.index()) {
                    continue;
                }
                let i = 2 * occupation(x, keep[0]) + occupation(x, keep[1]);
                let j = 2 * occupation(y, keep[0]) + occupation(y, keep[1]);
                rho[(i, j)] += psi.components()[x] * psi.components()[y].conj();
            }
        }
        rho
    }

    #[test]
    fn trace_out_tau_of_product_state() {
        let psi = three_mode_state(&amps(c(1.0), c(0.0), c(0.0)));
        let rho = partial_trace(&psi, Flavor::Tau);
        assert!(close(
            rho.matrix(),
            &projector([ZERO, ZERO, c(1.0), ZERO]),
            1e-15
        ));
    }

    #[test]
    fn trace_out_spectator_leaves_bell_state() {
        let h = c(FRAC_1_SQRT_2);
        let psi = three_mode_state(&amps(h, h, c(0.0)));
        let rho = partial_trace(&psi, Flavor::Tau);
        assert!(close(rho.matrix(), &projector([ZERO, h, h, ZERO]), 1e-15));
        assert!((wootters_concurrence(&rho).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_out_participant_leaves_mixture() {
        let h = c(FRAC_1_SQRT_2);
        let psi = three_mode_state(&amps(h, h, c(0.0)));
        let rho = partial_trace(&psi, Flavor::Mu);
        let oracle = brute_force_trace(&psi, Flavor::Mu);
        assert!(close(rho.matrix(), &oracle, 1e-15));
        let mut expect = Matrix4::zeros();
        expect[(0, 0)] = c(0.5);
        expect[(2, 2)] = c(0.5);
        assert!(close(rho.matrix(), &expect, 1e-15));
        assert!(wootters_concurrence(&rho).unwrap() < 1e-12);
    }

    #[test]
    fn bell_and_product_concurrence() {
        let h = c(FRAC_1_SQRT_2);
        let bell = TwoQubitDensityMatrix::pure([h, ZERO, ZERO, h]).unwrap();
        assert!((wootters_concurrence(&bell).unwrap() - 1.0).abs() < 1e-12);
        let product = TwoQubitDensityMatrix::pure([c(0.6), c(0.8), ZERO, ZERO]).unwrap();
        assert!(wootters_concurrence(&product).unwrap() < 1e-12);
    }

    #[test]
    fn maximally_mixed_has_no_concurrence() {
        let rho = TwoQubitDensityMatrix::new(Matrix4::identity() * c(0.25)).unwrap();
        let spectrum = spin_flip_spectrum(&rho).unwrap();
        for ev in spectrum {
            assert!((ev - 1.0 / 16.0).abs() < 1e-14);
        }
        assert_eq!(wootters_concurrence(&rho).unwrap(), 0.0);
    }

    #[test]
    fn non_positive_input_is_a_spectral_failure() {
        let d = nalgebra::Vector4::new(c(0.75), c(-0.25), c(0.75), c(-0.25));
        let rho = TwoQubitDensityMatrix::new(Matrix4::from_diagonal(&d)).unwrap();
        assert!(matches!(
            wootters_concurrence(&rho),
            Err(Error::Spectral { .. })
        ));
    }

    #[test]
    fn rejects_non_hermitian_or_untraced() {
        let mut m = Matrix4::identity() * c(0.25);
        m[(0, 1)] = c(0.1);
        assert!(TwoQubitDensityMatrix::new(m).is_err());
        assert!(TwoQubitDensityMatrix::new(Matrix4::identity() * c(0.3)).is_err());
    }

    #[test]
    fn pure_concurrence_cases() {
        let h = c(FRAC_1_SQRT_2);
        assert_eq!(pure_concurrence(c(1.0), ZERO, ZERO, ZERO).unwrap(), 0.0);
        assert!((pure_concurrence(h, ZERO, ZERO, h).unwrap() - 1.0).abs() < 1e-15);
        let (b, g) = (Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
        assert!((pure_concurrence(ZERO, b, g, ZERO).unwrap() - 2.0 * 0.6 * 0.8).abs() < 1e-15);
        assert!(pure_concurrence(c(1.0), c(1.0), ZERO, ZERO).is_err());
    }

    #[test]
    fn flavor_concurrence_cases() {
        assert_eq!(flavor_concurrence(0.0, 0.7), 0.0);
        assert!((flavor_concurrence(0.5, 0.5) - 1.0).abs() < 1e-15);
        assert_eq!(flavor_concurrence(-1e-13, 0.5), 0.0);
    }

    #[test]
    fn flavor_concurrence_matches_wootters_for_evolved_state() {
        use crate::dynamics::{mass_splittings, plane_wave_amplitudes, OscillationParams};
        use crate::units::km_to_natural;
        let params = OscillationParams::reference();
        let u = crate::pmns::build_pmns(params.angles, 0.0).unwrap();
        let a = plane_wave_amplitudes(
            &u,
            &mass_splittings(&params),
            params.energy,
            km_to_natural(4700.0),
            Flavor::E,
        );
        let p = a.probabilities();
        let rho = partial_trace(&three_mode_state(&a), Flavor::Tau);
        let full = wootters_concurrence(&rho).unwrap();
        assert!((flavor_concurrence(p.get(Flavor::E), p.get(Flavor::Mu)) - full).abs() < 1e-10);
    }

    #[test]
    fn report_cases() {
        let r = correlation_report(&ProbabilityRow::new(1.0, 0.0, 0.0));
        assert_eq!(
            r,
            CorrelationReport {
                l1_norm: 0.0,
                concurrence_emu: 0.0,
                concurrence_etau: 0.0,
                concurrence_mutau: 0.0,
                identity_residual: 0.0,
            }
        );
        let third = 1.0 / 3.0;
        let r = correlation_report(&ProbabilityRow::new(third, third, third));
        assert!((r.l1_norm - 2.0).abs() < 1e-15);
        for cc in [r.concurrence_emu, r.concurrence_etau, r.concurrence_mutau] {
            assert!((cc - 2.0 / 3.0).abs() < 1e-15);
        }
        assert!(r.identity_residual < 1e-15);
    }

    fn amplitude_strategy() -> impl Strategy<Value = FlavorAmplitudes> {
        prop::array::uniform3((-1.0f64..1.0, -1.0f64..1.0))
            .prop_filter("non-zero", |v| {
                v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3)
            })
            .prop_map(normalized)
    }

    proptest! {
        #[test]
        fn identity_holds(p in prop::array::uniform3(0.0f64..1.0)) {
            let s: f64 = p.iter().sum();
            let row = ProbabilityRow::new(p[0] / s, p[1] / s, p[2] / s);
            let r = correlation_report(&row);
            prop_assert!(r.identity_residual < 1e-12);
            prop_assert!((coherence_from_probabilities(&row) - r.concurrence_sum()).abs() < 1e-12);
            prop_assert!(r.l1_norm >= 0.0 && r.l1_norm <= 2.0 + 1e-12);
            for cc in [r.concurrence_emu, r.concurrence_etau, r.concurrence_mutau] {
                prop_assert!((0.0..=1.0 + 1e-12).contains(&cc));
            }
        }

        #[test]
        fn matrix_and_probability_forms_agree(a in amplitude_strategy()) {
            let rho = density_from_amplitudes(&a).unwrap();
            prop_assert!((l1_norm(&rho) - coherence_from_probabilities(&a.probabilities())).abs() < 1e-12);
            prop_assert!((rho.purity() - 1.0).abs() < 1e-12);
            let herm = (rho.matrix() - rho.matrix().adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!(herm < 1e-12);
        }

        #[test]
        fn wootters_matches_closed_form(a in amplitude_strategy()) {
            let psi = three_mode_state(&a);
            prop_assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
            for traced in Flavor::ALL {
                let (b, g) = traced.complement();
                let rho = partial_trace(&psi, traced);
                prop_assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
                prop_assert!(rho.matrix()[(3, 3)].norm() == 0.0);
                let oracle = brute_force_trace(&psi, traced);
                prop_assert!(close(rho.matrix(), &oracle, 1e-15));
                let expect = 2.0 * a.get(b).norm() * a.get(g).norm();
                prop_assert!((wootters_concurrence(&rho).unwrap() - expect).abs() < 1e-10);
            }
        }

        #[test]
        fn pure_concurrence_agrees_with_wootters(v in prop::array::uniform4((-1.0f64..1.0, -1.0f64..1.0))) {
            let z = v.map(|(re, im)| Complex64::new(re, im));
            let n = z.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            prop_assume!(n > 1e-3);
            let z = z.map(|x| x / n);
            let rho = TwoQubitDensityMatrix::pure(z).unwrap();
            let closed = pure_concurrence(z[0], z[1], z[2], z[3]).unwrap();
            prop_assert!((wootters_concurrence(&rho).unwrap() - closed).abs() < 1e-10);
            let sv = spin_flip_singular_values(&rho);
            let ev = spin_flip_spectrum(&rho).unwrap();
            for k in 0..4 {
                prop_assert!((sv[k] * sv[k] - ev[k]).abs() < 1e-8);
            }
        }

        #[test]
        fn l1_ignores_local_phases(a in amplitude_strategy(), which in 0usize..3, phase in 0.0f64..6.3) {
            let mut z = *a.as_array();
            z[which] *= Complex64::from_polar(1.0, phase);
            let b = FlavorAmplitudes::new(z[0], z[1], z[2]);
            let la = l1_norm(&density_from_amplitudes(&a).unwrap());
            let lb = l1_norm(&density_from_amplitudes(&b).unwrap());
            prop_assert!((la - lb).abs() < 1e-12);
        }
    }
}
