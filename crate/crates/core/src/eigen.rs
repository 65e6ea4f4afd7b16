//! Eigenvalues of small general complex matrices.
//!
//! The complex Schur decomposition is the primary route. If it fails to
//! converge, the roots of the characteristic polynomial are found instead
//! (Faddeev–LeVerrier coefficients, Durand–Kerner iteration).

use nalgebra::{Matrix4, Schur};
use num_complex::Complex64;

const SCHUR_MAX_ITERATIONS: usize = 500;

pub fn eigenvalues4(m: &Matrix4<Complex64>) -> [Complex64; 4] {
    Schur::try_new(*m, f64::EPSILON, SCHUR_MAX_ITERATIONS)
        .and_then(|s| s.eigenvalues())
        .map(|v| [v[0], v[1], v[2], v[3]])
        .unwrap_or_else(|| characteristic_roots(m))
}

/// Coefficients `c_0..c_4` of `det(λI − M) = Σ c_k λ^k`, `c_4 = 1`.
pub fn characteristic_polynomial(m: &Matrix4<Complex64>) -> [Complex64; 5] {
    let n = 4;
    let mut c = [Complex64::new(0.0, 0.0); 5];
    c[n] = Complex64::new(1.0, 0.0);
    let identity = Matrix4::<Complex64>::identity();
    let mut mk = Matrix4::<Complex64>::zeros();
    for k in 1..=n {
        mk = m * mk + identity * c[n - k + 1];
        c[n - k] = -(m * mk).trace() / k as f64;
    }
    c
}

pub fn characteristic_roots(m: &Matrix4<Complex64>) -> [Complex64; 4] {
    let c = characteristic_polynomial(m);
    let eval = |z: Complex64| {
        c.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &ck| acc * z + ck)
    };
    let scale = 1.0 + m.iter().map(|z| z.norm()).fold(0.0, f64::max) * 4.0;
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: [Complex64; 4] = std::array::from_fn(|i| seed.powu(i as u32) * scale);
    for _ in 0..1000 {
        let mut shift = 0.0_f64;
        for i in 0..4 {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..4 {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            shift = shift.max(step.norm());
        }
        if shift <= 1e-15 * scale {
            break;
        }
    }
    roots
}
