//! Frame states written out in the truncated Fock basis, and eigen-residuals.

use crate::error::{Error, Result};
use crate::one_photon::DisplacedState;
use crate::oracle::TruncatedHamiltonian;
use crate::two_photon::SqueezedState;

fn raise(v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    for k in 1..v.len() {
        out[k] = (k as f64).sqrt() * v[k - 1];
    }
    out
}

fn lower(v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    for k in 0..v.len() - 1 {
        out[k] = ((k + 1) as f64).sqrt() * v[k + 1];
    }
    out
}

/// Displaced number states `D(α)|n⟩`, `n < count`, on Fock states `0..=n_max`.
pub fn displaced_basis(alpha: f64, count: usize, n_max: usize) -> Vec<Vec<f64>> {
    let len = n_max + 1;
    let mut vac = vec![0.0; len];
    vac[0] = (-0.5 * alpha * alpha).exp();
    for k in 1..len {
        vac[k] = vac[k - 1] * alpha / (k as f64).sqrt();
    }
    let mut out = vec![vac];
    for n in 1..count {
        let prev = &out[n - 1];
        let up = raise(prev);
        let v: Vec<f64> = up.iter().zip(prev).map(|(u, p)| (u - alpha * p) / (n as f64).sqrt()).collect();
        out.push(v);
    }
    out
}

/// Squeezed number states `exp((ρ/2)(a² − a†²))|k⟩`, `k < count`.
pub fn squeezed_basis(rho: f64, count: usize, n_max: usize) -> Vec<Vec<f64>> {
    let len = n_max + 1;
    let (t, ch, sh) = (rho.tanh(), rho.cosh(), rho.sinh());
    let mut vac = vec![0.0; len];
    vac[0] = 1.0 / ch.sqrt();
    let mut k = 0;
    while k + 2 < len {
        vac[k + 2] = -vac[k] * t * ((k + 1) as f64).sqrt() / ((k + 2) as f64).sqrt();
        k += 2;
    }
    let mut out = vec![vac];
    for n in 1..count {
        let prev = &out[n - 1];
        let up = raise(prev);
        let dn = lower(prev);
        let v: Vec<f64> =
            up.iter().zip(&dn).map(|(u, d)| (ch * u + sh * d) / (n as f64).sqrt()).collect();
        out.push(v);
    }
    out
}

/// A one-photon displaced-frame state as a vector in the [`crate::oracle::build_1p`]
/// basis (original spin frame).
pub fn displaced_state_vector(state: &DisplacedState, n_max: usize) -> Vec<f64> {
    let count = state.upper.len().max(state.lower.len());
    let basis = displaced_basis(state.displacement, count, n_max);
    let len = n_max + 1;
    let mut phi1 = vec![0.0; len];
    let mut phi2 = vec![0.0; len];
    for (n, b) in basis.iter().enumerate() {
        let cu = state.upper.get(n).copied().unwrap_or(0.0);
        let cl = state.lower.get(n).copied().unwrap_or(0.0);
        for k in 0..len {
            phi1[k] += cu * b[k];
            phi2[k] += cl * b[k];
        }
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = vec![0.0; 2 * len];
    for k in 0..len {
        out[2 * k] = s * (phi1[k] - phi2[k]);
        out[2 * k + 1] = s * (phi1[k] + phi2[k]);
    }
    out
}

/// A two-photon squeezed-frame state as a vector in the [`crate::oracle::build_2p`]
/// sector basis.
pub fn squeezed_state_vector(state: &SqueezedState, n_max: usize) -> Vec<f64> {
    let o = state.q.fock_offset();
    let count = state.upper.len().max(state.lower.len());
    let basis = squeezed_basis(state.squeeze, 2 * count + o, n_max);
    let ks: Vec<usize> = (0..=n_max).filter(|k| k % 2 == o).collect();
    let mut out = vec![0.0; 2 * ks.len()];
    for m in 0..count {
        let b = &basis[2 * m + o];
        let cu = state.upper.get(m).copied().unwrap_or(0.0);
        let cl = state.lower.get(m).copied().unwrap_or(0.0);
        for (j, &k) in ks.iter().enumerate() {
            out[2 * j] += cu * b[k];
            out[2 * j + 1] += cl * b[k];
        }
    }
    out
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `‖Hψ − Eψ‖ / ‖ψ‖`.
pub fn residual(h: &TruncatedHamiltonian, psi: &[f64], energy: f64) -> Result<f64> {
    if psi.len() != h.dim {
        return Err(Error::domain(format!("state has length {}, matrix dimension is {}", psi.len(), h.dim)));
    }
    let hp = h.apply(psi);
    let r: Vec<f64> = hp.iter().zip(psi).map(|(a, b)| a - energy * b).collect();
    Ok(norm(&r) / norm(psi))
}

/// `|⟨a|b⟩| / (‖a‖‖b‖)`.
pub fn overlap(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    dot.abs() / (norm(a) * norm(b))
}
