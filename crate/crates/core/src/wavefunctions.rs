//! Position-space eigenfunctions, state densities and HO moments.
//!
//! Units: ħ = 2m = 1. The oscillator defaults to ω = 2, where the Hermite
//! functions are ψ_n(x) = π^{-1/4} (2ⁿ n!)^{-1/2} H_n(x) e^{-x²/2}.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::{ln_factorial, ln_gamma};
use crate::states::{time_phases, Spectrum, SqueezedState};

pub const HO_OMEGA: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        uniform_grid(self.start, self.end, self.count)
    }
}

pub const MORSE_GRID: GridSpec = GridSpec {
    start: -2.0,
    end: 16.0,
    count: 2600,
};

pub const HO_GRID: GridSpec = GridSpec {
    start: -36.0,
    end: 36.0,
    count: 7201,
};

/// Bound states of the Morse potential, E_n = -(p - n)².
#[derive(Clone, Debug, PartialEq)]
pub struct MorseSystem {
    pub p: f64,
    pub num_states: usize,
    pub energies: Vec<f64>,
}

impl MorseSystem {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "Morse parameter p = {p} must exceed 1"
            )));
        }
        let num_states = p.floor() as usize;
        let energies = (0..num_states).map(|n| -(p - n as f64).powi(2)).collect();
        Ok(Self {
            p,
            num_states,
            energies,
        })
    }

    /// ε_n = p - n.
    pub fn epsilon(&self, n: usize) -> f64 {
        self.p - n as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BasisKind {
    HarmonicOscillator { omega: f64 },
    Morse(MorseSystem),
}

/// Eigenfunctions sampled on a uniform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenfunctionBasis {
    pub kind: BasisKind,
    pub grid: Vec<f64>,
}

/// `count` evenly spaced points from `start` to `end` inclusive.
pub fn uniform_grid(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (count - 1) as f64;
            (0..count).map(|i| start + step * i as f64).collect()
        }
    }
}

impl EigenfunctionBasis {
    pub fn new(kind: BasisKind, grid: Vec<f64>) -> Result<Self> {
        if grid.len() < 2
            || grid
                .windows(2)
                .any(|w| w[1].partial_cmp(&w[0]) != Some(Ordering::Greater))
        {
            return Err(Error::InvalidParams(
                "grid must be strictly increasing with >= 2 points".into(),
            ));
        }
        Ok(Self { kind, grid })
    }

    /// x in [-2, 16], 2600 points. The highest HCl state still carries
    /// ~1e-6 of its norm beyond x = 12.
    pub fn morse_default(system: MorseSystem) -> Self {
        Self {
            kind: BasisKind::Morse(system),
            grid: MORSE_GRID.points(),
        }
    }

    /// x in [-36, 36], 7201 points, ω = 2. Covers the turning point of
    /// every level up to the truncation cap.
    pub fn ho_default() -> Self {
        Self {
            kind: BasisKind::HarmonicOscillator { omega: HO_OMEGA },
            grid: HO_GRID.points(),
        }
    }

    /// Number of available eigenfunctions (`None` when unbounded).
    pub fn size(&self) -> Option<usize> {
        match &self.kind {
            BasisKind::HarmonicOscillator { .. } => None,
            BasisKind::Morse(sys) => Some(sys.num_states),
        }
    }

    pub fn energies(&self, count: usize) -> Vec<f64> {
        match &self.kind {
            BasisKind::HarmonicOscillator { omega } => {
                (0..count).map(|n| omega * (n as f64 + 0.5)).collect()
            }
            BasisKind::Morse(sys) => sys.energies.iter().take(count).copied().collect(),
        }
    }

    /// ψ_0..ψ_{count-1} at one point.
    pub fn eigenfunctions_at(&self, count: usize, x: f64) -> Vec<f64> {
        match &self.kind {
            BasisKind::HarmonicOscillator { omega } => ho_eigenfunctions(*omega, count, x),
            BasisKind::Morse(sys) => (0..count).map(|n| morse_eigenfunction(sys, n, x)).collect(),
        }
    }

    /// Row n holds ψ_n over the grid.
    pub fn table(&self, count: usize) -> DMatrix<f64> {
        let mut table = DMatrix::zeros(count, self.grid.len());
        for (j, &x) in self.grid.iter().enumerate() {
            for (n, v) in self.eigenfunctions_at(count, x).into_iter().enumerate() {
                table[(n, j)] = v;
            }
        }
        table
    }

    /// ∫ψ_m ψ_n dx by trapezoid on the grid.
    pub fn overlap_matrix(&self, count: usize) -> DMatrix<f64> {
        let table = self.table(count);
        DMatrix::from_fn(count, count, |m, n| {
            let prod: Vec<f64> = (0..self.grid.len())
                .map(|j| table[(m, j)] * table[(n, j)])
                .collect();
            trapezoid(&self.grid, &prod)
        })
    }
}

/// Composite trapezoid rule.
pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
        .sum()
}

/// Normalized Morse bound state N_n e^{-y/2} y^{ε_n} L_n^{2ε_n}(y),
/// y = (2p+1) e^{-x}.
pub fn morse_eigenfunction(system: &MorseSystem, n: usize, x: f64) -> f64 {
    let p = system.p;
    let eps = system.epsilon(n);
    let y = (2.0 * p + 1.0) * (-x).exp();
    let lag = laguerre(n, 2.0 * eps, y);
    if lag == 0.0 {
        return 0.0;
    }
    let ln_norm = 0.5 * ((2.0 * eps).ln() + ln_factorial(n) - ln_gamma(2.0 * p - n as f64 + 1.0));
    let ln_mag = ln_norm - 0.5 * y + eps * y.ln() + lag.abs().ln();
    lag.signum() * ln_mag.exp()
}

/// Generalized Laguerre L_n^α(y) by upward recurrence in n.
fn laguerre(n: usize, alpha: f64, y: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - y;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - y) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// ψ_n(x) of the oscillator with frequency ω.
pub fn ho_eigenfunction(omega: f64, n: usize, x: f64) -> f64 {
    ho_eigenfunctions(omega, n + 1, x)[n]
}

/// ψ_0..ψ_{count-1} at x, via the recurrence on normalized functions
/// ψ_{n+1} = sqrt(2/(n+1)) ξ ψ_n - sqrt(n/(n+1)) ψ_{n-1}.
pub fn ho_eigenfunctions(omega: f64, count: usize, x: f64) -> Vec<f64> {
    // m ω / ħ with m = 1/2
    let scale = omega / 2.0;
    let xi = scale.sqrt() * x;
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push((scale / std::f64::consts::PI).powf(0.25) * (-0.5 * xi * xi).exp());
    if count > 1 {
        out.push(2f64.sqrt() * xi * out[0]);
    }
    for n in 1..count.saturating_sub(1) {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * xi * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
        out.push(next);
    }
    out
}

/// |Σ_n c_n e^{-iE_n t} ψ_n(x)|² on the basis grid.
pub fn density(state: &SqueezedState, basis: &EigenfunctionBasis, t: f64) -> Result<Vec<f64>> {
    let count = state.len();
    if let Some(size) = basis.size() {
        if count > size {
            return Err(Error::DimensionMismatch {
                expected: size,
                found: count,
            });
        }
    }
    let phases = time_phases(&basis.energies(count), t);
    let amps: Vec<Complex64> = state
        .coeffs
        .iter()
        .zip(&phases)
        .map(|(c, ph)| c * ph)
        .collect();
    Ok(basis
        .grid
        .iter()
        .map(|&x| {
            basis
                .eigenfunctions_at(count, x)
                .iter()
                .zip(&amps)
                .map(|(psi, a)| a * *psi)
                .sum::<Complex64>()
                .norm_sqr()
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments {
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
    /// Set when the top two retained coefficients exceed 1e-8, since the
    /// second moments couple n to n ± 2.
    pub truncation_warning: bool,
}

impl Moments {
    pub fn product(&self) -> f64 {
        self.var_x * self.var_p
    }
}

/// Position and momentum moments at ω = 2.
pub fn ho_moments(state: &SqueezedState, t: f64) -> Result<Moments> {
    ho_moments_with_omega(state, HO_OMEGA, t)
}

/// x = sqrt(ħ/2mω)(a† + a), p = i sqrt(ħmω/2)(a† - a), with ħ = 2m = 1.
pub fn ho_moments_with_omega(state: &SqueezedState, omega: f64, t: f64) -> Result<Moments> {
    if state.params.spectrum != Spectrum::Infinite {
        return Err(Error::InvalidParams(
            "position/momentum moments are defined for oscillator states only".into(),
        ));
    }
    let n = state.len();
    let energies: Vec<f64> = (0..n).map(|k| omega * (k as f64 + 0.5)).collect();
    let c = state.evolved(&energies, t)?.coeffs;

    let mut a1 = Complex64::default();
    let mut a2 = Complex64::default();
    let mut number = 0.0;
    for k in 0..n {
        number += k as f64 * c[k].norm_sqr();
        if k + 1 < n {
            a1 += ((k + 1) as f64).sqrt() * c[k].conj() * c[k + 1];
        }
        if k + 2 < n {
            a2 += (((k + 1) * (k + 2)) as f64).sqrt() * c[k].conj() * c[k + 2];
        }
    }
    let x_pref_sq = 1.0 / omega; // ħ / (2 m ω)
    let p_pref_sq = omega / 4.0; // ħ m ω / 2

    let mean_x = x_pref_sq.sqrt() * 2.0 * a1.re;
    let mean_p = p_pref_sq.sqrt() * 2.0 * a1.im;
    let x2 = x_pref_sq * (2.0 * a2.re + 2.0 * number + 1.0);
    let p2 = p_pref_sq * (2.0 * number + 1.0 - 2.0 * a2.re);

    let top = c.iter().rev().take(2).any(|v| v.norm() > 1e-8);
    Ok(Moments {
        mean_x,
        mean_p,
        var_x: x2 - mean_x * mean_x,
        var_p: p2 - mean_p * mean_p,
        truncation_warning: top,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{build_state, ScsFamily};

    const P: f64 = 28.22;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn morse_system() {
        let sys = MorseSystem::new(P).unwrap();
        assert_eq!(sys.num_states, 28);
        assert!(sys.energies.windows(2).all(|w| w[1] > w[0]));
        assert!(sys.energies.iter().all(|&e| e < 0.0));
        assert!((sys.energies[0] + 796.3684).abs() < 1e-9);
        assert!(MorseSystem::new(0.9).is_err());
    }

    #[test]
    fn ho_values() {
        let pi_q = std::f64::consts::PI.powf(-0.25);
        assert!((ho_eigenfunction(2.0, 0, 0.0) - pi_q).abs() < 1e-15);
        assert!((ho_eigenfunction(2.0, 0, 0.0) - 0.7511255444649425).abs() < 1e-15);
        assert_eq!(ho_eigenfunction(2.0, 1, 0.0), 0.0);
        // ψ_2 = π^{-1/4} (8)^{-1/2} (4x² - 2) e^{-x²/2}
        let x: f64 = 0.7;
        let closed = pi_q / 8f64.sqrt() * (4.0 * x * x - 2.0) * (-x * x / 2.0).exp();
        assert!((ho_eigenfunction(2.0, 2, x) - closed).abs() < 1e-15);
    }

    #[test]
    fn ho_parity() {
        for n in 0..30 {
            for x in [0.3, 1.7, 4.2] {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(
                    ho_eigenfunction(2.0, n, -x),
                    sign * ho_eigenfunction(2.0, n, x)
                );
            }
        }
    }

    #[test]
    fn ho_norm_of_psi3() {
        let basis = EigenfunctionBasis::ho_default();
        let y: Vec<f64> = basis
            .grid
            .iter()
            .map(|&x| ho_eigenfunction(2.0, 3, x).powi(2))
            .collect();
        assert!((trapezoid(&basis.grid, &y) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn morse_ground_state_norm_and_orthogonality() {
        let sys = MorseSystem::new(P).unwrap();
        let basis = EigenfunctionBasis::morse_default(sys);
        let s = basis.overlap_matrix(2);
        assert!((s[(0, 0)] - 1.0).abs() < 1e-6);
        assert!(s[(0, 1)].abs() < 1e-6);
        let far = morse_eigenfunction(&MorseSystem::new(P).unwrap(), 0, 40.0);
        assert!(far.abs() < 1e-100);
    }

    #[test]
    fn vacuum_density_is_centered_gaussian() {
        let vac = build_state(&ScsFamily::Usual.params(c(0.0), c(0.0), P).unwrap()).unwrap();
        let basis = EigenfunctionBasis::ho_default();
        let d = density(&vac, &basis, 0.0).unwrap();
        let (imax, _) =
            d.iter().enumerate().fold(
                (0, f64::MIN),
                |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
            );
        assert!(basis.grid[imax].abs() < 1e-9);
        assert!((trapezoid(&basis.grid, &d) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn density_rejects_oversized_state() {
        let s = build_state(&ScsFamily::Usual.params(c(3.0), c(0.5), P).unwrap()).unwrap();
        let basis = EigenfunctionBasis::morse_default(MorseSystem::new(P).unwrap());
        assert!(s.len() > 28);
        assert!(matches!(
            density(&s, &basis, 0.0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coherent_state_moments() {
        for z in [0.5, 1.0, 2.0, 4.0] {
            let s = build_state(&ScsFamily::Usual.params(c(z), c(0.0), P).unwrap()).unwrap();
            let m = ho_moments(&s, 0.0).unwrap();
            assert!((m.var_x - 0.5).abs() < 1e-10);
            assert!((m.var_p - 0.5).abs() < 1e-10);
            assert!((m.mean_x - 2f64.sqrt() * z).abs() < 1e-10);
            assert!(!m.truncation_warning);
        }
    }

    #[test]
    fn moments_reject_morse_states() {
        let s = build_state(&ScsFamily::EnergyLike.params(c(1.0), c(0.0), P).unwrap()).unwrap();
        assert!(ho_moments(&s, 0.0).is_err());
    }
}
