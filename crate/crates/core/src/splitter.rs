//! Two-port beam splitter acting on (state ⊗ vacuum).

use num_complex::Complex64;

use crate::special::{binomial, ln_binomial, ln_factorial_table, ln_pow};
use crate::states::{SqueezedState, SqueezedStateParams};

/// Above this n the binomial square roots are taken in log domain.
const DIRECT_BINOMIAL_MAX: usize = 25;

/// Beam-splitter angle θ and phase φ, with t = cos(θ/2) and
/// r = -e^{-iφ} sin(θ/2).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamSplitterConfig {
    pub theta: f64,
    pub phi: f64,
    pub t: Complex64,
    pub r: Complex64,
}

impl BeamSplitterConfig {
    pub fn new(theta: f64, phi: f64) -> Self {
        let half = theta / 2.0;
        Self {
            theta,
            phi,
            t: Complex64::new(half.cos(), 0.0),
            r: -Complex64::from_polar(1.0, -phi) * half.sin(),
        }
    }

    /// θ = π/2, φ = 0.
    pub fn balanced() -> Self {
        Self::new(std::f64::consts::FRAC_PI_2, 0.0)
    }
}

/// Amplitudes of B(θ)(|n> ⊗ |0>) on |q> ⊗ |n-q>, q = 0..=n.
pub fn fock_split(config: &BeamSplitterConfig, n: usize) -> Vec<Complex64> {
    (0..=n)
        .map(|q| {
            let root = if n <= DIRECT_BINOMIAL_MAX {
                binomial(n, q).sqrt()
            } else {
                (0.5 * ln_binomial(n, q)).exp()
            };
            root * config.t.powi(q as i32) * config.r.powi((n - q) as i32)
        })
        .collect()
}

/// Output coefficients c_{q,m} for |q> ⊗ |m>, stored only for q + m <= M.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteOutput {
    max_index: usize,
    /// Row q holds m = 0..=M-q.
    data: Vec<Complex64>,
    pub source: SqueezedStateParams,
    pub config: BeamSplitterConfig,
}

impl BipartiteOutput {
    fn zeros(max_index: usize, source: SqueezedStateParams, config: BeamSplitterConfig) -> Self {
        let len = (max_index + 1) * (max_index + 2) / 2;
        Self {
            max_index,
            data: vec![Complex64::default(); len],
            source,
            config,
        }
    }

    fn offset(&self, q: usize) -> usize {
        q * (self.max_index + 1) - q * (q.saturating_sub(1)) / 2
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    /// c_{q,m}; zero outside the support q + m <= M.
    pub fn get(&self, q: usize, m: usize) -> Complex64 {
        if q + m > self.max_index {
            Complex64::default()
        } else {
            self.data[self.offset(q) + m]
        }
    }

    /// All m for fixed q.
    pub fn row(&self, q: usize) -> &[Complex64] {
        let start = self.offset(q);
        &self.data[start..start + self.max_index + 1 - q]
    }

    fn row_mut(&mut self, q: usize) -> &mut [Complex64] {
        let start = self.offset(q);
        let len = self.max_index + 1 - q;
        &mut self.data[start..start + len]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// B(θ)(Ψ ⊗ |0>), assembled entry by entry as
/// c_{q,m} = c_{q+m} sqrt((q+m)!/(q! m!)) t^q r^m, the binomial and the
/// powers of t and r combined in log-magnitude/phase form.
pub fn split_state(state: &SqueezedState, config: &BeamSplitterConfig) -> BipartiteOutput {
    let big_m = state.len() - 1;
    let mut out = BipartiteOutput::zeros(big_m, state.params, *config);
    let lf = ln_factorial_table(big_m);
    let (ln_t, arg_t) = (config.t.norm().ln(), config.t.arg());
    let (ln_r, arg_r) = (config.r.norm().ln(), config.r.arg());
    for q in 0..=big_m {
        let row = out.row_mut(q);
        for (m, slot) in row.iter_mut().enumerate() {
            let c = state.coeffs[q + m];
            if c.norm() == 0.0 {
                continue;
            }
            let ln_mag = 0.5 * (lf[q + m] - lf[q] - lf[m]) + ln_pow(ln_t, q) + ln_pow(ln_r, m);
            let phase = q as f64 * arg_t + m as f64 * arg_r;
            *slot = c * Complex64::from_polar(ln_mag.exp(), phase);
        }
    }
    out
}

/// The same output as the superposition Σ_n c_n B(θ)(|n> ⊗ |0>).
pub fn split_state_by_fock(state: &SqueezedState, config: &BeamSplitterConfig) -> BipartiteOutput {
    let big_m = state.len() - 1;
    let mut out = BipartiteOutput::zeros(big_m, state.params, *config);
    for (n, c) in state.coeffs.iter().enumerate() {
        for (q, amp) in fock_split(config, n).into_iter().enumerate() {
            let start = out.offset(q);
            out.data[start + n - q] += c * amp;
        }
    }
    out
}
