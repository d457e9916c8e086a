//! Reduced density matrix and linear entropy of the splitter output.
//!
//! Two independent routes to the purity Tr ρ_a²: the partial trace of the
//! output coefficients (O(M³), used for sweeps) and the quadruple sum over
//! raw Z values in [`quadruple`] (O(M⁴), the cross-check and the source of
//! the exact time spectrum).

mod quadruple;
mod spectrum;

pub use quadruple::QuadrupleKernel;
pub use spectrum::EntropySpectrum;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::splitter::{split_state, BeamSplitterConfig, BipartiteOutput};
use crate::states::{build_state, Spectrum, SqueezedState, SqueezedStateParams};
use crate::wavefunctions::MorseSystem;

/// ρ_a over mode-a indices 0..=M.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedDensity {
    pub matrix: DMatrix<Complex64>,
}

impl ReducedDensity {
    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|c| c.re).sum()
    }

    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let m = &self.matrix;
        let mut worst = 0.0f64;
        for i in 0..m.nrows() {
            for j in i..m.ncols() {
                worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues in ascending order.
    ///
    /// Levels with ρ_qq < 1e-100 Tr ρ are reported as zero eigenvalues and
    /// entries below 1e-150 Tr ρ are flushed; since |ρ_qs|² <= ρ_qq ρ_ss the
    /// shift is far below rounding. The Hermitian solver returns NaN when
    /// whole columns sit in the underflow range.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let trace = self.trace();
        let keep: Vec<usize> = (0..self.matrix.nrows())
            .filter(|&i| self.matrix[(i, i)].re > 1e-100 * trace)
            .collect();
        let flush = 1e-150 * trace;
        let block = DMatrix::from_fn(keep.len(), keep.len(), |i, j| {
            let v = self.matrix[(keep[i], keep[j])];
            if v.norm() < flush {
                Complex64::default()
            } else {
                v
            }
        });
        let eig = SymmetricEigen::new(block);
        let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        values.resize(self.matrix.nrows(), 0.0);
        values.sort_by(|a, b| a.total_cmp(b));
        values
    }

    /// Positive semidefinite up to the rounding tolerance -1e-10.
    pub fn is_psd(&self) -> bool {
        self.eigenvalues().first().is_none_or(|&v| v >= -1e-10)
    }
}

/// ρ_a[q,s] = Σ_m c_{q,m} conj(c_{s,m}), upper triangle mirrored.
pub fn reduced_density(output: &BipartiteOutput) -> ReducedDensity {
    reduced_density_with(output, Execution::default())
}

pub fn reduced_density_with(output: &BipartiteOutput, exec: Execution) -> ReducedDensity {
    let size = output.max_index() + 1;
    let rows = exec.map_range(size, |q| {
        let row_q = output.row(q);
        (q..size)
            .map(|s| {
                row_q
                    .iter()
                    .zip(output.row(s))
                    .map(|(a, b)| a * b.conj())
                    .sum::<Complex64>()
            })
            .collect::<Vec<_>>()
    });
    let mut matrix = DMatrix::zeros(size, size);
    for (q, row) in rows.into_iter().enumerate() {
        for (offset, v) in row.into_iter().enumerate() {
            let s = q + offset;
            matrix[(q, s)] = v;
            matrix[(s, q)] = v.conj();
        }
    }
    ReducedDensity { matrix }
}

/// S = 1 - Tr ρ_a².
pub fn linear_entropy(rho: &ReducedDensity) -> f64 {
    1.0 - rho.purity()
}

/// Below this, 1 - Tr ρ² has lost too many digits to cancellation and the
/// minor form takes over.
const SMALL_ENTROPY: f64 = 1e-3;

/// S of the amplitude matrix with the given rows, from its 2×2 minors:
/// (Σ|c|²)² - Tr ρ² = 2 Σ_{q<s} Σ_{m<n} |c_qm c_sn - c_qn c_sm|²,
/// divided by (Σ|c|²)². Accurate to full relative precision for nearly
/// separable states. Rows may shorten with q.
pub(crate) fn minor_entropy<R: AsRef<[Complex64]> + Sync>(rows: &[R], exec: Execution) -> f64 {
    let partial = exec.map_range(rows.len(), |q| {
        let row_q = rows[q].as_ref();
        let mut acc = 0.0;
        for row_s in &rows[q + 1..] {
            let row_s = row_s.as_ref();
            let at = |n: usize| row_s.get(n).copied().unwrap_or_default();
            for m in 0..row_q.len() {
                for n in m + 1..row_q.len() {
                    acc += (row_q[m] * at(n) - row_q[n] * at(m)).norm_sqr();
                }
            }
        }
        acc
    });
    let norm: f64 = rows
        .iter()
        .flat_map(|r| r.as_ref().iter())
        .map(|c| c.norm_sqr())
        .sum();
    2.0 * partial.into_iter().sum::<f64>() / (norm * norm)
}

/// Static entropy through the partial-trace route.
pub fn state_entropy(state: &SqueezedState, config: &BeamSplitterConfig) -> f64 {
    let output = split_state(state, config);
    let s = linear_entropy(&reduced_density(&output));
    if s < SMALL_ENTROPY {
        let rows: Vec<&[Complex64]> = (0..=output.max_index()).map(|q| output.row(q)).collect();
        minor_entropy(&rows, Execution::default())
    } else {
        s
    }
}

/// Static entropy through the quadruple sum over raw Z.
pub fn quadruple_sum_entropy(state: &SqueezedState, config: &BeamSplitterConfig) -> Result<f64> {
    Ok(QuadrupleKernel::new(state, config)?.entropy(Execution::default()))
}

/// Upper bound 1 - 1/(M+1) on S for a state with M+1 retained levels.
pub fn entropy_upper_bound(state: &SqueezedState) -> f64 {
    1.0 - 1.0 / state.len() as f64
}

fn check_morse(state: &SqueezedState, morse: &MorseSystem) -> Result<()> {
    if state.params.spectrum != Spectrum::Finite {
        return Err(Error::InvalidParams(
            "time evolution of the entropy needs a finite (Morse) spectrum".into(),
        ));
    }
    if state.len() > morse.num_states {
        return Err(Error::DimensionMismatch {
            expected: morse.num_states,
            found: state.len(),
        });
    }
    Ok(())
}

/// S(t) for a Morse state, by phasing the coefficients and reusing the
/// partial-trace route.
pub fn entropy_time(
    params: &SqueezedStateParams,
    morse: &MorseSystem,
    config: &BeamSplitterConfig,
    t: f64,
) -> Result<f64> {
    let state = build_state(params)?;
    state_entropy_time(&state, morse, config, t)
}

pub fn state_entropy_time(
    state: &SqueezedState,
    morse: &MorseSystem,
    config: &BeamSplitterConfig,
    t: f64,
) -> Result<f64> {
    check_morse(state, morse)?;
    Ok(state_entropy(&state.evolved(&morse.energies, t)?, config))
}

/// S(t) from the time-dependent quadruple sum.
pub fn quadruple_sum_entropy_time(
    state: &SqueezedState,
    morse: &MorseSystem,
    config: &BeamSplitterConfig,
    t: f64,
) -> Result<f64> {
    check_morse(state, morse)?;
    let kernel = QuadrupleKernel::new(state, config)?.evolved(&morse.energies, t)?;
    Ok(kernel.entropy(Execution::default()))
}

/// S over a time grid, one task per time point.
pub fn entropy_time_series(
    state: &SqueezedState,
    morse: &MorseSystem,
    config: &BeamSplitterConfig,
    times: &[f64],
    exec: Execution,
) -> Result<Vec<f64>> {
    check_morse(state, morse)?;
    exec.try_map(times, |&t| {
        Ok(state_entropy(&state.evolved(&morse.energies, t)?, config))
    })
}

/// Exact Fourier decomposition of S(t).
///
/// Under E_n = -(p-n)² each quadruple-sum term oscillates as
/// e^{2i(m-n)(q-j)t}, so the terms are binned by that integer instead of
/// integrating numerically. The leading 1 of S lands in Ω = 0.
pub fn entropy_spectrum(
    params: &SqueezedStateParams,
    morse: &MorseSystem,
    config: &BeamSplitterConfig,
) -> Result<EntropySpectrum> {
    let state = build_state(params)?;
    state_entropy_spectrum(&state, morse, config, Execution::default())
}

pub fn state_entropy_spectrum(
    state: &SqueezedState,
    morse: &MorseSystem,
    config: &BeamSplitterConfig,
    exec: Execution,
) -> Result<EntropySpectrum> {
    check_morse(state, morse)?;
    let kernel = QuadrupleKernel::new(state, config)?;
    let bins = kernel.binned_purity(exec);
    let offset = (kernel.max_index() * kernel.max_index()) as i64;
    let mut weights = BTreeMap::new();
    for (i, p) in bins.into_iter().enumerate() {
        if p != Complex64::default() {
            weights.insert(i as i64 - offset, -p);
        }
    }
    *weights.entry(0).or_default() += 1.0;
    Ok(EntropySpectrum {
        weights,
        period: PI,
    })
}

/// S(θ) at t = 0 over an angle grid, φ = 0.
pub fn entropy_vs_angle(params: &SqueezedStateParams, thetas: &[f64]) -> Result<Vec<f64>> {
    entropy_vs_angle_with(params, thetas, 0.0, Execution::default())
}

pub fn entropy_vs_angle_with(
    params: &SqueezedStateParams,
    thetas: &[f64],
    phi: f64,
    exec: Execution,
) -> Result<Vec<f64>> {
    if let Some(bad) = thetas.iter().find(|th| !(0.0..=PI).contains(*th)) {
        return Err(Error::InvalidParams(format!(
            "theta = {bad} outside [0, pi]"
        )));
    }
    let state = build_state(params)?;
    Ok(exec.map(thetas, |&theta| {
        state_entropy(&state, &BeamSplitterConfig::new(theta, phi))
    }))
}
