//! The quadruple-sum form of the purity,
//!
//!   Tr ρ_a² = N⁻² Σ_{q,j} Σ_{m,n ≤ M-max(q,j)} |t|^{2(q+j)} |r|^{2(m+n)}
//!             Z(m+q) Z̄(m+j) Z(n+j) Z̄(n+q) / (q! j! m! n! f(m+q)! f(m+j)! f(n+j)! f(n+q)!)
//!
//! built from the raw Z recurrence and log-domain factorial weights, kept
//! independent of the normalized-state / partial-trace route.

use num_complex::Complex64;

use super::{minor_entropy, SMALL_ENTROPY};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::special::{ln_factorial_table, ln_pow, log_sum_exp};
use crate::splitter::BeamSplitterConfig;
use crate::states::{scaled_z_recurrence, SqueezedState};

/// Per-(q, m) factors of the quadruple sum:
/// Z(m+q) |t|^q |r|^m / (sqrt(N q! m!) f(m+q)!).
#[derive(Clone, Debug)]
pub struct QuadrupleKernel {
    max_index: usize,
    /// Row q holds m = 0..=M-q.
    factors: Vec<Vec<Complex64>>,
}

impl QuadrupleKernel {
    pub fn new(state: &SqueezedState, config: &BeamSplitterConfig) -> Result<Self> {
        let params = &state.params;
        let big_m = params.max_index;
        let z = scaled_z_recurrence(params);
        let ln_rho = params.algebra.log_rho_table(big_m)?;
        let ln_fac = ln_factorial_table(big_m);

        let ln_z: Vec<f64> = (0..=big_m).map(|k| z.ln_abs(k)).collect();
        if ln_z.iter().any(|v| v.is_nan() || *v == f64::INFINITY) {
            return Err(Error::Overflow { index: big_m });
        }
        // ln f(k)! = (ln ρ(k) - ln k!) / 2
        let ln_ffac: Vec<f64> = (0..=big_m).map(|k| 0.5 * (ln_rho[k] - ln_fac[k])).collect();
        let ln_norm = log_sum_exp((0..=big_m).map(|k| 2.0 * ln_z[k] - ln_rho[k]));

        let ln_t = config.t.norm().ln();
        let ln_r = config.r.norm().ln();
        let factors = (0..=big_m)
            .map(|q| {
                (0..=big_m - q)
                    .map(|m| {
                        let k = q + m;
                        let ln_mag = ln_z[k] - ln_ffac[k] - 0.5 * (ln_norm + ln_fac[q] + ln_fac[m])
                            + ln_pow(ln_t, q)
                            + ln_pow(ln_r, m);
                        z.phase(k) * ln_mag.exp()
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            max_index: big_m,
            factors,
        })
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    /// Factors after evolving for time t: each picks up e^{-i E_{q+m} t}.
    pub fn evolved(&self, energies: &[f64], t: f64) -> Result<Self> {
        if energies.len() <= self.max_index {
            return Err(Error::DimensionMismatch {
                expected: energies.len(),
                found: self.max_index + 1,
            });
        }
        let factors = self
            .factors
            .iter()
            .enumerate()
            .map(|(q, row)| {
                row.iter()
                    .enumerate()
                    .map(|(m, a)| a * Complex64::from_polar(1.0, -energies[q + m] * t))
                    .collect()
            })
            .collect();
        Ok(Self {
            max_index: self.max_index,
            factors,
        })
    }

    /// Visits every (q, j, m, n) term of one q-slice.
    fn for_each_term<F: FnMut(usize, usize, usize, usize, Complex64)>(&self, q: usize, mut f: F) {
        let big_m = self.max_index;
        let row_q = &self.factors[q];
        for j in 0..=big_m {
            let row_j = &self.factors[j];
            let top = big_m - q.max(j);
            for m in 0..=top {
                let left = row_q[m] * row_j[m].conj();
                for n in 0..=top {
                    f(q, j, m, n, left * row_j[n] * row_q[n].conj());
                }
            }
        }
    }

    /// Tr ρ_a² as the literal quadruple sum.
    pub fn purity(&self, exec: Execution) -> f64 {
        let partial = exec.map_range(self.max_index + 1, |q| {
            let mut acc = Complex64::default();
            self.for_each_term(q, |_, _, _, _, term| acc += term);
            acc
        });
        partial.into_iter().sum::<Complex64>().re
    }

    /// 1 - Tr ρ_a², switching to the minor form when nearly separable.
    pub fn entropy(&self, exec: Execution) -> f64 {
        let s = 1.0 - self.purity(exec);
        if s < SMALL_ENTROPY {
            minor_entropy(&self.factors, exec)
        } else {
            s
        }
    }

    /// Purity terms binned by Ω = (m-n)(q-j), the integer with
    /// term phase e^{2iΩt} under Morse evolution. Index Ω + M².
    pub fn binned_purity(&self, exec: Execution) -> Vec<Complex64> {
        let big_m = self.max_index as i64;
        let width = (2 * big_m * big_m + 1) as usize;
        let partial = exec.map_range(self.max_index + 1, |q| {
            let mut bins = vec![Complex64::default(); width];
            self.for_each_term(q, |q, j, m, n, term| {
                let omega = (m as i64 - n as i64) * (q as i64 - j as i64);
                bins[(omega + big_m * big_m) as usize] += term;
            });
            bins
        });
        let mut total = vec![Complex64::default(); width];
        for bins in partial {
            for (acc, b) in total.iter_mut().zip(bins) {
                *acc += b;
            }
        }
        total
    }
}
