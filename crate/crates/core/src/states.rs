//! Squeezed coherent states: eigenvectors of A + γA† with eigenvalue z.
//!
//! The state is Ψ = N^{-1/2} Σ_n Z(z,γ,n)/sqrt(ρ(n)) |n>, with Z from the
//! three-term recurrence Z(n+1) = z Z(n) - γ k(n) Z(n-1), Z(0) = 1, Z(1) = z.

use num_complex::Complex64;

use crate::algebra::{Deformation, DeformationSpec};
use crate::ddouble::{CDd, Dd};
use crate::error::{Error, Result};

/// Hard cap on the last basis index for infinite spectra.
pub const HO_TRUNCATION_CAP: usize = 500;

/// Tail criterion: |c_M|² below this fraction of the partial norm ...
const TAIL_RATIO: f64 = 1e-16;
/// ... for this many consecutive indices.
const TAIL_RUN: usize = 5;

const RESCALE_ABOVE: f64 = 1e150;

/// Whether the basis is genuinely finite (Morse bound states) or a
/// truncation of an infinite one (harmonic oscillator).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spectrum {
    Finite,
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezedStateParams {
    pub z: Complex64,
    pub gamma: Complex64,
    pub algebra: DeformationSpec,
    /// Last retained index M. For infinite spectra this is the cap the
    /// adaptive truncation may not exceed.
    pub max_index: usize,
    pub spectrum: Spectrum,
}

impl SqueezedStateParams {
    pub fn new(
        z: Complex64,
        gamma: Complex64,
        algebra: DeformationSpec,
        max_index: usize,
        spectrum: Spectrum,
    ) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite() && gamma.re.is_finite() && gamma.im.is_finite()) {
            return Err(Error::InvalidParams("z and gamma must be finite".into()));
        }
        if max_index + 1 > algebra.dimension {
            return Err(Error::InvalidParams(format!(
                "max_index {max_index} needs dimension > {max_index}, algebra has {}",
                algebra.dimension
            )));
        }
        if spectrum == Spectrum::Infinite && gamma.norm() >= 1.0 {
            return Err(Error::InvalidSqueezing {
                modulus: gamma.norm(),
            });
        }
        Ok(Self {
            z,
            gamma,
            algebra,
            max_index,
            spectrum,
        })
    }

    fn with_max_index(mut self, m: usize) -> Self {
        self.max_index = m;
        self
    }
}

/// The four state families: two on the harmonic oscillator, two on the
/// Morse bound-state basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScsFamily {
    /// HO, f(n) = 1.
    Usual,
    /// HO, f(n) = sqrt(n).
    Quadratic,
    /// Morse, f(n) = 1 over the [p] bound states.
    OscillatorLike,
    /// Morse, f(n) = sqrt(2p - n).
    EnergyLike,
}

impl ScsFamily {
    pub const ALL: [ScsFamily; 4] = [
        ScsFamily::Usual,
        ScsFamily::Quadratic,
        ScsFamily::OscillatorLike,
        ScsFamily::EnergyLike,
    ];

    pub fn is_morse(self) -> bool {
        matches!(self, ScsFamily::OscillatorLike | ScsFamily::EnergyLike)
    }

    pub fn name(self) -> &'static str {
        match self {
            ScsFamily::Usual => "usual",
            ScsFamily::Quadratic => "quadratic",
            ScsFamily::OscillatorLike => "osc",
            ScsFamily::EnergyLike => "energy",
        }
    }

    /// Parameters for this family. `p` is the Morse parameter and is
    /// ignored by the oscillator families.
    pub fn params(self, z: Complex64, gamma: Complex64, p: f64) -> Result<SqueezedStateParams> {
        match self {
            ScsFamily::Usual | ScsFamily::Quadratic => {
                let kind = if self == ScsFamily::Usual {
                    Deformation::Unit
                } else {
                    Deformation::Quadratic
                };
                let algebra = DeformationSpec::new(kind, HO_TRUNCATION_CAP + 1)?;
                SqueezedStateParams::new(z, gamma, algebra, HO_TRUNCATION_CAP, Spectrum::Infinite)
            }
            ScsFamily::OscillatorLike | ScsFamily::EnergyLike => {
                if !(p > 1.0 && p.is_finite()) {
                    return Err(Error::InvalidParams(format!(
                        "Morse parameter p = {p} must exceed 1"
                    )));
                }
                let states = p.floor() as usize;
                let kind = if self == ScsFamily::OscillatorLike {
                    Deformation::Unit
                } else {
                    Deformation::ShiftMinus(2.0 * p)
                };
                let algebra = DeformationSpec::new(kind, states)?;
                SqueezedStateParams::new(z, gamma, algebra, states - 1, Spectrum::Finite)
            }
        }
    }
}

/// Raw Z(z,γ,n) for n = 0..=M, by the unscaled three-term recurrence.
pub fn z_recurrence(params: &SqueezedStateParams) -> Result<Vec<Complex64>> {
    let m = params.max_index;
    let mut z = Vec::with_capacity(m + 1);
    z.push(Complex64::new(1.0, 0.0));
    if m >= 1 {
        z.push(params.z);
    }
    for n in 1..m {
        let next = params.z * z[n] - params.gamma * params.algebra.k(n) * z[n - 1];
        if !(next.re.is_finite() && next.im.is_finite()) {
            return Err(Error::Overflow { index: n + 1 });
        }
        z.push(next);
    }
    Ok(z)
}

/// Z(n) = mantissa[n] * exp(log_scale[n]).
#[derive(Clone, Debug)]
pub struct ScaledSequence {
    pub mantissa: Vec<Complex64>,
    pub log_scale: Vec<f64>,
}

impl ScaledSequence {
    pub fn len(&self) -> usize {
        self.mantissa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mantissa.is_empty()
    }

    pub fn ln_abs(&self, n: usize) -> f64 {
        self.mantissa[n].norm().ln() + self.log_scale[n]
    }

    /// Unit phase of Z(n); zero when Z(n) = 0.
    pub fn phase(&self, n: usize) -> Complex64 {
        let m = self.mantissa[n];
        let r = m.norm();
        if r == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            m / r
        }
    }
}

/// The Z recurrence with a running log-domain scale, for indices where the
/// raw values leave double range.
pub fn scaled_z_recurrence(params: &SqueezedStateParams) -> ScaledSequence {
    let m = params.max_index;
    let mut mantissa = Vec::with_capacity(m + 1);
    let mut log_scale: Vec<f64> = Vec::with_capacity(m + 1);
    mantissa.push(Complex64::new(1.0, 0.0));
    log_scale.push(0.0);
    if m >= 1 {
        mantissa.push(params.z);
        log_scale.push(0.0);
    }
    for n in 1..m {
        // Bring Z(n-1) onto the scale of Z(n).
        let prev = mantissa[n - 1] * (log_scale[n - 1] - log_scale[n]).exp();
        let mut next = params.z * mantissa[n] - params.gamma * params.algebra.k(n) * prev;
        let mut scale = log_scale[n];
        let size = next.norm();
        if size > RESCALE_ABOVE {
            next /= size;
            scale += size.ln();
            // Keep Z(n) representable on the new scale for the next step.
            let s = size.ln();
            mantissa[n] /= size;
            log_scale[n] += s;
        }
        mantissa.push(next);
        log_scale.push(scale);
    }
    ScaledSequence {
        mantissa,
        log_scale,
    }
}

/// Unit-algebra Z from (γ/2)^{n/2} H_n(z / sqrt(2γ)), H the physicists'
/// Hermite polynomial. Falls back to zⁿ at γ = 0.
pub fn z_hermite_closed_form(z: Complex64, gamma: Complex64, n: usize) -> Complex64 {
    if gamma == Complex64::new(0.0, 0.0) {
        return z.powi(n as i32);
    }
    let w = z / (2.0 * gamma).sqrt();
    let mut h_prev = Complex64::new(1.0, 0.0);
    let mut h = 2.0 * w;
    if n == 0 {
        return h_prev;
    }
    for k in 1..n {
        let next = 2.0 * w * h - 2.0 * k as f64 * h_prev;
        h_prev = h;
        h = next;
    }
    (gamma / 2.0).powf(n as f64 / 2.0) * h
}

/// Energy-like Morse Z from the terminating hypergeometric form
/// (-1)ⁿ γ^{n/2} Γ(2p)/Γ(2p-n) ₂F₁(-n, -z/(2√γ) + (1-2p)/2; 1-2p; 2).
///
/// The n+1 terms of the ₂F₁ sum nearly cancel (roughly 2ⁿ amplification
/// of rounding), so everything is carried in double-double arithmetic.
pub fn z_energy_closed_form(z: Complex64, gamma: Complex64, n: usize, p: f64) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let dd = |x: f64| Dd::new(x);
    let root = CDd::from(gamma).sqrt();
    let two_p = dd(2.0 * p);
    let c = dd(1.0) - two_p;
    let b = CDd::real(c * dd(0.5)) - CDd::from(z) / root.scale(dd(2.0));

    // Σ_k (-n)_k (b)_k / ((c)_k k!) 2^k
    let mut term = CDd::real(dd(1.0));
    let mut sum = term;
    for k in 0..n {
        let kf = k as f64;
        let num = (b + CDd::real(dd(kf))).scale(dd(2.0 * (kf - n as f64)));
        let den = (c + dd(kf)) * dd(kf + 1.0);
        term = term * num;
        term = CDd::new(term.re / den, term.im / den);
        sum = sum + term;
    }

    // γ^{n/2} Γ(2p)/Γ(2p-n) = (√γ)ⁿ Π_{i=1..n} (2p - i)
    let mut prefactor = CDd::real(dd(if n.is_multiple_of(2) { 1.0 } else { -1.0 }));
    for i in 1..=n {
        prefactor = (prefactor * root).scale(two_p - dd(i as f64));
    }
    (prefactor * sum).to_complex()
}

/// A normalized squeezed coherent state over the retained number basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SqueezedState {
    /// c_n = Z(n) / sqrt(ρ(n) N), n = 0..=M.
    pub coeffs: Vec<Complex64>,
    /// ln N(z,γ) = ln Σ |Z(n)|²/ρ(n).
    pub log_norm: f64,
    /// Construction parameters; `max_index` is the M actually retained.
    pub params: SqueezedStateParams,
}

/// Builds the normalized state.
///
/// Works directly with w(n) = Z(n)/sqrt(ρ(n)), which obeys
/// w(n+1) = (z w(n) - γ sqrt(k(n)) w(n-1)) / sqrt(k(n+1)) and stays near
/// unit size where Z itself would overflow. Infinite spectra are extended
/// until the tail criterion holds, up to `params.max_index`.
pub fn build_state(params: &SqueezedStateParams) -> Result<SqueezedState> {
    if params.spectrum == Spectrum::Infinite && params.gamma.norm() >= 1.0 {
        return Err(Error::InvalidSqueezing {
            modulus: params.gamma.norm(),
        });
    }
    let cap = params.max_index;
    let algebra = &params.algebra;
    let sqrt_k = |n: usize| -> Result<f64> {
        let k = algebra.k(n);
        if k > 0.0 {
            Ok(k.sqrt())
        } else {
            Err(Error::Domain(format!("k({n}) = {k} is not positive")))
        }
    };

    let mut w: Vec<Complex64> = Vec::with_capacity(cap.min(64) + 1);
    let mut log_scale = 0.0;
    w.push(Complex64::new(1.0, 0.0));
    let mut partial = 1.0;
    let mut tail_run = 0;
    let mut last = 0;
    let mut converged = params.spectrum == Spectrum::Finite;

    for n in 0..cap {
        let prev = if n == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            params.gamma * sqrt_k(n)? * w[n - 1]
        };
        let mut next = (params.z * w[n] - prev) / sqrt_k(n + 1)?;
        let size = next.norm();
        if !size.is_finite() {
            return Err(Error::Overflow { index: n + 1 });
        }
        if size > RESCALE_ABOVE {
            for c in w.iter_mut() {
                *c /= size;
            }
            next /= size;
            partial /= size * size;
            log_scale += size.ln();
        }
        w.push(next);
        let weight = next.norm_sqr();
        partial += weight;
        last = n + 1;

        if params.spectrum == Spectrum::Infinite {
            if weight < TAIL_RATIO * partial {
                tail_run += 1;
            } else {
                tail_run = 0;
            }
            if tail_run >= TAIL_RUN {
                converged = true;
                break;
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergent { cap });
    }

    let norm_sq: f64 = w.iter().map(|c| c.norm_sqr()).sum();
    let inv = norm_sq.sqrt().recip();
    let coeffs = w.into_iter().map(|c| c * inv).collect();
    Ok(SqueezedState {
        coeffs,
        log_norm: norm_sq.ln() + 2.0 * log_scale,
        params: params.with_max_index(last),
    })
}

/// e^{-i E_n t} for each energy (ħ = 1).
pub fn time_phases(energies: &[f64], t: f64) -> Vec<Complex64> {
    energies
        .iter()
        .map(|&e| Complex64::from_polar(1.0, -e * t))
        .collect()
}

impl SqueezedState {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// The state after time t under energies E_n; `energies` must cover
    /// every retained index.
    pub fn evolved(&self, energies: &[f64], t: f64) -> Result<SqueezedState> {
        if energies.len() < self.coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: energies.len(),
                found: self.coeffs.len(),
            });
        }
        let phases = time_phases(&energies[..self.coeffs.len()], t);
        let coeffs = self
            .coeffs
            .iter()
            .zip(phases)
            .map(|(c, ph)| c * ph)
            .collect();
        Ok(SqueezedState {
            coeffs,
            log_norm: self.log_norm,
            params: self.params,
        })
    }

    pub fn renormalized(&self) -> SqueezedState {
        let inv = self.norm_sqr().sqrt().recip();
        SqueezedState {
            coeffs: self.coeffs.iter().map(|c| c * inv).collect(),
            log_norm: self.log_norm,
            params: self.params,
        }
    }

    /// ‖(A + γA† - z)Ψ‖ on the retained basis plus the component pushed
    /// past it. Exact (up to truncation) for infinite spectra, small but
    /// nonzero for finite ones.
    pub fn eigen_residual(&self) -> f64 {
        let n = self.coeffs.len();
        let k = |i: usize| self.params.algebra.kind.k(i).max(0.0).sqrt();
        let z = self.params.z;
        let g = self.params.gamma;
        let mut total = 0.0;
        for i in 0..=n {
            let lower = if i + 1 < n {
                k(i + 1) * self.coeffs[i + 1]
            } else {
                Complex64::default()
            };
            let raise = if i >= 1 && i - 1 < n {
                k(i) * self.coeffs[i - 1]
            } else {
                Complex64::default()
            };
            let own = if i < n {
                self.coeffs[i]
            } else {
                Complex64::default()
            };
            total += (lower + g * raise - z * own).norm_sqr();
        }
        total.sqrt()
    }
}
