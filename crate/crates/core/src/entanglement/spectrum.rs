use std::collections::BTreeMap;

use num_complex::Complex64;

/// S(t) = Σ_Ω C_Ω e^{2iΩt}, a trigonometric polynomial of period π.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropySpectrum {
    pub weights: BTreeMap<i64, Complex64>,
    pub period: f64,
}

impl EntropySpectrum {
    pub fn coefficient(&self, omega: i64) -> Complex64 {
        self.weights.get(&omega).copied().unwrap_or_default()
    }

    /// Time average of S, i.e. C_0.
    pub fn mean(&self) -> f64 {
        self.coefficient(0).re
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        self.weights
            .iter()
            .map(|(&omega, &c)| c * Complex64::from_polar(1.0, 2.0 * omega as f64 * t))
            .sum::<Complex64>()
            .re
    }

    /// The spectrum with C_0 set to zero.
    pub fn without_mean(&self) -> EntropySpectrum {
        let mut weights = self.weights.clone();
        weights.insert(0, Complex64::default());
        EntropySpectrum {
            weights,
            period: self.period,
        }
    }

    /// (Ω, |C_Ω|) for Ω >= 0.
    pub fn one_sided_magnitudes(&self) -> Vec<(i64, f64)> {
        self.weights
            .range(0..)
            .map(|(&omega, c)| (omega, c.norm()))
            .collect()
    }

    /// Largest |C_Ω - conj(C_{-Ω})|.
    pub fn hermitian_defect(&self) -> f64 {
        self.weights
            .iter()
            .map(|(&omega, c)| (c - self.coefficient(-omega).conj()).norm())
            .fold(0.0, f64::max)
    }
}
