//! Log-domain special functions shared by the state and entropy code.

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// ln n!, exact summation below 64 and log-gamma above.
pub fn ln_factorial(n: usize) -> f64 {
    if n < 2 {
        0.0
    } else if n < 64 {
        (2..=n).map(|i| (i as f64).ln()).sum()
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

/// Table of ln k! for k = 0..=n.
pub fn ln_factorial_table(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    table.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        table.push(acc);
    }
    table
}

/// ln C(n, k).
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    debug_assert!(k <= n);
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// C(n, k) as a float, by the multiplicative formula.
pub fn binomial(n: usize, k: usize) -> f64 {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    (1..=k).fold(1.0, |acc, i| acc * (n + 1 - i) as f64 / i as f64)
}

/// k * ln(x) with the convention 0 * ln(0) = 0.
pub fn ln_pow(ln_x: f64, k: usize) -> f64 {
    if k == 0 {
        0.0
    } else {
        k as f64 * ln_x
    }
}

/// ln Σ exp(v) over the finite entries.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let values: Vec<f64> = values.into_iter().collect();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(ln_factorial(0), 0.0);
        assert!((ln_factorial(4) - 24f64.ln()).abs() < 1e-15);
        let table = ln_factorial_table(100);
        for n in [5, 20, 63, 64, 100] {
            assert!((table[n] - ln_factorial(n)).abs() < 1e-11 * table[n].max(1.0));
        }
    }

    #[test]
    fn binomials_agree() {
        for n in 0..40 {
            for k in 0..=n {
                let direct = binomial(n, k);
                let logged = ln_binomial(n, k).exp();
                assert!((direct - logged).abs() <= 1e-12 * direct);
            }
        }
        assert_eq!(binomial(5, 2), 10.0);
    }

    #[test]
    fn lse() {
        let v = log_sum_exp([1000.0, 1000.0]);
        assert!((v - (1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(log_sum_exp([f64::NEG_INFINITY]), f64::NEG_INFINITY);
        assert_eq!(ln_pow(f64::NEG_INFINITY, 0), 0.0);
    }
}
