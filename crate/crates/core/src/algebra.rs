//! Deformed Heisenberg algebras on a number basis.
//!
//! A deformation is fixed by f(n); the ladder operators act as
//! A|n> = sqrt(k(n)) |n-1>, A†|n> = sqrt(k(n+1)) |n+1> with k(n) = n f(n)².

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::special::ln_factorial;

/// Choice of deformation function f(n).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Deformation {
    /// f(n) = 1, the undeformed oscillator.
    Unit,
    /// f(n) = sqrt(n), giving k(n) = n².
    Quadratic,
    /// f(n) = sqrt(v + n), an su(1,1) algebra.
    ShiftPlus(f64),
    /// f(n) = sqrt(v - n), an su(2) algebra; v = 2p for Morse energy-like states.
    ShiftMinus(f64),
}

impl Deformation {
    /// f(n)².
    pub fn f_squared(&self, n: usize) -> f64 {
        let n = n as f64;
        match *self {
            Deformation::Unit => 1.0,
            Deformation::Quadratic => n,
            Deformation::ShiftPlus(v) => v + n,
            Deformation::ShiftMinus(v) => v - n,
        }
    }

    /// k(n) = n f(n)².
    pub fn k(&self, n: usize) -> f64 {
        n as f64 * self.f_squared(n)
    }
}

/// A deformation together with the number of retained basis states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeformationSpec {
    pub kind: Deformation,
    pub dimension: usize,
}

impl DeformationSpec {
    pub fn new(kind: Deformation, dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidParams("dimension must be positive".into()));
        }
        match kind {
            Deformation::ShiftPlus(v) if !(v >= 0.0 && v.is_finite()) => {
                return Err(Error::InvalidParams(format!(
                    "ShiftPlus needs v >= 0, got {v}"
                )));
            }
            Deformation::ShiftMinus(v) => {
                if !(v >= 1.0 && v.is_finite()) {
                    return Err(Error::InvalidParams(format!(
                        "ShiftMinus needs v >= 1, got {v}"
                    )));
                }
                if dimension as f64 >= v {
                    return Err(Error::Domain(format!(
                        "ShiftMinus(v = {v}) admits at most {} states, asked for {dimension}",
                        v.ceil() as usize - 1
                    )));
                }
            }
            _ => {}
        }
        Ok(Self { kind, dimension })
    }

    pub fn k(&self, n: usize) -> f64 {
        self.kind.k(n)
    }

    /// ln ρ(n) = Σ_{i=1..n} ln k(i).
    pub fn log_rho(&self, n: usize) -> Result<f64> {
        if n > self.dimension {
            return Err(Error::Domain(format!(
                "n = {n} outside the basis of dimension {}",
                self.dimension
            )));
        }
        let mut acc = 0.0;
        for i in 1..=n {
            let k = self.k(i);
            if k <= 0.0 {
                return Err(Error::Domain(format!("k({i}) = {k} is not positive")));
            }
            acc += k.ln();
        }
        Ok(acc)
    }

    /// ln ρ(n) for n = 0..=last.
    pub fn log_rho_table(&self, last: usize) -> Result<Vec<f64>> {
        if last > self.dimension {
            return Err(Error::Domain(format!(
                "n = {last} outside the basis of dimension {}",
                self.dimension
            )));
        }
        let mut table = Vec::with_capacity(last + 1);
        let mut acc = 0.0;
        table.push(acc);
        for i in 1..=last {
            let k = self.k(i);
            if k <= 0.0 {
                return Err(Error::Domain(format!("k({i}) = {k} is not positive")));
            }
            acc += k.ln();
            table.push(acc);
        }
        Ok(table)
    }

    /// ln f(n)! where f(n)! = Π_{i=1..n} f(i).
    pub fn log_f_factorial(&self, n: usize) -> Result<f64> {
        Ok(0.5 * (self.log_rho(n)? - ln_factorial(n)))
    }

    pub fn ladder_matrices(&self) -> LadderMatrices {
        let d = self.dimension;
        let mut a_lower = DMatrix::zeros(d, d);
        let mut a_raise = DMatrix::zeros(d, d);
        for n in 1..d {
            let amp = self.k(n).max(0.0).sqrt();
            a_lower[(n - 1, n)] = amp;
            a_raise[(n, n - 1)] = amp;
        }
        let number_op = DMatrix::from_fn(d, d, |i, j| if i == j { i as f64 } else { 0.0 });
        LadderMatrices {
            a_lower,
            a_raise,
            number_op,
        }
    }

    /// Residuals of the generalized Heisenberg relations, and of the
    /// su(1,1) / su(2) form for the shifted deformations.
    ///
    /// [A, A†] is compared only on the interior block 0..dimension-1: a
    /// finite matrix cannot reproduce it on the last retained state.
    pub fn commutator_check(&self) -> Result<CommutatorReport> {
        let d = self.dimension;
        if d < 3 {
            return Err(Error::InvalidParams(format!(
                "commutator check needs dimension >= 3, got {d}"
            )));
        }
        let m = self.ladder_matrices();
        let interior = d - 1;

        let comm = &m.a_lower * &m.a_raise - &m.a_raise * &m.a_lower;
        let expected = DMatrix::from_fn(d, d, |i, j| {
            if i == j {
                self.k(i + 1) - self.k(i)
            } else {
                0.0
            }
        });
        let mut heisenberg = block_residual(&comm, &expected, interior);
        // [N, A] = -A and [N, A†] = A† hold on the whole truncated basis.
        let na = &m.number_op * &m.a_lower - &m.a_lower * &m.number_op + &m.a_lower;
        let nad = &m.number_op * &m.a_raise - &m.a_raise * &m.number_op - &m.a_raise;
        heisenberg = heisenberg.max(na.amax()).max(nad.amax());

        let su = match self.kind {
            Deformation::ShiftPlus(v) => Some(self.su_residual(&m, &comm, 1.0, v)),
            Deformation::ShiftMinus(v) => Some(self.su_residual(&m, &comm, -1.0, v)),
            _ => None,
        };
        Ok(CommutatorReport {
            heisenberg_residual: heisenberg,
            su_residual: su,
            max_residual: heisenberg.max(su.unwrap_or(0.0)),
        })
    }

    fn su_residual(&self, m: &LadderMatrices, comm: &DMatrix<f64>, delta: f64, v: f64) -> f64 {
        let d = self.dimension;
        let shift = 0.5 * (delta * v + 1.0);
        let j0 = DMatrix::from_fn(d, d, |i, j| if i == j { i as f64 + shift } else { 0.0 });
        let rhs = &j0 * (2.0 * delta);
        let main = block_residual(comm, &rhs, d - 1);
        let minus = &j0 * &m.a_lower - &m.a_lower * &j0 + &m.a_lower;
        let plus = &j0 * &m.a_raise - &m.a_raise * &j0 - &m.a_raise;
        main.max(minus.amax()).max(plus.amax())
    }
}

fn block_residual(a: &DMatrix<f64>, b: &DMatrix<f64>, size: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..size {
        for j in 0..size {
            worst = worst.max((a[(i, j)] - b[(i, j)]).abs());
        }
    }
    worst
}

/// Dense matrices of A, A† and N on the retained basis.
#[derive(Clone, Debug)]
pub struct LadderMatrices {
    pub a_lower: DMatrix<f64>,
    pub a_raise: DMatrix<f64>,
    pub number_op: DMatrix<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommutatorReport {
    pub heisenberg_residual: f64,
    pub su_residual: Option<f64>,
    pub max_residual: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    const P_HCL: f64 = 28.22;

    fn spec(kind: Deformation, d: usize) -> DeformationSpec {
        DeformationSpec::new(kind, d).unwrap()
    }

    #[test]
    fn log_rho_examples() {
        let unit = spec(Deformation::Unit, 10);
        assert_eq!(unit.log_rho(0).unwrap(), 0.0);
        assert!((unit.log_rho(4).unwrap() - 24f64.ln()).abs() < 1e-14);

        let energy = spec(Deformation::ShiftMinus(2.0 * P_HCL), 28);
        let direct: f64 = (1.0 * (2.0 * P_HCL - 1.0)) * (2.0 * (2.0 * P_HCL - 2.0));
        assert!((direct - 6036.3072).abs() < 1e-9);
        assert!((energy.log_rho(2).unwrap() - direct.ln()).abs() < 1e-13);
    }

    #[test]
    fn log_rho_matches_direct_product_below_overflow() {
        for kind in [
            Deformation::Unit,
            Deformation::Quadratic,
            Deformation::ShiftPlus(1.5),
            Deformation::ShiftMinus(2.0 * P_HCL),
        ] {
            let s = spec(kind, 28);
            let mut direct = 1.0f64;
            for n in 1..28 {
                direct *= kind.k(n);
                let rel = (s.log_rho(n).unwrap().exp() - direct).abs() / direct;
                assert!(rel < 1e-12, "{kind:?} n={n} rel={rel}");
            }
        }
    }

    #[test]
    fn log_rho_rejects_out_of_range() {
        let s = spec(Deformation::Unit, 5);
        assert!(matches!(s.log_rho(6), Err(Error::Domain(_))));
        // v integer: k(v) = 0 would be hit at n = v, so dimension v is rejected.
        assert!(DeformationSpec::new(Deformation::ShiftMinus(4.0), 4).is_err());
        assert!(DeformationSpec::new(Deformation::ShiftMinus(4.0), 3).is_ok());
        assert!(DeformationSpec::new(Deformation::ShiftMinus(2.0 * P_HCL), 57).is_err());
        assert!(DeformationSpec::new(Deformation::ShiftMinus(0.5), 1).is_err());
        assert!(DeformationSpec::new(Deformation::ShiftPlus(-1.0), 3).is_err());
    }

    #[test]
    fn rho_grows_for_unit_and_shift_plus() {
        for kind in [Deformation::Unit, Deformation::ShiftPlus(1.0)] {
            let s = spec(kind, 30);
            for n in 1..29 {
                if kind.k(n + 1) > 1.0 {
                    assert!(s.log_rho(n + 1).unwrap() > s.log_rho(n).unwrap());
                }
            }
        }
    }

    #[test]
    fn ladder_matrices_are_adjoint() {
        let m = spec(Deformation::ShiftMinus(2.0 * P_HCL), 28).ladder_matrices();
        assert_eq!(m.a_raise, m.a_lower.transpose());
        assert!(m.a_lower.iter().all(|&x| x >= 0.0));
        assert_eq!(m.number_op[(5, 5)], 5.0);
        assert!((m.a_raise[(2, 1)] - (2.0 * (2.0 * P_HCL - 2.0)).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn commutator_examples() {
        let r = spec(Deformation::Unit, 10).commutator_check().unwrap();
        assert!(r.max_residual <= 1e-12);
        assert!(r.su_residual.is_none());

        let r = spec(Deformation::ShiftMinus(2.0 * P_HCL), 28)
            .commutator_check()
            .unwrap();
        assert!(r.su_residual.unwrap() <= 1e-10, "{r:?}");
        assert!(r.max_residual <= 1e-10);

        let r = spec(Deformation::ShiftPlus(1.0), 10)
            .commutator_check()
            .unwrap();
        assert!(r.su_residual.unwrap() <= 1e-10, "{r:?}");

        let r = spec(Deformation::Quadratic, 12).commutator_check().unwrap();
        assert!(r.max_residual <= 1e-10);

        assert!(spec(Deformation::Unit, 2).commutator_check().is_err());
    }

    #[test]
    fn truncation_edge_breaks_identity() {
        // The last retained state is excluded from the check for a reason.
        let s = spec(Deformation::Unit, 6);
        let m = s.ladder_matrices();
        let comm = &m.a_lower * &m.a_raise - &m.a_raise * &m.a_lower;
        assert!((comm[(5, 5)] - 1.0).abs() > 1.0);
    }

    #[test]
    fn log_f_factorial_unit_is_zero() {
        let s = spec(Deformation::Unit, 20);
        assert!(s.log_f_factorial(15).unwrap().abs() < 1e-12);
        let q = spec(Deformation::Quadratic, 20);
        assert!((q.log_f_factorial(6).unwrap() - 0.5 * 720f64.ln()).abs() < 1e-12);
    }
}
