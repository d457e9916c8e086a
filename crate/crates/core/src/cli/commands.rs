//! The six CSV-producing commands.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::format::{Csv, Field};
use super::scenario::{parse_grid, Scenario, System};
use crate::entanglement::{entropy_time_series, state_entropy, state_entropy_spectrum};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::splitter::BeamSplitterConfig;
use crate::states::{build_state, ScsFamily, SqueezedState, SqueezedStateParams};
use crate::wavefunctions::{density, ho_moments, EigenfunctionBasis, MorseSystem};
use crate::HCL_P;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    HoDispersion,
    Density,
    Entropy,
    EntropyTime,
    EntropySpectrum,
    EntropyAngle,
}

pub const GAMMA_DEFAULT: [f64; 6] = [0.0, 0.25, 0.5, 0.75, 0.9, 0.95];

impl Command {
    /// Families used when the scenario names neither `type` nor `system`.
    pub fn default_types(self) -> &'static [ScsFamily] {
        match self {
            Command::HoDispersion => &[ScsFamily::Usual, ScsFamily::Quadratic],
            _ => &[ScsFamily::OscillatorLike, ScsFamily::EnergyLike],
        }
    }

    fn default_z(self, family: ScsFamily) -> Vec<f64> {
        match self {
            Command::HoDispersion | Command::Entropy => match family {
                ScsFamily::EnergyLike => grid("0:20:81"),
                _ => grid("0:4:41"),
            },
            Command::Density => vec![1.0, 2.0, 3.0, 4.0],
            Command::EntropyTime | Command::EntropySpectrum | Command::EntropyAngle => vec![4.0],
        }
    }

    fn default_gamma(self) -> Vec<f64> {
        match self {
            Command::HoDispersion | Command::Density => vec![0.0],
            Command::Entropy => GAMMA_DEFAULT.to_vec(),
            Command::EntropyTime | Command::EntropySpectrum => vec![0.0, 0.95],
            Command::EntropyAngle => vec![0.0, 0.5, 0.95],
        }
    }

    fn default_theta(self) -> Vec<f64> {
        match self {
            Command::EntropyAngle => grid("0:pi:181"),
            _ => vec![FRAC_PI_2],
        }
    }

    fn default_t(self) -> Vec<f64> {
        match self {
            Command::EntropyTime => grid("0:pi:257"),
            _ => vec![0.0],
        }
    }

    fn morse_only(self) -> bool {
        matches!(self, Command::EntropyTime | Command::EntropySpectrum)
    }

    fn ho_only(self) -> bool {
        self == Command::HoDispersion
    }
}

fn grid(s: &str) -> Vec<f64> {
    parse_grid(s, "default").expect("valid default grid")
}

/// One (type, z, γ) point with validated parameters.
struct Job {
    family: ScsFamily,
    z: f64,
    gamma: f64,
    params: SqueezedStateParams,
}

impl Job {
    fn state(&self) -> Result<SqueezedState> {
        build_state(&self.params)
    }

    fn lead(&self) -> Vec<Field> {
        vec![
            Field::Text(self.family.name()),
            Field::Num(self.z),
            Field::Num(self.gamma),
        ]
    }
}

/// Everything a command needs, checked before any state is built.
struct Plan {
    jobs: Vec<Job>,
    theta: Vec<f64>,
    phi: f64,
    t: Vec<f64>,
    morse: Option<MorseSystem>,
}

fn plan(cmd: Command, scn: &Scenario) -> Result<Plan> {
    let morse = match scn.system {
        System::Ho if cmd.morse_only() => {
            return Err(Error::Scenario(
                "this command needs the Morse system".into(),
            ))
        }
        System::Morse { .. } if cmd.ho_only() => {
            return Err(Error::Scenario(
                "this command needs the oscillator system".into(),
            ))
        }
        System::Ho => None,
        System::Morse { p } => {
            Some(MorseSystem::new(p).map_err(|e| Error::Scenario(e.to_string()))?)
        }
    };
    let p = scn.morse_p().unwrap_or(HCL_P);
    let gammas = scn.gamma.clone().unwrap_or_else(|| cmd.default_gamma());
    let mut jobs = Vec::new();
    for &family in &scn.types {
        let zs = scn.z.clone().unwrap_or_else(|| cmd.default_z(family));
        for &z in &zs {
            for &gamma in &gammas {
                let params = family
                    .params(Complex64::new(z, 0.0), Complex64::new(gamma, 0.0), p)
                    .map_err(|e| Error::Scenario(e.to_string()))?;
                jobs.push(Job {
                    family,
                    z,
                    gamma,
                    params,
                });
            }
        }
    }
    let theta = scn.theta.clone().unwrap_or_else(|| cmd.default_theta());
    if let Some(bad) = theta.iter().find(|th| !(0.0..=PI).contains(*th)) {
        return Err(Error::Scenario(format!("theta = {bad} outside [0, pi]")));
    }
    if !scn.phi.is_finite() {
        return Err(Error::Scenario("phi must be finite".into()));
    }
    Ok(Plan {
        jobs,
        theta,
        phi: scn.phi,
        t: scn.t.clone().unwrap_or_else(|| cmd.default_t()),
        morse,
    })
}

/// Runs one command and returns the full CSV text.
pub fn run(cmd: Command, scn: &Scenario, exec: Execution) -> Result<String> {
    let plan = plan(cmd, scn)?;
    match cmd {
        Command::HoDispersion => ho_dispersion(&plan, exec),
        Command::Density => density_profiles(&plan, scn, exec),
        Command::Entropy => entropy(&plan, exec),
        Command::EntropyTime => entropy_time(&plan, exec),
        Command::EntropySpectrum => entropy_spectrum(&plan, exec),
        Command::EntropyAngle => entropy_angle(&plan, exec),
    }
}

fn collect(header: &[&str], blocks: Result<Vec<Vec<Vec<Field>>>>) -> Result<String> {
    let mut csv = Csv::new(header);
    for row in blocks?.iter().flatten() {
        csv.row(row);
    }
    Ok(csv.finish())
}

fn ho_dispersion(plan: &Plan, exec: Execution) -> Result<String> {
    let header = [
        "type", "z", "gamma", "t", "mean_x", "mean_p", "var_x", "var_p", "product",
    ];
    let blocks = exec.try_map(&plan.jobs, |job| {
        let state = job.state()?;
        plan.t
            .iter()
            .map(|&t| {
                let m = ho_moments(&state, t)?;
                let mut row = job.lead();
                row.extend([t, m.mean_x, m.mean_p, m.var_x, m.var_p, m.product()].map(Field::Num));
                Ok(row)
            })
            .collect()
    });
    collect(&header, blocks)
}

fn density_profiles(plan: &Plan, scn: &Scenario, exec: Execution) -> Result<String> {
    let basis = match (&plan.morse, &scn.x) {
        (Some(sys), None) => EigenfunctionBasis::morse_default(sys.clone()),
        (None, None) => EigenfunctionBasis::ho_default(),
        (Some(sys), Some(x)) => EigenfunctionBasis {
            grid: x.clone(),
            ..EigenfunctionBasis::morse_default(sys.clone())
        },
        (None, Some(x)) => EigenfunctionBasis {
            grid: x.clone(),
            ..EigenfunctionBasis::ho_default()
        },
    };
    let header = ["type", "z", "gamma", "t", "x", "density"];
    let blocks = exec.try_map(&plan.jobs, |job| {
        let state = job.state()?;
        let mut rows = Vec::new();
        for &t in &plan.t {
            let values = density(&state, &basis, t)?;
            for (&x, rho) in basis.grid.iter().zip(values) {
                let mut row = job.lead();
                row.extend([t, x, rho].map(Field::Num));
                rows.push(row);
            }
        }
        Ok(rows)
    });
    collect(&header, blocks)
}

fn entropy(plan: &Plan, exec: Execution) -> Result<String> {
    let header = ["type", "z", "gamma", "theta", "phi", "S"];
    let blocks = exec.try_map(&plan.jobs, |job| {
        let state = job.state()?;
        Ok(plan
            .theta
            .iter()
            .map(|&theta| {
                let s = state_entropy(&state, &BeamSplitterConfig::new(theta, plan.phi));
                let mut row = job.lead();
                row.extend([theta, plan.phi, s].map(Field::Num));
                row
            })
            .collect())
    });
    collect(&header, blocks)
}

fn morse(plan: &Plan) -> &MorseSystem {
    plan.morse.as_ref().expect("validated Morse plan")
}

fn entropy_time(plan: &Plan, exec: Execution) -> Result<String> {
    let header = ["type", "z", "gamma", "theta", "phi", "t", "S"];
    let blocks = exec.try_map(&plan.jobs, |job| {
        let state = job.state()?;
        let mut rows = Vec::new();
        for &theta in &plan.theta {
            let config = BeamSplitterConfig::new(theta, plan.phi);
            let series = entropy_time_series(&state, morse(plan), &config, &plan.t, exec)?;
            for (&t, s) in plan.t.iter().zip(series) {
                let mut row = job.lead();
                row.extend([theta, plan.phi, t, s].map(Field::Num));
                rows.push(row);
            }
        }
        Ok(rows)
    });
    collect(&header, blocks)
}

fn entropy_spectrum(plan: &Plan, exec: Execution) -> Result<String> {
    let header = [
        "type",
        "z",
        "gamma",
        "theta",
        "phi",
        "omega",
        "re_c",
        "im_c",
        "abs_c",
        "abs_c_mean_removed",
    ];
    let blocks = exec.try_map(&plan.jobs, |job| {
        let state = job.state()?;
        let mut rows = Vec::new();
        for &theta in &plan.theta {
            let config = BeamSplitterConfig::new(theta, plan.phi);
            let spectrum = state_entropy_spectrum(&state, morse(plan), &config, exec)?;
            for (&omega, c) in spectrum.weights.range(0..) {
                let mean_removed = if omega == 0 { 0.0 } else { c.norm() };
                let mut row = job.lead();
                row.extend([Field::Num(theta), Field::Num(plan.phi), Field::Int(omega)]);
                row.extend([c.re, c.im, c.norm(), mean_removed].map(Field::Num));
                rows.push(row);
            }
        }
        Ok(rows)
    });
    collect(&header, blocks)
}

fn entropy_angle(plan: &Plan, exec: Execution) -> Result<String> {
    let header = ["type", "z", "gamma", "phi", "theta", "S"];
    let blocks = exec.try_map(&plan.jobs, |job| {
        let state = job.state()?;
        let values = exec.map(&plan.theta, |&theta| {
            state_entropy(&state, &BeamSplitterConfig::new(theta, plan.phi))
        });
        Ok(plan
            .theta
            .iter()
            .zip(values)
            .map(|(&theta, s)| {
                let mut row = job.lead();
                row.extend([plan.phi, theta, s].map(Field::Num));
                row
            })
            .collect())
    });
    collect(&header, blocks)
}
