//! Scenario files: flat `key = value` lines, `#` comments.
//!
//! Numeric grids accept comma lists (`0.5, 1, 2`), inclusive linspaces
//! (`start:end:count`) and products/quotients involving `pi`
//! (`pi/2`, `3*pi/4`).

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::states::ScsFamily;
use crate::wavefunctions::uniform_grid;
use crate::HCL_P;

pub const KEYS: [&str; 10] = [
    "system", "p", "type", "z", "gamma", "theta", "phi", "t", "x", "out",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum System {
    Ho,
    Morse { p: f64 },
}

/// Raw key/value pairs, later merged with command-line overrides.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawScenario {
    pub entries: BTreeMap<String, String>,
}

impl RawScenario {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| scenario(format!("line {}: expected `key = value`", i + 1)))?;
            let key = key.trim().to_ascii_lowercase();
            if !KEYS.contains(&key.as_str()) {
                return Err(scenario(format!("line {}: unknown key `{key}`", i + 1)));
            }
            let value = value.trim();
            if value.is_empty() {
                return Err(scenario(format!("line {}: empty value for `{key}`", i + 1)));
            }
            if entries.insert(key.clone(), value.to_string()).is_some() {
                return Err(scenario(format!("line {}: duplicate key `{key}`", i + 1)));
            }
        }
        Ok(Self { entries })
    }

    pub fn set(&mut self, key: &str, value: Option<&str>) {
        if let Some(v) = value {
            self.entries.insert(key.to_string(), v.trim().to_string());
        }
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }
}

/// A validated scenario. Grids left unset are `None` and fall back to
/// per-command defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub system: System,
    pub types: Vec<ScsFamily>,
    pub z: Option<Vec<f64>>,
    pub gamma: Option<Vec<f64>>,
    pub theta: Option<Vec<f64>>,
    pub phi: f64,
    pub t: Option<Vec<f64>>,
    pub x: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
}

impl Scenario {
    /// `default_types` applies when neither `type` nor `system` is given.
    pub fn resolve(raw: &RawScenario, default_types: &[ScsFamily]) -> Result<Self> {
        let p = raw.get("p").map(|s| parse_value(s, "p")).transpose()?;
        if let Some(p) = p {
            if p <= 1.0 {
                return Err(scenario(format!("Morse parameter p = {p} must exceed 1")));
            }
        }
        let declared = raw
            .get("system")
            .map(|s| match s.to_ascii_lowercase().as_str() {
                "ho" => Ok(System::Ho),
                "morse" => Ok(System::Morse {
                    p: p.unwrap_or(HCL_P),
                }),
                other => Err(scenario(format!(
                    "unknown system `{other}` (expected ho|morse)"
                ))),
            })
            .transpose()?;
        let types = match raw.get("type") {
            Some(s) => parse_types(s)?,
            None => match declared {
                Some(System::Ho) => vec![ScsFamily::Usual, ScsFamily::Quadratic],
                Some(System::Morse { .. }) => {
                    vec![ScsFamily::OscillatorLike, ScsFamily::EnergyLike]
                }
                None => default_types.to_vec(),
            },
        };
        let morse = types[0].is_morse();
        if types.iter().any(|t| t.is_morse() != morse) {
            return Err(scenario(
                "oscillator and Morse types cannot be mixed".into(),
            ));
        }
        let system = match declared {
            Some(sys) => sys,
            None if morse => System::Morse {
                p: p.unwrap_or(HCL_P),
            },
            None => System::Ho,
        };
        if matches!(system, System::Morse { .. }) != morse {
            return Err(scenario(format!(
                "type `{}` is incompatible with the chosen system",
                types[0].name()
            )));
        }
        if system == System::Ho && p.is_some() {
            return Err(scenario("`p` applies to the Morse system only".into()));
        }

        let grid = |key: &str| raw.get(key).map(|s| parse_grid(s, key)).transpose();
        let phi = raw
            .get("phi")
            .map(|s| parse_value(s, "phi"))
            .transpose()?
            .unwrap_or(0.0);
        let x = grid("x")?;
        if let Some(x) = &x {
            if x.len() < 2 || x.windows(2).any(|w| w[1] <= w[0]) {
                return Err(scenario(
                    "`x` must be strictly increasing with at least 2 points".into(),
                ));
            }
        }
        Ok(Self {
            system,
            types,
            z: grid("z")?,
            gamma: grid("gamma")?,
            theta: grid("theta")?,
            phi,
            t: grid("t")?,
            x,
            out: raw.get("out").map(PathBuf::from),
        })
    }

    pub fn morse_p(&self) -> Option<f64> {
        match self.system {
            System::Morse { p } => Some(p),
            System::Ho => None,
        }
    }
}

fn scenario(msg: String) -> Error {
    Error::Scenario(msg)
}

pub fn parse_types(s: &str) -> Result<Vec<ScsFamily>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        let fam = ScsFamily::ALL
            .into_iter()
            .find(|f| f.name() == item.to_ascii_lowercase())
            .ok_or_else(|| {
                scenario(format!(
                    "unknown type `{item}` (expected usual|quadratic|osc|energy)"
                ))
            })?;
        if !out.contains(&fam) {
            out.push(fam);
        }
    }
    Ok(out)
}

/// A single number, optionally written with `pi`, `*` and `/`.
pub fn parse_value(s: &str, key: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || scenario(format!("`{key}`: cannot parse `{s}` as a number"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Ok(v) = s.parse::<f64>() {
        return if v.is_finite() { Ok(v) } else { Err(bad()) };
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s),
    };
    let mut value = sign;
    let mut divide = false;
    let mut rest = body;
    loop {
        let end = rest.find(['*', '/']).unwrap_or(rest.len());
        let token = rest[..end].trim();
        let factor = match token.to_ascii_lowercase().as_str() {
            "pi" => std::f64::consts::PI,
            t => t.parse::<f64>().map_err(|_| bad())?,
        };
        value = if divide {
            value / factor
        } else {
            value * factor
        };
        if end == rest.len() {
            break;
        }
        divide = rest.as_bytes()[end] == b'/';
        rest = &rest[end + 1..];
    }
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// `start:end:count` or a comma list.
pub fn parse_grid(s: &str, key: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let grid = match parts.as_slice() {
        [single] => single
            .split(',')
            .map(|v| parse_value(v, key))
            .collect::<Result<Vec<_>>>()?,
        [start, end, count] => {
            let count: usize = count.trim().parse().map_err(|_| {
                scenario(format!(
                    "`{key}`: grid count `{}` is not an integer",
                    count.trim()
                ))
            })?;
            uniform_grid(parse_value(start, key)?, parse_value(end, key)?, count)
        }
        _ => {
            return Err(scenario(format!(
                "`{key}`: expected a list or start:end:count"
            )))
        }
    };
    if grid.is_empty() {
        return Err(scenario(format!("`{key}`: grid is empty")));
    }
    Ok(grid)
}
