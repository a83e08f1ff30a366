//! Built-in models and model files.

use std::fmt;
use std::path::Path;

use anyhow::{Context, Result};
use num::ToPrimitive;

use obsinfer_core::model_file::ModelFile;
use obsinfer_core::rational::{from_f64, int, parse_rational, ratio};
use obsinfer_core::scenarios::{
    cosmo_constant, four_beauties, hartle_srednicki, presumptuous_philosopher, probability_of_life,
    sequential, sleeping_beauty, two_zone, CosmoParams,
};
use obsinfer_core::{Rational, Scenario};

use crate::args::ModelArgs;

/// A bad command line or input file, reported with exit code 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    SleepingBeauty,
    FourBeauties,
    Presumptuous,
    HartleSrednicki,
    Life,
    TwoZone,
    Cosmo,
    Sequential,
}

pub struct BuiltinInfo {
    pub name: &'static str,
    pub builtin: Builtin,
    pub params: &'static str,
    pub about: &'static str,
}

pub const BUILTINS: [BuiltinInfo; 8] = [
    BuiltinInfo {
        name: "sb",
        builtin: Builtin::SleepingBeauty,
        params: "",
        about: "fair coin; Heads wakes on day 1, Tails on days 1 and 2",
    },
    BuiltinInfo {
        name: "four-beauties",
        builtin: Builtin::FourBeauties,
        params: "",
        about: "waker A wakes B, C, D; any other waker wakes only itself",
    },
    BuiltinInfo {
        name: "presumptuous",
        builtin: Builtin::Presumptuous,
        params: "--N 1 --M 10",
        about: "N observers if W=0, M observers if W=1",
    },
    BuiltinInfo {
        name: "hartle-srednicki",
        builtin: Builtin::HartleSrednicki,
        params: "--N 4 --M 2 --p 1/2",
        about: "N cycles, all red or exactly M red; each occupied with probability p",
    },
    BuiltinInfo {
        name: "life",
        builtin: Builtin::Life,
        params: "--M 3 --support 1/4:1/2,1/2:1/4,3/4:1/4",
        about: "M sites, each hosting life with an unknown probability V",
    },
    BuiltinInfo {
        name: "two-zone",
        builtin: Builtin::TwoZone,
        params: "--M 3 --p0 1/100 --p1 1/100 --p2 1/2",
        about: "two zones of M sites; zone 1 uses p1 or p2 after a fair coin W",
    },
    BuiltinInfo {
        name: "cosmo",
        builtin: Builtin::Cosmo,
        params: "--n 4 --kappa 1/2 --n0 3 --m-intercept 1 --m-slope 2",
        about: "n candidate constants, each realised with probability kappa/n",
    },
    BuiltinInfo {
        name: "sequential",
        builtin: Builtin::Sequential,
        params: "--hazards 1/2,1 --u-levels 1",
        about: "wake on days 1..X where X stops with the given hazards",
    },
];

pub fn builtin(name: &str) -> Option<Builtin> {
    let alias = match name {
        "sleeping-beauty" => "sb",
        "hs" => "hartle-srednicki",
        "pp" => "presumptuous",
        other => other,
    };
    BUILTINS.iter().find(|b| b.name == alias).map(|b| b.builtin)
}

fn rational(flag: &str, value: &Option<String>, default: Rational) -> Result<Rational> {
    match value {
        None => Ok(default),
        Some(text) => {
            parse_rational(text).map_err(|_| usage(format!("--{flag}: not a number: `{text}`")))
        }
    }
}

fn list(flag: &str, text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(|s| parse_rational(s).map_err(|_| usage(format!("--{flag}: not a number: `{s}`"))))
        .collect()
}

impl ModelArgs {
    pub fn builtin(&self) -> Option<Builtin> {
        builtin(&self.model)
    }

    pub fn big_n(&self, default: usize) -> usize {
        self.big_n.unwrap_or(default)
    }

    pub fn big_m(&self, default: usize) -> usize {
        self.big_m.unwrap_or(default)
    }

    pub fn p(&self) -> Result<Rational> {
        rational("p", &self.p, ratio(1, 2))
    }

    /// `(p0, p1, p2)` of the two-zone model.
    pub fn zone_probabilities(&self) -> Result<[Rational; 3]> {
        Ok([
            rational("p0", &self.p0, ratio(1, 100))?,
            rational("p1", &self.p1, ratio(1, 100))?,
            rational("p2", &self.p2, ratio(1, 2))?,
        ])
    }

    pub fn cosmo_params(&self) -> Result<CosmoParams> {
        let n = self.n.unwrap_or(4);
        let kappa = match (&self.kappa, self.alpha) {
            (Some(_), _) => rational("kappa", &self.kappa, int(0))?,
            (None, Some(alpha)) => from_f64((n as f64).powf(1.0 - alpha))
                .ok_or_else(|| usage(format!("--alpha: bad value {alpha}")))?,
            (None, None) => ratio(1, 2),
        };
        let intercept = rational("m-intercept", &self.m_intercept, int(1))?;
        let slope = rational("m-slope", &self.m_slope, int(2))?;
        Ok(CosmoParams::linear(
            n,
            kappa,
            &intercept,
            &slope,
            self.n0.unwrap_or(3),
        )?)
    }

    /// `θ` to the index of the nearest candidate constant `i/n`.
    pub fn theta_index(&self, theta: f64, n: usize) -> Result<usize> {
        if !(0.0..1.0).contains(&theta) {
            return Err(usage(format!("--theta must lie in [0, 1), got {theta}")));
        }
        Ok(((theta * n as f64).round() as usize).min(n - 1))
    }

    /// The model as an enumerated space.
    pub fn load(&self) -> Result<Scenario> {
        let Some(b) = self.builtin() else {
            return load_file(Path::new(&self.model));
        };
        let sc = match b {
            Builtin::SleepingBeauty => sleeping_beauty(),
            Builtin::FourBeauties => four_beauties(),
            Builtin::Presumptuous => presumptuous_philosopher(self.big_n(1), self.big_m(10))?,
            Builtin::HartleSrednicki => hartle_srednicki(self.big_n(4), self.big_m(2), &self.p()?)?,
            Builtin::Life => {
                let text = self.support.as_deref().unwrap_or("1/4:1/2,1/2:1/4,3/4:1/4");
                let mut support = Vec::new();
                for pair in text.split(',') {
                    let (v, w) = pair
                        .split_once(':')
                        .ok_or_else(|| usage(format!("--support: expected v:w, got `{pair}`")))?;
                    support.push((list("support", v)?.remove(0), list("support", w)?.remove(0)));
                }
                probability_of_life(self.big_m(3), &support)?
            }
            Builtin::TwoZone => {
                let [p0, p1, p2] = self.zone_probabilities()?;
                two_zone(self.big_m(3), &p0, &p1, &p2)?
            }
            Builtin::Cosmo => cosmo_constant(&self.cosmo_params()?)?,
            Builtin::Sequential => {
                let hazards = list("hazards", self.hazards.as_deref().unwrap_or("1/2,1"))?;
                sequential(&hazards, self.u_levels.unwrap_or(1))?
            }
        };
        Ok(sc)
    }
}

pub fn load_file(path: &Path) -> Result<Scenario> {
    if !path.exists() {
        return Err(usage(format!(
            "`{}` is neither a built-in model nor a file (see `obsinfer scenarios`)",
            path.display()
        )));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let file =
        ModelFile::from_json(&text).with_context(|| format!("in model file {}", path.display()))?;
    Ok(file.to_scenario()?)
}

/// Parses `1e6`, `250000` or `2.5e5` as a positive whole number.
pub fn sample_count(text: &str) -> Result<u64> {
    let bad = || {
        usage(format!(
            "--samples: expected a positive whole number, got `{text}`"
        ))
    };
    let r = parse_rational(text).map_err(|_| bad())?;
    if !r.is_integer() || r <= int(0) {
        return Err(bad());
    }
    r.to_integer().to_u64().ok_or_else(bad)
}
