//! JSON model and measure files. Weights are exact rationals written as
//! strings such as `"1/3"`.

use std::collections::BTreeMap;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::cellset::CellSet;
use crate::error::{Error, Result};
use crate::extended::{ExtendedSpace, Location, Measure};
use crate::rational::{fmt_rational, parse_rational, Rational};
use crate::scenarios::Scenario;
use crate::space::{Atom, ObjectiveSpace, SeqTag, SequentialInfo};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub cells: Vec<String>,
    /// Defaults to a single colour `-`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub colours: Vec<String>,
    pub atoms: Vec<AtomRecord>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub events: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequential: Option<SequentialRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default_event: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub weight: String,
    pub occupied: Vec<String>,
    /// Cell label to colour; unlisted cells take the first colour.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub colours: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequentialRecord {
    pub hazards: Vec<String>,
    pub u_levels: u32,
}

fn json_error(src: &str, e: &serde_json::Error) -> Error {
    let offset: usize = src
        .split_inclusive('\n')
        .take(e.line().saturating_sub(1))
        .map(str::len)
        .sum::<usize>()
        + e.column().saturating_sub(1);
    Error::parse(offset, e.to_string())
}

impl ModelFile {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| json_error(src, &e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model files always serialise")
    }

    pub fn from_scenario(sc: &Scenario) -> Self {
        let space = sc.space();
        let cells = space.cells();
        let colours = space.colours();
        let atoms = space
            .atoms()
            .iter()
            .map(|a| AtomRecord {
                label: Some(a.label.clone()),
                weight: fmt_rational(&a.weight),
                occupied: a.occupied.iter().map(|x| cells[x].clone()).collect(),
                colours: a
                    .colours
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(x, &c)| (cells[x].clone(), colours[c as usize].clone()))
                    .collect(),
                v: a.seq
                    .as_ref()
                    .map(|t| t.v.iter().map(|&b| u8::from(b)).collect()),
                u: a.seq.as_ref().map(|t| t.u),
            })
            .collect();
        ModelFile {
            name: Some(sc.name.clone()),
            cells: cells.to_vec(),
            colours: colours.to_vec(),
            atoms,
            events: sc.events.clone(),
            sequential: space.sequential().map(|s| SequentialRecord {
                hazards: s.hazards.iter().map(fmt_rational).collect(),
                u_levels: s.u_levels,
            }),
            default_event: sc.default_event.clone(),
        }
    }

    pub fn to_scenario(&self) -> Result<Scenario> {
        let m = self.cells.len();
        let colours = if self.colours.is_empty() {
            vec!["-".to_string()]
        } else {
            self.colours.clone()
        };
        let cell = |label: &str| {
            self.cells
                .iter()
                .position(|c| c == label)
                .ok_or_else(|| Error::UnknownCell(label.to_string()))
        };
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for (i, rec) in self.atoms.iter().enumerate() {
            let weight = parse_rational(&rec.weight)?;
            let mut occupied = CellSet::empty(m);
            for label in &rec.occupied {
                occupied.insert(cell(label)?);
            }
            let mut col = vec![0u32; m];
            for (label, y) in &rec.colours {
                let c = colours
                    .iter()
                    .position(|z| z == y)
                    .ok_or_else(|| Error::UnknownColour(y.clone()))?;
                col[cell(label)?] = c as u32;
            }
            let label = rec.label.clone().unwrap_or_else(|| format!("a{i}"));
            let mut atom = Atom::new(label, weight, occupied).with_colours(col);
            match (&rec.v, rec.u) {
                (Some(v), u) => {
                    atom = atom.with_seq(SeqTag {
                        v: v.iter().map(|&b| b != 0).collect(),
                        u: u.unwrap_or(0),
                    })
                }
                (None, Some(_)) => {
                    return Err(Error::InvalidSpace(format!(
                        "atom `{}` has u without v",
                        atom.label
                    )))
                }
                (None, None) => {}
            }
            atoms.push(atom);
        }
        let sequential = match &self.sequential {
            Some(s) => Some(SequentialInfo {
                hazards: s
                    .hazards
                    .iter()
                    .map(|h| parse_rational(h))
                    .collect::<Result<_>>()?,
                u_levels: s.u_levels,
            }),
            None => None,
        };
        let space =
            ObjectiveSpace::with_sequential(self.cells.clone(), colours, atoms, sequential)?;
        let mut sc = Scenario::new(self.name.clone().unwrap_or_else(|| "model".into()), space);
        sc.events = self.events.clone();
        sc.default_event = self.default_event.clone();
        for name in sc.events.keys() {
            sc.event(name)?;
        }
        Ok(sc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureFile {
    pub weights: Vec<WeightRecord>,
}

/// Weight of the extended atom `(atom, location)`; `location` is a cell label
/// or `@` for the no-observer location. Unlisted atoms get weight 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightRecord {
    pub atom: String,
    pub location: String,
    pub weight: String,
}

impl MeasureFile {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| json_error(src, &e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("measure files always serialise")
    }

    pub fn from_measure(ext: &ExtendedSpace, m: &Measure) -> Self {
        let weights = m
            .weights()
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(i, w)| {
                let (omega, loc) = ext.split(i);
                WeightRecord {
                    atom: ext.base().atoms()[omega].label.clone(),
                    location: match loc {
                        Location::Boundary => "@".into(),
                        Location::Cell(x) => ext.base().cells()[x].clone(),
                    },
                    weight: fmt_rational(w),
                }
            })
            .collect();
        MeasureFile { weights }
    }

    pub fn to_measure(&self, ext: &ExtendedSpace) -> Result<Measure> {
        let base = ext.base();
        let mut w = vec![Rational::zero(); ext.n_atoms()];
        for rec in &self.weights {
            let omega = base
                .atom_index(&rec.atom)
                .ok_or_else(|| Error::InvalidSpace(format!("unknown atom `{}`", rec.atom)))?;
            let loc = match rec.location.as_str() {
                "@" | "∂" => Location::Boundary,
                label => Location::Cell(
                    base.cell_index(label)
                        .ok_or_else(|| Error::UnknownCell(label.to_string()))?,
                ),
            };
            w[ext.index(omega, loc)] += parse_rational(&rec.weight)?;
        }
        Measure::new(ext, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::build_halfer;
    use crate::rational::ratio;
    use crate::scenarios::{self, corpus};

    fn round_trip(sc: &Scenario) {
        let text = ModelFile::from_scenario(sc).to_json();
        let back = ModelFile::from_json(&text).unwrap().to_scenario().unwrap();
        assert_eq!(back.space(), sc.space());
        assert_eq!(back.events, sc.events);
        assert_eq!(back.default_event, sc.default_event);
    }

    #[test]
    fn builtins_round_trip() {
        round_trip(&scenarios::sleeping_beauty());
        round_trip(&scenarios::four_beauties());
        round_trip(&scenarios::hartle_srednicki(3, 1, &ratio(1, 3)).unwrap());
        round_trip(&scenarios::two_zone(1, &ratio(1, 3), &ratio(1, 4), &ratio(1, 2)).unwrap());
        round_trip(&scenarios::sequential(&[ratio(1, 3), ratio(1, 2), ratio(1, 1)], 2).unwrap());
        let opts = corpus::CorpusOptions::default();
        for sc in corpus::corpus(2, 10, &opts) {
            round_trip(&sc);
        }
    }

    #[test]
    fn hand_written_model() {
        let text = r#"{
            "cells": ["1", "2"],
            "atoms": [
                {"label": "H", "weight": "1/2", "occupied": ["1"]},
                {"label": "T", "weight": "0.5", "occupied": ["1", "2"]}
            ],
            "events": {"Heads": "atom=H"}
        }"#;
        let sc = ModelFile::from_json(text).unwrap().to_scenario().unwrap();
        assert_eq!(sc.space(), scenarios::sleeping_beauty().space());
    }

    #[test]
    fn errors_are_reported() {
        assert!(matches!(
            ModelFile::from_json("{\"cells\": [}"),
            Err(Error::Parse { position: 11, .. })
        ));
        let bad_cell = r#"{"cells": ["1"], "atoms": [{"weight": "1", "occupied": ["2"]}]}"#;
        assert_eq!(
            ModelFile::from_json(bad_cell)
                .unwrap()
                .to_scenario()
                .unwrap_err(),
            Error::UnknownCell("2".into())
        );
        let bad_event = r#"{"cells": ["1"], "atoms": [{"weight": "1", "occupied": ["1"]}], "events": {"E": "S=9"}}"#;
        assert!(matches!(
            ModelFile::from_json(bad_event).unwrap().to_scenario(),
            Err(Error::Parse { .. })
        ));
        let bad_sum = r#"{"cells": ["1"], "atoms": [{"weight": "1/2", "occupied": ["1"]}]}"#;
        assert!(matches!(
            ModelFile::from_json(bad_sum).unwrap().to_scenario(),
            Err(Error::InvalidSpace(_))
        ));
    }

    #[test]
    fn measure_file_round_trip() {
        let sb = scenarios::sleeping_beauty();
        let m = build_halfer(&sb.ext).unwrap();
        let text = MeasureFile::from_measure(&sb.ext, &m).to_json();
        let back = MeasureFile::from_json(&text)
            .unwrap()
            .to_measure(&sb.ext)
            .unwrap();
        assert_eq!(back.weights(), m.weights());
    }
}
