//! Samplers of the objective experiment for the models too large to enumerate.

use rand::Rng;
use rand_distr::{Binomial, Distribution, Geometric};

use crate::error::{Error, Result};
use crate::extended::{Event, ExtendedSpace};
use crate::rational::to_f64;
use crate::space::ObjectiveSpace;

/// What an estimator needs from a draw: `X` and the colour counts `L_y`.
pub trait Outcome {
    fn occupancy(&self) -> u64;
    fn colour_count(&self, colour: u32) -> u64;
}

pub trait ObjectiveSampler: Sync {
    type Outcome: Outcome;

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Outcome;
}

fn probability(p: f64) -> Result<f64> {
    if p > 0.0 && p < 1.0 {
        Ok(p)
    } else {
        Err(Error::InvalidParams(format!(
            "probability {p} must lie in (0, 1)"
        )))
    }
}

/// Draws atoms of a finite space by inverting the cumulative weights.
#[derive(Clone, Debug)]
pub struct AtomSampler {
    cumulative: Vec<f64>,
    occupancy: Vec<u64>,
    counts: Vec<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AtomDraw<'a> {
    pub index: usize,
    occupancy: u64,
    counts: &'a [u64],
}

impl Outcome for AtomDraw<'_> {
    fn occupancy(&self) -> u64 {
        self.occupancy
    }

    fn colour_count(&self, colour: u32) -> u64 {
        self.counts.get(colour as usize).copied().unwrap_or(0)
    }
}

impl AtomSampler {
    pub fn new(space: &ObjectiveSpace) -> Self {
        let mut acc = 0.0;
        let cumulative = space
            .atoms()
            .iter()
            .map(|a| {
                acc += to_f64(&a.weight);
                acc
            })
            .collect();
        let n_colours = space.colours().len() as u32;
        AtomSampler {
            cumulative,
            occupancy: space.atoms().iter().map(|a| a.occupancy() as u64).collect(),
            counts: space
                .atoms()
                .iter()
                .map(|a| (0..n_colours).map(|c| a.colour_count(c) as u64).collect())
                .collect(),
        }
    }

    /// Membership of each atom in an objective event, for use as a predicate.
    pub fn indicator(ext: &ExtendedSpace, event: &Event) -> Result<Vec<bool>> {
        let mut inside = vec![false; ext.n_objective()];
        for o in ext.objective_atoms(event)? {
            inside[o] = true;
        }
        Ok(inside)
    }
}

impl<'s> ObjectiveSampler for &'s AtomSampler {
    type Outcome = AtomDraw<'s>;

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> AtomDraw<'s> {
        let total = *self.cumulative.last().expect("nonempty space");
        let u = rng.random::<f64>() * total;
        let index = self
            .cumulative
            .partition_point(|&c| c <= u)
            .min(self.cumulative.len() - 1);
        AtomDraw {
            index,
            occupancy: self.occupancy[index],
            counts: &self.counts[index],
        }
    }
}

/// The two-hypothesis cycle model: colour 0 is red, colour 1 blue.
#[derive(Clone, Debug)]
pub struct HartleSrednickiSampler {
    all_red: Binomial,
    red: Binomial,
    blue: Binomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleDraw {
    /// `U = SR`.
    pub some_red: bool,
    pub red: u64,
    pub blue: u64,
}

impl Outcome for CycleDraw {
    fn occupancy(&self) -> u64 {
        self.red + self.blue
    }

    fn colour_count(&self, colour: u32) -> u64 {
        match colour {
            0 => self.red,
            1 => self.blue,
            _ => 0,
        }
    }
}

impl HartleSrednickiSampler {
    pub fn new(n: u64, m: u64, p: f64) -> Result<Self> {
        if m < 1 || m >= n {
            return Err(Error::InvalidParams(format!(
                "need 1 <= M <= N - 1, got N = {n}, M = {m}"
            )));
        }
        let p = probability(p)?;
        let bin = |k| Binomial::new(k, p).map_err(|e| Error::InvalidParams(e.to_string()));
        Ok(HartleSrednickiSampler {
            all_red: bin(n)?,
            red: bin(m)?,
            blue: bin(n - m)?,
        })
    }
}

impl ObjectiveSampler for HartleSrednickiSampler {
    type Outcome = CycleDraw;

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> CycleDraw {
        if rng.random::<bool>() {
            CycleDraw {
                some_red: true,
                red: self.red.sample(rng),
                blue: self.blue.sample(rng),
            }
        } else {
            CycleDraw {
                some_red: false,
                red: self.all_red.sample(rng),
                blue: 0,
            }
        }
    }
}

/// Two zones of `M` sites: colour 0 is the negative zone, colour 1 the
/// positive one.
#[derive(Clone, Debug)]
pub struct TwoZoneSampler {
    zone0: Binomial,
    zone1: [Binomial; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZoneDraw {
    /// `W = 1`, so positive-zone sites use `p2`.
    pub w: bool,
    pub x0: u64,
    pub x1: u64,
}

impl Outcome for ZoneDraw {
    fn occupancy(&self) -> u64 {
        self.x0 + self.x1
    }

    fn colour_count(&self, colour: u32) -> u64 {
        match colour {
            0 => self.x0,
            1 => self.x1,
            _ => 0,
        }
    }
}

impl TwoZoneSampler {
    pub fn new(m: u64, p0: f64, p1: f64, p2: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("need M >= 1".into()));
        }
        let bin = |p: f64| {
            Binomial::new(m, probability(p)?).map_err(|e| Error::InvalidParams(e.to_string()))
        };
        Ok(TwoZoneSampler {
            zone0: bin(p0)?,
            zone1: [bin(p1)?, bin(p2)?],
        })
    }
}

impl ObjectiveSampler for TwoZoneSampler {
    type Outcome = ZoneDraw;

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ZoneDraw {
        let w = rng.random::<bool>();
        ZoneDraw {
            w,
            x0: self.zone0.sample(rng),
            x1: self.zone1[usize::from(w)].sample(rng),
        }
    }
}

/// The multiverse of candidate constants, tracking one target constant.
/// Universes are visited by geometric skipping, so a draw costs about `κ`
/// steps rather than `n`.
#[derive(Clone, Debug)]
pub struct CosmoSampler {
    n: u64,
    target: u64,
    gap: Geometric,
    /// Cumulative law of `Y_θ` per constant.
    y_cumulative: Vec<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiverseDraw {
    pub x: u64,
    /// `L_θ = U_θ Y_θ` for the target constant.
    pub target_count: u64,
}

impl Outcome for MultiverseDraw {
    fn occupancy(&self) -> u64 {
        self.x
    }

    /// Colour 0 is the target constant; other colours are not tracked.
    fn colour_count(&self, colour: u32) -> u64 {
        if colour == 0 {
            self.target_count
        } else {
            0
        }
    }
}

impl CosmoSampler {
    pub fn new(kappa: f64, y_dist: &[Vec<f64>], target: usize) -> Result<Self> {
        let n = y_dist.len();
        if target >= n {
            return Err(Error::InvalidParams(format!(
                "target {target} outside 0..{n}"
            )));
        }
        let p = probability(kappa / n as f64)?;
        let gap = Geometric::new(p).map_err(|e| Error::InvalidParams(e.to_string()))?;
        let y_cumulative = y_dist
            .iter()
            .map(|law| {
                let mut acc = 0.0;
                law.iter()
                    .map(|q| {
                        acc += q;
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(CosmoSampler {
            n: n as u64,
            target: target as u64,
            gap,
            y_cumulative,
        })
    }
}

impl ObjectiveSampler for CosmoSampler {
    type Outcome = MultiverseDraw;

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> MultiverseDraw {
        let mut draw = MultiverseDraw {
            x: 0,
            target_count: 0,
        };
        let mut pos = self.gap.sample(rng);
        while pos < self.n {
            let law = &self.y_cumulative[pos as usize];
            let u = rng.random::<f64>() * law[law.len() - 1];
            let y = law.partition_point(|&c| c <= u).min(law.len() - 1) as u64;
            draw.x += y;
            if pos == self.target {
                draw.target_count = y;
            }
            pos = pos.saturating_add(1).saturating_add(self.gap.sample(rng));
        }
        draw
    }
}
