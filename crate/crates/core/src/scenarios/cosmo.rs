use num::{One, Signed, ToPrimitive, Zero};

use crate::cellset::CellSet;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::space::{Atom, ObjectiveSpace};

use super::{check_budget, Scenario};

/// Parameters of the finite multiverse: `n` candidate constants `θ = i/n`,
/// each realised as a universe with probability `κ/n`, holding `Y_θ`
/// observers with `𝔼Y_θ = m(θ)` and values in `{0..n0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosmoParams {
    pub n: usize,
    pub kappa: Rational,
    /// `m(i/n)` for `i = 0..n`.
    pub m: Vec<Rational>,
    /// Law of `Y_θ` on `{0..n0}`, one row per `θ`.
    pub y_dist: Vec<Vec<Rational>>,
}

impl CosmoParams {
    pub fn new(
        n: usize,
        kappa: Rational,
        m: Vec<Rational>,
        y_dist: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let invalid = |msg: &str| Err(Error::InvalidParams(msg.into()));
        if n == 0 {
            return invalid("need n >= 1");
        }
        if !(kappa > Rational::zero() && kappa < int(n as i64)) {
            return invalid("need 0 < kappa < n");
        }
        if m.len() != n || y_dist.len() != n {
            return invalid("m and the laws of Y need one entry per theta");
        }
        let n0 = y_dist[0].len();
        for (mean, law) in m.iter().zip(&y_dist) {
            if law.len() != n0 || n0 < 2 {
                return invalid("every law of Y must live on the same {0..n0}, n0 >= 1");
            }
            if law.iter().any(|p| p.is_negative()) || !law.iter().sum::<Rational>().is_one() {
                return invalid("every law of Y must be a probability vector");
            }
            let mu: Rational = law.iter().enumerate().map(|(k, p)| p * int(k as i64)).sum();
            if &mu != mean {
                return invalid("the mean of Y_theta must equal m(theta)");
            }
        }
        let p = CosmoParams {
            n,
            kappa,
            m,
            y_dist,
        };
        if p.m_n().is_zero() {
            return invalid("need M_n > 0");
        }
        Ok(p)
    }

    /// `m(t) = intercept + slope t` with `Y_θ` on the two integers around `m(θ)`.
    pub fn linear(
        n: usize,
        kappa: Rational,
        intercept: &Rational,
        slope: &Rational,
        n0: usize,
    ) -> Result<Self> {
        let m: Vec<Rational> = (0..n)
            .map(|i| intercept + slope * Rational::new((i as i64).into(), (n as i64).into()))
            .collect();
        let y_dist = m
            .iter()
            .map(|mean| two_point_law(mean, n0))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, kappa, m, y_dist)
    }

    pub fn n0(&self) -> usize {
        self.y_dist[0].len() - 1
    }

    /// `p_n = κ/n`.
    pub fn p(&self) -> Rational {
        &self.kappa / int(self.n as i64)
    }

    /// `M_n = n⁻¹ Σ_θ m(θ)`.
    pub fn m_n(&self) -> Rational {
        self.m.iter().sum::<Rational>() / int(self.n as i64)
    }

    /// `π^E_n(θ_i) = m(θ_i) / (n M_n)`, which does not involve `κ`.
    pub fn pi_thirder(&self, i: usize) -> Rational {
        &self.m[i] / (int(self.n as i64) * self.m_n())
    }

    pub fn y_dist_f64(&self) -> Vec<Vec<f64>> {
        self.y_dist
            .iter()
            .map(|law| law.iter().map(|p| p.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }
}

/// The law on `{0..n0}` with mean `mean` supported on `⌊mean⌋` and `⌈mean⌉`.
pub fn two_point_law(mean: &Rational, n0: usize) -> Result<Vec<Rational>> {
    if mean.is_negative() || mean > &int(n0 as i64) {
        return Err(Error::InvalidParams(format!(
            "m(theta) must lie in [0, {n0}]"
        )));
    }
    let lo = mean.floor();
    let frac = mean - &lo;
    let k = lo.to_integer().to_usize().expect("bounded by n0");
    let mut law = vec![Rational::zero(); n0 + 1];
    law[k] = Rational::one() - &frac;
    if !frac.is_zero() {
        law[k + 1] = frac;
    }
    Ok(law)
}

/// Exact model over `K = Θ × {0..n0}`; cell `t<i>:<k>` has colour `t<i>`.
///
/// Atom labels list `u<U>y<Y>` per universe, e.g. `u1y2,u0y1`; event `theta<i>`
/// is `ZS=t<i>`.
pub fn cosmo_constant(params: &CosmoParams) -> Result<Scenario> {
    let n = params.n;
    let n0 = params.n0();
    let p = params.p();
    let q = Rational::one() - &p;

    // States of one universe: (U, Y, probability), zero-probability states dropped.
    let states: Vec<Vec<(u32, usize, Rational)>> = params
        .y_dist
        .iter()
        .map(|law| {
            let mut s = Vec::new();
            for (u, pu) in [(0, &q), (1, &p)] {
                for (y, py) in law.iter().enumerate() {
                    if !py.is_zero() {
                        s.push((u, y, pu * py));
                    }
                }
            }
            s
        })
        .collect();
    let total = states
        .iter()
        .try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128))
        .unwrap_or(u128::MAX);
    check_budget(total)?;

    let width = n0 + 1;
    let cells: Vec<String> = (0..n)
        .flat_map(|i| (0..width).map(move |k| format!("t{i}:{k}")))
        .collect();
    let colours: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
    let cell_colours: Vec<u32> = (0..n * width).map(|c| (c / width) as u32).collect();

    let mut atoms = Vec::with_capacity(total as usize);
    let mut idx = vec![0usize; n];
    loop {
        let mut weight = Rational::one();
        let mut occ = CellSet::empty(n * width);
        let mut label = Vec::with_capacity(n);
        for (t, &j) in idx.iter().enumerate() {
            let (u, y, w) = &states[t][j];
            weight *= w;
            if *u == 1 {
                for k in 1..=*y {
                    occ.insert(t * width + k);
                }
            }
            label.push(format!("u{u}y{y}"));
        }
        atoms.push(Atom::new(label.join(","), weight, occ).with_colours(cell_colours.clone()));

        let mut t = n;
        loop {
            if t == 0 {
                let space = ObjectiveSpace::new(cells, colours, atoms)?;
                let mut sc = Scenario::new("cosmo", space).with_default_event("theta0");
                for i in 0..n {
                    sc = sc.with_event(format!("theta{i}"), format!("ZS=t{i}"));
                }
                return Ok(sc);
            }
            t -= 1;
            idx[t] += 1;
            if idx[t] < states[t].len() {
                break;
            }
            idx[t] = 0;
        }
    }
}
