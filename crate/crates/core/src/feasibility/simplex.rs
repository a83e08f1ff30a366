//! Exact two-phase simplex with Bland's rule for `max c·y, G y ≤ h, y ≥ 0`.

use num::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lp {
    Infeasible,
    Unbounded,
    Optimal(Vec<Rational>),
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = col;
    }

    /// Maximises `cost` over the current basic feasible solution's polytope.
    /// Returns false when unbounded.
    fn optimise(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.width).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    if !row[j].is_zero() {
                        r -= &cost[self.basis[i]] * &row[j];
                    }
                }
                r.is_positive()
            });
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((k, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, col);
        }
    }
}

pub fn lp_max(g: &[Vec<Rational>], h: &[Rational], c: &[Rational]) -> Lp {
    let m = g.len();
    let d = c.len();
    let negative: Vec<usize> = (0..m).filter(|&i| h[i].is_negative()).collect();
    let width = d + m + negative.len();
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = d + m;
    for i in 0..m {
        let mut row = vec![Rational::zero(); width + 1];
        let sign = if h[i].is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        };
        for j in 0..d {
            row[j] = &sign * &g[i][j];
        }
        row[d + i] = sign.clone();
        row[width] = &sign * &h[i];
        if h[i].is_negative() {
            row[next_art] = Rational::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(d + i);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, width };

    if !negative.is_empty() {
        let mut cost = vec![Rational::zero(); width];
        for v in cost.iter_mut().skip(d + m) {
            *v = -Rational::one();
        }
        t.optimise(&cost, &vec![true; width]);
        let infeasible = t
            .basis
            .iter()
            .enumerate()
            .any(|(i, &b)| b >= d + m && !t.rhs(i).is_zero());
        if infeasible {
            return Lp::Infeasible;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= d + m {
                match (0..d + m).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut cost = vec![Rational::zero(); width];
    cost[..d].clone_from_slice(c);
    let allowed: Vec<bool> = (0..width).map(|j| j < d + m).collect();
    if !t.optimise(&cost, &allowed) {
        return Lp::Unbounded;
    }
    let mut y = vec![Rational::zero(); d];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < d {
            y[b] = t.rhs(i).clone();
        }
    }
    Lp::Optimal(y)
}
