//! Exact sparse Gauss–Jordan elimination.

use std::collections::BTreeSet;

use num::Zero;

use crate::rational::Rational;

/// `Σ coeffs[i].1 · x[coeffs[i].0] = rhs`, sorted by variable, no zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

impl Row {
    /// Builds a row, merging repeated variables and dropping zeros.
    pub fn new(mut coeffs: Vec<(usize, Rational)>, rhs: Rational) -> Self {
        coeffs.sort_by_key(|(j, _)| *j);
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(coeffs.len());
        for (j, c) in coeffs {
            match merged.last_mut() {
                Some((k, acc)) if *k == j => *acc += c,
                _ => merged.push((j, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Row {
            coeffs: merged,
            rhs,
        }
    }

    pub fn coeff(&self, var: usize) -> Rational {
        self.coeffs
            .binary_search_by_key(&var, |(j, _)| *j)
            .map_or_else(|_| Rational::zero(), |i| self.coeffs[i].1.clone())
    }

    pub fn dot(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().map(|(j, c)| c * &x[*j]).sum()
    }

    /// `self - factor * other`.
    fn minus_scaled(&self, factor: &Rational, other: &Row) -> Row {
        let mut out = Vec::with_capacity(self.coeffs.len() + other.coeffs.len());
        let (mut a, mut b) = (
            self.coeffs.iter().peekable(),
            other.coeffs.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) if i == j => {
                    let v = x - factor * y;
                    if !v.is_zero() {
                        out.push((*i, v));
                    }
                    a.next();
                    b.next();
                }
                (Some((i, x)), Some((j, _))) if i < j => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (_, Some((j, y))) => {
                    out.push((*j, -(factor * y)));
                    b.next();
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, None) => break,
            }
        }
        Row {
            coeffs: out,
            rhs: &self.rhs - factor * &other.rhs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inconsistent;

/// A system kept in reduced row echelon form as equations are added: each
/// stored row has pivot coefficient 1 and no other row mentions its pivot.
#[derive(Clone, Debug)]
pub struct Rref {
    n: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
    /// Rows mentioning each variable.
    occurs: Vec<BTreeSet<usize>>,
}

impl Rref {
    pub fn new(n: usize) -> Self {
        Rref {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; n],
            occurs: vec![BTreeSet::new(); n],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, var: usize) -> bool {
        self.pivot_row[var].is_some()
    }

    pub fn free_vars(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| !self.is_pivot(j)).collect()
    }

    /// `(pivot, row)` pairs; the row reads `x_pivot + Σ_free a_f x_f = rhs`.
    pub fn pivot_rows(&self) -> impl Iterator<Item = (usize, &Row)> {
        self.pivots.iter().copied().zip(&self.rows)
    }

    /// Reduces `row` against the stored pivots.
    pub fn reduce(&self, row: &Row) -> Row {
        let mut out = row.clone();
        for (j, c) in &row.coeffs {
            if let Some(r) = self.pivot_row[*j] {
                out = out.minus_scaled(c, &self.rows[r]);
            }
        }
        out
    }

    /// Adds an equation. Returns whether it was independent of the stored ones.
    pub fn add(&mut self, row: Row) -> Result<bool, Inconsistent> {
        let row = self.reduce(&row);
        if row.coeffs.is_empty() {
            return if row.rhs.is_zero() {
                Ok(false)
            } else {
                Err(Inconsistent)
            };
        }
        // Pivot on the variable shared with the fewest stored rows.
        let (pivot, coef) = row
            .coeffs
            .iter()
            .min_by_key(|(j, _)| (self.occurs[*j].len(), *j))
            .cloned()
            .expect("nonempty row");
        let row = Row {
            coeffs: row.coeffs.iter().map(|(j, c)| (*j, c / &coef)).collect(),
            rhs: &row.rhs / &coef,
        };
        let new_index = self.rows.len();
        for r in std::mem::take(&mut self.occurs[pivot]) {
            let old = &self.rows[r];
            let factor = old.coeff(pivot);
            let updated = old.minus_scaled(&factor, &row);
            for (j, _) in &old.coeffs {
                self.occurs[*j].remove(&r);
            }
            for (j, _) in &updated.coeffs {
                self.occurs[*j].insert(r);
            }
            self.rows[r] = updated;
        }
        for (j, _) in &row.coeffs {
            self.occurs[*j].insert(new_index);
        }
        self.rows.push(row);
        self.pivots.push(pivot);
        self.pivot_row[pivot] = Some(new_index);
        Ok(true)
    }

    /// The point with every free variable set to `free_values[f]`.
    pub fn complete(&self, free_values: &[Rational]) -> Vec<Rational> {
        let mut x = free_values.to_vec();
        for (p, row) in self.pivot_rows() {
            let mut v = row.rhs.clone();
            for (j, c) in &row.coeffs {
                if *j != p {
                    v -= c * &free_values[*j];
                }
            }
            x[p] = v;
        }
        x
    }

    /// A basis of `{v : A v = 0}`, one vector per free variable.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.free_vars()
            .into_iter()
            .map(|f| {
                let mut v = vec![Rational::zero(); self.n];
                v[f] = Rational::from_integer(1.into());
                for (p, row) in self.pivot_rows() {
                    v[p] = -row.coeff(f);
                }
                v
            })
            .collect()
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.rows.iter().all(|r| r.dot(x) == r.rhs)
    }

    /// Whether `v` is a direction of the solution set: `A v = 0`.
    pub fn annihilates(&self, v: &[Rational]) -> bool {
        self.rows.iter().all(|r| r.dot(v).is_zero())
    }
}
