//! Dense exact linear algebra on ℚⁿ.

use num_traits::{One, Zero};

use crate::coeffring::Rational;

pub type DVec = Vec<Rational>;
pub type Matrix = Vec<Vec<Rational>>;

pub fn zeros(n: usize) -> DVec {
    vec![Rational::zero(); n]
}

pub fn unit(n: usize, i: usize) -> DVec {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += c·x`.
pub fn axpy(y: &mut [Rational], c: &Rational, x: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in y.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> DVec {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

/// In-place reduced row echelon form; returns the pivot columns.
/// Zero rows are dropped.
pub fn rref(rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Subspace of ℚⁿ held as an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| unit(ambient, i)))
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = DVec>) -> Self {
        let mut rows: Matrix = vectors.into_iter().collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = rref(&mut rows);
        Self {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[DVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, v: &[Rational]) -> DVec {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let f = -out[p].clone();
                axpy(&mut out, &f, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Coordinates of `v` on [`Self::basis`], if `v` lies in the subspace.
    pub fn express(&self, v: &[Rational]) -> Option<DVec> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::span(
            self.ambient,
            self.rows.iter().chain(&other.rows).cloned(),
        )
    }

    /// Image of the subspace under `m` (square, acting on column vectors).
    pub fn image(&self, m: &[Vec<Rational>]) -> Subspace {
        Self::span(self.ambient, self.rows.iter().map(|r| mat_vec(m, r)))
    }
}

/// Basis of `{x : m·x = 0}` for an `rows × ncols` matrix.
pub fn null_space(m: &[Vec<Rational>], ncols: usize) -> Vec<DVec> {
    let mut rows = m.to_vec();
    let pivots = rref(&mut rows);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = zeros(ncols);
        v[free] = Rational::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// Result of solving `A·x = b` exactly.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    /// A particular solution (free variables set to zero).
    Consistent(DVec),
    /// Row weights `y` with `yᵀA = 0` and `yᵀb = 1`.
    Inconsistent(DVec),
}

pub fn solve(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Solution {
    let m = a.len();
    // Augmented [A | b | I] tracks the row combination of each reduced row.
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, bi))| {
            let mut r = row.clone();
            r.push(bi.clone());
            r.extend(unit(m, i));
            r
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = Rational::one() / aug[r][c].clone();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = aug[r].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    if let Some(bad) = aug[r..].iter().find(|row| !row[ncols].is_zero()) {
        let scale = Rational::one() / bad[ncols].clone();
        return Solution::Inconsistent(bad[ncols + 1..].iter().map(|x| x * &scale).collect());
    }
    let mut x = zeros(ncols);
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Solution::Consistent(x)
}
