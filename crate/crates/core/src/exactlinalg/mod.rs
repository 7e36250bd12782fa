//! Exact linear algebra over ℚ.
//!
//! Vector fields are coordinatized as sparse vectors keyed by
//! `(component, monomial)`; [`EchelonBasis`] keeps their span in reduced row
//! echelon form. Small dense computations in structure-constant coordinates
//! live in [`dense`].

pub mod dense;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::coeffring::{ExpMonomial, ExpPoly, Rational};
use crate::error::{Error, Result};
use crate::vectorfield::{VariableContext, VectorField};

/// Coordinate key of a vector field: component index and monomial.
pub type FieldKey = (usize, ExpMonomial);

/// Sparse vector with no zero entries, ordered by key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<K: Ord> {
    entries: BTreeMap<K, Rational>,
}

/// Coordinatization of a vector field.
pub type CoordVector = SparseVec<FieldKey>;

impl<K: Ord> Default for SparseVec<K> {
    fn default() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (K, Rational)>) -> Self {
        let mut out = Self::new();
        for (k, v) in entries {
            out.add_at(k, v);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&Rational> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.entries.iter()
    }

    /// Smallest key with its coefficient.
    pub fn leading(&self) -> Option<(&K, &Rational)> {
        self.entries.iter().next()
    }

    fn add_at(&mut self, key: K, value: Rational) {
        if value.is_zero() {
            return;
        }
        let slot = self.entries.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    /// `self += c·other`.
    pub fn axpy(&mut self, c: &Rational, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.entries {
            let slot = self.entries.entry(k.clone()).or_insert_with(Rational::zero);
            *slot += c * v;
            if slot.is_zero() {
                self.entries.remove(k);
            }
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self {
            entries: self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }
}

/// Outcome of inserting a vector into an [`EchelonBasis`].
#[derive(Clone, Debug, PartialEq)]
pub struct Insertion<K: Ord> {
    pub was_independent: bool,
    /// The vector reduced against the previous rows; zero iff dependent.
    pub residual: SparseVec<K>,
}

/// Reduced row echelon basis of a subspace: leading coefficients are 1,
/// pivots strictly increase, and each pivot column is zero in all other rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis<K: Ord> {
    rows: Vec<SparseVec<K>>,
}

impl<K: Ord> Default for EchelonBasis<K> {
    fn default() -> Self {
        Self { rows: Vec::new() }
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec<K>] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.iter().map(|r| r.leading().unwrap().0)
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut out = v.clone();
        for row in &self.rows {
            let pivot = row.leading().unwrap().0;
            if let Some(c) = out.get(pivot).cloned() {
                out.axpy(&-c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn insert(&mut self, v: &SparseVec<K>) -> Insertion<K> {
        let residual = self.reduce(v);
        if residual.is_zero() {
            return Insertion {
                was_independent: false,
                residual,
            };
        }
        let (pivot, lead) = residual.leading().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let row = residual.scaled(&(Rational::one() / lead));
        for other in &mut self.rows {
            if let Some(c) = other.get(&pivot).cloned() {
                other.axpy(&-c, &row);
            }
        }
        let at = self
            .rows
            .partition_point(|r| r.leading().unwrap().0 < &pivot);
        self.rows.insert(at, row);
        Insertion {
            was_independent: true,
            residual,
        }
    }

    /// Coefficients `c` with `Σ c_i·rows[i] = v`.
    pub fn express(&self, v: &SparseVec<K>) -> Result<Vec<Rational>> {
        let coeffs: Vec<Rational> = self
            .rows
            .iter()
            .map(|r| v.get(r.leading().unwrap().0).cloned().unwrap_or_else(Rational::zero))
            .collect();
        let mut check = v.clone();
        for (c, r) in coeffs.iter().zip(&self.rows) {
            check.axpy(&-c.clone(), r);
        }
        if check.is_zero() {
            Ok(coeffs)
        } else {
            Err(Error::NotInSpan)
        }
    }
}

/// Linear coordinates of a field on the `(component, monomial)` basis.
pub fn coordinatize(v: &VectorField) -> CoordVector {
    let mut entries = BTreeMap::new();
    for (i, comp) in v.components().iter().enumerate() {
        for (m, c) in comp.terms() {
            entries.insert((i, m.clone()), c.clone());
        }
    }
    SparseVec { entries }
}

/// Inverse of [`coordinatize`].
pub fn decoordinatize(ctx: &VariableContext, v: &CoordVector) -> VectorField {
    let mut comps = vec![Vec::new(); ctx.len()];
    for ((i, m), c) in v.iter() {
        comps[*i].push((m.clone(), c.clone()));
    }
    VectorField::from_components_unchecked(
        ctx.clone(),
        comps.into_iter().map(ExpPoly::from_terms).collect(),
    )
}

/// Reduced echelon basis of the span of `fields`, as fields ordered by pivot.
pub fn canonical_span(ctx: &VariableContext, fields: &[VectorField]) -> Vec<VectorField> {
    let mut basis = EchelonBasis::new();
    for f in fields {
        basis.insert(&coordinatize(f));
    }
    basis.rows().iter().map(|r| decoordinatize(ctx, r)).collect()
}

fn determinant(m: &[Vec<&ExpPoly>]) -> ExpPoly {
    match m.len() {
        0 => ExpPoly::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].mul(m[1][1]).sub(&m[0][1].mul(m[1][0])),
        n => {
            let mut out = ExpPoly::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<&ExpPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, e)| *e)
                            .collect()
                    })
                    .collect();
                let term = m[0][col].mul(&determinant(&minor));
                out = if col % 2 == 0 { out.add(&term) } else { out.sub(&term) };
            }
            out
        }
    }
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            if rec(i + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f)
}

/// Generic rank of a family of fields: the largest `k` such that some `k×k`
/// minor of the coefficient matrix (rows = fields, columns = variables) is a
/// nonzero ring element.
///
/// Over the analytic coefficient ring this equals the maximal pointwise rank,
/// which is attained on a dense open set. Sizes are tried from the largest
/// down, stopping at the first nonzero minor.
pub fn generic_rank(fields: &[VectorField]) -> usize {
    // Rows that are zero never contribute to a nonzero minor.
    let rows: Vec<&VectorField> = fields.iter().filter(|f| !f.is_zero()).collect();
    let Some(first) = rows.first() else {
        return 0;
    };
    let n = first.ctx().len();
    for k in (1..=rows.len().min(n)).rev() {
        let found = for_each_subset(rows.len(), k, &mut |rs| {
            for_each_subset(n, k, &mut |cs| {
                let m: Vec<Vec<&ExpPoly>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| rows[r].component(c)).collect())
                    .collect();
                !determinant(&m).is_zero()
            })
        });
        if found {
            return k;
        }
    }
    0
}
