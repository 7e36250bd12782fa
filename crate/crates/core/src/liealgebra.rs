//! Finite-dimensional Lie algebras of vector fields: bracket closure,
//! structure constants, center, series, projections and quotients.

use num_traits::Zero;

use crate::coeffring::{Rational, DEFAULT_DEGREE_CAP, MAX_VARS};
use crate::error::{CapKind, Error, Result};
use crate::exactlinalg::dense::{self, DVec, Matrix, Subspace};
use crate::exactlinalg::{canonical_span, coordinatize, decoordinatize, generic_rank, EchelonBasis, FieldKey};
use crate::vectorfield::{VariableContext, VectorField};

pub const DEFAULT_CAP_DIM: usize = 64;
pub const DEFAULT_CAP_ROUNDS: usize = 32;

/// Limits for [`close`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub dim: usize,
    pub rounds: usize,
    pub degree: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            dim: DEFAULT_CAP_DIM,
            rounds: DEFAULT_CAP_ROUNDS,
            degree: DEFAULT_DEGREE_CAP,
        }
    }
}

/// Sparse structure constants: `table[i][j]` lists `(k, c)` with
/// `[e_i, e_j] = Σ c·e_k`.
pub type StructureTable = Vec<Vec<Vec<(usize, Rational)>>>;

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    ctx: VariableContext,
    basis: Vec<VectorField>,
    echelon: EchelonBasis<FieldKey>,
    structure: StructureTable,
    degree_cap: u32,
}

fn closure_error(e: Error, caps: &Caps, dim: usize, rounds: usize) -> Error {
    match e {
        Error::DegreeCapExceeded { .. } => Error::ClosureCapExceeded {
            kind: CapKind::Degree,
            limit: caps.degree as u64,
            dim,
            rounds,
        },
        other => other,
    }
}

/// Lie closure of a nonempty generating set.
pub fn close(generators: &[VectorField], caps: Caps) -> Result<LieAlgebra> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    close_in(first.ctx(), generators, caps)
}

/// Lie closure inside `ctx`; an empty generating set gives the zero algebra.
pub fn close_in(ctx: &VariableContext, generators: &[VectorField], caps: Caps) -> Result<LieAlgebra> {
    for g in generators {
        ctx.ensure_same(g.ctx())?;
    }
    let mut span: Vec<VectorField> = Vec::new();
    let mut echelon = EchelonBasis::new();
    let mut rounds = 0usize;

    let mut push = |v: VectorField, span: &mut Vec<VectorField>, rounds: usize| -> Result<()> {
        if echelon.insert(&coordinatize(&v)).was_independent {
            span.push(v);
            if span.len() > caps.dim {
                return Err(Error::ClosureCapExceeded {
                    kind: CapKind::Dimension,
                    limit: caps.dim as u64,
                    dim: span.len(),
                    rounds,
                });
            }
        }
        Ok(())
    };

    for g in generators {
        push(g.clone(), &mut span, 0)?;
    }
    let mut frontier = 0;
    while frontier < span.len() {
        rounds += 1;
        if rounds > caps.rounds {
            return Err(Error::ClosureCapExceeded {
                kind: CapKind::Rounds,
                limit: caps.rounds as u64,
                dim: span.len(),
                rounds: rounds - 1,
            });
        }
        let n = span.len();
        for j in frontier..n {
            for i in 0..j {
                let b = span[i]
                    .bracket_capped(&span[j], caps.degree)
                    .map_err(|e| closure_error(e, &caps, span.len(), rounds))?;
                push(b, &mut span, rounds)?;
            }
        }
        frontier = n;
    }

    let basis: Vec<VectorField> = echelon.rows().iter().map(|r| decoordinatize(ctx, r)).collect();
    let n = basis.len();
    let mut structure: StructureTable = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let b = basis[i]
                .bracket_capped(&basis[j], caps.degree)
                .map_err(|e| closure_error(e, &caps, n, rounds))?;
            let coeffs = echelon.express(&coordinatize(&b)).map_err(|_| {
                Error::InvariantViolated(format!("bracket of basis elements {i} and {j} left the span"))
            })?;
            let entries: Vec<(usize, Rational)> = coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            structure[j][i] = entries.iter().map(|(k, c)| (*k, -c.clone())).collect();
            structure[i][j] = entries;
        }
    }
    Ok(LieAlgebra {
        ctx: ctx.clone(),
        basis,
        echelon,
        structure,
        degree_cap: caps.degree,
    })
}

/// Which series [`LieAlgebra::series`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// Dimensions of a series until it stabilizes.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    /// Strictly decreasing; the stable value appears once.
    pub dims: Vec<usize>,
    pub terminated_at_zero: bool,
}

/// Result of [`LieAlgebra::project`].
#[derive(Clone, Debug)]
pub struct Projection {
    pub kept: Vec<usize>,
    pub image: LieAlgebra,
    /// Canonical basis of the kernel, as fields of the source algebra.
    pub kernel_basis: Vec<VectorField>,
    /// The kernel in the source algebra's basis coordinates.
    pub kernel: Subspace,
}

impl Projection {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.dim()
    }
}

/// Structure of `L / I` on the cosets of a complementary set of basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientStructure {
    /// Source basis indices whose cosets form the quotient basis.
    pub complement: Vec<usize>,
    /// Indexed by position in `complement`.
    pub structure: StructureTable,
}

impl QuotientStructure {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// `[ē_i, ē_j]` in quotient coordinates.
    pub fn bracket(&self, a: &[Rational], b: &[Rational]) -> DVec {
        bracket_with(&self.structure, a, b)
    }
}

fn bracket_with(structure: &StructureTable, a: &[Rational], b: &[Rational]) -> DVec {
    let mut out = dense::zeros(a.len());
    for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let w = ai * bj;
            for (k, c) in &structure[i][j] {
                out[*k] += &w * c;
            }
        }
    }
    out
}

impl LieAlgebra {
    pub fn zero(ctx: &VariableContext) -> Self {
        close_in(ctx, &[], Caps::default()).expect("the zero algebra always closes")
    }

    pub fn ctx(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[VectorField] {
        &self.basis
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn structure(&self) -> &StructureTable {
        &self.structure
    }

    /// Nonzero constants `(i, j, k, c)` with `i < j`.
    pub fn structure_triples(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                for (k, c) in &self.structure[i][j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    /// Coordinates of `v` in the basis.
    pub fn express(&self, v: &VectorField) -> Result<DVec> {
        self.ctx.ensure_same(v.ctx())?;
        self.echelon.express(&coordinatize(v))
    }

    pub fn contains(&self, v: &VectorField) -> bool {
        self.ctx == *v.ctx() && self.echelon.contains(&coordinatize(v))
    }

    /// The field with the given basis coordinates.
    pub fn element(&self, coords: &[Rational]) -> VectorField {
        let mut out = VectorField::zero(&self.ctx);
        for (c, e) in coords.iter().zip(&self.basis) {
            out.add_scaled(c, e);
        }
        out
    }

    /// Subspace spanned by fields of the algebra, in basis coordinates.
    pub fn subspace_of(&self, fields: &[VectorField]) -> Result<Subspace> {
        let rows = fields.iter().map(|f| self.express(f)).collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(self.dim(), rows))
    }

    /// Fields spanning a coordinate subspace, in canonical echelon form.
    pub fn fields_of(&self, s: &Subspace) -> Vec<VectorField> {
        let fields: Vec<VectorField> = s.basis().iter().map(|v| self.element(v)).collect();
        canonical_span(&self.ctx, &fields)
    }

    /// Bracket in basis coordinates.
    pub fn bracket_coords(&self, a: &[Rational], b: &[Rational]) -> DVec {
        bracket_with(&self.structure, a, b)
    }

    /// Matrix of `ad(v)`; column `j` is `[v, e_j]`.
    pub fn adjoint_matrix(&self, v: &VectorField) -> Result<Matrix> {
        Ok(self.adjoint_of_coords(&self.express(v)?))
    }

    pub fn adjoint_of_coords(&self, c: &[Rational]) -> Matrix {
        let n = self.dim();
        let mut m = vec![dense::zeros(n); n];
        for (i, ci) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for j in 0..n {
                for (k, s) in &self.structure[i][j] {
                    m[*k][j] += ci * s;
                }
            }
        }
        m
    }

    /// The center in basis coordinates: the common null space of all `ad(e_i)`.
    pub fn center_subspace(&self) -> Subspace {
        let n = self.dim();
        let mut stacked = Vec::new();
        for i in 0..n {
            stacked.extend(self.adjoint_of_coords(&dense::unit(n, i)));
        }
        Subspace::span(n, dense::null_space(&stacked, n))
    }

    /// Canonical basis of the center.
    pub fn center(&self) -> Vec<VectorField> {
        self.fields_of(&self.center_subspace())
    }

    /// `[A, B]` for coordinate subspaces.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for u in a.basis() {
            for v in b.basis() {
                rows.push(self.bracket_coords(u, v));
            }
        }
        Subspace::span(self.dim(), rows)
    }

    /// Terms of the series until stabilization, starting at the whole algebra.
    pub fn series_terms(&self, kind: SeriesKind) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        let mut terms = vec![full.clone()];
        loop {
            let last = terms.last().unwrap();
            if last.dim() == 0 {
                break;
            }
            let next = match kind {
                SeriesKind::LowerCentral => self.bracket_subspaces(&full, last),
                SeriesKind::Derived => self.bracket_subspaces(last, last),
            };
            if next.dim() == last.dim() {
                break;
            }
            terms.push(next);
        }
        terms
    }

    pub fn series(&self, kind: SeriesKind) -> SeriesReport {
        let dims: Vec<usize> = self.series_terms(kind).iter().map(Subspace::dim).collect();
        SeriesReport {
            kind,
            terminated_at_zero: dims.last() == Some(&0),
            dims,
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().flatten().all(Vec::is_empty)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.series(SeriesKind::LowerCentral).terminated_at_zero
    }

    pub fn is_solvable(&self) -> bool {
        self.series(SeriesKind::Derived).terminated_at_zero
    }

    pub fn generic_rank(&self) -> usize {
        generic_rank(&self.basis)
    }

    /// Whether `[L, s] ⊆ s`.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let full = Subspace::full(self.dim());
        s.contains_subspace(&self.bracket_subspaces(&full, s))
    }

    pub fn is_abelian_subspace(&self, s: &Subspace) -> bool {
        self.bracket_subspaces(s, s).dim() == 0
    }

    /// Drops the variables not in `kept`, provided the kept components never
    /// depend on dropped variables.
    pub fn project(&self, kept: &[usize]) -> Result<Projection> {
        let n = self.ctx.len();
        let mut kept_sorted = kept.to_vec();
        kept_sorted.sort_unstable();
        kept_sorted.dedup();
        if kept_sorted.is_empty() || kept_sorted.len() != kept.len() || kept_sorted.iter().any(|&k| k >= n) {
            return Err(Error::InvalidVariableSubset(format!(
                "{kept:?} is not a nonempty set of distinct variable positions below {n}"
            )));
        }
        let dropped: Vec<usize> = (0..n).filter(|i| !kept_sorted.contains(i)).collect();
        for (e, field) in self.basis.iter().enumerate() {
            for &k in &kept_sorted {
                if let Some(&d) = dropped.iter().find(|&&d| field.component(k).depends_on(d)) {
                    return Err(Error::ProjectionHypothesisViolated {
                        element: e,
                        component: self.ctx.name(k).to_string(),
                        variable: self.ctx.name(d).to_string(),
                    });
                }
            }
        }

        let mut mapping = [None; MAX_VARS];
        for (new, &old) in kept_sorted.iter().enumerate() {
            mapping[old] = Some(new);
        }
        let sub_ctx = self.ctx.restrict(&kept_sorted);
        let images: Vec<VectorField> = self
            .basis
            .iter()
            .map(|f| {
                VectorField::from_components_unchecked(
                    sub_ctx.clone(),
                    kept_sorted.iter().map(|&k| f.component(k).remap(&mapping)).collect(),
                )
            })
            .collect();
        let caps = Caps {
            dim: self.dim().max(1),
            rounds: DEFAULT_CAP_ROUNDS,
            degree: self.degree_cap,
        };
        let image = close_in(&sub_ctx, &images, caps)?;

        // Column j is the image of e_j in the image basis.
        let mut matrix = vec![dense::zeros(self.dim()); image.dim()];
        for (j, f) in images.iter().enumerate() {
            let c = image.express(f)?;
            for (k, ck) in c.into_iter().enumerate() {
                matrix[k][j] = ck;
            }
        }
        let kernel = Subspace::span(self.dim(), dense::null_space(&matrix, self.dim()));
        Ok(Projection {
            kept: kept_sorted,
            kernel_basis: self.fields_of(&kernel),
            image,
            kernel,
        })
    }

    pub fn quotient_structure(&self, ideal: &Subspace) -> Result<QuotientStructure> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal(
                "the bracket of the algebra with the subspace leaves the subspace".into(),
            ));
        }
        let n = self.dim();
        let complement: Vec<usize> = (0..n).filter(|i| !ideal.pivots().contains(i)).collect();
        let m = complement.len();
        let mut structure: StructureTable = vec![vec![Vec::new(); m]; m];
        for a in 0..m {
            for b in 0..m {
                let v = self.bracket_coords(&dense::unit(n, complement[a]), &dense::unit(n, complement[b]));
                let r = ideal.reduce(&v);
                structure[a][b] = complement
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !r[c].is_zero())
                    .map(|(k, &c)| (k, r[c].clone()))
                    .collect();
            }
        }
        Ok(QuotientStructure { complement, structure })
    }

    pub fn check_antisymmetry(&self) -> bool {
        (0..self.dim()).all(|i| {
            self.structure[i][i].is_empty()
                && (0..self.dim()).all(|j| {
                    let neg: Vec<(usize, Rational)> =
                        self.structure[j][i].iter().map(|(k, c)| (*k, -c.clone())).collect();
                    self.structure[i][j] == neg
                })
        })
    }

    pub fn check_jacobi(&self) -> bool {
        let n = self.dim();
        let e = |i| dense::unit(n, i);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut sum = self.bracket_coords(&e(i), &self.bracket_coords(&e(j), &e(k)));
                    let t2 = self.bracket_coords(&e(j), &self.bracket_coords(&e(k), &e(i)));
                    let t3 = self.bracket_coords(&e(k), &self.bracket_coords(&e(i), &e(j)));
                    for (s, (a, b)) in sum.iter_mut().zip(t2.iter().zip(&t3)) {
                        *s += a + b;
                    }
                    if !dense::is_zero(&sum) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
