//! Jordan chains of an adjoint operator restricted to an invariant subspace.

use num_traits::Zero;

use crate::coeffring::{ExpPoly, Rational};
use crate::error::{Error, Result};
use crate::exactlinalg::dense::{self, DVec, Matrix, Subspace};
use crate::liealgebra::LieAlgebra;
use crate::vectorfield::VectorField;

#[derive(Clone, Debug, serde::Serialize)]
pub struct JordanDecomposition {
    pub operator: VectorField,
    /// Each chain is `[h, N h, N² h, …]`; the last element is in the kernel.
    pub chains: Vec<Vec<VectorField>>,
    pub heads: Vec<VectorField>,
    pub kernel_dim: usize,
    /// Heads after the linear change of the variables carrying the terminal
    /// vectors that turns chain `c`'s terminal into the `c`-th of those
    /// coordinate fields. Present only when the terminals are independent
    /// constant fields spanning exactly that many variables and no head
    /// coefficient depends on them.
    pub normalized_heads: Option<Vec<VectorField>>,
}

impl JordanDecomposition {
    pub fn lengths(&self) -> Vec<usize> {
        self.chains.iter().map(Vec::len).collect()
    }

    pub fn terminals(&self) -> Vec<VectorField> {
        self.chains.iter().map(|c| c.last().unwrap().clone()).collect()
    }
}

fn matrix_power_apply(t: &Matrix, v: &[Rational], k: usize) -> DVec {
    (0..k).fold(v.to_vec(), |acc, _| dense::mat_vec(t, &acc))
}

/// Jordan chains of `ad(v)` on `ideal` (given in basis coordinates).
pub fn jordan_chains(l: &LieAlgebra, v: &VectorField, ideal: &Subspace) -> Result<JordanDecomposition> {
    let ad = l.adjoint_matrix(v)?;
    let m = ideal.dim();
    // Restricted operator in ideal coordinates; column j is the image of basis row j.
    let mut t = vec![dense::zeros(m); m];
    for (j, b) in ideal.basis().iter().enumerate() {
        let image = dense::mat_vec(&ad, b);
        let coords = ideal.express(&image).ok_or(Error::NotInvariant)?;
        for (i, c) in coords.into_iter().enumerate() {
            t[i][j] = c;
        }
    }

    // Kernel filtration K_0 ⊂ K_1 ⊂ … ⊂ K_s = whole subspace.
    let mut filtration = vec![Subspace::zero(m)];
    let mut power: Matrix = (0..m).map(|i| dense::unit(m, i)).collect();
    while filtration.last().unwrap().dim() < m {
        power = (0..m)
            .map(|i| (0..m).map(|j| (0..m).fold(Rational::zero(), |acc, k| acc + &t[i][k] * &power[k][j])).collect())
            .collect();
        let k = Subspace::span(m, dense::null_space(&power, m));
        if k.dim() == filtration.last().unwrap().dim() {
            return Err(Error::NotNilpotentOperator);
        }
        filtration.push(k);
    }

    let mut heads: Vec<(DVec, usize)> = Vec::new();
    for j in (1..filtration.len()).rev() {
        let mut covered = filtration[j - 1].sum(&Subspace::span(
            m,
            heads
                .iter()
                .filter(|(_, len)| *len > j)
                .map(|(h, len)| matrix_power_apply(&t, h, len - j)),
        ));
        for candidate in filtration[j].basis() {
            if !covered.contains(candidate) {
                covered = covered.sum(&Subspace::span(m, [candidate.clone()]));
                heads.push((candidate.clone(), j));
            }
        }
    }

    let to_field = |c: &DVec| {
        let mut coords = dense::zeros(l.dim());
        for (ci, b) in c.iter().zip(ideal.basis()) {
            dense::axpy(&mut coords, ci, b);
        }
        l.element(&coords)
    };
    let chains: Vec<Vec<VectorField>> = heads
        .iter()
        .map(|(h, len)| (0..*len).map(|k| to_field(&matrix_power_apply(&t, h, k))).collect())
        .collect();
    let head_fields: Vec<VectorField> = chains.iter().map(|c| c[0].clone()).collect();
    let mut out = JordanDecomposition {
        operator: v.clone(),
        heads: head_fields,
        kernel_dim: filtration.get(1).map_or(0, Subspace::dim),
        chains,
        normalized_heads: None,
    };
    out.normalized_heads = normalize_heads(&out);
    Ok(out)
}

fn normalize_heads(d: &JordanDecomposition) -> Option<Vec<VectorField>> {
    let terminals = d.terminals();
    let first = terminals.first()?;
    let n = first.ctx().len();
    let support: Vec<usize> = (0..n)
        .filter(|&i| terminals.iter().any(|t| !t.component(i).is_zero()))
        .collect();
    if support.len() != terminals.len() {
        return None;
    }
    // Columns are the terminals' constant coefficients on the support.
    let mut a = vec![dense::zeros(support.len()); support.len()];
    for (c, t) in terminals.iter().enumerate() {
        for (r, &s) in support.iter().enumerate() {
            a[r][c] = t.component(s).as_constant()?;
        }
    }
    let inverse = invert(&a)?;
    if d.heads.iter().any(|h| h.components().iter().any(|p| support.iter().any(|&s| p.depends_on(s)))) {
        return None;
    }
    let heads = d
        .heads
        .iter()
        .map(|h| {
            let mut comps = h.components().to_vec();
            for (r, &s) in support.iter().enumerate() {
                let mut acc = ExpPoly::zero();
                for (c, &sc) in support.iter().enumerate() {
                    acc = acc.add(&h.component(sc).scale(&inverse[r][c]));
                }
                comps[s] = acc;
            }
            VectorField::new(h.ctx(), comps).expect("same context and arity")
        })
        .collect();
    Some(heads)
}

fn invert(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend(dense::unit(n, i));
            row
        })
        .collect();
    let pivots = dense::rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Degree with `deg 0 = −∞` encoded as `None`.
pub fn degree(p: &ExpPoly) -> Option<u32> {
    p.total_degree()
}
