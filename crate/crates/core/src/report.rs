//! Serializable summary of a closed algebra.

use crate::coeffring::format_rational_pq;
use crate::liealgebra::LieAlgebra;
use crate::vectorfield::VectorField;

/// One nonzero structure constant `[e_i, e_j] = c·e_k` with `i < j`, `c` as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StructureEntry(pub usize, pub usize, pub usize, pub String);

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AlgebraReport {
    pub variables: Vec<String>,
    pub basis: Vec<VectorField>,
    pub dim: usize,
    pub structure: Vec<StructureEntry>,
    pub nilpotent: bool,
    pub solvable: bool,
    pub abelian: bool,
    pub center: Vec<VectorField>,
    pub generic_rank: usize,
    pub center_rank: usize,
}

impl AlgebraReport {
    pub fn new(l: &LieAlgebra) -> Self {
        let center = l.center();
        let center_rank = crate::exactlinalg::generic_rank(&center);
        Self {
            variables: l.ctx().names().to_vec(),
            basis: l.basis().to_vec(),
            dim: l.dim(),
            structure: l
                .structure_triples()
                .into_iter()
                .map(|(i, j, k, c)| StructureEntry(i, j, k, format_rational_pq(&c)))
                .collect(),
            nilpotent: l.is_nilpotent(),
            solvable: l.is_solvable(),
            abelian: l.is_abelian(),
            center,
            generic_rank: l.generic_rank(),
            center_rank,
        }
    }
}
