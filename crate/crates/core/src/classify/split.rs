//! Deciding whether `L` splits over an abelian ideal.
//!
//! Lifts `a_i = e_i + k_i` of a complementary set of basis elements, with
//! `k_i` unknown in the ideal, span a subalgebra iff
//! `[a_i, a_j] = Σ_k μ_ij^k a_k` for the quotient structure constants `μ`.
//! With an abelian ideal these conditions are linear in the `k_i`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::coeffring::{format_rational_pq, ExpPoly, Rational};
use crate::error::{Error, Result};
use crate::exactlinalg::dense::{self, DVec, Solution, Subspace};
use crate::exactlinalg::{coordinatize, CoordVector, FieldKey};
use crate::liealgebra::LieAlgebra;
use crate::vectorfield::VectorField;

/// Two constraints that cannot hold together.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Conflict {
    /// Row indices; a single row means `0 = b` with `b ≠ 0`.
    pub rows: Vec<usize>,
    /// Set when both rows involve one unknown only.
    pub unknown: Option<usize>,
    /// Values forced on that unknown by each row.
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Certificate {
    /// Names of the lifts `a1, a2, …` and the basis elements they lift.
    pub lifts: Vec<String>,
    pub unknowns: Vec<String>,
    pub rows: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub rhs: Vec<String>,
    /// Weights `y` with `yᵀA = 0` and `yᵀb = 1`.
    pub combination: Vec<String>,
    /// The first conflict in row order; see `conflicts` for all of them.
    pub contradiction: Option<Conflict>,
    pub conflicts: Vec<Conflict>,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum SplitVerdict {
    Split { complement: Vec<VectorField> },
    NonSplit { certificate: Certificate },
}

impl SplitVerdict {
    pub fn is_split(&self) -> bool {
        matches!(self, SplitVerdict::Split { .. })
    }
}

/// The exact system `A·u = b` behind [`split_check`].
#[derive(Clone, Debug)]
pub struct LiftSystem {
    /// Source basis indices of the lifted elements.
    pub complement: Vec<usize>,
    /// Ideal basis fields (the `k_i` are combinations of these).
    pub ideal_basis: Vec<VectorField>,
    pub matrix: Vec<DVec>,
    pub rhs: DVec,
    pub row_labels: Vec<String>,
    pub unknown_labels: Vec<String>,
}

impl LiftSystem {
    /// Index of the unknown for coefficient `t` of `k_i`.
    pub fn unknown(&self, lift: usize, t: usize) -> usize {
        lift * self.ideal_basis.len() + t
    }
}

fn term_label(l: &LieAlgebra, key: &FieldKey) -> String {
    let (comp, mono) = key;
    let v = VectorField::along(l.ctx(), *comp, ExpPoly::term(Rational::one(), mono.clone()));
    v.to_string()
}

pub fn lift_system(l: &LieAlgebra, ideal: &Subspace) -> Result<LiftSystem> {
    let quotient = l.quotient_structure(ideal)?;
    if !l.is_abelian_subspace(ideal) {
        return Err(Error::IdealNotAbelian);
    }
    let n = l.dim();
    let comp = quotient.complement.clone();
    let m = comp.len();
    let ideal_basis: Vec<VectorField> = ideal.basis().iter().map(|b| l.element(b)).collect();
    let p = ideal_basis.len();
    let e = |i: usize| dense::unit(n, i);

    let mut matrix = Vec::new();
    let mut rhs = Vec::new();
    let mut row_labels = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            // r = [e_i, e_j] − Σ μ_ij^k e_k, which lies in the ideal.
            let mut r = l.bracket_coords(&e(comp[i]), &e(comp[j]));
            for (k, mu) in &quotient.structure[i][j] {
                r[comp[*k]] -= mu;
            }
            let constant = coordinatize(&l.element(&r));
            let mut columns: BTreeMap<usize, CoordVector> = BTreeMap::new();
            for (t, b) in ideal.basis().iter().enumerate() {
                let mut add = |unknown: usize, coords: DVec, sign: Rational| {
                    let mut v = coordinatize(&l.element(&coords));
                    v = v.scaled(&sign);
                    let slot = columns.entry(unknown).or_default();
                    slot.axpy(&Rational::one(), &v);
                };
                // ad(e_i) k_j − ad(e_j) k_i − Σ μ_ij^k k_k
                add(j * p + t, l.bracket_coords(&e(comp[i]), b), Rational::one());
                add(i * p + t, l.bracket_coords(&e(comp[j]), b), -Rational::one());
                for (k, mu) in &quotient.structure[i][j] {
                    add(*k * p + t, b.clone(), -mu.clone());
                }
            }
            let mut keys: Vec<FieldKey> = constant.iter().map(|(k, _)| k.clone()).collect();
            for col in columns.values() {
                keys.extend(col.iter().map(|(k, _)| k.clone()));
            }
            keys.sort();
            keys.dedup();
            for key in keys {
                let mut row = dense::zeros(m * p);
                for (u, col) in &columns {
                    if let Some(c) = col.get(&key) {
                        row[*u] += c;
                    }
                }
                let b = -constant.get(&key).cloned().unwrap_or_else(Rational::zero);
                if dense::is_zero(&row) && b.is_zero() {
                    continue;
                }
                matrix.push(row);
                rhs.push(b);
                row_labels.push(format!("[a{},a{}] coefficient of {}", i + 1, j + 1, term_label(l, &key)));
            }
        }
    }
    let unknown_labels = (0..m)
        .flat_map(|i| {
            ideal_basis
                .iter()
                .map(move |b| format!("coefficient of {b} in k{}", i + 1))
        })
        .collect();
    Ok(LiftSystem {
        complement: comp,
        ideal_basis,
        matrix,
        rhs,
        row_labels,
        unknown_labels,
    })
}

/// Rows that contradict each other on their own: `0 = b ≠ 0`, or two rows
/// with proportional left-hand sides and incompatible right-hand sides.
/// Within a proportional group, the first row carrying each distinct value
/// is paired with every earlier such row.
pub fn find_conflicts(matrix: &[DVec], rhs: &[Rational]) -> Vec<Conflict> {
    let mut out = Vec::new();
    let mut groups: BTreeMap<Vec<Rational>, Vec<(usize, Rational)>> = BTreeMap::new();
    for (r, (row, b)) in matrix.iter().zip(rhs).enumerate() {
        let Some(lead) = row.iter().find(|c| !c.is_zero()).cloned() else {
            if !b.is_zero() {
                out.push(Conflict {
                    rows: vec![r],
                    unknown: None,
                    values: vec![],
                });
            }
            continue;
        };
        let normalized: Vec<Rational> = row.iter().map(|c| c / &lead).collect();
        let value = b / &lead;
        let reps = groups.entry(normalized).or_default();
        if reps.iter().any(|(_, v)| *v == value) {
            continue;
        }
        let support: Vec<usize> = (0..row.len()).filter(|&u| !row[u].is_zero()).collect();
        let single = support.len() == 1;
        for (first, v) in reps.iter() {
            out.push(Conflict {
                rows: vec![*first, r],
                unknown: single.then(|| support[0]),
                values: if single {
                    vec![format_rational_pq(v), format_rational_pq(&value)]
                } else {
                    vec![]
                },
            });
        }
        reps.push((r, value));
    }
    out.sort_by(|a, b| a.rows.last().cmp(&b.rows.last()).then_with(|| a.rows.cmp(&b.rows)));
    out
}

/// Decides whether `L` is a split extension of the abelian ideal `ideal`.
pub fn split_check(l: &LieAlgebra, ideal: &Subspace) -> Result<SplitVerdict> {
    let system = lift_system(l, ideal)?;
    let m = system.complement.len();
    let p = system.ideal_basis.len();
    match dense::solve(&system.matrix, &system.rhs, m * p) {
        Solution::Consistent(u) => {
            let complement: Vec<VectorField> = (0..m)
                .map(|i| {
                    let mut a = l.basis()[system.complement[i]].clone();
                    for (t, b) in system.ideal_basis.iter().enumerate() {
                        a.add_scaled(&u[system.unknown(i, t)], b);
                    }
                    a
                })
                .collect();
            verify_complement(l, ideal, &complement)?;
            Ok(SplitVerdict::Split { complement })
        }
        Solution::Inconsistent(y) => {
            let conflicts = find_conflicts(&system.matrix, &system.rhs);
            let strs = |v: &[Rational]| v.iter().map(format_rational_pq).collect::<Vec<_>>();
            Ok(SplitVerdict::NonSplit {
                certificate: Certificate {
                    lifts: system
                        .complement
                        .iter()
                        .enumerate()
                        .map(|(i, &c)| format!("a{} = {} + k{}", i + 1, l.basis()[c], i + 1))
                        .collect(),
                    unknowns: system.unknown_labels,
                    rows: system.row_labels,
                    matrix: system.matrix.iter().map(|r| strs(r)).collect(),
                    rhs: strs(&system.rhs),
                    combination: strs(&y),
                    contradiction: conflicts.first().cloned(),
                    conflicts,
                },
            })
        }
    }
}

fn verify_complement(l: &LieAlgebra, ideal: &Subspace, complement: &[VectorField]) -> Result<()> {
    let s = l.subspace_of(complement)?;
    let closed = s.contains_subspace(&l.bracket_subspaces(&s, &s));
    let direct = s.dim() == complement.len() && s.sum(ideal).dim() == l.dim() && s.dim() + ideal.dim() == l.dim();
    if closed && direct {
        Ok(())
    } else {
        Err(Error::InvariantViolated("solved lifts do not form a complementary subalgebra".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::q;
    use crate::liealgebra::{close, Caps};
    use crate::parse::parse_field;
    use crate::vectorfield::VariableContext;

    fn f(s: &str) -> VectorField {
        parse_field(s, &VariableContext::xyz()).unwrap()
    }

    fn alg(gens: &[&str]) -> LieAlgebra {
        close(&gens.iter().map(|s| f(s)).collect::<Vec<_>>(), Caps::default()).unwrap()
    }

    #[test]
    fn nonsplit_example_pins_one_unknown() {
        let l = alg(&["Dx", "y*Dx", "Dy + (x^2 + y^2)*Dz", "(x + y)*Dz"]);
        let kernel = l.project(&[0, 1]).unwrap().kernel;
        let SplitVerdict::NonSplit { certificate } = split_check(&l, &kernel).unwrap() else {
            panic!("expected a non-split verdict");
        };
        let labels = |c: &Conflict| c.rows.iter().map(|&r| certificate.rows[r].as_str()).collect::<Vec<_>>();
        let c = certificate
            .conflicts
            .iter()
            .find(|c| labels(c) == ["[a1,a3] coefficient of x*Dz", "[a2,a3] coefficient of x*y*Dz"])
            .expect("the x*Dz / x*y*Dz pair is reported");
        assert_eq!(certificate.unknowns[c.unknown.unwrap()], "coefficient of x*y*Dz in k1");
        assert_eq!(c.values, vec!["2/1", "-2/1"]);
        assert!(certificate.contradiction.is_some());
        assert!(certificate.lifts[2].starts_with("a3 = Dy"));
    }

    #[test]
    fn exp_example_is_nonsplit() {
        let l = alg(&["Dx", "y*Dx + x^2*exp(y)*Dz", "x*Dz"]);
        let kernel = l.project(&[0, 1]).unwrap().kernel;
        assert_eq!(kernel.dim(), 6);
        assert!(!split_check(&l, &kernel).unwrap().is_split());
    }

    #[test]
    fn single_chain_splits_with_dx() {
        let l = alg(&["Dx", "(x^2 + y*x + y^2)*Dz"]);
        let kernel = l.project(&[0, 1]).unwrap().kernel;
        match split_check(&l, &kernel).unwrap() {
            SplitVerdict::Split { complement } => assert_eq!(complement, vec![f("Dx")]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn abelian_always_splits() {
        let l = alg(&["Dx", "y*Dx", "Dz"]);
        let i = l.subspace_of(&[f("y*Dx")]).unwrap();
        assert!(split_check(&l, &i).unwrap().is_split());
    }

    #[test]
    fn ideal_preconditions() {
        let h = alg(&["Dx", "y*Dx + x*Dz", "Dz"]);
        let not_ideal = h.subspace_of(&[f("Dx")]).unwrap();
        assert!(matches!(split_check(&h, &not_ideal), Err(Error::NotAnIdeal(_))));
        assert_eq!(
            split_check(&h, &Subspace::full(h.dim())).unwrap_err(),
            Error::IdealNotAbelian
        );
    }

    #[test]
    fn conflict_detection() {
        let a = vec![vec![q(0), q(-1)], vec![q(0), q(2)], vec![q(0), q(0)]];
        let c = find_conflicts(&a, &[q(-2), q(-4), q(0)]);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].unknown, Some(1));
        assert_eq!(c[0].values, vec!["2/1", "-2/1"]);
        let c = find_conflicts(&a, &[q(-2), q(4), q(3)]);
        assert_eq!(c, vec![Conflict { rows: vec![2], unknown: None, values: vec![] }]);
    }
}
