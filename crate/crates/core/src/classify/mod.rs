//! Classification of nilpotent algebras in three variables by the rank and
//! dimension of the center, plus the structural tools behind it.

pub mod jordan;
pub mod split;
pub mod templates;

pub use jordan::{jordan_chains, JordanDecomposition};
pub use split::{split_check, Certificate, Conflict, SplitVerdict};
pub use templates::{match_template, MatchReport, Template};

use crate::error::{Error, Result};
use crate::exactlinalg::dense::{self, Subspace};
use crate::exactlinalg::generic_rank;
use crate::liealgebra::LieAlgebra;
use crate::vectorfield::VectorField;

/// How the image in the remaining two variables looks when the center is
/// one-dimensional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subcase {
    /// Rank-one image and no kernel element of positive degree along it.
    Heisenberg,
    /// Rank-one image and a kernel element of positive degree along it.
    SingleChain,
    NonabelianImage,
    /// Abelian image of rank two.
    AbelianRankTwoImage,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "label", rename_all = "kebab-case")]
pub enum Case {
    Abelian { rank: usize },
    CenterRank2,
    CenterRank1DimGe2,
    /// `subcase` is `None` when the given coordinates do not expose the
    /// projection along the center.
    CenterDim1 { subcase: Option<Subcase> },
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ImageSummary {
    pub kept: Vec<String>,
    pub basis: Vec<String>,
    pub dim: usize,
    pub abelian: bool,
    pub rank: usize,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Evidence {
    pub dim: usize,
    pub center: Vec<VectorField>,
    pub center_dim: usize,
    pub center_rank: usize,
    pub image: Option<ImageSummary>,
    pub note: Option<String>,
    pub templates: Vec<Template>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ClassificationReport {
    pub is_abelian: bool,
    pub abelian_rank: Option<usize>,
    pub case: Case,
    pub evidence: Evidence,
}

/// Classifies a nilpotent algebra of vector fields in three variables.
pub fn classify(l: &LieAlgebra) -> Result<ClassificationReport> {
    if l.ctx().len() != 3 {
        return Err(Error::UnsupportedContext(format!(
            "classification needs three variables, got {}",
            l.ctx().len()
        )));
    }
    if !l.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let center = l.center();
    let center_rank = generic_rank(&center);
    let templates = Template::ALL
        .into_iter()
        .filter(|&t| match_template(l, t).matched)
        .collect();
    let mut evidence = Evidence {
        dim: l.dim(),
        center_dim: center.len(),
        center_rank,
        center,
        image: None,
        note: None,
        templates,
    };
    if l.is_abelian() {
        let rank = l.generic_rank();
        return Ok(ClassificationReport {
            is_abelian: true,
            abelian_rank: Some(rank),
            case: Case::Abelian { rank },
            evidence,
        });
    }
    let case = match (center_rank, evidence.center_dim) {
        (3, _) => {
            return Err(Error::InvariantViolated(
                "the center of a nonabelian nilpotent algebra has rank 3".into(),
            ))
        }
        (2, _) => Case::CenterRank2,
        (1, d) if d >= 2 => Case::CenterRank1DimGe2,
        (1, _) => {
            let (subcase, image, note) = center_line_subcase(l, &evidence.center[0]);
            evidence.image = image;
            evidence.note = note;
            Case::CenterDim1 { subcase }
        }
        _ => {
            return Err(Error::InvariantViolated(
                "a nonzero nilpotent algebra has a nonzero center".into(),
            ))
        }
    };
    Ok(ClassificationReport {
        is_abelian: false,
        abelian_rank: None,
        case,
        evidence,
    })
}

fn center_line_subcase(l: &LieAlgebra, z: &VectorField) -> (Option<Subcase>, Option<ImageSummary>, Option<String>) {
    let ctx = l.ctx();
    let support: Vec<usize> = (0..ctx.len()).filter(|&i| !z.component(i).is_zero()).collect();
    if support.len() != 1 || !z.component(support[0]).is_constant() {
        return (
            None,
            None,
            Some(format!("the center {z} is not a constant multiple of a coordinate field")),
        );
    }
    let axis = support[0];
    let kept: Vec<usize> = (0..ctx.len()).filter(|&i| i != axis).collect();
    let p = match l.project(&kept) {
        Ok(p) => p,
        Err(e) => return (None, None, Some(e.to_string())),
    };
    let image_rank = p.image.generic_rank();
    let summary = ImageSummary {
        kept: kept.iter().map(|&i| ctx.name(i).to_string()).collect(),
        basis: p.image.basis().iter().map(ToString::to_string).collect(),
        dim: p.image.dim(),
        abelian: p.image.is_abelian(),
        rank: image_rank,
        kernel_dim: p.kernel_dim(),
    };
    let subcase = if !summary.abelian {
        Some(Subcase::NonabelianImage)
    } else if image_rank == 2 {
        Some(Subcase::AbelianRankTwoImage)
    } else {
        // Rank one: the image must lie along a single kept axis `u`.
        let axes: Vec<usize> = (0..kept.len())
            .filter(|&i| p.image.basis().iter().any(|b| !b.component(i).is_zero()))
            .collect();
        match axes.as_slice() {
            [u] => {
                let u = kept[*u];
                let positive = p.kernel_basis.iter().any(|k| k.component(axis).degree_in(u).unwrap_or(0) > 0);
                Some(if positive { Subcase::SingleChain } else { Subcase::Heisenberg })
            }
            _ => None,
        }
    };
    let note = subcase
        .is_none()
        .then(|| "the rank-one image is not along a coordinate axis".to_string());
    (subcase, Some(summary), note)
}

/// One-dimensional ideals of `L / Z(L)`: exactly the lines in the center of
/// the quotient for a nilpotent algebra.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CentralQuotientLines {
    pub center: Vec<VectorField>,
    /// Lifts to `L` of a basis of the center of `L / Z(L)`.
    pub lifts: Vec<VectorField>,
    /// Dimension of the space parametrizing the lines.
    pub parameter_dim: usize,
    /// Set for abelian input, where `L / Z(L)` is zero and every line of `L`
    /// is itself an ideal.
    pub degenerate: bool,
}

impl CentralQuotientLines {
    /// Preimage in `L` of the line through `Σ c_i lift_i`.
    pub fn preimage(&self, coeffs: &[crate::Rational]) -> Vec<VectorField> {
        let mut out = self.center.clone();
        if let Some(first) = self.lifts.first() {
            let mut v = VectorField::zero(first.ctx());
            for (c, w) in coeffs.iter().zip(&self.lifts) {
                v.add_scaled(c, w);
            }
            out.push(v);
        }
        out
    }
}

pub fn one_dim_ideals_mod_center(l: &LieAlgebra) -> Result<CentralQuotientLines> {
    if !l.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let z = l.center_subspace();
    let center = l.fields_of(&z);
    if l.is_abelian() {
        return Ok(CentralQuotientLines {
            center,
            lifts: vec![],
            parameter_dim: 0,
            degenerate: true,
        });
    }
    let q = l.quotient_structure(&z)?;
    let m = q.dim();
    let mut stacked = Vec::new();
    for i in 0..m {
        let ad: Vec<dense::DVec> = (0..m)
            .map(|k| {
                (0..m)
                    .map(|j| {
                        q.structure[i][j]
                            .iter()
                            .find(|(kk, _)| *kk == k)
                            .map_or_else(num_traits::Zero::zero, |(_, c)| c.clone())
                    })
                    .collect()
            })
            .collect();
        stacked.extend(ad);
    }
    let qz = Subspace::span(m, dense::null_space(&stacked, m));
    let lifts = qz
        .basis()
        .iter()
        .map(|v| {
            let mut coords = dense::zeros(l.dim());
            for (c, &idx) in v.iter().zip(&q.complement) {
                coords[idx] = c.clone();
            }
            l.element(&coords)
        })
        .collect();
    Ok(CentralQuotientLines {
        center,
        lifts,
        parameter_dim: qz.dim(),
        degenerate: false,
    })
}
