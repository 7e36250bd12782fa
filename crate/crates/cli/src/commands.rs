use nilvec_core::classify::{self, jordan_chains, match_template, split_check, Template};
use nilvec_core::exactlinalg::dense::{self, Subspace};
use nilvec_core::exactlinalg::generic_rank;
use nilvec_core::genlib::{build, random_spec, Recipe};
use nilvec_core::liealgebra::SeriesKind;
use nilvec_core::report::AlgebraReport;
use nilvec_core::LieAlgebra;
use serde_json::{json, Value};

use crate::session::{Failure, Session};
use crate::IdealArgs;

type Output = Result<Value, Failure>;

fn value(v: impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

pub fn bracket(s: &Session) -> Output {
    let [a, b] = s.generators()? else {
        return Err(Failure::usage("bracket takes exactly two generators"));
    };
    let c = a.bracket_capped(b, s.caps.degree)?;
    Ok(json!({ "variables": s.ctx.names(), "left": a, "right": b, "bracket": c }))
}

pub fn closure(s: &Session) -> Output {
    Ok(value(AlgebraReport::new(&s.algebra()?)))
}

pub fn classify(s: &Session) -> Output {
    Ok(value(classify::classify(&s.algebra()?)?))
}

pub fn center(s: &Session) -> Output {
    let l = s.algebra()?;
    let center = l.center();
    Ok(json!({
        "dim": l.dim(),
        "center_dim": center.len(),
        "center_rank": generic_rank(&center),
        "center": center,
    }))
}

pub fn series(s: &Session) -> Output {
    let l = s.algebra()?;
    Ok(json!({
        "dim": l.dim(),
        "lower_central": l.series(SeriesKind::LowerCentral),
        "derived": l.series(SeriesKind::Derived),
        "nilpotent": l.is_nilpotent(),
        "solvable": l.is_solvable(),
    }))
}

pub fn rank(s: &Session) -> Output {
    let gens = s.generators()?;
    Ok(json!({ "generators": gens, "rank": generic_rank(gens) }))
}

pub fn project(s: &Session, kept: &str) -> Output {
    let l = s.algebra()?;
    let kept = s.variables(kept)?;
    let p = l.project(&kept)?;
    Ok(json!({
        "kept": kept.iter().map(|&i| s.ctx.name(i)).collect::<Vec<_>>(),
        "dim": l.dim(),
        "image": {
            "dim": p.image.dim(),
            "basis": p.image.basis(),
            "abelian": p.image.is_abelian(),
        },
        "kernel": {
            "dim": p.kernel.dim(),
            "basis": p.kernel_basis,
            "abelian": l.is_abelian_subspace(&p.kernel),
        },
    }))
}

fn resolve_ideal(s: &Session, l: &LieAlgebra, args: &IdealArgs) -> Result<Subspace, Failure> {
    match args.ideal.trim() {
        "kernel" => {
            let kept = match &args.kept {
                Some(list) => s.variables(list)?,
                None => (0..s.ctx.len().saturating_sub(1)).collect(),
            };
            Ok(l.project(&kept)?.kernel)
        }
        "center" => Ok(l.center_subspace()),
        list => {
            let mut rows = Vec::new();
            for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let i: usize = part
                    .parse()
                    .map_err(|_| Failure::usage(format!("bad basis index '{part}'")))?;
                if i >= l.dim() {
                    return Err(Failure::usage(format!(
                        "basis index {i} out of range for dimension {}",
                        l.dim()
                    )));
                }
                rows.push(dense::unit(l.dim(), i));
            }
            Ok(Subspace::span(l.dim(), rows))
        }
    }
}

pub fn jordan(s: &Session, op: &str, args: &IdealArgs) -> Output {
    let l = s.algebra()?;
    let op = s.field(op)?;
    let ideal = resolve_ideal(s, &l, args)?;
    let d = jordan_chains(&l, &op, &ideal)?;
    Ok(json!({
        "ideal_dim": ideal.dim(),
        "lengths": d.lengths(),
        "decomposition": d,
    }))
}

pub fn split(s: &Session, args: &IdealArgs) -> Output {
    let l = s.algebra()?;
    let ideal = resolve_ideal(s, &l, args)?;
    let verdict = split_check(&l, &ideal)?;
    Ok(json!({
        "dim": l.dim(),
        "ideal": l.fields_of(&ideal),
        "split": verdict.is_split(),
        "verdict": verdict,
    }))
}

pub fn generate(s: &Session, recipe: &str, degree_bound: u32) -> Output {
    let recipe: Recipe = recipe.parse().map_err(Failure::usage)?;
    let spec = random_spec(recipe, s.seed, degree_bound)?;
    let built = build(&spec)?;
    Ok(json!({
        "spec": spec,
        "generators": built.generators,
        "expected": built.expected,
    }))
}

pub fn match_templates(s: &Session, template: Option<&str>) -> Output {
    let l = s.algebra()?;
    let templates = match template {
        Some(t) => vec![t.parse::<Template>().map_err(Failure::usage)?],
        None => Template::ALL.to_vec(),
    };
    let reports: Vec<_> = templates.into_iter().map(|t| match_template(&l, t)).collect();
    Ok(json!({
        "dim": l.dim(),
        "matched": reports.iter().filter(|r| r.matched).map(|r| r.template).collect::<Vec<_>>(),
        "reports": reports,
    }))
}
