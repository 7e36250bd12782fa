//! Generators for nilpotent algebras with known structure, for testing.
//!
//! Each recipe emits generators only; the closure is always recomputed by the
//! engine. [`random_spec`] draws parameters from a fixed distribution:
//! integer coefficients uniform in `−3..=3` (nonzero where a leading or
//! distinguished term is required) and degrees uniform up to the bound.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::jordan::jordan_chains;
use crate::classify::{classify, Case, Subcase};
use crate::coeffring::{ExpMonomial, ExpPoly, Rational, DEFAULT_DEGREE_CAP};
use crate::error::{Error, Result};
use crate::exactlinalg::generic_rank;
use crate::liealgebra::LieAlgebra;
use crate::vectorfield::{VariableContext, VectorField};

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Recipe {
    /// `⟨∂z⟩ ⋉ A`, `A` generated by two heads `P(z)∂x + Q(z)∂y` under `ad ∂z`.
    TwoBlock,
    /// `∂x`, lifts `f_i(y)∂x + g_i(x,y)∂z`, fibre fields `k_j(x,y)∂z`, `∂z`.
    CenterLift,
    /// `⟨∂x, h(y)∂x + x∂z, ∂z⟩`.
    Heisenberg,
    /// `∂x` and `(x^N + φ_1(y)x^{N−1} + … + φ_N(y))∂z`.
    SingleChain,
    /// `∂x`, `∂y + f_0∂z`, `y^i∂x + f_i∂z`, `g_j∂z`.
    NonabelianImage,
    /// `∂x`, `∂y + P_0∂z`, `P_i∂z`.
    AbelianImage,
    Abelian(u8),
}

impl Recipe {
    pub const ALL: [Recipe; 9] = [
        Recipe::TwoBlock,
        Recipe::CenterLift,
        Recipe::Heisenberg,
        Recipe::SingleChain,
        Recipe::NonabelianImage,
        Recipe::AbelianImage,
        Recipe::Abelian(1),
        Recipe::Abelian(2),
        Recipe::Abelian(3),
    ];

    /// Recipes whose algebras are nonabelian.
    pub const NONABELIAN: [Recipe; 6] = [
        Recipe::TwoBlock,
        Recipe::CenterLift,
        Recipe::Heisenberg,
        Recipe::SingleChain,
        Recipe::NonabelianImage,
        Recipe::AbelianImage,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Recipe::TwoBlock => "two-block",
            Recipe::CenterLift => "center-lift",
            Recipe::Heisenberg => "heisenberg",
            Recipe::SingleChain => "single-chain",
            Recipe::NonabelianImage => "nonabelian-image",
            Recipe::AbelianImage => "abelian-image",
            Recipe::Abelian(1) => "abelian-1",
            Recipe::Abelian(2) => "abelian-2",
            Recipe::Abelian(_) => "abelian-3",
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Recipe {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Recipe::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Recipe::ALL.iter().map(|r| r.name()).collect();
            format!("unknown recipe '{s}'; expected one of {}", names.join(", "))
        })
    }
}

impl serde::Serialize for Recipe {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(untagged)]
pub enum RecipeParams {
    TwoBlock {
        p1: ExpPoly,
        q1: ExpPoly,
        p2: ExpPoly,
        q2: ExpPoly,
    },
    CenterLift {
        f: Vec<ExpPoly>,
        g: Vec<ExpPoly>,
        k: Vec<ExpPoly>,
    },
    Heisenberg {
        h: ExpPoly,
    },
    SingleChain {
        phi: Vec<ExpPoly>,
    },
    NonabelianImage {
        f: Vec<ExpPoly>,
        g: Vec<ExpPoly>,
    },
    AbelianImage {
        p0: ExpPoly,
        p: Vec<ExpPoly>,
    },
    /// Extra fields `a∂x + b∂y` beyond the coordinate fields of the rank.
    Abelian {
        rank: u8,
        extra: Vec<(ExpPoly, ExpPoly)>,
    },
}

impl RecipeParams {
    pub fn recipe(&self) -> Recipe {
        match self {
            RecipeParams::TwoBlock { .. } => Recipe::TwoBlock,
            RecipeParams::CenterLift { .. } => Recipe::CenterLift,
            RecipeParams::Heisenberg { .. } => Recipe::Heisenberg,
            RecipeParams::SingleChain { .. } => Recipe::SingleChain,
            RecipeParams::NonabelianImage { .. } => Recipe::NonabelianImage,
            RecipeParams::AbelianImage { .. } => Recipe::AbelianImage,
            RecipeParams::Abelian { rank, .. } => Recipe::Abelian(*rank),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RecipeSpec {
    pub recipe: Recipe,
    pub seed: Option<u64>,
    pub degree_bound: u32,
    pub params: RecipeParams,
}

impl RecipeSpec {
    /// A hand-written spec; `degree_bound` is the largest degree among the parameters.
    pub fn new(params: RecipeParams) -> Self {
        let degree_bound = params_max_degree(&params);
        Self {
            recipe: params.recipe(),
            seed: None,
            degree_bound,
            params,
        }
    }
}

fn params_max_degree(p: &RecipeParams) -> u32 {
    let polys: Vec<&ExpPoly> = match p {
        RecipeParams::TwoBlock { p1, q1, p2, q2 } => vec![p1, q1, p2, q2],
        RecipeParams::CenterLift { f, g, k } => f.iter().chain(g).chain(k).collect(),
        RecipeParams::Heisenberg { h } => vec![h],
        RecipeParams::SingleChain { phi } => phi.iter().collect(),
        RecipeParams::NonabelianImage { f, g } => f.iter().chain(g).collect(),
        RecipeParams::AbelianImage { p0, p } => std::iter::once(p0).chain(p).collect(),
        RecipeParams::Abelian { extra, .. } => extra.iter().flat_map(|(a, b)| [a, b]).collect(),
    };
    polys.iter().filter_map(|p| p.total_degree()).max().unwrap_or(0)
}

/// Chain structure guaranteed for `ad(operator)` on the kernel of the
/// projection keeping `kept`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ChainExpectation {
    pub operator: VectorField,
    pub kept: Vec<usize>,
    pub chains: usize,
}

/// Properties a built algebra is guaranteed to have.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Expected {
    pub nilpotent: bool,
    pub abelian: bool,
    pub dim: Option<usize>,
    pub center_dim: Option<usize>,
    pub min_center_dim: Option<usize>,
    pub center_rank: Option<usize>,
    pub case: Option<Case>,
    pub chains: Option<ChainExpectation>,
    /// Every center element has the form `g(y)∂z`.
    pub center_in_y_along_z: bool,
}

impl Expected {
    fn nonabelian() -> Self {
        Self {
            nilpotent: true,
            abelian: false,
            dim: None,
            center_dim: None,
            min_center_dim: None,
            center_rank: None,
            case: None,
            chains: None,
            center_in_y_along_z: false,
        }
    }
}

impl Expected {
    /// Properties of `l` that differ from the expectation; empty when all hold.
    pub fn mismatches(&self, l: &LieAlgebra) -> Vec<String> {
        let mut out = Vec::new();
        let mut check = |ok: bool, what: String| {
            if !ok {
                out.push(what);
            }
        };
        check(l.is_nilpotent() == self.nilpotent, format!("nilpotent should be {}", self.nilpotent));
        check(l.is_abelian() == self.abelian, format!("abelian should be {}", self.abelian));
        if let Some(d) = self.dim {
            check(l.dim() == d, format!("dim is {}, expected {d}", l.dim()));
        }
        let center = l.center();
        if let Some(d) = self.center_dim {
            check(center.len() == d, format!("center dim is {}, expected {d}", center.len()));
        }
        if let Some(d) = self.min_center_dim {
            check(center.len() >= d, format!("center dim is {}, expected at least {d}", center.len()));
        }
        if let Some(r) = self.center_rank {
            let got = generic_rank(&center);
            check(got == r, format!("center rank is {got}, expected {r}"));
        }
        if self.center_in_y_along_z {
            let ok = center
                .iter()
                .all(|c| c.component(X).is_zero() && c.component(Y).is_zero() && only_in(c.component(Z), &[Y]));
            check(ok, "center is not of the form g(y)*Dz".into());
        }
        if let Some(ch) = &self.chains {
            match l.project(&ch.kept).and_then(|p| jordan_chains(l, &ch.operator, &p.kernel)) {
                Ok(d) => check(
                    d.chains.len() == ch.chains,
                    format!("{} Jordan chains, expected {}", d.chains.len(), ch.chains),
                ),
                Err(e) => check(false, format!("Jordan chains unavailable: {e}")),
            }
        }
        if let Some(case) = &self.case {
            match classify(l) {
                Ok(r) => check(&r.case == case, format!("case is {:?}, expected {case:?}", r.case)),
                Err(e) => check(false, format!("classification failed: {e}")),
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Built {
    pub generators: Vec<VectorField>,
    pub expected: Expected,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSpec(msg.into())
}

fn only_in(p: &ExpPoly, vars: &[usize]) -> bool {
    (0..3).all(|v| vars.contains(&v) || !p.depends_on(v))
}

fn deg(p: &ExpPoly) -> Option<u32> {
    p.total_degree()
}

fn positive_in(p: &ExpPoly, var: usize) -> bool {
    p.degree_in(var).unwrap_or(0) > 0
}

fn push_unique(out: &mut Vec<VectorField>, v: VectorField) {
    if !v.is_zero() && !out.contains(&v) {
        out.push(v);
    }
}

/// Generators and guaranteed properties of a recipe instance.
pub fn build(spec: &RecipeSpec) -> Result<Built> {
    let ctx = VariableContext::xyz();
    let d = |i| VectorField::partial(&ctx, i);
    let along = |i, c: &ExpPoly| VectorField::along(&ctx, i, c.clone());
    let pair = |a: &ExpPoly, b: &ExpPoly| {
        VectorField::new(&ctx, vec![a.clone(), b.clone(), ExpPoly::zero()]).expect("three components")
    };
    let mut gens = Vec::new();
    let mut ex = Expected::nonabelian();
    match &spec.params {
        RecipeParams::TwoBlock { p1, q1, p2, q2 } => {
            if ![p1, q1, p2, q2].iter().all(|p| p.is_polynomial() && only_in(p, &[Z])) {
                return Err(invalid("block heads must be polynomials in z"));
            }
            if deg(p1).unwrap_or(0) < 1 || deg(p1) <= deg(q1) {
                return Err(invalid("the first head needs deg P >= 1 and deg P > deg Q"));
            }
            if q2.is_zero() || deg(p2) >= deg(q2) {
                return Err(invalid("the second head needs deg R < deg S"));
            }
            gens = vec![d(Z), pair(p1, q1), pair(p2, q2)];
            ex.center_dim = Some(2);
            ex.center_rank = Some(2);
            ex.case = Some(Case::CenterRank2);
            ex.chains = Some(ChainExpectation {
                operator: d(Z),
                kept: vec![Z],
                chains: 2,
            });
        }
        RecipeParams::CenterLift { f, g, k } => {
            if f.first() != Some(&ExpPoly::one()) || f.len() != g.len() {
                return Err(invalid("f must start with 1 and have one lift g per entry"));
            }
            if !f.iter().all(|p| only_in(p, &[Y])) || !f.iter().any(|p| !p.is_constant()) {
                return Err(invalid("f must depend on y only and contain a nonconstant entry"));
            }
            let fibre_ok = |p: &ExpPoly| p.is_polynomial() && only_in(p, &[X, Y]);
            if !g.iter().chain(k).all(fibre_ok) {
                return Err(invalid("g and k must be polynomial in x and independent of z"));
            }
            if !k.iter().any(|p| positive_in(p, X)) {
                return Err(invalid("some k must have positive degree in x"));
            }
            for (fi, gi) in f.iter().zip(g) {
                push_unique(&mut gens, along(X, fi).add(&along(Z, gi)));
            }
            for kj in k {
                push_unique(&mut gens, along(Z, kj));
            }
            push_unique(&mut gens, d(Z));
            ex.center_rank = Some(1);
            ex.min_center_dim = Some(2);
            ex.case = Some(Case::CenterRank1DimGe2);
            ex.center_in_y_along_z = true;
        }
        RecipeParams::Heisenberg { h } => {
            if !only_in(h, &[Y]) {
                return Err(invalid("h must depend on y only"));
            }
            gens = vec![d(X), along(X, h).add(&along(Z, &ExpPoly::var(X))), d(Z)];
            ex.dim = Some(3);
            ex.center_dim = Some(1);
            ex.center_rank = Some(1);
            ex.case = Some(Case::CenterDim1 {
                subcase: Some(Subcase::Heisenberg),
            });
        }
        RecipeParams::SingleChain { phi } => {
            let n = phi.len() as u32;
            if n == 0 || !phi.iter().all(|p| p.is_polynomial() && only_in(p, &[Y])) {
                return Err(invalid("need N >= 1 polynomials phi_i(y)"));
            }
            let mut head = ExpPoly::var(X).pow(n);
            for (i, p) in phi.iter().enumerate() {
                head = head.add(&p.mul(&ExpPoly::var(X).pow(n - 1 - i as u32)));
            }
            gens = vec![d(X), along(Z, &head)];
            ex.dim = Some(n as usize + 2);
            ex.center_dim = Some(1);
            ex.center_rank = Some(1);
            ex.case = Some(Case::CenterDim1 {
                subcase: Some(Subcase::SingleChain),
            });
            ex.chains = Some(ChainExpectation {
                operator: d(X),
                kept: vec![X, Y],
                chains: 1,
            });
        }
        RecipeParams::NonabelianImage { f, g } => {
            if f.len() < 2 {
                return Err(invalid("need f_0 and at least one f_i"));
            }
            if !f.iter().chain(g).all(|p| p.is_polynomial() && only_in(p, &[X, Y])) {
                return Err(invalid("f and g must be polynomials in x and y"));
            }
            if !g.iter().any(|p| positive_in(p, X)) {
                return Err(invalid("some g must have positive degree in x"));
            }
            push_unique(&mut gens, d(X));
            push_unique(&mut gens, d(Y).add(&along(Z, &f[0])));
            for (i, fi) in f.iter().enumerate().skip(1) {
                push_unique(&mut gens, along(X, &ExpPoly::var(Y).pow(i as u32)).add(&along(Z, fi)));
            }
            for gj in g {
                push_unique(&mut gens, along(Z, gj));
            }
            ex.center_dim = Some(1);
            ex.center_rank = Some(1);
            ex.case = Some(Case::CenterDim1 {
                subcase: Some(Subcase::NonabelianImage),
            });
        }
        RecipeParams::AbelianImage { p0, p } => {
            if !std::iter::once(p0).chain(p).all(|q| q.is_polynomial() && only_in(q, &[X, Y])) {
                return Err(invalid("P_i must be polynomials in x and y"));
            }
            if p.iter().all(ExpPoly::is_constant) {
                return Err(invalid("some P_i must be nonconstant"));
            }
            push_unique(&mut gens, d(X));
            push_unique(&mut gens, d(Y).add(&along(Z, p0)));
            for q in p {
                push_unique(&mut gens, along(Z, q));
            }
            // The dichotomy is only guaranteed for monomial P_i with P_0 = 0.
            if p0.is_zero() && p.iter().all(|q| q.len() == 1) {
                let x = p.iter().any(|q| positive_in(q, X));
                let y = p.iter().any(|q| positive_in(q, Y));
                if x && y {
                    ex.center_dim = Some(1);
                    ex.center_rank = Some(1);
                    ex.case = Some(Case::CenterDim1 {
                        subcase: Some(Subcase::AbelianRankTwoImage),
                    });
                } else {
                    ex.center_rank = Some(2);
                    ex.case = Some(Case::CenterRank2);
                }
            }
        }
        RecipeParams::Abelian { rank, extra } => {
            let rank = *rank;
            match rank {
                1 => {
                    if !extra.iter().all(|(a, b)| b.is_zero() && only_in(a, &[Y, Z])) {
                        return Err(invalid("rank-1 fields are f(y,z)*Dx"));
                    }
                    gens.push(d(X));
                }
                2 => {
                    if !extra.iter().all(|(a, b)| only_in(a, &[Z]) && only_in(b, &[Z])) {
                        return Err(invalid("rank-2 fields are f(z)*Dx + g(z)*Dy"));
                    }
                    gens.extend([d(X), d(Y)]);
                }
                3 => {
                    if !extra.is_empty() {
                        return Err(invalid("rank 3 takes no extra fields"));
                    }
                    gens.extend([d(X), d(Y), d(Z)]);
                }
                _ => return Err(invalid("abelian rank must be 1, 2 or 3")),
            }
            for (a, b) in extra {
                push_unique(&mut gens, pair(a, b));
            }
            ex.abelian = true;
            ex.case = Some(Case::Abelian { rank: rank as usize });
            ex.center_rank = Some(rank as usize);
            if rank == 3 {
                ex.dim = Some(3);
            }
        }
    }
    Ok(Built {
        generators: gens,
        expected: ex,
    })
}

struct Draw {
    rng: ChaCha8Rng,
}

impl Draw {
    fn coef(&mut self) -> Rational {
        Rational::from_integer(self.rng.random_range(-3..=3).into())
    }

    fn nonzero(&mut self) -> Rational {
        let v: i64 = self.rng.random_range(1..=3);
        let sign = if self.rng.random_bool(0.5) { 1 } else { -1 };
        Rational::from_integer((sign * v).into())
    }

    fn upto(&mut self, max: u32) -> u32 {
        self.rng.random_range(0..=max)
    }

    /// Polynomial in `var` of exact degree `d` (zero for `None`).
    fn univariate(&mut self, var: usize, d: Option<u32>) -> ExpPoly {
        let Some(d) = d else {
            return ExpPoly::zero();
        };
        let mut p = ExpPoly::term(self.nonzero(), ExpMonomial::power(var, d));
        for e in 0..d {
            p = p.add(&ExpPoly::term(self.coef(), ExpMonomial::power(var, e)));
        }
        p
    }

    /// Degree in `{None, 0, …, below−1}`.
    fn lower_degree(&mut self, below: u32) -> Option<u32> {
        let pick = self.rng.random_range(0..=below);
        (pick > 0).then(|| pick - 1)
    }

    /// Polynomial in `x, y` of total degree at most `d`.
    fn bivariate(&mut self, d: u32) -> ExpPoly {
        let mut p = ExpPoly::zero();
        for a in 0..=d {
            for b in 0..=d - a {
                let m = ExpMonomial::power(X, a).mul(&ExpMonomial::power(Y, b));
                p = p.add(&ExpPoly::term(self.coef(), m));
            }
        }
        p
    }

    /// Bivariate polynomial with a nonzero term of positive x-degree.
    fn bivariate_with_x(&mut self, d: u32) -> ExpPoly {
        let d = d.max(1);
        let a = self.rng.random_range(1..=d);
        let b = self.upto(d - a);
        let forced = ExpMonomial::power(X, a).mul(&ExpMonomial::power(Y, b));
        let p = self.bivariate(d);
        let c = p.coefficient(&forced);
        p.sub(&ExpPoly::term(c, forced.clone())).add(&ExpPoly::term(self.nonzero(), forced))
    }
}

/// Deterministic random parameters for `recipe`. Recipes that need a
/// positive degree use at least 1.
pub fn random_spec(recipe: Recipe, seed: u64, degree_bound: u32) -> Result<RecipeSpec> {
    if degree_bound > DEFAULT_DEGREE_CAP {
        return Err(invalid(format!(
            "degree bound {degree_bound} exceeds the cap {DEFAULT_DEGREE_CAP}"
        )));
    }
    let mut r = Draw {
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    let bound = degree_bound.max(1);
    let params = match recipe {
        Recipe::TwoBlock => {
            let d1 = r.rng.random_range(1..=bound);
            let dq1 = r.lower_degree(d1);
            let e2 = r.upto(bound);
            let dp2 = r.lower_degree(e2);
            RecipeParams::TwoBlock {
                p1: r.univariate(Z, Some(d1)),
                q1: r.univariate(Z, dq1),
                p2: r.univariate(Z, dp2),
                q2: r.univariate(Z, Some(e2)),
            }
        }
        Recipe::CenterLift => {
            let extra = r.rng.random_range(1..=2);
            let mut f = vec![ExpPoly::one()];
            for _ in 0..extra {
                let e = r.rng.random_range(1..=bound);
                f.push(r.univariate(Y, Some(e)));
            }
            let g = (0..f.len())
                .map(|_| {
                    let e = r.upto(bound);
                    r.bivariate(e)
                })
                .collect();
            let mut k = vec![r.bivariate_with_x(bound)];
            if r.rng.random_bool(0.5) {
                let e = r.upto(bound);
                k.push(r.bivariate(e));
            }
            RecipeParams::CenterLift { f, g, k }
        }
        Recipe::Heisenberg => {
            let e = r.rng.random_range(1..=bound);
            RecipeParams::Heisenberg {
                h: r.univariate(Y, Some(e)),
            }
        }
        Recipe::SingleChain => {
            let n = r.rng.random_range(1..=bound);
            let phi = (0..n)
                .map(|_| {
                    let e = r.lower_degree(bound + 1);
                    r.univariate(Y, e)
                })
                .collect();
            RecipeParams::SingleChain { phi }
        }
        Recipe::NonabelianImage => {
            let n = r.rng.random_range(1..=bound.min(2));
            let f = (0..=n)
                .map(|_| {
                    let e = r.upto(bound);
                    r.bivariate(e)
                })
                .collect();
            let mut g = vec![r.bivariate_with_x(bound)];
            if r.rng.random_bool(0.5) {
                let e = r.upto(bound);
                g.push(r.bivariate(e));
            }
            RecipeParams::NonabelianImage { f, g }
        }
        Recipe::AbelianImage => {
            let count = r.rng.random_range(1..=3);
            let mut p = Vec::new();
            for i in 0..count {
                let (a, b) = loop {
                    let a = r.upto(bound);
                    let b = r.upto(bound - a);
                    if i > 0 || a + b > 0 {
                        break (a, b);
                    }
                };
                let m = ExpMonomial::power(X, a).mul(&ExpMonomial::power(Y, b));
                p.push(ExpPoly::term(r.nonzero(), m));
            }
            RecipeParams::AbelianImage {
                p0: ExpPoly::zero(),
                p,
            }
        }
        Recipe::Abelian(rank) => {
            let count = if rank == 3 { 0 } else { r.rng.random_range(0..=2) };
            let extra = (0..count)
                .map(|_| match rank {
                    1 => {
                        let e = r.upto(bound);
                        let mut a = ExpPoly::zero();
                        for i in 0..=e {
                            for j in 0..=e - i {
                                let m = ExpMonomial::power(Y, i).mul(&ExpMonomial::power(Z, j));
                                a = a.add(&ExpPoly::term(r.coef(), m));
                            }
                        }
                        (a, ExpPoly::zero())
                    }
                    _ => {
                        let (e1, e2) = (r.upto(bound), r.upto(bound));
                        (r.univariate(Z, Some(e1)), r.univariate(Z, Some(e2)))
                    }
                })
                .collect();
            RecipeParams::Abelian { rank, extra }
        }
    };
    Ok(RecipeSpec {
        recipe,
        seed: Some(seed),
        degree_bound,
        params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_field;

    fn fields(spec: &[&str]) -> Vec<VectorField> {
        let ctx = VariableContext::xyz();
        spec.iter().map(|s| parse_field(s, &ctx).unwrap()).collect()
    }

    #[test]
    fn heisenberg_build() {
        let b = build(&RecipeSpec::new(RecipeParams::Heisenberg {
            h: ExpPoly::var(Y).pow(2),
        }))
        .unwrap();
        assert_eq!(b.generators, fields(&["Dx", "y^2*Dx + x*Dz", "Dz"]));
        assert_eq!(b.expected.dim, Some(3));
        assert_eq!(b.expected.center_dim, Some(1));
    }

    #[test]
    fn center_lift_build() {
        let b = build(&RecipeSpec::new(RecipeParams::CenterLift {
            f: vec![ExpPoly::one(), ExpPoly::var(Y)],
            g: vec![ExpPoly::zero(), ExpPoly::zero()],
            k: vec![ExpPoly::var(X)],
        }))
        .unwrap();
        assert_eq!(b.generators, fields(&["Dx", "y*Dx", "x*Dz", "Dz"]));
        assert_eq!(b.expected.center_rank, Some(1));
        assert_eq!(b.expected.min_center_dim, Some(2));
    }

    #[test]
    fn abelian_rank_three_build() {
        let b = build(&random_spec(Recipe::Abelian(3), 5, 2).unwrap()).unwrap();
        assert_eq!(b.generators, fields(&["Dx", "Dy", "Dz"]));
        assert!(b.expected.abelian);
    }

    #[test]
    fn invalid_specs() {
        let bad = [
            RecipeParams::Heisenberg { h: ExpPoly::var(X) },
            RecipeParams::SingleChain { phi: vec![] },
            RecipeParams::TwoBlock {
                p1: ExpPoly::var(Z),
                q1: ExpPoly::var(Z).pow(2),
                p2: ExpPoly::zero(),
                q2: ExpPoly::one(),
            },
            RecipeParams::CenterLift {
                f: vec![ExpPoly::one()],
                g: vec![ExpPoly::zero()],
                k: vec![ExpPoly::var(X)],
            },
            RecipeParams::Abelian { rank: 4, extra: vec![] },
        ];
        for p in bad {
            assert!(matches!(build(&RecipeSpec::new(p)), Err(Error::InvalidSpec(_))));
        }
        assert!(random_spec(Recipe::TwoBlock, 0, DEFAULT_DEGREE_CAP + 1).is_err());
    }

    #[test]
    fn random_specs_are_reproducible() {
        for recipe in Recipe::ALL {
            for seed in 0..5 {
                assert_eq!(random_spec(recipe, seed, 2).unwrap(), random_spec(recipe, seed, 2).unwrap());
            }
        }
        assert_ne!(
            random_spec(Recipe::TwoBlock, 0, 3).unwrap(),
            random_spec(Recipe::TwoBlock, 1, 3).unwrap()
        );
    }

    #[test]
    fn two_block_degrees_follow_the_recipe() {
        let s = random_spec(Recipe::TwoBlock, 7, 3).unwrap();
        let RecipeParams::TwoBlock { p1, q1, p2, q2 } = &s.params else {
            unreachable!()
        };
        assert!(deg(p1) > deg(q1) && deg(p1) >= Some(1));
        assert!(deg(p2) < deg(q2));
    }

    #[test]
    fn recipe_names_round_trip() {
        for r in Recipe::ALL {
            assert_eq!(r.name().parse::<Recipe>().unwrap(), r);
        }
    }
}
