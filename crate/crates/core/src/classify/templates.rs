//! Shape checks of a closed algebra against normal forms, in the given
//! coordinates only.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::coeffring::ExpPoly;
use crate::exactlinalg::dense::Subspace;
use crate::exactlinalg::generic_rank;
use crate::liealgebra::LieAlgebra;
use crate::vectorfield::VectorField;

use super::jordan::{degree, jordan_chains};

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Template {
    /// `⟨∂x, ∂y, ∂z⟩`.
    AbelianRank3,
    /// Abelian, `f(z)∂x + g(z)∂y`.
    AbelianRank2,
    /// Abelian, `f(y,z)∂x`.
    AbelianRank1,
    /// `⟨∂z⟩ ⋉ A` with `A` spanned by `P(z)∂x + Q(z)∂y` in two Jordan blocks.
    TwoBlockSemidirect,
    /// `⟨∂x, h(y)∂x + x∂z, ∂z⟩`.
    Heisenberg,
    /// `⟨∂x⟩ ⋉ ⟨(x^N + φ_1(y)x^{N−1} + … + φ_N(y))∂z⟩` with one Jordan block.
    SingleChain,
    /// `⟨∂x, ∂y + f_0∂z, y^i∂x + f_i∂z, g_j∂z⟩` with nonabelian image.
    NonabelianImage,
    /// `⟨∂x, ∂y + P_0∂z, P_i∂z⟩`.
    AbelianImage,
}

impl Template {
    pub const ALL: [Template; 8] = [
        Template::AbelianRank3,
        Template::AbelianRank2,
        Template::AbelianRank1,
        Template::TwoBlockSemidirect,
        Template::Heisenberg,
        Template::SingleChain,
        Template::NonabelianImage,
        Template::AbelianImage,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Template::AbelianRank3 => "abelian-rank-3",
            Template::AbelianRank2 => "abelian-rank-2",
            Template::AbelianRank1 => "abelian-rank-1",
            Template::TwoBlockSemidirect => "two-block-semidirect",
            Template::Heisenberg => "heisenberg",
            Template::SingleChain => "single-chain",
            Template::NonabelianImage => "nonabelian-image",
            Template::AbelianImage => "abelian-image",
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl serde::Serialize for Template {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl FromStr for Template {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Template::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Template::ALL.iter().map(|t| t.name()).collect();
                format!("unknown template '{s}'; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MatchReport {
    pub template: Template,
    pub matched: bool,
    pub failures: Vec<String>,
    pub details: BTreeMap<String, String>,
}

struct Checker<'a> {
    l: &'a LieAlgebra,
    failures: Vec<String>,
    details: BTreeMap<String, String>,
}

impl Checker<'_> {
    fn require(&mut self, ok: bool, what: impl Into<String>) -> bool {
        if !ok {
            self.failures.push(what.into());
        }
        ok
    }

    fn name(&self, i: usize) -> &str {
        self.l.ctx().name(i)
    }

    fn partial(&self, i: usize) -> VectorField {
        VectorField::partial(self.l.ctx(), i)
    }

    fn contains_partial(&mut self, i: usize) -> bool {
        let ok = self.l.contains(&self.partial(i));
        let msg = format!("D{} is not in the algebra", self.name(i));
        self.require(ok, msg)
    }

    /// Every basis element satisfies `pred`.
    fn all_basis(&mut self, what: &str, pred: impl Fn(&VectorField) -> bool) -> bool {
        let bad: Vec<String> = self.l.basis().iter().filter(|b| !pred(b)).map(|b| b.to_string()).collect();
        let ok = bad.is_empty();
        self.require(ok, format!("{what}: fails for {}", bad.join(", ")))
    }

    fn nonabelian(&mut self) -> bool {
        let ok = !self.l.is_abelian();
        self.require(ok, "the algebra is abelian")
    }

    fn abelian(&mut self) -> bool {
        let ok = self.l.is_abelian();
        self.require(ok, "the algebra is not abelian")
    }

    fn rank(&mut self, expected: usize) -> bool {
        let r = self.l.generic_rank();
        self.details.insert("rank".into(), r.to_string());
        self.require(r == expected, format!("rank is {r}, expected {expected}"))
    }

    /// The fields of `L` with zero components outside `dirs`, if they form a
    /// codimension-one abelian ideal.
    fn ideal_along(&mut self, dirs: &[usize]) -> Option<Subspace> {
        let n = self.l.ctx().len();
        let fields: Vec<VectorField> = self
            .l
            .basis()
            .iter()
            .filter(|b| (0..n).all(|i| dirs.contains(&i) || b.component(i).is_zero()))
            .cloned()
            .collect();
        let s = self.l.subspace_of(&fields).ok()?;
        let ok = s.dim() + 1 == self.l.dim() && self.l.is_ideal(&s) && self.l.is_abelian_subspace(&s);
        self.require(ok, "the fields along the fibre do not form an abelian ideal of codimension one")
            .then_some(s)
    }
}

fn only_depends_on(p: &ExpPoly, allowed: &[usize]) -> bool {
    (0..3).all(|v| allowed.contains(&v) || !p.depends_on(v))
}

fn fmt_degree(d: Option<u32>) -> String {
    d.map_or_else(|| "-inf".to_string(), |d| d.to_string())
}

/// Checks the basis of `l` against `template` without changing coordinates.
pub fn match_template(l: &LieAlgebra, template: Template) -> MatchReport {
    let mut c = Checker {
        l,
        failures: Vec::new(),
        details: BTreeMap::new(),
    };
    if l.ctx().len() != 3 {
        c.failures.push("templates need three variables".into());
    } else {
        match template {
            Template::AbelianRank3 => {
                c.abelian();
                c.rank(3);
                c.require(l.dim() == 3, format!("dimension is {}, expected 3", l.dim()));
                c.all_basis("constant coefficients", |b| b.components().iter().all(ExpPoly::is_constant));
            }
            Template::AbelianRank2 => {
                c.abelian();
                c.rank(2);
                c.all_basis("no z-component", |b| b.component(Z).is_zero());
                c.all_basis("coefficients depend on z only", |b| {
                    b.components().iter().all(|p| only_depends_on(p, &[Z]))
                });
            }
            Template::AbelianRank1 => {
                c.abelian();
                c.rank(1);
                c.all_basis("only an x-component", |b| b.component(Y).is_zero() && b.component(Z).is_zero());
                c.all_basis("coefficients depend on y and z only", |b| only_depends_on(b.component(X), &[Y, Z]));
            }
            Template::TwoBlockSemidirect => {
                c.nonabelian();
                two_block(&mut c)
            }
            Template::Heisenberg => heisenberg(&mut c),
            Template::SingleChain => single_chain(&mut c),
            Template::NonabelianImage => {
                image_shape(&mut c, |b| only_depends_on(b.component(X), &[Y]) && b.component(Y).is_constant());
                if let Ok(p) = l.project(&[X, Y]) {
                    c.require(!p.image.is_abelian(), "the image in (x, y) is abelian");
                }
            }
            Template::AbelianImage => {
                c.nonabelian();
                image_shape(&mut c, |b| b.component(X).is_constant() && b.component(Y).is_constant());
                if let Ok(p) = l.project(&[X, Y]) {
                    let ok = p.image.is_abelian() && generic_rank(p.image.basis()) == 2;
                    c.require(ok, "the image in (x, y) is not abelian of rank 2");
                }
            }
        }
    }
    MatchReport {
        template,
        matched: c.failures.is_empty(),
        failures: c.failures,
        details: c.details,
    }
}

fn two_block(c: &mut Checker) {
    let l = c.l;
    if !c.contains_partial(Z) {
        return;
    }
    c.all_basis("coefficients are polynomials in z", |b| {
        b.components().iter().all(|p| p.is_polynomial() && only_depends_on(p, &[Z]))
    });
    let Some(ideal) = c.ideal_along(&[X, Y]) else {
        return;
    };
    let Ok(d) = jordan_chains(l, &c.partial(Z), &ideal) else {
        c.failures.push("Dz does not act nilpotently on the ideal".into());
        return;
    };
    c.details.insert("chain_lengths".into(), format!("{:?}", d.lengths()));
    if !c.require(d.chains.len() == 2, format!("{} Jordan blocks, expected 2", d.chains.len())) {
        return;
    }
    let Some(heads) = d.normalized_heads.clone() else {
        c.failures.push("terminal vectors are not independent constant fields".into());
        return;
    };
    let (p, q) = (degree(heads[0].component(X)), degree(heads[0].component(Y)));
    let (r, s) = (degree(heads[1].component(X)), degree(heads[1].component(Y)));
    c.details.insert("head_1".into(), heads[0].to_string());
    c.details.insert("head_2".into(), heads[1].to_string());
    c.require(p > q, format!("first head has deg P = {} <= deg Q = {}", fmt_degree(p), fmt_degree(q)));
    c.require(r < s, format!("second head has deg R = {} >= deg S = {}", fmt_degree(r), fmt_degree(s)));
}

fn heisenberg(c: &mut Checker) {
    let l = c.l;
    c.require(l.dim() == 3, format!("dimension is {}, expected 3", l.dim()));
    if !(c.contains_partial(X) & c.contains_partial(Z)) || l.dim() != 3 {
        return;
    }
    let dx = c.partial(X);
    let dz = c.partial(Z);
    let known = l.subspace_of(&[dx, dz]).unwrap();
    let Some(w) = l.basis().iter().find(|b| !known.contains(&l.express(b).unwrap())) else {
        return;
    };
    // Remove constant ∂x, ∂z parts and scale the x∂z coefficient to 1.
    let zc = w.component(Z);
    let slope = zc.diff(X);
    let Some(slope) = slope.as_constant().filter(|s| !num_traits::Zero::is_zero(s)) else {
        c.failures.push(format!("{w} has no x*Dz term with constant coefficient"));
        return;
    };
    let w = w.scale(&(<crate::coeffring::Rational as num_traits::One>::one() / slope));
    let h = w.component(X).sub(&ExpPoly::constant(w.component(X).coefficient(&crate::ExpMonomial::one())));
    let rest = w.component(Z).sub(&ExpPoly::var(X));
    c.require(w.component(Y).is_zero(), format!("{w} has a y-component"));
    c.require(only_depends_on(&h, &[Y]), format!("the Dx coefficient of {w} depends on more than y"));
    c.require(rest.is_constant(), format!("the Dz coefficient of {w} is not x plus a constant"));
    c.details.insert("h".into(), if h.is_zero() { "0".into() } else { h.to_string() });
}

fn single_chain(c: &mut Checker) {
    let l = c.l;
    if !c.contains_partial(X) {
        return;
    }
    c.all_basis("coefficients are polynomials independent of z", |b| {
        b.components().iter().all(|p| p.is_polynomial() && only_depends_on(p, &[X, Y]))
    });
    let Some(ideal) = c.ideal_along(&[Z]) else {
        return;
    };
    let Ok(d) = jordan_chains(l, &c.partial(X), &ideal) else {
        c.failures.push("Dx does not act nilpotently on the ideal".into());
        return;
    };
    c.details.insert("chain_lengths".into(), format!("{:?}", d.lengths()));
    if !c.require(d.chains.len() == 1, format!("{} Jordan blocks, expected 1", d.chains.len())) {
        return;
    }
    let head = d.heads[0].component(Z);
    let n = head.degree_in(X);
    c.details.insert("head".into(), d.heads[0].to_string());
    c.require(
        n == Some(d.chains[0].len() as u32 - 1),
        format!("head has x-degree {}, expected {}", fmt_degree(n), d.chains[0].len() - 1),
    );
}

fn image_shape(c: &mut Checker, lifted: impl Fn(&VectorField) -> bool) {
    let l = c.l;
    c.contains_partial(X);
    c.contains_partial(Z);
    c.all_basis("coefficients independent of z", |b| b.components().iter().all(|p| !p.depends_on(Z)));
    c.all_basis("Dx and Dy coefficients of the required shape", &lifted);
    c.all_basis("Dz coefficients are polynomials", |b| b.component(Z).is_polynomial());
    if l.project(&[X, Y]).is_err() {
        c.failures.push("the projection to (x, y) is not defined".into());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealgebra::{close, Caps};
    use crate::parse::parse_field;
    use crate::vectorfield::VariableContext;

    fn alg(gens: &[&str]) -> LieAlgebra {
        let ctx = VariableContext::xyz();
        close(&gens.iter().map(|s| parse_field(s, &ctx).unwrap()).collect::<Vec<_>>(), Caps::default()).unwrap()
    }

    fn matches(l: &LieAlgebra) -> Vec<Template> {
        Template::ALL.into_iter().filter(|&t| match_template(l, t).matched).collect()
    }

    #[test]
    fn abelian_templates() {
        assert_eq!(matches(&alg(&["Dx", "Dy", "Dz"])), vec![Template::AbelianRank3]);
        assert_eq!(matches(&alg(&["Dx", "y*Dx", "(y + z^2)*Dx"])), vec![Template::AbelianRank1]);
        assert!(matches(&alg(&["Dx", "Dy", "z*Dx + z^3*Dy"])).contains(&Template::AbelianRank2));
    }

    #[test]
    fn heisenberg_template_reports_h() {
        let r = match_template(&alg(&["Dx", "y*Dx + x*Dz", "Dz"]), Template::Heisenberg);
        assert!(r.matched, "{:?}", r.failures);
        assert_eq!(r.details["h"], "y");
        let r = match_template(&alg(&["Dx", "y^2*Dx + x*Dz", "Dz"]), Template::Heisenberg);
        assert_eq!(r.details["h"], "y^2");
    }

    #[test]
    fn two_block_template() {
        let l = alg(&["Dz", "Dx", "Dy", "z*Dx", "z^2*Dx + z*Dy"]);
        let r = match_template(&l, Template::TwoBlockSemidirect);
        assert!(r.matched, "{:?}", r.failures);
        // Swapping the roles of x and y is absorbed by the normalization.
        let r = match_template(&alg(&["Dz", "Dx", "Dy", "z*Dy", "z^2*Dy + z*Dx"]), Template::TwoBlockSemidirect);
        assert!(r.matched, "{:?}", r.failures);
        assert!(!match_template(&alg(&["Dz", "Dx", "x*Dy"]), Template::TwoBlockSemidirect).matched);
        assert!(!match_template(&alg(&["Dx", "y*Dx + x*Dz", "Dz"]), Template::TwoBlockSemidirect).matched);
    }

    #[test]
    fn image_templates() {
        let single = alg(&["Dx", "(x^2 + y*x + y^2)*Dz"]);
        assert!(match_template(&single, Template::SingleChain).matched);
        let nonsplit = alg(&["Dx", "y*Dx", "Dy + (x^2 + y^2)*Dz", "(x + y)*Dz"]);
        let r = match_template(&nonsplit, Template::NonabelianImage);
        assert!(r.matched, "{:?}", r.failures);
        assert!(!match_template(&nonsplit, Template::AbelianImage).matched);
        let d = alg(&["Dx", "Dy + x*Dz"]);
        assert!(match_template(&d, Template::AbelianImage).matched);
    }

    #[test]
    fn template_names_round_trip() {
        for t in Template::ALL {
            assert_eq!(t.name().parse::<Template>().unwrap(), t);
        }
        assert!("nope".parse::<Template>().is_err());
    }
}
