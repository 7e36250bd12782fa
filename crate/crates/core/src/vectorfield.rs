//! Vector fields with [`ExpPoly`] coefficients, the Lie bracket, and
//! pushforward along polynomial coordinate changes.

use std::fmt;
use std::sync::Arc;

use crate::coeffring::{ExpPoly, Rational, DEFAULT_DEGREE_CAP, DEFAULT_NAMES, MAX_VARS};
use crate::error::{Error, Result};

/// Ordered list of one to three distinct variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableContext {
    names: Arc<[String]>,
}

impl VariableContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(Error::InvalidContext(format!(
                "expected 1 to {MAX_VARS} variables, got {}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            let valid = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || n == "exp" || n.starts_with('D') {
                return Err(Error::InvalidContext(format!("invalid variable name '{n}'")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidContext(format!("duplicate variable name '{n}'")));
            }
        }
        Ok(Self { names: names.into() })
    }

    /// The default context `(x, y, z)`.
    pub fn xyz() -> Self {
        Self::new(DEFAULT_NAMES).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The sub-context of the given variable positions, in order.
    pub fn restrict(&self, kept: &[usize]) -> Self {
        Self {
            names: kept.iter().map(|&i| self.names[i].clone()).collect(),
        }
    }

    pub(crate) fn ensure_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.names.join(","),
                right: other.names.join(","),
            })
        }
    }

    /// Symbol used for the basis field of variable `i`.
    pub(crate) fn direction_symbol(&self, i: usize) -> String {
        let n = &self.names[i];
        if n.len() == 1 {
            format!("D{n}")
        } else {
            format!("D[{n}]")
        }
    }
}

/// A vector field `Σ comps[i]·∂/∂vars[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorField {
    ctx: VariableContext,
    comps: Vec<ExpPoly>,
}

impl VectorField {
    /// Builds a field, checking that no coefficient mentions a variable outside the context.
    pub fn new(ctx: &VariableContext, comps: Vec<ExpPoly>) -> Result<Self> {
        if comps.len() != ctx.len() {
            return Err(Error::InvalidContext(format!(
                "expected {} components, got {}",
                ctx.len(),
                comps.len()
            )));
        }
        for c in &comps {
            if (ctx.len()..MAX_VARS).any(|v| c.depends_on(v)) {
                return Err(Error::InvalidContext(
                    "coefficient depends on a variable outside the context".into(),
                ));
            }
        }
        Ok(Self::from_components_unchecked(ctx.clone(), comps))
    }

    pub(crate) fn from_components_unchecked(ctx: VariableContext, comps: Vec<ExpPoly>) -> Self {
        debug_assert_eq!(ctx.len(), comps.len());
        Self { ctx, comps }
    }

    pub fn zero(ctx: &VariableContext) -> Self {
        Self::from_components_unchecked(ctx.clone(), vec![ExpPoly::zero(); ctx.len()])
    }

    /// The coordinate field ∂/∂var.
    pub fn partial(ctx: &VariableContext, var: usize) -> Self {
        Self::along(ctx, var, ExpPoly::one())
    }

    /// `coefficient·∂/∂var`.
    pub fn along(ctx: &VariableContext, var: usize, coefficient: ExpPoly) -> Self {
        let mut out = Self::zero(ctx);
        out.comps[var] = coefficient;
        out
    }

    pub fn ctx(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn components(&self) -> &[ExpPoly] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &ExpPoly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ExpPoly::is_zero)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.comps.iter().any(|c| c.depends_on(var))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map(ExpPoly::neg)
    }

    fn map(&self, f: impl Fn(&ExpPoly) -> ExpPoly) -> Self {
        Self::from_components_unchecked(self.ctx.clone(), self.comps.iter().map(f).collect())
    }

    fn zip(&self, other: &Self, f: impl Fn(&ExpPoly, &ExpPoly) -> ExpPoly) -> Self {
        assert_eq!(self.ctx, other.ctx, "vector fields from different contexts");
        Self::from_components_unchecked(
            self.ctx.clone(),
            self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        )
    }

    /// Componentwise sum. Panics if the contexts differ.
    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, ExpPoly::add)
    }

    /// Componentwise difference. Panics if the contexts differ.
    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, ExpPoly::sub)
    }

    /// Adds `c·other` in place. Panics if the contexts differ.
    pub fn add_scaled(&mut self, c: &Rational, other: &Self) {
        assert_eq!(self.ctx, other.ctx, "vector fields from different contexts");
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            a.add_scaled(c, b);
        }
    }

    /// Derivation action `Σ V_i·∂p/∂x_i`.
    pub fn apply(&self, p: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (i, vi) in self.comps.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            out = out.add(&vi.mul(&p.diff(i)));
        }
        out
    }

    fn apply_capped(&self, p: &ExpPoly, cap: u32) -> Result<ExpPoly> {
        let mut out = ExpPoly::zero();
        for (i, vi) in self.comps.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let d = p.diff(i);
            if d.is_zero() {
                continue;
            }
            out = out.add(&vi.mul_capped(&d, cap)?);
        }
        Ok(out)
    }

    /// Lie bracket `[self, other]` under the default degree cap.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.bracket_capped(other, DEFAULT_DEGREE_CAP)
    }

    /// Lie bracket; component `i` is `Σ_j (V_j·∂_j W_i − W_j·∂_j V_i)`.
    pub fn bracket_capped(&self, other: &Self, cap: u32) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        let mut comps = Vec::with_capacity(self.comps.len());
        for (vi, wi) in self.comps.iter().zip(&other.comps) {
            let forward = self.apply_capped(wi, cap)?;
            let backward = other.apply_capped(vi, cap)?;
            comps.push(forward.sub(&backward));
        }
        Ok(Self::from_components_unchecked(self.ctx.clone(), comps))
    }

    /// Transforms the field to the target coordinates of `change`.
    pub fn pushforward(&self, change: &CoordinateChange) -> Result<Self> {
        self.ctx.ensure_same(&change.source)?;
        let comps = change
            .forward
            .iter()
            .map(|f| self.apply(f).substitute(&change.inverse))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_components_unchecked(change.target.clone(), comps))
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ctx.names();
        let mut first = true;
        for (i, comp) in self.comps.iter().enumerate() {
            let symbol = self.ctx.direction_symbol(i);
            for (negative, magnitude, factors) in comp.printable_terms(names) {
                if first {
                    if negative {
                        f.write_str("-")?;
                    }
                    first = false;
                } else {
                    f.write_str(if negative { " - " } else { " + " })?;
                }
                if magnitude != "1" {
                    write!(f, "{magnitude}*")?;
                }
                if !factors.is_empty() {
                    write!(f, "{factors}*")?;
                }
                f.write_str(&symbol)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl serde::Serialize for VectorField {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An invertible polynomial change of coordinates with a caller-supplied inverse.
///
/// `forward[i]` gives new coordinate `i` in terms of the source variables;
/// `inverse[i]` gives old coordinate `i` in terms of the target variables.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateChange {
    source: VariableContext,
    target: VariableContext,
    forward: Vec<ExpPoly>,
    inverse: Vec<ExpPoly>,
}

impl CoordinateChange {
    /// Validates both compositions against the identity, exactly.
    pub fn new(
        source: &VariableContext,
        target: &VariableContext,
        forward: Vec<ExpPoly>,
        inverse: Vec<ExpPoly>,
    ) -> Result<Self> {
        let n = source.len();
        if target.len() != n || forward.len() != n || inverse.len() != n {
            return Err(Error::InvalidCoordinateChange(
                "source, target, forward and inverse must all have the same length".into(),
            ));
        }
        if !forward.iter().chain(&inverse).all(ExpPoly::is_polynomial) {
            return Err(Error::InvalidCoordinateChange(
                "coordinate changes must be polynomial".into(),
            ));
        }
        for i in 0..n {
            if forward[i].substitute(&inverse)? != ExpPoly::var(i) {
                return Err(Error::InvalidCoordinateChange(format!(
                    "forward∘inverse differs from the identity in coordinate {}",
                    target.name(i)
                )));
            }
            if inverse[i].substitute(&forward)? != ExpPoly::var(i) {
                return Err(Error::InvalidCoordinateChange(format!(
                    "inverse∘forward differs from the identity in coordinate {}",
                    source.name(i)
                )));
            }
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            forward,
            inverse,
        })
    }

    pub fn identity(ctx: &VariableContext) -> Self {
        let ids: Vec<_> = (0..ctx.len()).map(ExpPoly::var).collect();
        Self {
            source: ctx.clone(),
            target: ctx.clone(),
            forward: ids.clone(),
            inverse: ids,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            source: self.target.clone(),
            target: self.source.clone(),
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }

    pub fn source(&self) -> &VariableContext {
        &self.source
    }

    pub fn target(&self) -> &VariableContext {
        &self.target
    }

    pub fn forward(&self) -> &[ExpPoly] {
        &self.forward
    }

    pub fn inverse_map(&self) -> &[ExpPoly] {
        &self.inverse
    }
}
