//! Exact coefficient ring: finite ℚ-linear combinations of
//! `x^a·y^b·z^c·exp(λ₁x + λ₂y + λ₃z)` with rational rates.
//!
//! Terms live in a `BTreeMap` keyed by [`ExpMonomial`], so iteration order is the
//! canonical monomial order and zero coefficients are never stored.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Maximum number of variables in a context.
pub const MAX_VARS: usize = 3;

/// Default cap on the total polynomial degree of intermediate products.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

/// Default variable names, in canonical order.
pub const DEFAULT_NAMES: [&str; MAX_VARS] = ["x", "y", "z"];

pub(crate) fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
pub(crate) fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Formats a rational always as `p/q`, the form used in JSON reports.
pub fn format_rational_pq(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// A single basis function `x^a·y^b·z^c·exp(λ·(x,y,z))`.
///
/// Ordered lexicographically on `(expvec, powers)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpMonomial {
    expvec: [Rational; MAX_VARS],
    powers: [u32; MAX_VARS],
}

impl ExpMonomial {
    pub fn new(powers: [u32; MAX_VARS], expvec: [Rational; MAX_VARS]) -> Self {
        Self { expvec, powers }
    }

    /// The constant monomial `1`.
    pub fn one() -> Self {
        Self::new([0; MAX_VARS], Default::default())
    }

    pub fn power(var: usize, exponent: u32) -> Self {
        let mut powers = [0; MAX_VARS];
        powers[var] = exponent;
        Self::new(powers, Default::default())
    }

    pub fn powers(&self) -> &[u32; MAX_VARS] {
        &self.powers
    }

    pub fn expvec(&self) -> &[Rational; MAX_VARS] {
        &self.expvec
    }

    pub fn total_degree(&self) -> u32 {
        self.powers.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.powers.iter().all(|&p| p == 0) && self.is_polynomial()
    }

    /// True when the exponential factor is trivial.
    pub fn is_polynomial(&self) -> bool {
        self.expvec.iter().all(Zero::is_zero)
    }

    /// True if the monomial involves variable `var` either as a power or in the exponent.
    pub fn depends_on(&self, var: usize) -> bool {
        self.powers[var] > 0 || !self.expvec[var].is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut powers = self.powers;
        let mut expvec = self.expvec.clone();
        for i in 0..MAX_VARS {
            powers[i] += other.powers[i];
            if !other.expvec[i].is_zero() {
                expvec[i] = &expvec[i] + &other.expvec[i];
            }
        }
        Self { expvec, powers }
    }

    /// Moves variable `i` to position `mapping[i]`.
    ///
    /// Variables mapped to `None` must not occur in the monomial.
    pub(crate) fn remap(&self, mapping: &[Option<usize>; MAX_VARS]) -> Self {
        let mut out = Self::one();
        for (i, target) in mapping.iter().enumerate() {
            match target {
                Some(t) => {
                    out.powers[*t] = self.powers[i];
                    out.expvec[*t] = self.expvec[i].clone();
                }
                None => debug_assert!(!self.depends_on(i)),
            }
        }
        out
    }

    /// Renders the non-scalar factors, e.g. `x^2*y*exp(y)`; empty for the constant monomial.
    pub(crate) fn factors(&self, names: &[impl AsRef<str>]) -> String {
        let mut parts = Vec::new();
        for (i, &p) in self.powers.iter().enumerate() {
            match p {
                0 => {}
                1 => parts.push(names[i].as_ref().to_string()),
                _ => parts.push(format!("{}^{}", names[i].as_ref(), p)),
            }
        }
        if !self.is_polynomial() {
            parts.push(format!("exp({})", format_linear_form(&self.expvec, names)));
        }
        parts.join("*")
    }
}

fn format_linear_form(rates: &[Rational], names: &[impl AsRef<str>]) -> String {
    let mut out = String::new();
    for (i, rate) in rates.iter().enumerate() {
        if rate.is_zero() {
            continue;
        }
        let name = names[i].as_ref();
        let magnitude = rate.abs();
        let body = if magnitude.is_one() {
            name.to_string()
        } else {
            format!("{}*{}", format_rational(&magnitude), name)
        };
        if out.is_empty() {
            if rate.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if rate.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// An element of the coefficient ring in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpPoly {
    terms: BTreeMap<ExpMonomial, Rational>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, ExpMonomial::one())
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(q(n))
    }

    /// The coordinate function of variable `var`.
    pub fn var(var: usize) -> Self {
        Self::term(Rational::one(), ExpMonomial::power(var, 1))
    }

    /// `exp(Σ rates[i]·var_i)`.
    pub fn exp_linear(rates: [Rational; MAX_VARS]) -> Self {
        Self::term(Rational::one(), ExpMonomial::new([0; MAX_VARS], rates))
    }

    pub fn term(c: Rational, m: ExpMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// Builds a canonical element from an arbitrary term list, merging like terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (ExpMonomial, Rational)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: ExpMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpMonomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &ExpMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if this is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// True when no term carries an exponential factor.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(ExpMonomial::is_polynomial)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.depends_on(var))
    }

    /// Maximum total polynomial degree over the terms; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(ExpMonomial::total_degree).max()
    }

    /// Degree in one variable; `None` for zero (deg 0 = −∞).
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.powers[var]).max()
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    /// Adds `c·other` in place.
    pub fn add_scaled(&mut self, c: &Rational, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    /// Exact product without a degree cap.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Exact product; fails if any product term exceeds `cap` in total degree.
    pub fn mul_capped(&self, other: &Self, cap: u32) -> Result<Self> {
        if let (Some(a), Some(b)) = (self.total_degree(), other.total_degree()) {
            if a + b > cap {
                return Err(Error::DegreeCapExceeded { degree: a + b, cap });
            }
        }
        Ok(self.mul(other))
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..exponent {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to variable `var`.
    pub fn diff(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let a = m.powers[var];
            if a > 0 {
                let mut lowered = m.clone();
                lowered.powers[var] -= 1;
                out.add_term(lowered, c * q(a as i64));
            }
            let rate = &m.expvec[var];
            if !rate.is_zero() {
                out.add_term(m.clone(), c * rate);
            }
        }
        out
    }

    /// Floating-point value at `point`; used for sanity checks only.
    pub fn eval_approx(&self, point: [f64; MAX_VARS]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_f64().unwrap_or(f64::NAN);
                let mut rate = 0.0;
                for i in 0..MAX_VARS {
                    v *= point[i].powi(m.powers[i] as i32);
                    rate += m.expvec[i].to_f64().unwrap_or(f64::NAN) * point[i];
                }
                v * rate.exp()
            })
            .sum()
    }

    /// Substitutes `replacements[i]` for variable `i`.
    ///
    /// Variables beyond `replacements.len()` are left unchanged. A variable that
    /// occurs inside an exponential must be replaced by a linear polynomial with
    /// no constant term contribution to the exponent; anything else leaves the ring.
    pub fn substitute(&self, replacements: &[ExpPoly]) -> Result<Self> {
        let repl = |i: usize| -> ExpPoly {
            replacements.get(i).cloned().unwrap_or_else(|| ExpPoly::var(i))
        };
        let mut powers_cache: Vec<Vec<ExpPoly>> = vec![vec![ExpPoly::one()]; MAX_VARS];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut value = Self::constant(c.clone());
            for i in 0..MAX_VARS {
                let e = m.powers[i] as usize;
                if e == 0 {
                    continue;
                }
                let cache = &mut powers_cache[i];
                if cache.len() <= e {
                    let base = repl(i);
                    while cache.len() <= e {
                        let next = cache.last().unwrap().mul(&base);
                        cache.push(next);
                    }
                }
                value = value.mul(&cache[e]);
            }
            if !m.is_polynomial() {
                let mut rates: [Rational; MAX_VARS] = Default::default();
                let mut offset = Rational::zero();
                for i in 0..MAX_VARS {
                    let lambda = &m.expvec[i];
                    if lambda.is_zero() {
                        continue;
                    }
                    let r = repl(i);
                    let (constant, linear) = r.split_affine().ok_or_else(|| {
                        Error::SubstitutionOutsideRing(format!(
                            "variable {} occurs in an exponential but its replacement is not affine",
                            DEFAULT_NAMES[i]
                        ))
                    })?;
                    offset += lambda * constant;
                    for (j, coef) in linear.iter().enumerate() {
                        rates[j] += lambda * coef;
                    }
                }
                if !offset.is_zero() {
                    return Err(Error::SubstitutionOutsideRing(format!(
                        "the exponent acquires the constant {}, and exp of a nonzero rational is not representable",
                        format_rational(&offset)
                    )));
                }
                value = value.mul(&ExpPoly::exp_linear(rates));
            }
            out.add_scaled(&Rational::one(), &value);
        }
        Ok(out)
    }

    /// Splits an affine polynomial into constant and linear coefficients.
    fn split_affine(&self) -> Option<(Rational, [Rational; MAX_VARS])> {
        let mut constant = Rational::zero();
        let mut linear: [Rational; MAX_VARS] = Default::default();
        for (m, c) in &self.terms {
            if !m.is_polynomial() {
                return None;
            }
            match m.total_degree() {
                0 => constant = c.clone(),
                1 => {
                    let var = m.powers.iter().position(|&p| p == 1).unwrap();
                    linear[var] = c.clone();
                }
                _ => return None,
            }
        }
        Some((constant, linear))
    }

    /// Renames variable positions; dropped variables must not occur.
    pub(crate) fn remap(&self, mapping: &[Option<usize>; MAX_VARS]) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.remap(mapping), c.clone()))
                .collect(),
        }
    }

    /// Display adapter using the given variable names.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        DisplayPoly { poly: self, names }
    }

    /// Signed printable terms in display order: `(negative, magnitude_text)`.
    pub(crate) fn printable_terms(&self, names: &[impl AsRef<str>]) -> Vec<(bool, String, String)> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let factors = m.factors(names);
                (c.is_negative(), format_rational(&c.abs()), factors)
            })
            .collect()
    }
}

struct DisplayPoly<'a, S> {
    poly: &'a ExpPoly,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for DisplayPoly<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (negative, magnitude, factors)) in
            self.poly.printable_terms(self.names).into_iter().enumerate()
        {
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            match (magnitude.as_str(), factors.is_empty()) {
                (_, true) => f.write_str(&magnitude)?,
                ("1", false) => f.write_str(&factors)?,
                (_, false) => write!(f, "{magnitude}*{factors}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(&DEFAULT_NAMES).fmt(f)
    }
}

impl serde::Serialize for ExpPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<i64> for ExpPoly {
    fn from(n: i64) -> Self {
        ExpPoly::integer(n)
    }
}

impl From<Rational> for ExpPoly {
    fn from(c: Rational) -> Self {
        ExpPoly::constant(c)
    }
}
