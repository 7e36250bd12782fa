//! Recursive-descent parser for coefficient and vector-field expressions.
//!
//! ```text
//! expr    := ["-"] term (("+"|"-") term)*
//! term    := factor ("*" factor)*
//! factor  := rational | var | var "^" nat | "exp" "(" linform ")"
//!          | "(" expr ")" | D-symbol
//! linform := ["-"] [rational "*"] var (("+"|"-") [rational "*"] var)*
//! rational:= int ["/" nat]
//! ```
//!
//! D-symbols (`Dx`, `D[name]`) are only accepted when parsing vector fields,
//! and then every term must carry exactly one of them. Parenthesized groups
//! are coefficient expressions and may not contain D-symbols.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeffring::{ExpMonomial, ExpPoly, Rational, MAX_VARS};
use crate::error::ParseError;
use crate::vectorfield::{VariableContext, VectorField};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    StarStar,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number '{n}'"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::StarStar => "unknown operator '**'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().unwrap()), start));
                continue;
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' if bytes.get(i + 1) == Some(&b'*') => {
                i += 1;
                Tok::StarStar
            }
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            other => {
                return Err(ParseError {
                    position: start,
                    expected: vec!["expression".into()],
                    found: format!("character '{other}'"),
                })
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// One parsed product: scalar, monomial, and an optional D-symbol.
struct Product {
    coefficient: ExpPoly,
    direction: Option<usize>,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a [String],
    fields: bool,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            position: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn factor_expected(&self) -> Vec<&'static str> {
        if self.fields {
            vec!["rational", "variable", "exp", "'('", "D-symbol"]
        } else {
            vec!["rational", "variable", "exp", "'('"]
        }
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn direction_of(&mut self, ident: &str) -> Result<Option<usize>, ParseError> {
        if !self.fields || !ident.starts_with('D') {
            return Ok(None);
        }
        if ident == "D" && *self.peek() == Tok::LBracket {
            self.bump();
            let idx = match self.peek() {
                Tok::Ident(n) => self.var_index(n),
                _ => None,
            }
            .ok_or_else(|| self.error(&["variable"]))?;
            self.bump();
            if *self.peek() != Tok::RBracket {
                return Err(self.error(&["']'"]));
            }
            self.bump();
            return Ok(Some(idx));
        }
        Ok(self.var_index(&ident[1..]))
    }

    fn rational(&mut self, numer: BigInt) -> Result<Rational, ParseError> {
        if *self.peek() == Tok::Slash {
            self.bump();
            match self.peek().clone() {
                Tok::Int(d) if !d.is_zero() => {
                    self.bump();
                    Ok(Rational::new(numer, d))
                }
                _ => Err(self.error(&["nonzero natural number"])),
            }
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn linform(&mut self) -> Result<[Rational; MAX_VARS], ParseError> {
        let mut rates: [Rational; MAX_VARS] = Default::default();
        let mut sign = Rational::one();
        if *self.peek() == Tok::Minus {
            self.bump();
            sign = -sign;
        }
        loop {
            let mut coef = Rational::one();
            if let Tok::Int(n) = self.peek().clone() {
                self.bump();
                coef = self.rational(n)?;
                if *self.peek() != Tok::Star {
                    return Err(self.error(&["'*'"]));
                }
                self.bump();
            }
            let idx = match self.peek().clone() {
                Tok::Ident(name) => match self.var_index(&name) {
                    Some(i) => i,
                    None => return Err(self.error(&["variable"])),
                },
                _ => return Err(self.error(&["rational", "variable"])),
            };
            self.bump();
            rates[idx] += sign * coef;
            match self.peek() {
                Tok::Plus => sign = Rational::one(),
                Tok::Minus => sign = -Rational::one(),
                _ => break,
            }
            self.bump();
        }
        Ok(rates)
    }

    fn factor(&mut self, product: &mut Product) -> Result<(), ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let r = self.rational(n)?;
                product.coefficient = product.coefficient.scale(&r);
            }
            Tok::LParen => {
                self.bump();
                let fields = std::mem::replace(&mut self.fields, false);
                let group = self.expr(true);
                self.fields = fields;
                let mut sum = ExpPoly::zero();
                for (p, _) in group? {
                    sum = sum.add(&p.coefficient);
                }
                self.bump();
                product.coefficient = product.coefficient.mul(&sum);
            }
            Tok::Ident(name) if name == "exp" => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Err(self.error(&["'('"]));
                }
                self.bump();
                let rates = self.linform()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["')'", "'+'", "'-'"]));
                }
                self.bump();
                product.coefficient = product.coefficient.mul(&ExpPoly::exp_linear(rates));
            }
            Tok::Ident(name) => {
                let at = self.offset();
                self.bump();
                if let Some(var) = self.var_index(&name) {
                    let mut exponent = 1u32;
                    if *self.peek() == Tok::Caret {
                        self.bump();
                        match self.peek().clone() {
                            Tok::Int(n) => {
                                exponent = u32::try_from(n).map_err(|_| self.error(&["small natural number"]))?;
                                self.bump();
                            }
                            _ => return Err(self.error(&["natural number"])),
                        }
                    }
                    product.coefficient = product
                        .coefficient
                        .mul(&ExpPoly::term(Rational::one(), ExpMonomial::power(var, exponent)));
                } else if let Some(dir) = self.direction_of(&name)? {
                    if product.direction.is_some() {
                        return Err(ParseError {
                            position: at,
                            expected: vec!["at most one D-symbol per term".into()],
                            found: format!("identifier '{name}'"),
                        });
                    }
                    product.direction = Some(dir);
                } else {
                    self.pos -= 1;
                    return Err(self.error(&self.factor_expected()));
                }
            }
            _ => return Err(self.error(&self.factor_expected())),
        }
        Ok(())
    }

    fn term(&mut self) -> Result<(Product, usize), ParseError> {
        let start = self.offset();
        let mut product = Product {
            coefficient: ExpPoly::one(),
            direction: None,
        };
        self.factor(&mut product)?;
        while *self.peek() == Tok::Star {
            self.bump();
            self.factor(&mut product)?;
        }
        Ok((product, start))
    }

    /// A signed sum of terms; a nested sum ends at `)`, which is left unconsumed.
    fn expr(&mut self, nested: bool) -> Result<Vec<(Product, usize)>, ParseError> {
        let mut negate = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negate = true;
        }
        let mut out = Vec::new();
        loop {
            let (mut p, at) = self.term()?;
            if negate {
                p.coefficient = p.coefficient.neg();
            }
            out.push((p, at));
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                Tok::RParen if nested => break,
                Tok::End if !nested => break,
                _ => {
                    let close = if nested { "')'" } else { "end of input" };
                    return Err(self.error(&["'+'", "'-'", "'*'", close]));
                }
            }
            self.bump();
        }
        Ok(out)
    }
}

/// Parses a coefficient expression over the given variable names.
pub fn parse_poly(text: &str, names: &[String]) -> Result<ExpPoly, ParseError> {
    let mut parser = Parser {
        toks: tokenize(text)?,
        pos: 0,
        names,
        fields: false,
    };
    let mut out = ExpPoly::zero();
    for (p, _) in parser.expr(false)? {
        out = out.add(&p.coefficient);
    }
    Ok(out)
}

/// Parses a vector field such as `y*Dx + x^2*exp(y)*Dz`; `0` is the zero field.
pub fn parse_field(text: &str, ctx: &VariableContext) -> Result<VectorField, ParseError> {
    let names = ctx.names();
    let toks = tokenize(text)?;
    if matches!(toks.as_slice(), [(Tok::Int(n), _), (Tok::End, _)] if n.is_zero()) {
        return Ok(VectorField::zero(ctx));
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        names,
        fields: true,
    };
    let mut comps = vec![ExpPoly::zero(); ctx.len()];
    for (p, at) in parser.expr(false)? {
        let dir = p.direction.ok_or_else(|| ParseError {
            position: at,
            expected: vec!["D-symbol in every term".into()],
            found: "a term without a D-symbol".into(),
        })?;
        comps[dir] = comps[dir].add(&p.coefficient);
    }
    Ok(VectorField::from_components_unchecked(ctx.clone(), comps))
}
