use nilvec_core::liealgebra::close_in;
use nilvec_core::parse::parse_field;
use nilvec_core::{Caps, Error, LieAlgebra, ParseError, VariableContext, VectorField};
use serde_json::json;

use crate::SessionArgs;

pub const DOMAIN: u8 = 1;
pub const USAGE: u8 = 2;

/// A failed command: exit code and the JSON written to standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub body: serde_json::Value,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: USAGE,
            body: json!({ "error": "usage", "message": message.into() }),
        }
    }

    pub fn parse(input: &str, e: &ParseError) -> Self {
        Self {
            code: USAGE,
            body: json!({
                "error": "parse",
                "message": e.to_string(),
                "input": input,
                "position": e.position,
                "expected": e.expected,
                "found": e.found,
            }),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let mut body = json!({ "error": e.kind(), "message": e.to_string() });
        if let Error::ClosureCapExceeded { kind, limit, dim, rounds } = &e {
            body["cap"] = json!({ "kind": kind, "limit": limit, "dim": dim, "rounds": rounds });
        }
        let code = if matches!(e, Error::Parse(_)) { USAGE } else { DOMAIN };
        Self { code, body }
    }
}

pub struct Session {
    pub ctx: VariableContext,
    pub caps: Caps,
    pub seed: u64,
    pub generators: Vec<VectorField>,
}

impl Session {
    pub fn new(args: &SessionArgs) -> Result<Self, Failure> {
        let names: Vec<&str> = args.vars.split(',').map(str::trim).collect();
        let ctx = VariableContext::new(names).map_err(|e| Failure::usage(e.to_string()))?;
        let mut texts: Vec<String> = args.generators.clone();
        if let Some(path) = &args.file {
            let content = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            for line in content.lines() {
                let line = line.split('#').next().unwrap_or("").trim();
                if !line.is_empty() {
                    texts.push(line.to_string());
                }
            }
        }
        let generators = texts
            .iter()
            .map(|t| parse_field(t, &ctx).map_err(|e| Failure::parse(t, &e)))
            .collect::<Result<Vec<_>, _>>()?;
        let caps = Caps {
            dim: usize::try_from(args.cap_dim).unwrap_or(usize::MAX),
            rounds: usize::try_from(args.cap_rounds).unwrap_or(usize::MAX),
            degree: args.degree_cap,
        };
        Ok(Self {
            ctx,
            caps,
            seed: args.seed,
            generators,
        })
    }

    pub fn generators(&self) -> Result<&[VectorField], Failure> {
        if self.generators.is_empty() {
            return Err(Failure::usage("no generators; pass --gen or --file"));
        }
        Ok(&self.generators)
    }

    pub fn algebra(&self) -> Result<LieAlgebra, Failure> {
        Ok(close_in(&self.ctx, self.generators()?, self.caps)?)
    }

    pub fn field(&self, text: &str) -> Result<VectorField, Failure> {
        parse_field(text, &self.ctx).map_err(|e| Failure::parse(text, &e))
    }

    /// Variable indices from a comma-separated list of names.
    pub fn variables(&self, list: &str) -> Result<Vec<usize>, Failure> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| {
                self.ctx
                    .index_of(name)
                    .ok_or_else(|| Failure::usage(format!("unknown variable '{name}'")))
            })
            .collect()
    }
}
