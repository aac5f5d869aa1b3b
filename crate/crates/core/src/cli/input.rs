//! The `{"variables": [...], "ideals": [[...], ...]}` input format.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, VarContext};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputSpec {
    pub ctx: VarContext,
    pub ideals: Vec<Vec<Monomial>>,
}

impl InputSpec {
    /// Generators of all ideals, in order.
    pub fn all_generators(&self) -> Vec<Monomial> {
        self.ideals.iter().flatten().cloned().collect()
    }
}

pub fn parse_input_str(text: &str) -> Result<InputSpec> {
    let v: Value = serde_json::from_str(text)?;
    parse_input_value(&v)
}

pub fn parse_input(path: &std::path::Path) -> Result<InputSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_input_str(&text)
}

/// True when `v` looks like an input spec rather than an exported complex.
pub fn is_input_spec(v: &Value) -> bool {
    v.get("ideals").is_some()
}

pub fn parse_input_value(v: &Value) -> Result<InputSpec> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Input("top level must be an object".into()))?;
    let vars = obj
        .get("variables")
        .ok_or_else(|| Error::Input("schema: `variables` is required".into()))?
        .as_array()
        .ok_or_else(|| Error::Input("schema: `variables` must be a list".into()))?;
    let names: Vec<&str> = vars
        .iter()
        .enumerate()
        .map(|(i, n)| {
            n.as_str()
                .ok_or_else(|| Error::Input(format!("variables[{i}]: expected a string")))
        })
        .collect::<Result<_>>()?;
    let ctx = VarContext::new(&names)?;
    let ideals_v = obj
        .get("ideals")
        .ok_or_else(|| Error::Input("schema: `ideals` is required".into()))?
        .as_array()
        .ok_or_else(|| Error::Input("schema: `ideals` must be a list".into()))?;
    if ideals_v.is_empty() {
        return Err(Error::Input("schema: at least one ideal is required".into()));
    }
    let mut ideals = Vec::with_capacity(ideals_v.len());
    for (i, ideal) in ideals_v.iter().enumerate() {
        let gens = ideal
            .as_array()
            .ok_or_else(|| Error::Input(format!("ideals[{i}]: expected a list")))?;
        if gens.is_empty() {
            return Err(Error::Input(format!("ideals[{i}]: no generators")));
        }
        let parsed = gens
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let s = g
                    .as_str()
                    .ok_or_else(|| Error::Input(format!("ideals[{i}][{j}]: expected a string")))?;
                ctx.parse(s).map_err(|e| Error::Input(format!("ideals[{i}][{j}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ideals.push(parsed);
    }
    Ok(InputSpec { ctx, ideals })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let spec = parse_input_str(r#"{"variables":["x","y"],"ideals":[["x^2","x*y","y^3"]]}"#).unwrap();
        assert_eq!(spec.ideals.len(), 1);
        assert_eq!(spec.ideals[0].len(), 3);

        let e = parse_input_str(r#"{"ideals":[["x"]]}"#).unwrap_err();
        assert!(e.to_string().contains("variables"), "{e}");
        let e = parse_input_str(r#"{"variables":["x","y"],"ideals":[["z"]]}"#).unwrap_err();
        assert!(e.to_string().contains("unknown variable `z`"), "{e}");
        assert!(parse_input_str(r#"{"variables":["x"],"ideals":[]}"#).is_err());
        assert!(parse_input_str("[1]").is_err());
    }
}
