//! Instance files: `{"vars": [...], "J": [...], "a": [...], "field"?: "Q", "box"?: {...}}`.
//!
//! Monomials are objects `{name: exponent}`; ideals are arrays of monomials.

use std::collections::HashSet;
use std::path::Path;

use serde::Deserialize;

use super::wire::{ideal_from_wire, BoxWire, WireIdeal};
use crate::cech::DegreeBox;
use crate::error::{invalid, Result};
use crate::linalg::FieldSpec;
use crate::monomial::{Monomial, MonomialIdeal, MAX_VARS};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    vars: Vec<String>,
    #[serde(rename = "J", default)]
    j: WireIdeal,
    a: WireIdeal,
    field: Option<String>,
    #[serde(rename = "box")]
    degree_box: Option<BoxWire>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub names: Vec<String>,
    pub j: MonomialIdeal,
    pub a: MonomialIdeal,
    pub field: Option<FieldSpec>,
    pub degree_box: Option<DegreeBox>,
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = match serde_json::from_str(text) {
        Ok(f) => f,
        Err(e) => return invalid(format!("malformed instance file: {e}")),
    };
    check_names(&file.vars)?;
    let j = ideal_from_wire(&file.j, &file.vars)?;
    if !j.is_squarefree() {
        return invalid("J must be squarefree");
    }
    let a = ideal_from_wire(&file.a, &file.vars)?;
    let field = file.field.as_deref().map(str::parse).transpose()?;
    let degree_box = match file.degree_box {
        Some(b) => {
            let b = DegreeBox::new(b.lower, b.upper)?;
            if b.dim() != file.vars.len() {
                return invalid("box corners must have one entry per variable");
            }
            Some(b)
        }
        None => None,
    };
    Ok(Instance { names: file.vars, j, a, field, degree_box })
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    match std::fs::read_to_string(path) {
        Ok(text) => parse_instance(&text),
        Err(e) => invalid(format!("cannot read {}: {e}", path.display())),
    }
}

fn check_names(names: &[String]) -> Result<()> {
    if names.len() > MAX_VARS {
        return invalid(format!("at most {MAX_VARS} variables are supported"));
    }
    let mut seen = HashSet::new();
    for n in names {
        if n.is_empty() || n.contains(['*', '·', '^', ' ']) || n == "1" {
            return invalid(format!("bad variable name {n:?}"));
        }
        if !seen.insert(n) {
            return invalid(format!("variable {n:?} declared twice"));
        }
    }
    Ok(())
}

/// Parses `1`, `x`, `x*y^2` or `x·y^2`.
pub fn parse_monomial(text: &str, names: &[String]) -> Result<Monomial> {
    let mut exps = vec![0u32; names.len()];
    let text = text.trim();
    if text == "1" {
        return Ok(Monomial::new(exps));
    }
    for factor in text.split(['*', '·']) {
        let (name, e) = match factor.split_once('^') {
            Some((n, e)) => match e.trim().parse::<u32>() {
                Ok(e) => (n.trim(), e),
                Err(_) => return invalid(format!("bad exponent in {factor:?}")),
            },
            None => (factor.trim(), 1),
        };
        let Some(k) = names.iter().position(|n| n == name) else {
            return invalid(format!("unknown variable {name:?}"));
        };
        exps[k] = match exps[k].checked_add(e) {
            Some(v) => v,
            None => return invalid("exponent too large"),
        };
    }
    Ok(Monomial::new(exps))
}
