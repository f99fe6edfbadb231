//! Set arguments: a JSON array literal, `@path` to a file holding one, or a
//! fixture name.

use std::fs;

use anyhow::{bail, Context, Result};
use mptq::fixtures::{self, Fixture};
use mptq::{AdditiveSet, FactoredNonzero, MultiplicativeSet};

fn read_text(arg: &str) -> Result<Option<String>> {
    if let Some(path) = arg.strip_prefix('@') {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        return Ok(Some(text));
    }
    if arg.trim_start().starts_with('[') {
        return Ok(Some(arg.to_string()));
    }
    Ok(None)
}

pub enum AnySet {
    Multiplicative(MultiplicativeSet),
    Additive(AdditiveSet),
}

/// Parse a set whose world is given by `additive`, or, for fixtures with
/// no explicit mode, by the fixture itself.
pub fn any_set(arg: &str, additive: Option<bool>) -> Result<AnySet> {
    if let Some(text) = read_text(arg)? {
        return Ok(if additive == Some(true) {
            AnySet::Additive(AdditiveSet::parse_json(&text)?)
        } else {
            AnySet::Multiplicative(MultiplicativeSet::parse_json(&text)?)
        });
    }
    let Some(fixture) = fixtures::named(arg) else {
        bail!(
            "`{arg}` is neither a JSON array, an @file, nor a fixture ({})",
            fixtures::NAMES.join(", ")
        );
    };
    Ok(match (fixture, additive) {
        (Fixture::Additive(b), None | Some(true)) => AnySet::Additive(b),
        (Fixture::Multiplicative(a), None | Some(false)) => AnySet::Multiplicative(a),
        (Fixture::Additive(_), Some(false)) => bail!("fixture `{arg}` is an additive set"),
        (Fixture::Multiplicative(_), Some(true)) => {
            bail!("fixture `{arg}` is a multiplicative set")
        }
    })
}

pub fn multiplicative(arg: &str) -> Result<MultiplicativeSet> {
    match any_set(arg, Some(false))? {
        AnySet::Multiplicative(a) => Ok(a),
        AnySet::Additive(_) => unreachable!(),
    }
}

pub fn additive(arg: &str) -> Result<AdditiveSet> {
    match any_set(arg, Some(true))? {
        AnySet::Additive(b) => Ok(b),
        AnySet::Multiplicative(_) => unreachable!(),
    }
}

pub fn number(arg: &str) -> Result<FactoredNonzero> {
    Ok(arg.trim().parse()?)
}

/// Comma-separated number literals.
pub fn numbers(arg: &str) -> Result<Vec<FactoredNonzero>> {
    arg.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(number)
        .collect()
}

/// A JSON array of number literals, as a sequence (order and duplicates
/// preserved).
pub fn sequence_file(path: &str) -> Result<Vec<FactoredNonzero>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let values: Vec<serde_json::Value> =
        serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
    values
        .iter()
        .map(|v| match v {
            serde_json::Value::String(s) => number(s),
            serde_json::Value::Number(n) => number(&n.to_string()),
            other => bail!("expected a number literal, found {other}"),
        })
        .collect()
}
