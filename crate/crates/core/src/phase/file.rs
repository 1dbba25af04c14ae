use std::collections::BTreeMap;
use std::fmt::Write;

use super::{ElemSet, PhaseError, PhaseModel, PhaseSpace};

fn parse_err(line: usize, message: impl Into<String>) -> PhaseError {
    PhaseError::Parse {
        line,
        message: message.into(),
    }
}

fn element(line: usize, tok: &str, n: usize) -> Result<usize, PhaseError> {
    tok.strip_prefix('e')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|i| *i < n)
        .ok_or_else(|| parse_err(line, format!("bad element `{tok}`")))
}

fn subset(line: usize, text: &str, n: usize) -> Result<ElemSet, PhaseError> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| parse_err(line, "expected `{...}`"))?;
    let mut out = ElemSet::EMPTY;
    for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        out.insert(element(line, tok, n)?);
    }
    Ok(out)
}

/// Parses a model file:
///
/// ```text
/// elements 2
/// unit e0
/// row e0: e0 e1
/// row e1: e1 e0
/// bottom = {e1}
/// p = {e1}
/// ```
pub fn parse_model(text: &str) -> Result<PhaseModel, PhaseError> {
    let mut n: Option<usize> = None;
    let mut unit = None;
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut bottom = None;
    let mut valuation = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let need_n = || n.ok_or_else(|| parse_err(line, "`elements` must come first"));
        if let Some(rest) = content.strip_prefix("elements ") {
            if n.is_some() {
                return Err(parse_err(line, "`elements` given twice"));
            }
            let k = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| parse_err(line, format!("bad element count `{}`", rest.trim())))?;
            if k == 0 || k > super::MAX_ELEMENTS {
                return Err(parse_err(line, format!("element count {k} out of range")));
            }
            n = Some(k);
        } else if let Some(rest) = content.strip_prefix("unit ") {
            unit = Some(element(line, rest.trim(), need_n()?)?);
        } else if let Some(rest) = content.strip_prefix("row ") {
            let n = need_n()?;
            let (head, body) = rest.split_once(':').ok_or_else(|| parse_err(line, "expected `row eI: ...`"))?;
            let r = element(line, head.trim(), n)?;
            let vals = body
                .split_whitespace()
                .map(|t| element(line, t, n))
                .collect::<Result<Vec<_>, _>>()?;
            if vals.len() != n {
                return Err(parse_err(line, format!("row has {} entries, expected {n}", vals.len())));
            }
            if rows.insert(r, vals).is_some() {
                return Err(parse_err(line, format!("row e{r} given twice")));
            }
        } else if let Some((lhs, rhs)) = content.split_once('=') {
            let name = lhs.trim();
            let set = subset(line, rhs, need_n()?)?;
            if name == "bottom" {
                bottom = Some(set);
            } else {
                let ok = !name.is_empty()
                    && name.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '\''));
                if !ok {
                    return Err(parse_err(line, format!("bad atom name `{name}`")));
                }
                if valuation.insert(name.to_string(), set).is_some() {
                    return Err(parse_err(line, format!("atom `{name}` valued twice")));
                }
            }
        } else {
            return Err(parse_err(line, format!("cannot read `{content}`")));
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing `elements`"))?;
    if rows.len() != n {
        return Err(parse_err(0, format!("expected {n} rows, found {}", rows.len())));
    }
    let space = PhaseSpace::new(
        rows.into_values().collect(),
        unit.ok_or_else(|| parse_err(0, "missing `unit`"))?,
        bottom.ok_or_else(|| parse_err(0, "missing `bottom`"))?,
    )?;
    PhaseModel::new(space, valuation)
}

pub fn print_model(m: &PhaseModel) -> String {
    let s = &m.space;
    let mut out = String::new();
    writeln!(out, "elements {}", s.size()).unwrap();
    writeln!(out, "unit e{}", s.unit()).unwrap();
    for (i, row) in s.table().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("e{v}")).collect();
        writeln!(out, "row e{i}: {}", cells.join(" ")).unwrap();
    }
    writeln!(out, "bottom = {}", s.bottom()).unwrap();
    for (p, v) in &m.valuation {
        writeln!(out, "{p} = {v}").unwrap();
    }
    out
}
