use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Annotations, Proof, RuleId, Split};
use crate::syntax::{parse_formula, parse_sequent, LanguageId, SyntaxError};

#[derive(Debug, Error)]
pub enum ProofFileError {
    #[error("invalid proof JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("bad sequent or formula `{text}`: {source}")]
    Syntax {
        text: String,
        #[source]
        source: SyntaxError,
    },
    #[error("rule {rule} takes no index, or the index does not match")]
    BadIndex { rule: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    rule: String,
    conclusion: String,
    #[serde(default)]
    principal: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    split: Option<(Vec<usize>, Vec<usize>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cut: Option<String>,
    #[serde(default)]
    premises: Vec<Record>,
}

fn to_record(p: &Proof) -> Record {
    Record {
        rule: p.rule.name().to_string(),
        conclusion: p.conclusion.to_string(),
        principal: p.annotations.principal.clone(),
        split: p
            .annotations
            .split
            .as_ref()
            .map(|s| (s.ante.clone(), s.succ.clone())),
        index: p.rule.choice_index(),
        cut: p.annotations.cut_formula.as_ref().map(|f| f.to_string()),
        premises: p.premises.iter().map(to_record).collect(),
    }
}

fn from_record(r: Record) -> Result<Proof, ProofFileError> {
    let rule = RuleId::from_name(&r.rule).ok_or_else(|| ProofFileError::UnknownRule(r.rule.clone()))?;
    if r.index != rule.choice_index() {
        return Err(ProofFileError::BadIndex { rule: r.rule });
    }
    let conclusion = parse_sequent(&r.conclusion, LanguageId::L).map_err(|source| ProofFileError::Syntax {
        text: r.conclusion.clone(),
        source,
    })?;
    let cut_formula = r
        .cut
        .map(|text| {
            parse_formula(&text, LanguageId::L).map_err(|source| ProofFileError::Syntax { text, source })
        })
        .transpose()?;
    let premises = r
        .premises
        .into_iter()
        .map(from_record)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Proof {
        rule,
        conclusion,
        annotations: Annotations {
            principal: r.principal,
            split: r.split.map(|(ante, succ)| Split { ante, succ }),
            cut_formula,
        },
        premises,
    })
}

/// Pretty-printed JSON with fields in the order `rule`, `conclusion`,
/// `principal`, `split`, `index`, `cut`, `premises`.
pub fn proof_to_json(p: &Proof) -> String {
    serde_json::to_string_pretty(&to_record(p)).expect("proof records always serialize")
}

/// Parses a proof file. The result is not checked; run the kernel on it.
pub fn proof_from_json(text: &str) -> Result<Proof, ProofFileError> {
    let mut de = serde_json::Deserializer::from_str(text);
    de.disable_recursion_limit();
    let record = Record::deserialize(&mut de)?;
    de.end()?;
    from_record(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::build::{cut, id, lolli_l, with_l};
    use crate::syntax::Formula;

    fn f(text: &str) -> Formula {
        parse_formula(text, LanguageId::L).unwrap()
    }

    #[test]
    fn round_trip_is_exact() {
        let p = lolli_l(id(f("p")), with_l(id(f("q")), 1, f("r & q")).unwrap(), f("p -o r & q")).unwrap();
        let p = cut(id(f("p")), p, f("p")).unwrap();
        let text = proof_to_json(&p);
        let back = proof_from_json(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(proof_to_json(&back), text);
        assert!(text.find("\"rule\"").unwrap() < text.find("\"conclusion\"").unwrap());
        assert!(text.contains("\"index\": 1"));
        assert!(text.contains("\"cut\": \"p\""));
    }

    #[test]
    fn rejects_unknown_rule_and_bad_index() {
        let bad = r#"{"rule": "weird", "conclusion": "p |- p"}"#;
        assert!(matches!(proof_from_json(bad), Err(ProofFileError::UnknownRule(_))));
        let bad = r#"{"rule": "id", "conclusion": "p |- p", "index": 0}"#;
        assert!(matches!(proof_from_json(bad), Err(ProofFileError::BadIndex { .. })));
        let bad = r#"{"rule": "id", "conclusion": "p |- |- p"}"#;
        assert!(matches!(proof_from_json(bad), Err(ProofFileError::Syntax { .. })));
    }
}
