use super::{apply_rule, KernelError, Proof, SystemConfig};

/// Where and why a proof failed to check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    /// Premise indices from the root to the offending node.
    pub path: Vec<usize>,
    pub error: KernelError,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub ok: bool,
    pub failure: Option<CheckFailure>,
}

impl CheckReport {
    pub fn into_result(self) -> Result<(), KernelError> {
        match self.failure {
            None => Ok(()),
            Some(f) => Err(f.error),
        }
    }
}

fn check_node(p: &Proof, cfg: &SystemConfig, path: &[usize]) -> Result<(), KernelError> {
    if !cfg.admits_rule(p.rule) {
        return Err(KernelError::DisabledRule { rule: p.rule });
    }
    cfg.admits_sequent(&p.conclusion)
        .map_err(|source| KernelError::LanguageViolation {
            path: path.to_vec(),
            source,
        })?;
    if let Some(f) = &p.annotations.cut_formula {
        cfg.admits_formula(f)
            .map_err(|source| KernelError::LanguageViolation {
                path: path.to_vec(),
                source,
            })?;
    }
    let malformed = |reason: String| KernelError::MalformedNode {
        path: path.to_vec(),
        reason,
    };
    let expected = apply_rule(p.rule, &p.conclusion, &p.annotations).map_err(|e| match e {
        KernelError::NotApplicable(reason) => malformed(reason),
        other => other,
    })?;
    if expected.len() != p.premises.len() {
        return Err(malformed(format!(
            "{} needs {} premises, found {}",
            p.rule,
            expected.len(),
            p.premises.len()
        )));
    }
    for (i, (want, sub)) in expected.iter().zip(&p.premises).enumerate() {
        if *want != sub.conclusion {
            return Err(malformed(format!(
                "premise {i} of {} should conclude `{want}` but concludes `{}`",
                p.rule, sub.conclusion
            )));
        }
    }
    Ok(())
}

/// Checks every node of `p` under `cfg`. The first failing node in preorder
/// is reported.
pub fn check_proof(p: &Proof, cfg: &SystemConfig) -> CheckReport {
    // Explicit stack: machine-compiled proofs get deep.
    let mut stack: Vec<(&Proof, Vec<usize>)> = vec![(p, Vec::new())];
    while let Some((node, path)) = stack.pop() {
        if let Err(error) = check_node(node, cfg, &path) {
            return CheckReport {
                ok: false,
                failure: Some(CheckFailure { path, error }),
            };
        }
        for (i, sub) in node.premises.iter().enumerate().rev() {
            let mut child = path.clone();
            child.push(i);
            stack.push((sub, child));
        }
    }
    CheckReport {
        ok: true,
        failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Annotations, RuleId};
    use crate::syntax::{parse_sequent, LanguageId, Sequent};

    fn s(text: &str) -> Sequent {
        parse_sequent(text, LanguageId::L).unwrap()
    }

    fn leaf(rule: RuleId, text: &str, ann: Annotations) -> Proof {
        Proof {
            rule,
            conclusion: s(text),
            annotations: ann,
            premises: vec![],
        }
    }

    #[test]
    fn identity_checks_everywhere() {
        let p = leaf(RuleId::Id, "p |- p", Annotations::none());
        for (_, cfg) in SystemConfig::ALL {
            assert!(check_proof(&p, &cfg).ok);
        }
    }

    #[test]
    fn weakening_disabled_without_it() {
        let p = Proof {
            rule: RuleId::BangW,
            conclusion: s("!q, p |- p"),
            // atoms sort before `!`
            annotations: Annotations::principal(1),
            premises: vec![leaf(RuleId::Id, "p |- p", Annotations::none())],
        };
        assert!(check_proof(&p, &SystemConfig::CLL).ok);
        let report = check_proof(&p, &SystemConfig::CLLR);
        assert_eq!(
            report.failure.unwrap().error,
            KernelError::DisabledRule { rule: RuleId::BangW }
        );
    }

    #[test]
    fn premise_mismatch_reports_path() {
        let p = Proof {
            rule: RuleId::WithL0,
            conclusion: s("p & q |- p"),
            annotations: Annotations::principal(0),
            premises: vec![Proof {
                rule: RuleId::OneL,
                conclusion: s("1, q |- p"),
                annotations: Annotations::principal(0),
                premises: vec![leaf(RuleId::Id, "q |- q", Annotations::none())],
            }],
        };
        let report = check_proof(&p, &SystemConfig::CLL);
        let failure = report.failure.unwrap();
        assert_eq!(failure.path, Vec::<usize>::new());
        assert!(matches!(failure.error, KernelError::MalformedNode { .. }));
    }

    #[test]
    fn units_outside_reduced_language() {
        let p = leaf(RuleId::OneR, "|- 1", Annotations::principal(0));
        assert!(check_proof(&p, &SystemConfig::CLLR).ok);
        let report = check_proof(&p, &SystemConfig::CLLRR);
        assert!(!report.ok);
    }

    #[test]
    fn arity_enforced_for_intuitionistic() {
        let p = leaf(RuleId::TopR, "|- top, top", Annotations::principal(0));
        assert!(check_proof(&p, &SystemConfig::CLL).ok);
        let report = check_proof(&p, &SystemConfig::ILL);
        assert!(matches!(
            report.failure.unwrap().error,
            KernelError::LanguageViolation { .. }
        ));
    }
}
