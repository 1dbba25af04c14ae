use super::{Annotations, KernelError, RuleId, Side, Split};
use crate::syntax::{Formula, Multiset, Sequent};

fn na(reason: impl Into<String>) -> KernelError {
    KernelError::NotApplicable(reason.into())
}

struct Focus<'a> {
    index: usize,
    formula: &'a Formula,
    /// The principal side with the principal occurrence removed.
    rest: Multiset,
}

fn focus<'a>(
    rule: RuleId,
    side: Side,
    conclusion: &'a Sequent,
    ann: &Annotations,
) -> Result<Focus<'a>, KernelError> {
    let [index] = ann.principal[..] else {
        return Err(na(format!(
            "{rule} needs exactly one principal index, got {}",
            ann.principal.len()
        )));
    };
    let ms = match side {
        Side::Left => &conclusion.ante,
        Side::Right => &conclusion.succ,
    };
    let formula = ms
        .get(index)
        .ok_or_else(|| na(format!("principal index {index} out of range for {rule}")))?;
    Ok(Focus {
        index,
        formula,
        rest: ms.without_index(index),
    })
}

fn check_indices(indices: &[usize], len: usize, skip: Option<usize>, what: &str) -> Result<(), KernelError> {
    for w in indices.windows(2) {
        if w[0] >= w[1] {
            return Err(na(format!("{what} split indices must be strictly increasing")));
        }
    }
    for &i in indices {
        if i >= len {
            return Err(na(format!("{what} split index {i} out of range")));
        }
        if Some(i) == skip {
            return Err(na(format!("{what} split index {i} is the principal formula")));
        }
    }
    Ok(())
}

/// Divides one side of the conclusion into (first premise, second premise),
/// never handing out the occurrence at `skip`.
fn divide(ms: &Multiset, chosen: &[usize], skip: Option<usize>) -> (Multiset, Multiset) {
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (i, f) in ms.iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        if chosen.binary_search(&i).is_ok() {
            first.push(f.clone());
        } else {
            second.push(f.clone());
        }
    }
    (Multiset::from_vec(first), Multiset::from_vec(second))
}

fn require_split(rule: RuleId, ann: &Annotations) -> Result<&Split, KernelError> {
    ann.split
        .as_ref()
        .ok_or_else(|| na(format!("{rule} needs a context split")))
}

fn seq(ante: Multiset, succ: Multiset) -> Sequent {
    Sequent::new(ante, succ)
}

/// Reads `rule` backwards: the premises it needs to conclude `conclusion`
/// under the given annotations. Axioms yield no premises.
pub fn apply_rule(
    rule: RuleId,
    conclusion: &Sequent,
    ann: &Annotations,
) -> Result<Vec<Sequent>, KernelError> {
    use RuleId::*;

    if ann.split.is_some() && !rule.splits_context() {
        return Err(na(format!("{rule} does not split its context")));
    }
    if ann.cut_formula.is_some() && rule != Cut {
        return Err(na(format!("{rule} does not take a cut formula")));
    }

    let gamma = &conclusion.ante;
    let delta = &conclusion.succ;

    match rule {
        Id => {
            if !ann.principal.is_empty() {
                return Err(na("id takes no principal index"));
            }
            match (gamma.as_slice(), delta.as_slice()) {
                ([a], [b]) if a == b => Ok(vec![]),
                _ => Err(na("id needs a conclusion of the form A |- A")),
            }
        }
        Cut => {
            if !ann.principal.is_empty() {
                return Err(na("cut takes no principal index"));
            }
            let a = ann
                .cut_formula
                .as_ref()
                .ok_or_else(|| na("cut needs a cut formula"))?;
            let split = require_split(rule, ann)?;
            check_indices(&split.ante, gamma.len(), None, "antecedent")?;
            check_indices(&split.succ, delta.len(), None, "succedent")?;
            let (g1, g2) = divide(gamma, &split.ante, None);
            let (d1, d2) = divide(delta, &split.succ, None);
            Ok(vec![seq(g1, d1.with(a.clone())), seq(g2.with(a.clone()), d2)])
        }
        _ => {
            let side = rule.principal_side().expect("logical rule");
            let f = focus(rule, side, conclusion, ann)?;
            let wrong = || {
                na(format!(
                    "{rule} cannot have principal formula {}",
                    f.formula
                ))
            };
            // Context with the principal occurrence removed.
            let (g, d) = match side {
                Side::Left => (f.rest.clone(), delta.clone()),
                Side::Right => (gamma.clone(), f.rest.clone()),
            };
            match (rule, f.formula) {
                (NegR, Formula::Neg(a)) => Ok(vec![seq(g.with((**a).clone()), d)]),
                (NegL, Formula::Neg(a)) => Ok(vec![seq(g, d.with((**a).clone()))]),
                (BotR, Formula::Bot) => Ok(vec![seq(g, d)]),
                (BotL, Formula::Bot) => {
                    if g.is_empty() && d.is_empty() {
                        Ok(vec![])
                    } else {
                        Err(na("bot_l needs the conclusion bot |-"))
                    }
                }
                (OneR, Formula::One) => {
                    if g.is_empty() && d.is_empty() {
                        Ok(vec![])
                    } else {
                        Err(na("1r needs the conclusion |- 1"))
                    }
                }
                (OneL, Formula::One) => Ok(vec![seq(g, d)]),
                (TopR, Formula::Top) => Ok(vec![]),
                (ZeroL, Formula::Zero) => Ok(vec![]),
                (TensorR, Formula::Tensor(a, b)) => {
                    let split = require_split(rule, ann)?;
                    check_indices(&split.ante, gamma.len(), None, "antecedent")?;
                    check_indices(&split.succ, delta.len(), Some(f.index), "succedent")?;
                    let (g1, g2) = divide(gamma, &split.ante, None);
                    let (d1, d2) = divide(delta, &split.succ, Some(f.index));
                    Ok(vec![
                        seq(g1, d1.with((**a).clone())),
                        seq(g2, d2.with((**b).clone())),
                    ])
                }
                (TensorL, Formula::Tensor(a, b)) => Ok(vec![seq(
                    g.with_all([(**a).clone(), (**b).clone()]),
                    d,
                )]),
                (WithR, Formula::With(a, b)) => Ok(vec![
                    seq(g.clone(), d.with((**a).clone())),
                    seq(g, d.with((**b).clone())),
                ]),
                (WithL0, Formula::With(a, _)) => Ok(vec![seq(g.with((**a).clone()), d)]),
                (WithL1, Formula::With(_, b)) => Ok(vec![seq(g.with((**b).clone()), d)]),
                (ParR, Formula::Par(a, b)) => Ok(vec![seq(
                    g,
                    d.with_all([(**a).clone(), (**b).clone()]),
                )]),
                (ParL, Formula::Par(a, b)) => {
                    let split = require_split(rule, ann)?;
                    check_indices(&split.ante, gamma.len(), Some(f.index), "antecedent")?;
                    check_indices(&split.succ, delta.len(), None, "succedent")?;
                    let (g1, g2) = divide(gamma, &split.ante, Some(f.index));
                    let (d1, d2) = divide(delta, &split.succ, None);
                    Ok(vec![
                        seq(g1.with((**a).clone()), d1),
                        seq(g2.with((**b).clone()), d2),
                    ])
                }
                (PlusR0, Formula::Plus(a, _)) => Ok(vec![seq(g, d.with((**a).clone()))]),
                (PlusR1, Formula::Plus(_, b)) => Ok(vec![seq(g, d.with((**b).clone()))]),
                (PlusL, Formula::Plus(a, b)) => Ok(vec![
                    seq(g.with((**a).clone()), d.clone()),
                    seq(g.with((**b).clone()), d),
                ]),
                (LolliR, Formula::Lolli(a, b)) => Ok(vec![seq(
                    g.with((**a).clone()),
                    d.with((**b).clone()),
                )]),
                (LolliL, Formula::Lolli(a, b)) => {
                    let split = require_split(rule, ann)?;
                    check_indices(&split.ante, gamma.len(), Some(f.index), "antecedent")?;
                    check_indices(&split.succ, delta.len(), None, "succedent")?;
                    let (g1, g2) = divide(gamma, &split.ante, Some(f.index));
                    let (d1, d2) = divide(delta, &split.succ, None);
                    Ok(vec![
                        seq(g1, d1.with((**a).clone())),
                        seq(g2.with((**b).clone()), d2),
                    ])
                }
                (BangW, Formula::Bang(_)) => Ok(vec![seq(g, d)]),
                (BangC, Formula::Bang(_)) => Ok(vec![seq(
                    g.with_all([f.formula.clone(), f.formula.clone()]),
                    d,
                )]),
                (BangL, Formula::Bang(a)) => Ok(vec![seq(g.with((**a).clone()), d)]),
                (BangR, Formula::Bang(a)) => {
                    if !g.iter().all(Formula::is_bang) {
                        return Err(na("!r needs every antecedent formula to be !-prefixed"));
                    }
                    if !d.iter().all(Formula::is_quest) {
                        return Err(na("!r needs every other succedent formula to be ?-prefixed"));
                    }
                    Ok(vec![seq(g, d.with((**a).clone()))])
                }
                (QuestW, Formula::Quest(_)) => Ok(vec![seq(g, d)]),
                (QuestC, Formula::Quest(_)) => Ok(vec![seq(
                    g,
                    d.with_all([f.formula.clone(), f.formula.clone()]),
                )]),
                (QuestR, Formula::Quest(a)) => Ok(vec![seq(g, d.with((**a).clone()))]),
                (QuestL, Formula::Quest(a)) => {
                    if !g.iter().all(Formula::is_bang) {
                        return Err(na("?l needs every other antecedent formula to be !-prefixed"));
                    }
                    if !d.iter().all(Formula::is_quest) {
                        return Err(na("?l needs every succedent formula to be ?-prefixed"));
                    }
                    Ok(vec![seq(g.with((**a).clone()), d)])
                }
                _ => Err(wrong()),
            }
        }
    }
}
