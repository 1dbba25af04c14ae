//! Forward proof constructors.
//!
//! Each constructor takes premise proofs, computes the conclusion and the
//! annotations, and validates the new node with [`apply_rule`] before
//! returning it. Principal formulas are passed in their compound form.

use super::{apply_rule, Annotations, KernelError, Proof, RuleId, Split};
use crate::syntax::{Formula, Multiset, Sequent};

type Built = Result<Proof, KernelError>;

fn na(reason: impl Into<String>) -> KernelError {
    KernelError::NotApplicable(reason.into())
}

fn take(ms: &Multiset, f: &Formula, what: &str) -> Result<Multiset, KernelError> {
    ms.remove_one(f)
        .ok_or_else(|| na(format!("{what} does not contain `{f}`")))
}

/// Index of the last occurrence, so that earliest-first context picks never
/// collide with it.
fn last_index(ms: &Multiset, f: &Formula) -> usize {
    ms.position(f).expect("principal just inserted") + ms.count(f) - 1
}

fn pick_skipping(ms: &Multiset, sub: &Multiset, skip: Option<usize>) -> Vec<usize> {
    let mut used = vec![false; ms.len()];
    if let Some(i) = skip {
        used[i] = true;
    }
    let mut out: Vec<usize> = sub
        .iter()
        .map(|f| {
            let i = (0..ms.len())
                .find(|&i| !used[i] && ms.get(i) == Some(f))
                .expect("context is a sub-multiset of the conclusion");
            used[i] = true;
            i
        })
        .collect();
    out.sort_unstable();
    out
}

/// Validates a node and assembles it.
pub fn node(
    rule: RuleId,
    conclusion: Sequent,
    annotations: Annotations,
    premises: Vec<Proof>,
) -> Built {
    let expected = apply_rule(rule, &conclusion, &annotations)?;
    if expected.len() != premises.len() {
        return Err(na(format!(
            "{rule} needs {} premises, got {}",
            expected.len(),
            premises.len()
        )));
    }
    for (want, p) in expected.iter().zip(&premises) {
        if *want != p.conclusion {
            return Err(na(format!(
                "{rule}: premise should conclude `{want}`, got `{}`",
                p.conclusion
            )));
        }
    }
    Ok(Proof {
        rule,
        conclusion,
        annotations,
        premises,
    })
}

fn left_unary(rule: RuleId, p: Proof, f: Formula, remove: &[&Formula], remove_succ: &[&Formula]) -> Built {
    let mut ante = p.conclusion.ante.clone();
    for g in remove {
        ante = take(&ante, g, "antecedent")?;
    }
    let mut succ = p.conclusion.succ.clone();
    for g in remove_succ {
        succ = take(&succ, g, "succedent")?;
    }
    let ante = ante.with(f.clone());
    let i = last_index(&ante, &f);
    node(rule, Sequent::new(ante, succ), Annotations::principal(i), vec![p])
}

fn right_unary(rule: RuleId, p: Proof, f: Formula, remove: &[&Formula], remove_ante: &[&Formula]) -> Built {
    let mut succ = p.conclusion.succ.clone();
    for g in remove {
        succ = take(&succ, g, "succedent")?;
    }
    let mut ante = p.conclusion.ante.clone();
    for g in remove_ante {
        ante = take(&ante, g, "antecedent")?;
    }
    let succ = succ.with(f.clone());
    let i = last_index(&succ, &f);
    node(rule, Sequent::new(ante, succ), Annotations::principal(i), vec![p])
}

fn components(f: &Formula) -> Result<(&Formula, &Formula), KernelError> {
    match f {
        Formula::Tensor(a, b)
        | Formula::Par(a, b)
        | Formula::With(a, b)
        | Formula::Plus(a, b)
        | Formula::Lolli(a, b) => Ok((a, b)),
        _ => Err(na(format!("`{f}` is not a binary formula"))),
    }
}

fn body(f: &Formula) -> Result<&Formula, KernelError> {
    match f {
        Formula::Neg(a) | Formula::Bang(a) | Formula::Quest(a) => Ok(a),
        _ => Err(na(format!("`{f}` is not a unary formula"))),
    }
}

pub fn id(a: Formula) -> Proof {
    Proof {
        rule: RuleId::Id,
        conclusion: Sequent::from_vecs(vec![a.clone()], vec![a]),
        annotations: Annotations::none(),
        premises: vec![],
    }
}

/// `|- 1`
pub fn one_r() -> Proof {
    Proof {
        rule: RuleId::OneR,
        conclusion: Sequent::from_vecs(vec![], vec![Formula::One]),
        annotations: Annotations::principal(0),
        premises: vec![],
    }
}

/// `bot |-`
pub fn bot_l() -> Proof {
    Proof {
        rule: RuleId::BotL,
        conclusion: Sequent::from_vecs(vec![Formula::Bot], vec![]),
        annotations: Annotations::principal(0),
        premises: vec![],
    }
}

/// `gamma |- delta, top`
pub fn top_r(gamma: Multiset, delta: Multiset) -> Proof {
    let succ = delta.with(Formula::Top);
    let i = last_index(&succ, &Formula::Top);
    Proof {
        rule: RuleId::TopR,
        conclusion: Sequent::new(gamma, succ),
        annotations: Annotations::principal(i),
        premises: vec![],
    }
}

/// `0, gamma |- delta`
pub fn zero_l(gamma: Multiset, delta: Multiset) -> Proof {
    let ante = gamma.with(Formula::Zero);
    let i = last_index(&ante, &Formula::Zero);
    Proof {
        rule: RuleId::ZeroL,
        conclusion: Sequent::new(ante, delta),
        annotations: Annotations::principal(i),
        premises: vec![],
    }
}

pub fn bot_r(p: Proof) -> Built {
    right_unary(RuleId::BotR, p, Formula::Bot, &[], &[])
}

pub fn one_l(p: Proof) -> Built {
    left_unary(RuleId::OneL, p, Formula::One, &[], &[])
}

/// From `A, G |- D` to `G |- D, ~A`.
pub fn neg_r(p: Proof, f: Formula) -> Built {
    let a = body(&f)?.clone();
    right_unary(RuleId::NegR, p, f, &[], &[&a])
}

/// From `G |- D, A` to `~A, G |- D`.
pub fn neg_l(p: Proof, f: Formula) -> Built {
    let a = body(&f)?.clone();
    left_unary(RuleId::NegL, p, f, &[], &[&a])
}

pub fn tensor_l(p: Proof, f: Formula) -> Built {
    let (a, b) = components(&f)?;
    let (a, b) = (a.clone(), b.clone());
    left_unary(RuleId::TensorL, p, f, &[&a, &b], &[])
}

pub fn par_r(p: Proof, f: Formula) -> Built {
    let (a, b) = components(&f)?;
    let (a, b) = (a.clone(), b.clone());
    right_unary(RuleId::ParR, p, f, &[&a, &b], &[])
}

pub fn lolli_r(p: Proof, f: Formula) -> Built {
    let (a, b) = components(&f)?;
    let (a, b) = (a.clone(), b.clone());
    right_unary(RuleId::LolliR, p, f, &[&b], &[&a])
}

/// `&l_i`: the premise carries component `i` of `f`.
pub fn with_l(p: Proof, i: u8, f: Formula) -> Built {
    let (a, b) = components(&f)?;
    let (c, rule) = if i == 0 { (a.clone(), RuleId::WithL0) } else { (b.clone(), RuleId::WithL1) };
    left_unary(rule, p, f, &[&c], &[])
}

/// `+r_i`: the premise carries component `i` of `f`.
pub fn plus_r(p: Proof, i: u8, f: Formula) -> Built {
    let (a, b) = components(&f)?;
    let (c, rule) = if i == 0 { (a.clone(), RuleId::PlusR0) } else { (b.clone(), RuleId::PlusR1) };
    right_unary(rule, p, f, &[&c], &[])
}

pub fn with_r(p0: Proof, p1: Proof, f: Formula) -> Built {
    let (a, _) = components(&f)?;
    let a = a.clone();
    let succ = take(&p0.conclusion.succ, &a, "succedent")?.with(f.clone());
    let i = last_index(&succ, &f);
    let concl = Sequent::new(p0.conclusion.ante.clone(), succ);
    node(RuleId::WithR, concl, Annotations::principal(i), vec![p0, p1])
}

pub fn plus_l(p0: Proof, p1: Proof, f: Formula) -> Built {
    let (a, _) = components(&f)?;
    let a = a.clone();
    let ante = take(&p0.conclusion.ante, &a, "antecedent")?.with(f.clone());
    let i = last_index(&ante, &f);
    let concl = Sequent::new(ante, p0.conclusion.succ.clone());
    node(RuleId::PlusL, concl, Annotations::principal(i), vec![p0, p1])
}

/// Two-premise context-splitting rule. `first`/`second` are the premises'
/// contexts with their components already removed.
fn split_node(
    rule: RuleId,
    f: Formula,
    left_side: bool,
    first: (Multiset, Multiset),
    second: (Multiset, Multiset),
    premises: Vec<Proof>,
) -> Built {
    let mut ante = first.0.union(&second.0);
    let mut succ = first.1.union(&second.1);
    let (principal, skip_ante, skip_succ) = if left_side {
        ante = ante.with(f.clone());
        let i = last_index(&ante, &f);
        (i, Some(i), None)
    } else {
        succ = succ.with(f.clone());
        let i = last_index(&succ, &f);
        (i, None, Some(i))
    };
    let split = Split {
        ante: pick_skipping(&ante, &first.0, skip_ante),
        succ: pick_skipping(&succ, &first.1, skip_succ),
    };
    let ann = Annotations {
        principal: vec![principal],
        split: Some(split),
        cut_formula: None,
    };
    node(rule, Sequent::new(ante, succ), ann, premises)
}

/// From `G |- D, A` and `G' |- D', B` to `G, G' |- D, D', A * B`.
pub fn tensor_r(p0: Proof, p1: Proof, f: Formula) -> Built {
    let (a, b) = components(&f)?;
    let first = (p0.conclusion.ante.clone(), take(&p0.conclusion.succ, a, "succedent")?);
    let second = (p1.conclusion.ante.clone(), take(&p1.conclusion.succ, b, "succedent")?);
    split_node(RuleId::TensorR, f.clone(), false, first, second, vec![p0, p1])
}

/// From `A, G |- D` and `B, G' |- D'` to `A | B, G, G' |- D, D'`.
pub fn par_l(p0: Proof, p1: Proof, f: Formula) -> Built {
    let (a, b) = components(&f)?;
    let first = (take(&p0.conclusion.ante, a, "antecedent")?, p0.conclusion.succ.clone());
    let second = (take(&p1.conclusion.ante, b, "antecedent")?, p1.conclusion.succ.clone());
    split_node(RuleId::ParL, f.clone(), true, first, second, vec![p0, p1])
}

/// From `G |- D, A` and `B, G' |- D'` to `A -o B, G, G' |- D, D'`.
pub fn lolli_l(p0: Proof, p1: Proof, f: Formula) -> Built {
    let (a, b) = components(&f)?;
    let first = (p0.conclusion.ante.clone(), take(&p0.conclusion.succ, a, "succedent")?);
    let second = (take(&p1.conclusion.ante, b, "antecedent")?, p1.conclusion.succ.clone());
    split_node(RuleId::LolliL, f.clone(), true, first, second, vec![p0, p1])
}

pub fn bang_w(p: Proof, f: Formula) -> Built {
    body(&f)?;
    left_unary(RuleId::BangW, p, f, &[], &[])
}

pub fn bang_c(p: Proof, f: Formula) -> Built {
    body(&f)?;
    let g = f.clone();
    left_unary(RuleId::BangC, p, f, &[&g, &g], &[])
}

pub fn bang_l(p: Proof, f: Formula) -> Built {
    let a = body(&f)?.clone();
    left_unary(RuleId::BangL, p, f, &[&a], &[])
}

pub fn bang_r(p: Proof, f: Formula) -> Built {
    let a = body(&f)?.clone();
    right_unary(RuleId::BangR, p, f, &[&a], &[])
}

pub fn quest_w(p: Proof, f: Formula) -> Built {
    body(&f)?;
    right_unary(RuleId::QuestW, p, f, &[], &[])
}

pub fn quest_c(p: Proof, f: Formula) -> Built {
    body(&f)?;
    let g = f.clone();
    right_unary(RuleId::QuestC, p, f, &[&g, &g], &[])
}

pub fn quest_r(p: Proof, f: Formula) -> Built {
    let a = body(&f)?.clone();
    right_unary(RuleId::QuestR, p, f, &[&a], &[])
}

pub fn quest_l(p: Proof, f: Formula) -> Built {
    let a = body(&f)?.clone();
    left_unary(RuleId::QuestL, p, f, &[&a], &[])
}

/// Applies a one- or two-premise logical or structural rule forward with the
/// given principal formula (compound form). Axioms and cut are not covered.
pub fn apply_forward(rule: RuleId, premises: Vec<Proof>, f: Formula) -> Built {
    use RuleId::*;
    let n = premises.len();
    let mut it = premises.into_iter();
    let mut next = || it.next().ok_or_else(|| na(format!("{rule} is missing a premise")));
    let out = match rule {
        NegR => neg_r(next()?, f),
        NegL => neg_l(next()?, f),
        BotR => bot_r(next()?),
        OneL => one_l(next()?),
        TensorR => tensor_r(next()?, next()?, f),
        TensorL => tensor_l(next()?, f),
        WithR => with_r(next()?, next()?, f),
        WithL0 => with_l(next()?, 0, f),
        WithL1 => with_l(next()?, 1, f),
        ParR => par_r(next()?, f),
        ParL => par_l(next()?, next()?, f),
        PlusR0 => plus_r(next()?, 0, f),
        PlusR1 => plus_r(next()?, 1, f),
        PlusL => plus_l(next()?, next()?, f),
        LolliR => lolli_r(next()?, f),
        LolliL => lolli_l(next()?, next()?, f),
        BangW => bang_w(next()?, f),
        BangC => bang_c(next()?, f),
        BangR => bang_r(next()?, f),
        BangL => bang_l(next()?, f),
        QuestW => quest_w(next()?, f),
        QuestC => quest_c(next()?, f),
        QuestR => quest_r(next()?, f),
        QuestL => quest_l(next()?, f),
        Id | Cut | BotL | OneR | TopR | ZeroL => {
            return Err(na(format!("{rule} is not applied forward by principal formula")))
        }
    }?;
    if out.premises.len() != n {
        return Err(na(format!("{rule} takes {} premises, got {n}", out.premises.len())));
    }
    Ok(out)
}

/// Cuts `left` (ending in `G |- D, A`) against `right` (ending in
/// `A, G' |- D'`), giving `G, G' |- D, D'`.
pub fn cut(left: Proof, right: Proof, cut_formula: Formula) -> Built {
    let d = left.conclusion.succ.remove_one(&cut_formula).ok_or_else(|| {
        KernelError::CutMismatch(format!(
            "`{cut_formula}` is not in the succedent of `{}`",
            left.conclusion
        ))
    })?;
    let g2 = right.conclusion.ante.remove_one(&cut_formula).ok_or_else(|| {
        KernelError::CutMismatch(format!(
            "`{cut_formula}` is not in the antecedent of `{}`",
            right.conclusion
        ))
    })?;
    let g = &left.conclusion.ante;
    let ante = g.union(&g2);
    let succ = d.union(&right.conclusion.succ);
    let split = Split {
        ante: pick_skipping(&ante, g, None),
        succ: pick_skipping(&succ, &d, None),
    };
    let ann = Annotations {
        principal: vec![],
        split: Some(split),
        cut_formula: Some(cut_formula),
    };
    node(RuleId::Cut, Sequent::new(ante, succ), ann, vec![left, right])
}
