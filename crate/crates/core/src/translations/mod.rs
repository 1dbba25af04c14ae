//! The unit-padding translations and the proof transformers built on them.
//!
//! `t_l`/`t_r` replace `!A` on the left by `!(A & 1)` and `?A` on the right
//! by `?(A + bot)`, so a weakening `!W` becomes a `1l` absorbed through `&`
//! and `!l`. The transformers turn proofs with weakening into proofs without
//! it and back again, and everything they produce goes through the kernel's
//! forward builders.

use thiserror::Error;

use crate::kernel::build::{
    apply_forward, bang_l, bang_r, bang_w, bot_l, bot_r, cut, id, lolli_l, lolli_r, neg_l,
    neg_r, one_l, one_r, par_l, par_r, plus_l, plus_r, quest_l, quest_r, quest_w, tensor_l,
    tensor_r, top_r, with_l, with_r, zero_l,
};
use crate::kernel::{check_proof, KernelError, Proof, RuleId, Side, SystemConfig};
use crate::syntax::{Formula, LanguageId, Multiset, Sequent, SyntaxError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TranslationId {
    /// Left translation on the full language.
    TL,
    /// Right translation on the full language.
    TR,
    /// The intuitionistic translation.
    TI,
}

impl TranslationId {
    pub fn from_name(name: &str) -> Option<TranslationId> {
        match name.to_ascii_lowercase().as_str() {
            "tl" | "l" => Some(TranslationId::TL),
            "tr" | "r" => Some(TranslationId::TR),
            "ti" | "t" | "i" => Some(TranslationId::TI),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslationError {
    #[error(transparent)]
    LanguageViolation(#[from] SyntaxError),
    #[error("input is not a valid {system} proof: {source}")]
    NotCLLProof {
        system: &'static str,
        #[source]
        source: KernelError,
    },
    #[error("input proof uses cut; the translated premises would not meet (t_r(A) against t_l(A))")]
    ContainsCut,
    #[error("proof concludes `{found}` but `{expected}` was expected")]
    RootMismatch { expected: Sequent, found: Sequent },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// `t_l`
pub fn tl(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        Atom(_) | One | Bot | Top | Zero => f.clone(),
        Neg(a) => Formula::neg(tr(a)),
        Tensor(a, b) => Formula::tensor(tl(a), tl(b)),
        Par(a, b) => Formula::par(tl(a), tl(b)),
        With(a, b) => Formula::with(tl(a), tl(b)),
        Plus(a, b) => Formula::plus(tl(a), tl(b)),
        Lolli(a, b) => Formula::lolli(tr(a), tl(b)),
        Bang(a) => Formula::bang(Formula::with(tl(a), One)),
        Quest(a) => Formula::quest(tl(a)),
    }
}

/// `t_r`
pub fn tr(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        Atom(_) | One | Bot | Top | Zero => f.clone(),
        Neg(a) => Formula::neg(tl(a)),
        Tensor(a, b) => Formula::tensor(tr(a), tr(b)),
        Par(a, b) => Formula::par(tr(a), tr(b)),
        With(a, b) => Formula::with(tr(a), tr(b)),
        Plus(a, b) => Formula::plus(tr(a), tr(b)),
        Lolli(a, b) => Formula::lolli(tl(a), tr(b)),
        Bang(a) => Formula::bang(tr(a)),
        Quest(a) => Formula::quest(Formula::plus(tr(a), Bot)),
    }
}

/// The intuitionistic `t`. Homomorphic except `t(!A) = !(t(A) & 1)`;
/// connectives outside the intuitionistic language are passed through.
pub fn ti(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        Atom(_) | One | Bot | Top | Zero => f.clone(),
        Neg(a) => Formula::neg(ti(a)),
        Tensor(a, b) => Formula::tensor(ti(a), ti(b)),
        Par(a, b) => Formula::par(ti(a), ti(b)),
        With(a, b) => Formula::with(ti(a), ti(b)),
        Plus(a, b) => Formula::plus(ti(a), ti(b)),
        Lolli(a, b) => Formula::lolli(ti(a), ti(b)),
        Bang(a) => Formula::bang(Formula::with(ti(a), One)),
        Quest(a) => Formula::quest(ti(a)),
    }
}

pub fn translate(f: &Formula, which: TranslationId) -> Result<Formula, TranslationError> {
    match which {
        TranslationId::TL => Ok(tl(f)),
        TranslationId::TR => Ok(tr(f)),
        TranslationId::TI => {
            LanguageId::LI.check(f)?;
            Ok(ti(f))
        }
    }
}

pub fn translate_multiset(ms: &Multiset, t: fn(&Formula) -> Formula) -> Multiset {
    ms.iter().map(t).collect()
}

fn built(p: Result<Proof, KernelError>) -> Proof {
    p.expect("translation proof step rejected by the kernel")
}

/// A proof of `t_l(A) |- t_r(A)` without weakening.
pub fn build_tl_tr_proof(a: &Formula) -> Proof {
    built(tl_tr(a))
}

fn tl_tr(a: &Formula) -> Result<Proof, KernelError> {
    use Formula::*;
    match a {
        Atom(_) | One | Bot | Top | Zero => Ok(id(a.clone())),
        Neg(b) => {
            let d = tl_tr(b)?;
            let d = neg_r(d, Formula::neg(tl(b)))?;
            neg_l(d, Formula::neg(tr(b)))
        }
        Tensor(b, c) => {
            let d = tensor_r(tl_tr(b)?, tl_tr(c)?, tr(a))?;
            tensor_l(d, tl(a))
        }
        Par(b, c) => {
            let d = par_l(tl_tr(b)?, tl_tr(c)?, tl(a))?;
            par_r(d, tr(a))
        }
        With(b, c) => {
            let d0 = with_l(tl_tr(b)?, 0, tl(a))?;
            let d1 = with_l(tl_tr(c)?, 1, tl(a))?;
            with_r(d0, d1, tr(a))
        }
        Plus(b, c) => {
            let d0 = plus_r(tl_tr(b)?, 0, tr(a))?;
            let d1 = plus_r(tl_tr(c)?, 1, tr(a))?;
            plus_l(d0, d1, tl(a))
        }
        Lolli(b, c) => {
            let d = lolli_l(tl_tr(b)?, tl_tr(c)?, tl(a))?;
            lolli_r(d, tr(a))
        }
        Bang(b) => {
            let d = with_l(tl_tr(b)?, 0, Formula::with(tl(b), One))?;
            let d = bang_l(d, tl(a))?;
            bang_r(d, tr(a))
        }
        Quest(b) => {
            let d = plus_r(tl_tr(b)?, 0, Formula::plus(tr(b), Bot))?;
            let d = quest_r(d, tr(a))?;
            quest_l(d, tl(a))
        }
    }
}

#[derive(Clone, Copy)]
enum Mode {
    Classical,
    Intuitionistic,
}

impl Mode {
    fn left(self, f: &Formula) -> Formula {
        match self {
            Mode::Classical => tl(f),
            Mode::Intuitionistic => ti(f),
        }
    }

    fn right(self, f: &Formula) -> Formula {
        match self {
            Mode::Classical => tr(f),
            Mode::Intuitionistic => ti(f),
        }
    }
}

/// `t[!G] |- 1` for a multiset of translated `!(X & 1)` formulas, by peeling
/// each one down to `1` and discarding it with `1l`.
fn discard_to_one(banged: &Multiset) -> Result<Proof, KernelError> {
    let mut d = one_r();
    for f in banged.iter() {
        let Formula::Bang(inner) = f else {
            unreachable!("promotion context is !-prefixed")
        };
        d = one_l(d)?;
        d = with_l(d, 1, (**inner).clone())?;
        d = bang_l(d, f.clone())?;
    }
    Ok(d)
}

fn transform(p: &Proof, mode: Mode) -> Result<Proof, TranslationError> {
    use RuleId::*;
    let concl = &p.conclusion;
    let principal = |side: Side| -> &Formula {
        let ms = match side {
            Side::Left => &concl.ante,
            Side::Right => &concl.succ,
        };
        ms.get(p.annotations.principal[0])
            .expect("checked proof has a valid principal index")
    };
    match p.rule {
        Id => {
            let a = &concl.ante.as_slice()[0];
            return Ok(match mode {
                Mode::Classical => build_tl_tr_proof(a),
                Mode::Intuitionistic => id(ti(a)),
            });
        }
        OneR => return Ok(one_r()),
        BotL => return Ok(bot_l()),
        TopR => {
            let rest = concl.succ.without_index(p.annotations.principal[0]);
            return Ok(top_r(
                concl.ante.iter().map(|f| mode.left(f)).collect(),
                rest.iter().map(|f| mode.right(f)).collect(),
            ));
        }
        ZeroL => {
            let rest = concl.ante.without_index(p.annotations.principal[0]);
            return Ok(zero_l(
                rest.iter().map(|f| mode.left(f)).collect(),
                concl.succ.iter().map(|f| mode.right(f)).collect(),
            ));
        }
        Cut => {
            return match mode {
                Mode::Classical => Err(TranslationError::ContainsCut),
                Mode::Intuitionistic => {
                    let a = p.annotations.cut_formula.as_ref().expect("cut formula");
                    let l = transform(&p.premises[0], mode)?;
                    let r = transform(&p.premises[1], mode)?;
                    Ok(cut(l, r, ti(a))?)
                }
            };
        }
        _ => {}
    }

    let premises = p
        .premises
        .iter()
        .map(|q| transform(q, mode))
        .collect::<Result<Vec<_>, _>>()?;
    let side = p.rule.principal_side().expect("logical rule");
    let f = principal(side);
    let f_t = match side {
        Side::Left => mode.left(f),
        Side::Right => mode.right(f),
    };
    let mut premises = premises.into_iter();
    let q = premises.next().expect("at least one premise");
    let out = match p.rule {
        BangW => {
            // `!(A & 1)` is discarded through its `1` component.
            let Formula::Bang(inner) = &f_t else { unreachable!() };
            let d = one_l(q)?;
            let d = with_l(d, 1, (**inner).clone())?;
            bang_l(d, f_t)?
        }
        BangL => {
            let Formula::Bang(inner) = &f_t else { unreachable!() };
            let d = with_l(q, 0, (**inner).clone())?;
            bang_l(d, f_t)?
        }
        QuestW => {
            let Formula::Quest(inner) = &f_t else { unreachable!() };
            let d = bot_r(q)?;
            let d = plus_r(d, 1, (**inner).clone())?;
            quest_r(d, f_t)?
        }
        QuestR if matches!(mode, Mode::Classical) => {
            let Formula::Quest(inner) = &f_t else { unreachable!() };
            let d = plus_r(q, 0, (**inner).clone())?;
            quest_r(d, f_t)?
        }
        BangR if matches!(mode, Mode::Intuitionistic) => {
            let Formula::Bang(inner) = &f_t else { unreachable!() };
            let ctx = q.conclusion.ante.clone();
            let d = with_r(q, discard_to_one(&ctx)?, (**inner).clone())?;
            bang_r(d, f_t)?
        }
        rule => {
            let mut all = vec![q];
            all.extend(premises);
            apply_forward(rule, all, f_t)?
        }
    };
    Ok(out)
}

/// Turns a cut-free proof of `G |- D` with weakening into a proof of
/// `t_l[G] |- t_r[D]` without weakening.
pub fn transform_cll_to_cllr(p: &Proof) -> Result<Proof, TranslationError> {
    check_proof(p, &SystemConfig::CLL)
        .into_result()
        .map_err(|source| TranslationError::NotCLLProof { system: "CLL", source })?;
    if p.uses(RuleId::Cut) {
        return Err(TranslationError::ContainsCut);
    }
    transform(p, Mode::Classical)
}

/// Turns an intuitionistic proof of `G |- C` into a weakening-free proof of
/// `t[G] |- t(C)`.
pub fn transform_ill_to_illr(p: &Proof) -> Result<Proof, TranslationError> {
    check_proof(p, &SystemConfig::ILL)
        .into_result()
        .map_err(|source| TranslationError::NotCLLProof { system: "ILL", source })?;
    transform(p, Mode::Intuitionistic)
}

/// Proofs of `A |- t_l(A)` and `t_r(A) |- A` with weakening.
pub fn build_expansion_proofs(a: &Formula) -> (Proof, Proof) {
    let (l, r) = built_pair(expansions(a));
    (l, r)
}

fn built_pair(p: Result<(Proof, Proof), KernelError>) -> (Proof, Proof) {
    p.expect("expansion proof step rejected by the kernel")
}

fn expansions(a: &Formula) -> Result<(Proof, Proof), KernelError> {
    use Formula::*;
    Ok(match a {
        Atom(_) | One | Bot | Top | Zero => (id(a.clone()), id(a.clone())),
        Neg(b) => {
            let (lb, rb) = expansions(b)?;
            // ~B |- ~t_r(B) from t_r(B) |- B
            let l = neg_r(neg_l(rb, a.clone())?, tl(a))?;
            // ~t_l(B) |- ~B from B |- t_l(B)
            let r = neg_r(neg_l(lb, tr(a))?, a.clone())?;
            (l, r)
        }
        Tensor(b, c) => {
            let (lb, rb) = expansions(b)?;
            let (lc, rc) = expansions(c)?;
            (
                tensor_l(tensor_r(lb, lc, tl(a))?, a.clone())?,
                tensor_l(tensor_r(rb, rc, a.clone())?, tr(a))?,
            )
        }
        Par(b, c) => {
            let (lb, rb) = expansions(b)?;
            let (lc, rc) = expansions(c)?;
            (
                par_r(par_l(lb, lc, a.clone())?, tl(a))?,
                par_r(par_l(rb, rc, tr(a))?, a.clone())?,
            )
        }
        With(b, c) => {
            let (lb, rb) = expansions(b)?;
            let (lc, rc) = expansions(c)?;
            (
                with_r(with_l(lb, 0, a.clone())?, with_l(lc, 1, a.clone())?, tl(a))?,
                with_r(with_l(rb, 0, tr(a))?, with_l(rc, 1, tr(a))?, a.clone())?,
            )
        }
        Plus(b, c) => {
            let (lb, rb) = expansions(b)?;
            let (lc, rc) = expansions(c)?;
            (
                plus_l(plus_r(lb, 0, tl(a))?, plus_r(lc, 1, tl(a))?, a.clone())?,
                plus_l(plus_r(rb, 0, a.clone())?, plus_r(rc, 1, a.clone())?, tr(a))?,
            )
        }
        Lolli(b, c) => {
            let (lb, rb) = expansions(b)?;
            let (lc, rc) = expansions(c)?;
            (
                lolli_r(lolli_l(rb, lc, a.clone())?, tl(a))?,
                lolli_r(lolli_l(lb, rc, tr(a))?, a.clone())?,
            )
        }
        Bang(b) => {
            let (lb, rb) = expansions(b)?;
            let padded = Formula::with(tl(b), One);
            let left = bang_l(lb, a.clone())?;
            let right = bang_w(one_r(), a.clone())?;
            let l = bang_r(with_r(left, right, padded)?, tl(a))?;
            let r = bang_r(bang_l(rb, tr(a))?, a.clone())?;
            (l, r)
        }
        Quest(b) => {
            let (lb, rb) = expansions(b)?;
            let l = quest_l(quest_r(lb, tl(a))?, a.clone())?;
            let from_b = quest_r(rb, a.clone())?;
            let from_bot = quest_w(bot_l(), a.clone())?;
            let r = plus_l(from_b, from_bot, Formula::plus(tr(b), Bot))?;
            let r = quest_l(r, tr(a))?;
            (l, r)
        }
    })
}

/// Proofs of `A |- t(A)` and `t(A) |- A` in the intuitionistic calculus.
pub fn build_ill_expansion_proofs(a: &Formula) -> Result<(Proof, Proof), TranslationError> {
    LanguageId::LI.check(a)?;
    Ok(built_pair(ill_expansions(a)))
}

fn ill_expansions(a: &Formula) -> Result<(Proof, Proof), KernelError> {
    use Formula::*;
    Ok(match a {
        Tensor(b, c) => {
            let (lb, rb) = ill_expansions(b)?;
            let (lc, rc) = ill_expansions(c)?;
            (
                tensor_l(tensor_r(lb, lc, ti(a))?, a.clone())?,
                tensor_l(tensor_r(rb, rc, a.clone())?, ti(a))?,
            )
        }
        With(b, c) => {
            let (lb, rb) = ill_expansions(b)?;
            let (lc, rc) = ill_expansions(c)?;
            (
                with_r(with_l(lb, 0, a.clone())?, with_l(lc, 1, a.clone())?, ti(a))?,
                with_r(with_l(rb, 0, ti(a))?, with_l(rc, 1, ti(a))?, a.clone())?,
            )
        }
        Plus(b, c) => {
            let (lb, rb) = ill_expansions(b)?;
            let (lc, rc) = ill_expansions(c)?;
            (
                plus_l(plus_r(lb, 0, ti(a))?, plus_r(lc, 1, ti(a))?, a.clone())?,
                plus_l(plus_r(rb, 0, a.clone())?, plus_r(rc, 1, a.clone())?, ti(a))?,
            )
        }
        Lolli(b, c) => {
            let (lb, rb) = ill_expansions(b)?;
            let (lc, rc) = ill_expansions(c)?;
            (
                lolli_r(lolli_l(rb, lc, a.clone())?, ti(a))?,
                lolli_r(lolli_l(lb, rc, ti(a))?, a.clone())?,
            )
        }
        Bang(b) => {
            let (lb, rb) = ill_expansions(b)?;
            let padded = Formula::with(ti(b), One);
            let left = bang_l(lb, a.clone())?;
            let right = bang_w(one_r(), a.clone())?;
            let l = bang_r(with_r(left, right, padded.clone())?, ti(a))?;
            let r = bang_l(with_l(rb, 0, padded)?, ti(a))?;
            let r = bang_r(r, a.clone())?;
            (l, r)
        }
        _ => (id(a.clone()), id(a.clone())),
    })
}

fn cut_back(
    p: &Proof,
    gamma: &Multiset,
    delta: &Multiset,
    left: fn(&Formula) -> Formula,
    right: fn(&Formula) -> Formula,
    expand: &dyn Fn(&Formula) -> (Proof, Proof),
) -> Result<Proof, TranslationError> {
    let expected = Sequent::new(translate_multiset(gamma, left), translate_multiset(delta, right));
    if p.conclusion != expected {
        return Err(TranslationError::RootMismatch {
            expected,
            found: p.conclusion.clone(),
        });
    }
    let mut acc = p.clone();
    for a in gamma.iter() {
        let (into, _) = expand(a);
        acc = cut(into, acc, left(a))?;
    }
    for d in delta.iter() {
        let (_, out_of) = expand(d);
        acc = cut(acc, out_of, right(d))?;
    }
    Ok(acc)
}

/// From a weakening-free proof of `t_l[G] |- t_r[D]`, a proof of `G |- D`
/// with weakening and cut.
pub fn reduce_back_to_cll(
    p: &Proof,
    gamma: &Multiset,
    delta: &Multiset,
) -> Result<Proof, TranslationError> {
    cut_back(p, gamma, delta, tl, tr, &build_expansion_proofs)
}

/// From a proof of `t[G] |- t(C)`, an intuitionistic proof of `G |- C`.
pub fn reduce_back_to_ill(p: &Proof, gamma: &Multiset, c: &Formula) -> Result<Proof, TranslationError> {
    for f in gamma.iter().chain(std::iter::once(c)) {
        LanguageId::LI.check(f)?;
    }
    cut_back(p, gamma, &Multiset::singleton(c.clone()), ti, ti, &|f| {
        built_pair(ill_expansions(f))
    })
}

/// Runs a proof of `G |- D` through the weakening-free system and back, and
/// reports whether both legs check with the expected conclusions.
pub fn round_trip_check(p: &Proof) -> Result<bool, TranslationError> {
    let s = &p.conclusion;
    let forward = transform_cll_to_cllr(p)?;
    if !check_proof(&forward, &SystemConfig::CLLR).ok {
        return Ok(false);
    }
    let back = reduce_back_to_cll(&forward, &s.ante, &s.succ)?;
    Ok(back.conclusion == *s && check_proof(&back, &SystemConfig::CLL).ok)
}

/// The intuitionistic counterpart of [`round_trip_check`].
pub fn ill_round_trip_check(p: &Proof) -> Result<bool, TranslationError> {
    let s = &p.conclusion;
    let forward = transform_ill_to_illr(p)?;
    if !check_proof(&forward, &SystemConfig::ILLR).ok {
        return Ok(false);
    }
    let c = s.succ.as_slice()[0].clone();
    let back = reduce_back_to_ill(&forward, &s.ante, &c)?;
    Ok(back.conclusion == *s && check_proof(&back, &SystemConfig::ILL).ok)
}
