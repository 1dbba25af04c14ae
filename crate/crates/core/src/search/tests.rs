use super::*;
use crate::phase::find_countermodel;
use crate::syntax::{parse_sequent, LanguageId};
use crate::testutil::arb_formula_over;
use proptest::prelude::*;

fn seq(t: &str) -> Sequent {
    parse_sequent(t, LanguageId::L).unwrap()
}

fn mall(t: &str) -> SearchResult {
    decide_mall(&seq(t)).unwrap()
}

#[test]
fn mall_examples() {
    assert!(mall("|- p -o p").is_proved());
    assert!(mall("|- 1").is_proved());
    assert_eq!(mall("|- 0"), SearchResult::Refuted);
    assert_eq!(mall("p + q |- p"), SearchResult::Refuted);
    assert_eq!(mall("p |- p * p"), SearchResult::Refuted);
    assert!(mall("p * q |- q * p").is_proved());
    assert!(mall("p & q, r |- (p * r) + s").is_proved());
    assert!(mall("|- p, ~p").is_proved());
    assert!(mall("p | q |- q | p").is_proved());
    assert!(mall("p, 0 |- q").is_proved());
    assert_eq!(mall("p, q |- p"), SearchResult::Refuted);
    assert_eq!(decide_mall(&seq("!p |- p")), Err(SearchError::NotMALL));
}

#[test]
fn exponential_search() {
    let b = SearchBudget::default();
    assert!(prove(&seq("p, p -o q |- q"), &SystemConfig::CLLRR, &b).is_proved());
    assert!(prove(&seq("!p |- p * p"), &SystemConfig::CLL, &b).is_proved());
    assert!(prove(&seq("!p, q |- q"), &SystemConfig::CLL, &b).is_proved());
    // without weakening the `!p` cannot go away
    assert!(!prove(&seq("!p, q |- q"), &SystemConfig::CLLR, &b).is_proved());
    assert!(prove(&seq("!p |- !p * !p"), &SystemConfig::ILL, &b).is_proved());
    assert!(prove(&seq("|- ?p | ?~p"), &SystemConfig::CLL, &b).is_proved());
    assert_eq!(prove(&seq("!p |- q"), &SystemConfig::CLL, &b), SearchResult::Exhausted);
    // single succedent is enforced
    assert!(!prove(&seq("|- p, ~p"), &SystemConfig::ILL, &b).is_proved());
}

#[test]
fn limits_are_not_refutations() {
    let tight = SearchBudget {
        max_depth: 2,
        ..SearchBudget::default()
    };
    assert_eq!(prove(&seq("p * q * r |- r * q * p"), &SystemConfig::MALL, &tight), SearchResult::Exhausted);
    let few = SearchBudget {
        max_nodes: 1,
        ..SearchBudget::default()
    };
    assert_eq!(prove(&seq("p * q |- q * p"), &SystemConfig::MALL, &few), SearchResult::Exhausted);
}

#[test]
fn proofs_check_in_weaker_systems() {
    let b = SearchBudget::default();
    for t in ["p, p -o q |- q", "p & q |- q", "!p |- !p * !p", "p * (q + r) |- (p * q) + (p * r)"] {
        let SearchResult::Proved(p) = prove(&seq(t), &SystemConfig::CLLRR, &b) else {
            panic!("{t}")
        };
        for cfg in [SystemConfig::CLLR, SystemConfig::CLL] {
            assert!(check_proof(&p, &cfg).ok);
            assert!(prove(&seq(t), &cfg, &b).is_proved());
        }
    }
}

fn leaves() -> Vec<Formula> {
    vec![Formula::atom("p"), Formula::atom("q"), Formula::One, Formula::Bot, Formula::Top, Formula::Zero]
}

fn mall_formula() -> impl Strategy<Value = Formula> {
    arb_formula_over(leaves()).prop_filter("no exponentials", |f| !f.is_bang() && !f.is_quest() && {
        let cs = f.connectives();
        !cs.contains(&Connective::Bang) && !cs.contains(&Connective::Quest)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn countermodels_rule_out_proofs(a in mall_formula(), b in mall_formula()) {
        let s = Sequent::from_vecs(vec![a], vec![b]);
        prop_assume!(s.size() <= 12);
        let out = decide_mall(&s).unwrap();
        prop_assert_ne!(&out, &SearchResult::Exhausted);
        if find_countermodel(&s, 2).is_some() {
            prop_assert_eq!(out, SearchResult::Refuted);
        }
    }
}
