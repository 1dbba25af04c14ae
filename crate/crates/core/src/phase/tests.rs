use super::*;
use crate::kernel::{check_proof, SystemConfig};
use crate::machine::loop_machine;
use crate::syntax::{parse_formula, parse_sequent, LanguageId};
use crate::testutil::arb_formula_over;
use crate::translations::{build_expansion_proofs, build_tl_tr_proof};
use proptest::prelude::*;

fn f(t: &str) -> Formula {
    parse_formula(t, LanguageId::L).unwrap()
}

fn seq(t: &str) -> Sequent {
    parse_sequent(t, LanguageId::L).unwrap()
}

fn z2(bottom: u64) -> PhaseSpace {
    PhaseSpace::new(vec![vec![0, 1], vec![1, 0]], 0, ElemSet(bottom)).unwrap()
}

fn trivial(bottom: u64) -> PhaseSpace {
    PhaseSpace::new(vec![vec![0]], 0, ElemSet(bottom)).unwrap()
}

fn model(space: PhaseSpace, vals: &[(&str, u64)]) -> PhaseModel {
    PhaseModel::new(space, vals.iter().map(|(p, v)| (p.to_string(), ElemSet(*v))).collect()).unwrap()
}

#[test]
fn negation_basics() {
    let s = trivial(0);
    assert_eq!(s.lin_neg(ElemSet::EMPTY), s.all());
    assert_eq!(s.lin_neg(ElemSet(1)), ElemSet::EMPTY);
    let s = z2(0b10);
    assert_eq!(s.lin_neg(ElemSet(0b10)), ElemSet(0b01));
    assert_eq!(s.closure(ElemSet(0b10)), ElemSet(0b10));
    assert_eq!(s.closure(s.all()), s.all());
}

#[test]
fn validation() {
    assert!(matches!(PhaseSpace::new(vec![], 0, ElemSet::EMPTY), Err(PhaseError::BadSize(0))));
    assert!(matches!(
        PhaseSpace::new(vec![vec![0, 1], vec![0, 0]], 0, ElemSet::EMPTY),
        Err(PhaseError::NotCommutative(..))
    ));
    assert!(matches!(
        PhaseSpace::new(vec![vec![1, 0], vec![0, 1]], 0, ElemSet::EMPTY),
        Err(PhaseError::NotUnit(0))
    ));
    // 1*1 = 2, 1*2 = 0, 2*2 = 0 on {0,1,2}: (1*1)*2 = 0 but 1*(1*2) = 0 * 1 = 1
    let t = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 0]];
    assert!(matches!(PhaseSpace::new(t, 0, ElemSet::EMPTY), Err(PhaseError::NotAssociative(..))));
    assert!(matches!(
        PhaseModel::new(z2(0), [("p".to_string(), ElemSet(0b01))].into()),
        Err(PhaseError::NotAFact(_))
    ));
}

#[test]
fn constants() {
    let m = model(z2(0b10), &[]);
    assert_eq!(m.interpret(&Formula::One).unwrap(), m.space.closure(ElemSet(1)));
    assert_eq!(m.interpret(&Formula::Top).unwrap(), ElemSet(0b11));
    assert_eq!(m.interpret(&Formula::Bot).unwrap(), ElemSet(0b10));
    assert!(m.is_true(&Formula::One).unwrap());
    assert!(m.is_true(&Formula::Top).unwrap());
    assert_eq!(m.interpret(&f("p")), Err(PhaseError::UnboundAtom("p".into())));
    // in Z2 both elements are in ~~{1}, only the unit is idempotent
    assert_eq!(m.space.idempotents(), ElemSet(1));
}

#[test]
fn hand_checked_countermodels() {
    let m = model(trivial(0), &[]);
    assert!(!m.sequent_holds(&seq("|- 0")).unwrap());
    let m = model(trivial(0), &[("p", 0), ("q", 1)]);
    assert!(!m.sequent_holds(&seq("p + q |- p")).unwrap());
    let m = model(z2(0b10), &[("p", 0b10)]);
    assert!(!m.sequent_holds(&seq("p |- p * p")).unwrap());
    assert!(m.sequent_holds(&seq("p |- p")).unwrap());
}

#[test]
fn empty_folds() {
    let m = model(z2(0b10), &[]);
    assert_eq!(m.tensor_fold(&Multiset::new()).unwrap(), m.interpret(&Formula::One).unwrap());
    assert_eq!(m.par_fold(&Multiset::new()).unwrap(), ElemSet(0b10));
    // `|- ` holds iff 1 is in bot
    assert!(!m.sequent_holds(&seq("|-")).unwrap());
    assert!(model(trivial(1), &[]).sequent_holds(&seq("|-")).unwrap());
}

#[test]
fn countermodel_search() {
    let cm = find_countermodel(&seq("p |- p * p"), 2).expect("found at size 2");
    assert!(cm.space.size() <= 2);
    assert!(!cm.sequent_holds(&seq("p |- p * p")).unwrap());
    assert!(find_countermodel(&seq("p |- p"), 3).is_none());
    assert!(find_countermodel(&seq("|- 1"), 3).is_none());
    assert!(find_countermodel(&seq("|- 0"), 1).is_some());
    let opts = CountermodelOptions {
        max_size: 4,
        seed: 7,
        jobs: 4,
        ..CountermodelOptions::default()
    };
    let s = seq("!p |- p * p * p");
    let one = find_countermodel_with(&s, &CountermodelOptions { jobs: 1, ..opts.clone() });
    assert_eq!(find_countermodel_with(&s, &opts), one);
}

#[test]
fn generation() {
    let spaces = generate_spaces(0, 1);
    assert_eq!(spaces.len(), 2);
    assert_eq!(spaces.iter().map(|s| s.bottom()).collect::<Vec<_>>(), vec![ElemSet(0), ElemSet(1)]);
    // Z2 and the two-element chain, four bottoms each
    let twos = generate_spaces(0, 2).len() - 2;
    assert_eq!(twos, 2 * 4);
    let all = generate_spaces(3, 6);
    assert_eq!(all, generate_spaces(3, 6));
    assert!(all.iter().any(|s| s.size() == 6));
    let atoms = vec!["p".to_string(), "q".to_string()];
    for m in generate_models(1, 4, &atoms).step_by(97) {
        assert!(PhaseModel::new(m.space.clone(), m.valuation.clone()).is_ok());
        assert_eq!(m.valuation.len(), 2);
    }
}

#[test]
fn identity_laws_everywhere() {
    let atoms = vec!["p".to_string()];
    for m in generate_models(0, 3, &atoms) {
        assert!(m.is_true(&f("p -o p")).unwrap());
        assert!(m.sequent_holds(&seq("p |- p")).unwrap());
    }
}

#[test]
fn product_inclusion_cases() {
    let m = model(z2(0b10), &[("p", 0b10), ("q", 0b01)]);
    let g = Multiset::new();
    assert!(m.product_inclusion(&g, &[f("p")], &f("p")).unwrap());
    // {g}{g} = {e} is not inside [p] = {g}
    assert!(!m.product_inclusion(&g, &[f("p"), f("p")], &f("p")).unwrap());
    assert!(m.product_inclusion(&g, &[f("p"), f("p -o q")], &f("q")).unwrap());
    assert_eq!(
        m.product_inclusion(&Multiset::singleton(f("p")), &[f("q")], &f("q")),
        Err(PhaseError::HypothesisNotTrue(f("p")))
    );
    assert_eq!(m.product_inclusion(&g, &[], &f("q")), Err(PhaseError::EmptyProduct));
}

#[test]
fn model_files() {
    let m = model(z2(0b10), &[("p", 0b10), ("q'", 0b11)]);
    let text = print_model(&m);
    assert_eq!(
        text,
        "elements 2\nunit e0\nrow e0: e0 e1\nrow e1: e1 e0\nbottom = {e1}\np = {e1}\nq' = {e0, e1}\n"
    );
    assert_eq!(parse_model(&text).unwrap(), m);
    assert!(matches!(parse_model("unit e0\n"), Err(PhaseError::Parse { line: 1, .. })));
    assert!(matches!(
        parse_model("elements 1\nunit e0\nrow e0: e0\n"),
        Err(PhaseError::Parse { .. })
    ));
    assert!(matches!(
        parse_model("elements 1\nunit e0\nrow e0: e3\nbottom = {}\n"),
        Err(PhaseError::Parse { line: 3, .. })
    ));
}

#[test]
fn pm_membership() {
    let m = loop_machine();
    assert_eq!(budgeted_pm_membership(&m, &["a'", "b", "b", "b"], 10), PmMembership::Member);
    assert_eq!(budgeted_pm_membership(&m, &["b'", "a"], 10), PmMembership::Member);
    assert_eq!(budgeted_pm_membership(&m, &["c_s1", "a", "a", "a"], 10), PmMembership::Member);
    assert_eq!(budgeted_pm_membership(&m, &["c_s1", "b"], 10), PmMembership::NonMember);
    assert_eq!(budgeted_pm_membership(&m, &["c_s1", "a", "a", "a"], 2), PmMembership::Unknown);
    assert_eq!(budgeted_pm_membership(&m, &["a", "b"], 10), PmMembership::NonMember);
    assert_eq!(budgeted_pm_membership(&m, &["a'", "a"], 10), PmMembership::NonMember);
    assert_eq!(budgeted_pm_membership(&m, &["c_s1", "c_s1"], 10), PmMembership::NonMember);
    assert_eq!(budgeted_pm_membership(&m, &["c_zz"], 10), PmMembership::NonMember);
    assert_eq!(budgeted_pm_membership::<&str>(&m, &[], 10), PmMembership::NonMember);
}

#[test]
fn proofs_are_sound_in_small_models() {
    let spaces = generate_spaces(0, 3);
    for a in ["p * q", "!p -o ?q", "~(p + 1) & q"] {
        let a = f(a);
        let (l, r) = build_expansion_proofs(&a);
        let proofs = [build_tl_tr_proof(&a), l, r];
        for p in &proofs {
            assert!(check_proof(p, &SystemConfig::CLL).ok || check_proof(p, &SystemConfig::CLLRR).ok);
        }
        let atoms: Vec<String> = a.atoms().into_iter().collect();
        for (i, s) in spaces.iter().enumerate().step_by(3) {
            let m = PhaseModel {
                space: s.clone(),
                valuation: atoms.iter().cloned().zip(facts(s).into_iter().cycle().skip(i)).collect(),
            };
            for p in &proofs {
                assert!(m.sequent_holds(&p.conclusion).unwrap(), "{}", p.conclusion);
            }
        }
    }
}

fn arb_space() -> impl Strategy<Value = PhaseSpace> {
    let spaces = generate_spaces(11, 5);
    proptest::sample::select(spaces)
}

fn arb_subset(n: usize) -> impl Strategy<Value = ElemSet> {
    (0u64..1 << n).prop_map(ElemSet)
}

proptest! {
    #[test]
    fn closure_laws((s, x, y) in arb_space().prop_flat_map(|s| {
        let n = s.size();
        (Just(s), arb_subset(n), arb_subset(n))
    })) {
        let cx = s.closure(x);
        prop_assert!(x.is_subset(cx));
        prop_assert_eq!(s.closure(cx), cx);
        if x.is_subset(y) {
            prop_assert!(cx.is_subset(s.closure(y)));
            prop_assert!(s.lin_neg(y).is_subset(s.lin_neg(x)));
        }
        let xy = s.closure(s.product(x, y));
        prop_assert!(s.product(cx, s.closure(y)).is_subset(xy));
        let ux = x.union(y);
        prop_assert!(s.closure(x.intersect(y)).is_subset(s.closure(ux)));
    }

    #[test]
    fn interpretations_are_facts(
        (s, p, q) in arb_space().prop_flat_map(|s| {
            let n = s.size();
            (Just(s), arb_subset(n), arb_subset(n))
        }),
        a in arb_formula_over(vec![Formula::atom("p"), Formula::atom("q"), Formula::One, Formula::Bot, Formula::Top, Formula::Zero]),
        b in arb_formula_over(vec![Formula::atom("p"), Formula::atom("q")]),
    ) {
        let m = PhaseModel::new(s.clone(), [("p".to_string(), s.closure(p)), ("q".to_string(), s.closure(q))].into()).unwrap();
        let x = m.interpret(&a).unwrap();
        prop_assert!(s.is_fact(x));
        let y = m.interpret(&b).unwrap();
        prop_assert_eq!(m.interpret(&Formula::with(a.clone(), b.clone())).unwrap(), x.intersect(y));
        prop_assert!(m.product_inclusion(&Multiset::new(), &[a.clone(), Formula::lolli(a.clone(), b.clone())], &b).unwrap());
    }
}
