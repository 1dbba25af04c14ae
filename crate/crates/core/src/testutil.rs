use proptest::prelude::*;

use std::collections::BTreeMap;

use crate::machine::{Counter, CounterMachine, Program};
use crate::syntax::Formula;

pub fn arb_formula() -> impl Strategy<Value = Formula> {
    arb_formula_over(vec![
        Formula::atom("p"),
        Formula::atom("q"),
        Formula::atom("a'"),
        Formula::One,
        Formula::Bot,
        Formula::Top,
        Formula::Zero,
    ])
}

pub fn arb_formula_over(leaves: Vec<Formula>) -> impl Strategy<Value = Formula> {
    let leaf = proptest::sample::select(leaves);
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            inner.clone().prop_map(Formula::bang),
            inner.clone().prop_map(Formula::quest),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::par(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::with(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::plus(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::lolli(a, b)),
        ]
    })
}

/// Formulas of the intuitionistic language.
pub fn arb_ill_formula() -> impl Strategy<Value = Formula> {
    let leaf = proptest::sample::select(vec![
        Formula::atom("p"),
        Formula::atom("q"),
        Formula::One,
        Formula::Top,
        Formula::Zero,
    ]);
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::bang),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::with(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::plus(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::lolli(a, b)),
        ]
    })
}

/// Machines over states `s0..s{n-1}` and terminal `st`.
pub fn arb_machine() -> impl Strategy<Value = CounterMachine> {
    (1usize..5).prop_flat_map(|n| {
        let target = 0..=n; // index n is the terminal
        let prog = (any::<bool>(), any::<bool>(), target.clone(), target);
        proptest::collection::vec(prog, n).prop_map(move |progs| {
            let name = |i: usize| if i == n { "st".to_string() } else { format!("s{i}") };
            let tau = progs
                .into_iter()
                .enumerate()
                .map(|(i, (inc, a, x, y))| {
                    let counter = if a { Counter::A } else { Counter::B };
                    let prog = if inc {
                        Program::Inc { counter, next: name(x) }
                    } else {
                        Program::Dec {
                            counter,
                            nonzero: name(x),
                            zero: name(y),
                        }
                    };
                    (name(i), prog)
                })
                .collect::<BTreeMap<_, _>>();
            CounterMachine::new("st", tau).unwrap()
        })
    })
}
