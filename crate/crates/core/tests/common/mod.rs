//! Shared fixtures: the golden proof corpus, proof mutations, and seeded
//! generators for formulas, sequents and machines.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use linlog::kernel::{proof_from_json, Proof, RuleId, Side, SystemConfig};
use linlog::machine::{Counter, CounterMachine, Program};
use linlog::{Formula, Multiset, Sequent};

pub struct Golden {
    pub name: String,
    pub system: SystemConfig,
    pub proof: Proof,
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// The handwritten proofs listed in `tests/golden/MANIFEST`.
pub fn golden_corpus() -> Vec<Golden> {
    let dir = golden_dir();
    let manifest = std::fs::read_to_string(dir.join("MANIFEST")).expect("manifest");
    manifest
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let (file, system) = line.split_once(' ').expect("`file system`");
            let text = std::fs::read_to_string(dir.join(file)).expect("proof file");
            Golden {
                name: file.trim_end_matches(".json").to_string(),
                system: SystemConfig::by_name(system.trim()).expect("system name"),
                proof: proof_from_json(&text).unwrap_or_else(|e| panic!("{file}: {e}")),
            }
        })
        .collect()
}

/// Preorder paths of every node.
pub fn paths(p: &Proof) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![(Vec::new(), p)];
    while let Some((path, node)) = stack.pop() {
        for (i, q) in node.premises.iter().enumerate().rev() {
            let mut sub = path.clone();
            sub.push(i);
            stack.push((sub, q));
        }
        out.push(path);
    }
    out
}

/// Moves one context occurrence across the split at `path`.
pub fn mutate_split(p: &Proof, path: &[usize]) -> Option<Proof> {
    let mut q = p.clone();
    let node = q.at_mut(path)?;
    let principal = node.annotations.principal.first().copied();
    let skip = |side: Side| match node.rule.principal_side() {
        Some(s) if s == side => principal,
        _ => None,
    };
    let (skip_a, skip_s) = (skip(Side::Left), skip(Side::Right));
    let ante_len = node.conclusion.ante.len();
    let succ_len = node.conclusion.succ.len();
    let split = node.annotations.split.as_mut()?;
    if let Some(i) = (0..ante_len).find(|i| Some(*i) != skip_a && !split.ante.contains(i)) {
        split.ante.push(i);
        split.ante.sort_unstable();
    } else if !split.ante.is_empty() {
        split.ante.remove(0);
    } else if let Some(i) = (0..succ_len).find(|i| Some(*i) != skip_s && !split.succ.contains(i)) {
        split.succ.push(i);
        split.succ.sort_unstable();
    } else if !split.succ.is_empty() {
        split.succ.remove(0);
    } else {
        // empty context on both sides: point past the end
        split.ante.push(ante_len);
    }
    Some(q)
}

/// Points the principal index at `path` to a different formula, or past the
/// end when the side holds only equal formulas.
pub fn mutate_principal(p: &Proof, path: &[usize]) -> Option<Proof> {
    let mut q = p.clone();
    let node = q.at_mut(path)?;
    let side = node.rule.principal_side()?;
    let ms = match side {
        Side::Left => &node.conclusion.ante,
        Side::Right => &node.conclusion.succ,
    };
    let i = *node.annotations.principal.first()?;
    let current = ms.get(i)?.clone();
    let j = (0..ms.len()).find(|&j| ms.get(j) != Some(&current)).unwrap_or(ms.len());
    node.annotations.principal = vec![j];
    Some(q)
}

/// A system differing from `cfg` only in a toggle that disables `rule`.
pub fn disabling(cfg: &SystemConfig, rule: RuleId) -> Option<SystemConfig> {
    match rule {
        RuleId::BangW | RuleId::QuestW => Some(SystemConfig {
            weakening_enabled: false,
            ..*cfg
        }),
        RuleId::BangC | RuleId::QuestC => Some(SystemConfig {
            contraction_enabled: false,
            ..*cfg
        }),
        RuleId::Cut => Some(cfg.without_cut()),
        _ => None,
    }
}

pub fn atom_leaves() -> Vec<Formula> {
    vec![Formula::atom("p"), Formula::atom("q")]
}

pub fn unit_leaves() -> Vec<Formula> {
    vec![
        Formula::atom("p"),
        Formula::atom("q"),
        Formula::One,
        Formula::Bot,
        Formula::Top,
        Formula::Zero,
    ]
}

type Unary = fn(Formula) -> Formula;
type Binary = fn(Formula, Formula) -> Formula;

const UNARY: [Unary; 3] = [Formula::neg, Formula::bang, Formula::quest];
const BINARY: [Binary; 5] = [Formula::tensor, Formula::par, Formula::with, Formula::plus, Formula::lolli];

/// Every formula with at most `max_nodes` nodes over `leaves`, smallest first.
pub fn all_formulas(leaves: &[Formula], max_nodes: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(), leaves.to_vec()];
    for n in 2..=max_nodes {
        let mut here = Vec::new();
        for a in &by_size[n - 1] {
            for u in UNARY {
                here.push(u(a.clone()));
            }
        }
        for left in 1..n - 1 {
            let right = n - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    for c in BINARY {
                        here.push(c(a.clone(), b.clone()));
                    }
                }
            }
        }
        by_size.push(here);
    }
    by_size.into_iter().flatten().collect()
}

/// A random formula with exactly `nodes` nodes.
pub fn random_formula(rng: &mut ChaCha8Rng, leaves: &[Formula], nodes: usize, exponentials: bool) -> Formula {
    let unary: &[Unary] = if exponentials { &UNARY } else { &UNARY[..1] };
    match nodes {
        0 | 1 => leaves[rng.gen_range(0..leaves.len())].clone(),
        2 => unary[rng.gen_range(0..unary.len())](random_formula(rng, leaves, 1, exponentials)),
        n => {
            if rng.gen_bool(0.25) {
                unary[rng.gen_range(0..unary.len())](random_formula(rng, leaves, n - 1, exponentials))
            } else {
                let left = rng.gen_range(1..n - 1);
                let a = random_formula(rng, leaves, left, exponentials);
                let b = random_formula(rng, leaves, n - 1 - left, exponentials);
                BINARY[rng.gen_range(0..BINARY.len())](a, b)
            }
        }
    }
}

/// A random sequent with `1..=3` formulas and at most `max_connectives`
/// connectives overall.
pub fn random_sequent(rng: &mut ChaCha8Rng, leaves: &[Formula], max_connectives: usize, exponentials: bool) -> Sequent {
    let count = rng.gen_range(1..=3);
    let mut budget = max_connectives;
    let mut ante = Vec::new();
    let mut succ = Vec::new();
    for _ in 0..count {
        let c = rng.gen_range(0..=budget.min(4));
        budget -= c;
        let nodes = rng.gen_range(c + 1..=2 * c + 1);
        let mut f = random_formula(rng, leaves, nodes, exponentials);
        if f.connective_count() > c {
            // c + 1 nodes never hold more than c connectives
            f = random_formula(rng, leaves, c + 1, exponentials);
        }
        if rng.gen_bool(0.5) {
            ante.push(f);
        } else {
            succ.push(f);
        }
    }
    Sequent::from_vecs(ante, succ)
}

/// Machines over `s0..s{n-1}` with terminal `st`, `n` in `1..=max_states`.
pub fn random_machine(rng: &mut ChaCha8Rng, max_states: usize) -> CounterMachine {
    let n = rng.gen_range(1..=max_states);
    let name = |i: usize| if i == n { "st".to_string() } else { format!("s{i}") };
    let mut tau = BTreeMap::new();
    for i in 0..n {
        let counter = if rng.gen_bool(0.5) { Counter::A } else { Counter::B };
        let prog = if rng.gen_bool(0.4) {
            Program::Inc {
                counter,
                next: name(rng.gen_range(0..=n)),
            }
        } else {
            Program::Dec {
                counter,
                nonzero: name(rng.gen_range(0..=n)),
                zero: name(rng.gen_range(0..=n)),
            }
        };
        tau.insert(name(i), prog);
    }
    CounterMachine::new("st", tau).expect("well-formed by construction")
}

pub fn ms(items: Vec<Formula>) -> Multiset {
    Multiset::from_vec(items)
}
