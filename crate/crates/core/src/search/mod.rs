//! Bounded backward proof search without cut.
//!
//! Rules are read bottom-up through [`apply_rule`], so every candidate step is
//! exactly what the kernel accepts. Rules that are invertible (the premises
//! are derivable from the conclusion) are applied eagerly without
//! backtracking. Contraction is the only rule whose premise is larger than
//! its conclusion, so it is the only one that needs a budget; everything else
//! shrinks the sequent and the search below it terminates on its own.

use std::borrow::Cow;
use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::kernel::{apply_rule, check_proof, Annotations, Proof, RuleId, Side, Split, SystemConfig};
use crate::syntax::{Connective, Formula, Multiset, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_depth: usize,
    /// How often each `!`/`?` formula may be contracted along one branch.
    pub max_contractions_per_branch: usize,
    pub max_nodes: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_depth: 48,
            max_contractions_per_branch: 2,
            max_nodes: 200_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    Proved(Proof),
    /// No cut-free proof exists.
    Refuted,
    /// Some branch hit a limit; nothing is claimed.
    Exhausted,
}

impl SearchResult {
    pub fn is_proved(&self) -> bool {
        matches!(self, SearchResult::Proved(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("sequent uses exponentials, which MALL lacks")]
    NotMALL,
}

/// Rules whose premises follow from their conclusion by a cut against a
/// small derivable sequent. Applying one first loses no proofs.
fn invertible(rule: RuleId) -> bool {
    use RuleId::*;
    matches!(
        rule,
        NegR | NegL | BotR | OneL | TensorL | WithR | ParR | PlusL | LolliR
    )
}

#[derive(Clone, Debug)]
enum Outcome {
    Proved(Proof),
    Failed {
        /// A limit cut something off.
        truncated: bool,
        /// A loop check fired, so the answer depends on the path.
        on_path: bool,
    },
}

type Counts = Vec<(Formula, usize)>;

struct Searcher<'a> {
    cfg: SystemConfig,
    budget: &'a SearchBudget,
    nodes: usize,
    proved: HashMap<Sequent, Proof>,
    failed: HashMap<Sequent, Vec<(Counts, usize, bool)>>,
    path: HashSet<Sequent>,
}

/// Last occurrence of each distinct formula.
fn principal_choices(ms: &Multiset) -> Vec<usize> {
    let items = ms.as_slice();
    (0..items.len())
        .filter(|&i| i + 1 == items.len() || items[i + 1] != items[i])
        .collect()
}

/// Every way to send part of `ms` (minus `skip`) to the first premise, one
/// per multiplicity vector. Equal formulas contribute their earliest
/// occurrences first.
fn sub_multisets(ms: &Multiset, skip: Option<usize>) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let items = ms.as_slice();
    for i in 0..items.len() {
        if Some(i) == skip {
            continue;
        }
        match groups.last_mut() {
            Some(g) if items[g[0]] == items[i] => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut out = vec![Vec::new()];
    for g in &groups {
        let mut next = Vec::with_capacity(out.len() * (g.len() + 1));
        for base in &out {
            for k in 0..=g.len() {
                let mut v = base.clone();
                v.extend_from_slice(&g[..k]);
                next.push(v);
            }
        }
        out = next;
    }
    for v in &mut out {
        v.sort_unstable();
    }
    out
}

/// Candidate annotations for `rule` on `s`, in a fixed order.
fn instances(rule: RuleId, s: &Sequent) -> Vec<Annotations> {
    let Some(side) = rule.principal_side() else {
        return if rule == RuleId::Id {
            vec![Annotations::none()]
        } else {
            Vec::new()
        };
    };
    let ms = match side {
        Side::Left => &s.ante,
        Side::Right => &s.succ,
    };
    let mut out = Vec::new();
    for i in principal_choices(ms) {
        if ms.get(i).map(|f| f.connective()) != rule.connective() {
            continue;
        }
        if !rule.splits_context() {
            out.push(Annotations::principal(i));
            continue;
        }
        let (skip_a, skip_s) = match side {
            Side::Left => (Some(i), None),
            Side::Right => (None, Some(i)),
        };
        for ante in sub_multisets(&s.ante, skip_a) {
            for succ in sub_multisets(&s.succ, skip_s) {
                out.push(Annotations {
                    principal: vec![i],
                    split: Some(Split {
                        ante: ante.clone(),
                        succ,
                    }),
                    cut_formula: None,
                });
            }
        }
    }
    out
}

impl Searcher<'_> {
    fn search(&mut self, s: &Sequent, counts: &Counts, depth_left: usize) -> Outcome {
        if let Some(p) = self.proved.get(s) {
            return Outcome::Proved(p.clone());
        }
        let cached = self
            .failed
            .get(s)
            .and_then(|v| v.iter().find(|(c, d, _)| c == counts && *d == depth_left));
        if let Some(&(_, _, truncated)) = cached {
            return Outcome::Failed {
                truncated,
                on_path: false,
            };
        }
        if self.path.contains(s) {
            return Outcome::Failed {
                truncated: true,
                on_path: true,
            };
        }
        if depth_left == 0 {
            return Outcome::Failed {
                truncated: true,
                on_path: false,
            };
        }
        if self.nodes >= self.budget.max_nodes {
            // reported like a loop so it stays out of the cache
            return Outcome::Failed {
                truncated: true,
                on_path: true,
            };
        }
        self.nodes += 1;
        self.path.insert(s.clone());
        let out = self.expand(s, counts, depth_left);
        self.path.remove(s);
        match &out {
            Outcome::Proved(p) => {
                self.proved.insert(s.clone(), p.clone());
            }
            Outcome::Failed { truncated, on_path } => {
                if !on_path {
                    self.failed
                        .entry(s.clone())
                        .or_default()
                        .push((counts.clone(), depth_left, *truncated));
                }
            }
        }
        out
    }

    fn expand(&mut self, s: &Sequent, counts: &Counts, depth_left: usize) -> Outcome {
        let mut truncated = false;
        let mut on_path = false;
        let rules = self.cfg.rules();
        // eager pass: one invertible step decides the sequent
        for &rule in rules.iter().filter(|r| invertible(**r)) {
            if let Some(ann) = instances(rule, s).into_iter().next() {
                if let Ok(premises) = apply_rule(rule, s, &ann) {
                    if premises.iter().all(|p| self.cfg.admits_sequent(p).is_ok()) {
                        return self.try_premises(rule, s, ann, &premises, counts, depth_left);
                    }
                }
            }
        }
        for &rule in rules.iter().filter(|r| **r != RuleId::Cut) {
            let contracts = matches!(rule, RuleId::BangC | RuleId::QuestC);
            for ann in instances(rule, s) {
                if self.nodes >= self.budget.max_nodes {
                    return Outcome::Failed {
                        truncated: true,
                        on_path: true,
                    };
                }
                let Ok(premises) = apply_rule(rule, s, &ann) else {
                    continue;
                };
                if premises.iter().any(|p| self.cfg.admits_sequent(p).is_err()) {
                    continue;
                }
                let mut next_counts = Cow::Borrowed(counts);
                if contracts {
                    let next_counts = next_counts.to_mut();
                    let side = if rule == RuleId::BangC { &s.ante } else { &s.succ };
                    let f = side.get(ann.principal[0]).expect("instance index in range").clone();
                    match next_counts.binary_search_by(|(g, _)| g.cmp(&f)) {
                        Ok(k) if next_counts[k].1 >= self.budget.max_contractions_per_branch => {
                            truncated = true;
                            continue;
                        }
                        Ok(k) => next_counts[k].1 += 1,
                        Err(_) if self.budget.max_contractions_per_branch == 0 => {
                            truncated = true;
                            continue;
                        }
                        Err(k) => next_counts.insert(k, (f, 1)),
                    }
                }
                match self.try_premises(rule, s, ann, &premises, &next_counts, depth_left) {
                    Outcome::Proved(p) => return Outcome::Proved(p),
                    Outcome::Failed { truncated: t, on_path: o } => {
                        truncated |= t;
                        on_path |= o;
                    }
                }
            }
        }
        Outcome::Failed { truncated, on_path }
    }

    fn try_premises(
        &mut self,
        rule: RuleId,
        s: &Sequent,
        ann: Annotations,
        premises: &[Sequent],
        counts: &Counts,
        depth_left: usize,
    ) -> Outcome {
        let mut subs = Vec::with_capacity(premises.len());
        for p in premises {
            match self.search(p, counts, depth_left - 1) {
                Outcome::Proved(proof) => subs.push(proof),
                failed => return failed,
            }
        }
        Outcome::Proved(Proof {
            rule,
            conclusion: s.clone(),
            annotations: ann,
            premises: subs,
        })
    }
}

/// Searches for a cut-free proof of `s` in `cfg`.
pub fn prove(s: &Sequent, cfg: &SystemConfig, budget: &SearchBudget) -> SearchResult {
    let cfg = cfg.without_cut();
    if cfg.admits_sequent(s).is_err() {
        return SearchResult::Refuted;
    }
    let mut searcher = Searcher {
        cfg,
        budget,
        nodes: 0,
        proved: HashMap::new(),
        failed: HashMap::new(),
        path: HashSet::new(),
    };
    match searcher.search(s, &Vec::new(), budget.max_depth) {
        Outcome::Proved(p) => {
            let report = check_proof(&p, &cfg);
            assert!(report.ok, "search produced a proof the kernel rejects: {:?}", report.failure);
            SearchResult::Proved(p)
        }
        Outcome::Failed { truncated: false, .. } => SearchResult::Refuted,
        Outcome::Failed { .. } => SearchResult::Exhausted,
    }
}

/// Decides provability in MALL. Every rule shrinks the sequent, so a depth
/// limit of its size is never reached.
pub fn decide_mall(s: &Sequent) -> Result<SearchResult, SearchError> {
    if s.formulas().any(|f| {
        let cs = f.connectives();
        cs.contains(&Connective::Bang) || cs.contains(&Connective::Quest)
    }) {
        return Err(SearchError::NotMALL);
    }
    let budget = SearchBudget {
        max_depth: s.size() + 1,
        max_contractions_per_branch: 0,
        max_nodes: usize::MAX,
    };
    let out = prove(s, &SystemConfig::MALL, &budget);
    debug_assert!(!matches!(out, SearchResult::Exhausted));
    Ok(out)
}

#[cfg(test)]
mod tests;
