use std::collections::BTreeMap;

use crate::encoder::{ATOM_A, ATOM_B, GUARD_A, GUARD_B};
use crate::machine::{run, CounterMachine, MachineId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmMembership {
    Member,
    NonMember,
    /// The embedded run did not halt within the budget.
    Unknown,
}

/// Is the monoid element named by `word` (a multiset of proposition names)
/// in `bot` of the machine's model? `c_s a^p b^q` is in when `(s, p, q)` is
/// accepted; every `a' b^q` and `b' a^p` is in; nothing else is.
pub fn budgeted_pm_membership<S: AsRef<str>>(m: &CounterMachine, word: &[S], budget: usize) -> PmMembership {
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for w in word {
        *counts.entry(w.as_ref()).or_default() += 1;
    }
    let take = |counts: &mut BTreeMap<&str, u64>, k: &str| counts.remove(k).unwrap_or(0);
    let a = take(&mut counts, ATOM_A);
    let b = take(&mut counts, ATOM_B);
    let a_guard = take(&mut counts, GUARD_A);
    let b_guard = take(&mut counts, GUARD_B);
    let mut states = counts.into_iter();
    match (states.next(), states.next(), a_guard, b_guard) {
        (None, None, 1, 0) if a == 0 => PmMembership::Member,
        (None, None, 0, 1) if b == 0 => PmMembership::Member,
        (Some((atom, 1)), None, 0, 0) => {
            let Some(state) = atom.strip_prefix("c_").filter(|s| m.states().contains(*s)) else {
                return PmMembership::NonMember;
            };
            match run(m, &MachineId::new(state, a, b), budget).map(|o| o.accepted()) {
                Ok(Some(true)) => PmMembership::Member,
                Ok(Some(false)) => PmMembership::NonMember,
                Ok(None) => PmMembership::Unknown,
                Err(_) => PmMembership::NonMember,
            }
        }
        _ => PmMembership::NonMember,
    }
}
