//! Two-counter machines.
//!
//! A machine has a terminal state and one program per other state. An ID
//! `(s, p, q)` is accepted when the deterministic computation from it ends
//! in `(terminal, 0, 0)`.

mod file;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use file::parse_machine;

pub type StateId = String;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Counter {
    A,
    B,
}

impl fmt::Display for Counter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Counter::A => "A",
            Counter::B => "B",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Program {
    Inc { counter: Counter, next: StateId },
    Dec { counter: Counter, nonzero: StateId, zero: StateId },
}

impl Program {
    pub fn counter(&self) -> Counter {
        match self {
            Program::Inc { counter, .. } | Program::Dec { counter, .. } => *counter,
        }
    }

    pub fn targets(&self) -> Vec<&StateId> {
        match self {
            Program::Inc { next, .. } => vec![next],
            Program::Dec { nonzero, zero, .. } => vec![nonzero, zero],
        }
    }

    fn map_targets(&self, f: impl Fn(&StateId) -> StateId) -> Program {
        match self {
            Program::Inc { counter, next } => Program::Inc {
                counter: *counter,
                next: f(next),
            },
            Program::Dec { counter, nonzero, zero } => Program::Dec {
                counter: *counter,
                nonzero: f(nonzero),
                zero: f(zero),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("state `{0}` is terminal and has no program")]
    AtTerminal(StateId),
    #[error("unknown state `{0}`")]
    UnknownState(StateId),
    #[error("state `{0}` has no program")]
    MissingProgram(StateId),
    #[error("the terminal state `{0}` cannot have a program")]
    TerminalHasProgram(StateId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterMachine {
    states: BTreeSet<StateId>,
    terminal: StateId,
    tau: BTreeMap<StateId, Program>,
}

impl CounterMachine {
    /// Every state is the terminal, a key of `tau`, or a target of some
    /// program; all but the terminal need a program.
    pub fn new(
        terminal: impl Into<StateId>,
        tau: BTreeMap<StateId, Program>,
    ) -> Result<CounterMachine, MachineError> {
        let terminal = terminal.into();
        if tau.contains_key(&terminal) {
            return Err(MachineError::TerminalHasProgram(terminal));
        }
        let mut states: BTreeSet<StateId> = tau.keys().cloned().collect();
        states.insert(terminal.clone());
        for prog in tau.values() {
            for t in prog.targets() {
                if !states.contains(t) {
                    return Err(MachineError::MissingProgram(t.clone()));
                }
            }
        }
        Ok(CounterMachine { states, terminal, tau })
    }

    pub fn states(&self) -> &BTreeSet<StateId> {
        &self.states
    }

    pub fn terminal(&self) -> &StateId {
        &self.terminal
    }

    pub fn program(&self, s: &str) -> Option<&Program> {
        self.tau.get(s)
    }

    /// Non-terminal states with their programs, sorted by state id.
    pub fn programs(&self) -> impl Iterator<Item = (&StateId, &Program)> {
        self.tau.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MachineId {
    pub state: StateId,
    pub p: u64,
    pub q: u64,
}

impl MachineId {
    pub fn new(state: impl Into<StateId>, p: u64, q: u64) -> MachineId {
        MachineId {
            state: state.into(),
            p,
            q,
        }
    }
}

impl fmt::Display for MachineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.state, self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Run {
    pub ids: Vec<MachineId>,
    pub accepted: bool,
}

impl Run {
    pub fn last(&self) -> &MachineId {
        self.ids.last().expect("runs are nonempty")
    }

    pub fn steps(&self) -> usize {
        self.ids.len() - 1
    }
}

/// A computation either halts at the terminal state or runs out of budget.
/// Running out of budget says nothing about acceptance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    Halted(Run),
    BudgetExhausted { ids: Vec<MachineId> },
}

impl RunOutcome {
    pub fn accepted(&self) -> Option<bool> {
        match self {
            RunOutcome::Halted(run) => Some(run.accepted),
            RunOutcome::BudgetExhausted { .. } => None,
        }
    }

    pub fn ids(&self) -> &[MachineId] {
        match self {
            RunOutcome::Halted(run) => &run.ids,
            RunOutcome::BudgetExhausted { ids } => ids,
        }
    }
}

pub fn step(m: &CounterMachine, id: &MachineId) -> Result<MachineId, MachineError> {
    if id.state == m.terminal {
        return Err(MachineError::AtTerminal(id.state.clone()));
    }
    let prog = m
        .program(&id.state)
        .ok_or_else(|| MachineError::UnknownState(id.state.clone()))?;
    let (p, q) = (id.p, id.q);
    Ok(match prog {
        Program::Inc { counter: Counter::A, next } => MachineId::new(next.clone(), p + 1, q),
        Program::Inc { counter: Counter::B, next } => MachineId::new(next.clone(), p, q + 1),
        Program::Dec { counter: Counter::A, nonzero, zero } => {
            if p > 0 {
                MachineId::new(nonzero.clone(), p - 1, q)
            } else {
                MachineId::new(zero.clone(), p, q)
            }
        }
        Program::Dec { counter: Counter::B, nonzero, zero } => {
            if q > 0 {
                MachineId::new(nonzero.clone(), p, q - 1)
            } else {
                MachineId::new(zero.clone(), p, q)
            }
        }
    })
}

/// Steps from `start` until the terminal state or until `budget` steps have
/// been taken.
pub fn run(m: &CounterMachine, start: &MachineId, budget: usize) -> Result<RunOutcome, MachineError> {
    if !m.states.contains(&start.state) {
        return Err(MachineError::UnknownState(start.state.clone()));
    }
    let mut ids = vec![start.clone()];
    loop {
        let cur = ids.last().expect("nonempty");
        if cur.state == m.terminal {
            let accepted = cur.p == 0 && cur.q == 0;
            return Ok(RunOutcome::Halted(Run { ids, accepted }));
        }
        if ids.len() > budget {
            return Ok(RunOutcome::BudgetExhausted { ids });
        }
        let next = step(m, cur)?;
        ids.push(next);
    }
}

/// The accepted sequence of `start`, if the run halts within `budget` and
/// accepts.
pub fn accepted_sequence(m: &CounterMachine, start: &MachineId, budget: usize) -> Option<Run> {
    match run(m, start, budget) {
        Ok(RunOutcome::Halted(run)) if run.accepted => Some(run),
        _ => None,
    }
}

/// Name of original state `s` in the normalized machine.
pub fn layer0(s: &str) -> StateId {
    format!("{s}@0")
}

pub const DRAIN_A: &str = "drainA@1";
pub const DRAIN_B: &str = "drainB@1";

/// The machine that accepts exactly the inputs on which `m` halts, with
/// whatever counter values: every jump to the terminal first drains `A`,
/// then `B`. Original states become `s@0`, the terminal included.
pub fn normalize(m: &CounterMachine) -> CounterMachine {
    let new_terminal = layer0(&m.terminal);
    let redirect = |s: &StateId| {
        if *s == m.terminal {
            DRAIN_A.to_string()
        } else {
            layer0(s)
        }
    };
    let mut tau: BTreeMap<StateId, Program> = m
        .tau
        .iter()
        .map(|(s, prog)| (layer0(s), prog.map_targets(redirect)))
        .collect();
    tau.insert(
        DRAIN_A.to_string(),
        Program::Dec {
            counter: Counter::A,
            nonzero: DRAIN_A.to_string(),
            zero: DRAIN_B.to_string(),
        },
    );
    tau.insert(
        DRAIN_B.to_string(),
        Program::Dec {
            counter: Counter::B,
            nonzero: DRAIN_B.to_string(),
            zero: new_terminal.clone(),
        },
    );
    CounterMachine::new(new_terminal, tau).expect("normalization preserves well-formedness")
}

/// `s1 = dec A -> s1 else st`: accepts `(s1, p, 0)` for every `p`.
pub fn loop_machine() -> CounterMachine {
    parse_machine("terminal st\nstate s1 = dec A -> s1 else st\n").expect("builtin machine")
}

/// Truncated subtraction: from `(s1, p, q)` it removes `min(p, q)` from both
/// counters, then empties `B`. Accepted from `s1` exactly when `p <= q`.
pub fn subtraction_machine() -> CounterMachine {
    parse_machine(
        "terminal st\n\
         state s1 = dec B -> s2 else st\n\
         state s2 = dec A -> s1 else s3\n\
         state s3 = dec B -> s3 else st\n",
    )
    .expect("builtin machine")
}

impl fmt::Display for CounterMachine {
    /// The machine file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "terminal {}", self.terminal)?;
        for (s, prog) in &self.tau {
            match prog {
                Program::Inc { counter, next } => writeln!(f, "state {s} = inc {counter} -> {next}")?,
                Program::Dec { counter, nonzero, zero } => {
                    writeln!(f, "state {s} = dec {counter} -> {nonzero} else {zero}")?
                }
            }
        }
        Ok(())
    }
}
