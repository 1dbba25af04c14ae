//! Compiling two-counter machines into weakening-free, unit-free sequents.
//!
//! Each program clause becomes one implication; `θ_M` joins them (and four
//! guard formulas for the zero tests) with `&`. An accepted run from
//! `(s, p, q)` compiles into a proof of `(!θ_M)^g, c_s, a^p, b^q |- c_t`, one
//! block per machine step, each block picking its clause out of `θ_M` with a
//! chain of `&l` steps and paying for it with `!l` and `!C`.

use std::collections::HashMap;

use thiserror::Error;

use crate::kernel::build::{bang_c, bang_l, id, lolli_l, plus_l, tensor_l, tensor_r, with_l};
use crate::kernel::{KernelError, Proof};
use crate::machine::{run, Counter, CounterMachine, MachineError, MachineId, Program, Run, RunOutcome};
use crate::syntax::{Formula, Multiset, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncoderError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("no conjunct labelled `{0}`")]
    UnknownLabel(String),
    #[error("the run is not accepted")]
    NotAccepted,
    #[error("the run does not follow the machine: {0}")]
    BadRun(String),
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error("proof step rejected: {0}")]
    Kernel(#[from] KernelError),
}

pub const ATOM_A: &str = "a";
pub const ATOM_B: &str = "b";
pub const GUARD_A: &str = "a'";
pub const GUARD_B: &str = "b'";

/// Atom standing for a machine state. The prefix keeps state atoms apart
/// from `a`, `b`, `a'`, `b'`.
pub fn state_atom(s: &str) -> Formula {
    Formula::atom(format!("c_{s}"))
}

#[derive(Clone, Debug)]
pub struct ThetaEncoding {
    pub machine: CounterMachine,
    pub theta: Formula,
    pub components: Vec<(String, Formula)>,
}

fn a() -> Formula {
    Formula::atom(ATOM_A)
}

fn b() -> Formula {
    Formula::atom(ATOM_B)
}

fn counter_atom(c: Counter) -> Formula {
    match c {
        Counter::A => a(),
        Counter::B => b(),
    }
}

fn guard_atom(c: Counter) -> Formula {
    match c {
        Counter::A => Formula::atom(GUARD_A),
        Counter::B => Formula::atom(GUARD_B),
    }
}

fn other(c: Counter) -> Counter {
    match c {
        Counter::A => Counter::B,
        Counter::B => Counter::A,
    }
}

fn guard_label(c: Counter) -> &'static str {
    match c {
        Counter::A => "guard:A",
        Counter::B => "guard:B",
    }
}

fn absorb_label(c: Counter) -> &'static str {
    match c {
        Counter::A => "absorb:A",
        Counter::B => "absorb:B",
    }
}

impl ThetaEncoding {
    pub fn terminal_atom(&self) -> Formula {
        state_atom(self.machine.terminal())
    }

    /// `a' & c_t` (or `b' & c_t`).
    pub fn guarded(&self, c: Counter) -> Formula {
        Formula::with(guard_atom(c), self.terminal_atom())
    }

    pub fn bang_theta(&self) -> Formula {
        Formula::bang(self.theta.clone())
    }

    pub fn component(&self, label: &str) -> Result<&Formula, EncoderError> {
        self.components
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, f)| f)
            .ok_or_else(|| EncoderError::UnknownLabel(label.to_string()))
    }

    /// 0 at the terminal state, 1 elsewhere.
    pub fn g(&self, state: &str) -> usize {
        usize::from(state != self.machine.terminal())
    }
}

/// Builds `θ_M`: per state in sorted order its clause conjuncts, then the
/// four guard formulas, joined by left-associated `&`.
pub fn encode_theta(m: &CounterMachine) -> ThetaEncoding {
    let ct = state_atom(m.terminal());
    let mut components = Vec::new();
    for (s, prog) in m.programs() {
        let cj = state_atom(s);
        match prog {
            Program::Inc { counter, next } => components.push((
                format!("inc:{s}"),
                Formula::lolli(cj, Formula::tensor(state_atom(next), counter_atom(*counter))),
            )),
            Program::Dec { counter, nonzero, zero } => {
                components.push((
                    format!("dec+:{s}"),
                    Formula::lolli(Formula::tensor(cj.clone(), counter_atom(*counter)), state_atom(nonzero)),
                ));
                components.push((
                    format!("dec0:{s}"),
                    Formula::lolli(
                        cj,
                        Formula::plus(state_atom(zero), Formula::with(guard_atom(*counter), ct.clone())),
                    ),
                ));
            }
        }
    }
    for c in [Counter::A, Counter::B] {
        let guarded = Formula::with(guard_atom(c), ct.clone());
        components.push((
            guard_label(c).to_string(),
            Formula::lolli(guard_atom(c), guarded.clone()),
        ));
        components.push((
            absorb_label(c).to_string(),
            Formula::lolli(Formula::tensor(guarded.clone(), counter_atom(other(c))), guarded),
        ));
    }
    let theta = components
        .iter()
        .map(|(_, f)| f.clone())
        .reduce(Formula::with)
        .expect("at least the guard formulas");
    ThetaEncoding {
        machine: m.clone(),
        theta,
        components,
    }
}

/// `(!θ_M)^g, c_s, a^p, b^q |- c_t`
pub fn goal(enc: &ThetaEncoding, id: &MachineId) -> Result<Sequent, EncoderError> {
    if !enc.machine.states().contains(&id.state) {
        return Err(EncoderError::UnknownState(id.state.clone()));
    }
    let mut ante = vec![state_atom(&id.state)];
    if enc.g(&id.state) == 1 {
        ante.push(enc.bang_theta());
    }
    ante.extend(std::iter::repeat_n(a(), id.p as usize));
    ante.extend(std::iter::repeat_n(b(), id.q as usize));
    Ok(Sequent::new(
        Multiset::from_vec(ante),
        Multiset::singleton(enc.terminal_atom()),
    ))
}

/// The `&l` chain that turns a conjunct of `θ_M` in the antecedent into
/// `θ_M` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selector {
    /// `(component index, &-formula)` in application order.
    pub steps: Vec<(u8, Formula)>,
}

impl Selector {
    pub fn graft(&self, mut p: Proof) -> Result<Proof, KernelError> {
        for (i, f) in &self.steps {
            p = with_l(p, *i, f.clone())?;
        }
        Ok(p)
    }
}

pub fn select_component(enc: &ThetaEncoding, label: &str) -> Result<Selector, EncoderError> {
    let j = enc
        .components
        .iter()
        .position(|(l, _)| l == label)
        .ok_or_else(|| EncoderError::UnknownLabel(label.to_string()))?;
    // prefixes[i] = conjuncts 0..=i joined
    let mut prefixes: Vec<Formula> = Vec::with_capacity(enc.components.len());
    for (_, f) in &enc.components {
        let next = match prefixes.last() {
            None => f.clone(),
            Some(prev) => Formula::with(prev.clone(), f.clone()),
        };
        prefixes.push(next);
    }
    let mut steps = Vec::new();
    let from = if j == 0 {
        1
    } else {
        steps.push((1, prefixes[j].clone()));
        j + 1
    };
    for node in &prefixes[from..] {
        steps.push((0, node.clone()));
    }
    Ok(Selector { steps })
}

struct Compiler<'a> {
    enc: &'a ThetaEncoding,
    selectors: HashMap<String, Selector>,
    /// `E_q` proofs per (tested counter, g of the zero branch), indexed by q.
    guards: HashMap<(Counter, usize), Vec<Proof>>,
}

impl<'a> Compiler<'a> {
    fn new(enc: &'a ThetaEncoding) -> Self {
        Compiler {
            enc,
            selectors: HashMap::new(),
            guards: HashMap::new(),
        }
    }

    /// Picks the clause out of `θ_M`, promotes it with `!l` and merges the
    /// copy of `!θ_M` the continuation needs with `!C`.
    fn pay(&mut self, label: &str, p: Proof, g_next: usize) -> Result<Proof, EncoderError> {
        if !self.selectors.contains_key(label) {
            let sel = select_component(self.enc, label)?;
            self.selectors.insert(label.to_string(), sel);
        }
        let p = self.selectors[label].graft(p)?;
        let bt = self.enc.bang_theta();
        let p = bang_l(p, bt.clone())?;
        Ok(if g_next == 1 { bang_c(p, bt)? } else { p })
    }

    /// `(!θ_M)^g, x' & c_t, y^n |- c_t` where `x` is the tested counter and
    /// `y` the other one.
    fn guard_proof(&mut self, c: Counter, n: u64, g: usize) -> Result<Proof, EncoderError> {
        if g == 0 && n > 0 {
            return Err(EncoderError::BadRun(
                "zero test jumps to the terminal with the other counter nonzero".into(),
            ));
        }
        let key = (c, g);
        let have = self.guards.get(&key).map_or(0, Vec::len) as u64;
        for q in have..=n {
            let guarded = self.enc.guarded(c);
            let ct = self.enc.terminal_atom();
            let e = if q == 0 {
                let take_ct = with_l(id(ct.clone()), 1, guarded.clone())?;
                if g == 0 {
                    take_ct
                } else {
                    let take_guard = with_l(id(guard_atom(c)), 0, guarded.clone())?;
                    let d = lolli_l(take_guard, take_ct, Formula::lolli(guard_atom(c), guarded.clone()))?;
                    self.pay(guard_label(c), d, 0)?
                }
            } else {
                let prev = self.guards[&key][(q - 1) as usize].clone();
                let y = counter_atom(other(c));
                let pair = tensor_r(id(guarded.clone()), id(y.clone()), Formula::tensor(guarded.clone(), y.clone()))?;
                let clause = Formula::lolli(Formula::tensor(guarded.clone(), y), guarded);
                let d = lolli_l(pair, prev, clause)?;
                self.pay(absorb_label(c), d, g)?
            };
            self.guards.entry(key).or_default().push(e);
        }
        Ok(self.guards[&key][n as usize].clone())
    }

    /// One machine step backwards: from a proof for `next`, a proof for `cur`.
    fn step(&mut self, cur: &MachineId, next: &MachineId, d: Proof) -> Result<Proof, EncoderError> {
        let prog = self
            .enc
            .machine
            .program(&cur.state)
            .ok_or_else(|| EncoderError::BadRun(format!("no program at `{}`", cur.state)))?;
        let ci = state_atom(&cur.state);
        let g_next = self.enc.g(&next.state);
        match prog {
            Program::Inc { counter, next: sj } => {
                let cj = state_atom(sj);
                let x = counter_atom(*counter);
                let out = Formula::tensor(cj, x);
                let d = tensor_l(d, out.clone())?;
                let d = lolli_l(id(ci.clone()), d, Formula::lolli(ci, out))?;
                self.pay(&format!("inc:{}", cur.state), d, g_next)
            }
            Program::Dec { counter, nonzero, zero } => {
                let value = match counter {
                    Counter::A => cur.p,
                    Counter::B => cur.q,
                };
                if value > 0 {
                    let x = counter_atom(*counter);
                    let pair = Formula::tensor(ci.clone(), x.clone());
                    let left = tensor_r(id(ci), id(x), pair.clone())?;
                    let d = lolli_l(left, d, Formula::lolli(pair, state_atom(nonzero)))?;
                    self.pay(&format!("dec+:{}", cur.state), d, g_next)
                } else {
                    let rest = match counter {
                        Counter::A => cur.q,
                        Counter::B => cur.p,
                    };
                    let e = self.guard_proof(*counter, rest, g_next)?;
                    let choice = Formula::plus(state_atom(zero), self.enc.guarded(*counter));
                    let d = plus_l(d, e, choice.clone())?;
                    let d = lolli_l(id(ci.clone()), d, Formula::lolli(ci, choice))?;
                    self.pay(&format!("dec0:{}", cur.state), d, g_next)
                }
            }
        }
    }
}

/// Compiles an accepted run into a proof of `goal(enc, run.ids[0])` without
/// weakening or units.
pub fn compile_run_to_proof(enc: &ThetaEncoding, run: &Run) -> Result<Proof, EncoderError> {
    if !run.accepted {
        return Err(EncoderError::NotAccepted);
    }
    let last = run.last();
    if last.state != *enc.machine.terminal() || last.p != 0 || last.q != 0 {
        return Err(EncoderError::NotAccepted);
    }
    let mut compiler = Compiler::new(enc);
    let mut d = id(enc.terminal_atom());
    for w in run.ids.windows(2).rev() {
        let expected = crate::machine::step(&enc.machine, &w[0])?;
        if expected != w[1] {
            return Err(EncoderError::BadRun(format!("{} does not step to {}", w[0], w[1])));
        }
        d = compiler.step(&w[0], &w[1], d)?;
    }
    Ok(d)
}

/// Outcome of running a machine and compiling its run.
#[derive(Clone, Debug)]
pub enum Certification {
    Proved(Proof),
    /// Halted at the terminal state with nonzero counters.
    Rejected(Run),
    BudgetExhausted,
}

pub fn certify_acceptance(
    m: &CounterMachine,
    start: &MachineId,
    budget: usize,
) -> Result<Certification, EncoderError> {
    let enc = encode_theta(m);
    certify_with(&enc, start, budget)
}

pub fn certify_with(
    enc: &ThetaEncoding,
    start: &MachineId,
    budget: usize,
) -> Result<Certification, EncoderError> {
    match run(&enc.machine, start, budget)? {
        RunOutcome::Halted(r) if r.accepted => Ok(Certification::Proved(compile_run_to_proof(enc, &r)?)),
        RunOutcome::Halted(r) => Ok(Certification::Rejected(r)),
        RunOutcome::BudgetExhausted { .. } => Ok(Certification::BudgetExhausted),
    }
}

/// Node budget for a compiled run: `K * (steps + mass + 1) * |components|`,
/// where `mass` sums the untested counter at every zero test.
pub const SIZE_FACTOR: usize = 4;

pub fn proof_size_bound(enc: &ThetaEncoding, run: &Run) -> usize {
    let mut mass = 0u64;
    for w in run.ids.windows(2) {
        if let Some(Program::Dec { counter, .. }) = enc.machine.program(&w[0].state) {
            let (tested, rest) = match counter {
                Counter::A => (w[0].p, w[0].q),
                Counter::B => (w[0].q, w[0].p),
            };
            if tested == 0 {
                mass += rest;
            }
        }
    }
    SIZE_FACTOR * (run.steps() + mass as usize + 1) * enc.components.len()
}
