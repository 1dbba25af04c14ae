//! Finite phase semantics.
//!
//! A phase space is a finite commutative monoid with a distinguished subset
//! `bot`. Subsets are bitsets over element indices, so spaces hold at most
//! 64 elements (the generators stay far below that).

mod file;
mod generate;
mod pm;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::syntax::{Formula, Multiset, Sequent};

pub use file::{parse_model, print_model};
pub use generate::{
    facts, find_countermodel, find_countermodel_with, generate_models, generate_spaces, CountermodelOptions,
    DEFAULT_VALUATION_CAP, MAX_GENERATED_SIZE,
};
pub use pm::{budgeted_pm_membership, PmMembership};

pub const MAX_ELEMENTS: usize = 64;

/// A subset of the elements of a space.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn singleton(i: usize) -> ElemSet {
        ElemSet(1 << i)
    }

    pub fn full(n: usize) -> ElemSet {
        if n == 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn union(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 | o.0)
    }

    pub fn intersect(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 & o.0)
    }

    pub fn is_subset(self, o: ElemSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |i| self.contains(*i))
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "e{i}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhaseError {
    #[error("a space needs between 1 and {MAX_ELEMENTS} elements, got {0}")]
    BadSize(usize),
    #[error("operation table is not {0}x{0} over the elements")]
    BadTable(usize),
    #[error("e{0} is not a unit")]
    NotUnit(usize),
    #[error("operation is not commutative at e{0}, e{1}")]
    NotCommutative(usize, usize),
    #[error("operation is not associative at e{0}, e{1}, e{2}")]
    NotAssociative(usize, usize, usize),
    #[error("subset mentions elements outside the space")]
    OutOfRange,
    #[error("valuation of `{0}` is not a fact")]
    NotAFact(String),
    #[error("atom `{0}` has no valuation")]
    UnboundAtom(String),
    #[error("hypothesis `{0}` is not true in the model")]
    HypothesisNotTrue(Formula),
    #[error("need at least one formula to multiply")]
    EmptyProduct,
    #[error("model file line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A commutative monoid with a subset `bot`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseSpace {
    n: usize,
    table: Vec<Vec<usize>>,
    unit: usize,
    bottom: ElemSet,
    /// `into_bot[y] = { x | x·y ∈ bot }`
    into_bot: Vec<ElemSet>,
    idempotents: ElemSet,
}

impl PhaseSpace {
    /// Validates the table (unit, commutativity, associativity).
    pub fn new(table: Vec<Vec<usize>>, unit: usize, bottom: ElemSet) -> Result<PhaseSpace, PhaseError> {
        let n = table.len();
        if n == 0 || n > MAX_ELEMENTS {
            return Err(PhaseError::BadSize(n));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(PhaseError::BadTable(n));
        }
        if unit >= n || (0..n).any(|x| table[unit][x] != x) {
            return Err(PhaseError::NotUnit(unit));
        }
        for x in 0..n {
            for y in 0..n {
                if table[x][y] != table[y][x] {
                    return Err(PhaseError::NotCommutative(x, y));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(PhaseError::NotAssociative(x, y, z));
                    }
                }
            }
        }
        if !bottom.is_subset(ElemSet::full(n)) {
            return Err(PhaseError::OutOfRange);
        }
        Ok(PhaseSpace::assemble(table, unit, bottom))
    }

    fn assemble(table: Vec<Vec<usize>>, unit: usize, bottom: ElemSet) -> PhaseSpace {
        let n = table.len();
        let into_bot = (0..n)
            .map(|y| {
                let mut s = ElemSet::EMPTY;
                for x in 0..n {
                    if bottom.contains(table[x][y]) {
                        s.insert(x);
                    }
                }
                s
            })
            .collect();
        let mut space = PhaseSpace {
            n,
            table,
            unit,
            bottom,
            into_bot,
            idempotents: ElemSet::EMPTY,
        };
        let one = space.closure(ElemSet::singleton(unit));
        let mut idem = ElemSet::EMPTY;
        for i in one.iter() {
            if space.table[i][i] == i {
                idem.insert(i);
            }
        }
        space.idempotents = idem;
        space
    }

    /// The same monoid with another `bot`.
    pub fn with_bottom(&self, bottom: ElemSet) -> PhaseSpace {
        PhaseSpace::assemble(self.table.clone(), self.unit, bottom)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn bottom(&self) -> ElemSet {
        self.bottom
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// `{ i in ~~{1} | i·i = i }`
    pub fn idempotents(&self) -> ElemSet {
        self.idempotents
    }

    /// `XY = { x·y }`
    pub fn product(&self, x: ElemSet, y: ElemSet) -> ElemSet {
        let mut out = ElemSet::EMPTY;
        for i in x.iter() {
            for j in y.iter() {
                out.insert(self.table[i][j]);
            }
        }
        out
    }

    /// `~X = { y | for all x in X, x·y in bot }`
    pub fn lin_neg(&self, x: ElemSet) -> ElemSet {
        let mut out = ElemSet::EMPTY;
        for y in 0..self.n {
            if x.is_subset(self.into_bot[y]) {
                out.insert(y);
            }
        }
        out
    }

    pub fn closure(&self, x: ElemSet) -> ElemSet {
        self.lin_neg(self.lin_neg(x))
    }

    pub fn is_fact(&self, x: ElemSet) -> bool {
        self.closure(x) == x
    }

    /// `{ z | for all x in X, x·z in Y }`
    pub fn implication(&self, x: ElemSet, y: ElemSet) -> ElemSet {
        let mut out = ElemSet::EMPTY;
        'z: for z in 0..self.n {
            for i in x.iter() {
                if !y.contains(self.table[i][z]) {
                    continue 'z;
                }
            }
            out.insert(z);
        }
        out
    }
}

pub type Valuation = BTreeMap<String, ElemSet>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseModel {
    pub space: PhaseSpace,
    pub valuation: Valuation,
}

impl PhaseModel {
    pub fn new(space: PhaseSpace, valuation: Valuation) -> Result<PhaseModel, PhaseError> {
        for (p, v) in &valuation {
            if !v.is_subset(space.all()) {
                return Err(PhaseError::OutOfRange);
            }
            if !space.is_fact(*v) {
                return Err(PhaseError::NotAFact(p.clone()));
            }
        }
        Ok(PhaseModel { space, valuation })
    }

    pub fn interpret(&self, f: &Formula) -> Result<ElemSet, PhaseError> {
        let s = &self.space;
        Ok(match f {
            Formula::Atom(p) => *self
                .valuation
                .get(p)
                .ok_or_else(|| PhaseError::UnboundAtom(p.clone()))?,
            Formula::One => s.closure(ElemSet::singleton(s.unit)),
            Formula::Bot => s.bottom,
            Formula::Top => s.all(),
            Formula::Zero => s.closure(ElemSet::EMPTY),
            Formula::Neg(a) => s.lin_neg(self.interpret(a)?),
            Formula::Tensor(a, b) => s.closure(s.product(self.interpret(a)?, self.interpret(b)?)),
            Formula::With(a, b) => self.interpret(a)?.intersect(self.interpret(b)?),
            Formula::Par(a, b) => {
                let na = s.lin_neg(self.interpret(a)?);
                let nb = s.lin_neg(self.interpret(b)?);
                s.lin_neg(s.product(na, nb))
            }
            Formula::Plus(a, b) => s.closure(self.interpret(a)?.union(self.interpret(b)?)),
            Formula::Lolli(a, b) => s.implication(self.interpret(a)?, self.interpret(b)?),
            Formula::Bang(a) => s.closure(self.interpret(a)?.intersect(s.idempotents)),
            Formula::Quest(a) => s.lin_neg(s.lin_neg(self.interpret(a)?).intersect(s.idempotents)),
        })
    }

    pub fn is_true(&self, f: &Formula) -> Result<bool, PhaseError> {
        Ok(self.interpret(f)?.contains(self.space.unit))
    }

    /// `[*G]`, folded left over the canonical order; `[1]` when empty.
    pub fn tensor_fold(&self, gamma: &Multiset) -> Result<ElemSet, PhaseError> {
        let s = &self.space;
        let mut acc: Option<ElemSet> = None;
        for f in gamma.iter() {
            let x = self.interpret(f)?;
            acc = Some(match acc {
                None => x,
                Some(prev) => s.closure(s.product(prev, x)),
            });
        }
        Ok(acc.unwrap_or_else(|| s.closure(ElemSet::singleton(s.unit))))
    }

    /// `[|D]`, folded left over the canonical order; `bot` when empty.
    pub fn par_fold(&self, delta: &Multiset) -> Result<ElemSet, PhaseError> {
        let s = &self.space;
        let mut acc: Option<ElemSet> = None;
        for f in delta.iter() {
            let x = self.interpret(f)?;
            acc = Some(match acc {
                None => x,
                Some(prev) => s.lin_neg(s.product(s.lin_neg(prev), s.lin_neg(x))),
            });
        }
        Ok(acc.unwrap_or(s.bottom))
    }

    /// `[*G] ⊆ [|D]`
    pub fn sequent_holds(&self, seq: &Sequent) -> Result<bool, PhaseError> {
        Ok(self.tensor_fold(&seq.ante)?.is_subset(self.par_fold(&seq.succ)?))
    }

    /// `[A1]...[An] ⊆ [C]`, the plain pointwise product, after checking that
    /// every member of `gamma` is true.
    pub fn product_inclusion(&self, gamma: &Multiset, factors: &[Formula], c: &Formula) -> Result<bool, PhaseError> {
        for g in gamma.iter() {
            if !self.is_true(g)? {
                return Err(PhaseError::HypothesisNotTrue(g.clone()));
            }
        }
        let (first, rest) = factors.split_first().ok_or(PhaseError::EmptyProduct)?;
        let mut acc = self.interpret(first)?;
        for f in rest {
            acc = self.space.product(acc, self.interpret(f)?);
        }
        Ok(acc.is_subset(self.interpret(c)?))
    }
}

#[cfg(test)]
mod tests;
