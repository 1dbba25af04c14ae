//! Formulas, multisets and sequents of propositional linear logic.
//!
//! The concrete syntax is ASCII: `*` (tensor), `|` (par), `&` (with),
//! `+` (plus), `-o` (linear implication), `~` (linear negation), `!`, `?`
//! and the units `1`, `bot`, `top`, `0`. Unary operators bind tightest, then
//! `*`, `|`, `&`, `+` and finally `-o`. All binary operators associate to the
//! left except `-o`, which associates to the right.

mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use parse::{parse_formula, parse_sequent, parse_sequent_with_arity, strip_comments};
pub use print::print_formula;

/// A formula of the full classical language. Sublanguages are carved out by
/// [`LanguageId`].
///
/// The derived `Ord` is the total structural order used to keep multisets
/// canonical.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    One,
    Bot,
    Top,
    Zero,
    Neg(Box<Formula>),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    With(Box<Formula>, Box<Formula>),
    Plus(Box<Formula>, Box<Formula>),
    Lolli(Box<Formula>, Box<Formula>),
    Bang(Box<Formula>),
    Quest(Box<Formula>),
}

/// The node kinds a formula is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connective {
    Atom,
    One,
    Bot,
    Top,
    Zero,
    Neg,
    Tensor,
    Par,
    With,
    Plus,
    Lolli,
    Bang,
    Quest,
}

impl Connective {
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Atom => "atom",
            Connective::One => "1",
            Connective::Bot => "bot",
            Connective::Top => "top",
            Connective::Zero => "0",
            Connective::Neg => "~",
            Connective::Tensor => "*",
            Connective::Par => "|",
            Connective::With => "&",
            Connective::Plus => "+",
            Connective::Lolli => "-o",
            Connective::Bang => "!",
            Connective::Quest => "?",
        }
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn neg(a: Formula) -> Self {
        Formula::Neg(Box::new(a))
    }

    pub fn tensor(a: Formula, b: Formula) -> Self {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Self {
        Formula::Par(Box::new(a), Box::new(b))
    }

    pub fn with(a: Formula, b: Formula) -> Self {
        Formula::With(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Formula, b: Formula) -> Self {
        Formula::Plus(Box::new(a), Box::new(b))
    }

    pub fn lolli(a: Formula, b: Formula) -> Self {
        Formula::Lolli(Box::new(a), Box::new(b))
    }

    pub fn bang(a: Formula) -> Self {
        Formula::Bang(Box::new(a))
    }

    pub fn quest(a: Formula) -> Self {
        Formula::Quest(Box::new(a))
    }

    pub fn connective(&self) -> Connective {
        match self {
            Formula::Atom(_) => Connective::Atom,
            Formula::One => Connective::One,
            Formula::Bot => Connective::Bot,
            Formula::Top => Connective::Top,
            Formula::Zero => Connective::Zero,
            Formula::Neg(_) => Connective::Neg,
            Formula::Tensor(..) => Connective::Tensor,
            Formula::Par(..) => Connective::Par,
            Formula::With(..) => Connective::With,
            Formula::Plus(..) => Connective::Plus,
            Formula::Lolli(..) => Connective::Lolli,
            Formula::Bang(_) => Connective::Bang,
            Formula::Quest(_) => Connective::Quest,
        }
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::One | Formula::Bot | Formula::Top | Formula::Zero => {
                Vec::new()
            }
            Formula::Neg(a) | Formula::Bang(a) | Formula::Quest(a) => vec![a],
            Formula::Tensor(a, b)
            | Formula::Par(a, b)
            | Formula::With(a, b)
            | Formula::Plus(a, b)
            | Formula::Lolli(a, b) => vec![a, b],
        }
    }

    /// Number of atom, unit and connective nodes.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    /// Number of non-leaf nodes.
    pub fn connective_count(&self) -> usize {
        let own = usize::from(!self.children().is_empty());
        own + self
            .children()
            .into_iter()
            .map(Formula::connective_count)
            .sum::<usize>()
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        if let Formula::Atom(name) = self {
            out.insert(name.clone());
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    pub fn connectives(&self) -> BTreeSet<Connective> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            out.insert(f.connective());
            stack.extend(f.children());
        }
        out
    }

    pub fn is_bang(&self) -> bool {
        matches!(self, Formula::Bang(_))
    }

    pub fn is_quest(&self) -> bool {
        matches!(self, Formula::Quest(_))
    }
}

/// The four languages: full `L`, `L` without `1`/`bot`, and the
/// intuitionistic fragment with and without `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LanguageId {
    L,
    LMinus,
    LI,
    LIMinus,
}

impl LanguageId {
    pub fn admits(self, c: Connective) -> bool {
        match self {
            LanguageId::L => true,
            LanguageId::LMinus => !matches!(c, Connective::One | Connective::Bot),
            LanguageId::LI => !matches!(
                c,
                Connective::Bot | Connective::Par | Connective::Neg | Connective::Quest
            ),
            LanguageId::LIMinus => {
                LanguageId::LI.admits(c) && !matches!(c, Connective::One)
            }
        }
    }

    pub fn is_intuitionistic(self) -> bool {
        matches!(self, LanguageId::LI | LanguageId::LIMinus)
    }

    /// First node of `f` (in preorder) that the language rejects.
    pub fn first_forbidden(self, f: &Formula) -> Option<Connective> {
        let mut stack = vec![f];
        while let Some(g) = stack.pop() {
            let c = g.connective();
            if !self.admits(c) {
                return Some(c);
            }
            let mut kids = g.children();
            kids.reverse();
            stack.extend(kids);
        }
        None
    }

    pub fn check(self, f: &Formula) -> Result<(), SyntaxError> {
        match self.first_forbidden(f) {
            Some(symbol) => Err(SyntaxError::ForbiddenSymbol { symbol, lang: self }),
            None => Ok(()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LanguageId::L => "L",
            LanguageId::LMinus => "L-",
            LanguageId::LI => "LI",
            LanguageId::LIMinus => "LI-",
        }
    }
}

impl fmt::Display for LanguageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("symbol `{symbol}` is not part of language {lang}")]
    ForbiddenSymbol { symbol: Connective, lang: LanguageId },
    #[error("intuitionistic sequents need exactly one succedent formula, found {found}")]
    IntuitionisticArity { found: usize },
}

/// A finite multiset of formulas, kept sorted by the structural order so that
/// equality is multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset(Vec<Formula>);

impl Multiset {
    pub fn new() -> Self {
        Multiset(Vec::new())
    }

    pub fn from_vec(mut items: Vec<Formula>) -> Self {
        items.sort();
        Multiset(items)
    }

    pub fn singleton(f: Formula) -> Self {
        Multiset(vec![f])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Formula] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<&Formula> {
        self.0.get(i)
    }

    pub fn into_vec(self) -> Vec<Formula> {
        self.0
    }

    pub fn count(&self, f: &Formula) -> usize {
        self.0.iter().filter(|g| *g == f).count()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.binary_search(f).is_ok()
    }

    /// Index of the first occurrence of `f`.
    pub fn position(&self, f: &Formula) -> Option<usize> {
        self.0.iter().position(|g| g == f)
    }

    pub fn insert(&mut self, f: Formula) {
        let at = self.0.partition_point(|g| g < &f);
        self.0.insert(at, f);
    }

    pub fn with(&self, f: Formula) -> Self {
        let mut out = self.clone();
        out.insert(f);
        out
    }

    pub fn with_all<I: IntoIterator<Item = Formula>>(&self, items: I) -> Self {
        let mut v = self.0.clone();
        v.extend(items);
        Multiset::from_vec(v)
    }

    pub fn union(&self, other: &Multiset) -> Self {
        self.with_all(other.0.iter().cloned())
    }

    /// Removes one occurrence of `f`, if present.
    pub fn remove_one(&self, f: &Formula) -> Option<Self> {
        let i = self.position(f)?;
        let mut v = self.0.clone();
        v.remove(i);
        Some(Multiset(v))
    }

    pub fn without_index(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.remove(i);
        Multiset(v)
    }

    /// Multiset difference; `None` unless `sub` is included in `self`.
    pub fn difference(&self, sub: &Multiset) -> Option<Self> {
        let mut rest = self.clone();
        for f in sub.iter() {
            rest = rest.remove_one(f)?;
        }
        Some(rest)
    }

    /// Picks distinct indices of `self` whose formulas make up `sub`, taking
    /// the earliest unused occurrence each time.
    pub fn pick_indices(&self, sub: &Multiset) -> Option<Vec<usize>> {
        let mut used = vec![false; self.0.len()];
        let mut out = Vec::with_capacity(sub.len());
        for f in sub.iter() {
            let i = (0..self.0.len()).find(|&i| !used[i] && &self.0[i] == f)?;
            used[i] = true;
            out.push(i);
        }
        out.sort_unstable();
        Some(out)
    }

    /// The formulas at `indices` (which must be distinct and in range).
    pub fn select(&self, indices: &[usize]) -> Self {
        Multiset::from_vec(indices.iter().map(|&i| self.0[i].clone()).collect())
    }

    /// Distinct formulas with their multiplicities, in canonical order.
    pub fn groups(&self) -> Vec<(&Formula, usize)> {
        let mut out: Vec<(&Formula, usize)> = Vec::new();
        for f in &self.0 {
            match out.last_mut() {
                Some((g, n)) if *g == f => *n += 1,
                _ => out.push((f, 1)),
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(Formula::size).sum()
    }
}

impl FromIterator<Formula> for Multiset {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        Multiset::from_vec(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Multiset {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// `ante |- succ` over multisets.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub ante: Multiset,
    pub succ: Multiset,
}

impl Sequent {
    pub fn new(ante: Multiset, succ: Multiset) -> Self {
        Sequent { ante, succ }
    }

    pub fn from_vecs(ante: Vec<Formula>, succ: Vec<Formula>) -> Self {
        Sequent::new(Multiset::from_vec(ante), Multiset::from_vec(succ))
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.ante.iter().chain(self.succ.iter())
    }

    pub fn size(&self) -> usize {
        self.ante.size() + self.succ.size()
    }

    pub fn connective_count(&self) -> usize {
        self.formulas().map(Formula::connective_count).sum()
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in self.formulas() {
            out.extend(f.atoms());
        }
        out
    }

    pub fn check_language(&self, lang: LanguageId) -> Result<(), SyntaxError> {
        for f in self.formulas() {
            lang.check(f)?;
        }
        if lang.is_intuitionistic() && self.succ.len() != 1 {
            return Err(SyntaxError::IntuitionisticArity {
                found: self.succ.len(),
            });
        }
        Ok(())
    }
}
