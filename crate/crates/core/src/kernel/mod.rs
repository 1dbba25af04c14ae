//! Proof objects and the proof checker.
//!
//! A [`Proof`] node names its rule, its conclusion and enough annotations
//! (principal formula index, context split, cut formula) that checking a node
//! is a local, search-free comparison. [`apply_rule`] reads a rule backwards:
//! given a conclusion and annotations it returns the premises the rule
//! demands, and [`check_proof`] compares those against the premise subproofs.

pub mod build;
mod check;
mod json;
mod rules;

use std::fmt;

use thiserror::Error;

use crate::syntax::{Connective, Formula, LanguageId, Sequent, SyntaxError};

pub use build::cut;
pub use check::{check_proof, CheckFailure, CheckReport};
pub use json::{proof_from_json, proof_to_json, ProofFileError};
pub use rules::apply_rule;

/// Which rules are available: the language, single- or multi-succedent
/// shape, and the structural toggles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SystemConfig {
    pub lang: LanguageId,
    pub classical: bool,
    pub weakening_enabled: bool,
    pub contraction_enabled: bool,
    pub cut_enabled: bool,
    /// `false` only for MALL, where `!`/`?` formulas are outside the language.
    pub exponentials_enabled: bool,
}

impl SystemConfig {
    pub const CLL: SystemConfig = SystemConfig {
        lang: LanguageId::L,
        classical: true,
        weakening_enabled: true,
        contraction_enabled: true,
        cut_enabled: true,
        exponentials_enabled: true,
    };

    pub const CLLR: SystemConfig = SystemConfig {
        weakening_enabled: false,
        ..SystemConfig::CLL
    };

    pub const CLLRR: SystemConfig = SystemConfig {
        lang: LanguageId::LMinus,
        ..SystemConfig::CLLR
    };

    pub const MALL: SystemConfig = SystemConfig {
        exponentials_enabled: false,
        ..SystemConfig::CLL
    };

    pub const ILL: SystemConfig = SystemConfig {
        lang: LanguageId::LI,
        classical: false,
        ..SystemConfig::CLL
    };

    pub const ILLR: SystemConfig = SystemConfig {
        weakening_enabled: false,
        ..SystemConfig::ILL
    };

    pub const ILLRR: SystemConfig = SystemConfig {
        lang: LanguageId::LIMinus,
        ..SystemConfig::ILLR
    };

    pub const ALL: [(&'static str, SystemConfig); 7] = [
        ("cll", SystemConfig::CLL),
        ("cllr", SystemConfig::CLLR),
        ("cllrr", SystemConfig::CLLRR),
        ("mall", SystemConfig::MALL),
        ("ill", SystemConfig::ILL),
        ("illr", SystemConfig::ILLR),
        ("illrr", SystemConfig::ILLRR),
    ];

    pub fn by_name(name: &str) -> Option<SystemConfig> {
        let lower = name.to_ascii_lowercase();
        SystemConfig::ALL
            .iter()
            .find(|(n, _)| *n == lower)
            .map(|(_, c)| *c)
    }

    pub fn without_cut(self) -> SystemConfig {
        SystemConfig {
            cut_enabled: false,
            ..self
        }
    }

    /// Whether `f` may appear in a sequent of this system.
    pub fn admits_formula(&self, f: &Formula) -> Result<(), SyntaxError> {
        self.lang.check(f)?;
        if !self.exponentials_enabled {
            for c in [Connective::Bang, Connective::Quest] {
                if f.connectives().contains(&c) {
                    return Err(SyntaxError::ForbiddenSymbol {
                        symbol: c,
                        lang: self.lang,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn admits_sequent(&self, s: &Sequent) -> Result<(), SyntaxError> {
        for f in s.formulas() {
            self.admits_formula(f)?;
        }
        if !self.classical && s.succ.len() != 1 {
            return Err(SyntaxError::IntuitionisticArity {
                found: s.succ.len(),
            });
        }
        Ok(())
    }

    /// A rule is admissible when its connective is in the language and its
    /// structural toggle is on.
    pub fn admits_rule(&self, rule: RuleId) -> bool {
        match rule {
            RuleId::Id => true,
            RuleId::Cut => self.cut_enabled,
            RuleId::BangW | RuleId::QuestW if !self.weakening_enabled => false,
            RuleId::BangC | RuleId::QuestC if !self.contraction_enabled => false,
            _ => {
                let c = rule.connective().expect("logical rule has a connective");
                if matches!(c, Connective::Bang | Connective::Quest) && !self.exponentials_enabled {
                    return false;
                }
                self.lang.admits(c)
            }
        }
    }

    /// Every rule this system admits, in declaration order.
    pub fn rules(&self) -> Vec<RuleId> {
        RuleId::ALL.iter().copied().filter(|r| self.admits_rule(*r)).collect()
    }
}

/// Which side of the conclusion carries a rule's principal formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Every rule of the classical and intuitionistic calculi. The
/// intuitionistic calculus uses the same rules under the single-succedent
/// restriction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    Id,
    Cut,
    NegR,
    NegL,
    BotR,
    BotL,
    OneR,
    OneL,
    TopR,
    ZeroL,
    TensorR,
    TensorL,
    WithR,
    WithL0,
    WithL1,
    ParR,
    ParL,
    PlusR0,
    PlusR1,
    PlusL,
    LolliR,
    LolliL,
    BangW,
    BangC,
    BangR,
    BangL,
    QuestW,
    QuestC,
    QuestR,
    QuestL,
}

impl RuleId {
    pub const ALL: [RuleId; 30] = [
        RuleId::Id,
        RuleId::Cut,
        RuleId::NegR,
        RuleId::NegL,
        RuleId::BotR,
        RuleId::BotL,
        RuleId::OneR,
        RuleId::OneL,
        RuleId::TopR,
        RuleId::ZeroL,
        RuleId::TensorR,
        RuleId::TensorL,
        RuleId::WithR,
        RuleId::WithL0,
        RuleId::WithL1,
        RuleId::ParR,
        RuleId::ParL,
        RuleId::PlusR0,
        RuleId::PlusR1,
        RuleId::PlusL,
        RuleId::LolliR,
        RuleId::LolliL,
        RuleId::BangW,
        RuleId::BangC,
        RuleId::BangR,
        RuleId::BangL,
        RuleId::QuestW,
        RuleId::QuestC,
        RuleId::QuestR,
        RuleId::QuestL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Id => "id",
            RuleId::Cut => "cut",
            RuleId::NegR => "~r",
            RuleId::NegL => "~l",
            RuleId::BotR => "bot_r",
            RuleId::BotL => "bot_l",
            RuleId::OneR => "1r",
            RuleId::OneL => "1l",
            RuleId::TopR => "top_r",
            RuleId::ZeroL => "0l",
            RuleId::TensorR => "*r",
            RuleId::TensorL => "*l",
            RuleId::WithR => "&r",
            RuleId::WithL0 => "&l0",
            RuleId::WithL1 => "&l1",
            RuleId::ParR => "|r",
            RuleId::ParL => "|l",
            RuleId::PlusR0 => "+r0",
            RuleId::PlusR1 => "+r1",
            RuleId::PlusL => "+l",
            RuleId::LolliR => "-o_r",
            RuleId::LolliL => "-o_l",
            RuleId::BangW => "!W",
            RuleId::BangC => "!C",
            RuleId::BangR => "!r",
            RuleId::BangL => "!l",
            RuleId::QuestW => "?W",
            RuleId::QuestC => "?C",
            RuleId::QuestR => "?r",
            RuleId::QuestL => "?l",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleId> {
        RuleId::ALL.iter().copied().find(|r| r.name() == name)
    }

    /// The connective the rule introduces; `None` for `id` and cut.
    pub fn connective(self) -> Option<Connective> {
        use RuleId::*;
        Some(match self {
            Id | Cut => return None,
            NegR | NegL => Connective::Neg,
            BotR | BotL => Connective::Bot,
            OneR | OneL => Connective::One,
            TopR => Connective::Top,
            ZeroL => Connective::Zero,
            TensorR | TensorL => Connective::Tensor,
            WithR | WithL0 | WithL1 => Connective::With,
            ParR | ParL => Connective::Par,
            PlusR0 | PlusR1 | PlusL => Connective::Plus,
            LolliR | LolliL => Connective::Lolli,
            BangW | BangC | BangR | BangL => Connective::Bang,
            QuestW | QuestC | QuestR | QuestL => Connective::Quest,
        })
    }

    pub fn principal_side(self) -> Option<Side> {
        use RuleId::*;
        match self {
            Id | Cut => None,
            NegL | BotL | OneL | ZeroL | TensorL | WithL0 | WithL1 | ParL | PlusL | LolliL
            | BangW | BangC | BangL | QuestL => Some(Side::Left),
            NegR | BotR | OneR | TopR | TensorR | WithR | ParR | PlusR0 | PlusR1 | LolliR
            | BangR | QuestW | QuestC | QuestR => Some(Side::Right),
        }
    }

    /// Rules whose two premises divide the context between them.
    pub fn splits_context(self) -> bool {
        matches!(
            self,
            RuleId::Cut | RuleId::TensorR | RuleId::ParL | RuleId::LolliL
        )
    }

    /// The `i` of `&l_i` / `+r_i`.
    pub fn choice_index(self) -> Option<u8> {
        match self {
            RuleId::WithL0 | RuleId::PlusR0 => Some(0),
            RuleId::WithL1 | RuleId::PlusR1 => Some(1),
            _ => None,
        }
    }

    pub fn is_axiom(self) -> bool {
        matches!(
            self,
            RuleId::Id | RuleId::OneR | RuleId::BotL | RuleId::TopR | RuleId::ZeroL
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which context occurrences go to the first premise of a context-splitting
/// rule. Indices point into the conclusion's antecedent and succedent in
/// canonical order; everything else except the principal formula goes to
/// the second premise.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Split {
    pub ante: Vec<usize>,
    pub succ: Vec<usize>,
}

/// The per-node data that makes checking deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Annotations {
    /// Index of the principal formula on the rule's principal side.
    pub principal: Vec<usize>,
    pub split: Option<Split>,
    /// The formula eliminated by a cut.
    pub cut_formula: Option<Formula>,
}

impl Annotations {
    pub fn none() -> Self {
        Annotations::default()
    }

    pub fn principal(i: usize) -> Self {
        Annotations {
            principal: vec![i],
            ..Annotations::default()
        }
    }
}

/// A derivation tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Proof {
    pub rule: RuleId,
    pub conclusion: Sequent,
    pub annotations: Annotations,
    pub premises: Vec<Proof>,
}

impl Proof {
    /// Number of rule applications.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Proof::height).max().unwrap_or(0)
    }

    /// Whether `rule` occurs anywhere in the tree.
    pub fn uses(&self, rule: RuleId) -> bool {
        self.rule == rule || self.premises.iter().any(|p| p.uses(rule))
    }

    pub fn rules_used(&self) -> std::collections::BTreeSet<RuleId> {
        let mut out = std::collections::BTreeSet::new();
        let mut stack = vec![self];
        while let Some(p) = stack.pop() {
            out.insert(p.rule);
            stack.extend(p.premises.iter());
        }
        out
    }

    /// The subproof at `path` (premise indices from the root).
    pub fn at(&self, path: &[usize]) -> Option<&Proof> {
        let mut node = self;
        for &i in path {
            node = node.premises.get(i)?;
        }
        Some(node)
    }

    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut Proof> {
        let mut node = self;
        for &i in path {
            node = node.premises.get_mut(i)?;
        }
        Some(node)
    }

    /// Every node's conclusion, preorder.
    pub fn conclusions(&self) -> Vec<&Sequent> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(p) = stack.pop() {
            out.push(&p.conclusion);
            stack.extend(p.premises.iter().rev());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("rule {rule} is disabled in this system")]
    DisabledRule { rule: RuleId },
    #[error("malformed node at {path:?}: {reason}")]
    MalformedNode { path: Vec<usize>, reason: String },
    #[error("language violation at {path:?}: {source}")]
    LanguageViolation {
        path: Vec<usize>,
        #[source]
        source: SyntaxError,
    },
    #[error("rule not applicable: {0}")]
    NotApplicable(String),
    #[error("cut mismatch: {0}")]
    CutMismatch(String),
}
