use super::{Formula, LanguageId, Multiset, Sequent, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    One,
    Zero,
    Bot,
    Top,
    Tilde,
    Bang,
    Quest,
    Star,
    Bar,
    Amp,
    Plus,
    Lolli,
    LParen,
    RParen,
    Comma,
    Turnstile,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::One => "`1`".into(),
            Tok::Zero => "`0`".into(),
            Tok::Bot => "`bot`".into(),
            Tok::Top => "`top`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Quest => "`?`".into(),
            Tok::Star => "`*`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Lolli => "`-o`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Turnstile => "`|-`".into(),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '@'
}

/// Drops `#` comments up to the end of each line.
pub fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|line| match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn err(position: usize, message: impl Into<String>) -> SyntaxError {
    SyntaxError::Syntax {
        position,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let next = chars.get(i + 1).map(|&(_, c)| c);
        if c == '#' {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '~' => Some(Tok::Tilde),
            '!' => Some(Tok::Bang),
            '?' => Some(Tok::Quest),
            '*' => Some(Tok::Star),
            '&' => Some(Tok::Amp),
            '+' => Some(Tok::Plus),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push((pos, tok));
            i += 1;
            continue;
        }
        match c {
            '|' if next == Some('-') => {
                out.push((pos, Tok::Turnstile));
                i += 2;
            }
            '|' => {
                out.push((pos, Tok::Bar));
                i += 1;
            }
            '-' if next == Some('o') => {
                out.push((pos, Tok::Lolli));
                i += 2;
            }
            '1' | '0' if !next.is_some_and(|n| n.is_ascii_digit()) => {
                out.push((pos, if c == '1' { Tok::One } else { Tok::Zero }));
                i += 1;
            }
            c if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i].1) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                let tok = match word.as_str() {
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    _ => Tok::Ident(word),
                };
                out.push((pos, tok));
            }
            _ => return Err(err(pos, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser<'t> {
    toks: &'t [(usize, Tok)],
    at: usize,
    end: usize,
    lang: LanguageId,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn admit(&self, f: Formula) -> Result<Formula, SyntaxError> {
        let c = f.connective();
        if self.lang.admits(c) {
            Ok(f)
        } else {
            Err(SyntaxError::ForbiddenSymbol {
                symbol: c,
                lang: self.lang,
            })
        }
    }

    fn lolli(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.binary(0)?;
        if self.peek() == Some(&Tok::Lolli) {
            self.bump();
            let rhs = self.lolli()?;
            return self.admit(Formula::lolli(lhs, rhs));
        }
        Ok(lhs)
    }

    // Levels from loosest to tightest: `+`, `&`, `|`, `*`.
    fn binary(&mut self, level: usize) -> Result<Formula, SyntaxError> {
        const LEVELS: [Tok; 4] = [Tok::Plus, Tok::Amp, Tok::Bar, Tok::Star];
        if level == LEVELS.len() {
            return self.unary();
        }
        let mut lhs = self.binary(level + 1)?;
        while self.peek() == Some(&LEVELS[level]) {
            self.bump();
            let rhs = self.binary(level + 1)?;
            let f = match level {
                0 => Formula::plus(lhs, rhs),
                1 => Formula::with(lhs, rhs),
                2 => Formula::par(lhs, rhs),
                _ => Formula::tensor(lhs, rhs),
            };
            lhs = self.admit(f)?;
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.bump();
                let sub = self.unary()?;
                self.admit(Formula::neg(sub))
            }
            Some(Tok::Bang) => {
                self.bump();
                let sub = self.unary()?;
                self.admit(Formula::bang(sub))
            }
            Some(Tok::Quest) => {
                self.bump();
                let sub = self.unary()?;
                self.admit(Formula::quest(sub))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        let pos = self.pos();
        let f = match self.bump() {
            Some(Tok::Ident(name)) => Formula::Atom(name),
            Some(Tok::One) => Formula::One,
            Some(Tok::Zero) => Formula::Zero,
            Some(Tok::Bot) => Formula::Bot,
            Some(Tok::Top) => Formula::Top,
            Some(Tok::LParen) => {
                let inner = self.lolli()?;
                match self.bump() {
                    Some(Tok::RParen) => return Ok(inner),
                    Some(t) => {
                        return Err(err(self.toks[self.at - 1].0, format!("expected `)`, found {}", t.describe())))
                    }
                    None => return Err(err(self.end, "expected `)`, found end of input")),
                }
            }
            Some(t) => return Err(err(pos, format!("expected a formula, found {}", t.describe()))),
            None => return Err(err(pos, "expected a formula, found end of input")),
        };
        self.admit(f)
    }

    fn formula_list(&mut self) -> Result<Vec<Formula>, SyntaxError> {
        let mut out = Vec::new();
        match self.peek() {
            None | Some(Tok::Turnstile) => return Ok(out),
            _ => {}
        }
        loop {
            out.push(self.lolli()?);
            if self.peek() == Some(&Tok::Comma) {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }
}

/// Parses one formula of `lang`.
pub fn parse_formula(text: &str, lang: LanguageId) -> Result<Formula, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        at: 0,
        end: text.len(),
        lang,
    };
    let f = p.lolli()?;
    if let Some(t) = p.peek() {
        return Err(err(p.pos(), format!("unexpected {} after formula", t.describe())));
    }
    Ok(f)
}

/// Parses `A1, ..., An |- B1, ..., Bm`. Intuitionistic languages require
/// exactly one succedent formula.
pub fn parse_sequent(text: &str, lang: LanguageId) -> Result<Sequent, SyntaxError> {
    parse_sequent_with_arity(text, lang, lang.is_intuitionistic())
}

/// As [`parse_sequent`], with the single-succedent check chosen explicitly.
pub fn parse_sequent_with_arity(
    text: &str,
    lang: LanguageId,
    single_succedent: bool,
) -> Result<Sequent, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        at: 0,
        end: text.len(),
        lang,
    };
    let ante = p.formula_list()?;
    match p.bump() {
        Some(Tok::Turnstile) => {}
        Some(t) => {
            return Err(err(toks[p.at - 1].0, format!("expected `,` or `|-`, found {}", t.describe())))
        }
        None => return Err(err(text.len(), "missing `|-`")),
    }
    let succ = p.formula_list()?;
    if let Some(t) = p.peek() {
        return Err(err(p.pos(), format!("unexpected {} in succedent", t.describe())));
    }
    if single_succedent && succ.len() != 1 {
        return Err(SyntaxError::IntuitionisticArity { found: succ.len() });
    }
    Ok(Sequent::new(Multiset::from_vec(ante), Multiset::from_vec(succ)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Connective;

    fn atom(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn bang_of_implication() {
        let f = parse_formula("!(c -o a)", LanguageId::L).unwrap();
        assert_eq!(f, Formula::bang(Formula::lolli(atom("c"), atom("a"))));
    }

    #[test]
    fn tensor_binds_tighter_than_lolli() {
        let f = parse_formula("p * q -o r", LanguageId::L).unwrap();
        assert_eq!(f, Formula::lolli(Formula::tensor(atom("p"), atom("q")), atom("r")));
    }

    #[test]
    fn lolli_is_right_associative() {
        let f = parse_formula("p -o q -o r", LanguageId::L).unwrap();
        assert_eq!(f, Formula::lolli(atom("p"), Formula::lolli(atom("q"), atom("r"))));
        let g = parse_formula("p & q & r", LanguageId::L).unwrap();
        assert_eq!(g, Formula::with(Formula::with(atom("p"), atom("q")), atom("r")));
    }

    #[test]
    fn precedence_ladder() {
        let f = parse_formula("a + b & c | d * ~e", LanguageId::L).unwrap();
        let expected = Formula::plus(
            atom("a"),
            Formula::with(
                atom("b"),
                Formula::par(atom("c"), Formula::tensor(atom("d"), Formula::neg(atom("e")))),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn bot_forbidden_without_units() {
        assert_eq!(
            parse_formula("bot", LanguageId::LMinus),
            Err(SyntaxError::ForbiddenSymbol {
                symbol: Connective::Bot,
                lang: LanguageId::LMinus
            })
        );
        assert!(parse_formula("p -o 1", LanguageId::LMinus).is_err());
        assert!(parse_formula("p | q", LanguageId::LI).is_err());
    }

    #[test]
    fn primes_and_products_in_names() {
        let f = parse_formula("a' & c_s@0", LanguageId::L).unwrap();
        assert_eq!(f, Formula::with(atom("a'"), atom("c_s@0")));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_formula("p * ", LanguageId::L) {
            Err(SyntaxError::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_formula("(p * q", LanguageId::L) {
            Err(SyntaxError::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_formula("p $ q", LanguageId::L).is_err());
        assert!(parse_formula("12", LanguageId::L).is_err());
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("p, p -o q |- q", LanguageId::L).unwrap();
        assert_eq!(s.ante, Multiset::from_vec(vec![atom("p"), Formula::lolli(atom("p"), atom("q"))]));
        assert_eq!(s.succ, Multiset::singleton(atom("q")));

        let unit = parse_sequent("|- 1", LanguageId::L).unwrap();
        assert!(unit.ante.is_empty());
        assert_eq!(unit.succ, Multiset::singleton(Formula::One));

        let empty_right = parse_sequent("bot |-", LanguageId::L).unwrap();
        assert!(empty_right.succ.is_empty());

        assert_eq!(
            parse_sequent("p |- q, r", LanguageId::LI),
            Err(SyntaxError::IntuitionisticArity { found: 2 })
        );
        assert_eq!(
            parse_sequent("p, q |- r", LanguageId::L),
            parse_sequent("q, p |- r", LanguageId::L)
        );
    }

    #[test]
    fn comments_are_ignored() {
        let s = parse_sequent("p # antecedent\n |- p # done", LanguageId::L).unwrap();
        assert_eq!(s, parse_sequent("p |- p", LanguageId::L).unwrap());
        assert_eq!(strip_comments("a # b\nc"), "a \nc");
    }
}
