use std::fmt;

use super::{Formula, Multiset, Sequent};

const LOLLI: u8 = 1;
const PLUS: u8 = 2;
const WITH: u8 = 3;
const PAR: u8 = 4;
const TENSOR: u8 = 5;
const UNARY: u8 = 6;
const LEAF: u8 = 7;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Lolli(..) => LOLLI,
        Formula::Plus(..) => PLUS,
        Formula::With(..) => WITH,
        Formula::Par(..) => PAR,
        Formula::Tensor(..) => TENSOR,
        Formula::Neg(_) | Formula::Bang(_) | Formula::Quest(_) => UNARY,
        _ => LEAF,
    }
}

fn write_child(out: &mut fmt::Formatter<'_>, f: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

fn write_binary(
    out: &mut fmt::Formatter<'_>,
    op: &str,
    prec: u8,
    l: &Formula,
    r: &Formula,
) -> fmt::Result {
    // `-o` groups to the right, everything else to the left.
    let (lp, rp) = if prec == LOLLI {
        (precedence(l) <= prec, precedence(r) < prec)
    } else {
        (precedence(l) < prec, precedence(r) <= prec)
    };
    write_child(out, l, lp)?;
    write!(out, " {op} ")?;
    write_child(out, r, rp)
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => out.write_str(name),
            Formula::One => out.write_str("1"),
            Formula::Bot => out.write_str("bot"),
            Formula::Top => out.write_str("top"),
            Formula::Zero => out.write_str("0"),
            Formula::Neg(a) => {
                out.write_str("~")?;
                write_child(out, a, precedence(a) < UNARY)
            }
            Formula::Bang(a) => {
                out.write_str("!")?;
                write_child(out, a, precedence(a) < UNARY)
            }
            Formula::Quest(a) => {
                out.write_str("?")?;
                write_child(out, a, precedence(a) < UNARY)
            }
            Formula::Tensor(a, b) => write_binary(out, "*", TENSOR, a, b),
            Formula::Par(a, b) => write_binary(out, "|", PAR, a, b),
            Formula::With(a, b) => write_binary(out, "&", WITH, a, b),
            Formula::Plus(a, b) => write_binary(out, "+", PLUS, a, b),
            Formula::Lolli(a, b) => write_binary(out, "-o", LOLLI, a, b),
        }
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, f) in self.iter().enumerate() {
            if i > 0 {
                out.write_str(", ")?;
            }
            write!(out, "{f}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.ante.is_empty() {
            write!(out, "{} ", self.ante)?;
        }
        out.write_str("|-")?;
        if !self.succ.is_empty() {
            write!(out, " {}", self.succ)?;
        }
        Ok(())
    }
}

/// Prints a formula in the ASCII grammar with the fewest parentheses that
/// still parse back to the same tree.
pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_sequent, LanguageId};
    use crate::testutil::arb_formula;
    use proptest::prelude::*;

    fn atom(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn printed_examples() {
        assert_eq!(print_formula(&Formula::bang(Formula::with(atom("p"), Formula::One))), "!(p & 1)");
        assert_eq!(
            print_formula(&Formula::lolli(atom("p"), Formula::tensor(atom("q"), atom("a")))),
            "p -o q * a"
        );
        assert_eq!(print_formula(&Formula::neg(atom("p"))), "~p");
        assert_eq!(
            print_formula(&Formula::lolli(Formula::lolli(atom("p"), atom("q")), atom("r"))),
            "(p -o q) -o r"
        );
        assert_eq!(
            print_formula(&Formula::tensor(atom("p"), Formula::tensor(atom("q"), atom("r")))),
            "p * (q * r)"
        );
        assert_eq!(print_formula(&Formula::quest(Formula::neg(Formula::Bot))), "?~bot");
    }

    #[test]
    fn sequent_printing() {
        let s = parse_sequent("q, p -o q |- q", LanguageId::L).unwrap();
        assert_eq!(s.to_string(), "q, p -o q |- q");
        assert_eq!(parse_sequent("|- 1", LanguageId::L).unwrap().to_string(), "|- 1");
        assert_eq!(parse_sequent("bot |-", LanguageId::L).unwrap().to_string(), "bot |-");
        assert_eq!(parse_sequent("|-", LanguageId::L).unwrap().to_string(), "|-");
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(f in arb_formula()) {
            let text = print_formula(&f);
            prop_assert_eq!(parse_formula(&text, LanguageId::L).unwrap(), f);
        }

        #[test]
        fn language_filter_matches_node_kinds(f in arb_formula()) {
            for lang in [LanguageId::L, LanguageId::LMinus, LanguageId::LI, LanguageId::LIMinus] {
                let all_admitted = f.connectives().into_iter().all(|c| lang.admits(c));
                prop_assert_eq!(parse_formula(&print_formula(&f), lang).is_ok(), all_admitted);
            }
        }
    }
}
