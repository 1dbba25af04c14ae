use std::collections::BTreeMap;

use super::{Counter, CounterMachine, MachineError, Program, StateId};

fn parse_err(line: usize, message: impl Into<String>) -> MachineError {
    MachineError::Parse {
        line,
        message: message.into(),
    }
}

fn state_name(line: usize, tok: Option<&str>) -> Result<StateId, MachineError> {
    let tok = tok.ok_or_else(|| parse_err(line, "expected a state name"))?;
    let ok = !tok.is_empty()
        && tok
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '@' | '\''));
    if !ok {
        return Err(parse_err(line, format!("bad state name `{tok}`")));
    }
    Ok(tok.to_string())
}

fn counter(line: usize, tok: Option<&str>) -> Result<Counter, MachineError> {
    match tok {
        Some("A") | Some("a") => Ok(Counter::A),
        Some("B") | Some("b") => Ok(Counter::B),
        other => Err(parse_err(
            line,
            format!("expected counter A or B, found `{}`", other.unwrap_or("end of line")),
        )),
    }
}

fn expect(line: usize, tok: Option<&str>, want: &str) -> Result<(), MachineError> {
    match tok {
        Some(t) if t == want => Ok(()),
        other => Err(parse_err(
            line,
            format!("expected `{want}`, found `{}`", other.unwrap_or("end of line")),
        )),
    }
}

/// Parses the line-oriented machine format:
///
/// ```text
/// # comment
/// terminal st
/// state s1 = dec A -> s1 else st
/// state s2 = inc B -> s3
/// ```
pub fn parse_machine(text: &str) -> Result<CounterMachine, MachineError> {
    let mut terminal: Option<StateId> = None;
    let mut tau = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        match toks.next() {
            Some("terminal") => {
                if terminal.is_some() {
                    return Err(parse_err(line, "terminal state declared twice"));
                }
                terminal = Some(state_name(line, toks.next())?);
            }
            Some("state") => {
                let s = state_name(line, toks.next())?;
                expect(line, toks.next(), "=")?;
                let prog = match toks.next() {
                    Some("inc") => {
                        let c = counter(line, toks.next())?;
                        expect(line, toks.next(), "->")?;
                        Program::Inc {
                            counter: c,
                            next: state_name(line, toks.next())?,
                        }
                    }
                    Some("dec") => {
                        let c = counter(line, toks.next())?;
                        expect(line, toks.next(), "->")?;
                        let nonzero = state_name(line, toks.next())?;
                        expect(line, toks.next(), "else")?;
                        Program::Dec {
                            counter: c,
                            nonzero,
                            zero: state_name(line, toks.next())?,
                        }
                    }
                    other => {
                        return Err(parse_err(
                            line,
                            format!("expected `inc` or `dec`, found `{}`", other.unwrap_or("end of line")),
                        ))
                    }
                };
                if let Some(extra) = toks.next() {
                    return Err(parse_err(line, format!("unexpected `{extra}`")));
                }
                if tau.insert(s.clone(), prog).is_some() {
                    return Err(parse_err(line, format!("state `{s}` has two programs")));
                }
            }
            Some(other) => {
                return Err(parse_err(line, format!("expected `terminal` or `state`, found `{other}`")))
            }
            None => unreachable!("empty lines skipped"),
        }
        if let Some(extra) = toks.next() {
            return Err(parse_err(line, format!("unexpected `{extra}`")));
        }
    }
    let terminal = terminal.ok_or_else(|| parse_err(0, "no terminal state declared"))?;
    CounterMachine::new(terminal, tau)
}
