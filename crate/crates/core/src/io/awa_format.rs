//! The line-oriented `.awa` text format.
//!
//! ```text
//! awa v1
//! name: t1            (optional)
//! alphabet: a b
//! states: 2
//! initial: 0
//! accepting: 1
//! state 0:
//!   a -> 0 & 1
//!   b -> 1
//! state 1:
//!   a -> 1
//!   b -> 1
//! ```
//!
//! Formulas use `true`, `false`, state numbers, `&`, `|` and parentheses;
//! `&` binds tighter than `|`. `#` starts a comment. Rows left out are
//! `false` and the automaton is completed after parsing.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::awa::Awa;
use crate::error::{AutomatonError, WeaknessViolation};
use crate::formula::Formula;
use crate::set::StateSet;

/// A parsed automaton with its source metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AwaDocument {
    pub awa: Awa,
    pub name: Option<String>,
    /// Source line (1-based) of each explicit `(state, letter)` row.
    pub rows: HashMap<(usize, usize), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
        found: String,
    },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    NotWeak(#[from] WeaknessViolation),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Accept automata that are not weak (for diagnostics only).
    pub allow_non_weak: bool,
}

pub fn parse_awa(text: &str) -> Result<AwaDocument, ParseError> {
    parse_awa_with(text, ParseOptions::default())
}

pub fn parse_awa_with(text: &str, options: ParseOptions) -> Result<AwaDocument, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.trim().is_empty())
        .peekable();
    let eof_line = text.lines().count().max(1);
    let mut next_line = |expected: &str| {
        lines.next().ok_or_else(|| ParseError::Syntax {
            line: eof_line,
            column: 1,
            expected: expected.to_string(),
            found: "end of input".into(),
        })
    };

    let (line, l) = next_line("`awa v1`")?;
    if l.split_whitespace().collect::<Vec<_>>() != ["awa", "v1"] {
        return Err(syntax(line, l, first_col(l), "`awa v1`"));
    }

    let (mut line, mut l) = next_line("`alphabet:`")?;
    let mut name = None;
    if let Some(rest) = keyed(l, "name") {
        name = Some(rest.trim().to_string());
        (line, l) = next_line("`alphabet:`")?;
    }
    let alphabet: Vec<String> = keyed(l, "alphabet")
        .ok_or_else(|| syntax(line, l, first_col(l), "`alphabet:`"))?
        .split_whitespace()
        .map(str::to_string)
        .collect();
    if alphabet.is_empty() {
        return Err(syntax(line, l, l.len() + 1, "at least one letter"));
    }
    if let Some(i) = (1..alphabet.len()).find(|&i| alphabet[..i].contains(&alphabet[i])) {
        return Err(AutomatonError::DuplicateLetter(alphabet[i].clone()).into());
    }

    let (line, l) = next_line("`states:`")?;
    let states = single_int(line, l, "states")?;
    if states == 0 {
        return Err(ParseError::Automaton(AutomatonError::NoStates));
    }
    let (line, l) = next_line("`initial:`")?;
    let initial = single_int(line, l, "initial")?;
    let (line, l) = next_line("`accepting:`")?;
    let acc_text =
        keyed(l, "accepting").ok_or_else(|| syntax(line, l, first_col(l), "`accepting:`"))?;
    let mut accepting = StateSet::EMPTY;
    for tok in acc_text.split_whitespace() {
        let q = parse_int(line, l, tok, "a state number")?;
        check_state(line, q, states)?;
        accepting.insert(q);
    }
    check_state(line, initial, states)?;

    if states > crate::set::MAX_STATES {
        return Err(ParseError::Automaton(AutomatonError::TooManyStates(states)));
    }
    let mut delta: Vec<Vec<Option<Formula>>> = vec![vec![None; alphabet.len()]; states];
    let mut rows = HashMap::new();
    let mut seen_state = vec![false; states];
    let mut current: Option<usize> = None;
    for (line, l) in lines {
        let trimmed = l.trim();
        if let Some(head) = trimmed.strip_prefix("state ") {
            let num = head
                .strip_suffix(':')
                .ok_or_else(|| syntax(line, l, l.len() + 1, "`:` after the state number"))?;
            let q = parse_int(line, l, num.trim(), "a state number")?;
            check_state(line, q, states)?;
            if std::mem::replace(&mut seen_state[q], true) {
                return Err(ParseError::Semantic {
                    line,
                    message: format!("state {q} defined twice"),
                });
            }
            current = Some(q);
            continue;
        }
        let Some(q) = current else {
            return Err(syntax(line, l, first_col(l), "`state <n>:`"));
        };
        let (letter, _) = trimmed
            .split_once("->")
            .ok_or_else(|| syntax(line, l, first_col(l), "`<letter> -> <formula>`"))?;
        let letter = letter.trim();
        let li = alphabet
            .iter()
            .position(|a| a == letter)
            .ok_or_else(|| ParseError::Semantic {
                line,
                message: format!("unknown letter `{letter}`"),
            })?;
        let offset = l.find("->").unwrap() + 2;
        let f = FormulaParser::new(line, l, offset).parse()?;
        for s in f.states() {
            check_state(line, s, states)?;
        }
        if delta[q][li].replace(f).is_some() {
            return Err(ParseError::Semantic {
                line,
                message: format!("transition of state {q} on `{letter}` given twice"),
            });
        }
        rows.insert((q, li), line);
    }
    let delta = delta
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|f| f.unwrap_or(Formula::False))
                .collect()
        })
        .collect();
    let awa = Awa::new(alphabet, initial, accepting, delta)?.complete();
    if !options.allow_non_weak {
        awa.validate_weak()?;
    }
    Ok(AwaDocument { awa, name, rows })
}

/// Canonical text of `a`; `parse_awa` reads it back to an equal automaton
/// when `a` is complete.
pub fn print_awa(a: &Awa) -> String {
    print_awa_named(a, None)
}

pub fn print_awa_named(a: &Awa, name: Option<&str>) -> String {
    let mut out = String::from("awa v1\n");
    if let Some(name) = name {
        writeln!(out, "name: {name}").unwrap();
    }
    writeln!(out, "alphabet: {}", a.alphabet().join(" ")).unwrap();
    writeln!(out, "states: {}", a.state_count()).unwrap();
    writeln!(out, "initial: {}", a.initial()).unwrap();
    out.push_str("accepting:");
    for q in a.accepting().iter() {
        write!(out, " {q}").unwrap();
    }
    out.push('\n');
    for q in 0..a.state_count() {
        writeln!(out, "state {q}:").unwrap();
        for (l, letter) in a.alphabet().iter().enumerate() {
            writeln!(out, "  {letter} -> {}", a.delta(q, l)).unwrap();
        }
    }
    out
}

fn strip_comment(l: &str) -> &str {
    l.split('#').next().unwrap()
}

fn first_col(l: &str) -> usize {
    l.len() - l.trim_start().len() + 1
}

fn found_at(l: &str, col: usize) -> String {
    match l.get(col - 1..).and_then(|s| s.split_whitespace().next()) {
        Some(tok) => format!("`{tok}`"),
        None => "end of line".into(),
    }
}

fn syntax(line: usize, l: &str, column: usize, expected: &str) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        expected: expected.to_string(),
        found: found_at(l, column),
    }
}

fn keyed<'a>(l: &'a str, key: &str) -> Option<&'a str> {
    l.trim_start()
        .strip_prefix(key)?
        .trim_start()
        .strip_prefix(':')
}

fn parse_int(line: usize, l: &str, tok: &str, expected: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| {
        let column = l.find(tok).map_or(1, |i| i + 1);
        syntax(line, l, column, expected)
    })
}

fn single_int(line: usize, l: &str, key: &str) -> Result<usize, ParseError> {
    let rest = keyed(l, key).ok_or_else(|| syntax(line, l, first_col(l), &format!("`{key}:`")))?;
    let toks: Vec<&str> = rest.split_whitespace().collect();
    match toks.as_slice() {
        [tok] => parse_int(line, l, tok, "a number"),
        [] => Err(syntax(line, l, l.len() + 1, "a number")),
        [_, extra, ..] => Err(syntax(line, l, l.find(extra).unwrap() + 1, "end of line")),
    }
}

fn check_state(line: usize, q: usize, count: usize) -> Result<(), ParseError> {
    if q < count {
        Ok(())
    } else {
        Err(ParseError::Semantic {
            line,
            message: format!("state {q} out of range, automaton has {count} states"),
        })
    }
}

/// Recursive descent over one formula.
struct FormulaParser<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> FormulaParser<'a> {
    fn new(line: usize, text: &'a str, pos: usize) -> Self {
        FormulaParser { line, text, pos }
    }

    fn parse(mut self) -> Result<Formula, ParseError> {
        let f = self.disjunction()?;
        self.skip_ws();
        if self.pos < self.text.len() {
            return Err(self.error("`&`, `|` or end of line"));
        }
        Ok(f)
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with([' ', '\t']) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn error(&self, expected: &str) -> ParseError {
        let rest = &self.text[self.pos..];
        let found = match rest.chars().next() {
            None => "end of line".to_string(),
            Some(c) if c.is_alphanumeric() => {
                let tok: String = rest.chars().take_while(|c| c.is_alphanumeric()).collect();
                format!("`{tok}`")
            }
            Some(c) => format!("`{c}`"),
        };
        ParseError::Syntax {
            line: self.line,
            column: self.pos + 1,
            expected: expected.to_string(),
            found,
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.conjunction()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::or(parts)
        })
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.atom()?];
        while self.peek() == Some('&') {
            self.pos += 1;
            parts.push(self.atom()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::and(parts)
        })
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let f = self.disjunction()?;
                if self.peek() != Some(')') {
                    return Err(self.error("`)`"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(c) if c.is_ascii_alphanumeric() => {
                let word: String = self.text[self.pos..]
                    .chars()
                    .take_while(|c| c.is_ascii_alphanumeric())
                    .collect();
                let f = match word.as_str() {
                    "true" => Formula::True,
                    "false" => Formula::False,
                    w if w.bytes().all(|b| b.is_ascii_digit()) => match w.parse() {
                        Ok(q) => Formula::State(q),
                        Err(_) => return Err(self.error("a state number")),
                    },
                    _ => return Err(self.error("`true`, `false`, a state number or `(`")),
                };
                self.pos += word.len();
                Ok(f)
            }
            _ => Err(self.error("`true`, `false`, a state number or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const T1: &str = "awa v1
alphabet: a b
states: 2
initial: 0
accepting: 1
state 0:
  a -> 0 & 1
  b -> 1
state 1:
  a -> 1
  b -> 1
";

    #[test]
    fn t1_round_trip() {
        let doc = parse_awa(T1).unwrap();
        assert_eq!(doc.awa, crate::awa::fixtures::t1());
        assert_eq!(print_awa(&doc.awa), T1);
        assert_eq!(doc.rows[&(0, 0)], 7);
    }

    #[test]
    fn precedence_and_grouping() {
        let f = FormulaParser::new(1, "0 & (1 | 2)", 0).parse().unwrap();
        assert_eq!(
            f,
            Formula::And(vec![
                Formula::State(0),
                Formula::Or(vec![Formula::State(1), Formula::State(2)])
            ])
        );
        let g = FormulaParser::new(1, "0 & 1 | 2", 0).parse().unwrap();
        assert_eq!(
            g,
            Formula::Or(vec![
                Formula::And(vec![Formula::State(0), Formula::State(1)]),
                Formula::State(2)
            ])
        );
        assert_eq!(f.to_string(), "0 & (1 | 2)");
    }

    #[test]
    fn empty_accepting_and_missing_rows() {
        let text = "awa v1\nalphabet: a\nstates: 1\ninitial: 0\naccepting:\nstate 0:\n";
        let doc = parse_awa(text).unwrap();
        assert!(doc.awa.accepting().is_empty());
        // missing row became ff, completed with a rejecting sink
        assert_eq!(doc.awa.state_count(), 2);
        assert_eq!(doc.awa.delta(0, 0), &Formula::State(1));
    }

    #[test]
    fn syntax_errors_are_positioned() {
        let bad = T1.replace("0 & 1", "0 & & 1");
        match parse_awa(&bad) {
            Err(ParseError::Syntax {
                line,
                column,
                found,
                ..
            }) => {
                assert_eq!((line, column), (7, 12));
                assert_eq!(found, "`&`");
            }
            other => panic!("{other:?}"),
        }
        let bad = T1.replace("0 & 1", "(0 & 1");
        assert!(matches!(
            parse_awa(&bad),
            Err(ParseError::Syntax { line: 7, .. })
        ));
        let bad = T1.replace("awa v1", "awa v2");
        assert!(matches!(
            parse_awa(&bad),
            Err(ParseError::Syntax {
                line: 1,
                column: 1,
                ..
            })
        ));
    }

    #[test]
    fn semantic_errors() {
        let bad = T1.replace("b -> 1\nstate 1", "b -> 7\nstate 1");
        assert!(matches!(
            parse_awa(&bad),
            Err(ParseError::Semantic { line: 8, .. })
        ));
        let bad = T1.replace("alphabet: a b", "alphabet: a a");
        assert!(matches!(
            parse_awa(&bad),
            Err(ParseError::Automaton(AutomatonError::DuplicateLetter(_)))
        ));
        let bad = T1.replace("  b -> 1\nstate 1", "  a -> 1\nstate 1");
        assert!(matches!(
            parse_awa(&bad),
            Err(ParseError::Semantic { line: 8, .. })
        ));
    }

    #[test]
    fn weakness_is_enforced_unless_overridden() {
        let mixed = "awa v1\nalphabet: a\nstates: 2\ninitial: 0\naccepting: 0\nstate 0:\n  a -> 1\nstate 1:\n  a -> 0\n";
        assert!(matches!(parse_awa(mixed), Err(ParseError::NotWeak(_))));
        let doc = parse_awa_with(
            mixed,
            ParseOptions {
                allow_non_weak: true,
            },
        )
        .unwrap();
        assert!(doc.awa.validate_weak().is_err());
    }

    #[test]
    fn comments_and_names() {
        let text = format!(
            "# an example\n{}",
            T1.replace("alphabet:", "name: t1\nalphabet:")
        );
        let doc = parse_awa(&text).unwrap();
        assert_eq!(doc.name.as_deref(), Some("t1"));
        assert_eq!(
            print_awa_named(&doc.awa, Some("t1")),
            T1.replace("alphabet:", "name: t1\nalphabet:")
        );
    }
}
