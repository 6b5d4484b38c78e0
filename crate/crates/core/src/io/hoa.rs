//! HOA v1 output for Büchi automata and a reader for the subset we emit.
//!
//! Letters are encoded one-hot: letter `i` is the valuation where AP `i`
//! holds and every other AP is false.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::nba::{Nba, NbaError};

/// Renders `b` in HOA v1 with state-based Büchi acceptance. With `names`,
/// every state is labelled with its payload.
pub fn print_hoa<P: fmt::Display>(b: &Nba<P>, names: bool) -> String {
    let k = b.letter_count();
    let mut out = String::from("HOA: v1\n");
    writeln!(out, "States: {}", b.state_count()).unwrap();
    for &s in b.initial() {
        writeln!(out, "Start: {s}").unwrap();
    }
    out.push_str(&format!("AP: {k}"));
    for a in b.alphabet() {
        write!(out, " {}", quote(a)).unwrap();
    }
    out.push('\n');
    out.push_str("acc-name: Buchi\nAcceptance: 1 Inf(0)\nproperties: trans-labels explicit-labels state-acc\n");
    out.push_str("--BODY--\n");
    let labels: Vec<String> = (0..k).map(|l| one_hot_label(l, k)).collect();
    for s in 0..b.state_count() {
        out.push_str(&format!("State: {s}"));
        if names {
            write!(out, " {}", quote(&b.payload(s).to_string())).unwrap();
        }
        if b.is_accepting(s) {
            out.push_str(" {0}");
        }
        out.push('\n');
        for (l, label) in labels.iter().enumerate() {
            for &t in b.successors(s, l) {
                writeln!(out, "[{label}] {t}").unwrap();
            }
        }
    }
    out.push_str("--END--\n");
    out
}

fn one_hot_label(letter: usize, k: usize) -> String {
    (0..k)
        .map(|i| {
            if i == letter {
                i.to_string()
            } else {
                format!("!{i}")
            }
        })
        .collect::<Vec<_>>()
        .join("&")
}

fn quote(s: &str) -> String {
    let mut q = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            q.push('\\');
        }
        q.push(c);
    }
    q.push('"');
    q
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoaError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unsupported HOA feature: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Automaton(#[from] NbaError),
}

/// Reads a state-based Büchi automaton with explicit transition labels over
/// a one-hot AP encoding. State names, if present, become the payloads.
/// Labels may be any Boolean combination of APs; a transition is taken on
/// letter `i` when its label holds in the one-hot valuation of `i`.
pub fn parse_hoa(text: &str) -> Result<Nba<String>, HoaError> {
    let err = |line: usize, message: &str| HoaError::Syntax {
        line,
        message: message.to_string(),
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut states: Option<usize> = None;
    let mut initial = Vec::new();
    let mut aps: Option<Vec<String>> = None;
    let mut seen_header = false;
    loop {
        let Some((ln, l)) = lines.next() else {
            return Err(err(text.lines().count(), "missing --BODY--"));
        };
        if l.is_empty() {
            continue;
        }
        if l == "--BODY--" {
            break;
        }
        let (key, rest) = l
            .split_once(':')
            .ok_or_else(|| err(ln, "expected `name: value`"))?;
        let rest = rest.trim();
        match key {
            "HOA" => {
                if rest != "v1" {
                    return Err(HoaError::Unsupported(format!("version {rest}")));
                }
                seen_header = true;
            }
            "States" => states = Some(rest.parse().map_err(|_| err(ln, "bad state count"))?),
            "Start" => {
                if rest.contains('&') {
                    return Err(HoaError::Unsupported("conjunctive initial states".into()));
                }
                initial.push(rest.parse().map_err(|_| err(ln, "bad start state"))?);
            }
            "AP" => {
                let toks = tokenize_header(rest).map_err(|m| err(ln, &m))?;
                let (count, names) = toks
                    .split_first()
                    .ok_or_else(|| err(ln, "missing AP count"))?;
                let count: usize = count.parse().map_err(|_| err(ln, "bad AP count"))?;
                if names.len() != count {
                    return Err(err(ln, "AP count does not match the names"));
                }
                aps = Some(names.to_vec());
            }
            "Acceptance" => {
                let compact: String = rest.split_whitespace().collect();
                if compact != "1Inf(0)" {
                    return Err(HoaError::Unsupported(format!("acceptance {rest}")));
                }
            }
            _ => {}
        }
    }
    if !seen_header {
        return Err(err(1, "missing `HOA: v1`"));
    }
    let aps = aps.ok_or_else(|| err(1, "missing AP header"))?;
    let k = aps.len();
    let n = states.ok_or_else(|| HoaError::Unsupported("missing States header".into()))?;
    let mut names = vec![String::new(); n];
    let mut accepting = vec![false; n];
    let mut delta = vec![vec![Vec::new(); k]; n];
    let mut current: Option<usize> = None;
    for (ln, l) in lines {
        if l.is_empty() {
            continue;
        }
        if l == "--END--" {
            let names = names
                .into_iter()
                .enumerate()
                .map(|(i, s)| if s.is_empty() { i.to_string() } else { s })
                .collect();
            return Ok(Nba::new(aps, names, initial, accepting, delta)?);
        }
        if let Some(rest) = l.strip_prefix("State:") {
            let rest = rest.trim();
            if rest.starts_with('[') {
                return Err(HoaError::Unsupported("state labels".into()));
            }
            let (num, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let s: usize = num.parse().map_err(|_| err(ln, "bad state number"))?;
            if s >= n {
                return Err(err(ln, "state number out of range"));
            }
            let mut tail = tail.trim();
            if tail.starts_with('"') {
                let (name, after) = read_quoted(tail).map_err(|m| err(ln, &m))?;
                names[s] = name;
                tail = after.trim();
            }
            match tail {
                "" => {}
                "{0}" => accepting[s] = true,
                _ => return Err(HoaError::Unsupported(format!("acceptance marks `{tail}`"))),
            }
            current = Some(s);
            continue;
        }
        let s = current.ok_or_else(|| err(ln, "edge before the first state"))?;
        let body = l
            .strip_prefix('[')
            .ok_or_else(|| HoaError::Unsupported("implicit labels".into()))?;
        let (label, target) = body
            .split_once(']')
            .ok_or_else(|| err(ln, "unterminated label"))?;
        let target = target.trim();
        if target.contains('{') || target.contains('&') {
            return Err(HoaError::Unsupported(
                "transition marks or alternation".into(),
            ));
        }
        let t: usize = target.parse().map_err(|_| err(ln, "bad target state"))?;
        let label = Label::parse(label, k).map_err(|m| err(ln, &m))?;
        for (l, row) in delta[s].iter_mut().enumerate() {
            if label.holds(l) {
                row.push(t);
            }
        }
    }
    Err(err(text.lines().count(), "missing --END--"))
}

fn tokenize_header(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if rest.starts_with('"') {
            let (tok, after) = read_quoted(rest)?;
            out.push(tok);
            rest = after.trim_start();
        } else {
            let (tok, after) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            out.push(tok.to_string());
            rest = after.trim_start();
        }
    }
    Ok(out)
}

fn read_quoted(s: &str) -> Result<(String, &str), String> {
    let mut out = String::new();
    let mut chars = s.char_indices().skip(1);
    while let Some((i, c)) = chars.next() {
        match c {
            '\\' => out.push(chars.next().ok_or("dangling escape")?.1),
            '"' => return Ok((out, &s[i + 1..])),
            c => out.push(c),
        }
    }
    Err("unterminated string".into())
}

/// Boolean label over AP indices.
enum Label {
    Const(bool),
    Ap(usize),
    Not(Box<Label>),
    And(Box<Label>, Box<Label>),
    Or(Box<Label>, Box<Label>),
}

impl Label {
    fn parse(s: &str, aps: usize) -> Result<Label, String> {
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = LabelParser { toks, pos: 0, aps };
        let l = p.or()?;
        if p.pos != p.toks.len() {
            return Err(format!("unexpected `{}` in label", p.toks[p.pos]));
        }
        Ok(l)
    }

    fn holds(&self, letter: usize) -> bool {
        match self {
            Label::Const(b) => *b,
            Label::Ap(i) => *i == letter,
            Label::Not(l) => !l.holds(letter),
            Label::And(a, b) => a.holds(letter) && b.holds(letter),
            Label::Or(a, b) => a.holds(letter) || b.holds(letter),
        }
    }
}

struct LabelParser {
    toks: Vec<char>,
    pos: usize,
    aps: usize,
}

impl LabelParser {
    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).copied()
    }

    fn or(&mut self) -> Result<Label, String> {
        let mut l = self.and()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            l = Label::Or(Box::new(l), Box::new(self.and()?));
        }
        Ok(l)
    }

    fn and(&mut self) -> Result<Label, String> {
        let mut l = self.not()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            l = Label::And(Box::new(l), Box::new(self.not()?));
        }
        Ok(l)
    }

    fn not(&mut self) -> Result<Label, String> {
        match self.peek() {
            Some('!') => {
                self.pos += 1;
                Ok(Label::Not(Box::new(self.not()?)))
            }
            Some('(') => {
                self.pos += 1;
                let l = self.or()?;
                if self.peek() != Some(')') {
                    return Err("expected `)` in label".into());
                }
                self.pos += 1;
                Ok(l)
            }
            Some('t') => {
                self.pos += 1;
                Ok(Label::Const(true))
            }
            Some('f') => {
                self.pos += 1;
                Ok(Label::Const(false))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let i: usize = self.toks[start..self.pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .unwrap();
                if i >= self.aps {
                    return Err(format!("AP {i} out of range"));
                }
                Ok(Label::Ap(i))
            }
            Some(c) => Err(format!("unexpected `{c}` in label")),
            None => Err("empty label".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_loop() -> Nba<String> {
        Nba::new(
            vec!["a".into()],
            vec!["q".into()],
            vec![0],
            vec![true],
            vec![vec![vec![0]]],
        )
        .unwrap()
    }

    #[test]
    fn one_state_loop() {
        let text = print_hoa(&single_loop(), false);
        assert_eq!(
            text,
            "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"a\"\nacc-name: Buchi\nAcceptance: 1 Inf(0)\n\
             properties: trans-labels explicit-labels state-acc\n--BODY--\nState: 0 {0}\n[0] 0\n--END--\n"
        );
    }

    #[test]
    fn one_hot_labels() {
        assert_eq!(one_hot_label(0, 2), "0&!1");
        assert_eq!(one_hot_label(1, 2), "!0&1");
    }

    #[test]
    fn round_trip_with_names() {
        let b = Nba::new(
            vec!["a".into(), "b".into()],
            vec!["x \"y\"".to_string(), "z".into()],
            vec![0, 1],
            vec![false, true],
            vec![vec![vec![0, 1], vec![]], vec![vec![1], vec![0]]],
        )
        .unwrap();
        let back = parse_hoa(&print_hoa(&b, true)).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn general_labels() {
        let text =
            "HOA: v1\nStates: 1\nStart: 0\nAP: 2 \"a\" \"b\"\nAcceptance: 1 Inf(0)\n--BODY--\n\
                    State: 0 {0}\n[t] 0\n[!0] 0\n--END--\n";
        let b = parse_hoa(text).unwrap();
        assert_eq!(b.successors(0, 0), &[0]);
        assert_eq!(b.successors(0, 1), &[0]);
    }

    #[test]
    fn rejects_other_acceptance() {
        let text = print_hoa(&single_loop(), false).replace("1 Inf(0)", "2 Inf(0)&Inf(1)");
        assert!(matches!(parse_hoa(&text), Err(HoaError::Unsupported(_))));
    }
}
