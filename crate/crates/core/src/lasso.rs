//! Ultimately periodic words `u·v^ω`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The word `prefix · period^ω` over letter indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct LassoWord {
    prefix: Vec<usize>,
    period: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LassoError {
    #[error("lasso period must not be empty")]
    EmptyPeriod,
    #[error("lasso literal needs exactly one `;` separating prefix and period")]
    MissingSeparator,
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
}

impl LassoWord {
    pub fn new(prefix: Vec<usize>, period: Vec<usize>) -> Result<LassoWord, LassoError> {
        if period.is_empty() {
            return Err(LassoError::EmptyPeriod);
        }
        Ok(LassoWord { prefix, period })
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn period(&self) -> &[usize] {
        &self.period
    }

    /// Number of distinct positions: `|u| + |v|`.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letter at lasso position `i < len()`.
    pub fn letter(&self, i: usize) -> usize {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[i - self.prefix.len()]
        }
    }

    /// Position following `i`; the last position wraps to `|u|`.
    pub fn succ(&self, i: usize) -> usize {
        if i + 1 < self.len() {
            i + 1
        } else {
            self.prefix.len()
        }
    }

    /// Lasso position of the `t`-th letter of the infinite word.
    pub fn position(&self, t: usize) -> usize {
        let u = self.prefix.len();
        if t < u {
            t
        } else {
            u + (t - u) % self.period.len()
        }
    }

    /// The `t`-th letter of the infinite word.
    pub fn at(&self, t: usize) -> usize {
        self.letter(self.position(t))
    }

    /// First `k` letters of the infinite word.
    pub fn unroll(&self, k: usize) -> Vec<usize> {
        (0..k).map(|t| self.at(t)).collect()
    }

    /// Every letter index is `< letters`.
    pub fn letters_below(&self, letters: usize) -> bool {
        self.prefix.iter().chain(&self.period).all(|&l| l < letters)
    }

    /// Canonical representative of the same ω-word: the period is made
    /// primitive, then trailing prefix letters are folded into the period by
    /// rotation. Two lassos denote the same word iff their normal forms agree.
    pub fn normalize(&self) -> LassoWord {
        let mut period = primitive_root(&self.period).to_vec();
        let mut prefix = self.prefix.clone();
        while let Some(&last) = prefix.last() {
            if last != *period.last().unwrap() {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        LassoWord { prefix, period }
    }

    pub fn is_normalized(&self) -> bool {
        self.normalize() == *self
    }

    /// Parses `u;v` with letters separated by whitespace, e.g. `a b;b a`.
    pub fn parse(text: &str, alphabet: &[String]) -> Result<LassoWord, LassoError> {
        let (u, v) = text.split_once(';').ok_or(LassoError::MissingSeparator)?;
        if v.contains(';') {
            return Err(LassoError::MissingSeparator);
        }
        let letters = |s: &str| -> Result<Vec<usize>, LassoError> {
            s.split_whitespace()
                .map(|l| {
                    alphabet
                        .iter()
                        .position(|a| a == l)
                        .ok_or_else(|| LassoError::UnknownLetter(l.to_string()))
                })
                .collect()
        };
        LassoWord::new(letters(u)?, letters(v)?)
    }

    /// Renders in the `u;v` literal syntax.
    pub fn display<'a>(&'a self, alphabet: &'a [String]) -> impl fmt::Display + 'a {
        LassoDisplay {
            word: self,
            alphabet,
        }
    }

    /// All normalized lassos with `|u| ≤ max_prefix` and `1 ≤ |v| ≤ max_period`
    /// over `letters` letters, each exactly once, ordered by total length,
    /// then prefix length, then lexicographically.
    pub fn grid(letters: usize, max_prefix: usize, max_period: usize) -> Vec<LassoWord> {
        let mut out = Vec::new();
        for total in 1..=max_prefix + max_period {
            for u_len in 0..=max_prefix.min(total - 1) {
                let v_len = total - u_len;
                if v_len > max_period {
                    continue;
                }
                for u in words(letters, u_len) {
                    for v in words(letters, v_len) {
                        let w = LassoWord {
                            prefix: u.clone(),
                            period: v,
                        };
                        if w.is_normalized() {
                            out.push(w);
                        }
                    }
                }
            }
        }
        out
    }
}

fn words(letters: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..letters).map(move |l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    out
}

fn primitive_root(v: &[usize]) -> &[usize] {
    let n = v.len();
    for d in 1..n {
        if n.is_multiple_of(d) && (d..n).all(|i| v[i] == v[i - d]) {
            return &v[..d];
        }
    }
    v
}

struct LassoDisplay<'a> {
    word: &'a LassoWord,
    alphabet: &'a [String],
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| {
            xs.iter()
                .map(|&l| self.alphabet[l].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "{};{}", join(&self.word.prefix), join(&self.word.period))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(u: &[usize], v: &[usize]) -> LassoWord {
        LassoWord::new(u.to_vec(), v.to_vec()).unwrap()
    }

    /// Independent check: two lassos denote the same ω-word iff they agree
    /// on a long enough unrolling.
    fn same_word(a: &LassoWord, b: &LassoWord) -> bool {
        let k = a.prefix().len().max(b.prefix().len()) + 2 * a.period().len() * b.period().len();
        a.unroll(k) == b.unroll(k)
    }

    #[test]
    fn normalize_examples() {
        // a;b b -> a;b
        assert_eq!(w(&[0], &[1, 1]).normalize(), w(&[0], &[1]));
        // ;a stays
        assert_eq!(w(&[], &[0]).normalize(), w(&[], &[0]));
        // a b;b a is already canonical: ab(ba)^ω = abbaba... differs from a(ba)^ω
        let x = w(&[0, 1], &[1, 0]);
        assert_eq!(x.normalize(), x);
        assert!(!same_word(&x, &w(&[0], &[1, 0])));
        // a b;a b -> ;a b
        assert_eq!(w(&[0, 1], &[0, 1]).normalize(), w(&[], &[0, 1]));
    }

    #[test]
    fn parse_and_display() {
        let ab: Vec<String> = vec!["a".into(), "b".into()];
        let l = LassoWord::parse("a b;b a", &ab).unwrap();
        assert_eq!(l, w(&[0, 1], &[1, 0]));
        assert_eq!(l.display(&ab).to_string(), "a b;b a");
        assert_eq!(LassoWord::parse(";b", &ab).unwrap(), w(&[], &[1]));
        assert_eq!(LassoWord::parse("a;", &ab), Err(LassoError::EmptyPeriod));
        assert_eq!(
            LassoWord::parse("a", &ab),
            Err(LassoError::MissingSeparator)
        );
        assert_eq!(
            LassoWord::parse("c;a", &ab),
            Err(LassoError::UnknownLetter("c".into()))
        );
    }

    #[test]
    fn positions_wrap_into_period() {
        let l = w(&[0], &[1, 0]);
        assert_eq!(l.len(), 3);
        assert_eq!(l.succ(2), 1);
        assert_eq!(l.unroll(6), vec![0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn unary_grid_is_single_word() {
        assert_eq!(LassoWord::grid(1, 3, 1), vec![w(&[], &[0])]);
        assert_eq!(LassoWord::grid(1, 3, 4), vec![w(&[], &[0])]);
    }

    #[test]
    fn grid_has_no_duplicate_words() {
        let g = LassoWord::grid(2, 2, 3);
        for (i, a) in g.iter().enumerate() {
            for b in &g[i + 1..] {
                assert!(!same_word(a, b), "{a:?} ~ {b:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn normalize_preserves_the_word(
            u in prop::collection::vec(0usize..2, 0..4),
            v in prop::collection::vec(0usize..2, 1..5),
        ) {
            let l = w(&u, &v);
            let n = l.normalize();
            prop_assert!(same_word(&l, &n));
            prop_assert!(n.is_normalized());
        }

        #[test]
        fn equal_words_have_equal_normal_forms(
            u1 in prop::collection::vec(0usize..2, 0..3),
            v1 in prop::collection::vec(0usize..2, 1..4),
            u2 in prop::collection::vec(0usize..2, 0..3),
            v2 in prop::collection::vec(0usize..2, 1..4),
        ) {
            let (a, b) = (w(&u1, &v1), w(&u2, &v2));
            prop_assert_eq!(same_word(&a, &b), a.normalize() == b.normalize());
        }
    }
}
