//! Words of reduced length `2n` in `Z^∞ ∗ Z^∞`, stored as a pair of exponent
//! matrices: column `j` of `x` is the `j`-th a-block, column `j` of `y` the
//! `j`-th b-block.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether `rows` (each of length `n`) sum to zero row-wise and leave no
/// column identically zero.
pub fn validate_mn(n: usize, rows: &[Vec<i64>]) -> bool {
    n > 0
        && rows.iter().all(|r| r.len() == n && r.iter().sum::<i64>() == 0)
        && (0..n).all(|j| rows.iter().any(|r| r[j] != 0))
}

/// Integer matrix whose row `i` lists the exponents of generator `i + 1`
/// across the `n` blocks. Trailing all-zero rows are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentMatrix {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl ExponentMatrix {
    pub fn new(n: usize, mut rows: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                context: "exponent matrix row",
                expected: n,
                found: bad.len(),
            });
        }
        while rows.last().is_some_and(|r| r.iter().all(|&v| v == 0)) {
            rows.pop();
        }
        if !validate_mn(n, &rows) {
            return Err(Error::invalid(format!(
                "exponent matrix {rows:?} must have zero row sums and no zero column"
            )));
        }
        Ok(ExponentMatrix { n, rows })
    }

    /// A matrix with a single row.
    pub fn single(row: Vec<i64>) -> Result<Self> {
        Self::new(row.len(), vec![row])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Column `j` as a vector over the generators.
    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }
}

impl Serialize for ExponentMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

/// A word `a^{x_1} b^{y_1} ⋯ a^{x_n} b^{y_n}` with vector exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    x: ExponentMatrix,
    y: ExponentMatrix,
}

#[derive(Serialize, Deserialize)]
struct WordWire {
    n: usize,
    x: Vec<Vec<i64>>,
    y: Vec<Vec<i64>>,
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WordWire {
            n: self.n(),
            x: self.x.rows.clone(),
            y: self.y.rows.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = WordWire::deserialize(d)?;
        let x = ExponentMatrix::new(wire.n, wire.x).map_err(serde::de::Error::custom)?;
        let y = ExponentMatrix::new(wire.n, wire.y).map_err(serde::de::Error::custom)?;
        Word::new(x, y).map_err(serde::de::Error::custom)
    }
}

impl Word {
    pub fn new(x: ExponentMatrix, y: ExponentMatrix) -> Result<Self> {
        if x.n != y.n {
            return Err(Error::DimensionMismatch {
                context: "word blocks",
                expected: x.n,
                found: y.n,
            });
        }
        Ok(Word { x, y })
    }

    pub fn from_rows(n: usize, x: Vec<Vec<i64>>, y: Vec<Vec<i64>>) -> Result<Self> {
        Word::new(ExponentMatrix::new(n, x)?, ExponentMatrix::new(n, y)?)
    }

    pub fn x(&self) -> &ExponentMatrix {
        &self.x
    }

    pub fn y(&self) -> &ExponentMatrix {
        &self.y
    }

    pub fn n(&self) -> usize {
        self.x.n
    }

    pub fn reduced_length(&self) -> usize {
        2 * self.n()
    }
}

pub fn reduced_length(w: &Word) -> usize {
    w.reduced_length()
}

fn render_block(out: &mut Vec<String>, letter: char, column: &[i64], bare: bool) {
    for (i, &e) in column.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let mut tok = if bare {
            letter.to_string()
        } else {
            format!("{letter}{}", i + 1)
        };
        if e != 1 {
            tok.push_str(&format!("^{e}"));
        }
        out.push(tok);
    }
}

/// Canonical text: generators ascending within each block, exponent 1
/// elided, bare `a`/`b` only when both factors use a single generator.
pub fn render_word(w: &Word) -> String {
    let bare = w.x.row_count() == 1 && w.y.row_count() == 1;
    let mut tokens = Vec::new();
    for j in 0..w.n() {
        render_block(&mut tokens, 'a', &w.x.column(j), bare);
        render_block(&mut tokens, 'b', &w.y.column(j), bare);
    }
    tokens.join(" ")
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_word(self))
    }
}

struct Token<'a> {
    text: &'a str,
    letter: char,
    generator: usize,
    exponent: i64,
}

fn parse_token(text: &str) -> Result<Token<'_>> {
    let bad = |msg: &str| Error::parse(text, msg);
    let mut chars = text.chars();
    let letter = match chars.next() {
        Some(c @ ('a' | 'b')) => c,
        _ => return Err(bad("expected generator `a` or `b`")),
    };
    let rest = &text[1..];
    let (sub, exp) = match rest.split_once('^') {
        Some((s, e)) => (s, Some(e)),
        None => (rest, None),
    };
    let generator = if sub.is_empty() {
        1
    } else {
        if !sub.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("subscript must be a positive decimal"));
        }
        match sub.parse::<usize>() {
            Ok(g) if g > 0 => g,
            _ => return Err(bad("subscript must be a positive decimal")),
        }
    };
    let exponent = match exp {
        None => 1,
        Some(e) => {
            let digits = e.strip_prefix('-').unwrap_or(e);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("exponent must be a nonzero integer"));
            }
            match e.parse::<i64>() {
                Ok(v) if v != 0 => v,
                Ok(_) => return Err(bad("exponent must be nonzero")),
                Err(_) => return Err(bad("exponent out of range")),
            }
        }
    };
    Ok(Token {
        text,
        letter,
        generator,
        exponent,
    })
}

/// Parse the whitespace-separated token grammar into a [`Word`].
pub fn parse_word(text: &str) -> Result<Word> {
    let tokens = text
        .split_whitespace()
        .map(parse_token)
        .collect::<Result<Vec<_>>>()?;
    let Some(first) = tokens.first() else {
        return Err(Error::parse("", "empty word"));
    };
    if first.letter != 'a' {
        return Err(Error::parse(first.text, "word must start with an a-letter"));
    }
    let last = tokens.last().unwrap();
    if last.letter != 'b' {
        return Err(Error::parse(last.text, "word must end with a b-letter"));
    }

    // Group maximal runs of one letter into blocks; run k alternates a, b.
    let mut blocks: Vec<(char, Vec<(usize, i64)>, &str)> = Vec::new();
    for t in &tokens {
        match blocks.last_mut() {
            Some((c, entries, _)) if *c == t.letter => entries.push((t.generator, t.exponent)),
            _ => blocks.push((t.letter, vec![(t.generator, t.exponent)], t.text)),
        }
    }
    let n = blocks.len() / 2;
    let x_gens = tokens.iter().filter(|t| t.letter == 'a').map(|t| t.generator).max().unwrap_or(0);
    let y_gens = tokens.iter().filter(|t| t.letter == 'b').map(|t| t.generator).max().unwrap_or(0);
    let mut x = vec![vec![0i64; n]; x_gens];
    let mut y = vec![vec![0i64; n]; y_gens];
    for (k, (letter, entries, head)) in blocks.iter().enumerate() {
        let target = if *letter == 'a' { &mut x } else { &mut y };
        let j = k / 2;
        for &(g, e) in entries {
            target[g - 1][j] = target[g - 1][j]
                .checked_add(e)
                .ok_or_else(|| Error::parse(*head, "exponent overflow"))?;
        }
        if target.iter().all(|row| row[j] == 0) {
            return Err(Error::parse(*head, "block is empty after combining exponents"));
        }
    }
    for (letter, rows) in [('a', &x), ('b', &y)] {
        for (i, row) in rows.iter().enumerate() {
            let total: i64 = row.iter().sum();
            if total != 0 {
                let name = if rows.len() == 1 {
                    letter.to_string()
                } else {
                    format!("{letter}{}", i + 1)
                };
                return Err(Error::parse(
                    name.clone(),
                    format!("generator {name} totals {total:+} ≠ 0; the word is not in the commutator subgroup"),
                ));
            }
        }
    }
    Word::from_rows(n, x, y)
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator() {
        let w = parse_word("a^1 b^1 a^-1 b^-1").unwrap();
        assert_eq!(w, Word::from_rows(2, vec![vec![1, -1]], vec![vec![1, -1]]).unwrap());
        assert_eq!(render_word(&w), "a b a^-1 b^-1");
        assert_eq!(w.reduced_length(), 4);
    }

    #[test]
    fn two_generator_b_factor() {
        let text = "a1 b1 b2 a1^-1 b1^-1 b2^-1";
        let w = parse_word(text).unwrap();
        assert_eq!(w.y().rows(), &[vec![1, -1], vec![1, -1]]);
        assert_eq!(render_word(&w), text);
    }

    #[test]
    fn rejects_bad_words() {
        let err = parse_word("a^2 b a^-1 b^-1").unwrap_err();
        assert!(matches!(err, Error::Parse { ref token, .. } if token == "a"));
        assert!(parse_word("a^2 b").is_err());
        assert!(parse_word("b a").is_err());
        assert!(parse_word("a c").is_err());
        assert!(parse_word("a^0 b").is_err());
        assert!(parse_word("a a^-1 b b^-1").is_err());
        assert!(parse_word("").is_err());
    }

    #[test]
    fn repeated_generators_are_summed() {
        let w = parse_word("a a b a^-2 b^-1").unwrap();
        assert_eq!(w.x().rows(), &[vec![2, -2]]);
    }

    #[test]
    fn validate_examples() {
        assert!(validate_mn(2, &[vec![1, -1]]));
        assert!(!validate_mn(3, &[vec![1, -1, 0], vec![0, 0, 0]]));
        assert!(!validate_mn(2, &[vec![2, -1]]));
    }

    #[test]
    fn json_round_trip() {
        let w = parse_word("a1 b1 b2 a1^-1 b1^-1 b2^-1").unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"n":2,"x":[[1,-1]],"y":[[1,-1],[1,-1]]}"#);
        let back: Word = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }
}
