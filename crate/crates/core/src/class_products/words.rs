//! Words in free groups and their images on `S_n` and `A_n`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::ProductError;
use crate::group::{EnumeratedGroup, NormalSubset};
use crate::perm::Permutation;

/// Largest `|G|^d` a word image will enumerate.
pub const WORD_IMAGE_GUARD: u128 = 500_000_000;

/// Freely reduced sequence of `(letter, ±1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<(usize, i8)>,
    num_letters: usize,
}

impl Word {
    pub fn new(raw: Vec<(usize, i8)>) -> Self {
        let mut letters: Vec<(usize, i8)> = Vec::with_capacity(raw.len());
        for (l, e) in raw {
            debug_assert!(e == 1 || e == -1);
            match letters.last() {
                Some(&(pl, pe)) if pl == l && pe == -e => {
                    letters.pop();
                }
                _ => letters.push((l, e)),
            }
        }
        let num_letters = letters.iter().map(|&(l, _)| l + 1).max().unwrap_or(0);
        Word {
            letters,
            num_letters,
        }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    /// Number of variables, `d`.
    pub fn num_letters(&self) -> usize {
        self.num_letters
    }

    pub fn inverse(&self) -> Word {
        Word::new(self.letters.iter().rev().map(|&(l, e)| (l, -e)).collect())
    }

    fn concat(&self, other: &Word) -> Word {
        Word::new(self.letters.iter().chain(&other.letters).copied().collect())
    }

    fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::new(vec![]), |acc, _| acc.concat(&base))
    }

    /// `[u, v] = u⁻¹ v⁻¹ u v`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    /// Evaluates with `values[i]` substituted for letter `i`.
    pub fn evaluate(&self, values: &[Permutation]) -> Permutation {
        let n = values.first().map_or(0, Permutation::degree);
        let inverses: Vec<Permutation> = values.iter().map(Permutation::inverse).collect();
        self.letters
            .iter()
            .fold(Permutation::identity(n), |acc, &(l, e)| {
                acc.mul(if e > 0 { &values[l] } else { &inverses[l] })
            })
    }

    fn evaluate_indices(
        &self,
        group: &EnumeratedGroup,
        values: &[usize],
        inverses: &[usize],
    ) -> usize {
        self.letters.iter().fold(group.identity(), |acc, &(l, e)| {
            group.mul(acc, if e > 0 { values[l] } else { inverses[l] })
        })
    }
}

const ALPHABET: &str = "xyzwuvabcdefghijklmnopqrst";

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<char> = ALPHABET.chars().collect();
        let mut i = 0;
        let mut first = true;
        while i < self.letters.len() {
            let (l, e) = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == (l, e) {
                run += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let exp = e as i64 * run as i64;
            if exp == 1 {
                write!(f, "{}", names[l])?;
            } else {
                write!(f, "{}^{}", names[l], exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> ProductError {
        ProductError::InvalidWord(format!("{msg} at byte {}", self.pos))
    }

    fn expr(&mut self) -> Result<Word, ProductError> {
        let mut w = self.term()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    w = w.concat(&self.term()?);
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'[' || c == b'(' => {
                    w = w.concat(&self.term()?);
                }
                _ => return Ok(w),
            }
        }
    }

    fn term(&mut self) -> Result<Word, ProductError> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.peek();
            let start = self.pos;
            if self.src.get(self.pos) == Some(&b'-') {
                self.pos += 1;
            }
            while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
            let k: i64 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.err("expected integer exponent"))?;
            return Ok(atom.power(k));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Word, ProductError> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let u = self.expr()?;
                if self.peek() != Some(b',') {
                    return Err(self.err("expected ','"));
                }
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b']') {
                    return Err(self.err("expected ']'"));
                }
                self.pos += 1;
                Ok(Word::commutator(&u, &v))
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some(c) => {
                let idx = ALPHABET
                    .bytes()
                    .position(|a| a == c)
                    .ok_or_else(|| self.err("unknown letter"))?;
                self.pos += 1;
                Ok(Word::new(vec![(idx, 1)]))
            }
            None => Err(self.err("unexpected end")),
        }
    }
}

/// Letters `x, y, z, w, u, v, a, …` are variables 0, 1, 2, …; supports
/// juxtaposition or `*`, integer powers `^k`, parentheses and commutators
/// `[u,v]`.
impl FromStr for Word {
    type Err = ProductError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let w = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WordImage {
    pub subset: NormalSubset,
    /// Distinct values of the word map.
    pub image_size: usize,
    /// The image is exactly the union of the classes it meets.
    pub conjugation_closed: bool,
}

/// The image `w(G)`, by evaluating on all of `G^d`.
pub fn word_image(group: &EnumeratedGroup, word: &Word) -> Result<WordImage, ProductError> {
    let d = word.num_letters();
    let order = group.order();
    let total = (order as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > WORD_IMAGE_GUARD {
        return Err(ProductError::InvalidParameter(format!(
            "|G|^d = {total} exceeds guard"
        )));
    }
    let inverse: Vec<usize> = (0..order)
        .map(|i| group.inv_mul(i, group.identity()))
        .collect();
    let hit: Vec<bool> = if d == 0 {
        let mut h = vec![false; order];
        h[group.identity()] = true;
        h
    } else {
        (0..order)
            .into_par_iter()
            .map(|first| {
                let mut local = vec![false; order];
                let mut vals = vec![first; d];
                let mut invs = vec![inverse[first]; d];
                let rest = (order as u128).pow(d as u32 - 1);
                for r in 0..rest {
                    let mut rr = r;
                    for k in 1..d {
                        vals[k] = (rr % order as u128) as usize;
                        invs[k] = inverse[vals[k]];
                        rr /= order as u128;
                    }
                    local[word.evaluate_indices(group, &vals, &invs)] = true;
                }
                local
            })
            .reduce(
                || vec![false; order],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
                    a
                },
            )
    };
    let image_size = hit.iter().filter(|&&h| h).count();
    let classes: BTreeSet<usize> = (0..order)
        .filter(|&i| hit[i])
        .map(|i| group.class_of(i))
        .collect();
    let subset = NormalSubset::from_classes(group.n, group.kind, classes);
    let conjugation_closed = subset.size_u64() == image_size as u64;
    Ok(WordImage {
        subset,
        image_size,
        conjugation_closed,
    })
}
