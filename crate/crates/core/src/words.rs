//! Words over the alphabet {1, ..., l}, their total order, standard words,
//! Shirshov factorization and super-letters.
//!
//! Letters are stored 0-based and displayed 1-based. The order makes a
//! smaller letter at the first disagreement produce the greater word, and a
//! proper prefix greater than its extensions; the empty word is the maximum.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::nichols::FreeElement;
use crate::weights::{BicharTable, Weight};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i as u8])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// theta(u): the sum of alpha_{letter}.
    pub fn degree(&self, rank: usize) -> Weight {
        let mut v = vec![0i64; rank];
        for &c in &self.0 {
            v[c as usize] += 1;
        }
        Weight(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The word with position `r` removed.
    pub fn without(&self, r: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(r);
        Word(v)
    }

    pub fn split_at(&self, k: usize) -> (Word, Word) {
        (Word(self.0[..k].to_vec()), Word(self.0[k..].to_vec()))
    }

    /// Parses "112" (1-based letters, one digit each) or "1,1,12" style input.
    pub fn parse(s: &str, rank: usize) -> Result<Word> {
        let s = s.trim();
        let parts: Vec<&str> = if s.contains(',') { s.split(',').collect() } else { s.split("").filter(|p| !p.is_empty()).collect() };
        let mut out = Vec::new();
        for p in parts {
            let i: usize = p.trim().parse().map_err(|_| Error::Parse(format!("bad word {s:?}")))?;
            if i == 0 || i > rank {
                return Err(Error::OutOfRange(format!("letter {i} outside 1..={rank}")));
            }
            out.push((i - 1) as u8);
        }
        Ok(Word(out))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        word_compare(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.0.iter().any(|&c| c >= 9);
        for (k, c) in self.0.iter().enumerate() {
            if wide && k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Word::parse(&s, 255).map_err(serde::de::Error::custom)
    }
}

pub fn word_compare(u: &Word, v: &Word) -> Ordering {
    for (a, b) in u.0.iter().zip(&v.0) {
        if a != b {
            return if a < b { Ordering::Greater } else { Ordering::Less };
        }
    }
    v.0.len().cmp(&u.0.len())
}

pub fn is_standard(u: &Word) -> bool {
    if u.len() <= 1 {
        return true;
    }
    (1..u.len()).all(|k| {
        let (v, w) = u.split_at(k);
        *u > w.concat(&v)
    })
}

/// u = u_dot u_ddot with u_dot the shortest nonempty proper prefix such
/// that both factors are standard.
pub fn shirshov_factorize(u: &Word) -> Result<(Word, Word)> {
    if u.len() < 2 || !is_standard(u) {
        return Err(Error::NotStandard(u.to_string()));
    }
    for k in 1..u.len() {
        let (v, w) = u.split_at(k);
        if is_standard(&v) && is_standard(&w) {
            return Ok((v, w));
        }
    }
    Err(Error::Consistency(format!("standard word {u} has no standard factorization")))
}

/// The super-letter [u] in the free algebra.
pub fn super_letter(u: &Word, t: &BicharTable) -> Result<FreeElement> {
    if !is_standard(u) {
        return Err(Error::NotStandard(u.to_string()));
    }
    if u.len() <= 1 {
        return Ok(FreeElement::from_word(t.field(), u.clone()));
    }
    let (a, b) = shirshov_factorize(u)?;
    let la = super_letter(&a, t)?;
    let lb = super_letter(&b, t)?;
    let l = t.rank();
    let c = t.chi(&b.degree(l), &a.degree(l)).inv()?;
    Ok(&la.mul(&lb) - &lb.mul(&la).scale(&c))
}

/// All words w with theta(w) <= bound componentwise, nonempty.
pub fn enumerate_words(bound: &Weight) -> Vec<Word> {
    let l = bound.rank();
    let mut out = Vec::new();
    let mut stack = vec![(Word::empty(), vec![0i64; l])];
    while let Some((w, deg)) = stack.pop() {
        for i in 0..l {
            if deg[i] < bound[i] {
                let mut nd = deg.clone();
                nd[i] += 1;
                let mut nw = w.0.clone();
                nw.push(i as u8);
                let nw = Word(nw);
                out.push(nw.clone());
                stack.push((nw, nd));
            }
        }
    }
    out
}

/// All standard words with theta(u) <= bound, in ascending word order.
pub fn enumerate_standard(bound: &Weight) -> Vec<Word> {
    let mut out: Vec<Word> = enumerate_words(bound).into_iter().filter(is_standard).collect();
    out.sort();
    out
}

/// All words of exact degree `deg`, in descending word order.
pub fn words_of_degree(deg: &Weight) -> Vec<Word> {
    let l = deg.rank();
    let n: i64 = deg.height();
    let mut out = Vec::new();
    let mut counts = deg.0.clone();
    let mut cur = Vec::with_capacity(n as usize);
    fn rec(counts: &mut Vec<i64>, cur: &mut Vec<u8>, out: &mut Vec<Word>, l: usize, left: i64) {
        if left == 0 {
            out.push(Word(cur.clone()));
            return;
        }
        for i in 0..l {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(i as u8);
                rec(counts, cur, out, l, left - 1);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    if deg.is_nonneg() {
        rec(&mut counts, &mut cur, &mut out, l, n);
    }
    // generated in classical lexicographic order, which for equal lengths is
    // the reverse of the word order
    out
}

/// Factorization into a nondecreasing (in word order) product of standard words.
pub fn standard_factorization(w: &Word) -> Vec<Word> {
    // Duval's algorithm yields l_1 >=_lex l_2 >=_lex ... of Lyndon words;
    // Lyndon words for 1 < 2 < ... are exactly the standard words.
    let s = &w.0;
    let n = s.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(Word(s[i..i + j - k].to_vec()));
            i += j - k;
        }
    }
    out
}
