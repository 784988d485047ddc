//! Lyndon-word basis of the free Lie algebra on `k` generators.
//!
//! Basis words are Lyndon words in the order `x1 < x2 < … < xk`, bracketed
//! by their standard factorisation `w = uv` with `v` the longest proper
//! Lyndon suffix. The basis is ordered by length, then lexicographically on
//! the underlying letter sequence.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::arith::{divisors, gcd, mobius, multinomial};
use crate::error::{CalcError, Result};
use crate::stable_complex::{OddPrime, StableComplex};

/// Binary bracket tree over zero-based letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LieTree {
    Letter(u8),
    Bracket(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    fn leaves(&self, out: &mut Vec<u8>) {
        match self {
            LieTree::Letter(i) => out.push(*i),
            LieTree::Bracket(l, r) => {
                l.leaves(out);
                r.leaves(out);
            }
        }
    }
}

impl fmt::Display for LieTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieTree::Letter(i) => write!(f, "x{}", i + 1),
            LieTree::Bracket(l, r) => write!(f, "[{l},{r}]"),
        }
    }
}

/// A bracketed word together with its letter sequence and multidegree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieWord {
    tree: LieTree,
    foliage: Vec<u8>,
    multidegree: Vec<u32>,
}

impl LieWord {
    /// Wraps an arbitrary bracket tree over an alphabet of `k` letters.
    pub fn from_tree(tree: LieTree, k: usize) -> Result<Self> {
        let mut foliage = Vec::new();
        tree.leaves(&mut foliage);
        let mut multidegree = vec![0u32; k];
        for &letter in &foliage {
            let slot = multidegree.get_mut(usize::from(letter)).ok_or_else(|| {
                CalcError::precondition(format!("letter x{} outside alphabet of size {k}", letter + 1))
            })?;
            *slot += 1;
        }
        Ok(LieWord {
            tree,
            foliage,
            multidegree,
        })
    }

    pub fn letter(i: u8, k: usize) -> Result<Self> {
        Self::from_tree(LieTree::Letter(i), k)
    }

    /// Standard bracketing of a Lyndon word.
    pub fn standard(foliage: &[u8], k: usize) -> Result<Self> {
        if !is_lyndon(foliage) {
            return Err(CalcError::precondition(format!("{foliage:?} is not a Lyndon word")));
        }
        Self::from_tree(standard_bracketing(foliage), k)
    }

    pub fn tree(&self) -> &LieTree {
        &self.tree
    }

    pub fn foliage(&self) -> &[u8] {
        &self.foliage
    }

    pub fn multidegree(&self) -> &[u32] {
        &self.multidegree
    }

    pub fn alphabet_size(&self) -> usize {
        self.multidegree.len()
    }

    /// `|w|`, the number of letters.
    pub fn length(&self) -> u32 {
        self.foliage.len() as u32
    }

    /// Parses a bracket string such as `[x1,[x1,x2]]` over `k` letters.
    pub fn parse(s: &str, k: usize) -> Result<Self> {
        let tree: LieTree = s.parse()?;
        Self::from_tree(tree, k)
    }
}

impl fmt::Display for LieWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.tree.fmt(f)
    }
}

impl Serialize for LieWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for LieTree {
    type Err = CalcError;

    fn from_str(s: &str) -> Result<Self> {
        let bytes: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut pos = 0;
        let tree = parse_tree(&bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(CalcError::Schema(format!("trailing input in Lie word {s:?}")));
        }
        Ok(tree)
    }
}

fn parse_tree(b: &[u8], pos: &mut usize) -> Result<LieTree> {
    let bad = |what: &str| CalcError::Schema(format!("malformed Lie word: {what}"));
    match b.get(*pos) {
        Some(b'[') => {
            *pos += 1;
            let left = parse_tree(b, pos)?;
            if b.get(*pos) != Some(&b',') {
                return Err(bad("expected ','"));
            }
            *pos += 1;
            let right = parse_tree(b, pos)?;
            if b.get(*pos) != Some(&b']') {
                return Err(bad("expected ']'"));
            }
            *pos += 1;
            Ok(LieTree::Bracket(Box::new(left), Box::new(right)))
        }
        Some(b'x') => {
            *pos += 1;
            let start = *pos;
            while b.get(*pos).is_some_and(u8::is_ascii_digit) {
                *pos += 1;
            }
            let digits = std::str::from_utf8(&b[start..*pos]).map_err(|_| bad("letter index"))?;
            let index: u8 = digits.parse().map_err(|_| bad("letter index"))?;
            if index == 0 {
                return Err(bad("letters are numbered from x1"));
            }
            Ok(LieTree::Letter(index - 1))
        }
        _ => Err(bad("expected '[' or 'x'")),
    }
}

/// A word is Lyndon iff it is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(word: &[u8]) -> bool {
    !word.is_empty() && (1..word.len()).all(|i| word < &word[i..])
}

fn standard_bracketing(word: &[u8]) -> LieTree {
    if word.len() == 1 {
        return LieTree::Letter(word[0]);
    }
    // for a Lyndon word the longest proper Lyndon suffix is its smallest
    // proper suffix
    let split = (2..word.len()).fold(1, |best, i| if word[i..] < word[best..] { i } else { best });
    LieTree::Bracket(
        Box::new(standard_bracketing(&word[..split])),
        Box::new(standard_bracketing(&word[split..])),
    )
}

/// Lyndon words of length `1..=max_len` over `k` letters in lexicographic
/// order (Duval's generation algorithm).
fn lyndon_words_lex(k: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if k == 0 || max_len == 0 {
        return out;
    }
    let top = (k - 1) as u8;
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// The ordered basis `𝐋_k` truncated at `max_length`.
pub fn hall_basis(k: usize, max_length: u32) -> Vec<LieWord> {
    let mut words = lyndon_words_lex(k, max_length as usize);
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    words
        .into_iter()
        .map(|w| LieWord::from_tree(standard_bracketing(&w), k).expect("letters within alphabet"))
        .collect()
}

/// Basis words `B(n_1, …, n_k)` of a fixed multidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultidegreeBasis {
    pub degree: Vec<u32>,
    pub words: Vec<LieWord>,
}

impl MultidegreeBasis {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

fn check_degree(degree: &[u32]) -> Result<()> {
    if degree.is_empty() || degree.iter().all(|&d| d == 0) {
        return Err(CalcError::precondition("multidegree must have a positive entry"));
    }
    Ok(())
}

/// Words of `𝐋_k` with the given letter counts, in basis order.
///
/// Walks the arrangements of the letter multiset in lexicographic order and
/// keeps the Lyndon ones, which is the same set and order as filtering
/// [`hall_basis`] at the total length.
pub fn basis_multidegree(degree: &[u32]) -> Result<MultidegreeBasis> {
    check_degree(degree)?;
    let k = degree.len();
    let total: u32 = degree.iter().sum();
    let mut remaining = degree.to_vec();
    let mut current = Vec::with_capacity(total as usize);
    let mut found = Vec::new();
    arrangements(&mut remaining, &mut current, total as usize, &mut found);
    let words = found
        .into_iter()
        .map(|w| LieWord::from_tree(standard_bracketing(&w), k).expect("letters within alphabet"))
        .collect();
    Ok(MultidegreeBasis {
        degree: degree.to_vec(),
        words,
    })
}

fn arrangements(remaining: &mut [u32], current: &mut Vec<u8>, total: usize, out: &mut Vec<Vec<u8>>) {
    if current.len() == total {
        if is_lyndon(current) {
            out.push(current.clone());
        }
        return;
    }
    // a Lyndon word starts with its smallest letter
    if let Some(&first) = current.first() {
        if remaining[..usize::from(first)].iter().any(|&r| r > 0) {
            return;
        }
    }
    for letter in 0..remaining.len() {
        if remaining[letter] == 0 {
            continue;
        }
        remaining[letter] -= 1;
        current.push(letter as u8);
        arrangements(remaining, current, total, out);
        current.pop();
        remaining[letter] += 1;
    }
}

/// Witt's dimension formula for the multidegree piece of the free Lie algebra:
/// `(1/n) Σ_{d | gcd} μ(d) (n/d)! / Π (n_i/d)!`.
pub fn witt_count(degree: &[u32]) -> Result<u64> {
    check_degree(degree)?;
    let n: u64 = degree.iter().map(|&d| u64::from(d)).sum();
    let g = degree.iter().fold(0u64, |g, &d| gcd(g, u64::from(d)));
    let mut sum: i128 = 0;
    for d in divisors(g) {
        let parts: Vec<u64> = degree.iter().map(|&x| u64::from(x) / d).collect();
        let term = i128::try_from(multinomial(&parts)).expect("multinomial fits in i128");
        sum += i128::from(mobius(d)) * term;
    }
    debug_assert_eq!(sum % i128::from(n), 0);
    Ok(u64::try_from(sum / i128::from(n)).expect("Witt counts are nonnegative"))
}

/// Necklace polynomial `(1/m) Σ_{d | m} μ(d) k^{m/d}`: the number of basis
/// words of length exactly `m` on `k` letters.
pub fn necklace_count(k: u64, m: u32) -> u64 {
    assert!(m >= 1, "length must be positive");
    let m = u64::from(m);
    let sum: i128 = divisors(m)
        .into_iter()
        .map(|d| i128::from(mobius(d)) * i128::from(k).pow((m / d) as u32))
        .sum();
    u64::try_from(sum / i128::from(m)).expect("necklace counts are nonnegative")
}

/// Evaluates a word on complexes by smashing along its letters.
pub fn evaluate(word: &LieWord, xs: &[StableComplex]) -> Result<StableComplex> {
    if xs.len() != word.alphabet_size() {
        return Err(CalcError::precondition(format!(
            "word over {} letters evaluated on {} complexes",
            word.alphabet_size(),
            xs.len()
        )));
    }
    let prime: OddPrime = xs[0].prime();
    Ok(word
        .foliage()
        .iter()
        .fold(StableComplex::sphere(prime, 0), |acc, &i| acc.smash(&xs[usize::from(i)])))
}
