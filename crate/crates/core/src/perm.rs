//! Permutation value types and notation changes.
//!
//! All public interfaces speak 1-based values: the one-line word of a
//! permutation of degree `n` is a rearrangement of `1..=n`. Composition is
//! `(u ∘ v)(i) = u(v(i))` everywhere in the crate.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest degree whose `n!` fits in a `u64` rank.
pub const MAX_RANKABLE_DEGREE: usize = 20;

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its one-line word, checking bijectivity.
    pub fn new(word: Vec<u8>) -> Result<Self> {
        validate_word(&word)?;
        Ok(Self { word })
    }

    /// Builds from any integer word, e.g. `&[3, 1, 2]`.
    pub fn from_values<T: Copy + TryInto<u8>>(values: &[T]) -> Result<Self> {
        let n = values.len();
        let word = values
            .iter()
            .map(|&v| v.try_into().map_err(|_| Error::DegreeUnrepresentable(n)))
            .collect::<Result<Vec<u8>>>()?;
        Self::new(word)
    }

    /// Wraps a word already known to be a bijection on `1..=len`.
    pub(crate) fn from_word_unchecked(word: Vec<u8>) -> Self {
        debug_assert!(validate_word(&word).is_ok());
        Self { word }
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        if n > u8::MAX as usize {
            return Err(Error::DegreeUnrepresentable(n));
        }
        Ok(Self {
            word: (1..=n as u8).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn into_word(self) -> Vec<u8> {
        self.word
    }

    /// `w(i)` for a 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.word
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0; self.word.len()];
        inverse_into(&self.word, &mut out);
        Self { word: out }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Self {
            word: other
                .word
                .iter()
                .map(|&v| self.word[v as usize - 1])
                .collect(),
        })
    }

    pub fn to_ccd(&self) -> CycleDecomposition {
        let mut flat = vec![0; self.word.len()];
        let mut starts = Vec::new();
        ccd_flat_into(&self.word, &mut flat, Some(&mut starts));
        let mut cycles = Vec::with_capacity(starts.len());
        for (k, &s) in starts.iter().enumerate() {
            let e = starts.get(k + 1).copied().unwrap_or(flat.len());
            cycles.push(flat[s..e].to_vec());
        }
        CycleDecomposition {
            n: self.word.len(),
            cycles,
        }
    }

    pub fn rank(&self) -> Result<PermRank> {
        let n = self.degree();
        if n > MAX_RANKABLE_DEGREE {
            return Err(Error::RankOverflow(n));
        }
        Ok(PermRank {
            n,
            index: rank_word(&self.word),
        })
    }

    pub fn unrank(rank: PermRank) -> Result<Self> {
        let PermRank { n, index } = rank;
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        if n > MAX_RANKABLE_DEGREE {
            return Err(Error::RankOverflow(n));
        }
        if index >= factorial(n) {
            return Err(Error::RankOutOfRange { index, n });
        }
        let mut word = vec![0; n];
        unrank_into(index, &mut word);
        Ok(Self { word })
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = Permutation>> {
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        if n > MAX_RANKABLE_DEGREE {
            return Err(Error::RankOverflow(n));
        }
        Ok((0..factorial(n)).map(move |index| {
            let mut word = vec![0; n];
            unrank_into(index, &mut word);
            Permutation { word }
        }))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.word)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_word(s)?)
    }
}

/// Digit string for degree ≤ 9, space-separated otherwise.
pub(crate) fn write_word(f: &mut impl fmt::Write, word: &[u8]) -> fmt::Result {
    if word.len() <= 9 && word.iter().all(|&v| v <= 9) {
        for &v in word {
            write!(f, "{v}")?;
        }
    } else {
        for (k, &v) in word.iter().enumerate() {
            if k > 0 {
                f.write_char(' ')?;
            }
            write!(f, "{v}")?;
        }
    }
    Ok(())
}

pub(crate) fn word_to_string(word: &[u8]) -> String {
    let mut s = String::new();
    write_word(&mut s, word).expect("writing to a String cannot fail");
    s
}

/// Accepts a compact digit string or whitespace/comma separated integers.
fn parse_word(s: &str) -> Result<Vec<u8>> {
    let s = s.trim();
    let parse_num = |t: &str| -> Result<u8> {
        t.parse::<u8>()
            .map_err(|_| Error::Parse(format!("bad permutation entry `{t}`")))
    };
    if s.contains(|c: char| c.is_whitespace() || c == ',') {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(parse_num)
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("bad digit `{c}` in `{s}`")))
            })
            .collect()
    }
}

fn validate_word(word: &[u8]) -> Result<()> {
    let n = word.len();
    if n == 0 {
        return Err(Error::EmptyPermutation);
    }
    if n > u8::MAX as usize {
        return Err(Error::DegreeUnrepresentable(n));
    }
    let mut seen = vec![false; n + 1];
    for &v in word {
        let v = v as usize;
        if v == 0 || v > n {
            return Err(Error::ValueOutOfRange { value: v, n });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::DuplicateValue(v));
        }
    }
    Ok(())
}

/// Canonical (disjoint) cycle decomposition: every cycle starts with its
/// maximum and cycles appear in increasing order of their maxima.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    n: usize,
    cycles: Vec<Vec<u8>>,
}

impl CycleDecomposition {
    pub fn new(n: usize, cycles: Vec<Vec<u8>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        if n > u8::MAX as usize {
            return Err(Error::DegreeUnrepresentable(n));
        }
        let mut seen = vec![false; n + 1];
        let mut prev_first = 0u8;
        for (index, cycle) in cycles.iter().enumerate() {
            let &first = cycle.first().ok_or(Error::EmptyCycle { index })?;
            for &v in cycle {
                let vu = v as usize;
                if vu == 0 || vu > n {
                    return Err(Error::ValueOutOfRange { value: vu, n });
                }
                if std::mem::replace(&mut seen[vu], true) {
                    return Err(Error::DuplicateValue(vu));
                }
            }
            if cycle.iter().any(|&v| v > first) {
                return Err(Error::CycleNotMaxFirst { index });
            }
            if first <= prev_first {
                return Err(Error::CyclesOutOfOrder { index });
            }
            prev_first = first;
        }
        if let Some(missing) = (1..=n).find(|&v| !seen[v]) {
            return Err(Error::MissingValue(missing));
        }
        Ok(Self { n, cycles })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[Vec<u8>] {
        &self.cycles
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    /// The bijection sending each cycle entry to the next one.
    pub fn to_permutation(&self) -> Permutation {
        let mut word = vec![0u8; self.n];
        for cycle in &self.cycles {
            for (k, &v) in cycle.iter().enumerate() {
                word[v as usize - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_word_unchecked(word)
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spaced = self.n > 9;
        for (k, cycle) in self.cycles.iter().enumerate() {
            if spaced && k > 0 {
                f.write_str(" ")?;
            }
            f.write_str("(")?;
            for (j, &v) in cycle.iter().enumerate() {
                if spaced && j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl FromStr for CycleDecomposition {
    type Err = Error;

    /// Parses `(42)(6)(81)(9375)`; when the text contains whitespace every
    /// group is read as whitespace-separated integers instead of digits.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let spaced = s.contains(char::is_whitespace);
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` in `{s}`")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{s}`")))?;
            let group = &body[..close];
            let cycle = if spaced {
                group
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<u8>()
                            .map_err(|_| Error::Parse(format!("bad cycle entry `{t}`")))
                    })
                    .collect::<Result<Vec<u8>>>()?
            } else {
                parse_word(group)?
            };
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        let n = cycles.iter().map(Vec::len).sum();
        Self::new(n, cycles)
    }
}

/// A rearrangement of a finite set `S` of positive integers, read as the
/// bijection sending the `i`-th smallest element of `S` to `word[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialPermutation {
    support: Vec<u8>,
    word: Vec<u8>,
}

impl PartialPermutation {
    /// The support is the set of entries of `word`. The empty word is allowed.
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let mut support = word.clone();
        support.sort_unstable();
        if support.first() == Some(&0) {
            return Err(Error::ValueOutOfRange {
                value: 0,
                n: u8::MAX as usize,
            });
        }
        if let Some(w) = support.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateValue(w[0] as usize));
        }
        Ok(Self { support, word })
    }

    pub fn with_support(support: Vec<u8>, word: Vec<u8>) -> Result<Self> {
        let p = Self::new(word)?;
        if p.support != support {
            return Err(Error::SupportMismatch);
        }
        Ok(p)
    }

    pub fn support(&self) -> &[u8] {
        &self.support
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Relabels the support order-preservingly onto `1..=len`.
    ///
    /// The empty partial permutation has no standard form and yields `None`.
    pub fn standardize(&self) -> Option<Permutation> {
        if self.is_empty() {
            return None;
        }
        let word = self
            .word
            .iter()
            .map(|v| self.support.binary_search(v).expect("entry in support") as u8 + 1)
            .collect();
        Some(Permutation::from_word_unchecked(word))
    }

    /// Inverse of [`standardize`](Self::standardize) for this support.
    pub fn destandardize(&self, p: &Permutation) -> Result<Self> {
        if p.degree() != self.support.len() {
            return Err(Error::DegreeMismatch {
                left: self.support.len(),
                right: p.degree(),
            });
        }
        Ok(Self {
            support: self.support.clone(),
            word: p
                .word()
                .iter()
                .map(|&v| self.support[v as usize - 1])
                .collect(),
        })
    }
}

impl From<Permutation> for PartialPermutation {
    fn from(p: Permutation) -> Self {
        Self {
            support: (1..=p.degree() as u8).collect(),
            word: p.into_word(),
        }
    }
}

impl fmt::Display for PartialPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.word)
    }
}

/// Position of a permutation in the lexicographic order of `S_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermRank {
    pub n: usize,
    pub index: u64,
}

impl PermRank {
    pub fn new(n: usize, index: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        if n > MAX_RANKABLE_DEGREE {
            return Err(Error::RankOverflow(n));
        }
        if index >= factorial(n) {
            return Err(Error::RankOutOfRange { index, n });
        }
        Ok(Self { n, index })
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

// Slice kernels used by the orbit engine. Words are 1-based values.

pub(crate) fn inverse_into(word: &[u8], out: &mut [u8]) {
    for (i, &v) in word.iter().enumerate() {
        out[v as usize - 1] = i as u8 + 1;
    }
}

/// Lexicographic rank via the Lehmer code.
pub(crate) fn rank_word(word: &[u8]) -> u64 {
    let n = word.len();
    let mut index = 0u64;
    let mut used: u32 = 0;
    for (i, &v) in word.iter().enumerate() {
        let below = v as u32 - 1;
        let smaller_unused = below - (used & ((1u32 << below) - 1)).count_ones();
        index = index * (n - i) as u64 + smaller_unused as u64;
        used |= 1 << below;
    }
    index
}

pub(crate) fn unrank_into(mut index: u64, out: &mut [u8]) {
    let n = out.len();
    let mut digits = [0u64; MAX_RANKABLE_DEGREE];
    for k in (0..n).rev() {
        let base = (n - k) as u64;
        digits[k] = index % base;
        index /= base;
    }
    let mut free: Vec<u8> = (1..=n as u8).collect();
    for (slot, &d) in out.iter_mut().zip(&digits[..n]) {
        *slot = free.remove(d as usize);
    }
}

/// Writes the concatenated CCD cycles of `word` into `flat`, optionally
/// recording the start index of each cycle. This is exactly the Foata image.
pub(crate) fn ccd_flat_into(word: &[u8], flat: &mut [u8], mut starts: Option<&mut Vec<usize>>) {
    let n = word.len();
    // cycle_max[v] = largest element in the cycle of v
    let mut cycle_max = [0u8; 256];
    for start in 1..=n {
        if cycle_max[start] != 0 {
            continue;
        }
        let mut m = start as u8;
        let mut v = word[start - 1];
        while v as usize != start {
            m = m.max(v);
            v = word[v as usize - 1];
        }
        cycle_max[start] = m;
        let mut v = word[start - 1];
        while v as usize != start {
            cycle_max[v as usize] = m;
            v = word[v as usize - 1];
        }
    }
    let mut pos = 0;
    for m in 1..=n {
        if cycle_max[m] as usize != m {
            continue;
        }
        if let Some(s) = starts.as_deref_mut() {
            s.push(pos);
        }
        flat[pos] = m as u8;
        pos += 1;
        let mut v = word[m - 1];
        while v as usize != m {
            flat[pos] = v;
            pos += 1;
            v = word[v as usize - 1];
        }
    }
}
