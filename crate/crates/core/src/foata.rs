//! The Rényi–Foata fundamental bijection.
//!
//! `foata` drops the parentheses of the canonical cycle decomposition and
//! reads the result in one-line notation. Its inverse opens a new cycle at
//! every record (left-to-right maximum).

use crate::perm::{ccd_flat_into, PartialPermutation, Permutation};

pub fn foata(w: &Permutation) -> Permutation {
    let mut out = vec![0; w.degree()];
    foata_into(w.word(), &mut out);
    Permutation::from_word_unchecked(out)
}

pub fn foata_inverse(u: &Permutation) -> Permutation {
    let mut out = vec![0; u.degree()];
    foata_inverse_into(u.word(), &mut out);
    Permutation::from_word_unchecked(out)
}

pub(crate) fn foata_into(word: &[u8], out: &mut [u8]) {
    ccd_flat_into(word, out, None);
}

pub(crate) fn foata_inverse_into(word: &[u8], out: &mut [u8]) {
    let n = word.len();
    let mut start = 0;
    while start < n {
        let head = word[start];
        let mut end = start + 1;
        while end < n && word[end] < head {
            end += 1;
        }
        for k in start..end {
            let next = if k + 1 < end { word[k + 1] } else { head };
            out[word[k] as usize - 1] = next;
        }
        start = end;
    }
}

/// Left-to-right maxima of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordSet {
    /// 1-based positions.
    pub positions: Vec<usize>,
    pub values: Vec<u8>,
}

impl RecordSet {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

pub fn records(w: &Permutation) -> RecordSet {
    records_of_word(w.word())
}

pub(crate) fn records_of_word(word: &[u8]) -> RecordSet {
    let mut positions = Vec::new();
    let mut values = Vec::new();
    let mut best = 0;
    for (i, &v) in word.iter().enumerate() {
        if v > best {
            best = v;
            positions.push(i + 1);
            values.push(v);
        }
    }
    RecordSet { positions, values }
}

/// Foata map on a partial permutation, using the support's own order.
pub fn foata_partial(p: &PartialPermutation) -> PartialPermutation {
    let map = function_table(p);
    let mut seen = [false; 256];
    let mut flat = Vec::with_capacity(p.len());
    // support is sorted, so visiting candidate maxima in support order
    // produces cycles in increasing order of their maxima
    for &m in p.support() {
        let mut v = map[m as usize];
        let mut is_max = true;
        while v != m {
            if v > m {
                is_max = false;
                break;
            }
            v = map[v as usize];
        }
        if !is_max || seen[m as usize] {
            continue;
        }
        let mut v = m;
        loop {
            seen[v as usize] = true;
            flat.push(v);
            v = map[v as usize];
            if v == m {
                break;
            }
        }
    }
    PartialPermutation::new(flat).expect("rearrangement of the support")
}

/// Inverse Foata map on a partial permutation.
pub fn foata_inverse_partial(p: &PartialPermutation) -> PartialPermutation {
    let word = p.word();
    let mut map = [0u8; 256];
    let mut start = 0;
    while start < word.len() {
        let head = word[start];
        let mut end = start + 1;
        while end < word.len() && word[end] < head {
            end += 1;
        }
        for k in start..end {
            map[word[k] as usize] = if k + 1 < end { word[k + 1] } else { head };
        }
        start = end;
    }
    let out = p.support().iter().map(|&x| map[x as usize]).collect();
    PartialPermutation::new(out).expect("rearrangement of the support")
}

fn function_table(p: &PartialPermutation) -> [u8; 256] {
    let mut map = [0u8; 256];
    for (&x, &y) in p.support().iter().zip(p.word()) {
        map[x as usize] = y;
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::CycleDecomposition;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn ccd(s: &str) -> Permutation {
        s.parse::<CycleDecomposition>().unwrap().to_permutation()
    }

    #[test]
    fn foata_examples() {
        assert_eq!(foata(&p("847296513")), p("426819375"));
        assert_eq!(foata(&ccd("(2)(43)(51)")), p("24351"));
        assert_eq!(foata(&p("123456")), p("123456"));
    }

    #[test]
    fn foata_inverse_examples() {
        let back = foata_inverse(&p("426819375"));
        assert_eq!(back, p("847296513"));
        assert_eq!(back.to_ccd().to_string(), "(42)(6)(81)(9375)");
        assert_eq!(foata_inverse(&p("15342")).to_ccd().to_string(), "(1)(5342)");
        assert_eq!(foata_inverse(&p("1234")), p("1234"));
    }

    #[test]
    fn records_examples() {
        assert_eq!(records(&p("426819375")).values, vec![4, 6, 8, 9]);
        assert_eq!(records(&p("426819375")).positions, vec![1, 3, 4, 6]);
        assert_eq!(records(&p("12345")).values, vec![1, 2, 3, 4, 5]);
        assert_eq!(records(&p("54321")).values, vec![5]);
    }

    #[test]
    fn partial_foata_matches_standardized() {
        let sigma = PartialPermutation::new(vec![7, 5, 3, 2, 9, 6]).unwrap();
        // σ = (53)(9627) on its support
        assert_eq!(foata_partial(&sigma).word(), &[5, 3, 9, 6, 2, 7]);
        assert_eq!(foata_inverse_partial(&foata_partial(&sigma)), sigma);
        let empty = PartialPermutation::new(vec![]).unwrap();
        assert!(foata_partial(&empty).is_empty());
    }
}
