//! Naive reference implementations for cross-checking the engine. Nothing
//! here calls into the library's map or enumeration code.

#![allow(dead_code)]

use std::collections::HashSet;

pub type Word = Vec<usize>;

/// All permutations of 1..=n in lexicographic order, by recursion.
pub fn all_words(n: usize) -> Vec<Word> {
    fn rec(prefix: &mut Word, left: &mut Vec<usize>, out: &mut Vec<Word>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..left.len() {
            let v = left.remove(k);
            prefix.push(v);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(k, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
    out
}

/// Cycles written largest-first, sorted by first element.
pub fn ccd(w: &[usize]) -> Vec<Word> {
    let n = w.len();
    let mut seen = vec![false; n + 1];
    let mut cycles = Vec::new();
    for s in 1..=n {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            c.push(v);
            v = w[v - 1];
        }
        let m = c.iter().enumerate().max_by_key(|(_, &x)| x).unwrap().0;
        c.rotate_left(m);
        cycles.push(c);
    }
    cycles.sort_by_key(|c| c[0]);
    cycles
}

pub fn from_cycles(n: usize, cycles: &[Word]) -> Word {
    let mut w = vec![0; n];
    for c in cycles {
        for k in 0..c.len() {
            w[c[k] - 1] = c[(k + 1) % c.len()];
        }
    }
    w
}

pub fn foata(w: &[usize]) -> Word {
    ccd(w).concat()
}

pub fn foata_inverse(u: &[usize]) -> Word {
    let mut cycles: Vec<Word> = Vec::new();
    let mut best = 0;
    for &v in u {
        if v > best {
            best = v;
            cycles.push(vec![v]);
        } else {
            cycles.last_mut().unwrap().push(v);
        }
    }
    from_cycles(u.len(), &cycles)
}

pub fn inverse(w: &[usize]) -> Word {
    let mut out = vec![0; w.len()];
    for (i, &v) in w.iter().enumerate() {
        out[v - 1] = i + 1;
    }
    out
}

pub fn complement(w: &[usize]) -> Word {
    w.iter().map(|&v| w.len() + 1 - v).collect()
}

pub fn reversal(w: &[usize]) -> Word {
    w.iter().rev().copied().collect()
}

pub fn symmetry(name: &str, w: &[usize]) -> Word {
    match name {
        "id" => w.to_vec(),
        "C" => complement(w),
        "R" => reversal(w),
        "rot" => complement(&reversal(w)),
        "I" => inverse(w),
        "D" => complement(&reversal(&inverse(w))),
        "Q" => complement(&inverse(w)),
        "Q3" => inverse(&complement(w)),
        _ => panic!("unknown symmetry {name}"),
    }
}

/// `b ∘ F⁻¹ ∘ a ∘ F` (bar) or `F ∘ b ∘ F⁻¹ ∘ a` (conj).
pub fn apply(a: &str, b: &str, bar: bool, w: &[usize]) -> Word {
    if bar {
        symmetry(b, &foata_inverse(&symmetry(a, &foata(w))))
    } else {
        foata(&symmetry(b, &foata_inverse(&symmetry(a, w))))
    }
}

/// Orbits in order of their least element; each listed from that element.
pub fn orbits(a: &str, b: &str, bar: bool, n: usize) -> Vec<Vec<Word>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in all_words(n) {
        if seen.contains(&w) {
            continue;
        }
        let mut orbit = vec![w.clone()];
        seen.insert(w.clone());
        let mut x = apply(a, b, bar, &w);
        while x != w {
            seen.insert(x.clone());
            orbit.push(x.clone());
            x = apply(a, b, bar, &x);
        }
        out.push(orbit);
    }
    out
}

pub fn fix(w: &[usize]) -> i64 {
    w.iter().enumerate().filter(|(i, &v)| v == i + 1).count() as i64
}

/// Whether `f` has the same average on every orbit.
pub fn homomesic(orbits: &[Vec<Word>], f: impl Fn(&[usize]) -> i64) -> bool {
    let avg = |o: &Vec<Word>| (o.iter().map(|w| f(w)).sum::<i64>(), o.len() as i64);
    let (s0, k0) = avg(&orbits[0]);
    orbits.iter().all(|o| {
        let (s, k) = avg(o);
        s * k0 == s0 * k
    })
}

pub fn word(s: &str) -> Word {
    s.chars()
        .map(|c| c.to_digit(10).unwrap() as usize)
        .collect()
}

pub const INVOLUTIONS: [&str; 5] = ["C", "R", "rot", "I", "D"];
