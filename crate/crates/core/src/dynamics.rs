//! Foatic actions and exhaustive orbit enumeration over `S_n`.
//!
//! The engine walks orbits by lexicographic rank. A flat bitset of `n!` bits
//! records visited permutations. An orbit is owned by the walk that starts at
//! its smallest rank; any other walk stops as soon as it meets a smaller rank,
//! so the reported orbits, and their order, do not depend on the worker count.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::foata::{foata_into, foata_inverse_into};
use crate::perm::{
    factorial, rank_word, unrank_into, word_to_string, Permutation, MAX_RANKABLE_DEGREE,
};
use crate::stats::StatisticId;
use crate::symmetry::{SymmetryOp, EXTENDED, INVOLUTIONS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    /// `B ∘ F⁻¹ ∘ A ∘ F`.
    Bar,
    /// `F ∘ B ∘ F⁻¹ ∘ A`.
    Conjugate,
}

impl Form {
    pub fn name(self) -> &'static str {
        match self {
            Form::Bar => "bar",
            Form::Conjugate => "conj",
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bar" => Ok(Form::Bar),
            "conj" => Ok(Form::Conjugate),
            _ => Err(Error::Parse(format!(
                "unknown form `{s}` (expected bar or conj)"
            ))),
        }
    }
}

/// One Foatic map: the symmetry `a` acts between `F` and `F⁻¹`, `b` after.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FoaticAction {
    pub a: SymmetryOp,
    pub b: SymmetryOp,
    pub form: Form,
}

impl FoaticAction {
    /// Reversal-inversion.
    pub const PHI_BAR: Self = Self::bar(SymmetryOp::Reversal, SymmetryOp::Inverse);
    pub const PHI: Self = Self::conj(SymmetryOp::Reversal, SymmetryOp::Inverse);
    /// Complement-inversion.
    pub const GAMMA_BAR: Self = Self::bar(SymmetryOp::Complement, SymmetryOp::Inverse);
    /// Complement-rotation.
    pub const RHO_BAR: Self = Self::bar(SymmetryOp::Complement, SymmetryOp::Rotate180);
    /// Reversal-rotation.
    pub const TAU_BAR: Self = Self::bar(SymmetryOp::Reversal, SymmetryOp::Rotate180);

    /// The four actions under which `Fix` is (conjecturally) 1-mesic.
    pub const GOOD: [Self; 4] = [Self::PHI_BAR, Self::GAMMA_BAR, Self::RHO_BAR, Self::TAU_BAR];

    pub const fn bar(a: SymmetryOp, b: SymmetryOp) -> Self {
        Self {
            a,
            b,
            form: Form::Bar,
        }
    }

    pub const fn conj(a: SymmetryOp, b: SymmetryOp) -> Self {
        Self {
            a,
            b,
            form: Form::Conjugate,
        }
    }

    pub fn with_form(self, form: Form) -> Self {
        Self { form, ..self }
    }

    /// All 25 pairs of dihedral involutions.
    pub fn standard(form: Form) -> Vec<Self> {
        pairs(&INVOLUTIONS, form)
    }

    /// The 49 pairs drawn from the involutions and both quarter turns.
    pub fn extended(form: Form) -> Vec<Self> {
        pairs(&EXTENDED, form)
    }

    /// `A,B` label.
    pub fn pair_label(&self) -> String {
        format!("{},{}", self.a, self.b)
    }

    pub fn apply(&self, w: &Permutation) -> Permutation {
        let mut out = vec![0; w.degree()];
        Stepper::new(*self, w.degree()).step(w.word(), &mut out);
        Permutation::from_word_unchecked(out)
    }

    /// Parses `A,B` with an explicit form.
    pub fn parse_pair(pair: &str, form: Form) -> Result<Self> {
        let (a, b) = pair
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `A,B`, got `{pair}`")))?;
        Ok(Self {
            a: a.trim().parse()?,
            b: b.trim().parse()?,
            form,
        })
    }
}

fn pairs(ops: &[SymmetryOp], form: Form) -> Vec<FoaticAction> {
    ops.iter()
        .flat_map(|&a| ops.iter().map(move |&b| FoaticAction { a, b, form }))
        .collect()
}

impl fmt::Display for FoaticAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{} {}", self.a, self.b, self.form)
    }
}

/// Reusable scratch space for applying an action to raw words.
#[derive(Clone, Debug)]
pub struct Stepper {
    action: FoaticAction,
    buf_a: Vec<u8>,
    buf_b: Vec<u8>,
}

impl Stepper {
    pub fn new(action: FoaticAction, n: usize) -> Self {
        Self {
            action,
            buf_a: vec![0; n],
            buf_b: vec![0; n],
        }
    }

    pub fn step(&mut self, word: &[u8], out: &mut [u8]) {
        let FoaticAction { a, b, form } = self.action;
        match form {
            Form::Bar => {
                foata_into(word, &mut self.buf_a);
                a.apply_into(&self.buf_a, &mut self.buf_b);
                foata_inverse_into(&self.buf_b, &mut self.buf_a);
                b.apply_into(&self.buf_a, out);
            }
            Form::Conjugate => {
                a.apply_into(word, &mut self.buf_a);
                foata_inverse_into(&self.buf_a, &mut self.buf_b);
                b.apply_into(&self.buf_b, &mut self.buf_a);
                foata_into(&self.buf_a, out);
            }
        }
    }
}

/// One orbit, listed in iteration order starting at its lexicographically
/// least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    elements: Vec<Permutation>,
}

impl Orbit {
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn representative(&self) -> &Permutation {
        &self.elements[0]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn orbit_of(action: FoaticAction, w: &Permutation) -> Orbit {
    let mut elements = walk(action, w);
    let min = elements
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.cmp(y.1))
        .map(|(i, _)| i)
        .expect("orbits are nonempty");
    elements.rotate_left(min);
    Orbit { elements }
}

/// The orbit of `w` in iteration order starting at `w` itself.
pub fn walk(action: FoaticAction, w: &Permutation) -> Vec<Permutation> {
    let n = w.degree();
    let mut stepper = Stepper::new(action, n);
    let mut elements = vec![w.clone()];
    let mut next = vec![0; n];
    loop {
        stepper.step(elements.last().expect("nonempty").word(), &mut next);
        if next == w.word() {
            return elements;
        }
        elements.push(Permutation::from_word_unchecked(next.clone()));
    }
}

/// Degree cap and parallelism for the exhaustive engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub workers: usize,
    pub degree_cap: usize,
    pub allow_large_n: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            workers: 1,
            degree_cap: 12,
            allow_large_n: false,
        }
    }
}

impl EngineConfig {
    pub fn with_workers(workers: usize) -> Self {
        Self {
            workers: workers.max(1),
            ..Self::default()
        }
    }

    pub fn check_degree(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        if n > MAX_RANKABLE_DEGREE {
            return Err(Error::RankOverflow(n));
        }
        if n > self.degree_cap && !self.allow_large_n {
            return Err(Error::DegreeTooLarge {
                n,
                cap: self.degree_cap,
            });
        }
        Ok(())
    }
}

/// Per-orbit data retained by the engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSummary {
    pub rep_rank: u64,
    pub rep: Permutation,
    pub size: u64,
    /// One sum per requested statistic, in request order.
    pub sums: Vec<i64>,
}

struct Bitset(Vec<AtomicU64>);

impl Bitset {
    fn new(bits: u64) -> Self {
        Self((0..bits.div_ceil(64)).map(|_| AtomicU64::new(0)).collect())
    }

    fn get(&self, i: u64) -> bool {
        self.0[(i / 64) as usize].load(Ordering::Relaxed) & (1 << (i % 64)) != 0
    }

    fn set(&self, i: u64) {
        self.0[(i / 64) as usize].fetch_or(1 << (i % 64), Ordering::Relaxed);
    }
}

/// Every orbit of `action` on `S_n`, ordered by the rank of its
/// representative, with the sum of each statistic over the orbit.
pub fn enumerate_orbits(
    action: FoaticAction,
    n: usize,
    stats: &[StatisticId],
    config: &EngineConfig,
) -> Result<Vec<OrbitSummary>> {
    config.check_degree(n)?;
    for s in stats {
        s.validate(n)?;
    }
    let total = factorial(n);
    let visited = Bitset::new(total);
    let workers = config.workers.max(1);
    if workers == 1 {
        return scan_block(action, n, stats, &visited, 0..total);
    }
    let block = (total / (workers as u64 * 64)).clamp(1 << 10, 1 << 20);
    let ranges: Vec<std::ops::Range<u64>> = (0..total)
        .step_by(block as usize)
        .map(|s| s..(s + block).min(total))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
    let parts: Vec<Result<Vec<OrbitSummary>>> = pool.install(|| {
        ranges
            .into_par_iter()
            .map(|r| scan_block(action, n, stats, &visited, r))
            .collect()
    });
    let mut out = Vec::new();
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

fn scan_block(
    action: FoaticAction,
    n: usize,
    stats: &[StatisticId],
    visited: &Bitset,
    range: std::ops::Range<u64>,
) -> Result<Vec<OrbitSummary>> {
    let mut stepper = Stepper::new(action, n);
    let mut cur = vec![0u8; n];
    let mut next = vec![0u8; n];
    let mut sums = vec![0i64; stats.len()];
    let mut out = Vec::new();
    'seeds: for seed in range {
        if visited.get(seed) {
            continue;
        }
        unrank_into(seed, &mut cur);
        let rep = cur.clone();
        sums.iter_mut().for_each(|s| *s = 0);
        let mut size = 0u64;
        let mut rank = seed;
        loop {
            visited.set(rank);
            size += 1;
            for (sum, stat) in sums.iter_mut().zip(stats) {
                *sum = sum
                    .checked_add(stat.evaluate_word(&cur))
                    .ok_or(Error::SumOverflow)?;
            }
            stepper.step(&cur, &mut next);
            rank = rank_word(&next);
            if rank == seed {
                break;
            }
            if rank < seed {
                // another walk owns this orbit
                continue 'seeds;
            }
            std::mem::swap(&mut cur, &mut next);
        }
        out.push(OrbitSummary {
            rep_rank: seed,
            rep: Permutation::from_word_unchecked(rep),
            size,
            sums: sums.clone(),
        });
    }
    Ok(out)
}

/// One column of an orbit-size table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitTableRow {
    pub n: usize,
    pub num_orbits: u64,
    #[serde(serialize_with = "serialize_decimal")]
    pub lcm_sizes: BigUint,
    pub gcd_sizes: u64,
    pub longest: u64,
    pub shortest: u64,
    pub id_orbit: u64,
}

fn serialize_decimal<S: serde::Serializer>(
    v: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl OrbitTableRow {
    pub fn from_summaries(n: usize, orbits: &[OrbitSummary]) -> Self {
        let mut lcm = BigUint::from(1u32);
        let mut gcd = 0u64;
        let mut longest = 0;
        let mut shortest = u64::MAX;
        let mut id_orbit = 0;
        for o in orbits {
            let size = BigUint::from(o.size);
            if !(&lcm % &size == BigUint::ZERO) {
                lcm = lcm.lcm(&size);
            }
            gcd = gcd.gcd(&o.size);
            longest = longest.max(o.size);
            shortest = shortest.min(o.size);
            if o.rep_rank == 0 {
                id_orbit = o.size;
            }
        }
        Self {
            n,
            num_orbits: orbits.len() as u64,
            lcm_sizes: lcm,
            gcd_sizes: gcd,
            longest,
            shortest,
            id_orbit,
        }
    }
}

pub fn orbit_table(action: FoaticAction, n: usize, config: &EngineConfig) -> Result<OrbitTableRow> {
    let orbits = enumerate_orbits(action, n, &[], config)?;
    Ok(OrbitTableRow::from_summaries(n, &orbits))
}

/// Header line of an orbit dump.
pub fn dump_header(action: FoaticAction, n: usize) -> String {
    format!(
        "action={},{} form={} n={}",
        action.a, action.b, action.form, n
    )
}

/// Writes the orbit dump: a header, then one block per orbit in
/// representative order, blocks separated by blank lines.
pub fn write_dump<W: Write + ?Sized>(
    out: &mut W,
    action: FoaticAction,
    n: usize,
    orbits: &[OrbitSummary],
) -> io::Result<()> {
    writeln!(out, "{}", dump_header(action, n))?;
    let mut stepper = Stepper::new(action, n);
    let mut cur = vec![0u8; n];
    let mut next = vec![0u8; n];
    for o in orbits {
        writeln!(out)?;
        writeln!(out, "orbit size={} rep={}", o.size, o.rep)?;
        cur.copy_from_slice(o.rep.word());
        for _ in 0..o.size {
            writeln!(out, "{}", word_to_string(&cur))?;
            stepper.step(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
    }
    Ok(())
}

/// A parsed orbit dump.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dump {
    pub action: FoaticAction,
    pub n: usize,
    pub orbits: Vec<Vec<Permutation>>,
}

impl FromStr for Dump {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("dump: {msg}"));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("missing header"))?;
        let mut action_pair = None;
        let mut form = None;
        let mut n = None;
        for field in header.split_whitespace() {
            match field.split_once('=') {
                Some(("action", v)) => action_pair = Some(v.to_string()),
                Some(("form", v)) => form = Some(v.parse::<Form>()?),
                Some(("n", v)) => n = Some(v.parse::<usize>().map_err(|_| bad("bad n"))?),
                _ => return Err(bad("malformed header")),
            }
        }
        let form = form.ok_or_else(|| bad("missing form"))?;
        let action =
            FoaticAction::parse_pair(&action_pair.ok_or_else(|| bad("missing action"))?, form)?;
        let n = n.ok_or_else(|| bad("missing n"))?;
        let mut orbits = Vec::new();
        let mut current: Option<(usize, Vec<Permutation>)> = None;
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("orbit ") {
                if let Some((size, elems)) = current.take() {
                    if elems.len() != size {
                        return Err(bad("orbit block length disagrees with its size"));
                    }
                    orbits.push(elems);
                }
                let size = rest
                    .split_whitespace()
                    .find_map(|f| f.strip_prefix("size="))
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| bad("orbit line without size"))?;
                current = Some((size, Vec::new()));
            } else {
                let (_, elems) = current
                    .as_mut()
                    .ok_or_else(|| bad("element before orbit line"))?;
                elems.push(line.parse()?);
            }
        }
        if let Some((size, elems)) = current {
            if elems.len() != size {
                return Err(bad("orbit block length disagrees with its size"));
            }
            orbits.push(elems);
        }
        Ok(Dump { action, n, orbits })
    }
}

impl Dump {
    /// Checks that consecutive lines follow the action, each block closes up,
    /// each block starts at its least element and `S_n` is covered exactly once.
    pub fn verify(&self) -> std::result::Result<(), String> {
        if self.n > MAX_RANKABLE_DEGREE {
            return Err(format!("degree {} too large to verify", self.n));
        }
        let mut seen = vec![false; factorial(self.n) as usize];
        for orbit in &self.orbits {
            let first = orbit.first().ok_or("empty orbit block")?;
            if orbit.iter().any(|w| w < first) {
                return Err(format!(
                    "block starting {first} does not start at its least element"
                ));
            }
            for (k, w) in orbit.iter().enumerate() {
                if w.degree() != self.n {
                    return Err(format!("{w} has the wrong degree"));
                }
                let r = rank_word(w.word()) as usize;
                if std::mem::replace(&mut seen[r], true) {
                    return Err(format!("{w} appears twice"));
                }
                let expected = &orbit[(k + 1) % orbit.len()];
                let image = self.action.apply(w);
                if &image != expected {
                    return Err(format!("{w} maps to {image}, dump says {expected}"));
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err("dump does not cover every permutation".into());
        }
        Ok(())
    }
}
