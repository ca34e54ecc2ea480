//! Exact orbit averages, homomesy verdicts, grid scans and the named
//! conjecture checks.
//!
//! Averages are kept as `(sum, size)` pairs and compared by integer
//! cross-multiplication; no floating point is involved anywhere.

use std::fmt;
use std::ops::RangeInclusive;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::dynamics::{enumerate_orbits, walk, EngineConfig, FoaticAction, OrbitSummary, Stepper};
use crate::error::{Error, Result};
use crate::heaps::word_height;
use crate::perm::{factorial, Permutation};
use crate::stats::{indicator_family, StatisticId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitAverage {
    pub sum: i64,
    pub size: u64,
}

impl OrbitAverage {
    pub fn value(&self) -> Ratio<i64> {
        Ratio::new(self.sum, self.size as i64)
    }

    pub fn same_average(&self, other: &OrbitAverage) -> bool {
        self.sum as i128 * other.size as i128 == other.sum as i128 * self.size as i128
    }
}

impl fmt::Display for OrbitAverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.sum, self.size)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomomesyVerdict {
    Homomesic(Ratio<i64>),
    /// The first orbit and the first later orbit whose average differs,
    /// both in representative order.
    Violated {
        first: (Permutation, OrbitAverage),
        second: (Permutation, OrbitAverage),
    },
}

impl HomomesyVerdict {
    pub fn is_homomesic(&self) -> bool {
        matches!(self, HomomesyVerdict::Homomesic(_))
    }

    pub fn constant(&self) -> Option<Ratio<i64>> {
        match self {
            HomomesyVerdict::Homomesic(c) => Some(*c),
            HomomesyVerdict::Violated { .. } => None,
        }
    }
}

impl fmt::Display for HomomesyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomomesyVerdict::Homomesic(c) => write!(f, "homomesic {c}"),
            HomomesyVerdict::Violated { first, second } => write!(
                f,
                "violated rep={} avg={} vs rep={} avg={}",
                first.0, first.1, second.0, second.1
            ),
        }
    }
}

pub fn orbit_average(
    action: FoaticAction,
    stat: StatisticId,
    w: &Permutation,
) -> Result<OrbitAverage> {
    stat.validate(w.degree())?;
    let orbit = walk(action, w);
    let mut sum = 0i64;
    for x in &orbit {
        sum = sum
            .checked_add(stat.evaluate_word(x.word()))
            .ok_or(Error::SumOverflow)?;
    }
    Ok(OrbitAverage {
        sum,
        size: orbit.len() as u64,
    })
}

/// Verdict for the statistic at index `idx` of the summaries' sums.
pub fn verdict_from(orbits: &[OrbitSummary], idx: usize) -> HomomesyVerdict {
    let avg = |o: &OrbitSummary| OrbitAverage {
        sum: o.sums[idx],
        size: o.size,
    };
    let first = &orbits[0];
    let base = avg(first);
    match orbits[1..].iter().find(|o| !base.same_average(&avg(o))) {
        None => HomomesyVerdict::Homomesic(base.value()),
        Some(o) => HomomesyVerdict::Violated {
            first: (first.rep.clone(), base),
            second: (o.rep.clone(), avg(o)),
        },
    }
}

pub fn is_homomesic(
    action: FoaticAction,
    stat: StatisticId,
    n: usize,
    config: &EngineConfig,
) -> Result<HomomesyVerdict> {
    Ok(verdicts(action, &[stat], n, config)?.remove(0))
}

/// One verdict per statistic from a single enumeration.
pub fn verdicts(
    action: FoaticAction,
    stats: &[StatisticId],
    n: usize,
    config: &EngineConfig,
) -> Result<Vec<HomomesyVerdict>> {
    let orbits = enumerate_orbits(action, n, stats, config)?;
    Ok((0..stats.len()).map(|k| verdict_from(&orbits, k)).collect())
}

/// Mean of a statistic over all of `S_n`, by brute force.
pub fn global_mean(stat: StatisticId, n: usize) -> Result<Ratio<i64>> {
    stat.validate(n)?;
    let mut sum = 0i64;
    for w in Permutation::all(n)? {
        sum += stat.evaluate_word(w.word());
    }
    Ok(Ratio::new(sum, factorial(n) as i64))
}

/// Results for one `(action, statistic)` pair of a scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub action: FoaticAction,
    pub stat: StatisticId,
    /// Verdicts by ascending `n`, stopping at the first violation.
    pub results: Vec<(usize, HomomesyVerdict)>,
}

impl ScanEntry {
    /// Homomesic at every tested degree (and at least one was tested).
    pub fn survived(&self) -> bool {
        !self.results.is_empty() && self.results.iter().all(|(_, v)| v.is_homomesic())
    }

    pub fn largest_n(&self) -> Option<usize> {
        self.results.last().map(|(n, _)| *n)
    }

    pub fn first_violation(&self) -> Option<usize> {
        self.results
            .iter()
            .find(|(_, v)| !v.is_homomesic())
            .map(|(n, _)| *n)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanReport {
    /// Ordered by action, then statistic, in request order.
    pub entries: Vec<ScanEntry>,
}

impl ScanReport {
    pub fn survivors(&self) -> Vec<(FoaticAction, StatisticId)> {
        self.entries
            .iter()
            .filter(|e| e.survived())
            .map(|e| (e.action, e.stat))
            .collect()
    }

    pub fn surviving_actions(&self, stat: StatisticId) -> Vec<FoaticAction> {
        self.entries
            .iter()
            .filter(|e| e.stat == stat && e.survived())
            .map(|e| e.action)
            .collect()
    }
}

/// Tests every `(action, statistic)` pair at each degree in `degrees`.
/// A pair stops at its first violating degree; statistics whose parameters
/// do not fit a degree are skipped there. Actions run in parallel.
pub fn scan(
    actions: &[FoaticAction],
    stats: &[StatisticId],
    degrees: RangeInclusive<usize>,
    config: &EngineConfig,
) -> Result<ScanReport> {
    for n in degrees.clone() {
        config.check_degree(n)?;
    }
    let inner = EngineConfig {
        workers: 1,
        ..*config
    };
    let run = |action: &FoaticAction| -> Result<Vec<ScanEntry>> {
        let mut entries: Vec<ScanEntry> = stats
            .iter()
            .map(|&stat| ScanEntry {
                action: *action,
                stat,
                results: Vec::new(),
            })
            .collect();
        for n in degrees.clone() {
            let live: Vec<usize> = (0..entries.len())
                .filter(|&k| entries[k].first_violation().is_none() && stats[k].is_valid_for(n))
                .collect();
            if live.is_empty() {
                continue;
            }
            let live_stats: Vec<StatisticId> = live.iter().map(|&k| stats[k]).collect();
            let vs = verdicts(*action, &live_stats, n, &inner)?;
            for (k, v) in live.into_iter().zip(vs) {
                entries[k].results.push((n, v));
            }
        }
        Ok(entries)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
    let parts: Vec<Result<Vec<ScanEntry>>> = pool.install(|| actions.par_iter().map(run).collect());
    let mut entries = Vec::new();
    for part in parts {
        entries.extend(part?);
    }
    Ok(ScanReport { entries })
}

/// Outcome of a named check at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub action: FoaticAction,
    pub n: usize,
    pub passed: bool,
    /// Representative of an offending orbit, when the check failed.
    pub witness: Option<Permutation>,
    pub detail: String,
}

/// Whether every complement-rotation orbit contains a permutation fixing 1.
pub fn check_rho_fixed_point_representative(
    n: usize,
    config: &EngineConfig,
) -> Result<CheckOutcome> {
    let action = FoaticAction::RHO_BAR;
    let orbits = enumerate_orbits(action, n, &[StatisticId::FixAt(1)], config)?;
    let witness = orbits
        .iter()
        .find(|o| o.sums[0] == 0)
        .map(|o| o.rep.clone());
    Ok(CheckOutcome {
        name: "4.2(2)",
        action,
        n,
        passed: witness.is_none(),
        detail: match &witness {
            None => format!("all {} orbits contain a permutation fixing 1", orbits.len()),
            Some(w) => format!("orbit of {w} has no permutation fixing 1"),
        },
        witness,
    })
}

fn fix_check(
    name: &'static str,
    action: FoaticAction,
    n: usize,
    config: &EngineConfig,
) -> Result<CheckOutcome> {
    let verdict = is_homomesic(action, StatisticId::Fix, n, config)?;
    let passed = verdict.constant() == Some(Ratio::from_integer(1));
    let witness = match &verdict {
        HomomesyVerdict::Violated { second, .. } => Some(second.0.clone()),
        HomomesyVerdict::Homomesic(_) => None,
    };
    Ok(CheckOutcome {
        name,
        action,
        n,
        passed,
        witness,
        detail: format!("fix: {verdict}"),
    })
}

/// Fix 1-mesic under complement-inversion, complement-rotation and
/// reversal-rotation, plus the fixed-point representative property,
/// for every `n` in `1..=max_n`.
pub fn conjecture_suite(max_n: usize, config: &EngineConfig) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(fix_check("3.1", FoaticAction::GAMMA_BAR, n, config)?);
        out.push(fix_check("4.2(1)", FoaticAction::RHO_BAR, n, config)?);
        out.push(check_rho_fixed_point_representative(n, config)?);
        out.push(fix_check("5.1", FoaticAction::TAU_BAR, n, config)?);
    }
    Ok(out)
}

/// Registry indicators that are homomesic under `action` on `S_n`, with
/// their constants.
pub fn indicator_search(
    action: FoaticAction,
    n: usize,
    config: &EngineConfig,
) -> Result<Vec<(StatisticId, Ratio<i64>)>> {
    let family = indicator_family(n);
    let vs = verdicts(action, &family, n, config)?;
    Ok(family
        .into_iter()
        .zip(vs)
        .filter_map(|(s, v)| v.constant().map(|c| (s, c)))
        .collect())
}

/// One item of the reversal-inversion theorem suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteItem {
    pub item: u8,
    pub description: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn largest_power_of_two_at_most(n: usize) -> u64 {
    1u64 << (usize::BITS - 1 - n.leading_zeros())
}

/// Checks the four orbit properties of reversal-inversion for every
/// `n` in `1..=max_n`.
pub fn theorem_suite(max_n: usize, config: &EngineConfig) -> Result<Vec<SuiteItem>> {
    let half = Ratio::new(1, 2);
    let one = Ratio::from_integer(1);
    let mut failures: [Vec<String>; 4] = Default::default();
    for n in 1..=max_n {
        // 1: orbit size = 2^height of every member; GCD law
        let orbits = enumerate_orbits(FoaticAction::PHI, n, &[], config)?;
        let mut stepper = Stepper::new(FoaticAction::PHI, n);
        let mut cur = vec![0u8; n];
        let mut next = vec![0u8; n];
        let mut gcd = 0u64;
        for o in &orbits {
            gcd = num_integer::gcd(gcd, o.size);
            cur.copy_from_slice(o.rep.word());
            for _ in 0..o.size {
                let predicted = 1u64 << word_height(&cur)?;
                if predicted != o.size {
                    failures[0].push(format!(
                        "n={n}: {} has predicted size {predicted}, orbit size {}",
                        Permutation::from_word_unchecked(cur.clone()),
                        o.size
                    ));
                    break;
                }
                stepper.step(&cur, &mut next);
                std::mem::swap(&mut cur, &mut next);
            }
        }
        if gcd != largest_power_of_two_at_most(n) {
            failures[0].push(format!("n={n}: gcd {gcd}"));
        }

        // 2: Fix under φ̄, Rasc under φ
        for (action, stat) in [
            (FoaticAction::PHI_BAR, StatisticId::Fix),
            (FoaticAction::PHI, StatisticId::Rasc),
        ] {
            let v = is_homomesic(action, stat, n, config)?;
            if v.constant() != Some(one) {
                failures[1].push(format!("n={n}: {stat} under {action}: {v}"));
            }
        }

        // 3: LeftOf(i, j) under φ
        let pairs: Vec<StatisticId> = (1..=n)
            .flat_map(|i| {
                (1..=n)
                    .filter(move |&j| j != i)
                    .map(move |j| StatisticId::LeftOf(i, j))
            })
            .collect();
        if !pairs.is_empty() {
            for (s, v) in pairs
                .iter()
                .zip(verdicts(FoaticAction::PHI, &pairs, n, config)?)
            {
                if v.constant() != Some(half) {
                    failures[2].push(format!("n={n}: {s}: {v}"));
                }
            }
        }

        // 4: SameCycleWithN(i), i < n, under φ̄
        let same: Vec<StatisticId> = (1..n).map(StatisticId::SameCycleWithN).collect();
        if !same.is_empty() {
            for (s, v) in same
                .iter()
                .zip(verdicts(FoaticAction::PHI_BAR, &same, n, config)?)
            {
                if v.constant() != Some(half) {
                    failures[3].push(format!("n={n}: {s}: {v}"));
                }
            }
        }
    }
    let descriptions = [
        "orbit sizes are 2^height and the GCD is the largest power of 2 <= n",
        "fix is 1-mesic under R,I bar and rasc is 1-mesic under R,I conj",
        "leftof@i,j is 1/2-mesic under R,I conj",
        "samecycle@i (i<n) is 1/2-mesic under R,I bar",
    ];
    Ok(descriptions
        .iter()
        .zip(failures)
        .enumerate()
        .map(|(k, (description, fails))| SuiteItem {
            item: k as u8 + 1,
            description,
            passed: fails.is_empty(),
            detail: if fails.is_empty() {
                format!("checked n=1..={max_n}")
            } else {
                fails.join("; ")
            },
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::CycleDecomposition;
    use crate::symmetry::SymmetryOp;

    fn ccd(s: &str) -> Permutation {
        s.parse::<CycleDecomposition>().unwrap().to_permutation()
    }

    #[test]
    fn gamma_example_average() {
        let avg = orbit_average(
            FoaticAction::GAMMA_BAR,
            StatisticId::Fix,
            &ccd("(2)(3)(514)"),
        )
        .unwrap();
        assert_eq!(avg, OrbitAverage { sum: 6, size: 6 });
        assert_eq!(avg.value(), Ratio::from_integer(1));
    }

    #[test]
    fn degree_one_average_is_the_value() {
        let one: Permutation = "1".parse().unwrap();
        for action in FoaticAction::standard(crate::dynamics::Form::Bar) {
            let avg = orbit_average(action, StatisticId::Fix, &one).unwrap();
            assert_eq!(avg, OrbitAverage { sum: 1, size: 1 });
        }
    }

    #[test]
    fn cross_multiplication() {
        let a = OrbitAverage { sum: 2, size: 4 };
        let b = OrbitAverage { sum: 3, size: 6 };
        let c = OrbitAverage { sum: 3, size: 5 };
        assert!(a.same_average(&b));
        assert!(!a.same_average(&c));
    }

    #[test]
    fn complement_complement_violates_fix() {
        let cfg = EngineConfig::default();
        let v = is_homomesic(
            FoaticAction::bar(SymmetryOp::Complement, SymmetryOp::Complement),
            StatisticId::Fix,
            5,
            &cfg,
        )
        .unwrap();
        match v {
            HomomesyVerdict::Violated { first, second } => {
                assert!(first.0 < second.0);
                assert!(!first.1.same_average(&second.1));
            }
            other => panic!("expected violation, got {other}"),
        }
    }

    #[test]
    fn empty_scan() {
        let report = scan(&[], &[StatisticId::Fix], 1..=4, &EngineConfig::default()).unwrap();
        assert!(report.entries.is_empty());
        assert!(report.survivors().is_empty());
    }

    #[test]
    fn rho_representative_small() {
        let cfg = EngineConfig::default();
        for n in 1..=2 {
            assert!(
                check_rho_fixed_point_representative(n, &cfg)
                    .unwrap()
                    .passed
            );
        }
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(largest_power_of_two_at_most(1), 1);
        assert_eq!(largest_power_of_two_at_most(7), 4);
        assert_eq!(largest_power_of_two_at_most(8), 8);
    }
}
