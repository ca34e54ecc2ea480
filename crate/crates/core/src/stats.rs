//! Integer-valued permutation statistics and indicator families.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::foata::records_of_word;
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatisticId {
    /// Number of fixed points.
    Fix,
    /// `[w_i = i]`.
    FixAt(usize),
    /// Records immediately followed by another record, or in the final position.
    Rasc,
    NumCycles,
    NumRecords,
    /// `#{i : w_i > i}`.
    Exc,
    /// `#{i : w_i >= i}`.
    Wexc,
    /// `[value i appears to the left of value j]`.
    LeftOf(usize, usize),
    /// `[i and n lie in the same cycle]`.
    SameCycleWithN(usize),
    /// `[w_i > w_{i+1}]`; zero at `i = n`.
    DescentAt(usize),
    NumDescents,
    /// `Fix_1 - Fix_n`.
    FixDiff,
    /// `wexc + exc`.
    WexcPlusExc,
}

impl StatisticId {
    /// Checks the parameters against degree `n`.
    pub fn validate(self, n: usize) -> Result<()> {
        let ok = match self {
            StatisticId::FixAt(i) | StatisticId::SameCycleWithN(i) | StatisticId::DescentAt(i) => {
                (1..=n).contains(&i)
            }
            StatisticId::LeftOf(i, j) => i != j && (1..=n).contains(&i) && (1..=n).contains(&j),
            _ => n >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidStatParam {
                stat: self.to_string(),
                n,
            })
        }
    }

    pub fn is_valid_for(self, n: usize) -> bool {
        self.validate(n).is_ok()
    }

    pub fn is_indicator(self) -> bool {
        matches!(
            self,
            StatisticId::FixAt(_)
                | StatisticId::LeftOf(..)
                | StatisticId::SameCycleWithN(_)
                | StatisticId::DescentAt(_)
        )
    }

    pub fn evaluate(self, w: &Permutation) -> Result<i64> {
        self.validate(w.degree())?;
        Ok(self.evaluate_word(w.word()))
    }

    /// Parameters must already be valid for `word.len()`.
    pub(crate) fn evaluate_word(self, word: &[u8]) -> i64 {
        let n = word.len();
        let fixed = |i: usize| word[i - 1] as usize == i;
        let v = match self {
            StatisticId::Fix => (1..=n).filter(|&i| fixed(i)).count(),
            StatisticId::FixAt(i) => fixed(i) as usize,
            StatisticId::Rasc => {
                let mut best = 0;
                let mut count = 0;
                for (k, &v) in word.iter().enumerate() {
                    if v > best {
                        best = v;
                        if k + 1 == n || word[k + 1] > v {
                            count += 1;
                        }
                    }
                }
                count
            }
            StatisticId::NumCycles => num_cycles(word),
            StatisticId::NumRecords => records_of_word(word).len(),
            StatisticId::Exc => (1..=n).filter(|&i| word[i - 1] as usize > i).count(),
            StatisticId::Wexc => (1..=n).filter(|&i| word[i - 1] as usize >= i).count(),
            StatisticId::LeftOf(i, j) => {
                let pi = word.iter().position(|&v| v as usize == i);
                let pj = word.iter().position(|&v| v as usize == j);
                (pi < pj) as usize
            }
            StatisticId::SameCycleWithN(i) => {
                let mut v = word[n - 1] as usize;
                let mut hit = i == n;
                while v != n && !hit {
                    hit = v == i;
                    v = word[v - 1] as usize;
                }
                hit as usize
            }
            StatisticId::DescentAt(i) => (i < n && word[i - 1] > word[i]) as usize,
            StatisticId::NumDescents => word.windows(2).filter(|p| p[0] > p[1]).count(),
            StatisticId::FixDiff => return fixed(1) as i64 - fixed(n) as i64,
            StatisticId::WexcPlusExc => {
                return StatisticId::Wexc.evaluate_word(word) + StatisticId::Exc.evaluate_word(word)
            }
        };
        v as i64
    }

    /// The statistic `s'` with `self(w) = s'(foata(w))`, where one is known.
    pub fn transfer_under_foata(self) -> Option<StatisticId> {
        match self {
            StatisticId::Fix => Some(StatisticId::Rasc),
            StatisticId::NumCycles => Some(StatisticId::NumRecords),
            _ => None,
        }
    }
}

fn num_cycles(word: &[u8]) -> usize {
    let mut seen = [false; 256];
    let mut count = 0;
    for start in 1..=word.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = word[v - 1] as usize;
        }
    }
    count
}

impl fmt::Display for StatisticId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            StatisticId::Fix => f.write_str("fix"),
            StatisticId::FixAt(i) => write!(f, "fix@{i}"),
            StatisticId::Rasc => f.write_str("rasc"),
            StatisticId::NumCycles => f.write_str("cycles"),
            StatisticId::NumRecords => f.write_str("records"),
            StatisticId::Exc => f.write_str("exc"),
            StatisticId::Wexc => f.write_str("wexc"),
            StatisticId::LeftOf(i, j) => write!(f, "leftof@{i},{j}"),
            StatisticId::SameCycleWithN(i) => write!(f, "samecycle@{i}"),
            StatisticId::DescentAt(i) => write!(f, "des@{i}"),
            StatisticId::NumDescents => f.write_str("des"),
            StatisticId::FixDiff => f.write_str("fixdiff"),
            StatisticId::WexcPlusExc => f.write_str("wexcplusexc"),
        }
    }
}

impl Serialize for StatisticId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for StatisticId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownStatistic(s.to_string());
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| unknown());
        let s = s.trim();
        if let Some((family, params)) = s.split_once('@') {
            return match family {
                "fix" => Ok(StatisticId::FixAt(num(params)?)),
                "samecycle" => Ok(StatisticId::SameCycleWithN(num(params)?)),
                "des" => Ok(StatisticId::DescentAt(num(params)?)),
                "leftof" => {
                    let (i, j) = params.split_once(',').ok_or_else(unknown)?;
                    Ok(StatisticId::LeftOf(num(i)?, num(j)?))
                }
                _ => Err(unknown()),
            };
        }
        Ok(match s {
            "fix" => StatisticId::Fix,
            "rasc" => StatisticId::Rasc,
            "cycles" => StatisticId::NumCycles,
            "records" => StatisticId::NumRecords,
            "exc" => StatisticId::Exc,
            "wexc" => StatisticId::Wexc,
            "des" => StatisticId::NumDescents,
            "fixdiff" => StatisticId::FixDiff,
            "wexcplusexc" => StatisticId::WexcPlusExc,
            _ => return Err(unknown()),
        })
    }
}

/// Parses a comma-separated statistic list. `leftof@i,j` keeps its comma,
/// and the wildcards `fix@*`, `leftof@*`, `samecycle@*`, `des@*` expand to
/// every parameter valid for degree `max_n` (`samecycle@*` uses `i < max_n`).
pub fn parse_stat_list(list: &str, max_n: usize) -> Result<Vec<StatisticId>> {
    let tokens: Vec<&str> = list.split(',').map(str::trim).collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < tokens.len() {
        let tok = tokens[k];
        k += 1;
        if tok.is_empty() {
            continue;
        }
        match tok {
            "fix@*" => out.extend((1..=max_n).map(StatisticId::FixAt)),
            "samecycle@*" => out.extend((1..max_n).map(StatisticId::SameCycleWithN)),
            "des@*" => out.extend((1..max_n).map(StatisticId::DescentAt)),
            "leftof@*" => out.extend(left_of_pairs(max_n)),
            _ if tok.starts_with("leftof@") && !tok.contains(',') => {
                let j = tokens
                    .get(k)
                    .ok_or_else(|| Error::UnknownStatistic(tok.to_string()))?;
                k += 1;
                out.push(format!("{tok},{j}").parse()?);
            }
            _ => out.push(tok.parse()?),
        }
    }
    Ok(out)
}

fn left_of_pairs(n: usize) -> impl Iterator<Item = StatisticId> {
    (1..=n).flat_map(move |i| {
        (1..=n)
            .filter(move |&j| j != i)
            .map(move |j| StatisticId::LeftOf(i, j))
    })
}

/// Every indicator statistic in the registry for degree `n`.
pub fn indicator_family(n: usize) -> Vec<StatisticId> {
    let mut out: Vec<StatisticId> = (1..=n).map(StatisticId::FixAt).collect();
    out.extend(left_of_pairs(n));
    out.extend((1..n).map(StatisticId::SameCycleWithN));
    out.extend((1..n).map(StatisticId::DescentAt));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foata::foata;
    use crate::perm::CycleDecomposition;
    use StatisticId::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn worked_values() {
        assert_eq!(Fix.evaluate(&p("847296513")).unwrap(), 1);
        assert_eq!(Rasc.evaluate(&p("426819375")).unwrap(), 1);
        assert_eq!(NumCycles.evaluate(&p("847296513")).unwrap(), 4);
        assert_eq!(NumRecords.evaluate(&p("426819375")).unwrap(), 4);
        assert_eq!(LeftOf(2, 4).evaluate(&p("24351")).unwrap(), 1);
        assert_eq!(LeftOf(4, 2).evaluate(&p("24351")).unwrap(), 0);
        let w = "(2)(43)(51)"
            .parse::<CycleDecomposition>()
            .unwrap()
            .to_permutation();
        assert_eq!(SameCycleWithN(1).evaluate(&w).unwrap(), 1);
        assert_eq!(SameCycleWithN(2).evaluate(&w).unwrap(), 0);
        assert_eq!(SameCycleWithN(5).evaluate(&w).unwrap(), 1);
    }

    #[test]
    fn identity_values() {
        for n in 1..=7 {
            let id = Permutation::identity(n).unwrap();
            let n = n as i64;
            assert_eq!(Fix.evaluate(&id).unwrap(), n);
            assert_eq!(Exc.evaluate(&id).unwrap(), 0);
            assert_eq!(Wexc.evaluate(&id).unwrap(), n);
            assert_eq!(Rasc.evaluate(&id).unwrap(), n);
            assert_eq!(NumDescents.evaluate(&id).unwrap(), 0);
        }
        assert_eq!(Rasc.evaluate(&p("54321")).unwrap(), 0);
        assert_eq!(Rasc.evaluate(&p("1")).unwrap(), 1);
    }

    #[test]
    fn descents_and_combinations() {
        let w = p("31524");
        assert_eq!(DescentAt(1).evaluate(&w).unwrap(), 1);
        assert_eq!(DescentAt(2).evaluate(&w).unwrap(), 0);
        assert_eq!(DescentAt(5).evaluate(&w).unwrap(), 0);
        assert_eq!(NumDescents.evaluate(&w).unwrap(), 2);
        assert_eq!(FixDiff.evaluate(&p("12")).unwrap(), 0);
        assert_eq!(FixDiff.evaluate(&p("132")).unwrap(), 1);
        assert_eq!(FixDiff.evaluate(&p("213")).unwrap(), -1);
        assert_eq!(WexcPlusExc.evaluate(&w).unwrap(), 2 + 2);
    }

    #[test]
    fn parameter_errors() {
        assert!(FixAt(4).evaluate(&p("123")).is_err());
        assert!(LeftOf(2, 2).evaluate(&p("123")).is_err());
        assert!(SameCycleWithN(0).evaluate(&p("123")).is_err());
        assert!(DescentAt(3).evaluate(&p("123")).is_ok());
    }

    #[test]
    fn transfers() {
        assert_eq!(Fix.transfer_under_foata(), Some(Rasc));
        assert_eq!(NumCycles.transfer_under_foata(), Some(NumRecords));
        assert_eq!(Exc.transfer_under_foata(), None);
        let w = p("847296513");
        assert_eq!(Fix.evaluate(&w), Rasc.evaluate(&foata(&w)));
    }

    #[test]
    fn names_round_trip() {
        for s in [
            Fix,
            FixAt(3),
            Rasc,
            NumCycles,
            NumRecords,
            Exc,
            Wexc,
            LeftOf(1, 4),
            SameCycleWithN(2),
            DescentAt(2),
            NumDescents,
            FixDiff,
            WexcPlusExc,
        ] {
            assert_eq!(s.to_string().parse::<StatisticId>().unwrap(), s);
        }
        assert!("maj".parse::<StatisticId>().is_err());
        assert!("leftof@1".parse::<StatisticId>().is_err());
    }

    #[test]
    fn stat_lists() {
        assert_eq!(
            parse_stat_list("fix,leftof@1,2,des", 3).unwrap(),
            vec![Fix, LeftOf(1, 2), NumDescents]
        );
        assert_eq!(
            parse_stat_list("samecycle@*", 4).unwrap(),
            vec![SameCycleWithN(1), SameCycleWithN(2), SameCycleWithN(3)]
        );
        assert_eq!(parse_stat_list("leftof@*", 3).unwrap().len(), 6);
        assert!(parse_stat_list("fix,bogus", 3).is_err());
        assert_eq!(indicator_family(3).len(), 3 + 6 + 2 + 2);
    }
}
