//! Command-line front end: orbit tables, orbit dumps, homomesy scans,
//! conjecture checks and the reversal-inversion theorem suite.
//!
//! Exit codes: 0 success, 1 usage error, 2 a check failed (the output
//! carries the witness).

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dynamics::{
    enumerate_orbits, write_dump, EngineConfig, FoaticAction, Form, OrbitTableRow,
};
use crate::error::Error;
use crate::homomesy::{self, CheckOutcome, HomomesyVerdict, ScanReport};
use crate::stats::parse_stat_list;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FALSIFIED: i32 = 2;

const DEFAULT_MAX_N: usize = 9;

#[derive(Debug, Parser)]
#[command(
    name = "foatic",
    version,
    about = "Orbits and homomesy of Foatic permutation maps"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit-size tables (one column per n).
    Tables(TablesArgs),
    /// Dump every orbit of an action on S_n.
    Orbits(OrbitsArgs),
    /// Homomesy scan over actions, statistics and degrees.
    Scan(ScanArgs),
    /// Check the fixed-point conjectures for complement-inversion,
    /// complement-rotation and reversal-rotation.
    Conjectures(ConjecturesArgs),
    /// Run the reversal-inversion theorem suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Bar,
    Conj,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Bar => Form::Bar,
            FormArg::Conj => Form::Conjugate,
        }
    }
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// Worker threads (defaults to available parallelism).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Permit degrees above the cap of 12.
    #[arg(long)]
    pub allow_large_n: bool,
}

impl EngineArgs {
    fn config(&self) -> EngineConfig {
        let workers = self
            .workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        EngineConfig {
            workers: workers.max(1),
            allow_large_n: self.allow_large_n,
            ..EngineConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Symmetry pair `A,B`.
    #[arg(long)]
    pub action: String,
    #[arg(long, value_enum, default_value = "bar")]
    pub form: FormArg,
    /// A single degree.
    #[arg(long, conflicts_with_all = ["max_n", "min_n"])]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub min_n: usize,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    /// Symmetry pair `A,B`; optional with `--good-only`.
    #[arg(long)]
    pub action: Option<String>,
    #[arg(long, value_enum, default_value = "bar")]
    pub form: FormArg,
    #[arg(long)]
    pub n: usize,
    /// Restrict to the four fixed-point-homomesic actions
    /// (R,I  C,I  C,rot  R,rot in bar form).
    #[arg(long)]
    pub good_only: bool,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// `;`-separated pairs such as `R,I;C,I`, or `none`. Defaults to all
    /// 25 involution pairs.
    #[arg(long)]
    pub actions: Option<String>,
    /// Use the 49 pairs that include the quarter turns Q and Q3.
    #[arg(long)]
    pub extended_actions: bool,
    #[arg(long, value_enum, default_value = "bar")]
    pub form: FormArg,
    /// Comma-separated statistics; families `fix@*`, `leftof@*`,
    /// `samecycle@*`, `des@*` expand up to max-n.
    #[arg(long, default_value = "fix")]
    pub stats: String,
    #[arg(long, default_value_t = 1)]
    pub min_n: usize,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct ConjecturesArgs {
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    /// Also sweep every registry indicator under C,rot bar and report the
    /// 1/2-mesic ones.
    #[arg(long)]
    pub indicator_search: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 7)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&config, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    match &config.command {
        Command::Tables(a) => cmd_tables(a, out),
        Command::Orbits(a) => cmd_orbits(a, out),
        Command::Scan(a) => cmd_scan(a, out),
        Command::Conjectures(a) => cmd_conjectures(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    }
}

fn degree_range(
    min_n: usize,
    max_n: Option<usize>,
) -> Result<std::ops::RangeInclusive<usize>, CliError> {
    let max_n = max_n.unwrap_or(DEFAULT_MAX_N);
    if min_n == 0 || min_n > max_n {
        return Err(CliError::Usage(format!(
            "empty degree range {min_n}..={max_n}"
        )));
    }
    Ok(min_n..=max_n)
}

pub fn cmd_tables(args: &TablesArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let action = FoaticAction::parse_pair(&args.action, args.form.into())?;
    let degrees = match args.n {
        Some(n) => n..=n,
        None => degree_range(args.min_n, args.max_n)?,
    };
    let cfg = args.engine.config();
    for n in degrees.clone() {
        cfg.check_degree(n)?;
    }
    let rows = degrees
        .map(|n| crate::dynamics::orbit_table(action, n, &cfg))
        .collect::<Result<Vec<_>, _>>()?;
    match args.format {
        Format::Text => out.write_all(render_table_text(action, &rows).as_bytes())?,
        Format::Csv => out.write_all(render_table_csv(action, &rows).as_bytes())?,
        Format::Json => {
            let v = json!({
                "action": action.pair_label(),
                "form": action.form.name(),
                "rows": rows,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
    }
    Ok(EXIT_OK)
}

pub const TABLE_LABELS: [&str; 6] = [
    "# of orbits:",
    "LCM of orbit sizes:",
    "GCD of orbit sizes:",
    "Longest orbit size:",
    "Shortest orbit size:",
    "Size of id's orbit:",
];

fn row_cells(r: &OrbitTableRow) -> [String; 6] {
    [
        r.num_orbits.to_string(),
        r.lcm_sizes.to_string(),
        r.gcd_sizes.to_string(),
        r.longest.to_string(),
        r.shortest.to_string(),
        r.id_orbit.to_string(),
    ]
}

pub fn render_table_text(action: FoaticAction, rows: &[OrbitTableRow]) -> String {
    let mut s = format!(
        "Data on orbit sizes for action={} form={}\n",
        action.pair_label(),
        action.form
    );
    let label_w = TABLE_LABELS.iter().map(|l| l.len()).max().unwrap_or(0);
    let cells: Vec<[String; 6]> = rows.iter().map(row_cells).collect();
    let widths: Vec<usize> = rows
        .iter()
        .zip(&cells)
        .map(|(r, c)| {
            c.iter()
                .map(String::len)
                .max()
                .unwrap_or(0)
                .max(r.n.to_string().len())
        })
        .collect();
    s.push_str(&format!("{:<label_w$}", "n"));
    for (r, w) in rows.iter().zip(&widths) {
        s.push_str(&format!(" | {:>w$}", r.n));
    }
    s.push('\n');
    for (k, label) in TABLE_LABELS.iter().enumerate() {
        s.push_str(&format!("{label:<label_w$}"));
        for (c, w) in cells.iter().zip(&widths) {
            s.push_str(&format!(" | {:>w$}", c[k]));
        }
        s.push('\n');
    }
    s
}

pub fn render_table_csv(action: FoaticAction, rows: &[OrbitTableRow]) -> String {
    let mut s = String::from("action,form,n,num_orbits,lcm,gcd,longest,shortest,id_orbit\n");
    for r in rows {
        let c = row_cells(r);
        s.push_str(&format!(
            "\"{}\",{},{},{}\n",
            action.pair_label(),
            action.form,
            r.n,
            c.join(",")
        ));
    }
    s
}

pub fn cmd_orbits(args: &OrbitsArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let form: Form = args.form.into();
    let actions = match (&args.action, args.good_only) {
        (Some(pair), good_only) => {
            let action = FoaticAction::parse_pair(pair, form)?;
            if good_only && !FoaticAction::GOOD.contains(&action) {
                return Err(CliError::Usage(format!(
                    "{action} is not one of the good actions (R,I C,I C,rot R,rot in bar form)"
                )));
            }
            vec![action]
        }
        (None, true) => FoaticAction::GOOD.to_vec(),
        (None, false) => {
            return Err(CliError::Usage(
                "--action is required without --good-only".into(),
            ))
        }
    };
    let cfg = args.engine.config();
    for (k, action) in actions.into_iter().enumerate() {
        if k > 0 {
            writeln!(out)?;
        }
        let orbits = enumerate_orbits(action, args.n, &[], &cfg)?;
        write_dump(out, action, args.n, &orbits)?;
    }
    Ok(EXIT_OK)
}

fn parse_actions(args: &ScanArgs) -> Result<Vec<FoaticAction>, CliError> {
    let form: Form = args.form.into();
    match args.actions.as_deref() {
        Some("none") => Ok(Vec::new()),
        Some(list) if list != "all" => list
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| FoaticAction::parse_pair(p.trim(), form).map_err(CliError::from))
            .collect(),
        _ if args.extended_actions => Ok(FoaticAction::extended(form)),
        _ => Ok(FoaticAction::standard(form)),
    }
}

pub fn cmd_scan(args: &ScanArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let actions = parse_actions(args)?;
    let degrees = degree_range(args.min_n, args.max_n)?;
    let stats = parse_stat_list(&args.stats, *degrees.end())?;
    let cfg = args.engine.config();
    let report = homomesy::scan(&actions, &stats, degrees.clone(), &cfg)?;
    match args.format {
        Format::Text => {
            out.write_all(render_scan_text(&report, &stats, &degrees, actions.len()).as_bytes())?
        }
        Format::Csv => {
            writeln!(
                out,
                "action,form,stat,n,verdict,constant,rep1,avg1,rep2,avg2"
            )?;
            for rec in scan_records(&report) {
                let f = |k: &str| rec[k].as_str().unwrap_or("").to_string();
                writeln!(
                    out,
                    "\"{}\",{},\"{}\",{},{},{},{},{},{},{}",
                    f("action"),
                    f("form"),
                    f("stat"),
                    rec["n"],
                    f("verdict"),
                    f("constant"),
                    f("rep1"),
                    f("avg1"),
                    f("rep2"),
                    f("avg2")
                )?;
            }
        }
        Format::Json => {
            let survivors: Vec<Value> = report
                .survivors()
                .iter()
                .map(|(a, s)| json!({"action": a.pair_label(), "form": a.form.name(), "stat": s.to_string()}))
                .collect();
            let v = json!({"cells": scan_records(&report), "survivors": survivors});
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
    }
    Ok(EXIT_OK)
}

/// One structured record per tested `(action, stat, n)` cell.
pub fn scan_records(report: &ScanReport) -> Vec<Value> {
    let mut recs = Vec::new();
    for e in &report.entries {
        for (n, v) in &e.results {
            let mut rec = json!({
                "action": e.action.pair_label(),
                "form": e.action.form.name(),
                "stat": e.stat.to_string(),
                "n": n,
            });
            match v {
                HomomesyVerdict::Homomesic(c) => {
                    rec["verdict"] = json!("homomesic");
                    rec["constant"] = json!(c.to_string());
                }
                HomomesyVerdict::Violated { first, second } => {
                    rec["verdict"] = json!("violated");
                    rec["rep1"] = json!(first.0.to_string());
                    rec["avg1"] = json!(first.1.to_string());
                    rec["rep2"] = json!(second.0.to_string());
                    rec["avg2"] = json!(second.1.to_string());
                }
            }
            recs.push(rec);
        }
    }
    recs
}

fn render_scan_text(
    report: &ScanReport,
    stats: &[crate::stats::StatisticId],
    degrees: &std::ops::RangeInclusive<usize>,
    num_actions: usize,
) -> String {
    let mut s = format!(
        "homomesy scan: {} actions, n={}..={}\n",
        num_actions,
        degrees.start(),
        degrees.end()
    );
    for e in &report.entries {
        let head = format!("{:<10} {:<14}", e.action.to_string(), e.stat.to_string());
        let line = match (e.first_violation(), e.results.last()) {
            (_, None) => "not tested".to_string(),
            (None, Some((n, v))) => format!("homomesic through n={n} ({v} at n={n})"),
            (Some(n), Some((_, v))) => format!("fails at n={n}: {v}"),
        };
        s.push_str(&format!("{head} {line}\n"));
    }
    for &stat in stats {
        let surv = report.surviving_actions(stat);
        let names: Vec<String> = surv.iter().map(|a| a.pair_label()).collect();
        s.push_str(&format!(
            "survivors for {stat}: {} of {num_actions}: {}\n",
            surv.len(),
            names.join(" ")
        ));
    }
    s
}

fn render_witness(o: &CheckOutcome, out: &mut dyn Write) -> io::Result<()> {
    if let Some(w) = &o.witness {
        let orbit = crate::dynamics::orbit_of(o.action, w);
        writeln!(
            out,
            "  witness orbit ({} elements) under {}:",
            orbit.len(),
            o.action
        )?;
        for x in orbit.elements() {
            writeln!(out, "    {x}")?;
        }
    }
    Ok(())
}

pub fn cmd_conjectures(args: &ConjecturesArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = args.engine.config();
    let outcomes = homomesy::conjecture_suite(args.max_n, &cfg)?;
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let indicators = if args.indicator_search {
        (1..=args.max_n)
            .map(|n| homomesy::indicator_search(FoaticAction::RHO_BAR, n, &cfg).map(|v| (n, v)))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    let half = num_rational::Ratio::new(1, 2);
    match args.format {
        Format::Json => {
            let recs: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "conjecture": o.name,
                        "action": o.action.pair_label(),
                        "form": o.action.form.name(),
                        "n": o.n,
                        "passed": o.passed,
                        "witness": o.witness.as_ref().map(|w| w.to_string()),
                        "witness_orbit": o.witness.as_ref().map(|w| crate::dynamics::orbit_of(o.action, w)
                            .elements().iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                        "detail": o.detail,
                    })
                })
                .collect();
            let ind: Vec<Value> = indicators
                .iter()
                .map(|(n, v)| {
                    json!({"n": n, "half_mesic": v.iter().filter(|(_, c)| *c == half)
                        .map(|(s, _)| s.to_string()).collect::<Vec<_>>()})
                })
                .collect();
            let v = json!({"checks": recs, "failed": failed, "indicator_search": ind});
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        Format::Text | Format::Csv => {
            if args.format == Format::Csv {
                writeln!(out, "conjecture,action,form,n,passed,witness")?;
            }
            for o in &outcomes {
                if args.format == Format::Csv {
                    writeln!(
                        out,
                        "{},\"{}\",{},{},{},{}",
                        o.name,
                        o.action.pair_label(),
                        o.action.form,
                        o.n,
                        o.passed,
                        o.witness
                            .as_ref()
                            .map(|w| w.to_string())
                            .unwrap_or_default()
                    )?;
                } else {
                    let status = if o.passed { "pass" } else { "FAIL" };
                    writeln!(
                        out,
                        "conjecture {:<7} {:<10} n={:<2} {status}  {}",
                        o.name,
                        o.action.to_string(),
                        o.n,
                        o.detail
                    )?;
                    render_witness(o, out)?;
                }
            }
            if args.format == Format::Text {
                for (n, v) in &indicators {
                    let names: Vec<String> = v
                        .iter()
                        .filter(|(_, c)| *c == half)
                        .map(|(s, _)| s.to_string())
                        .collect();
                    writeln!(
                        out,
                        "indicator search C,rot bar n={n}: 1/2-mesic: {}",
                        names.join(" ")
                    )?;
                }
                writeln!(
                    out,
                    "summary: {}/{} pass",
                    outcomes.len() - failed,
                    outcomes.len()
                )?;
            }
        }
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FALSIFIED })
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = args.engine.config();
    let items = homomesy::theorem_suite(args.max_n, &cfg)?;
    let passed = items.iter().filter(|i| i.passed).count();
    match args.format {
        Format::Json => {
            let recs: Vec<Value> = items
                .iter()
                .map(|i| json!({"item": i.item, "description": i.description, "passed": i.passed, "detail": i.detail}))
                .collect();
            let v =
                json!({"max_n": args.max_n, "items": recs, "passed": passed, "total": items.len()});
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        Format::Csv => {
            writeln!(out, "item,passed,description")?;
            for i in &items {
                writeln!(out, "{},{},\"{}\"", i.item, i.passed, i.description)?;
            }
        }
        Format::Text => {
            for i in &items {
                let status = if i.passed { "pass" } else { "FAIL" };
                writeln!(
                    out,
                    "item {} {status}: {} ({})",
                    i.item, i.description, i.detail
                )?;
            }
            writeln!(out, "{passed}/{} pass", items.len())?;
        }
    }
    Ok(if passed == items.len() {
        EXIT_OK
    } else {
        EXIT_FALSIFIED
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("foatic").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn trivial_table() {
        let (code, out, _) = run_str(&["tables", "--action", "C,C", "--max-n", "1"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 8);
        for line in &lines[2..] {
            assert!(line.ends_with("| 1"), "{line}");
        }
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_str(&["tables", "--action", "X,I"]).0, 1);
        assert_eq!(run_str(&["tables", "--action", "R,I", "--n", "13"]).0, 1);
        assert_eq!(run_str(&["scan", "--stats", "maj", "--max-n", "3"]).0, 1);
        assert_eq!(run_str(&["bogus"]).0, 1);
        assert_eq!(run_str(&["orbits", "--n", "3"]).0, 1);
        assert_eq!(
            run_str(&["orbits", "--n", "3", "--action", "C,C", "--good-only"]).0,
            1
        );
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn single_orbit_dump() {
        let (code, out, _) = run_str(&["orbits", "--action", "C,I", "--n", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "action=C,I form=bar n=1\n\norbit size=1 rep=1\n1\n");
    }

    #[test]
    fn empty_scan() {
        let (code, out, _) = run_str(&[
            "scan",
            "--stats",
            "fix",
            "--actions",
            "none",
            "--max-n",
            "3",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["cells"].as_array().unwrap().len(), 0);
        assert_eq!(v["survivors"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn degree_one_checks_pass() {
        let (code, out, _) = run_str(&["conjectures", "--max-n", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("summary: 4/4 pass"));
        let (code, out, _) = run_str(&["verify", "--max-n", "2"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("4/4 pass\n"));
    }
}
