use std::cell::RefCell;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use csf_core::census::{run_census, CensusConfig, CensusKind, CensusRow, CensusSummary};
use csf_core::conjectures::{family_factorial, family_two_m, leg_merging, line_graphs, positive_spiders};
use csf_core::criteria::{run_battery, tree_battery, BatteryOptions, BatteryReport, Verdict};
use csf_core::csf::{tree_csf, CsfCache, OracleBounds};
use csf_core::graph::enumerate_spiders;
use csf_core::verify::{run_all, CheckOutcome};
use csf_core::{EExpansion, Partition};
use rayon::prelude::*;
use serde_json::json;

use crate::target::{self, Target};
use crate::{CacheAction, CensusKindArg, Cli, Command, Format};

/// Largest spider expanded through the leg recursion.
const SPIDER_BOUND: u64 = 40;

struct Ctx {
    format: Format,
    bounds: OracleBounds,
    cache: CsfCache,
    store: Option<Store>,
}

/// The cache file and what it held when loaded.
struct Store {
    path: PathBuf,
    loaded: (usize, usize),
}

impl Ctx {
    fn save_cache(&self) -> Result<()> {
        if let Some(store) = &self.store {
            if counts(&self.cache) != store.loaded {
                self.cache.save(&store.path).with_context(|| format!("writing cache {}", store.path.display()))?;
            }
        }
        Ok(())
    }

    fn battery(&self, mode: crate::Mode, weak_variety: bool) -> BatteryOptions {
        BatteryOptions { mode: mode.into(), spider_bound: SPIDER_BOUND, oracle: self.bounds, weak_variety }
    }
}

fn counts(cache: &CsfCache) -> (usize, usize) {
    (cache.path_count(), cache.spider_count())
}

/// A missing file starts empty; an unreadable or corrupted one is reported
/// and rebuilt from scratch.
fn open_cache(path: Option<&Path>) -> (CsfCache, Option<Store>) {
    let Some(path) = path else { return (CsfCache::new(), None) };
    let cache = if path.exists() {
        match CsfCache::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("warning: cache {} is unusable ({e}); rebuilding", path.display());
                let _ = std::fs::remove_file(path);
                CsfCache::new()
            }
        }
    } else {
        CsfCache::new()
    };
    let loaded = if path.exists() { counts(&cache) } else { (usize::MAX, usize::MAX) };
    (cache, Some(Store { path: path.to_path_buf(), loaded }))
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(k) = cli.workers {
        if k == 0 {
            bail!("--workers must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    let bounds = match cli.oracle_bound {
        Some(n) => OracleBounds::new(n, OracleBounds::default().graph)?,
        None => OracleBounds::default(),
    };
    if let Command::Cache { action } = &cli.command {
        return cache_command(action, cli.cache.as_deref(), cli.format);
    }
    let (cache, store) = open_cache(cli.cache.as_deref());
    let ctx = Ctx { format: cli.format, bounds, cache, store };
    let code = match cli.command {
        Command::Analyze { target, mode, weak_variety } => analyze(&ctx, &target, mode, weak_variety)?,
        Command::Expand { target, coeff } => expand(&ctx, &target, coeff.as_deref())?,
        Command::Census { kind, range, max_n, legs, mode } => census(&ctx, kind, range.as_deref(), max_n, legs, mode)?,
        Command::Verify => verify(&ctx)?,
        Command::Conjectures { max_m, max_n } => conjectures(&ctx, max_m, max_n)?,
        Command::Cache { .. } => unreachable!("handled above"),
    };
    ctx.save_cache()?;
    Ok(code)
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Positive => "e-positive",
        Verdict::NotPositive => "not e-positive",
        Verdict::Unknown => "unknown",
    }
}

fn exit_for(v: Verdict) -> ExitCode {
    if v == Verdict::NotPositive {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

const CSV_HEADER: [&str; 6] = ["graph", "n", "d", "first_trigger", "e_positive", "witness"];

fn csv_record(row: &CensusRow) -> [String; 6] {
    [
        row.report.graph.clone(),
        row.n.to_string(),
        row.d.to_string(),
        row.first_trigger().unwrap_or("").to_string(),
        row.report.e_positive.as_str().to_string(),
        row.witness_summary(),
    ]
}

fn text_row(row: &CensusRow) -> String {
    let witness = row.witness_summary();
    format!(
        "{}\tn={}\td={}\t{}\t{}{}",
        row.report.graph,
        row.n,
        row.d,
        row.first_trigger().unwrap_or("-"),
        verdict_text(row.report.e_positive),
        if witness.is_empty() { String::new() } else { format!("\t{witness}") }
    )
}

fn print_report_text(report: &BatteryReport) {
    println!("{}: {}", report.graph, verdict_text(report.e_positive));
    for c in report.triggered() {
        let witness = c.witness.as_ref().map(|w| w.summary()).unwrap_or_default();
        let check = match c.verified {
            Some(true) => " (verified)",
            Some(false) => " (DOES NOT HOLD)",
            None => "",
        };
        let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let params = if params.is_empty() { String::new() } else { format!(" [{}]", params.join(" ")) };
        println!("  {}: {witness}{check}{params}", c.name);
    }
    if let Some(w) = &report.expansion_witness {
        println!("  expansion: {}", w.summary());
    }
}

fn analyze(ctx: &Ctx, arg: &str, mode: crate::Mode, weak_variety: bool) -> Result<ExitCode> {
    let target = target::parse(arg)?;
    let opts = ctx.battery(mode, weak_variety);
    let row = match &target {
        Target::Spider(s) => {
            CensusRow { n: s.vertex_count(), d: s.leg_count(), report: run_battery(s, &opts, &ctx.cache)? }
        }
        Target::Tree(t) => {
            CensusRow { n: t.vertex_count() as u64, d: t.max_degree(), report: tree_battery(t, &opts, &ctx.cache)? }
        }
    };
    match ctx.format {
        Format::Text => print_report_text(&row.report),
        Format::Json => println!("{}", serde_json::to_string_pretty(&row.report)?),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(CSV_HEADER)?;
            w.write_record(csv_record(&row))?;
            w.flush()?;
        }
    }
    Ok(exit_for(row.report.e_positive))
}

fn expansion_of(ctx: &Ctx, target: &Target) -> Result<std::sync::Arc<EExpansion>> {
    match target {
        Target::Spider(s) => {
            if s.vertex_count() > SPIDER_BOUND {
                bail!("{s} has {} vertices, above the spider bound of {SPIDER_BOUND}", s.vertex_count());
            }
            Ok(ctx.cache.spider(s))
        }
        Target::Tree(t) => Ok(tree_csf(t, &ctx.cache, ctx.bounds)?),
    }
}

fn expand(ctx: &Ctx, arg: &str, coeff: Option<&str>) -> Result<ExitCode> {
    let target = target::parse(arg)?;
    let key: Option<Partition> = coeff.map(str::parse).transpose()?;
    let x = expansion_of(ctx, &target)?;
    let label = target.label();
    match (key, ctx.format) {
        (Some(k), Format::Text) => println!("{}", x.coefficient(&k)),
        (Some(k), Format::Json) => println!(
            "{}",
            json!({"graph": label, "partition": k.parts(), "coefficient": x.coefficient(&k).to_string()})
        ),
        (Some(k), Format::Csv) => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(["graph", "partition", "coefficient"])?;
            w.write_record([label, k.to_string(), x.coefficient(&k).to_string()])?;
            w.flush()?;
        }
        (None, Format::Text) => print!("{}", x.to_canonical_text()),
        (None, Format::Json) => println!("{}", json!({"graph": label, "expansion": x.to_json()})),
        (None, Format::Csv) => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(["partition", "coefficient"])?;
            for (k, c) in x.iter_revlex() {
                w.write_record([k.to_string(), c.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn summary_text(s: &CensusSummary) -> String {
    format!(
        "summary: total={} criteria_flagged={} expansion_negative={} e_positive={} unknown={}",
        s.total, s.criteria_flagged, s.expansion_negative, s.e_positive, s.unknown
    )
}

fn write_row(format: Format, csv_out: Option<&mut csv::Writer<io::StdoutLock>>, row: &CensusRow) -> Result<()> {
    match (format, csv_out) {
        (Format::Csv, Some(w)) => w.write_record(csv_record(row))?,
        (Format::Json, _) => writeln!(io::stdout(), "{}", serde_json::to_string(row)?)?,
        _ => writeln!(io::stdout(), "{}", text_row(row))?,
    }
    Ok(())
}

fn census(
    ctx: &Ctx,
    kind: CensusKindArg,
    range: Option<&str>,
    max_n: Option<u64>,
    legs: Option<usize>,
    mode: crate::Mode,
) -> Result<ExitCode> {
    let first = match kind {
        CensusKindArg::Spiders => 2,
        CensusKindArg::Trees => 1,
    };
    let (lo, hi) = match (range.map(target::parse_range).transpose()?, max_n) {
        (Some((lo, hi)), None) => (lo, hi),
        (Some((lo, _)), Some(m)) => (lo, m),
        (None, Some(m)) => (first, m),
        (None, None) => bail!("give a range such as 4..12 or --max-n"),
    };
    if lo > hi {
        bail!("empty range {lo}..{hi}");
    }
    let kind = match kind {
        CensusKindArg::Spiders => CensusKind::Spiders { legs },
        CensusKindArg::Trees if legs.is_some() => bail!("--legs applies to spiders only"),
        CensusKindArg::Trees => CensusKind::Trees,
    };
    let config = CensusConfig { kind, orders: lo.max(first)..=hi, battery: ctx.battery(mode, false) };

    let stdout = io::stdout();
    let csv_out = RefCell::new((ctx.format == Format::Csv).then(|| csv::Writer::from_writer(stdout.lock())));
    if let Some(w) = csv_out.borrow_mut().as_mut() {
        w.write_record(CSV_HEADER)?;
    }
    let summary = run_census(
        &config,
        &ctx.cache,
        |row| {
            write_row(ctx.format, csv_out.borrow_mut().as_mut(), row).map_err(|e| csf_core::Error::Io(format!("{e:#}")))
        },
        || {
            if let Some(w) = csv_out.borrow_mut().as_mut() {
                w.flush()?;
            }
            ctx.save_cache().map_err(|e| csf_core::Error::Cache(format!("{e:#}")))
        },
    )?;
    match ctx.format {
        Format::Text => println!("{}", summary_text(&summary)),
        Format::Json => println!("{}", json!({ "summary": summary })),
        Format::Csv => eprintln!("{}", summary_text(&summary)),
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(ctx: &Ctx) -> Result<ExitCode> {
    let format = ctx.format;
    let mut csv_out = (format == Format::Csv).then(|| csv::Writer::from_writer(io::stdout()));
    if let Some(w) = csv_out.as_mut() {
        w.write_record(["id", "title", "passed", "seconds", "detail"])?;
    }
    let mut write_err = None;
    let outcomes: Vec<CheckOutcome> = run_all(&ctx.cache, |o| match (format, csv_out.as_mut()) {
        (Format::Text, _) => println!("{}", o.line()),
        (Format::Csv, Some(w)) => {
            let rec = [
                o.id.to_string(),
                o.title.to_string(),
                o.passed.to_string(),
                format!("{:.3}", o.elapsed.as_secs_f64()),
                o.detail.clone(),
            ];
            if let Err(e) = w.write_record(rec).and_then(|_| w.flush().map_err(Into::into)) {
                write_err.get_or_insert(e);
            }
        }
        _ => {}
    });
    if let Some(e) = write_err {
        return Err(e.into());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&outcomes)?),
        Format::Text => println!("{} passed, {failed} failed", outcomes.len() - failed),
        Format::Csv => {}
    }
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn conjectures(ctx: &Ctx, max_m: u64, max_n: u64) -> Result<ExitCode> {
    let vertices = ctx.bounds.forest as u64;
    let mut checks = family_two_m(max_m, vertices, &ctx.cache);
    checks.extend(family_factorial(4, max_m, vertices, &ctx.cache));
    let positive = positive_spiders(max_n, &ctx.cache);
    checks.extend(leg_merging(&positive, &ctx.cache));
    checks.extend(line_graphs(&positive, ctx.bounds)?);
    let failed: Vec<_> = checks.iter().filter(|c| !c.holds).collect();
    for c in &failed {
        eprintln!("COUNTEREXAMPLE to {}: {}", c.conjecture, c.instance);
    }
    match ctx.format {
        Format::Text => {
            for c in &checks {
                println!("{}\t{}\t{}", c.conjecture, c.instance, if c.holds { "holds" } else { "FAILS" });
            }
            println!(
                "{} checks over {} e-positive spiders, {} counterexamples",
                checks.len(),
                positive.len(),
                failed.len()
            );
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&checks)?),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(["conjecture", "instance", "holds"])?;
            for c in &checks {
                w.write_record([c.conjecture, c.instance.as_str(), if c.holds { "true" } else { "false" }])?;
            }
            w.flush()?;
        }
    }
    Ok(if failed.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cache_command(action: &CacheAction, path: Option<&Path>, format: Format) -> Result<ExitCode> {
    let Some(path) = path else { bail!("--cache <path> is required") };
    match action {
        CacheAction::Info => {
            let (state, entries) = if !path.exists() {
                ("missing", None)
            } else {
                match CsfCache::load(path) {
                    Ok(c) => ("ok", Some(counts(&c))),
                    Err(e) => {
                        eprintln!("cache {} is corrupted: {e}", path.display());
                        ("corrupted", None)
                    }
                }
            };
            let (paths, spiders) = entries.unwrap_or((0, 0));
            match format {
                Format::Json => println!(
                    "{}",
                    json!({"path": path.display().to_string(), "state": state, "paths": paths, "spiders": spiders})
                ),
                _ => println!("{}: {state}, {paths} paths, {spiders} spiders", path.display()),
            }
            Ok(if state == "corrupted" { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        CacheAction::Clear => {
            if path.exists() {
                std::fs::remove_file(path).with_context(|| format!("removing {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        CacheAction::Warm { max_n } => {
            if *max_n > SPIDER_BOUND {
                bail!("--max-n {max_n} is above the spider bound of {SPIDER_BOUND}");
            }
            let (cache, _) = open_cache(Some(path));
            let spiders: Vec<_> = (2..=*max_n).flat_map(enumerate_spiders).collect();
            spiders.par_iter().for_each(|s| {
                cache.spider(s);
            });
            cache.save(path)?;
            let (paths, spiders) = counts(&cache);
            println!("{}: {paths} paths, {spiders} spiders", path.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}
