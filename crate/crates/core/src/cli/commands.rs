use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::cache::{cached, Cache};
use super::catalog::{catalog_run, catalog_specs, write_summary};
use super::config::{load_limits, CACHE_ENV};
use super::dsl::parse_spec;
use crate::error::{Error, Result};
use crate::filtration::{delta_depth, dimension_series, DeltaChain};
use crate::group::{build_group_with_cap, is_prime, structural_report, GroupRef};
use crate::theorems::{
    classify_terminating, classify_trivial_residue, order_pq_scan, rank_gap_table, rank_verdict, verify_lemma21,
    verify_lemma32, verify_lemma42, Check, Verdict,
};
use crate::units::{bass_unit, bicyclic_unit, nilpotent_search, NilpotentSearch};
use crate::zring::ElementJson;
use crate::{Limits, ZElement, DEFAULT_DEPTH};

#[derive(Debug, Parser)]
#[command(name = "augring", version, about = "Augmentation-power filtrations and units of integral group rings")]
pub struct Cli {
    /// TOML file with caps (max_order, max_depth, torsion_bound).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also write a CSV table of the report.
    #[arg(long, global = true, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    /// Result cache directory (default: $AUGRING_CACHE_DIR).
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure report for a group.
    Info { spec: String },
    /// Δ-chain with quotient invariants and stabilization.
    Delta {
        spec: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Dimension series next to the lower central series.
    Dimseries {
        spec: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Include the rational dimension series.
        #[arg(long)]
        rational: bool,
    },
    /// Construct and check units.
    Units {
        spec: String,
        #[arg(long, default_value_t = 4, global = true)]
        depth: usize,
        #[command(subcommand)]
        form: UnitForm,
    },
    /// Δ-adic depth of an element given as JSON (inline or a file path).
    Depth {
        spec: String,
        element: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Run a verifier over catalog groups or explicit specs.
    Verify {
        theorem: TheoremId,
        /// Inclusive order range `a..b` over the built-in catalog.
        #[arg(long, default_value = "1..16")]
        orders: OrderRange,
        /// Verify these groups instead of the catalog.
        #[arg(long = "spec")]
        specs: Vec<String>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, hide = true)]
        inject_failure: bool,
    },
    /// Summarize every catalog group up to an order.
    Catalog {
        #[arg(long, default_value_t = 16)]
        max_order: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum UnitForm {
    /// u_{k,m}(g) = (1 + g + … + g^{k−1})^m + ((1 − k^m)/n)ĝ
    Bass { g: String, k: u64, m: u32 },
    /// u_{g,h} = 1 + (g − 1)hĝ
    Bicyclic { g: String, h: String },
    /// Look for a nonzero square-zero element.
    SearchNilpotent {
        #[arg(long, default_value_t = 2)]
        coeff_bound: i64,
        #[arg(long, default_value_t = 6)]
        support_bound: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremId {
    #[value(name = "thm2.2")]
    Thm22,
    #[value(name = "thm3.3")]
    Thm33,
    #[value(name = "thm3.4")]
    Thm34,
    #[value(name = "rank")]
    Rank,
    #[value(name = "lemma2.1")]
    Lemma21,
    #[value(name = "lemma3.2")]
    Lemma32,
    #[value(name = "lemma4.2")]
    Lemma42,
}

impl TheoremId {
    fn name(self) -> &'static str {
        match self {
            TheoremId::Thm22 => "thm2.2",
            TheoremId::Thm33 => "thm3.3",
            TheoremId::Thm34 => "thm3.4",
            TheoremId::Rank => "rank",
            TheoremId::Lemma21 => "lemma2.1",
            TheoremId::Lemma32 => "lemma3.2",
            TheoremId::Lemma42 => "lemma4.2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderRange(pub RangeInclusive<u64>);

impl FromStr for OrderRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s.split_once("..").ok_or("expected a..b")?;
        let a: u64 = a.trim().parse().map_err(|_| format!("bad lower bound `{a}`"))?;
        let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| format!("bad upper bound `{b}`"))?;
        if a == 0 || a > b {
            return Err(format!("empty or invalid range {a}..{b}"));
        }
        Ok(OrderRange(a..=b))
    }
}

/// Exit codes: 0 success, 1 a verifier's evidence contradicts its outcome,
/// 2 usage, input or I/O error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

struct Ctx {
    limits: Limits,
    cache: Option<Cache>,
}

impl Ctx {
    fn group(&self, spec: &str) -> Result<GroupRef> {
        build_group_with_cap(&parse_spec(spec)?, self.limits.max_order)
    }

    fn chain(&self, group: &GroupRef, depth: usize) -> Result<DeltaChain> {
        DeltaChain::build(group, depth, &self.limits)
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let limits = match &cli.config {
        Some(p) => load_limits(p)?,
        None => Limits::default(),
    };
    let cache_dir = cli.cache_dir.clone().or_else(|| std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()).map(PathBuf::from));
    let cache = cache_dir.map(Cache::open).transpose()?;
    let ctx = Ctx { limits, cache };
    let c = ctx.cache.as_ref();
    let (report, code) = match &cli.command {
        Command::Info { spec } => {
            let g = ctx.group(spec)?;
            let v = cached(c, g.canonical_hash(), "info", json!(null), || Ok(serde_json::to_value(structural_report(&g))?))?;
            (v, 0)
        }
        Command::Delta { spec, depth } => {
            let g = ctx.group(spec)?;
            let v = cached(c, g.canonical_hash(), "delta", json!({ "depth": depth }), || {
                Ok(serde_json::to_value(ctx.chain(&g, *depth)?.report())?)
            })?;
            (v, 0)
        }
        Command::Dimseries { spec, depth, rational } => {
            let g = ctx.group(spec)?;
            let params = json!({ "depth": depth, "rational": rational });
            let v = cached(c, g.canonical_hash(), "dimseries", params, || {
                Ok(serde_json::to_value(dimension_series(&ctx.chain(&g, *depth)?, *rational).to_json())?)
            })?;
            (v, 0)
        }
        Command::Units { spec, depth, form } => (units(&ctx, spec, *depth, form)?, 0),
        Command::Depth { spec, element, depth } => {
            let g = ctx.group(spec)?;
            let text = if element.trim_start().starts_with('{') {
                element.clone()
            } else {
                std::fs::read_to_string(element).map_err(|e| Error::io(element, e))?
            };
            let json: ElementJson = serde_json::from_str(&text)?;
            let x = ZElement::from_json(&g, &json)?;
            let chain = ctx.chain(&g, *depth)?;
            let v = json!({
                "group": g.canonical_hash(),
                "element": x.to_json(),
                "depth": delta_depth(&x, &chain),
                "computed_depth": chain.depth(),
                "stabilized_at": chain.stabilized_at(),
            });
            (v, 0)
        }
        Command::Verify { theorem, orders, specs, depth, inject_failure } => {
            let mut verdicts = verify(&ctx, *theorem, orders, specs, *depth)?;
            if *inject_failure {
                if let Some(v) = verdicts.first_mut() {
                    v.holds = !v.holds;
                    v.check = Check::Failed;
                }
            }
            let count = |k: Check| verdicts.iter().filter(|v| v.check == k).count();
            let summary = json!({
                "groups": verdicts.len(),
                "passed": count(Check::Passed),
                "failed": count(Check::Failed),
                "undetermined": count(Check::Undetermined),
            });
            let code = if verdicts.iter().any(Verdict::failed) { 1 } else { 0 };
            if let Some(path) = &cli.csv {
                write_verdict_csv(path, &verdicts)?;
            }
            let v = json!({
                "theorem": theorem.name(),
                "orders": format!("{}..{}", orders.0.start(), orders.0.end()),
                "summary": summary,
                "verdicts": verdicts,
            });
            (v, code)
        }
        Command::Catalog { max_order, depth, workers } => {
            let path = cli.out.clone().unwrap_or_else(|| PathBuf::from("catalog_summary.json"));
            let cache = match ctx.cache {
                Some(cache) => cache,
                None => {
                    let parent = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
                    Cache::open(parent.join(".augring-cache"))?
                }
            };
            let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let summary = catalog_run(*max_order, *depth, workers.max(1), &cache, &ctx.limits)?;
            write_summary(&path, &summary)?;
            if let Some(csv) = &cli.csv {
                write_catalog_csv(csv, &summary)?;
            }
            let (hits, misses) = cache.stats();
            let _ = writeln!(err, "catalog: {} groups, cache hits {hits}, misses {misses}", summary["count"]);
            let _ = writeln!(out, "{}", path.display());
            return Ok(0);
        }
    };
    if let (Some(path), Command::Dimseries { .. }) = (&cli.csv, &cli.command) {
        write_dimseries_csv(path, &report)?;
    }
    emit(&report, cli.out.as_deref(), out)?;
    Ok(code)
}

fn emit(report: &Value, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let text = serde_json::to_string_pretty(report)? + "\n";
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::io(p, e)),
        None => out.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e)),
    }
}

fn units(ctx: &Ctx, spec: &str, depth: usize, form: &UnitForm) -> Result<Value> {
    let g = ctx.group(spec)?;
    let chain = ctx.chain(&g, depth)?;
    Ok(match form {
        UnitForm::Bass { g: x, k, m } => {
            let u = bass_unit(&chain, g.find_element(x)?, *k, *m)?;
            let probe = crate::units::torsion_probe(&u, ctx.limits.torsion_bound);
            json!({ "unit": u.to_json(), "torsion": probe })
        }
        UnitForm::Bicyclic { g: x, h } => {
            let u = bicyclic_unit(&chain, g.find_element(x)?, g.find_element(h)?);
            let probe = crate::units::torsion_probe(&u, ctx.limits.torsion_bound);
            json!({ "unit": u.to_json(), "torsion": probe })
        }
        UnitForm::SearchNilpotent { coeff_bound, support_bound } => match nilpotent_search(&chain, *coeff_bound, *support_bound) {
            NilpotentSearch::Found { alpha, canonical } => json!({
                "found": true,
                "alpha": alpha.to_json(),
                "canonical": canonical.map(|(x, h)| json!({ "g": g.label(x), "h": g.label(h) })),
            }),
            NilpotentSearch::NoneCommutative => json!({ "found": false, "reason": "commutative" }),
            NilpotentSearch::NoneFound { searched, exhaustive } => {
                json!({ "found": false, "reason": "none within bounds", "searched": searched, "exhaustive": exhaustive })
            }
        },
    })
}

fn verify(ctx: &Ctx, theorem: TheoremId, orders: &OrderRange, specs: &[String], depth: Option<usize>) -> Result<Vec<Verdict>> {
    let groups: Vec<GroupRef> = if specs.is_empty() {
        let max = (*orders.0.end()).min(ctx.limits.max_order as u64);
        catalog_specs(max)
            .iter()
            .filter(|s| orders.0.contains(&s.nominal_order().unwrap()))
            .map(|s| build_group_with_cap(s, ctx.limits.max_order))
            .collect::<Result<_>>()?
    } else {
        specs.iter().map(|s| ctx.group(s)).collect::<Result<_>>()?
    };
    let lim = &ctx.limits;
    let c = ctx.cache.as_ref();
    let mut out = Vec::new();
    if theorem == TheoremId::Rank {
        let primes: Vec<u64> = (2..=23).filter(|&p| is_prime(p)).collect();
        for (i, &p) in primes.iter().enumerate() {
            for &q in &primes[i + 1..] {
                out.push(rank_gap_table(p, q)?);
            }
        }
    }
    for g in &groups {
        let params = json!({ "depth": depth, "limits": lim });
        let value = cached(c, g.canonical_hash(), theorem.name(), params, || {
            let v = match theorem {
                TheoremId::Thm22 => Some(classify_terminating(g, lim)?),
                TheoremId::Thm33 => Some(classify_trivial_residue(g, lim)?),
                TheoremId::Thm34 => Some(order_pq_scan(g)),
                TheoremId::Rank => g.is_abelian().then(|| rank_verdict(g)).transpose()?,
                TheoremId::Lemma21 => Some(verify_lemma21(&ctx.chain(g, depth.unwrap_or(4))?, lim.torsion_bound)?),
                TheoremId::Lemma32 => Some(verify_lemma32(g, depth.unwrap_or(10), lim)?),
                TheoremId::Lemma42 => Some(verify_lemma42(&ctx.chain(g, depth.unwrap_or(10))?)?),
            };
            Ok(serde_json::to_value(v)?)
        })?;
        if !value.is_null() {
            out.push(verdict_from_value(value)?);
        }
    }
    Ok(out)
}

fn verdict_from_value(v: Value) -> Result<Verdict> {
    let check = match v["check"].as_str() {
        Some("passed") => Check::Passed,
        Some("failed") => Check::Failed,
        _ => Check::Undetermined,
    };
    let text = |k: &str| v[k].as_str().unwrap_or_default().to_string();
    Ok(Verdict {
        theorem: text("theorem"),
        group: text("group"),
        name: text("name"),
        holds: v["holds"].as_bool().unwrap_or(false),
        check,
        evidence: v["evidence"].clone(),
    })
}

fn csv_writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    csv::Writer::from_path(path).map_err(|e| Error::io(path, std::io::Error::other(e)))
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |e| Error::io(path, std::io::Error::other(e))
}

fn write_verdict_csv(path: &Path, verdicts: &[Verdict]) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["theorem", "name", "hash", "holds", "check"]).map_err(csv_err(path))?;
    for v in verdicts {
        let check = serde_json::to_value(v.check)?.as_str().unwrap().to_string();
        w.write_record([&v.theorem, &v.name, &v.group, &v.holds.to_string(), &check]).map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn write_dimseries_csv(path: &Path, report: &Value) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["n", "d_order", "gamma_order", "rational_d_order"]).map_err(csv_err(path))?;
    let len = |v: &Value| v.as_array().map_or(0, Vec::len).to_string();
    for (i, d) in report["d_series"].as_array().into_iter().flatten().enumerate() {
        let rational = report["rational_d_series"].get(i).map(len).unwrap_or_default();
        w.write_record([(i + 1).to_string(), len(d), len(&report["gamma_series"][i]), rational])
            .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn write_catalog_csv(path: &Path, summary: &Value) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["spec", "order", "hash", "stabilized_at", "thm2.2", "thm3.3", "thm3.4"]).map_err(csv_err(path))?;
    for g in summary["groups"].as_array().into_iter().flatten() {
        let cell = |v: &Value| match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        };
        let vd = |k: &str| cell(&g["verdicts"][k]["holds"]);
        w.write_record([
            cell(&g["spec"]),
            cell(&g["order"]),
            cell(&g["hash"]),
            cell(&g["delta"]["stabilized_at"]),
            vd("thm2.2"),
            vd("thm3.3"),
            vd("thm3.4"),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
