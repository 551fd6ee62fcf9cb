//! Argument parsing and command dispatch.

use crate::cache::{Cache, CACHE_DIR_ENV};
use crate::report::*;
use crate::spec::*;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use maxdim_core::dimension::{i_rank, m_rank, max_dim};
use maxdim_core::group::{is_nilpotent, is_simple, is_solvable};
use maxdim_core::harness::*;
use maxdim_core::lattice::{maximal_subgroups, maximal_subgroups_of_product, MaximalCatalog};
use maxdim_core::Config;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "maxdim", version, about = "Irredundant sets and general-position families of maximal subgroups")]
pub struct Cli {
    /// Seed for every randomized subroutine.
    #[arg(long, global = true, default_value_t = Config::default().seed)]
    pub seed: u64,
    /// Search nodes allowed per invariant computation.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Cache directory; defaults to the MAXDIM_CACHE_DIR environment variable.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Allow the expensive instances.
    #[arg(long, global = true)]
    pub stretch: bool,
    /// Record wall-clock times in the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order and structural flags of a group.
    Info { spec: String },
    /// m, i and MaxDim; all three when no flag is given.
    Invariants {
        spec: String,
        #[arg(long)]
        m: bool,
        #[arg(long)]
        i: bool,
        #[arg(long)]
        maxdim: bool,
    },
    /// Maximal subgroups, optionally through the direct-product description.
    Maximals {
        spec: String,
        #[arg(long)]
        goursat: bool,
    },
    /// Run one check; `verify list` prints the identifiers.
    Verify { check: String, params: Vec<String> },
    /// Build one of the explicit constructions and check it.
    #[command(subcommand)]
    Construct(Construct),
    /// Run a check over the corpus up to a given order.
    Sweep {
        #[arg(long)]
        max_order: usize,
        /// One of sandwich, frattini, goursat, split_extension, derived_nilpotent, additivity.
        #[arg(long)]
        check: String,
    },
    /// Re-run the command stored in a report and compare outcomes.
    Replay { report: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Maximal subgroups of PSL(2, p) by type and their intersections.
    Psl2 { p: u32 },
    /// The structured family in V ⋊ S.
    #[command(alias = "prop44")]
    Semidirect {
        #[arg(long)]
        s: String,
        #[arg(long)]
        p: u32,
    },
}

pub const CHECK_IDS: [(&str, &str); 15] = [
    ("wreath", "<p>"),
    ("sandwich", "<spec>|all"),
    ("frattini", "<spec>|all"),
    ("goursat", "<spec>|all"),
    ("additivity", "<spec> <spec>|all"),
    ("psl2_square", "<p>"),
    ("pullback_bound", "<spec>"),
    ("normal_split", "<spec> <normal subgroup order>"),
    ("split_extension", "<spec>|all"),
    ("derived_nilpotent", "<spec>|all"),
    ("nonflat", "[max order]"),
    ("semidirect_family", "<spec> <p>"),
    ("collins", "<p>"),
    ("dickson", "<p>"),
    ("induced_stabilizer", "[count]"),
];

pub const SWEEP_IDS: [&str; 6] = ["sandwich", "frattini", "goursat", "split_extension", "derived_nilpotent", "additivity"];

struct Ctx<'a> {
    cfg: Config,
    cache: Cache,
    stretch: bool,
    inputs: Vec<InputRecord>,
    results: Vec<CheckResult>,
    timings: Vec<TimingRecord>,
    warn: &'a mut dyn Write,
}

type Usage = String;

impl Ctx<'_> {
    fn run(&mut self, f: impl FnOnce() -> CheckResult) {
        let t = Instant::now();
        let r = f();
        self.timings.push(TimingRecord {
            check_id: r.check_id.clone(),
            instance: r.instance.clone(),
            millis: t.elapsed().as_millis() as u64,
        });
        self.results.push(r);
    }

    fn spec(&mut self, arg: &str) -> Result<GroupSpec, Usage> {
        let text = match arg.strip_prefix('@') {
            Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?,
            None => arg.to_string(),
        };
        let spec = parse_group_spec(&text).map_err(|e| e.to_string())?;
        self.inputs.push(InputRecord {
            spec: canonical_inline(&spec),
            order: None,
        });
        Ok(spec)
    }

    fn cfg_for(&self, spec: &GroupSpec) -> Config {
        let mut cfg = self.cfg.clone();
        if let Some(c) = spec.cap {
            cfg.element_cap = c;
        }
        cfg
    }

    fn entry(&mut self, arg: &str) -> Result<(CorpusEntry, Config), Usage> {
        let spec = self.spec(arg)?;
        let cfg = self.cfg_for(&spec);
        Ok((
            CorpusEntry {
                name: spec.recipe.name(),
                recipe: spec.recipe,
                order: 0,
            },
            cfg,
        ))
    }

    fn note_order(&mut self, order: usize) {
        if let Some(last) = self.inputs.last_mut() {
            last.order = Some(order);
        }
    }
}

fn int(params: &[String], k: usize, what: &str) -> Result<usize, Usage> {
    let s = params.get(k).ok_or_else(|| format!("missing {what}"))?;
    s.parse().map_err(|_| format!("{what} must be a number, got `{s}`"))
}

fn prime(params: &[String], k: usize) -> Result<u32, Usage> {
    let p = int(params, k, "prime")?;
    u32::try_from(p).map_err(|_| format!("{p} is too large"))
}

fn at_most(params: &[String], n: usize, id: &str) -> Result<(), Usage> {
    if params.len() > n {
        return Err(format!("`{id}` takes at most {n} parameter(s)"));
    }
    Ok(())
}

fn verify(ctx: &mut Ctx, id: &str, params: &[String]) -> Result<(), Usage> {
    let cfg = ctx.cfg.clone();
    let first = params.first().map(String::as_str);
    let all = first == Some("all");
    let need = |what: &str| format!("`{id}` needs {what}");
    match id {
        "wreath" => {
            at_most(params, 1, id)?;
            let p = int(params, 0, "p")?;
            if !matches!(p, 2 | 3) {
                return Err(format!("wreath needs p ∈ {{2, 3}}, got {p}"));
            }
            ctx.run(|| check_wreath(p, &cfg));
        }
        "sandwich" | "frattini" | "derived_nilpotent" | "goursat" | "split_extension" => {
            at_most(params, 1, id)?;
            let entries: Vec<(CorpusEntry, Config)> = if all {
                corpus().into_iter().map(|e| (e, cfg.clone())).collect()
            } else {
                vec![ctx.entry(first.ok_or_else(|| need("a group description or `all`"))?)?]
            };
            for (e, c) in entries {
                if all && id == "goursat" && !matches!(e.recipe, Recipe::DirectProduct(..)) {
                    continue;
                }
                if all && id == "split_extension" && !matches!(e.recipe, Recipe::Semidirect { .. }) {
                    continue;
                }
                ctx.run(|| run_entry_check(id, &e, &c));
            }
        }
        "additivity" => {
            let pairs: Vec<(Recipe, Recipe, Config)> = if all {
                at_most(params, 1, id)?;
                additivity_pairs().into_iter().map(|(a, b)| (a, b, cfg.clone())).collect()
            } else {
                at_most(params, 2, id)?;
                if params.len() != 2 {
                    return Err(need("two group descriptions or `all`"));
                }
                let (a, _) = ctx.entry(&params[0])?;
                let (b, _) = ctx.entry(&params[1])?;
                vec![(a.recipe, b.recipe, cfg.clone())]
            };
            for (a, b, c) in pairs {
                ctx.run(|| check_additivity(&a, &b, &c));
            }
        }
        "psl2_square" => {
            at_most(params, 1, id)?;
            let p = prime(params, 0)?;
            if p != 5 && !ctx.stretch {
                return Err(format!("psl2_square {p} is a stretch instance; pass --stretch"));
            }
            ctx.run(|| check_psl2_square(p, &cfg));
        }
        "pullback_bound" => {
            at_most(params, 1, id)?;
            let (e, c) = ctx.entry(first.ok_or_else(|| need("a group description"))?)?;
            ctx.run(|| check_pullback_bound(&e.recipe, &c));
        }
        "normal_split" => {
            at_most(params, 2, id)?;
            let (e, c) = ctx.entry(first.ok_or_else(|| need("a group description"))?)?;
            let n = int(params, 1, "normal subgroup order")?;
            ctx.run(|| check_normal_split(&e.recipe, n, &c));
        }
        "nonflat" => {
            at_most(params, 1, id)?;
            let max = if params.is_empty() { 200 } else { int(params, 0, "max order")? };
            ctx.run(|| find_smallest_nonflat(max, &cfg));
        }
        "semidirect_family" => {
            at_most(params, 2, id)?;
            let (e, c) = ctx.entry(first.ok_or_else(|| need("a group description"))?)?;
            let p = prime(params, 1)?;
            ctx.run(|| check_semidirect_family(&e.recipe, p, &c));
        }
        "collins" => {
            at_most(params, 1, id)?;
            let p = prime(params, 0)?;
            ctx.run(|| check_collins(p, &cfg));
        }
        "dickson" => {
            at_most(params, 1, id)?;
            let p = prime(params, 0)?;
            ctx.run(|| check_dickson(p, &cfg));
        }
        "induced_stabilizer" => {
            at_most(params, 1, id)?;
            let count = if params.is_empty() { 10 } else { int(params, 0, "count")? };
            ctx.run(|| check_induced_stabilizer(count, &cfg));
        }
        other => {
            let ids: Vec<&str> = CHECK_IDS.iter().map(|(id, _)| *id).collect();
            return Err(format!("unknown check `{other}`; available: {}", ids.join(", ")));
        }
    }
    Ok(())
}

fn run_entry_check(id: &str, e: &CorpusEntry, cfg: &Config) -> CheckResult {
    match id {
        "sandwich" => check_sandwich(e, cfg),
        "frattini" => check_frattini(e, cfg),
        "derived_nilpotent" => check_derived_nilpotent(e, cfg),
        "goursat" => check_goursat(&e.recipe, cfg),
        "split_extension" => check_split_extension(&e.recipe, cfg),
        _ => unreachable!("dispatched above"),
    }
}

fn sweep(ctx: &mut Ctx, max_order: usize, id: &str) -> Result<(), Usage> {
    if !SWEEP_IDS.contains(&id) {
        return Err(format!("`sweep` supports {}", SWEEP_IDS.join(", ")));
    }
    let cfg = ctx.cfg.clone();
    if id == "additivity" {
        let orders: std::collections::HashMap<Recipe, usize> =
            corpus().into_iter().map(|e| (e.recipe, e.order)).collect();
        for (a, b) in additivity_pairs() {
            let order = |r: &Recipe| orders.get(r).copied().or_else(|| r.build(cfg.element_cap).ok().map(|g| g.order()));
            if matches!((order(&a), order(&b)), (Some(x), Some(y)) if x * y <= max_order) {
                ctx.run(|| check_additivity(&a, &b, &cfg));
            }
        }
        return Ok(());
    }
    for e in corpus().into_iter().filter(|e| e.order <= max_order) {
        if id == "goursat" && !matches!(e.recipe, Recipe::DirectProduct(..)) {
            continue;
        }
        if id == "split_extension" && !matches!(e.recipe, Recipe::Semidirect { .. }) {
            continue;
        }
        ctx.run(|| check_frattini(&e, &cfg));
        if id != "frattini" {
            ctx.run(|| run_entry_check(id, &e, &cfg));
        }
    }
    Ok(())
}

fn info(ctx: &mut Ctx, arg: &str) -> Result<(), Usage> {
    let spec = ctx.spec(arg)?;
    let cfg = ctx.cfg_for(&spec);
    let mut order = None;
    ctx.run(|| {
        guarded("info", spec.recipe.name(), |r| {
            let g = spec.recipe.build(cfg.element_cap)?;
            order = Some(g.order());
            r.number("order", g.order());
            r.number("degree", g.degree());
            r.number("generators", g.generators().len());
            r.number("abelian", g.is_abelian() as i64);
            r.number("nilpotent", is_nilpotent(&g, &g.whole()) as i64);
            r.number("solvable", is_solvable(&g, &g.whole()) as i64);
            match is_simple(&g, &cfg) {
                Ok(s) => r.number("simple", s as i64),
                Err(e) => r.note(format!("simplicity not decided: {e}")),
            }
            r.witness = element_witness(&g, "gen", &g.generator_ids());
            Ok(())
        })
    });
    if let Some(o) = order {
        ctx.note_order(o);
    }
    Ok(())
}

fn invariants(ctx: &mut Ctx, arg: &str, mut m: bool, mut i: bool, mut md: bool) -> Result<(), Usage> {
    let spec = ctx.spec(arg)?;
    let cfg = ctx.cfg_for(&spec);
    if !(m || i || md) {
        (m, i, md) = (true, true, true);
    }
    let selection: String = [(m, "m"), (i, "i"), (md, "maxdim")]
        .iter()
        .filter(|(on, _)| *on)
        .map(|(_, n)| *n)
        .collect::<Vec<_>>()
        .join(",");
    let material = format!("{}|{selection}", canonical_inline(&spec));
    let name = spec.recipe.name();
    if let Some(hit) = ctx.cache.lookup(&material, cfg.node_budget, ctx.warn) {
        let _ = writeln!(ctx.warn, "served from cache: {name}");
        let mut r = CheckResult::new("invariants", name);
        r.numbers = hit.values.into_iter().collect();
        r.witness = hit
            .witness
            .into_iter()
            .map(|w| WitnessItem {
                label: w.label,
                order: w.order,
                generators: w.generators,
            })
            .collect();
        if let Some(o) = r.get("order") {
            ctx.note_order(o as usize);
        }
        ctx.results.push(r);
        return Ok(());
    }
    ctx.run(|| {
        guarded("invariants", name, |r| {
            let g = spec.recipe.build(cfg.element_cap)?;
            r.number("order", g.order());
            if m {
                let (v, w) = m_rank(&g, &cfg)?;
                r.number("m", v);
                r.witness.extend(element_witness(&g, "g", &w));
            }
            if i {
                let (v, w) = i_rank(&g, &cfg)?;
                r.number("i", v);
                r.witness.extend(element_witness(&g, "x", &w));
            }
            if md {
                let cat = maximal_subgroups(&g, &cfg)?;
                let (v, fam) = max_dim(&g, &cat, &cfg)?;
                r.number("maxdim", v);
                r.witness.extend(family_witness(&g, "M", &fam));
            }
            Ok(())
        })
    });
    let r = ctx.results.last().expect("just pushed").clone();
    if let Some(o) = r.get("order") {
        ctx.note_order(o as usize);
    }
    if r.status == CheckStatus::Pass {
        let rec = ResultRecord::from(&r);
        ctx.cache.store(&material, cfg.node_budget, rec.numbers, rec.witness, ctx.warn);
    }
    Ok(())
}

fn maximals(ctx: &mut Ctx, arg: &str, goursat: bool) -> Result<(), Usage> {
    let spec = ctx.spec(arg)?;
    if goursat && !matches!(spec.recipe, Recipe::DirectProduct(..)) {
        return Err("--goursat needs a directProduct description".into());
    }
    let cfg = ctx.cfg_for(&spec);
    let mut order = None;
    ctx.run(|| {
        guarded("maximals", spec.recipe.name(), |r| {
            let (g, cat): (_, MaximalCatalog) = if goursat {
                let prod = spec.recipe.build_product(cfg.element_cap)?.expect("product");
                let pc = maximal_subgroups_of_product(&prod, &cfg)?;
                r.number("standard_left", pc.standard_left);
                r.number("standard_right", pc.standard_right);
                r.number("pullbacks", pc.pullbacks);
                if prod.group.order() <= GOURSAT_RECHECK_LIMIT {
                    let generic = maximal_subgroups(&prod.group, &cfg)?;
                    r.require(pc.catalog.same_entries(&generic), "Goursat catalog equals generic catalog");
                }
                (prod.group.clone(), pc.catalog)
            } else {
                let g = spec.recipe.build(cfg.element_cap)?;
                let cat = maximal_subgroups(&g, &cfg)?;
                (g, cat)
            };
            order = Some(g.order());
            r.number("order", g.order());
            r.number("maximals", cat.maximals.len());
            r.number("classes", cat.classes.len());
            for (k, h) in cat.maximals.iter().enumerate() {
                r.witness.push(subgroup_witness(&g, format!("M{}", k + 1), h));
                r.note(format!(
                    "M{}: order {}, index {}, class {}, {:?}",
                    k + 1,
                    h.order(),
                    g.order() / h.order(),
                    cat.class_of[k] + 1,
                    cat.provenance[k]
                ));
            }
            Ok(())
        })
    });
    if let Some(o) = order {
        ctx.note_order(o);
    }
    Ok(())
}

fn dispatch(ctx: &mut Ctx, command: &Command) -> Result<(), Usage> {
    match command {
        Command::Info { spec } => info(ctx, spec),
        Command::Invariants { spec, m, i, maxdim } => invariants(ctx, spec, *m, *i, *maxdim),
        Command::Maximals { spec, goursat } => maximals(ctx, spec, *goursat),
        Command::Verify { check, params } if check == "list" && params.is_empty() => {
            for (id, args) in CHECK_IDS {
                let _ = writeln!(ctx.warn, "{id} {args}");
            }
            Ok(())
        }
        Command::Verify { check, params } => verify(ctx, check, params),
        Command::Construct(Construct::Psl2 { p }) => {
            let cfg = ctx.cfg.clone();
            ctx.run(|| check_dickson(*p, &cfg));
            ctx.run(|| check_collins(*p, &cfg));
            Ok(())
        }
        Command::Construct(Construct::Semidirect { s, p }) => {
            let (e, c) = ctx.entry(s)?;
            ctx.run(|| check_semidirect_family(&e.recipe, *p, &c));
            Ok(())
        }
        Command::Sweep { max_order, check } => sweep(ctx, *max_order, check),
        Command::Replay { report } => replay(ctx, report),
    }
}

fn replay(ctx: &mut Ctx, path: &PathBuf) -> Result<(), Usage> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let stored = decode_report(&bytes).map_err(|e| e.to_string())?;
    let mut inner = parse_cli(&stored.command).map_err(|e| e.to_string())?;
    inner.no_cache = true;
    if matches!(inner.command, Command::Replay { .. }) {
        return Err("a replay report cannot be replayed".into());
    }
    let fresh = evaluate(&inner, ctx.warn).map_err(|e| format!("stored command no longer runs: {e}"))?;
    let mut r = CheckResult::new("replay", path.display().to_string());
    let now: Vec<ResultRecord> = fresh.results.iter().map(ResultRecord::from).collect();
    r.number("results", stored.results.len());
    r.require(now.len() == stored.results.len(), "same number of results");
    for (a, b) in stored.results.iter().zip(&now) {
        let same = a.check_id == b.check_id && a.instance == b.instance && a.status == b.status && a.numbers == b.numbers;
        r.require(same, format!("{} {}: stored {} now {}", a.check_id, a.instance, a.status, b.status));
    }
    r.require(exit_code_for(&fresh.results.iter().map(|x| x.status).collect::<Vec<_>>()) == stored.exit_code, "same exit code");
    ctx.results.push(r);
    Ok(())
}

pub struct Evaluation {
    pub inputs: Vec<InputRecord>,
    pub results: Vec<CheckResult>,
    pub timings: Vec<TimingRecord>,
}

fn parse_cli(args: &[String]) -> Result<Cli, clap::Error> {
    Cli::try_parse_from(std::iter::once("maxdim".to_string()).chain(args.iter().cloned()))
}

/// Runs a parsed command line without printing anything but warnings.
pub fn evaluate(cli: &Cli, warn: &mut dyn Write) -> Result<Evaluation, String> {
    let mut cfg = Config {
        seed: cli.seed,
        ..Config::default()
    };
    if let Some(b) = cli.budget {
        cfg.node_budget = b;
    }
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::new(cli.cache_dir.clone().or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)))
    };
    let mut ctx = Ctx {
        cfg,
        cache,
        stretch: cli.stretch,
        inputs: Vec::new(),
        results: Vec::new(),
        timings: Vec::new(),
        warn,
    };
    dispatch(&mut ctx, &cli.command)?;
    Ok(Evaluation {
        inputs: ctx.inputs,
        results: ctx.results,
        timings: ctx.timings,
    })
}

/// Arguments as recorded in reports: everything except `--json`.
pub fn recorded_args(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--json" {
            skip = true;
        } else if !a.starts_with("--json=") {
            out.push(a.clone());
        }
    }
    out
}

pub fn print_table(results: &[CheckResult], out: &mut dyn Write) -> std::io::Result<()> {
    for r in results {
        writeln!(out, "{:<20} {:<36} {}", r.check_id, r.instance, r.status.label())?;
        let rec = ResultRecord::from(r);
        if !rec.numbers.is_empty() {
            let nums: Vec<String> = rec.numbers.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(out, "    {}", nums.join(" "))?;
        }
        for n in &r.notes {
            writeln!(out, "    {n}")?;
        }
    }
    Ok(())
}

/// Full command-line entry point; returns the process exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match parse_cli(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            }
        }
    };
    let eval = match evaluate(&cli, err) {
        Ok(e) => e,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let code = exit_code_for(&eval.results.iter().map(|r| r.status).collect::<Vec<_>>());
    let _ = print_table(&eval.results, out);
    let report = Report {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.into(),
        config_seed: cli.seed,
        budget: cli.budget.unwrap_or(Config::default().node_budget),
        command: recorded_args(args),
        inputs: eval.inputs,
        results: eval.results.iter().map(ResultRecord::from).collect(),
        exit_code: code,
        timings: if cli.timings { eval.timings } else { Vec::new() },
    };
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, encode_report(&report)) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    code
}
