//! The `formatio` command line: catalog management, membership queries,
//! sweeps, graph export and a supernatural-number calculator.
//!
//! Exit codes: 0 when everything holds, 2 when a theorem-backed property is
//! violated, 1 on usage or I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::checks::{formation_law_sweep, saturation_sweep, vstar_idempotence_sweep};
use crate::classes::{is_member_with, residual_with, ClassSpec, Limits, NamedClass};
use crate::constructions::catalog::{load_catalog, write_catalog, MANIFEST_FILE};
use crate::constructions::{
    alternating, build_catalog, build_e, cyclic, dicyclic, dihedral, gl23, sl23, symmetric, CatalogConfig,
};
use crate::error::{Error, Result};
use crate::group::{direct_product, quotient_unchecked, FiniteGroup, Subgroup, DEFAULT_MAX_ORDER};
use crate::regularity::{non_f_graph_with, regularity_sweep_with};
use crate::steinitz::{decode, encode_with_horizon, reg_join, reg_meet, ExponentFunction, Supernatural};
use crate::structure::{chief_series, DEFAULT_SUBGROUP_BUDGET};
use crate::subnormality::{v_obstruction, vstar_obstruction};

pub const CATALOG_ENV: &str = "FORMATIO_CATALOG";

#[derive(Debug, Parser)]
#[command(name = "formatio", version, about = "Formations of finite groups on Cayley tables")]
pub struct Cli {
    /// Catalog directory or manifest; the built-in catalog is used when absent.
    #[arg(long, env = CATALOG_ENV, global = true)]
    pub catalog: Option<PathBuf>,
    /// Largest group order taken from the catalog.
    #[arg(long, global = true, default_value_t = 120)]
    pub max_order: usize,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SUBGROUP_BUDGET)]
    pub budget_subgroups: usize,
    #[arg(long, global = true, default_value_t = crate::steinitz::DEFAULT_HORIZON)]
    pub horizon_primes: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Regularity,
    Saturation,
    FormationLaws,
    VstarIdempotence,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build, list or lint the group catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Membership of one group in a class, with witnesses.
    Check { group: String, spec: String },
    /// Run a property sweep over the catalog.
    Sweep {
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum, default_value = "regularity")]
        mode: Mode,
    },
    /// The non-F graph of a group.
    Graph { group: String, spec: String },
    /// Evaluate a supernatural-number expression.
    Sn { expr: String },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// Write the catalog to `--catalog` (default `catalog/`).
    Build {
        /// Overwrite an existing manifest that fails to load.
        #[arg(long)]
        force: bool,
    },
    List,
    Lint,
}

/// Parses arguments, runs, and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

pub fn run(cli: &Cli) -> Result<i32> {
    match cli.workers {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(|| dispatch(cli)),
        Some(_) => Err(Error::Parse("--workers must be positive".into())),
        None => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    if cli.max_order == 0 || cli.budget_subgroups == 0 || cli.horizon_primes == 0 {
        return Err(Error::Parse("limits must be positive".into()));
    }
    match &cli.command {
        Command::Catalog { action } => cmd_catalog(cli, action),
        Command::Check { group, spec } => cmd_check(cli, group, spec),
        Command::Sweep { spec, mode } => cmd_sweep(cli, spec, *mode),
        Command::Graph { group, spec } => cmd_graph(cli, group, spec),
        Command::Sn { expr } => {
            let value = eval_sn(expr, cli.horizon_primes)?;
            match cli.format.unwrap_or(Format::Text) {
                Format::Json => {
                    emit(cli, &(serde_json::to_string_pretty(&json!({"expr": expr, "value": value}))? + "\n"))
                }
                _ => emit(cli, &(value + "\n")),
            }?;
            Ok(0)
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    Limits { max_order: DEFAULT_MAX_ORDER, subgroup_budget: cli.budget_subgroups }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_value(cli: &Cli, value: &Value) -> Result<()> {
    match cli.format.unwrap_or(Format::Json) {
        Format::Text => emit(cli, &render_text(value)),
        _ => emit(cli, &(serde_json::to_string_pretty(value)? + "\n")),
    }
}

/// One `key: value` line per top-level field; arrays of objects become one
/// indented line per element.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = value else {
        return format!("{value}\n");
    };
    for (k, v) in map {
        match v {
            Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                out.push_str(&format!("{k}:\n"));
                for item in items {
                    let fields: Vec<String> =
                        item.as_object().into_iter().flatten().map(|(a, b)| format!("{a}={}", scalar(b))).collect();
                    out.push_str(&format!("  {}\n", fields.join(" ")));
                }
            }
            _ => out.push_str(&format!("{k}: {}\n", scalar(v))),
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn catalog_dir(cli: &Cli) -> PathBuf {
    cli.catalog.clone().unwrap_or_else(|| PathBuf::from("catalog"))
}

fn cmd_catalog(cli: &Cli, action: &CatalogAction) -> Result<i32> {
    match action {
        CatalogAction::Build { force } => {
            let dir = catalog_dir(cli);
            let dir = if dir.extension().is_some_and(|e| e == "json") {
                dir.parent().unwrap_or(Path::new(".")).to_path_buf()
            } else {
                dir
            };
            let manifest = dir.join(MANIFEST_FILE);
            if manifest.exists() && !force {
                if let Err(e) = load_catalog(&manifest) {
                    return Err(Error::Io(format!(
                        "{} exists and does not load ({e}); pass --force to overwrite",
                        manifest.display()
                    )));
                }
            }
            let entries = build_catalog(&CatalogConfig::with_max_order(cli.max_order))?;
            let path = write_catalog(&dir, &entries)?;
            emit_value(cli, &json!({"manifest": path.display().to_string(), "groups": entries.len()}))?;
            Ok(0)
        }
        CatalogAction::List => {
            let groups: Vec<Value> = catalog_entries(cli)?
                .iter()
                .map(|e| json!({"name": e.group.name(), "order": e.group.order(), "tags": e.tags, "provenance": e.provenance}))
                .collect();
            emit_value(cli, &json!({"groups": groups}))?;
            Ok(0)
        }
        CatalogAction::Lint => {
            let problems = crate::constructions::catalog::lint(&catalog_entries(cli)?)?;
            emit_value(cli, &json!({"problems": problems}))?;
            Ok(if problems.is_empty() { 0 } else { 2 })
        }
    }
}

fn catalog_entries(cli: &Cli) -> Result<Vec<crate::constructions::CatalogEntry>> {
    let mut entries = match &cli.catalog {
        Some(path) => load_catalog(path)?,
        None => build_catalog(&CatalogConfig::with_max_order(cli.max_order))?,
    };
    entries.retain(|e| e.group.order() <= cli.max_order);
    Ok(entries)
}

/// Builders addressed by name: `trivial`, `Z12`, `S4`, `A5`, `D8`, `Q8`,
/// `Dic12`, `SL(2,3)`, `GL(2,3)`, `E(4|3)`, and `x`-products such as `Z2xS3`.
pub fn builtin_group(name: &str) -> Option<Result<FiniteGroup>> {
    let num = |s: &str| s.parse::<usize>().ok().filter(|&n| n > 0);
    let single = |name: &str| -> Option<Result<FiniteGroup>> {
        Some(match name {
            "trivial" | "1" => cyclic(1),
            "Q8" => dicyclic(2),
            "Q16" => dicyclic(4),
            "SL(2,3)" => sl23(),
            "GL(2,3)" => gl23(),
            _ => {
                if let Some(inner) = name.strip_prefix("E(").and_then(|s| s.strip_suffix(')')) {
                    let (n, p) = inner.split_once('|')?;
                    build_e(n.trim().parse().ok()?, p.trim().parse().ok()?)
                } else if let Some(n) = name.strip_prefix("Dic").and_then(num).filter(|n| n % 4 == 0) {
                    dicyclic(n / 4)
                } else if let Some(n) = name.strip_prefix('Z').and_then(num) {
                    cyclic(n)
                } else if let Some(n) = name.strip_prefix('S').and_then(num) {
                    symmetric(n)
                } else if let Some(n) = name.strip_prefix('A').and_then(num) {
                    alternating(n)
                } else if let Some(n) = name.strip_prefix('D').and_then(num).filter(|n| n % 2 == 0) {
                    dihedral(n / 2)
                } else {
                    return None;
                }
            }
        })
    };
    if let Some(g) = single(name) {
        return Some(g);
    }
    let parts: Vec<&str> = name.split('x').collect();
    if parts.len() < 2 {
        return None;
    }
    let mut acc: Option<FiniteGroup> = None;
    for part in parts {
        let g = match single(part)? {
            Ok(g) => g,
            Err(e) => return Some(Err(e)),
        };
        acc = Some(match acc {
            None => g,
            Some(a) => direct_product(&a, &g),
        });
    }
    acc.map(Ok)
}

/// A group file path, a builder name, or a catalog entry name.
pub fn resolve_group(cli: &Cli, name: &str) -> Result<FiniteGroup> {
    let path = Path::new(name);
    if path.is_file() {
        return FiniteGroup::from_json(&fs::read_to_string(path)?);
    }
    if let Some(g) = builtin_group(name) {
        return g;
    }
    catalog_entries(cli)?
        .into_iter()
        .find(|e| e.group.name() == name)
        .map(|e| e.group)
        .ok_or_else(|| Error::Parse(format!("unknown group {name:?}")))
}

fn cmd_check(cli: &Cli, group: &str, spec: &str) -> Result<i32> {
    let g = resolve_group(cli, group)?;
    let spec: ClassSpec = spec.parse()?;
    let limits = limits(cli);
    let member = is_member_with(&g, &spec, &limits)?;
    let mut report = json!({
        "group": g.name(),
        "order": g.order(),
        "spec": spec.to_string(),
        "member": member,
    });
    if spec.is_formation() {
        report["residual"] = match residual_with(&g, &spec, &limits) {
            Ok(r) => json!(r),
            Err(e) => json!(e.to_string()),
        };
    }
    if !member {
        if let Some(w) = violating_chief_factor(&g, &spec, &limits)? {
            report["chief_factor"] = w;
        }
        let obstruction = match &spec {
            ClassSpec::VStar(h) => vstar_obstruction(&g, h)?,
            ClassSpec::Named(NamedClass::VU) => v_obstruction(&g)?,
            _ => None,
        };
        if let Some(h) = obstruction {
            report["obstruction"] = describe_cyclic(&g, &h);
        }
    }
    emit_value(cli, &report)?;
    Ok(0)
}

/// The lowest chief factor `N_i/N_{i-1}` of the canonical chief series with
/// `G/N_i` in the class and `G/N_{i-1}` outside it.
fn violating_chief_factor(g: &FiniteGroup, spec: &ClassSpec, limits: &Limits) -> Result<Option<Value>> {
    let series = chief_series(g);
    for i in (1..series.chain.len()).rev() {
        let below = &series.chain[i - 1];
        if !is_member_with(&quotient_unchecked(g, below).0, spec, limits)? {
            let upper = &series.chain[i];
            if is_member_with(&quotient_unchecked(g, upper).0, spec, limits)? {
                let f = &series.factors[i - 1];
                return Ok(Some(json!({
                    "lower": below,
                    "upper": upper,
                    "order": f.order,
                    "automizer_order": f.automizer_order,
                })));
            }
            return Ok(None);
        }
    }
    Ok(None)
}

fn describe_cyclic(g: &FiniteGroup, h: &Subgroup) -> Value {
    let generator = h.elems().iter().copied().find(|&x| g.element_order(x) == h.len());
    json!({"subgroup": h, "generator": generator, "order": h.len()})
}

fn cmd_sweep(cli: &Cli, spec: &str, mode: Mode) -> Result<i32> {
    let spec: ClassSpec = spec.parse()?;
    let groups: Vec<FiniteGroup> = catalog_entries(cli)?.into_iter().map(|e| e.group).collect();
    let limits = limits(cli);
    let (value, violations) = match mode {
        Mode::Regularity => {
            let r = regularity_sweep_with(&groups, &spec, &limits)?;
            (serde_json::to_value(&r)?, r.summary.violations)
        }
        Mode::Saturation => {
            let r = saturation_sweep(&groups, &spec, &limits)?;
            (serde_json::to_value(&r)?, r.violations())
        }
        Mode::FormationLaws => {
            let r = formation_law_sweep(&groups, &spec, &limits)?;
            (serde_json::to_value(&r)?, r.violations())
        }
        Mode::VstarIdempotence => {
            let r = vstar_idempotence_sweep(&groups, &spec, &limits)?;
            (serde_json::to_value(&r)?, r.violations())
        }
    };
    emit_value(cli, &value)?;
    Ok(if violations > 0 { 2 } else { 0 })
}

fn cmd_graph(cli: &Cli, group: &str, spec: &str) -> Result<i32> {
    let g = resolve_group(cli, group)?;
    let spec: ClassSpec = spec.parse()?;
    let graph = non_f_graph_with(&g, &spec, &limits(cli))?;
    match cli.format.unwrap_or(Format::Dot) {
        Format::Dot => emit(cli, &graph.to_dot())?,
        _ => emit_value(
            cli,
            &json!({
                "group": graph.group,
                "spec": graph.spec,
                "vertices": g.order(),
                "edges": graph.edges(),
                "loops": graph.loops(),
                "isolated": graph.isolated,
            }),
        )?,
    }
    Ok(0)
}

fn call<'a>(expr: &'a str, name: &str) -> Option<&'a str> {
    expr.strip_prefix(name)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

fn two(args: &str, sep: char) -> Result<(&str, &str)> {
    let parts: Vec<&str> = args.split(sep).collect();
    match parts.as_slice() {
        [a, b] => Ok((a, b)),
        _ => Err(Error::Parse(format!("expected two arguments in {args:?}"))),
    }
}

/// Evaluates `lcm(a, b)`, `gcd(a, b)`, `divides(a, b)`, `complement(a)`,
/// `encode(f)`, `decode(w)`, `reg_join(f; g)`, `reg_meet(f; g)`, or a bare
/// supernatural number, and prints the canonical result.
pub fn eval_sn(expr: &str, horizon: u64) -> Result<String> {
    let expr = expr.trim();
    let sn = |s: &str| s.trim().parse::<Supernatural>();
    let f = |s: &str| s.trim().parse::<ExponentFunction>();
    if let Some(args) = call(expr, "lcm") {
        let (a, b) = two(args, ',')?;
        return Ok(sn(a)?.lcm(&sn(b)?).to_string());
    }
    if let Some(args) = call(expr, "gcd") {
        let (a, b) = two(args, ',')?;
        return Ok(sn(a)?.gcd(&sn(b)?).to_string());
    }
    if let Some(args) = call(expr, "divides") {
        let (a, b) = two(args, ',')?;
        return Ok(sn(a)?.divides(&sn(b)?).to_string());
    }
    if let Some(arg) = call(expr, "complement") {
        let w = sn(arg)?;
        return w.complement().map(|c| c.to_string()).ok_or_else(|| Error::Parse(format!("{w} is not complete")));
    }
    if let Some(arg) = call(expr, "encode") {
        return Ok(encode_with_horizon(&f(arg)?, horizon).to_string());
    }
    if let Some(arg) = call(expr, "decode") {
        return Ok(decode(&sn(arg)?).to_string());
    }
    if let Some(args) = call(expr, "reg_join") {
        let (a, b) = two(args, ';')?;
        return Ok(reg_join(&f(a)?, &f(b)?).to_string());
    }
    if let Some(args) = call(expr, "reg_meet") {
        let (a, b) = two(args, ';')?;
        return Ok(reg_meet(&f(a)?, &f(b)?).to_string());
    }
    Ok(sn(expr)?.to_string())
}
