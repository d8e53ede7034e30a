//! `bisets` command line: verify one case, sweep a catalog, or inspect objects.
//!
//! Exit codes: 0 pass, 1 verified failure, 2 usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use bisets::biset::{compose_bisets, transitive_biset};
use bisets::case::{build_module, parse_product_subgroup, CaseSpec};
use bisets::group::{build_group, conjugacy_classes, direct_product, double_coset_reps, Group};
use bisets::linalg::Field;
use bisets::rep::character;
use bisets::sweep::{plan_sweep, run_plan, summarize, SweepSpec};
use bisets::theorem::{verify_theorem_case, Corruption, Mode, VerifyOptions};
use bisets::Error;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

const INSPECT_SCHEMA: &str = "bisets.inspect/v1";

#[derive(Parser)]
#[command(
    name = "bisets",
    version,
    about = "Verify tensor products of induced bimodules on small groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one case and print its report.
    Verify(VerifyArgs),
    /// Verify every case of a catalog and print a summary.
    Sweep(SweepArgs),
    /// Dump a group, a subgroup of a product, a composed biset, or a module.
    Inspect(InspectArgs),
}

#[derive(Args)]
struct Common {
    /// `Q` or a prime field `F<p>`.
    #[arg(long, default_value = "Q")]
    field: String,
    /// Comma-separated modes: char, constructive, chain, or `all`.
    #[arg(long, default_value = "char")]
    mode: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for JSON reports.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Largest allowed index of `Y` and `X`.
    #[arg(long, default_value_t = 12)]
    max_index: usize,
    /// Largest allowed module dimension (regular modules in sweeps).
    #[arg(long, default_value_t = 6)]
    dim_cap: usize,
    /// Record wall-clock timings in reports. Reports are then not reproducible.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    k: String,
    #[arg(long)]
    h: String,
    #[arg(long)]
    g: String,
    /// Subgroup of K×H: whole, trivial, diag, `[(k,h),...]`, or product element names.
    #[arg(long)]
    y: String,
    /// Subgroup of H×G, same syntax as `--y`.
    #[arg(long)]
    x: String,
    /// Module over Y: trivial, regular, perm[:i], sign, random:<seed>:<dim>.
    #[arg(long, default_value = "trivial")]
    n: String,
    /// Module over X, same syntax as `--n`.
    #[arg(long, default_value = "trivial")]
    m: String,
    #[command(flatten)]
    common: Common,
    #[arg(long, hide = true, default_value = "none")]
    corrupt: String,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated group list used for each of K, H, G.
    #[arg(long, value_delimiter = ',', default_value = "")]
    groups: Vec<String>,
    /// Comma-separated module catalog.
    #[arg(long, value_delimiter = ',', default_value = "trivial,perm,regular")]
    modules: Vec<String>,
    /// Also run constructive mode on every n-th case.
    #[arg(long)]
    constructive_every: Option<usize>,
    /// Keep this many evenly spaced cases per (K, H, G).
    #[arg(long)]
    per_triple: Option<usize>,
    /// Largest order allowed for each of K, H, G.
    #[arg(long)]
    max_order: Option<usize>,
    /// Stop after this many cases.
    #[arg(long)]
    case_cap: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct InspectArgs {
    #[command(subcommand)]
    what: Inspect,
}

#[derive(Subcommand)]
enum Inspect {
    /// Multiplication table, element names, classes.
    Group { group: String },
    /// Projections and kernels of a subgroup of A×B.
    Subgroup {
        a: String,
        b: String,
        subgroup: String,
    },
    /// Orbits of (K×H)/Y ×_H (H×G)/X against the double cosets.
    Biset {
        k: String,
        h: String,
        g: String,
        y: String,
        x: String,
    },
    /// Character of a catalog module over a group.
    Module {
        group: String,
        module: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep(a),
        Command::Inspect(a) => inspect(a.what),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_modes(text: &str) -> Result<Vec<Mode>, Failure> {
    if text.trim() == "all" {
        return Ok(vec![Mode::Char, Mode::Constructive, Mode::Chain]);
    }
    let modes = text
        .split(',')
        .map(|s| s.parse())
        .collect::<Result<Vec<Mode>, _>>()?;
    if modes.is_empty() {
        return Err(Failure::Usage("no mode given".into()));
    }
    Ok(modes)
}

fn positive(name: &str, v: usize) -> Result<(), Failure> {
    if v == 0 {
        return Err(Failure::Usage(format!("--{name} must be positive")));
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn write_json<T: Serialize>(dir: &Path, name: &str, v: &T) -> Result<(), Failure> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), to_json(v) + "\n")?;
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<bool, Failure> {
    let c = &a.common;
    positive("max-index", c.max_index)?;
    positive("dim-cap", c.dim_cap)?;
    let field = Field::parse(&c.field)?;
    let modes = parse_modes(&c.mode)?;
    let corruption: Corruption = a.corrupt.parse()?;
    let spec = CaseSpec {
        k: a.k,
        h: a.h,
        g: a.g,
        y: a.y,
        x: a.x,
        n: a.n,
        m: a.m,
    };
    let case = spec.build(field)?;
    for (name, index) in [("Y", case.y.index()), ("X", case.x.index())] {
        if index > c.max_index {
            return Err(Failure::Usage(format!(
                "{name} has index {index}, above --max-index {}",
                c.max_index
            )));
        }
    }
    for (name, dim) in [("N", case.n.dim()), ("M", case.m.dim())] {
        if dim > c.dim_cap {
            return Err(Failure::Usage(format!(
                "{name} has dimension {dim}, above --dim-cap {}",
                c.dim_cap
            )));
        }
    }
    let opts = VerifyOptions {
        modes,
        seed: c.seed,
        timings: c.timings,
        corruption,
    };
    let report = verify_theorem_case(&case, &opts);
    if let Some(dir) = &c.out_dir {
        write_json(dir, "report.json", &report)?;
    }
    println!("{}", to_json(&report));
    Ok(report.passed)
}

fn sweep(a: SweepArgs) -> Result<bool, Failure> {
    let c = &a.common;
    positive("max-index", c.max_index)?;
    positive("dim-cap", c.dim_cap)?;
    for (name, v) in [
        ("constructive-every", a.constructive_every),
        ("per-triple", a.per_triple),
        ("max-order", a.max_order),
        ("case-cap", a.case_cap),
    ] {
        if let Some(v) = v {
            positive(name, v)?;
        }
    }
    let spec = SweepSpec {
        groups: a
            .groups
            .into_iter()
            .filter(|s| !s.trim().is_empty())
            .collect(),
        max_index: c.max_index,
        dim_cap: c.dim_cap,
        modules: a.modules,
        field: Field::parse(&c.field)?,
        modes: parse_modes(&c.mode)?,
        constructive_every: a.constructive_every,
        max_middle_order: a.max_order,
        max_outer_order: a.max_order,
        per_triple: a.per_triple,
        case_cap: a.case_cap,
        seed: c.seed,
        timings: c.timings,
        ..Default::default()
    };
    let start = std::time::Instant::now();
    let plan = plan_sweep(&spec)?;
    let reports = run_plan(&plan, &spec);
    let elapsed = spec.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
    let summary = summarize(&spec, &plan, &reports, elapsed);
    if let Some(dir) = &c.out_dir {
        let cases = dir.join("cases");
        fs::create_dir_all(&cases)?;
        for (p, r) in plan.cases.iter().zip(&reports) {
            write_json(&cases, &format!("{:06}.json", p.index), r)?;
        }
        write_json(dir, "skipped.json", &plan.skipped)?;
        write_json(dir, "summary.json", &summary)?;
    }
    println!("{}", to_json(&summary));
    Ok(summary.all_passed())
}

fn group(spec: &str) -> Result<Arc<Group>, Failure> {
    Ok(Arc::new(build_group(spec)?))
}

fn names(g: &Group, elems: &[usize]) -> Vec<String> {
    elems
        .iter()
        .map(|&a| g.element_name(a).to_string())
        .collect()
}

fn inspect(what: Inspect) -> Result<bool, Failure> {
    let out = match what {
        Inspect::Group { group: spec } => {
            let g = group(&spec)?;
            let classes: Vec<Vec<String>> =
                conjugacy_classes(&g).iter().map(|c| names(&g, c)).collect();
            json!({
                "schema": INSPECT_SCHEMA,
                "group": g.name(),
                "order": g.order(),
                "abelian": g.is_abelian(),
                "elements": g.element_names(),
                "table": g.mul_table(),
                "classes": classes,
            })
        }
        Inspect::Subgroup { a, b, subgroup } => {
            let amb = Arc::new(direct_product(&group(&a)?, &group(&b)?)?);
            let s = parse_product_subgroup(&amb, &subgroup)?;
            let (l, r) = (amb.left(), amb.right());
            json!({
                "schema": INSPECT_SCHEMA,
                "ambient": amb.group().name(),
                "order": s.order(),
                "index": s.index(),
                "elements": names(amb.group(), s.elements()),
                "p1": names(l, s.p1().elements()),
                "p2": names(r, s.p2().elements()),
                "k1": names(l, s.k1().elements()),
                "k2": names(r, s.k2().elements()),
            })
        }
        Inspect::Biset { k, h, g, y, x } => {
            let (k, h, g) = (group(&k)?, group(&h)?, group(&g)?);
            let kh = Arc::new(direct_product(&k, &h)?);
            let hg = Arc::new(direct_product(&h, &g)?);
            let (y, x) = (
                parse_product_subgroup(&kh, &y)?,
                parse_product_subgroup(&hg, &x)?,
            );
            let (v, u) = (transitive_biset(&y)?, transitive_biset(&x)?);
            let composed = compose_bisets(v.biset(), u.biset())?;
            let reps = double_coset_reps(&h, y.p2(), x.p1())?;
            let orbit_sizes = {
                let orbits = composed.biset().orbits();
                let count = orbits.iter().copied().max().map_or(0, |m| m + 1);
                let mut sizes = vec![0usize; count];
                for o in orbits {
                    sizes[o] += 1;
                }
                sizes
            };
            json!({
                "schema": INSPECT_SCHEMA,
                "left_points": v.biset().points(),
                "right_points": u.biset().points(),
                "composed_points": composed.biset().points(),
                "orbit_sizes": orbit_sizes,
                "double_coset_reps": names(&h, &reps),
                "orbits_match_double_cosets": orbit_sizes.len() == reps.len(),
            })
        }
        Inspect::Module {
            group: spec,
            module,
            field,
        } => {
            let g = group(&spec)?;
            let whole = bisets::group::Subgroup::whole(&g);
            let m = build_module(&whole, &module, Field::parse(&field)?)?;
            let chi = character(&m);
            json!({
                "schema": INSPECT_SCHEMA,
                "group": g.name(),
                "module": module,
                "dim": m.dim(),
                "classes": chi.class_names(),
                "character": chi.values().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            })
        }
    };
    println!("{}", to_json(&out));
    Ok(true)
}
