//! Catalog sweeps over subgroup pairs and modules.
//!
//! With the `parallel` feature cases run on the rayon pool; otherwise they
//! run in order on the calling thread. Output order is the case order
//! either way.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::case::{Case, CaseSpec};
use crate::error::{Error, Result};
use crate::group::{all_subgroups, build_group, direct_product, Group, ProductGroup, Subgroup};
use crate::linalg::Field;
use crate::product::ProductSubgroup;
use crate::theorem::{error_report, verify_theorem_case, Mode, VerificationReport, VerifyOptions};

pub const SUMMARY_SCHEMA: &str = "bisets.sweep-summary/v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Candidates for each of `K`, `H`, `G`.
    pub groups: Vec<String>,
    /// Largest allowed index of `Y` in `K×H` and of `X` in `H×G`.
    pub max_index: usize,
    /// `regular` is used only when `|Y|` (or `|X|`) is at most this.
    pub dim_cap: usize,
    pub modules: Vec<String>,
    pub field: Field,
    pub modes: Vec<Mode>,
    /// Every `n`-th case (by index) also runs constructive mode.
    pub constructive_every: Option<usize>,
    /// Keep one subgroup per conjugacy class of `K×H` (resp. `H×G`).
    pub conjugacy_reps: bool,
    /// Largest order of `H`; `None` for no limit.
    pub max_middle_order: Option<usize>,
    /// Largest order of `K` and `G`; `None` for no limit.
    pub max_outer_order: Option<usize>,
    /// Cases kept per `(K, H, G)` triple; `None` keeps all.
    pub per_triple: Option<usize>,
    pub case_cap: Option<usize>,
    pub seed: u64,
    pub timings: bool,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            groups: Vec::new(),
            max_index: 12,
            dim_cap: 6,
            modules: vec!["trivial".into(), "perm".into(), "regular".into()],
            field: Field::Rational,
            modes: vec![Mode::Char],
            constructive_every: None,
            conjugacy_reps: false,
            max_middle_order: None,
            max_outer_order: None,
            per_triple: None,
            case_cap: None,
            seed: 0,
            timings: false,
        }
    }
}

/// A case to run. Modules are built when the case runs.
#[derive(Clone, Debug)]
pub struct PlannedCase {
    pub index: usize,
    pub y: ProductSubgroup,
    pub x: ProductSubgroup,
    pub n: String,
    pub m: String,
    pub modes: Vec<Mode>,
}

impl PlannedCase {
    pub fn spec(&self) -> CaseSpec {
        describe(&self.y, &self.x, &self.n, &self.m)
    }

    pub fn build(&self, field: Field) -> Result<Case> {
        Case::from_parts(self.y.clone(), self.x.clone(), &self.n, &self.m, field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedCase {
    pub case: CaseSpec,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct SweepPlan {
    pub cases: Vec<PlannedCase>,
    pub skipped: Vec<SkippedCase>,
    /// Eligible cases left out by `per_triple` sampling.
    pub unsampled: usize,
    /// Cases beyond `case_cap`, not run.
    pub truncated: usize,
}

/// Subgroups of index at most `max_index`, paired with whether each has a
/// proper nontrivial subgroup.
fn subgroups_under(
    amb: &Arc<ProductGroup>,
    max_index: usize,
    conj_reps: bool,
) -> Result<Vec<(ProductSubgroup, bool)>> {
    let g = amb.group();
    let all = all_subgroups(g)?;
    let mut out: Vec<Subgroup> = Vec::new();
    for s in &all {
        if s.index() > max_index {
            continue;
        }
        if conj_reps {
            let conjugate_seen = out.iter().any(|o| {
                o.order() == s.order()
                    && g.elements()
                        .any(|t| s.elements().iter().all(|&a| o.contains(g.conj(t, a))))
            });
            if conjugate_seen {
                continue;
            }
        }
        out.push(s.clone());
    }
    Ok(out
        .into_iter()
        .map(|s| {
            let has_proper = all
                .iter()
                .any(|a| a.order() > 1 && a.order() < s.order() && a.is_subgroup_of(&s));
            (ProductSubgroup::from_subgroup(amb.clone(), s), has_proper)
        })
        .collect())
}

fn module_blocker(order: usize, has_proper: bool, module: &str, dim_cap: usize) -> Option<String> {
    match module.split(':').next().unwrap_or("") {
        "regular" if order > dim_cap => Some(format!(
            "regular module of dimension {order} exceeds the cap {dim_cap}"
        )),
        "perm" if !has_proper => Some("no proper nontrivial subgroup for perm".into()),
        _ => None,
    }
}

/// Deterministic enumeration: `K, H, G` in list order, then `Y`, `X` in
/// subgroup-catalog order, then `N`, `M` in module order. With
/// `per_triple`, each `(K, H, G)` keeps that many eligible cases, evenly
/// spaced.
pub fn plan_sweep(spec: &SweepSpec) -> Result<SweepPlan> {
    if spec.max_index == 0
        || spec.dim_cap == 0
        || spec.case_cap == Some(0)
        || spec.per_triple == Some(0)
    {
        return Err(Error::Parse("sweep caps must be positive".into()));
    }
    let groups = spec
        .groups
        .iter()
        .map(|s| build_group(s).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let within = |g: &Arc<Group>, cap: Option<usize>| cap.is_none_or(|c| g.order() <= c);
    let mut catalog: HashMap<(usize, usize), Vec<(ProductSubgroup, bool)>> = HashMap::new();
    let mut subgroups = |i: usize, j: usize| -> Result<Vec<(ProductSubgroup, bool)>> {
        if let Some(v) = catalog.get(&(i, j)) {
            return Ok(v.clone());
        }
        let amb = Arc::new(direct_product(&groups[i], &groups[j])?);
        let v = subgroups_under(&amb, spec.max_index, spec.conjugacy_reps)?;
        catalog.insert((i, j), v.clone());
        Ok(v)
    };
    let (mut cases, mut skipped) = (Vec::new(), Vec::new());
    let (mut unsampled, mut truncated) = (0, 0);
    for k in (0..groups.len()).filter(|&i| within(&groups[i], spec.max_outer_order)) {
        for h in (0..groups.len()).filter(|&i| within(&groups[i], spec.max_middle_order)) {
            let ys = subgroups(k, h)?;
            for g in (0..groups.len()).filter(|&i| within(&groups[i], spec.max_outer_order)) {
                let xs = subgroups(h, g)?;
                let mut eligible = Vec::new();
                for (y, y_proper) in &ys {
                    for (x, x_proper) in &xs {
                        for n in &spec.modules {
                            for m in &spec.modules {
                                let blocker = module_blocker(y.order(), *y_proper, n, spec.dim_cap)
                                    .or_else(|| {
                                        module_blocker(x.order(), *x_proper, m, spec.dim_cap)
                                    });
                                match blocker {
                                    Some(reason) => skipped.push(SkippedCase {
                                        case: describe(y, x, n, m),
                                        reason,
                                    }),
                                    None => eligible.push((y, x, n, m)),
                                }
                            }
                        }
                    }
                }
                let keep: Vec<usize> = match spec.per_triple {
                    Some(s) if s < eligible.len() => {
                        (0..s).map(|i| i * eligible.len() / s).collect()
                    }
                    _ => (0..eligible.len()).collect(),
                };
                unsampled += eligible.len() - keep.len();
                for i in keep {
                    let (y, x, n, m) = eligible[i];
                    if spec.case_cap.is_some_and(|c| cases.len() >= c) {
                        truncated += 1;
                        continue;
                    }
                    let index = cases.len();
                    let mut modes = spec.modes.clone();
                    if spec.constructive_every.is_some_and(|e| index % e == 0)
                        && !modes.contains(&Mode::Constructive)
                    {
                        modes.push(Mode::Constructive);
                    }
                    cases.push(PlannedCase {
                        index,
                        y: y.clone(),
                        x: x.clone(),
                        n: n.clone(),
                        m: m.clone(),
                        modes,
                    });
                }
            }
        }
    }
    Ok(SweepPlan {
        cases,
        skipped,
        unsampled,
        truncated,
    })
}

fn describe(y: &ProductSubgroup, x: &ProductSubgroup, n: &str, m: &str) -> CaseSpec {
    CaseSpec {
        k: y.ambient().left().name().to_string(),
        h: y.ambient().right().name().to_string(),
        g: x.ambient().right().name().to_string(),
        y: crate::case::describe_subgroup(y.subgroup()),
        x: crate::case::describe_subgroup(x.subgroup()),
        n: n.to_string(),
        m: m.to_string(),
    }
}

fn run_one(p: &PlannedCase, spec: &SweepSpec) -> VerificationReport {
    let opts = VerifyOptions {
        modes: p.modes.clone(),
        seed: spec.seed.wrapping_add(p.index as u64),
        timings: spec.timings,
        ..Default::default()
    };
    match p.build(spec.field) {
        Ok(case) => verify_theorem_case(&case, &opts),
        Err(e) => error_report(p.spec(), spec.field, opts.modes, opts.seed, &e),
    }
}

/// Verifies every planned case, returning reports in case order.
pub fn run_plan(plan: &SweepPlan, spec: &SweepSpec) -> Vec<VerificationReport> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        plan.cases.par_iter().map(|p| run_one(p, spec)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_plan_sequential(plan, spec)
    }
}

/// Verifies every planned case in order on the calling thread.
pub fn run_plan_sequential(plan: &SweepPlan, spec: &SweepSpec) -> Vec<VerificationReport> {
    plan.cases.iter().map(|p| run_one(p, spec)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailedCase {
    pub index: usize,
    pub case: CaseSpec,
    pub verdicts: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub schema: String,
    pub spec: SweepSpec,
    pub cases_run: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub unsampled: usize,
    pub truncated: usize,
    pub mode_counts: BTreeMap<String, usize>,
    pub skipped_by_reason: BTreeMap<String, usize>,
    pub failures: Vec<FailedCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl SweepSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

pub fn summarize(
    spec: &SweepSpec,
    plan: &SweepPlan,
    reports: &[VerificationReport],
    elapsed_ms: Option<f64>,
) -> SweepSummary {
    let mut failures = Vec::new();
    let mut mode_counts = BTreeMap::new();
    let mut skipped_by_reason = BTreeMap::new();
    for s in &plan.skipped {
        *skipped_by_reason.entry(s.reason.clone()).or_insert(0) += 1;
    }
    for (p, r) in plan.cases.iter().zip(reports) {
        for m in &r.modes {
            *mode_counts.entry(m.to_string()).or_insert(0) += 1;
        }
        if !r.passed {
            failures.push(FailedCase {
                index: p.index,
                case: r.case.clone(),
                verdicts: r
                    .verdicts
                    .iter()
                    .map(|(k, v)| {
                        format!(
                            "{k}: {:?}{}",
                            v.status,
                            v.detail
                                .as_deref()
                                .map(|d| format!(" ({d})"))
                                .unwrap_or_default()
                        )
                    })
                    .collect(),
            });
        }
    }
    SweepSummary {
        schema: SUMMARY_SCHEMA.to_string(),
        spec: spec.clone(),
        cases_run: reports.len(),
        passed: reports.len() - failures.len(),
        failed: failures.len(),
        skipped: plan.skipped.len(),
        unsampled: plan.unsampled,
        truncated: plan.truncated,
        mode_counts,
        skipped_by_reason,
        failures,
        elapsed_ms,
    }
}

/// Plans, runs and summarizes.
pub fn run_sweep(spec: &SweepSpec) -> Result<(SweepSummary, Vec<VerificationReport>)> {
    let start = Instant::now();
    let plan = plan_sweep(spec)?;
    let reports = run_plan(&plan, spec);
    let elapsed = spec.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
    Ok((summarize(spec, &plan, &reports, elapsed), reports))
}
