//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.
//!
//! Set `BISETS_FULL_SWEEP=1` to run criteria 1 and 2 on every catalog case
//! instead of the per-triple sample.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use bisets::biset::{compose_bisets, stabilizer, transitive_biset};
use bisets::case::{build_module, diagonal_example, Case};
use bisets::functor::{
    functor_from_module, is_equivariant, sigma, sigma_to_induced, tensor_functors,
};
use bisets::group::{all_subgroups, build_group, direct_product, Group, ProductGroup, Subgroup};
use bisets::linalg::{Field, Scalar};
use bisets::product::ProductSubgroup;
use bisets::rep::{induce, IsoSearch};
use bisets::sweep::{plan_sweep, run_plan, SweepPlan, SweepSpec};
use bisets::theorem::{chain_parts, verify_theorem_case, Corruption, Mode, Status, VerifyOptions};
use num_rational::Ratio;

const Q: Field = Field::Rational;
const SWEEP_GROUPS: [&str; 5] = ["C2", "C3", "C4", "C2xC2", "S3"];
const SMALL_GROUPS: [&str; 14] = [
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "S3", "C2xC4", "C2xC2xC2", "D4", "Q8",
];
const MODULES: [&str; 3] = ["trivial", "perm", "regular"];

const SWEEP_MAX_INDEX: usize = 12;
const SWEEP_DIM_CAP: usize = 6;
const CONSTRUCTIVE_EVERY: usize = 10;
const MIN_SWEEP_CASES: usize = 500;
const SWEEP_BUDGET: Duration = Duration::from_secs(600);
const EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
const SWEEP_PER_TRIPLE: usize = 200;
const MODULAR_PER_TRIPLE: usize = 50;
const LEMMA_PER_TRIPLE: usize = 20;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn full_sweep() -> bool {
    std::env::var("BISETS_FULL_SWEEP").is_ok_and(|v| v == "1")
}

fn sweep_spec(field: Field, per_triple: usize) -> SweepSpec {
    SweepSpec {
        groups: SWEEP_GROUPS.iter().map(|s| s.to_string()).collect(),
        max_index: SWEEP_MAX_INDEX,
        dim_cap: SWEEP_DIM_CAP,
        modules: MODULES.iter().map(|s| s.to_string()).collect(),
        field,
        per_triple: (!full_sweep()).then_some(per_triple),
        ..Default::default()
    }
}

fn group(name: &str) -> Arc<Group> {
    Arc::new(build_group(name).unwrap())
}

fn product(a: &Arc<Group>, b: &Arc<Group>) -> Arc<ProductGroup> {
    Arc::new(direct_product(a, b).unwrap())
}

fn product_subgroups(p: &Arc<ProductGroup>) -> Vec<ProductSubgroup> {
    all_subgroups(p.group())
        .unwrap()
        .into_iter()
        .map(|s| ProductSubgroup::from_subgroup(p.clone(), s))
        .collect()
}

/// Exact integer value of an integral scalar.
fn int(s: &Scalar) -> i64 {
    s.to_string()
        .parse()
        .unwrap_or_else(|_| panic!("{s} is not an integer"))
}

// Independent finite-group helpers. Everything below works from the
// multiplication table and element sets only.

fn first_projection(s: &ProductSubgroup) -> BTreeSet<usize> {
    s.elements()
        .iter()
        .map(|&x| s.ambient().unpair(x).0)
        .collect()
}

fn second_projection(s: &ProductSubgroup) -> BTreeSet<usize> {
    s.elements()
        .iter()
        .map(|&x| s.ambient().unpair(x).1)
        .collect()
}

/// Representatives of `A\H/B`, each the least element of its double coset.
fn double_cosets(h: &Group, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Vec<usize> {
    let mut seen = vec![false; h.order()];
    let mut reps = Vec::new();
    for t in h.elements() {
        if seen[t] {
            continue;
        }
        reps.push(t);
        for &x in a {
            for &y in b {
                seen[h.mul(h.mul(x, t), y)] = true;
            }
        }
    }
    reps
}

/// `t⁻¹ h t`.
fn conj_by_inverse(h: &Group, t: usize, x: usize) -> usize {
    h.mul(h.mul(h.inv(t), x), t)
}

/// Runs one criterion body, turning a panic into a failure.
fn guarded(f: fn() -> Outcome) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(o) => o,
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        }
    }
}

fn sweep_reports(spec: &SweepSpec) -> (SweepPlan, Vec<bisets::theorem::VerificationReport>) {
    let plan = plan_sweep(spec).unwrap();
    let reports = run_plan(&plan, spec);
    (plan, reports)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let spec = SweepSpec {
        modes: vec![Mode::Char],
        constructive_every: Some(CONSTRUCTIVE_EVERY),
        ..sweep_spec(Q, SWEEP_PER_TRIPLE)
    };
    let (plan, reports) = sweep_reports(&spec);
    let elapsed = start.elapsed();
    let mut bad = Vec::new();
    let mut constructive = 0;
    for (p, r) in plan.cases.iter().zip(&reports) {
        let mut ok = r.passed && r.verdict("char") == Some(Status::Pass);
        if p.modes.contains(&Mode::Constructive) {
            constructive += 1;
            ok &= r.verdict("constructive") == Some(Status::Pass);
        }
        if !ok {
            bad.push(p.index);
        }
    }
    let n = reports.len();
    outcome(
        bad.is_empty() && n >= MIN_SWEEP_CASES && elapsed < SWEEP_BUDGET,
        format!(
            "{} of {n} cases pass (char), {constructive} constructive; {} not sampled, {} skipped by module caps; {:.1}s of {}s; failing {:?}",
            n - bad.len(),
            plan.unsampled,
            plan.skipped.len(),
            elapsed.as_secs_f64(),
            SWEEP_BUDGET.as_secs(),
            &bad[..bad.len().min(5)]
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for field in [Field::Prime(2), Field::Prime(3)] {
        let spec = SweepSpec {
            modes: vec![Mode::Constructive],
            max_middle_order: Some(6),
            max_outer_order: Some(6),
            ..sweep_spec(field, MODULAR_PER_TRIPLE)
        };
        let (plan, reports) = sweep_reports(&spec);
        let good = reports
            .iter()
            .filter(|r| {
                r.passed
                    && r.verdict("constructive") == Some(Status::Pass)
                    && r.characters.is_none()
            })
            .count();
        let divisible = plan
            .cases
            .iter()
            .filter(|p| {
                p.y.order() % field.characteristic() as usize == 0
                    || p.x.order() % field.characteristic() as usize == 0
            })
            .count();
        ok &= good == reports.len() && !reports.is_empty() && divisible > 0;
        details.push(format!(
            "{field}: {good}/{} pass, {divisible} with p dividing |Y| or |X|",
            reports.len()
        ));
    }
    outcome(ok, details.join("; "))
}

fn criterion_3() -> Outcome {
    let spec = sweep_spec(Q, LEMMA_PER_TRIPLE);
    let plan = plan_sweep(&spec).unwrap();
    let mut bad = Vec::new();
    for p in &plan.cases {
        let case = p.build(Q).unwrap();
        let parts = chain_parts(&case).unwrap();
        let good = bisets::functor::lemma_data(&parts.nf, &parts.mf).is_ok_and(|l| {
            l.alpha_beta_identity().unwrap_or(false)
                && l.beta_alpha_identity().unwrap_or(false)
                && l.alpha_equivariant().unwrap_or(false)
        });
        if !good {
            bad.push(p.index);
        }
    }
    outcome(
        bad.is_empty() && !plan.cases.is_empty(),
        format!(
            "alpha*beta = beta*alpha = 1 and alpha equivariant on {}/{} cases; failing {:?}",
            plan.cases.len() - bad.len(),
            plan.cases.len(),
            &bad[..bad.len().min(5)]
        ),
    )
}

fn criterion_4() -> Outcome {
    let groups: Vec<_> = SWEEP_GROUPS.iter().map(|g| group(g)).collect();
    let (mut total, mut good) = (0, 0);
    for h in &groups {
        for g in &groups {
            let hg = product(h, g);
            let whole = Subgroup::whole(hg.group());
            for x in product_subgroups(&hg)
                .into_iter()
                .filter(|x| x.index() <= SWEEP_MAX_INDEX)
            {
                let u = transitive_biset(&x).unwrap();
                for m_spec in MODULES {
                    if m_spec == "regular" && x.order() > SWEEP_DIM_CAP {
                        continue;
                    }
                    let Ok(m) = build_module(x.subgroup(), m_spec, Q) else {
                        continue;
                    };
                    total += 1;
                    let mf = functor_from_module(&u, &m).unwrap();
                    let s = sigma(&mf).unwrap();
                    let ind = induce(&whole, &m).unwrap();
                    let t = sigma_to_induced(&u, &m);
                    if t.is_invertible().unwrap() && is_equivariant(&t, s.rep(), &ind).unwrap() {
                        good += 1;
                    }
                }
            }
        }
    }
    outcome(
        good == total && total > 0,
        format!("explicit intertwiner verified for {good}/{total} (X, M) pairs"),
    )
}

/// `dim N(v) ⊗_{H_{v,u}} M(u)` from characters: the average over `l` of
/// `tr N(1,l) · tr M(l,1)`.
fn component_dim_oracle(
    nf: &bisets::functor::FunctorOverBiset,
    mf: &bisets::functor::FunctorOverBiset,
    h: &Group,
    v: usize,
    u: usize,
) -> Ratio<i64> {
    let (kh, hg) = (nf.biset().product(), mf.biset().product());
    let l: Vec<usize> = h
        .elements()
        .filter(|&e| nf.biset().act(kh.pair(0, e), v) == v && mf.biset().act(hg.pair(e, 0), u) == u)
        .collect();
    let sum: i64 = l
        .iter()
        .map(|&e| {
            int(&nf.transport(kh.pair(0, e), v).trace())
                * int(&mf.transport(hg.pair(e, 0), u).trace())
        })
        .sum();
    Ratio::new(sum, l.len() as i64)
}

fn criterion_5() -> Outcome {
    let outer = [group("C1"), group("C2")];
    let (mut cases, mut orbit_ok, mut stab_checks, mut stab_ok, mut comp_checks, mut comp_ok) =
        (0, 0, 0, 0, 0, 0);
    for h_name in SMALL_GROUPS {
        let h = group(h_name);
        for k in &outer {
            let kh = product(k, &h);
            let ys = product_subgroups(&kh);
            for g in &outer {
                let hg = product(&h, g);
                let xs = product_subgroups(&hg);
                for y in &ys {
                    let v = transitive_biset(y).unwrap();
                    let n_spec = if y.order() <= 8 { "regular" } else { "trivial" };
                    let nf =
                        functor_from_module(&v, &build_module(y.subgroup(), n_spec, Q).unwrap())
                            .unwrap();
                    for x in &xs {
                        cases += 1;
                        let u = transitive_biset(x).unwrap();
                        let composed = compose_bisets(v.biset(), u.biset()).unwrap();
                        let reps = double_cosets(&h, &second_projection(y), &first_projection(x));
                        let orbits = composed
                            .biset()
                            .orbits()
                            .into_iter()
                            .max()
                            .map_or(0, |m| m + 1);
                        orbit_ok += usize::from(orbits == reps.len());

                        for &t in &reps {
                            stab_checks += 1;
                            let w = composed.point_of_pair(0, u.point_of(hg.pair(t, 0)));
                            let lib: BTreeSet<(usize, usize)> = {
                                let s = stabilizer(&composed, w).unwrap();
                                s.pairs().collect()
                            };
                            let mut brute = BTreeSet::new();
                            for a in k.elements() {
                                for b in g.elements() {
                                    if h.elements().any(|e| {
                                        y.contains_pair(a, e)
                                            && x.contains_pair(conj_by_inverse(&h, t, e), b)
                                    }) {
                                        brute.insert((a, b));
                                    }
                                }
                            }
                            stab_ok += usize::from(lib == brute);
                        }

                        let m_spec = if x.order() <= 8 { "regular" } else { "trivial" };
                        let mf = functor_from_module(
                            &u,
                            &build_module(x.subgroup(), m_spec, Q).unwrap(),
                        )
                        .unwrap();
                        let tf = tensor_functors(&nf, &mf).unwrap();
                        for c in tf.components() {
                            comp_checks += 1;
                            let (pv, pu) = c.pair();
                            let want = component_dim_oracle(&nf, &mf, &h, pv, pu);
                            comp_ok += usize::from(want == Ratio::from_integer(c.dim() as i64));
                        }
                    }
                }
            }
        }
    }
    outcome(
        orbit_ok == cases && stab_ok == stab_checks && comp_ok == comp_checks && cases > 0,
        format!(
            "{cases} subgroup pairs with |H| <= 8: orbit counts {orbit_ok}/{cases}, stabilizers {stab_ok}/{stab_checks}, component dims {comp_ok}/{comp_checks}"
        ),
    )
}

/// `Σ_t (1/|L_t|) Σ_{l ∈ L_t} χ_N(1,l) χ_M(t⁻¹lt,1)`, `L_t = p₂(Y) ∩ t p₁(X) t⁻¹`.
fn mackey_oracle(case: &Case) -> Ratio<i64> {
    let (kh, hg) = (&case.kh, &case.hg);
    let h = kh.right();
    let (p, q) = (second_projection(&case.y), first_projection(&case.x));
    let mut total = Ratio::from_integer(0);
    for t in double_cosets(h, &p, &q) {
        let l: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&e| q.contains(&conj_by_inverse(h, t, e)))
            .collect();
        let sum: i64 = l
            .iter()
            .map(|&e| {
                int(&case.n.image(kh.pair(0, e)).trace())
                    * int(&case.m.image(hg.pair(conj_by_inverse(h, t, e), 0)).trace())
            })
            .sum();
        total += Ratio::new(sum, l.len() as i64);
    }
    total
}

fn criterion_6() -> Outcome {
    let one = group("C1");
    let (mut total, mut good) = (0, 0);
    let mut first_bad = None;
    for h_name in SMALL_GROUPS {
        let h = group(h_name);
        let (kh, hg) = (product(&one, &h), product(&h, &one));
        for y in product_subgroups(&kh) {
            for x in product_subgroups(&hg) {
                for n in MODULES {
                    for m in MODULES {
                        let Ok(case) = Case::from_parts(y.clone(), x.clone(), n, m, Q) else {
                            continue;
                        };
                        total += 1;
                        let want = mackey_oracle(&case).to_string();
                        let r = verify_theorem_case(&case, &VerifyOptions::default());
                        let agrees = r.passed
                            && r.characters.as_ref().is_some_and(|c| {
                                c.lhs == [want.clone()] && c.rhs == [want.clone()]
                            });
                        if agrees {
                            good += 1;
                        } else if first_bad.is_none() {
                            first_bad = Some(format!("{:?} oracle {want}", r.case));
                        }
                    }
                }
            }
        }
    }
    outcome(
        good == total && total > 0,
        format!(
            "{good}/{total} cases character-identical to the Mackey oracle{}",
            first_bad
                .map(|b| format!("; first mismatch {b}"))
                .unwrap_or_default()
        ),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let case = diagonal_example().build(Q).unwrap();
    let opts = VerifyOptions {
        modes: vec![Mode::Char, Mode::Constructive],
        ..Default::default()
    };
    let r = verify_theorem_case(&case, &opts);
    let elapsed = start.elapsed();
    // Oracle: both sides are R[C2] with (k,g)·x = k x g⁻¹, whose trace at
    // (k,g) counts the x fixed by it.
    let c2 = group("C2");
    let kg = product(&c2, &c2);
    let chars = r.characters.clone().unwrap_or_default();
    let want: Vec<String> = chars
        .classes
        .iter()
        .map(|name| {
            let (k, g) = kg.unpair(kg.group().element_by_name(name).unwrap());
            let fixed = c2
                .elements()
                .filter(|&x| c2.mul(c2.mul(k, x), c2.inv(g)) == x)
                .count();
            fixed.to_string()
        })
        .collect();
    let dims = r.dims.as_ref().map(|d| (d.lhs, d.rhs));
    let ok = dims == Some((2, 2))
        && !want.is_empty()
        && chars.lhs == want
        && chars.rhs == want
        && r.verdict("constructive") == Some(Status::Pass)
        && r.passed
        && elapsed < EXAMPLE_BUDGET;
    outcome(
        ok,
        format!(
            "dims {dims:?}, character {:?} on classes {:?}, oracle {want:?}, constructive {:?}; {:.0}ms of {}ms",
            chars.lhs,
            chars.classes,
            r.verdict("constructive"),
            elapsed.as_secs_f64() * 1e3,
            EXAMPLE_BUDGET.as_millis()
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    let cases = [
        diagonal_example(),
        bisets::case::CaseSpec {
            k: "C2".into(),
            h: "S3".into(),
            g: "C3".into(),
            y: "[(a,(12))]".into(),
            x: "[((123),a)]".into(),
            n: "trivial".into(),
            m: "regular".into(),
        },
    ];
    for spec in cases {
        let case = spec.build(Q).unwrap();
        for c in [
            Corruption::BisetAction,
            Corruption::Transport,
            Corruption::ModuleImage,
        ] {
            let r = verify_theorem_case(
                &case,
                &VerifyOptions {
                    modes: vec![Mode::Char, Mode::Constructive, Mode::Chain],
                    corruption: c,
                    ..Default::default()
                },
            );
            let caught = !r.passed && r.verdict("structure") != Some(Status::Pass);
            ok &= caught;
            lines.push(format!(
                "{c:?}: {}",
                if caught { "caught" } else { "MISSED" }
            ));
        }
    }
    // The hooks directly against the validators.
    let case = diagonal_example().build(Q).unwrap();
    let mut v = transitive_biset(&case.y).unwrap();
    let p = v.biset().points();
    v.biset_mut().corrupt_left_entry(1, 0, 0);
    ok &= v.biset().validate().is_err() && p == 2;
    let parts = chain_parts(&case).unwrap();
    let mut mf = parts.mf.clone();
    let one = bisets::linalg::Matrix::identity(Q, 1);
    mf.corrupt_transport(1, 0, one.scale(&Q.from_i64(2)));
    ok &= mf.check_functoriality().is_err();
    let gen = case.y.subgroup().generators()[0];
    let bad = case.n.with_image_replaced(gen, one.scale(&Q.from_i64(3)));
    ok &= bad.validate().is_err();
    // A wrong module is not an isomorphic right-hand side.
    let wrong = build_module(case.x.subgroup(), "regular", Q).unwrap();
    ok &= !matches!(
        bisets::rep::find_intertwiner_iso(&wrong, &case.m, 0).unwrap(),
        IsoSearch::Found(_)
    );
    outcome(
        ok,
        format!(
            "{}; direct validator hooks {}",
            lines.join(", "),
            if ok { "reject" } else { "see failure" }
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("theorem sweep over Q", criterion_1),
        ("theorem over F2 and F3, constructive", criterion_2),
        (
            "alpha and beta mutually inverse, alpha equivariant",
            criterion_3,
        ),
        (
            "Sigma of the module functor is the induced module",
            criterion_4,
        ),
        ("orbits, stabilizers, component dims", criterion_5),
        ("classical Mackey regression", criterion_6),
        ("C2 diagonal example", criterion_7),
        ("negative controls", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let o = guarded(f);
        failed += usize::from(!o.ok);
        println!(
            "criterion {} {} {name}: {} [{:.1}s]",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
