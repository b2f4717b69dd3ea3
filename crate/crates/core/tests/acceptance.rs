//! Acceptance suite. Prints one PASS/FAIL line per criterion with its
//! elapsed time and limit, and exits non-zero if any criterion fails.
//! Derived values are cross-checked against the brute-force reference in
//! `common`; literal tables come from the published worked examples.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{Agg, Beta, Dist, Op, Refinement, Space};
use fragmerge::formula::{self, Formula};
use fragmerge::interp::closure;
use fragmerge::merge::{score_table, AggValue};
use fragmerge::postulates::{self as fixtures, search, PostulateId, SearchSpace};
use fragmerge::refine::{cardintersection, check_refinement_properties, is_fair, RefinementProperty};
use fragmerge::space::InstanceSpace;
use fragmerge::{
    Aggregator, BooleanFn, CountingDistance, DistanceOperator, Fragment, MergeOperator, ModelSet, Profile,
    RefinedOperator, RefinementKind, Universe,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let criteria = [
        Criterion {
            name: "example 1 distance table and merges",
            limit: secs(1),
            run: example_1,
        },
        Criterion {
            name: "example 3 lex, closure and lex-closure",
            limit: secs(1),
            run: example_3,
        },
        Criterion {
            name: "proof-table fixtures",
            limit: secs(5),
            run: proof_tables,
        },
        Criterion {
            name: "IC0-IC3 for all refined Hamming operators",
            limit: secs(60),
            run: ic0_ic3,
        },
        Criterion {
            name: "IC4 for Hamming sum closure",
            limit: secs(60),
            run: ic4_closure,
        },
        Criterion {
            name: "fairness suite",
            limit: secs(60),
            run: fairness,
        },
        Criterion {
            name: "IC5 and IC7 for lex refinements",
            limit: secs(120),
            run: lex_ic5_ic7,
        },
        Criterion {
            name: "refinement properties",
            limit: secs(60),
            run: refinement_properties,
        },
        Criterion {
            name: "synthesis round-trip over three atoms",
            limit: secs(30),
            run: synthesis_round_trip,
        },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > c.limit => Err("time limit exceeded".to_string()),
            r => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        if result.is_err() {
            failed += 1;
        }
        println!(
            "{tag} criterion {} {} [{:.3}s, limit {}s]: {detail}",
            i + 1,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn secs(n: u64) -> Duration {
    Duration::from_secs(n)
}

fn set(u: &Universe, text: &str) -> ModelSet {
    ModelSet::parse(u, text).unwrap()
}

fn bits(m: &ModelSet) -> Vec<u32> {
    m.bits().to_vec()
}

fn dist_op(d: CountingDistance, f: Aggregator) -> DistanceOperator {
    DistanceOperator::new(d, f)
}

fn refined(d: CountingDistance, f: Aggregator, kind: RefinementKind) -> RefinedOperator {
    RefinedOperator::new(dist_op(d, f), kind)
}

fn kinds(beta: &BooleanFn) -> [(RefinementKind, Refinement); 3] {
    [
        (RefinementKind::closure(beta.clone()), Refinement::Closure),
        (RefinementKind::lex(beta.clone()), Refinement::Lex),
        (RefinementKind::lex_closure(beta.clone()), Refinement::LexClosure),
    ]
}

fn fragments() -> [(Fragment, Beta); 2] {
    [(Fragment::horn(), Beta::And), (Fragment::krom(), Beta::Maj)]
}

fn lib_agg(a: Agg) -> Aggregator {
    match a {
        Agg::Sum => Aggregator::Sum,
        Agg::GMax => Aggregator::GMax,
    }
}

fn lib_dist(d: Dist) -> CountingDistance {
    match d {
        Dist::Hamming => CountingDistance::Hamming,
        Dist::Drastic => CountingDistance::Drastic,
    }
}

/// `K1 = a`, `K2 = b`, `mu = !a | !b` over `{a, b}`.
fn two_agents() -> (Universe, Profile, ModelSet) {
    let u = Universe::new(["a", "b"]).unwrap();
    let e = Profile::from_model_sets([set(&u, "{a} {a,b}"), set(&u, "{b} {a,b}")]).unwrap();
    let mu = set(&u, "{} {a} {b}");
    (u, e, mu)
}

fn example_1() -> Outcome {
    let (u, e, mu) = two_agents();
    let sum = score_table(&e, &mu, &CountingDistance::Hamming, Aggregator::Sum).map_err(|e| e.to_string())?;
    let gmax =
        score_table(&e, &mu, &CountingDistance::Hamming, Aggregator::GMax).map_err(|e| e.to_string())?;
    let sums: Vec<AggValue> = sum.iter().map(|r| r.score.clone()).collect();
    let gmaxes: Vec<AggValue> = gmax.iter().map(|r| r.score.clone()).collect();
    ensure!(sums == [2, 1, 1].map(AggValue::Scalar), "sum column {sums:?}");
    ensure!(
        gmaxes == [vec![1, 1], vec![1, 0], vec![1, 0]].map(AggValue::DescVector),
        "gmax column {gmaxes:?}"
    );
    let profile: Vec<Vec<u32>> = e.model_multiset().iter().map(bits).collect();
    for (row_s, row_g) in sum.iter().zip(&gmax) {
        let w = row_s.interpretation.bits();
        ensure!(
            AggValue::Scalar(common::score(Dist::Hamming, Agg::Sum, w, &profile)[0]) == row_s.score,
            "reference disagrees on the sum row for {}",
            row_s.interpretation
        );
        ensure!(
            AggValue::DescVector(common::score(Dist::Hamming, Agg::GMax, w, &profile)) == row_g.score,
            "reference disagrees on the gmax row for {}",
            row_g.interpretation
        );
    }
    for f in [Aggregator::Sum, Aggregator::GMax] {
        let out = dist_op(CountingDistance::Hamming, f)
            .apply(&e, &mu)
            .map_err(|e| e.to_string())?;
        ensure!(out == set(&u, "{a} {b}"), "{f} merge gave {out}");
    }
    let report = fixtures::reproduce("ex1").map_err(|e| e.to_string())?;
    ensure!(report.passes(), "fixture mismatches:\n{report}");
    Ok(format!("{} table cells, both merges {{a}}, {{b}}", sum.len() * 2))
}

fn example_3() -> Outcome {
    let (u, e, mu) = two_agents();
    let and = BooleanFn::and();
    let profile: Vec<Vec<u32>> = e.model_multiset().iter().map(bits).collect();
    let expected = [
        (RefinementKind::lex(and.clone()), Refinement::Lex, "{a}"),
        (
            RefinementKind::closure(and.clone()),
            Refinement::Closure,
            "{} {a} {b}",
        ),
        (
            RefinementKind::lex_closure(and.clone()),
            Refinement::LexClosure,
            "{} {a} {b}",
        ),
    ];
    for (kind, r, want) in expected {
        let label = kind.label();
        let out = refined(CountingDistance::Hamming, Aggregator::Sum, kind)
            .apply(&e, &mu)
            .map_err(|e| e.to_string())?;
        ensure!(out == set(&u, want), "{label} gave {out}");
        let reference = Op {
            dist: Dist::Hamming,
            agg: Agg::Sum,
            refinement: r,
            beta: Beta::And,
        };
        ensure!(
            reference.apply(&profile, &bits(&mu)) == bits(&out),
            "reference disagrees on {label}"
        );
    }
    let base = dist_op(CountingDistance::Hamming, Aggregator::Sum)
        .apply(&e, &mu)
        .unwrap();
    let count = cardintersection(&base, &e).map_err(|e| e.to_string())?;
    ensure!(count == 2, "#(M,E) = {count}");
    let report = fixtures::reproduce("ex3").map_err(|e| e.to_string())?;
    ensure!(report.passes(), "fixture mismatches:\n{report}");
    Ok("lex {a}; closure and lex-closure {}, {a}, {b} with # = 2".into())
}

fn proof_tables() -> Outcome {
    let ids = fixtures::fixture_ids();
    let mut cells = 0;
    for id in ids {
        let report = fixtures::reproduce(id).map_err(|e| e.to_string())?;
        ensure!(report.passes(), "{id}:\n{report}");
        cells += report.cells.len();
    }
    Ok(format!("{} fixtures, {cells} cells", ids.len()))
}

/// Runs a library search and the reference count for the same postulates,
/// requiring both to report `expected` witnesses per postulate.
fn cross_search(
    fragment: &Fragment,
    beta: Beta,
    op: &dyn MergeOperator,
    reference: &Op,
    ids: &[PostulateId],
) -> Result<u64, String> {
    let space = SearchSpace::new(2, Some(fragment.clone())).with_postulates(ids.to_vec());
    let report = search(&space, op).map_err(|e| e.to_string())?;
    let idx: Vec<usize> = ids.iter().map(|id| id.index()).collect();
    let counts = common::count_violations(reference, &Space::new(2, beta, 2), &idx);
    let mut checked = 0;
    for &id in ids {
        let o = report.outcome(id).unwrap();
        checked += o.checked;
        if let Some(w) = o.witnesses.first() {
            return Err(format!("{} on {}: {}", op.label(), fragment.name(), w.render()));
        }
        ensure!(
            counts[id.index()] == 0,
            "reference finds {} {id} violations for {} on {}",
            counts[id.index()],
            op.label(),
            fragment.name()
        );
    }
    Ok(checked)
}

fn ic0_ic3() -> Outcome {
    let ids = [
        PostulateId::IC0,
        PostulateId::IC1,
        PostulateId::IC2,
        PostulateId::IC3,
    ];
    let mut checked = 0;
    let mut ops = 0;
    for (fragment, beta) in fragments() {
        for (kind, r) in kinds(fragment.beta()) {
            for agg in [Agg::Sum, Agg::GMax] {
                let op = refined(CountingDistance::Hamming, lib_agg(agg), kind.clone());
                let reference = Op {
                    dist: Dist::Hamming,
                    agg,
                    refinement: r,
                    beta,
                };
                checked += cross_search(&fragment, beta, &op, &reference, &ids)?;
                ops += 1;
            }
        }
    }
    Ok(format!(
        "{ops} operator/fragment pairs, {checked} instances, 0 witnesses"
    ))
}

fn ic4_closure() -> Outcome {
    let mut checked = 0;
    for (fragment, beta) in fragments() {
        let op = refined(
            CountingDistance::Hamming,
            Aggregator::Sum,
            RefinementKind::closure(fragment.beta().clone()),
        );
        let reference = Op {
            dist: Dist::Hamming,
            agg: Agg::Sum,
            refinement: Refinement::Closure,
            beta,
        };
        checked += cross_search(&fragment, beta, &op, &reference, &[PostulateId::IC4])?;
    }
    Ok(format!("Horn and Krom, {checked} instances, 0 witnesses"))
}

fn fairness() -> Outcome {
    let mut pairs = 0;
    let mut checked = 0;
    for (fragment, beta) in fragments() {
        let space = InstanceSpace::new(2, Some(fragment.clone()), 2).map_err(|e| e.to_string())?;
        let reference_space = Space::new(2, beta, 2);
        let mut cases = Vec::new();
        for agg in [Agg::Sum, Agg::GMax] {
            cases.push((Dist::Drastic, agg, Refinement::Closure));
            for dist in [Dist::Hamming, Dist::Drastic] {
                cases.push((dist, agg, Refinement::LexClosure));
            }
        }
        for (dist, agg, r) in cases {
            let kind = match r {
                Refinement::Closure => RefinementKind::closure(fragment.beta().clone()),
                _ => RefinementKind::lex_closure(fragment.beta().clone()),
            };
            let base = dist_op(lib_dist(dist), lib_agg(agg));
            let op = RefinedOperator::new(base.clone(), kind);
            let report = is_fair(&base, &op, &space).map_err(|e| e.to_string())?;
            if let Some(v) = report.violations.first() {
                return Err(format!("{} not fair on {}: {v:?}", op.label(), fragment.name()));
            }
            let reference = Op {
                dist,
                agg,
                refinement: r,
                beta,
            };
            let n = common::fairness_violations(&reference, &reference_space);
            ensure!(
                n == 0,
                "reference finds {n} fairness violations for {}",
                op.label()
            );
            pairs += 1;
            checked += report.checked;
        }
    }
    let report = fixtures::reproduce("prop10-nonfair").map_err(|e| e.to_string())?;
    ensure!(report.passes(), "prop10-nonfair:\n{report}");
    Ok(format!(
        "{pairs} fair operator/fragment pairs over {checked} instances; hamming,sigma,closure certified not fair"
    ))
}

fn lex_ic5_ic7() -> Outcome {
    let mut checked = 0;
    for (fragment, beta) in fragments() {
        for agg in [Agg::Sum, Agg::GMax] {
            let op = refined(
                CountingDistance::Hamming,
                lib_agg(agg),
                RefinementKind::lex(fragment.beta().clone()),
            );
            let reference = Op {
                dist: Dist::Hamming,
                agg,
                refinement: Refinement::Lex,
                beta,
            };
            checked += cross_search(
                &fragment,
                beta,
                &op,
                &reference,
                &[PostulateId::IC5, PostulateId::IC7],
            )?;
        }
    }
    Ok(format!(
        "sigma and gmax on Horn and Krom, {checked} instances, 0 witnesses"
    ))
}

/// Ignores the profile and returns the constraint.
struct ReturnsConstraint;

impl MergeOperator for ReturnsConstraint {
    fn apply(&self, _: &Profile, mu: &ModelSet) -> fragmerge::Result<ModelSet> {
        Ok(mu.clone())
    }

    fn label(&self) -> String {
        "returns-mu".into()
    }
}

fn refinement_properties() -> Outcome {
    let mut runs = 0;
    for (fragment, beta) in fragments() {
        let space = InstanceSpace::new(2, Some(fragment.clone()), 2).map_err(|e| e.to_string())?;
        for (kind, _) in kinds(fragment.beta()) {
            for agg in [Aggregator::Sum, Aggregator::GMax] {
                let base = dist_op(CountingDistance::Hamming, agg);
                let op = RefinedOperator::new(base.clone(), kind.clone());
                let report = check_refinement_properties(&base, &op, fragment.beta(), &space)
                    .map_err(|e| e.to_string())?;
                ensure!(
                    report.passes(),
                    "{} on {}: {:?}",
                    op.label(),
                    fragment.name(),
                    report.findings
                );
                runs += 1;
            }
        }
        let base = dist_op(CountingDistance::Hamming, Aggregator::Sum);
        let report = check_refinement_properties(&base, &ReturnsConstraint, fragment.beta(), &space)
            .map_err(|e| e.to_string())?;
        let f = report
            .findings
            .iter()
            .find(|f| f.property == RefinementProperty::Containment)
            .ok_or_else(|| format!("broken refinement passed containment on {}", fragment.name()))?;
        ensure!(
            !bits(&f.refined_out)
                .iter()
                .all(|w| common::closure(beta, &bits(&f.base_out)).contains(w)),
            "reference closure contains the reported containment witness"
        );
        ensure!(
            closure(fragment.beta(), &f.base_out) != f.refined_out,
            "containment witness is not a strict violation"
        );
    }
    Ok(format!(
        "{runs} refined operators pass; returns-mu fails containment on Horn and Krom"
    ))
}

fn eval(phi: &Formula, w: u32) -> bool {
    match phi {
        Formula::Const(b) => *b,
        Formula::Atom(i) => w >> i & 1 == 1,
        Formula::Not(a) => !eval(a, w),
        Formula::And(a, b) => eval(a, w) && eval(b, w),
        Formula::Or(a, b) => eval(a, w) || eval(b, w),
        Formula::Implies(a, b) => !eval(a, w) || eval(b, w),
        Formula::Iff(a, b) => eval(a, w) == eval(b, w),
    }
}

fn conjuncts<'a>(phi: &'a Formula, out: &mut Vec<&'a Formula>) {
    match phi {
        Formula::And(a, b) => {
            conjuncts(a, out);
            conjuncts(b, out);
        }
        Formula::Const(true) => {}
        other => out.push(other),
    }
}

/// Literal polarities of a clause, or `None` if it is not a disjunction of literals.
fn literals(phi: &Formula, out: &mut Vec<bool>) -> Option<()> {
    match phi {
        Formula::Or(a, b) => {
            literals(a, out)?;
            literals(b, out)
        }
        Formula::Const(false) => Some(()),
        Formula::Atom(_) => {
            out.push(true);
            Some(())
        }
        Formula::Not(a) if matches!(**a, Formula::Atom(_)) => {
            out.push(false);
            Some(())
        }
        _ => None,
    }
}

fn synthesis_round_trip() -> Outcome {
    let u = Universe::letters(3).unwrap();
    let mut total = 0;
    for (fragment, beta) in fragments() {
        let sets: Vec<Vec<u32>> = common::closed_sets(3, beta)
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect();
        for s in &sets {
            let m = ModelSet::from_bits(&u, s.iter().copied()).unwrap();
            let phi = formula::synthesize(&m, &fragment).map_err(|e| format!("{m}: {e}"))?;
            let back: Vec<u32> = (0..8).filter(|&w| eval(&phi, w)).collect();
            ensure!(
                back == *s,
                "{} formula {} for {m} has models {back:?}",
                fragment.name(),
                phi.display(&u)
            );
            let mut clauses = Vec::new();
            conjuncts(&phi, &mut clauses);
            for c in clauses {
                let mut lits = Vec::new();
                literals(c, &mut lits).ok_or_else(|| format!("{} is not a clause", c.display(&u)))?;
                let ok = match beta {
                    Beta::And => lits.iter().filter(|&&p| p).count() <= 1,
                    Beta::Maj => lits.len() <= 2,
                };
                ensure!(ok, "clause {} is outside {}", c.display(&u), fragment.name());
            }
        }
        total += sets.len();
    }
    Ok(format!(
        "{total} closed sets round-trip through Horn and Krom formulas"
    ))
}
