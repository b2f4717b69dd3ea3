//! Differential tests: the library's exhaustive search and the brute-force
//! reference must agree on the exact number of violations per postulate.

mod common;

use common::{Agg, Beta, Dist, Op, Refinement, Space};
use fragmerge::postulates::{search, PostulateId, SearchSpace};
use fragmerge::refine::is_fair;
use fragmerge::space::InstanceSpace;
use fragmerge::{
    Aggregator, CountingDistance, DistanceOperator, Fragment, MergeOperator, RefinedOperator, RefinementKind,
};

fn library_op(op: &Op, fragment: &Fragment) -> Box<dyn MergeOperator> {
    let d = match op.dist {
        Dist::Hamming => CountingDistance::Hamming,
        Dist::Drastic => CountingDistance::Drastic,
    };
    let f = match op.agg {
        Agg::Sum => Aggregator::Sum,
        Agg::GMax => Aggregator::GMax,
    };
    let base = DistanceOperator::new(d, f);
    let beta = fragment.beta().clone();
    match op.refinement {
        Refinement::None => Box::new(base),
        Refinement::Closure => Box::new(RefinedOperator::new(base, RefinementKind::closure(beta))),
        Refinement::Lex => Box::new(RefinedOperator::new(base, RefinementKind::lex(beta))),
        Refinement::LexClosure => Box::new(RefinedOperator::new(base, RefinementKind::lex_closure(beta))),
    }
}

fn assert_counts_agree(op: Op, fragment: Fragment, ids: &[PostulateId]) {
    let lib = library_op(&op, &fragment);
    let report = search(
        &SearchSpace::new(2, Some(fragment.clone())).with_postulates(ids.to_vec()),
        &*lib,
    )
    .unwrap();
    let idx: Vec<usize> = ids.iter().map(|id| id.index()).collect();
    let expected = common::count_violations(&op, &Space::new(2, op.beta, 2), &idx);
    for &id in ids {
        let outcome = report.outcome(id).unwrap();
        assert_eq!(
            outcome.witnesses.len(),
            expected[id.index()],
            "{id} count for {} on {}",
            lib.label(),
            fragment.name()
        );
        for w in &outcome.witnesses {
            assert!(w.reproduces(&*lib).unwrap(), "{}", w.render());
        }
    }
}

const ALL: [PostulateId; 9] = PostulateId::ALL;

#[test]
fn unrefined_hamming_sum_counts_match_on_horn() {
    let op = Op {
        dist: Dist::Hamming,
        agg: Agg::Sum,
        refinement: Refinement::None,
        beta: Beta::And,
    };
    assert_counts_agree(op, Fragment::horn(), &ALL);
}

#[test]
fn gmax_closure_counts_match_on_horn() {
    let op = Op {
        dist: Dist::Hamming,
        agg: Agg::GMax,
        refinement: Refinement::Closure,
        beta: Beta::And,
    };
    assert_counts_agree(op, Fragment::horn(), &ALL);
}

#[test]
fn drastic_lex_counts_match_on_horn() {
    let op = Op {
        dist: Dist::Drastic,
        agg: Agg::Sum,
        refinement: Refinement::Lex,
        beta: Beta::And,
    };
    assert_counts_agree(op, Fragment::horn(), &ALL);
}

#[test]
fn lex_closure_counts_match_on_horn() {
    let op = Op {
        dist: Dist::Hamming,
        agg: Agg::Sum,
        refinement: Refinement::LexClosure,
        beta: Beta::And,
    };
    assert_counts_agree(op, Fragment::horn(), &ALL);
}

#[test]
fn drastic_closure_counts_match_on_krom() {
    let ids = [
        PostulateId::IC0,
        PostulateId::IC2,
        PostulateId::IC4,
        PostulateId::IC6,
    ];
    let op = Op {
        dist: Dist::Drastic,
        agg: Agg::GMax,
        refinement: Refinement::Closure,
        beta: Beta::Maj,
    };
    assert_counts_agree(op, Fragment::krom(), &ids);
}

#[test]
fn some_refined_operator_violates_a_postulate() {
    // Guards against the reference and the library agreeing on zero because
    // both check nothing.
    let op = Op {
        dist: Dist::Hamming,
        agg: Agg::GMax,
        refinement: Refinement::Closure,
        beta: Beta::And,
    };
    let counts = common::count_violations(&op, &Space::new(2, Beta::And, 2), &[4]);
    assert!(counts[4] > 0);
}

#[test]
fn lex_over_drastic_sum_violates_ic4_with_three_base_profiles() {
    let lib = library_op(
        &Op {
            dist: Dist::Drastic,
            agg: Agg::Sum,
            refinement: Refinement::Lex,
            beta: Beta::And,
        },
        &Fragment::horn(),
    );
    let space = SearchSpace::new(2, Some(Fragment::horn()))
        .with_max_profile(3)
        .with_postulates(vec![PostulateId::IC4]);
    let report = search(&space, &*lib).unwrap();
    assert!(report.witness_count() >= 1);
    for w in report.witnesses() {
        assert!(w.reproduces(&*lib).unwrap());
    }
}

#[test]
fn fairness_counts_match() {
    let space = InstanceSpace::new(2, Some(Fragment::horn()), 2).unwrap();
    let reference = Space::new(2, Beta::And, 2);
    for (dist, agg) in [
        (Dist::Hamming, Agg::Sum),
        (Dist::Hamming, Agg::GMax),
        (Dist::Drastic, Agg::Sum),
    ] {
        let op = Op {
            dist,
            agg,
            refinement: Refinement::Closure,
            beta: Beta::And,
        };
        let base = library_op(
            &Op {
                refinement: Refinement::None,
                ..op
            },
            &Fragment::horn(),
        );
        let refined = library_op(&op, &Fragment::horn());
        let report = is_fair(&*base, &*refined, &space).unwrap();
        assert_eq!(
            report.violations.len(),
            common::fairness_violations(&op, &reference),
            "{}",
            refined.label()
        );
    }
}
