//! IC0–IC8 checks on model sets, exhaustive counterexample search over small
//! fragment spaces, and reproducible fixtures.
//!
//! Entailment is inclusion of model sets, conjunction is intersection and
//! consistency is non-emptiness.

mod fixtures;

pub use fixtures::{fixture_ids, reproduce, Cell, FixtureReport};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interp::{Fragment, ModelSet};
use crate::merge::{Base, MergeOperator, Profile};
use crate::space::InstanceSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PostulateId {
    IC0,
    IC1,
    IC2,
    IC3,
    IC4,
    IC5,
    IC6,
    IC7,
    IC8,
}

impl PostulateId {
    pub const ALL: [PostulateId; 9] = [
        PostulateId::IC0,
        PostulateId::IC1,
        PostulateId::IC2,
        PostulateId::IC3,
        PostulateId::IC4,
        PostulateId::IC5,
        PostulateId::IC6,
        PostulateId::IC7,
        PostulateId::IC8,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Parses `ic4`, `ic0-ic3`, `ic0,ic4,ic7` or `all`.
    pub fn parse_list(text: &str) -> Result<Vec<PostulateId>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part.eq_ignore_ascii_case("all") {
                out.extend(PostulateId::ALL);
                continue;
            }
            match part.split_once('-') {
                Some((lo, hi)) => {
                    let (lo, hi) = (lo.parse::<PostulateId>()?, hi.parse::<PostulateId>()?);
                    if lo > hi {
                        return Err(Error::UnknownPostulate(part.to_string()));
                    }
                    out.extend(PostulateId::ALL[lo.index()..=hi.index()].iter().copied());
                }
                None => out.push(part.parse()?),
            }
        }
        if out.is_empty() {
            return Err(Error::UnknownPostulate(text.to_string()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for PostulateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let digit = lower
            .strip_prefix("ic")
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&d| d < PostulateId::ALL.len());
        digit
            .map(|d| PostulateId::ALL[d])
            .ok_or_else(|| Error::UnknownPostulate(s.to_string()))
    }
}

impl fmt::Display for PostulateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IC{}", self.index())
    }
}

/// The inputs one postulate talks about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    /// IC0, IC1, IC2.
    Single { profile: Profile, mu: ModelSet },
    /// IC3: two presentations.
    Equivalent {
        e1: Profile,
        mu1: ModelSet,
        e2: Profile,
        mu2: ModelSet,
    },
    /// IC4: the profile `{K1, K2}`.
    Pair {
        k1: ModelSet,
        k2: ModelSet,
        mu: ModelSet,
    },
    /// IC5, IC6.
    TwoProfiles { e1: Profile, e2: Profile, mu: ModelSet },
    /// IC7, IC8.
    TwoConstraints {
        profile: Profile,
        mu1: ModelSet,
        mu2: ModelSet,
    },
}

impl Instance {
    pub fn shape(&self) -> &'static str {
        match self {
            Instance::Single { .. } => "single",
            Instance::Equivalent { .. } => "equivalent-pair",
            Instance::Pair { .. } => "two-base",
            Instance::TwoProfiles { .. } => "two-profile",
            Instance::TwoConstraints { .. } => "two-constraint",
        }
    }

    /// One-line encoding without tabs, e.g. `E=([{a}] [{b},{a,b}]) mu=[{},{a}]`.
    pub fn encode(&self) -> String {
        match self {
            Instance::Single { profile, mu } => {
                format!("E={} mu={}", encode_profile(profile), encode_set(mu))
            }
            Instance::Equivalent { e1, mu1, e2, mu2 } => format!(
                "E1={} mu1={} E2={} mu2={}",
                encode_profile(e1),
                encode_set(mu1),
                encode_profile(e2),
                encode_set(mu2)
            ),
            Instance::Pair { k1, k2, mu } => format!(
                "K1={} K2={} mu={}",
                encode_set(k1),
                encode_set(k2),
                encode_set(mu)
            ),
            Instance::TwoProfiles { e1, e2, mu } => format!(
                "E1={} E2={} mu={}",
                encode_profile(e1),
                encode_profile(e2),
                encode_set(mu)
            ),
            Instance::TwoConstraints { profile, mu1, mu2 } => format!(
                "E={} mu1={} mu2={}",
                encode_profile(profile),
                encode_set(mu1),
                encode_set(mu2)
            ),
        }
    }
}

/// `[{},{a}]`; the empty set is `[]`.
pub fn encode_set(m: &ModelSet) -> String {
    let parts: Vec<String> = m.bits().iter().map(|&b| m.universe().render_bits(b)).collect();
    format!("[{}]", parts.join(","))
}

pub fn encode_profile(e: &Profile) -> String {
    let parts: Vec<String> = e.bases().iter().map(|b| encode_set(b.models())).collect();
    format!("({})", parts.join(" "))
}

/// A violation together with the operator outputs that establish it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub postulate: PostulateId,
    pub instance: Instance,
    /// Named operator outputs, e.g. `("out(E1+E2)", {b})`.
    pub outputs: Vec<(String, ModelSet)>,
}

impl Witness {
    pub fn render(&self) -> String {
        let mut s = format!("{} violated on {}\n", self.postulate, self.instance.encode());
        for (name, set) in &self.outputs {
            s.push_str(&format!("  {name} = {set}\n"));
        }
        s
    }

    /// Whether `op` still produces exactly these outputs and the violation.
    pub fn reproduces(&self, op: &dyn MergeOperator) -> Result<bool> {
        Ok(check_postulate(self.postulate, op, &self.instance)?.as_ref() == Some(self))
    }
}

fn pair_profile(k1: &ModelSet, k2: &ModelSet) -> Result<Profile> {
    Profile::new(vec![Base::new(k1.clone())?, Base::new(k2.clone())?])
}

fn meet(a: &ModelSet, b: &ModelSet) -> Result<ModelSet> {
    a.intersection(b)
}

/// Checks one postulate on one instance. Postulates whose premise fails on the
/// instance pass.
pub fn check_postulate(
    id: PostulateId,
    op: &dyn MergeOperator,
    instance: &Instance,
) -> Result<Option<Witness>> {
    use PostulateId::*;
    let mismatch = || Error::ShapeMismatch {
        postulate: id,
        found: instance.shape(),
    };
    let witness = |outputs: Vec<(&str, ModelSet)>| {
        Some(Witness {
            postulate: id,
            instance: instance.clone(),
            outputs: outputs.into_iter().map(|(n, s)| (n.to_string(), s)).collect(),
        })
    };
    match (id, instance) {
        (IC0 | IC1 | IC2, Instance::Single { profile, mu }) => {
            let out = op.apply(profile, mu)?;
            let violated = match id {
                IC0 => !out.is_subset(mu),
                IC1 => !mu.is_empty() && out.is_empty(),
                _ => {
                    let c = meet(&profile.conjunction(), mu)?;
                    !c.is_empty() && out != c
                }
            };
            Ok(if violated {
                witness(vec![("out", out)])
            } else {
                None
            })
        }
        (IC3, Instance::Equivalent { e1, mu1, e2, mu2 }) => {
            if !e1.equivalent(e2) || mu1 != mu2 {
                return Ok(None);
            }
            let o1 = op.apply(e1, mu1)?;
            let o2 = op.apply(e2, mu2)?;
            Ok(if o1 != o2 {
                witness(vec![("out(E1)", o1), ("out(E2)", o2)])
            } else {
                None
            })
        }
        (IC4, Instance::Pair { k1, k2, mu }) => {
            if !k1.is_subset(mu) || !k2.is_subset(mu) {
                return Ok(None);
            }
            let out = op.apply(&pair_profile(k1, k2)?, mu)?;
            Ok(if out.intersects(k1) != out.intersects(k2) {
                witness(vec![("out", out)])
            } else {
                None
            })
        }
        (IC5 | IC6, Instance::TwoProfiles { e1, e2, mu }) => {
            let o1 = op.apply(e1, mu)?;
            let o2 = op.apply(e2, mu)?;
            let both = meet(&o1, &o2)?;
            let joint = op.apply(&e1.join(e2)?, mu)?;
            let violated = if id == IC5 {
                !both.is_subset(&joint)
            } else {
                !both.is_empty() && !joint.is_subset(&both)
            };
            Ok(if violated {
                witness(vec![("out(E1)", o1), ("out(E2)", o2), ("out(E1+E2)", joint)])
            } else {
                None
            })
        }
        (IC7 | IC8, Instance::TwoConstraints { profile, mu1, mu2 }) => {
            let o1 = op.apply(profile, mu1)?;
            let lhs = meet(&o1, mu2)?;
            let o12 = op.apply(profile, &meet(mu1, mu2)?)?;
            let violated = if id == IC7 {
                !lhs.is_subset(&o12)
            } else {
                !lhs.is_empty() && !o12.is_subset(&lhs)
            };
            Ok(if violated {
                witness(vec![("out(mu1)", o1), ("out(mu1&mu2)", o12)])
            } else {
                None
            })
        }
        _ => Err(mismatch()),
    }
}

/// Bounds of an exhaustive search.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    pub atoms: usize,
    /// Bases and constraints are the non-empty (resp. all) sets closed under
    /// the fragment's function; `None` means every set.
    pub fragment: Option<Fragment>,
    pub max_profile: usize,
    pub postulates: Vec<PostulateId>,
    /// Stop collecting witnesses per postulate after this many.
    pub limit: Option<usize>,
}

impl SearchSpace {
    pub fn new(atoms: usize, fragment: Option<Fragment>) -> Self {
        SearchSpace {
            atoms,
            fragment,
            max_profile: 2,
            postulates: PostulateId::ALL.to_vec(),
            limit: None,
        }
    }

    pub fn with_postulates(mut self, postulates: Vec<PostulateId>) -> Self {
        self.postulates = postulates;
        self
    }

    pub fn with_max_profile(mut self, max_profile: usize) -> Self {
        self.max_profile = max_profile;
        self
    }

    pub fn with_limit(mut self, limit: Option<usize>) -> Self {
        self.limit = limit;
        self
    }
}

/// Instances above this count are refused.
pub const MAX_SEARCH_INSTANCES: u128 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostulateOutcome {
    pub postulate: PostulateId,
    pub checked: u64,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub operator: String,
    pub outcomes: Vec<PostulateOutcome>,
}

impl SearchReport {
    pub fn witness_count(&self) -> usize {
        self.outcomes.iter().map(|o| o.witnesses.len()).sum()
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.outcomes.iter().flat_map(|o| o.witnesses.iter())
    }

    pub fn outcome(&self, id: PostulateId) -> Option<&PostulateOutcome> {
        self.outcomes.iter().find(|o| o.postulate == id)
    }
}

fn instance_count(id: PostulateId, space: &InstanceSpace) -> u128 {
    let p = space.profile_count();
    let c = space.constraints().len() as u128;
    let b = space.bases().len() as u128;
    match id {
        PostulateId::IC0 | PostulateId::IC1 | PostulateId::IC2 | PostulateId::IC3 => p * c,
        PostulateId::IC4 => b * (b + 1) / 2 * c,
        PostulateId::IC5 | PostulateId::IC6 => p * (p + 1) / 2 * c,
        PostulateId::IC7 | PostulateId::IC8 => p * c * c,
    }
}

/// Runs the outer loop in parallel; `inner(i)` checks every instance with
/// outer index `i`. Results keep outer-index order.
fn run_outer<F>(outer: usize, limit: Option<usize>, inner: F) -> Result<(u64, Vec<Witness>)>
where
    F: Fn(usize, &mut Vec<Witness>) -> Result<u64> + Sync,
{
    let chunks: Vec<(u64, Vec<Witness>)> = (0..outer)
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            let n = inner(i, &mut found)?;
            if let Some(l) = limit {
                found.truncate(l);
            }
            Ok((n, found))
        })
        .collect::<Result<_>>()?;
    let mut checked = 0;
    let mut all = Vec::new();
    for (n, w) in chunks {
        checked += n;
        all.extend(w);
    }
    if let Some(l) = limit {
        all.truncate(l);
    }
    Ok((checked, all))
}

/// Checks every selected postulate on every instance of the space.
pub fn search(space: &SearchSpace, op: &dyn MergeOperator) -> Result<SearchReport> {
    let inst = InstanceSpace::new(space.atoms, space.fragment.clone(), space.max_profile)?;
    let total: u128 = space.postulates.iter().map(|&id| instance_count(id, &inst)).sum();
    if total > MAX_SEARCH_INSTANCES {
        return Err(Error::SpaceTooLarge(format!(
            "{total} instances exceed the limit of {MAX_SEARCH_INSTANCES}"
        )));
    }
    let profiles = inst.profiles();
    let constraints = inst.constraints();
    let bases = inst.bases();
    let mut outcomes = Vec::new();
    for &id in &space.postulates {
        let check = |instance: Instance, found: &mut Vec<Witness>| -> Result<()> {
            if let Some(w) = check_postulate(id, op, &instance)? {
                found.push(w);
            }
            Ok(())
        };
        let (checked, witnesses) = match id {
            PostulateId::IC0 | PostulateId::IC1 | PostulateId::IC2 => {
                run_outer(profiles.len(), space.limit, |i, found| {
                    for mu in constraints {
                        check(
                            Instance::Single {
                                profile: profiles[i].clone(),
                                mu: mu.clone(),
                            },
                            found,
                        )?;
                    }
                    Ok(constraints.len() as u64)
                })?
            }
            PostulateId::IC3 => run_outer(profiles.len(), space.limit, |i, found| {
                let mut rev = profiles[i].bases().to_vec();
                rev.reverse();
                let e2 = Profile::new(rev)?;
                for mu in constraints {
                    check(
                        Instance::Equivalent {
                            e1: profiles[i].clone(),
                            mu1: mu.clone(),
                            e2: e2.clone(),
                            mu2: mu.clone(),
                        },
                        found,
                    )?;
                }
                Ok(constraints.len() as u64)
            })?,
            PostulateId::IC4 => run_outer(bases.len(), space.limit, |i, found| {
                let mut n = 0;
                for k2 in &bases[i..] {
                    for mu in constraints {
                        n += 1;
                        check(
                            Instance::Pair {
                                k1: bases[i].clone(),
                                k2: k2.clone(),
                                mu: mu.clone(),
                            },
                            found,
                        )?;
                    }
                }
                Ok(n)
            })?,
            PostulateId::IC5 | PostulateId::IC6 => run_outer(profiles.len(), space.limit, |i, found| {
                let mut n = 0;
                for e2 in &profiles[i..] {
                    for mu in constraints {
                        n += 1;
                        check(
                            Instance::TwoProfiles {
                                e1: profiles[i].clone(),
                                e2: e2.clone(),
                                mu: mu.clone(),
                            },
                            found,
                        )?;
                    }
                }
                Ok(n)
            })?,
            PostulateId::IC7 | PostulateId::IC8 => run_outer(profiles.len(), space.limit, |i, found| {
                for mu1 in constraints {
                    for mu2 in constraints {
                        check(
                            Instance::TwoConstraints {
                                profile: profiles[i].clone(),
                                mu1: mu1.clone(),
                                mu2: mu2.clone(),
                            },
                            found,
                        )?;
                    }
                }
                Ok((constraints.len() * constraints.len()) as u64)
            })?,
        };
        outcomes.push(PostulateOutcome {
            postulate: id,
            checked,
            witnesses,
        });
    }
    Ok(SearchReport {
        operator: op.label(),
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::{BooleanFn, Universe};
    use crate::merge::{Aggregator, CountingDistance, DistanceOperator};
    use crate::refine::{RefinedOperator, RefinementKind};

    fn set(u: &Universe, lists: &[&[&str]]) -> ModelSet {
        ModelSet::from_atom_lists(u, lists).unwrap()
    }

    #[test]
    fn postulate_ids_parse() {
        assert_eq!(PostulateId::parse_list("ic4").unwrap(), vec![PostulateId::IC4]);
        assert_eq!(PostulateId::parse_list("IC0-ic3").unwrap().len(), 4);
        assert_eq!(
            PostulateId::parse_list("ic7,ic5,ic5").unwrap(),
            vec![PostulateId::IC5, PostulateId::IC7]
        );
        assert_eq!(PostulateId::parse_list("all").unwrap().len(), 9);
        for bad in ["ic9", "x", "", "ic3-ic1", "ic"] {
            assert!(PostulateId::parse_list(bad).is_err(), "{bad}");
        }
        assert_eq!(PostulateId::IC4.to_string(), "IC4");
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let u = Universe::new(["a"]).unwrap();
        let mu = ModelSet::full(&u, 16).unwrap();
        let profile = Profile::from_model_sets([mu.clone()]).unwrap();
        let op = DistanceOperator::new(CountingDistance::Hamming, Aggregator::Sum);
        let err = check_postulate(PostulateId::IC5, &op, &Instance::Single { profile, mu }).unwrap_err();
        assert!(matches!(
            err,
            Error::ShapeMismatch {
                postulate: PostulateId::IC5,
                ..
            }
        ));
    }

    #[test]
    fn gmax_closure_breaks_ic4_on_two_bases() {
        let u = Universe::new(["a", "b"]).unwrap();
        let op = RefinedOperator::new(
            DistanceOperator::new(CountingDistance::Hamming, Aggregator::GMax),
            RefinementKind::closure(BooleanFn::and()),
        );
        let inst = Instance::Pair {
            k1: set(&u, &[&[]]),
            k2: set(&u, &[&["a", "b"]]),
            mu: ModelSet::full(&u, 16).unwrap(),
        };
        let w = check_postulate(PostulateId::IC4, &op, &inst).unwrap().unwrap();
        assert_eq!(w.outputs[0].1, set(&u, &[&[], &["a"], &["b"]]));
        assert!(w.reproduces(&op).unwrap());
        assert!(w.render().starts_with("IC4 violated on K1=[{}] K2=[{a,b}]"));
    }

    #[test]
    fn unrefined_hamming_operators_satisfy_everything_on_small_spaces() {
        for agg in [Aggregator::Sum, Aggregator::GMax] {
            let op = DistanceOperator::new(CountingDistance::Hamming, agg);
            let report = search(&SearchSpace::new(2, None), &op).unwrap();
            assert_eq!(report.witness_count(), 0, "{agg}");
        }
    }

    #[test]
    fn search_counts_match_instance_formula() {
        let space = SearchSpace::new(2, Some(Fragment::horn()));
        let op = DistanceOperator::new(CountingDistance::Hamming, Aggregator::Sum);
        let report = search(&space, &op).unwrap();
        // 104 profiles, 14 constraints, 13 bases
        let expect = [
            1456,
            1456,
            1456,
            1456,
            91 * 14,
            5460 * 14,
            5460 * 14,
            104 * 196,
            104 * 196,
        ];
        for (o, e) in report.outcomes.iter().zip(expect) {
            assert_eq!(o.checked, e, "{}", o.postulate);
        }
    }

    #[test]
    fn oversized_spaces_are_refused() {
        let op = DistanceOperator::new(CountingDistance::Hamming, Aggregator::Sum);
        let space = SearchSpace::new(4, None).with_max_profile(3);
        assert!(matches!(search(&space, &op), Err(Error::SpaceTooLarge(_))));
    }
}
