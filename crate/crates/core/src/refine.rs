//! Refinements of merge operators into a β-fragment: closure, lex, lex/closure,
//! and user-supplied β-mappings, plus checkers for the refinement properties
//! and fairness over exhaustive instance spaces.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::interp::{closure, is_closed, BooleanFn, ModelSet, Universe};
use crate::merge::{MergeOperator, Profile};
use crate::space::{closed_sets, InstanceSpace};

/// Total order on interpretations used by the lex refinements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum LexOrder {
    /// Ascending bit-pattern value: over `(a, b)`, `{} < {a} < {b} < {a,b}`.
    #[default]
    Natural,
    /// The listed interpretations come first, in list order; the rest follow
    /// in natural order.
    Explicit(Vec<u32>),
}

impl LexOrder {
    fn rank(&self, bits: u32) -> (usize, u32) {
        match self {
            LexOrder::Natural => (0, bits),
            LexOrder::Explicit(list) => match list.iter().position(|&b| b == bits) {
                Some(i) => (0, i as u32),
                None => (1, bits),
            },
        }
    }

    /// Minimum of a set under this order.
    pub fn min_bits(&self, set: &ModelSet) -> Option<u32> {
        set.bits().iter().copied().min_by_key(|&b| self.rank(b))
    }

    /// Parses a whitespace-separated list of interpretations such as `{b} {} {a}`.
    pub fn parse(universe: &Universe, text: &str) -> Result<LexOrder> {
        let mut list = Vec::new();
        for tok in text.split_whitespace() {
            let bits = universe.parse_bits(tok)?;
            if !list.contains(&bits) {
                list.push(bits);
            }
        }
        Ok(LexOrder::Explicit(list))
    }
}

/// The four conditions a β-mapping must meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MappingProperty {
    /// `f(M, X)` is closed under β.
    ClosedOutput,
    /// `f(M, X) ⊆ Cl_β(M)`.
    WithinClosure,
    /// `f(M, X) = M` when `M` is closed.
    FixesClosedInput,
    /// `f(M, X)` is non-empty when `M` is.
    NonEmptyOnNonEmpty,
}

impl MappingProperty {
    pub const ALL: [MappingProperty; 4] = [
        MappingProperty::ClosedOutput,
        MappingProperty::WithinClosure,
        MappingProperty::FixesClosedInput,
        MappingProperty::NonEmptyOnNonEmpty,
    ];
}

impl fmt::Display for MappingProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MappingProperty::ClosedOutput => "closed output",
            MappingProperty::WithinClosure => "containment in the closure",
            MappingProperty::FixesClosedInput => "identity on closed input",
            MappingProperty::NonEmptyOnNonEmpty => "non-emptiness",
        })
    }
}

/// A function `f(M, X)` from a merge result and the profile's model sets to
/// a β-closed model set. Implementations must be pure.
pub trait BetaMapping: Send + Sync {
    fn beta(&self) -> &BooleanFn;
    fn map(&self, m: &ModelSet, x: &[ModelSet]) -> ModelSet;
    fn label(&self) -> String;
}

/// Wraps a closure as a [`BetaMapping`].
pub struct FnMapping<F> {
    beta: BooleanFn,
    label: String,
    f: F,
}

impl<F> FnMapping<F>
where
    F: Fn(&ModelSet, &[ModelSet]) -> ModelSet + Send + Sync,
{
    pub fn new(beta: BooleanFn, label: impl Into<String>, f: F) -> Self {
        FnMapping {
            beta,
            label: label.into(),
            f,
        }
    }
}

impl<F> BetaMapping for FnMapping<F>
where
    F: Fn(&ModelSet, &[ModelSet]) -> ModelSet + Send + Sync,
{
    fn beta(&self) -> &BooleanFn {
        &self.beta
    }

    fn map(&self, m: &ModelSet, x: &[ModelSet]) -> ModelSet {
        (self.f)(m, x)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// Number of bases in `profile` sharing a model with `m`.
pub fn cardintersection(m: &ModelSet, profile: &Profile) -> Result<usize> {
    profile.universe().ensure_same(m.universe())?;
    Ok(profile
        .bases()
        .iter()
        .filter(|b| b.models().intersects(m))
        .count())
}

fn count_in(m: &ModelSet, x: &[ModelSet]) -> usize {
    x.iter().filter(|k| k.intersects(m)).count()
}

fn lex_result(order: &LexOrder, beta: &BooleanFn, m: &ModelSet) -> ModelSet {
    if is_closed(beta, m) {
        return m.clone();
    }
    let min = order.min_bits(m).expect("a non-closed set is non-empty");
    ModelSet::from_sorted_unchecked(m.universe(), vec![min])
}

fn lex_closure_result(order: &LexOrder, beta: &BooleanFn, m: &ModelSet, x: &[ModelSet]) -> ModelSet {
    if count_in(m, x) == 0 {
        lex_result(order, beta, m)
    } else {
        closure(beta, m)
    }
}

/// How a merge result is moved into the fragment.
#[derive(Clone)]
pub enum RefinementKind {
    Closure(BooleanFn),
    Lex { order: LexOrder, beta: BooleanFn },
    LexClosure { order: LexOrder, beta: BooleanFn },
    Custom(Arc<dyn BetaMapping>),
}

impl RefinementKind {
    pub fn closure(beta: BooleanFn) -> Self {
        RefinementKind::Closure(beta)
    }

    pub fn lex(beta: BooleanFn) -> Self {
        RefinementKind::Lex {
            order: LexOrder::Natural,
            beta,
        }
    }

    pub fn lex_closure(beta: BooleanFn) -> Self {
        RefinementKind::LexClosure {
            order: LexOrder::Natural,
            beta,
        }
    }

    pub fn beta(&self) -> &BooleanFn {
        match self {
            RefinementKind::Closure(b) => b,
            RefinementKind::Lex { beta, .. } | RefinementKind::LexClosure { beta, .. } => beta,
            RefinementKind::Custom(m) => m.beta(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            RefinementKind::Closure(_) => "closure".into(),
            RefinementKind::Lex { .. } => "lex".into(),
            RefinementKind::LexClosure { .. } => "lex-closure".into(),
            RefinementKind::Custom(m) => m.label(),
        }
    }

    /// The mapping view `f(M, X)` of this refinement. Custom mappings are
    /// called as-is, without validation.
    pub fn map(&self, m: &ModelSet, x: &[ModelSet]) -> ModelSet {
        match self {
            RefinementKind::Closure(beta) => closure(beta, m),
            RefinementKind::Lex { order, beta } => lex_result(order, beta, m),
            RefinementKind::LexClosure { order, beta } => lex_closure_result(order, beta, m, x),
            RefinementKind::Custom(f) => f.map(m, x),
        }
    }
}

impl fmt::Debug for RefinementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RefinementKind::Closure(b) => write!(f, "Closure({b})"),
            RefinementKind::Lex { order, beta } => write!(f, "Lex({order:?}, {beta})"),
            RefinementKind::LexClosure { order, beta } => {
                write!(f, "LexClosure({order:?}, {beta})")
            }
            RefinementKind::Custom(m) => write!(f, "Custom({})", m.label()),
        }
    }
}

/// Checks one `(M, X, f(M, X))` triple against the mapping conditions.
pub fn mapping_violation(
    beta: &BooleanFn,
    m: &ModelSet,
    out: &ModelSet,
) -> Option<(MappingProperty, String)> {
    if out.universe() != m.universe() {
        return Some((
            MappingProperty::WithinClosure,
            "output uses a different universe".into(),
        ));
    }
    if !is_closed(beta, out) {
        return Some((
            MappingProperty::ClosedOutput,
            format!("f({m}) = {out} is not closed under {beta}"),
        ));
    }
    let cl = closure(beta, m);
    if !out.is_subset(&cl) {
        return Some((
            MappingProperty::WithinClosure,
            format!("f({m}) = {out} leaves the closure {cl}"),
        ));
    }
    if cl == *m && out != m {
        return Some((
            MappingProperty::FixesClosedInput,
            format!("{m} is closed but f maps it to {out}"),
        ));
    }
    if !m.is_empty() && out.is_empty() {
        return Some((MappingProperty::NonEmptyOnNonEmpty, format!("f({m}) is empty")));
    }
    None
}

/// Refines an unrefined merge output `delta_out` of `(profile, mu)`.
pub fn refine(
    kind: &RefinementKind,
    delta_out: &ModelSet,
    profile: &Profile,
    mu: &ModelSet,
) -> Result<ModelSet> {
    profile.universe().ensure_same(delta_out.universe())?;
    mu.universe().ensure_same(delta_out.universe())?;
    if !delta_out.is_subset(mu) {
        return Err(Error::NotContainedInConstraint);
    }
    let x: Vec<ModelSet> = profile.model_multiset();
    let out = kind.map(delta_out, &x);
    if let RefinementKind::Custom(f) = kind {
        if let Some((property, detail)) = mapping_violation(f.beta(), delta_out, &out) {
            return Err(Error::MappingViolation { property, detail });
        }
    }
    Ok(out)
}

/// `Δ*`: a base operator followed by a refinement.
#[derive(Clone)]
pub struct RefinedOperator {
    pub base: Arc<dyn MergeOperator>,
    pub kind: RefinementKind,
}

impl RefinedOperator {
    pub fn new<O: MergeOperator + 'static>(base: O, kind: RefinementKind) -> Self {
        RefinedOperator {
            base: Arc::new(base),
            kind,
        }
    }
}

impl MergeOperator for RefinedOperator {
    fn apply(&self, profile: &Profile, mu: &ModelSet) -> Result<ModelSet> {
        let m = self.base.apply(profile, mu)?;
        refine(&self.kind, &m, profile, mu)
    }

    fn label(&self) -> String {
        format!("{},{}", self.base.label(), self.kind.label())
    }
}

/// First `(M, X)` input violating one mapping condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingFinding {
    pub property: MappingProperty,
    pub m: ModelSet,
    pub x: Vec<ModelSet>,
    pub output: ModelSet,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MappingReport {
    pub checked: usize,
    pub findings: Vec<MappingFinding>,
}

impl MappingReport {
    pub fn passes(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn violates(&self, p: MappingProperty) -> bool {
        self.findings.iter().any(|f| f.property == p)
    }
}

/// Largest universe [`validate_mapping`] enumerates (every `M ⊆ 2^U`).
pub const MAX_MAPPING_ATOMS: usize = 3;

/// Runs `f` on every `M ⊆ 2^U` paired with every profile of up to
/// `max_profile` non-empty closed sets, keeping the first witness per
/// violated condition.
pub fn validate_mapping(f: &dyn BetaMapping, atoms: usize, max_profile: usize) -> Result<MappingReport> {
    if atoms > MAX_MAPPING_ATOMS {
        return Err(Error::SpaceTooLarge(format!(
            "mapping validation supports at most {MAX_MAPPING_ATOMS} atoms, got {atoms}"
        )));
    }
    let space = InstanceSpace::new(
        atoms,
        Some(crate::interp::Fragment::from_beta(f.beta().clone())),
        max_profile,
    )?;
    let universe = space.universe().clone();
    let all = closed_sets(atoms, None)?;
    let profiles: Vec<Vec<ModelSet>> = space
        .profile_indices()
        .iter()
        .map(|idx| idx.iter().map(|&i| space.bases()[i].clone()).collect())
        .collect();
    let mut report = MappingReport::default();
    for members in all.iter() {
        let m = ModelSet::from_sorted_unchecked(&universe, members.clone());
        for x in &profiles {
            report.checked += 1;
            let out = f.map(&m, x);
            if let Some((property, detail)) = mapping_violation(f.beta(), &m, &out) {
                if !report.findings.iter().any(|g| g.property == property) {
                    report.findings.push(MappingFinding {
                        property,
                        m: m.clone(),
                        x: x.clone(),
                        output: out,
                        detail,
                    });
                }
            }
        }
    }
    report.findings.sort_by_key(|f| f.property);
    Ok(report)
}

/// Conditions relating a refinement to its base operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RefinementProperty {
    /// The refined output is closed under β.
    InFragment,
    /// Base and refined outputs are empty together.
    Consistency,
    /// Equivalent profiles with equal base outputs give equal refined outputs.
    Equivalence,
    /// The refined output lies inside the closure of the base output.
    Containment,
    /// A closed base output is kept whole.
    Invariance,
}

impl fmt::Display for RefinementProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RefinementProperty::InFragment => "in-fragment",
            RefinementProperty::Consistency => "consistency",
            RefinementProperty::Equivalence => "equivalence",
            RefinementProperty::Containment => "containment",
            RefinementProperty::Invariance => "invariance",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementFinding {
    pub property: RefinementProperty,
    pub profile: Profile,
    pub mu: ModelSet,
    pub base_out: ModelSet,
    pub refined_out: ModelSet,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RefinementReport {
    pub instances: usize,
    pub findings: Vec<RefinementFinding>,
}

impl RefinementReport {
    pub fn passes(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn violates(&self, p: RefinementProperty) -> bool {
        self.findings.iter().any(|f| f.property == p)
    }
}

/// Presentations of one profile that must be treated alike: as given, with
/// the base order reversed, and with every formula-backed base's source
/// duplicated.
fn presentations(profile: &Profile) -> Result<Vec<Profile>> {
    use crate::merge::Base;
    let mut out = vec![profile.clone()];
    if profile.len() > 1 {
        let mut rev: Vec<Base> = profile.bases().to_vec();
        rev.reverse();
        out.push(Profile::new(rev)?);
    }
    let doubled: Vec<Base> = profile
        .bases()
        .iter()
        .map(|b| {
            let mut src = b.source().to_vec();
            src.extend(b.source().iter().cloned());
            Base::with_source(b.models().clone(), src)
        })
        .collect::<Result<_>>()?;
    out.push(Profile::new(doubled)?);
    Ok(out)
}

/// Checks a refined operator against its base operator on every instance of
/// `space`, keeping the first witness per violated property.
pub fn check_refinement_properties(
    base_op: &dyn MergeOperator,
    refined_op: &dyn MergeOperator,
    beta: &BooleanFn,
    space: &InstanceSpace,
) -> Result<RefinementReport> {
    let mut report = RefinementReport::default();
    // (profile multiset, base output) -> first refined output seen
    let mut groups: HashMap<(Vec<ModelSet>, ModelSet), ModelSet> = HashMap::new();
    let record = |report: &mut RefinementReport, f: RefinementFinding| {
        if !report.violates(f.property) {
            report.findings.push(f);
        }
    };
    for profile in space.profiles() {
        let variants = presentations(&profile)?;
        for mu in space.constraints() {
            for p in &variants {
                report.instances += 1;
                let base_out = base_op.apply(p, mu)?;
                let refined_out = refined_op.apply(p, mu)?;
                let finding = |property, detail: String| RefinementFinding {
                    property,
                    profile: p.clone(),
                    mu: mu.clone(),
                    base_out: base_out.clone(),
                    refined_out: refined_out.clone(),
                    detail,
                };
                if !is_closed(beta, &refined_out) {
                    record(
                        &mut report,
                        finding(
                            RefinementProperty::InFragment,
                            "refined output is not closed".into(),
                        ),
                    );
                }
                if base_out.is_empty() != refined_out.is_empty() {
                    record(
                        &mut report,
                        finding(
                            RefinementProperty::Consistency,
                            "exactly one output is empty".into(),
                        ),
                    );
                }
                let cl_base = closure(beta, &base_out);
                if !refined_out.is_subset(&cl_base) {
                    record(
                        &mut report,
                        finding(
                            RefinementProperty::Containment,
                            format!("refined output leaves the closure {cl_base}"),
                        ),
                    );
                }
                if cl_base == base_out && !base_out.is_subset(&closure(beta, &refined_out)) {
                    record(
                        &mut report,
                        finding(
                            RefinementProperty::Invariance,
                            "closed base output was not kept".into(),
                        ),
                    );
                }
                let key = (p.model_multiset(), base_out.clone());
                match groups.get(&key) {
                    Some(prev) if *prev != refined_out => record(
                        &mut report,
                        finding(
                            RefinementProperty::Equivalence,
                            format!("an equivalent instance with the same base output refined to {prev}"),
                        ),
                    ),
                    Some(_) => {}
                    None => {
                        groups.insert(key, refined_out.clone());
                    }
                }
            }
        }
    }
    report.findings.sort_by_key(|f| f.property);
    Ok(report)
}

/// An instance where the base output meets a number of bases other than one
/// but the refined output meets exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairnessViolation {
    pub profile: Profile,
    pub mu: ModelSet,
    pub base_out: ModelSet,
    pub refined_out: ModelSet,
    pub base_count: usize,
    pub refined_count: usize,
}

/// Fairness on one instance.
pub fn fairness_violation(
    base_op: &dyn MergeOperator,
    refined_op: &dyn MergeOperator,
    profile: &Profile,
    mu: &ModelSet,
) -> Result<Option<FairnessViolation>> {
    let base_out = base_op.apply(profile, mu)?;
    let refined_out = refined_op.apply(profile, mu)?;
    let base_count = cardintersection(&base_out, profile)?;
    let refined_count = cardintersection(&refined_out, profile)?;
    Ok(
        (base_count != 1 && refined_count == 1).then(|| FairnessViolation {
            profile: profile.clone(),
            mu: mu.clone(),
            base_out,
            refined_out,
            base_count,
            refined_count,
        }),
    )
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FairnessReport {
    pub checked: usize,
    pub violations: Vec<FairnessViolation>,
}

impl FairnessReport {
    pub fn is_fair(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Fairness over every instance of `space`.
pub fn is_fair(
    base_op: &dyn MergeOperator,
    refined_op: &dyn MergeOperator,
    space: &InstanceSpace,
) -> Result<FairnessReport> {
    let mut report = FairnessReport::default();
    for profile in space.profiles() {
        for mu in space.constraints() {
            report.checked += 1;
            if let Some(v) = fairness_violation(base_op, refined_op, &profile, mu)? {
                report.violations.push(v);
            }
        }
    }
    Ok(report)
}
