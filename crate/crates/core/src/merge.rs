//! Counting distances, Σ/GMax aggregation, and the model-based merge
//! operator: keep the models of the constraint that are closest to the
//! profile.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{models, Formula};
use crate::interp::{Interpretation, ModelSet, Universe};

/// `d(w, w') = g(|w xor w'|)` for a nondecreasing `g` with `g(n) = 0` iff `n = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CountingDistance {
    /// `g(n) = n`.
    Hamming,
    /// `g(n) = 1` for `n > 0`.
    Drastic,
    /// `g(n) = table[n-1]` for `n >= 1`; values past the end repeat the last entry.
    Table(Vec<u64>),
}

impl CountingDistance {
    /// Table distance from `g(1), g(2), ...`; `g(0) = 0` is implied.
    pub fn table(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidDistance("table needs at least g(1)".into()));
        }
        if values[0] == 0 {
            return Err(Error::InvalidDistance("g(n) must be positive for n > 0".into()));
        }
        if let Some(w) = values.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::InvalidDistance(format!(
                "g must be nondecreasing, but g({}) = {} > g({}) = {}",
                w + 1,
                values[w],
                w + 2,
                values[w + 1]
            )));
        }
        Ok(CountingDistance::Table(values))
    }

    pub fn g(&self, n: u32) -> u64 {
        if n == 0 {
            return 0;
        }
        match self {
            CountingDistance::Hamming => n as u64,
            CountingDistance::Drastic => 1,
            CountingDistance::Table(t) => t[(n as usize - 1).min(t.len() - 1)],
        }
    }

    pub(crate) fn between_bits(&self, w: u32, v: u32) -> u64 {
        self.g((w ^ v).count_ones())
    }

    pub fn between(&self, w: &Interpretation, v: &Interpretation) -> Result<u64> {
        w.universe().ensure_same(v.universe())?;
        Ok(self.between_bits(w.bits(), v.bits()))
    }

    /// Minimum distance from `w` to a model of `base`.
    pub fn to_base(&self, w: &Interpretation, base: &Base) -> Result<u64> {
        w.universe().ensure_same(base.models.universe())?;
        Ok(self.to_models_bits(w.bits(), &base.models))
    }

    pub(crate) fn to_models_bits(&self, w: u32, set: &ModelSet) -> u64 {
        set.bits()
            .iter()
            .map(|&v| self.between_bits(w, v))
            .min()
            .unwrap_or(u64::MAX)
    }

    /// Whether `d(x, y) <= d(x, z) + d(z, y)` holds over `n` atoms.
    ///
    /// With `|x xor z| = i` and `|z xor y| = j`, `|x xor y|` can reach
    /// `min(i + j, 2n - i - j)`; `g` is nondecreasing so only that bound matters.
    pub fn satisfies_triangle_inequality(&self, n: u32) -> bool {
        (0..=n).all(|i| {
            (0..=n).all(|j| {
                let reach = (i + j).min(2 * n - i - j);
                self.g(reach) <= self.g(i) + self.g(j)
            })
        })
    }
}

impl fmt::Display for CountingDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountingDistance::Hamming => f.write_str("hamming"),
            CountingDistance::Drastic => f.write_str("drastic"),
            CountingDistance::Table(t) => {
                let parts: Vec<String> = t.iter().map(u64::to_string).collect();
                write!(f, "table:{}", parts.join(","))
            }
        }
    }
}

pub fn dist_interp(d: &CountingDistance, w: &Interpretation, v: &Interpretation) -> Result<u64> {
    d.between(w, v)
}

pub fn dist_base(d: &CountingDistance, w: &Interpretation, base: &Base) -> Result<u64> {
    d.to_base(w, base)
}

/// A consistent belief base: its models and, optionally, the formulas it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Base {
    models: ModelSet,
    source: Vec<Formula>,
}

impl Base {
    pub fn new(models: ModelSet) -> Result<Self> {
        Base::with_source(models, Vec::new())
    }

    pub fn with_source(models: ModelSet, source: Vec<Formula>) -> Result<Self> {
        if models.is_empty() {
            return Err(Error::InconsistentBase(render_source(&source, models.universe())));
        }
        Ok(Base { models, source })
    }

    /// Base given by formulas; its models are those of their conjunction.
    pub fn from_formulas(universe: &Universe, source: Vec<Formula>) -> Result<Self> {
        let conj = Formula::conjunction(source.iter().cloned());
        let m = models(&conj, universe)?;
        Base::with_source(m, source)
    }

    pub fn models(&self) -> &ModelSet {
        &self.models
    }

    pub fn source(&self) -> &[Formula] {
        &self.source
    }

    pub fn universe(&self) -> &Universe {
        self.models.universe()
    }
}

fn render_source(source: &[Formula], u: &Universe) -> String {
    if source.is_empty() {
        return "(model list)".into();
    }
    source
        .iter()
        .map(|f| f.display(u).to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Non-empty multiset of bases over one universe. Order is kept but carries
/// no meaning for the merge operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    universe: Universe,
    bases: Vec<Base>,
}

impl Profile {
    pub fn new(bases: Vec<Base>) -> Result<Self> {
        let first = bases.first().ok_or(Error::EmptyProfile)?;
        let universe = first.universe().clone();
        for b in &bases[1..] {
            universe.ensure_same(b.universe())?;
        }
        Ok(Profile { universe, bases })
    }

    /// Profile of model-list bases.
    pub fn from_model_sets<I: IntoIterator<Item = ModelSet>>(sets: I) -> Result<Self> {
        Profile::new(sets.into_iter().map(Base::new).collect::<Result<_>>()?)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn bases(&self) -> &[Base] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// Multiset union.
    pub fn join(&self, other: &Profile) -> Result<Profile> {
        self.universe.ensure_same(&other.universe)?;
        let mut bases = self.bases.clone();
        bases.extend(other.bases.iter().cloned());
        Ok(Profile {
            universe: self.universe.clone(),
            bases,
        })
    }

    /// Model sets of the bases, sorted, so equal multisets compare equal.
    pub fn model_multiset(&self) -> Vec<ModelSet> {
        let mut v: Vec<ModelSet> = self.bases.iter().map(|b| b.models.clone()).collect();
        v.sort_by(|a, b| a.bits().cmp(b.bits()));
        v
    }

    /// Whether both profiles have the same multiset of model sets.
    pub fn equivalent(&self, other: &Profile) -> bool {
        self.universe == other.universe && self.model_multiset() == other.model_multiset()
    }

    /// Models shared by every base.
    pub fn conjunction(&self) -> ModelSet {
        let mut acc = self.bases[0].models.clone();
        for b in &self.bases[1..] {
            acc = acc
                .intersection(&b.models)
                .expect("profile bases share a universe");
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Aggregator {
    Sum,
    GMax,
}

impl fmt::Display for Aggregator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aggregator::Sum => "sigma",
            Aggregator::GMax => "gmax",
        })
    }
}

/// Aggregated distance. Values of different shapes are incomparable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AggValue {
    Scalar(u64),
    /// Distances sorted in non-increasing order, compared lexicographically.
    DescVector(Vec<u64>),
}

impl PartialOrd for AggValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (AggValue::Scalar(a), AggValue::Scalar(b)) => Some(a.cmp(b)),
            (AggValue::DescVector(a), AggValue::DescVector(b)) if a.len() == b.len() => Some(a.cmp(b)),
            _ => None,
        }
    }
}

impl fmt::Display for AggValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AggValue::Scalar(v) => write!(f, "{v}"),
            AggValue::DescVector(v) => {
                let parts: Vec<String> = v.iter().map(u64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

pub fn aggregate(f: Aggregator, dists: &[u64]) -> Result<AggValue> {
    if dists.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(match f {
        Aggregator::Sum => AggValue::Scalar(dists.iter().sum()),
        Aggregator::GMax => {
            let mut v = dists.to_vec();
            v.sort_unstable_by(|a, b| b.cmp(a));
            AggValue::DescVector(v)
        }
    })
}

/// One row of a distance table: per-base distances and their aggregate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreRow {
    pub interpretation: Interpretation,
    pub distances: Vec<u64>,
    pub score: AggValue,
}

/// Scores every model of `mu` against the profile.
pub fn score_table(
    profile: &Profile,
    mu: &ModelSet,
    d: &CountingDistance,
    f: Aggregator,
) -> Result<Vec<ScoreRow>> {
    profile.universe.ensure_same(mu.universe())?;
    mu.iter()
        .map(|w| {
            let distances: Vec<u64> = profile
                .bases
                .iter()
                .map(|b| d.to_models_bits(w.bits(), &b.models))
                .collect();
            let score = aggregate(f, &distances)?;
            Ok(ScoreRow {
                interpretation: w,
                distances,
                score,
            })
        })
        .collect()
}

/// Models of `mu` with minimal aggregated distance to `profile`; all ties kept.
/// An empty `mu` gives an empty result.
pub fn merge(profile: &Profile, mu: &ModelSet, d: &CountingDistance, f: Aggregator) -> Result<ModelSet> {
    let rows = score_table(profile, mu, d, f)?;
    let Some(best) = rows
        .iter()
        .map(|r| &r.score)
        .min_by(|a, b| a.partial_cmp(b).expect("scores from one profile share a shape"))
    else {
        return Ok(ModelSet::empty(mu.universe()));
    };
    let members: Vec<u32> = rows
        .iter()
        .filter(|r| r.score == *best)
        .map(|r| r.interpretation.bits())
        .collect();
    ModelSet::from_bits(mu.universe(), members)
}

/// A merging operator `(E, mu) -> models of the result`.
pub trait MergeOperator: Send + Sync {
    fn apply(&self, profile: &Profile, mu: &ModelSet) -> Result<ModelSet>;
    fn label(&self) -> String;
}

/// The operator `Δ^{d,f}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceOperator {
    pub distance: CountingDistance,
    pub aggregator: Aggregator,
}

impl DistanceOperator {
    pub fn new(distance: CountingDistance, aggregator: Aggregator) -> Self {
        DistanceOperator { distance, aggregator }
    }
}

impl MergeOperator for DistanceOperator {
    fn apply(&self, profile: &Profile, mu: &ModelSet) -> Result<ModelSet> {
        merge(profile, mu, &self.distance, self.aggregator)
    }

    fn label(&self) -> String {
        format!("{},{}", self.distance, self.aggregator)
    }
}

impl<T: MergeOperator + ?Sized> MergeOperator for Box<T> {
    fn apply(&self, profile: &Profile, mu: &ModelSet) -> Result<ModelSet> {
        (**self).apply(profile, mu)
    }

    fn label(&self) -> String {
        (**self).label()
    }
}

impl<T: MergeOperator + ?Sized> MergeOperator for std::sync::Arc<T> {
    fn apply(&self, profile: &Profile, mu: &ModelSet) -> Result<ModelSet> {
        (**self).apply(profile, mu)
    }

    fn label(&self) -> String {
        (**self).label()
    }
}
