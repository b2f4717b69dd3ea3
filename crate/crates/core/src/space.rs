//! Exhaustive enumeration of small fragment instances: closed model sets,
//! bases, constraints, and profiles over a universe of at most four atoms.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::interp::{is_closed, BooleanFn, Fragment, ModelSet, Universe};
use crate::merge::Profile;

/// Exhaustive spaces enumerate subsets of `2^U`, i.e. `2^(2^n)` candidates.
pub const MAX_EXHAUSTIVE_ATOMS: usize = 4;

type CacheKey = (usize, Option<Vec<bool>>);
type Cache = Mutex<HashMap<CacheKey, Arc<Vec<Vec<u32>>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Every subset of `2^U` closed under `beta` (every subset when `beta` is
/// `None`), including the empty set, ordered by size then members.
/// Computed once per (atom count, function) and cached.
pub fn closed_sets(atoms: usize, beta: Option<&BooleanFn>) -> Result<Arc<Vec<Vec<u32>>>> {
    if atoms == 0 || atoms > MAX_EXHAUSTIVE_ATOMS {
        return Err(Error::SpaceTooLarge(format!(
            "exhaustive enumeration supports 1..={MAX_EXHAUSTIVE_ATOMS} atoms, got {atoms}"
        )));
    }
    let key = (atoms, beta.map(|b| b.table().to_vec()));
    if let Some(hit) = cache().lock().expect("cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let universe = Universe::letters(atoms)?;
    let points = 1usize << atoms;
    let mut sets: Vec<Vec<u32>> = (0u64..(1u64 << points))
        .map(|mask| {
            (0..points as u32)
                .filter(|p| mask & (1 << p) != 0)
                .collect::<Vec<u32>>()
        })
        .filter(|members| match beta {
            None => true,
            Some(b) => is_closed(b, &ModelSet::from_sorted_unchecked(&universe, members.clone())),
        })
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let sets = Arc::new(sets);
    cache().lock().expect("cache poisoned").insert(key, sets.clone());
    Ok(sets)
}

/// Bounded instance space: a universe of `atoms` letters, bases drawn from the
/// non-empty fragment sets, constraints from all fragment sets (including the
/// empty one), and profiles of `1..=max_profile` bases.
#[derive(Debug, Clone)]
pub struct InstanceSpace {
    universe: Universe,
    fragment: Option<Fragment>,
    max_profile: usize,
    bases: Vec<ModelSet>,
    constraints: Vec<ModelSet>,
}

impl InstanceSpace {
    pub fn new(atoms: usize, fragment: Option<Fragment>, max_profile: usize) -> Result<Self> {
        if max_profile == 0 {
            return Err(Error::SpaceTooLarge("profiles need at least one base".into()));
        }
        let universe = Universe::letters(atoms)?;
        let raw = closed_sets(atoms, fragment.as_ref().map(Fragment::beta))?;
        let constraints: Vec<ModelSet> = raw
            .iter()
            .map(|m| ModelSet::from_sorted_unchecked(&universe, m.clone()))
            .collect();
        let bases = constraints.iter().filter(|m| !m.is_empty()).cloned().collect();
        Ok(InstanceSpace {
            universe,
            fragment,
            max_profile,
            bases,
            constraints,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn fragment(&self) -> Option<&Fragment> {
        self.fragment.as_ref()
    }

    pub fn max_profile(&self) -> usize {
        self.max_profile
    }

    pub fn bases(&self) -> &[ModelSet] {
        &self.bases
    }

    pub fn constraints(&self) -> &[ModelSet] {
        &self.constraints
    }

    /// Number of profiles without building them.
    pub fn profile_count(&self) -> u128 {
        let b = self.bases.len() as u128;
        // multisets of size s from b kinds: C(b + s - 1, s)
        (1..=self.max_profile as u128)
            .map(|s| {
                let mut c: u128 = 1;
                for i in 0..s {
                    c = c * (b + i) / (i + 1);
                }
                c
            })
            .sum()
    }

    /// Base index multisets, as non-decreasing index vectors, by size.
    pub fn profile_indices(&self) -> Vec<Vec<usize>> {
        let b = self.bases.len();
        let mut out = Vec::new();
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..self.max_profile {
            let mut next = Vec::new();
            for prefix in &layer {
                let start = prefix.last().copied().unwrap_or(0);
                for i in start..b {
                    let mut p = prefix.clone();
                    p.push(i);
                    next.push(p);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    pub fn profile_from_indices(&self, idx: &[usize]) -> Profile {
        Profile::from_model_sets(idx.iter().map(|&i| self.bases[i].clone()))
            .expect("space bases are consistent")
    }

    /// Every profile in deterministic order.
    pub fn profiles(&self) -> Vec<Profile> {
        self.profile_indices()
            .iter()
            .map(|idx| self.profile_from_indices(idx))
            .collect()
    }
}
