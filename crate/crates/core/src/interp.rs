//! Interpretations over a fixed atom universe, model sets, and closure of
//! model sets under symmetric 0/1-reproducing Boolean functions.
//!
//! Interpretations are stored as `u32` bit patterns: bit `i` is the truth
//! value of the `i`-th declared atom. Ordering interpretations by that integer
//! gives `{} < {a} < {b} < {a,b}` over `(a, b)`, which is the order used for
//! display and as the default lexicographic order.

use std::collections::HashSet;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard limit on the number of atoms; interpretations are `u32` bit patterns.
pub const MAX_ATOMS: usize = 24;

/// Default limit for anything that enumerates all `2^|U|` interpretations.
pub const DEFAULT_ENUM_CAP: usize = 16;

/// Largest arity accepted for a [`BooleanFn`].
pub const MAX_ARITY: usize = 8;

/// Ordered list of distinct atom names. Cheap to clone.
#[derive(Clone)]
pub struct Universe {
    atoms: Arc<[String]>,
}

impl Universe {
    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::UniverseTooLarge {
                size: atoms.len(),
                cap: MAX_ATOMS,
            });
        }
        let mut seen = HashSet::new();
        for atom in &atoms {
            if !is_atom_name(atom) {
                return Err(Error::InvalidAtomName(atom.clone()));
            }
            if !seen.insert(atom.as_str()) {
                return Err(Error::DuplicateAtom(atom.clone()));
            }
        }
        Ok(Universe { atoms: atoms.into() })
    }

    /// Universe `a, b, c, ...` with the first `n` letters.
    pub fn letters(n: usize) -> Result<Self> {
        if n > 26 {
            return Err(Error::UniverseTooLarge { size: n, cap: 26 });
        }
        Universe::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom(&self, index: usize) -> Option<&str> {
        self.atoms.get(index).map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    /// Number of interpretations, `2^|U|`.
    pub fn interpretation_count(&self) -> u64 {
        1u64 << self.len()
    }

    /// Bit mask with one bit per atom.
    pub fn full_mask(&self) -> u32 {
        if self.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.len()) - 1
        }
    }

    pub fn check_enumerable(&self, cap: usize) -> Result<()> {
        let cap = cap.min(MAX_ATOMS);
        if self.len() > cap {
            Err(Error::UniverseTooLarge {
                size: self.len(),
                cap,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn ensure_same(&self, other: &Universe) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// Renders a bit pattern in set notation, e.g. `{a,c}`.
    pub fn render_bits(&self, bits: u32) -> String {
        let mut out = String::from("{");
        let mut first = true;
        for (i, atom) in self.atoms.iter().enumerate() {
            if bits & (1 << i) != 0 {
                if !first {
                    out.push(',');
                }
                out.push_str(atom);
                first = false;
            }
        }
        out.push('}');
        out
    }

    /// Parses `{a,c}` (whitespace tolerated) into a bit pattern.
    pub fn parse_bits(&self, text: &str) -> Result<u32> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Syntax {
                position: 0,
                message: format!("expected an interpretation like {{a,b}}, got `{t}`"),
            })?;
        let mut bits = 0u32;
        for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let i = self.index_of(name).ok_or_else(|| Error::UnknownAtom {
                name: name.to_string(),
                position: 0,
            })?;
            bits |= 1 << i;
        }
        Ok(bits)
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.atoms, &other.atoms) || self.atoms == other.atoms
    }
}

impl Eq for Universe {}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.atoms.iter()).finish()
    }
}

pub(crate) fn is_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// A truth assignment to every atom of a universe.
#[derive(Clone, PartialEq, Eq)]
pub struct Interpretation {
    universe: Universe,
    bits: u32,
}

impl Interpretation {
    pub fn from_bits(universe: &Universe, bits: u32) -> Result<Self> {
        if bits & !universe.full_mask() != 0 {
            return Err(Error::BitsOutOfRange {
                bits,
                atoms: universe.len(),
            });
        }
        Ok(Interpretation {
            universe: universe.clone(),
            bits,
        })
    }

    /// Interpretation making exactly the named atoms true.
    pub fn from_true_atoms<'a, I>(universe: &Universe, atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut bits = 0;
        for name in atoms {
            let i = universe.index_of(name).ok_or_else(|| Error::UnknownAtom {
                name: name.to_string(),
                position: 0,
            })?;
            bits |= 1 << i;
        }
        Ok(Interpretation {
            universe: universe.clone(),
            bits,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn get(&self, atom: usize) -> bool {
        self.bits & (1 << atom) != 0
    }

    pub fn true_atoms(&self) -> impl Iterator<Item = &str> + '_ {
        self.universe
            .atoms()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.get(*i))
            .map(|(_, a)| a.as_str())
    }
}

impl PartialOrd for Interpretation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        (self.universe == other.universe).then(|| self.bits.cmp(&other.bits))
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.universe.render_bits(self.bits))
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A set of interpretations over one universe, kept sorted by bit pattern.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModelSet {
    universe: Universe,
    members: Vec<u32>,
}

impl std::hash::Hash for Universe {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.atoms.hash(state);
    }
}

impl ModelSet {
    pub fn empty(universe: &Universe) -> Self {
        ModelSet {
            universe: universe.clone(),
            members: Vec::new(),
        }
    }

    /// All `2^|U|` interpretations.
    pub fn full(universe: &Universe, cap: usize) -> Result<Self> {
        universe.check_enumerable(cap)?;
        Ok(ModelSet {
            universe: universe.clone(),
            members: (0..=universe.full_mask()).collect(),
        })
    }

    pub fn from_bits<I: IntoIterator<Item = u32>>(universe: &Universe, bits: I) -> Result<Self> {
        let mask = universe.full_mask();
        let mut members: Vec<u32> = bits.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&b| b & !mask != 0) {
            return Err(Error::BitsOutOfRange {
                bits: bad,
                atoms: universe.len(),
            });
        }
        members.sort_unstable();
        members.dedup();
        Ok(ModelSet {
            universe: universe.clone(),
            members,
        })
    }

    pub(crate) fn from_sorted_unchecked(universe: &Universe, members: Vec<u32>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        ModelSet {
            universe: universe.clone(),
            members,
        }
    }

    pub fn from_interpretations<I>(universe: &Universe, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = Interpretation>,
    {
        let mut bits = Vec::new();
        for item in items {
            universe.ensure_same(&item.universe)?;
            bits.push(item.bits);
        }
        ModelSet::from_bits(universe, bits)
    }

    /// Builds a set from atom-name lists, e.g. `&[&[], &["a"], &["a", "b"]]`.
    pub fn from_atom_lists(universe: &Universe, lists: &[&[&str]]) -> Result<Self> {
        let items = lists
            .iter()
            .map(|l| Interpretation::from_true_atoms(universe, l.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        ModelSet::from_interpretations(universe, items)
    }

    /// Parses a whitespace- or comma-separated list of `{...}` groups.
    pub fn parse(universe: &Universe, text: &str) -> Result<Self> {
        let mut bits = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let rest_trim = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
            if rest_trim.is_empty() {
                break;
            }
            let close = rest_trim.find('}').ok_or_else(|| Error::Syntax {
                position: text.len() - rest_trim.len(),
                message: "unterminated interpretation".into(),
            })?;
            bits.push(universe.parse_bits(&rest_trim[..=close])?);
            rest = &rest_trim[close + 1..];
        }
        ModelSet::from_bits(universe, bits)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sorted bit patterns of the members.
    pub fn bits(&self) -> &[u32] {
        &self.members
    }

    pub fn contains_bits(&self, bits: u32) -> bool {
        self.members.binary_search(&bits).is_ok()
    }

    pub fn contains(&self, w: &Interpretation) -> bool {
        w.universe == self.universe && self.contains_bits(w.bits)
    }

    pub fn iter(&self) -> impl Iterator<Item = Interpretation> + '_ {
        self.members.iter().map(move |&bits| Interpretation {
            universe: self.universe.clone(),
            bits,
        })
    }

    pub fn first(&self) -> Option<Interpretation> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.members.iter().all(|b| other.contains_bits(*b))
    }

    pub fn intersects(&self, other: &ModelSet) -> bool {
        self.members.iter().any(|b| other.contains_bits(*b))
    }

    pub fn intersection(&self, other: &ModelSet) -> Result<ModelSet> {
        self.universe.ensure_same(&other.universe)?;
        let members = self
            .members
            .iter()
            .copied()
            .filter(|b| other.contains_bits(*b))
            .collect();
        Ok(ModelSet::from_sorted_unchecked(&self.universe, members))
    }

    pub fn union(&self, other: &ModelSet) -> Result<ModelSet> {
        self.universe.ensure_same(&other.universe)?;
        ModelSet::from_bits(
            &self.universe,
            self.members.iter().chain(other.members.iter()).copied(),
        )
    }

    pub fn insert_bits(&mut self, bits: u32) {
        if let Err(pos) = self.members.binary_search(&bits) {
            self.members.insert(pos, bits);
        }
    }
}

impl fmt::Display for ModelSet {
    /// `{}, {a}, {b}`; the empty set prints as `(none)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.members.is_empty() {
            return f.write_str("(none)");
        }
        for (i, &b) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&self.universe.render_bits(b))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    And,
    Or,
    Majority3,
    Generic,
}

/// A symmetric Boolean function with `f(0,...,0) = 0` and `f(1,...,1) = 1`.
///
/// Symmetry means the output depends only on how many inputs are true, so the
/// function is also kept as a per-weight table for evaluation.
#[derive(Clone)]
pub struct BooleanFn {
    arity: usize,
    table: Vec<bool>,
    by_weight: Vec<bool>,
    name: Option<String>,
    shape: Shape,
}

impl BooleanFn {
    /// Validates a truth table. Entry `j` is the output for the input whose
    /// `i`-th argument is bit `i` of `j`.
    pub fn from_table(arity: usize, table: &[bool]) -> Result<Self> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::InvalidArity {
                arity,
                max: MAX_ARITY,
            });
        }
        let expected = 1usize << arity;
        if table.len() != expected {
            return Err(Error::TableLength {
                arity,
                expected,
                found: table.len(),
            });
        }
        let input = |j: usize| (0..arity).map(|i| j & (1 << i) != 0).collect::<Vec<_>>();
        if table[0] {
            return Err(Error::NotReproducing {
                kind: 0,
                input: input(0),
                output: true,
            });
        }
        if !table[expected - 1] {
            return Err(Error::NotReproducing {
                kind: 1,
                input: input(expected - 1),
                output: false,
            });
        }
        // first input seen for each weight is the representative
        let mut rep: Vec<Option<usize>> = vec![None; arity + 1];
        for (j, &out) in table.iter().enumerate() {
            let w = j.count_ones() as usize;
            match rep[w] {
                None => rep[w] = Some(j),
                Some(r) if table[r] != out => {
                    return Err(Error::NotSymmetric {
                        input: input(r),
                        other: input(j),
                    })
                }
                Some(_) => {}
            }
        }
        let by_weight: Vec<bool> = rep.iter().map(|r| table[r.unwrap()]).collect();
        let shape = if by_weight.iter().take(arity).all(|b| !b) {
            Shape::And
        } else if by_weight.iter().skip(1).all(|b| *b) {
            Shape::Or
        } else if arity == 3 && by_weight == [false, false, true, true] {
            Shape::Majority3
        } else {
            Shape::Generic
        };
        Ok(BooleanFn {
            arity,
            table: table.to_vec(),
            by_weight,
            name: None,
            shape,
        })
    }

    /// Same as [`BooleanFn::from_table`] with 0/1 entries.
    pub fn from_bits_table(arity: usize, table: &[u8]) -> Result<Self> {
        let t: Vec<bool> = table.iter().map(|&v| v != 0).collect();
        BooleanFn::from_table(arity, &t)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Binary conjunction.
    pub fn and() -> Self {
        BooleanFn::from_table(2, &[false, false, false, true])
            .expect("AND is symmetric and reproducing")
            .with_name("and")
    }

    /// Ternary majority.
    pub fn majority3() -> Self {
        let table: Vec<bool> = (0..8u32).map(|j| j.count_ones() >= 2).collect();
        BooleanFn::from_table(3, &table)
            .expect("majority is symmetric and reproducing")
            .with_name("maj3")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn eval(&self, inputs: &[bool]) -> Result<bool> {
        if inputs.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: inputs.len(),
            });
        }
        Ok(self.by_weight[inputs.iter().filter(|b| **b).count()])
    }

    /// Coordinate-wise application to bit patterns of width `width`.
    pub(crate) fn apply_bits(&self, args: &[u32], width: usize) -> u32 {
        debug_assert_eq!(args.len(), self.arity);
        match self.shape {
            Shape::And => args.iter().fold(u32::MAX, |acc, a| acc & a),
            Shape::Or => args.iter().fold(0, |acc, a| acc | a),
            Shape::Majority3 => {
                let (x, y, z) = (args[0], args[1], args[2]);
                (x & y) | (x & z) | (y & z)
            }
            Shape::Generic => {
                let mut out = 0;
                for i in 0..width {
                    let ones = args.iter().filter(|a| *a & (1 << i) != 0).count();
                    if self.by_weight[ones] {
                        out |= 1 << i;
                    }
                }
                out
            }
        }
    }

    /// Applies the function coordinate-wise to `arity` interpretations.
    pub fn apply_pointwise(&self, args: &[Interpretation]) -> Result<Interpretation> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        let universe = &args[0].universe;
        for a in &args[1..] {
            universe.ensure_same(&a.universe)?;
        }
        let bits: Vec<u32> = args.iter().map(|a| a.bits).collect();
        Ok(Interpretation {
            universe: universe.clone(),
            bits: self.apply_bits(&bits, universe.len()),
        })
    }

    fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => format!(
                "f{}[{}]",
                self.arity,
                self.table
                    .iter()
                    .map(|b| if *b { '1' } else { '0' })
                    .collect::<String>()
            ),
        }
    }
}

impl PartialEq for BooleanFn {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.table == other.table
    }
}

impl Eq for BooleanFn {}

impl fmt::Debug for BooleanFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFn({})", self.label())
    }
}

impl fmt::Display for BooleanFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Visits every non-decreasing index tuple of length `k` over `0..len` whose
/// largest index is at least `min_max`. Since the functions are symmetric,
/// these cover every argument tuple up to permutation.
fn for_each_multiset<F>(len: usize, k: usize, min_max: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if k == 0 || len == 0 {
        return ControlFlow::Continue(());
    }
    let mut idx = vec![0usize; k];
    for top in min_max..len {
        idx[k - 1] = top;
        idx[..k - 1].iter_mut().for_each(|v| *v = 0);
        loop {
            visit(&idx)?;
            // bump the rightmost free slot that is still below `top`
            let Some(p) = (0..k - 1).rev().find(|&p| idx[p] < top) else {
                break;
            };
            idx[p] += 1;
            let v = idx[p];
            idx[p + 1..k - 1].iter_mut().for_each(|x| *x = v);
        }
    }
    ControlFlow::Continue(())
}

/// Smallest superset of `set` closed under `beta`, computed as a worklist
/// fixpoint: each round only evaluates tuples containing a newly added
/// element. Worst case visits `C(|result| + k - 1, k)` tuples.
pub fn closure(beta: &BooleanFn, set: &ModelSet) -> ModelSet {
    let width = set.universe.len();
    let mut elems: Vec<u32> = set.members.clone();
    let mut seen: HashSet<u32> = elems.iter().copied().collect();
    let mut processed = 0;
    let mut args = vec![0u32; beta.arity];
    while processed < elems.len() {
        let end = elems.len();
        let mut fresh = Vec::new();
        let _ = for_each_multiset(end, beta.arity, processed, |idx| {
            for (slot, &i) in args.iter_mut().zip(idx) {
                *slot = elems[i];
            }
            let r = beta.apply_bits(&args, width);
            if seen.insert(r) {
                fresh.push(r);
            }
            ControlFlow::Continue(())
        });
        processed = end;
        elems.extend(fresh);
    }
    elems.sort_unstable();
    ModelSet::from_sorted_unchecked(&set.universe, elems)
}

/// A tuple of members whose image under `beta` is missing from the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureWitness {
    pub args: Vec<Interpretation>,
    pub result: Interpretation,
}

impl ClosureWitness {
    pub(crate) fn into_error(self, beta: &BooleanFn) -> Error {
        let args = self
            .args
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        Error::NotClosed {
            beta: beta.to_string(),
            args: format!("({args})"),
            result: self.result.to_string(),
        }
    }
}

/// First tuple (in enumeration order) witnessing that `set` is not closed.
pub fn closure_witness(beta: &BooleanFn, set: &ModelSet) -> Option<ClosureWitness> {
    let width = set.universe.len();
    let mut args = vec![0u32; beta.arity];
    let mut found = None;
    let _ = for_each_multiset(set.len(), beta.arity, 0, |idx| {
        for (slot, &i) in args.iter_mut().zip(idx) {
            *slot = set.members[i];
        }
        let r = beta.apply_bits(&args, width);
        if set.contains_bits(r) {
            ControlFlow::Continue(())
        } else {
            found = Some((args.clone(), r));
            ControlFlow::Break(())
        }
    });
    found.map(|(args, r)| ClosureWitness {
        args: args
            .into_iter()
            .map(|bits| Interpretation {
                universe: set.universe.clone(),
                bits,
            })
            .collect(),
        result: Interpretation {
            universe: set.universe.clone(),
            bits: r,
        },
    })
}

/// Single pass over argument tuples; does not build the closure.
pub fn is_closed(beta: &BooleanFn, set: &ModelSet) -> bool {
    closure_witness(beta, set).is_none()
}

/// Clause-level syntax attached to a fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClauseClass {
    /// At most one positive literal.
    Horn,
    /// At most two literals.
    Krom,
}

/// A sublanguage characterized by closure of its model sets under `beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    beta: BooleanFn,
    clauses: Option<ClauseClass>,
}

impl Fragment {
    pub fn horn() -> Self {
        Fragment {
            beta: BooleanFn::and(),
            clauses: Some(ClauseClass::Horn),
        }
    }

    pub fn krom() -> Self {
        Fragment {
            beta: BooleanFn::majority3(),
            clauses: Some(ClauseClass::Krom),
        }
    }

    /// A fragment known only through its closure function.
    pub fn from_beta(beta: BooleanFn) -> Self {
        Fragment { beta, clauses: None }
    }

    pub fn beta(&self) -> &BooleanFn {
        &self.beta
    }

    pub fn clause_class(&self) -> Option<ClauseClass> {
        self.clauses
    }

    pub fn name(&self) -> String {
        match self.clauses {
            Some(ClauseClass::Horn) => "horn".into(),
            Some(ClauseClass::Krom) => "krom".into(),
            None => self.beta.to_string(),
        }
    }

    pub fn contains(&self, set: &ModelSet) -> bool {
        is_closed(&self.beta, set)
    }
}
