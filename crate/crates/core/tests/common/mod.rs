//! Brute-force reference implementation used to cross-check the library.
//! Sets are sorted `Vec<u32>` of interpretation bits; nothing here calls into
//! the crate.

#![allow(dead_code)]

pub type Set = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Beta {
    And,
    Maj,
}

impl Beta {
    fn combine(self, t: &[u32]) -> u32 {
        match self {
            Beta::And => t[0] & t[1],
            Beta::Maj => (t[0] & t[1]) | (t[1] & t[2]) | (t[0] & t[2]),
        }
    }

    fn arity(self) -> usize {
        match self {
            Beta::And => 2,
            Beta::Maj => 3,
        }
    }
}

fn tuples(set: &[u32], k: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                set.iter().map(move |&x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn is_closed(beta: Beta, set: &[u32]) -> bool {
    tuples(set, beta.arity())
        .iter()
        .all(|t| set.contains(&beta.combine(t)))
}

pub fn closure(beta: Beta, set: &[u32]) -> Set {
    let mut cur: Set = set.to_vec();
    loop {
        let mut next = cur.clone();
        for t in tuples(&cur, beta.arity()) {
            next.push(beta.combine(&t));
        }
        next.sort_unstable();
        next.dedup();
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Every subset of the `2^n` interpretations.
pub fn all_sets(n: usize) -> Vec<Set> {
    let points = 1u32 << n;
    (0u64..(1u64 << points))
        .map(|mask| (0..points).filter(|&w| mask >> w & 1 == 1).collect())
        .collect()
}

pub fn closed_sets(n: usize, beta: Beta) -> Vec<Set> {
    all_sets(n).into_iter().filter(|s| is_closed(beta, s)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dist {
    Hamming,
    Drastic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agg {
    Sum,
    GMax,
}

fn d(dist: Dist, w: u32, v: u32) -> u64 {
    let h = (w ^ v).count_ones() as u64;
    match dist {
        Dist::Hamming => h,
        Dist::Drastic => h.min(1),
    }
}

pub fn d_base(dist: Dist, w: u32, base: &[u32]) -> u64 {
    base.iter()
        .map(|&v| d(dist, w, v))
        .min()
        .expect("bases are consistent")
}

/// Σ becomes a one-element vector so both aggregators compare as vectors.
pub fn score(dist: Dist, agg: Agg, w: u32, profile: &[Set]) -> Vec<u64> {
    let mut ds: Vec<u64> = profile.iter().map(|k| d_base(dist, w, k)).collect();
    match agg {
        Agg::Sum => vec![ds.iter().sum()],
        Agg::GMax => {
            ds.sort_unstable_by(|a, b| b.cmp(a));
            ds
        }
    }
}

pub fn merge(dist: Dist, agg: Agg, profile: &[Set], mu: &[u32]) -> Set {
    let Some(best) = mu.iter().map(|&w| score(dist, agg, w, profile)).min() else {
        return Vec::new();
    };
    mu.iter()
        .copied()
        .filter(|&w| score(dist, agg, w, profile) == best)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Refinement {
    None,
    Closure,
    Lex,
    LexClosure,
}

pub fn meets(m: &[u32], profile: &[Set]) -> usize {
    profile.iter().filter(|k| k.iter().any(|w| m.contains(w))).count()
}

pub fn refine(r: Refinement, beta: Beta, m: Set, profile: &[Set]) -> Set {
    let lex = |m: Set| if is_closed(beta, &m) { m } else { vec![m[0]] };
    match r {
        Refinement::None => m,
        Refinement::Closure => closure(beta, &m),
        Refinement::Lex => lex(m),
        Refinement::LexClosure if meets(&m, profile) == 0 => lex(m),
        Refinement::LexClosure => closure(beta, &m),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Op {
    pub dist: Dist,
    pub agg: Agg,
    pub refinement: Refinement,
    pub beta: Beta,
}

impl Op {
    pub fn apply(&self, profile: &[Set], mu: &[u32]) -> Set {
        let m = merge(self.dist, self.agg, profile, mu);
        refine(self.refinement, self.beta, m, profile)
    }
}

fn subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn inter(a: &[u32], b: &[u32]) -> Set {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

/// The exhaustive space: non-empty closed bases, every closed constraint,
/// profiles as multisets of at most `max_profile` bases.
pub struct Space {
    pub bases: Vec<Set>,
    pub constraints: Vec<Set>,
    pub profiles: Vec<Vec<Set>>,
}

impl Space {
    pub fn new(n: usize, beta: Beta, max_profile: usize) -> Space {
        let constraints = closed_sets(n, beta);
        let bases: Vec<Set> = constraints.iter().filter(|s| !s.is_empty()).cloned().collect();
        let mut profiles = Vec::new();
        let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
        while let Some((idx, from)) = stack.pop() {
            if !idx.is_empty() {
                profiles.push(idx.iter().map(|&i| bases[i].clone()).collect());
            }
            if idx.len() < max_profile {
                for i in from..bases.len() {
                    let mut next = idx.clone();
                    next.push(i);
                    stack.push((next, i));
                }
            }
        }
        Space {
            bases,
            constraints,
            profiles,
        }
    }
}

/// Violation counts for IC0..IC8, instance shapes matching the library's
/// search (unordered pairs for IC4-IC6, ordered constraint pairs for IC7/IC8).
pub fn count_violations(op: &Op, s: &Space, which: &[usize]) -> [usize; 9] {
    let mut v = [0usize; 9];
    let want = |i: usize| which.contains(&i);
    for e in &s.profiles {
        let conj = e.iter().skip(1).fold(e[0].clone(), |acc, k| inter(&acc, k));
        for mu in &s.constraints {
            let out = op.apply(e, mu);
            if want(0) && !subset(&out, mu) {
                v[0] += 1;
            }
            if want(1) && !mu.is_empty() && out.is_empty() {
                v[1] += 1;
            }
            let cm = inter(&conj, mu);
            if want(2) && !cm.is_empty() && out != cm {
                v[2] += 1;
            }
            if want(3) {
                let mut rev = e.clone();
                rev.reverse();
                if op.apply(&rev, mu) != out {
                    v[3] += 1;
                }
            }
            if want(7) || want(8) {
                for mu2 in &s.constraints {
                    let lhs = inter(&out, mu2);
                    let both = op.apply(e, &inter(mu, mu2));
                    if want(7) && !subset(&lhs, &both) {
                        v[7] += 1;
                    }
                    if want(8) && !lhs.is_empty() && !subset(&both, &lhs) {
                        v[8] += 1;
                    }
                }
            }
        }
    }
    if want(4) {
        for i in 0..s.bases.len() {
            for j in i..s.bases.len() {
                let (k1, k2) = (&s.bases[i], &s.bases[j]);
                let e = vec![k1.clone(), k2.clone()];
                for mu in &s.constraints {
                    if !subset(k1, mu) || !subset(k2, mu) {
                        continue;
                    }
                    let out = op.apply(&e, mu);
                    if meets(&out, &e[..1]) != meets(&out, &e[1..]) {
                        v[4] += 1;
                    }
                }
            }
        }
    }
    if want(5) || want(6) {
        for i in 0..s.profiles.len() {
            for j in i..s.profiles.len() {
                let (e1, e2) = (&s.profiles[i], &s.profiles[j]);
                let joined: Vec<Set> = e1.iter().chain(e2).cloned().collect();
                for mu in &s.constraints {
                    let both = inter(&op.apply(e1, mu), &op.apply(e2, mu));
                    let out = op.apply(&joined, mu);
                    if want(5) && !subset(&both, &out) {
                        v[5] += 1;
                    }
                    if want(6) && !both.is_empty() && !subset(&out, &both) {
                        v[6] += 1;
                    }
                }
            }
        }
    }
    v
}

/// Instances where the base operator meets a number of bases other than one
/// and the refined operator meets exactly one.
pub fn fairness_violations(op: &Op, s: &Space) -> usize {
    let base = Op {
        refinement: Refinement::None,
        ..*op
    };
    let mut n = 0;
    for e in &s.profiles {
        for mu in &s.constraints {
            if meets(&base.apply(e, mu), e) != 1 && meets(&op.apply(e, mu), e) == 1 {
                n += 1;
            }
        }
    }
    n
}
