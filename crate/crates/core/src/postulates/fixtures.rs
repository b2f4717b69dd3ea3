//! Hand-built instances with known distance tables and outcomes. Each fixture
//! recomputes its tables and outputs and compares them cell by cell with the
//! expected values.

use std::fmt;
use std::fmt::Display;

use super::{check_postulate, Instance, PostulateId};
use crate::error::{Error, Result};
use crate::interp::{closure, BooleanFn, Fragment, ModelSet, Universe};
use crate::merge::{score_table, Aggregator, CountingDistance, DistanceOperator, MergeOperator, Profile};
use crate::refine::{cardintersection, is_fair, LexOrder, RefinedOperator, RefinementKind};
use crate::space::InstanceSpace;

/// One compared value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub label: String,
    pub expected: String,
    pub actual: String,
}

impl Cell {
    pub fn pass(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureReport {
    pub id: String,
    pub title: String,
    pub cells: Vec<Cell>,
}

impl FixtureReport {
    pub fn passes(&self) -> bool {
        self.cells.iter().all(Cell::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.pass())
    }
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.id, self.title)?;
        let w = self.cells.iter().map(|c| c.label.len()).max().unwrap_or(0);
        for c in &self.cells {
            let mark = if c.pass() { "ok" } else { "MISMATCH" };
            if c.pass() {
                writeln!(f, "  {:<w$}  {}  {mark}", c.label, c.actual)?;
            } else {
                writeln!(
                    f,
                    "  {:<w$}  {}  {mark} (expected {})",
                    c.label, c.actual, c.expected
                )?;
            }
        }
        let bad = self.failures().count();
        if bad == 0 {
            writeln!(f, "all {} cells match", self.cells.len())
        } else {
            writeln!(f, "{bad} of {} cells differ", self.cells.len())
        }
    }
}

const IDS: [&str; 13] = [
    "ex1",
    "ex3",
    "prop3-horn",
    "prop3-krom",
    "prop4-horn",
    "prop4-krom",
    "prop6-fairness",
    "prop8-ic5",
    "prop8-ic7-horn",
    "prop8-ic7-krom",
    "prop9-ic4",
    "prop10-nonfair",
    "prop11-ic6",
];

/// Identifiers accepted by [`reproduce`].
pub fn fixture_ids() -> &'static [&'static str] {
    &IDS
}

pub fn reproduce(id: &str) -> Result<FixtureReport> {
    let mut r = Recorder::new(id);
    match id {
        "ex1" => ex1(&mut r)?,
        "ex3" => ex3(&mut r)?,
        "prop3-horn" => prop3_horn(&mut r)?,
        "prop3-krom" => prop3_krom(&mut r)?,
        "prop4-horn" => prop4_horn(&mut r)?,
        "prop4-krom" => prop4_krom(&mut r)?,
        "prop6-fairness" => prop6_fairness(&mut r)?,
        "prop8-ic5" => prop8_ic5(&mut r)?,
        "prop8-ic7-horn" => prop8_ic7_horn(&mut r)?,
        "prop8-ic7-krom" => prop8_ic7_krom(&mut r)?,
        "prop9-ic4" => prop9_ic4(&mut r)?,
        "prop10-nonfair" => prop10_nonfair(&mut r)?,
        "prop11-ic6" => prop11_ic6(&mut r)?,
        _ => return Err(Error::UnknownFixture(id.to_string())),
    }
    Ok(r.finish())
}

struct Recorder {
    report: FixtureReport,
}

impl Recorder {
    fn new(id: &str) -> Self {
        Recorder {
            report: FixtureReport {
                id: id.to_string(),
                title: String::new(),
                cells: Vec::new(),
            },
        }
    }

    fn title(&mut self, t: &str) {
        self.report.title = t.to_string();
    }

    fn cell(&mut self, label: impl Into<String>, expected: impl Display, actual: impl Display) {
        self.report.cells.push(Cell {
            label: label.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    /// Rows of a distance table: per-base distances followed by the aggregate.
    /// `expected` maps an interpretation label to its row, e.g.
    /// `("{}", "1 1 | 2")`.
    fn table(
        &mut self,
        tag: &str,
        profile: &Profile,
        mu: &ModelSet,
        d: &CountingDistance,
        f: Aggregator,
        expected: &[(&str, &str)],
    ) -> Result<()> {
        let rows = score_table(profile, mu, d, f)?;
        for (w, want) in expected {
            let got = rows
                .iter()
                .find(|r| r.interpretation.to_string() == *w)
                .map(|r| {
                    let ds: Vec<String> = r.distances.iter().map(u64::to_string).collect();
                    format!("{} | {}", ds.join(" "), r.score)
                })
                .unwrap_or_else(|| "(row missing)".into());
            self.cell(format!("{tag} row {w}"), want, got);
        }
        self.cell(format!("{tag} row count"), expected.len(), rows.len());
        Ok(())
    }

    fn verdict(&mut self, label: &str, expect_violation: bool, w: Option<super::Witness>) {
        let show = |v: bool| if v { "violated" } else { "holds" };
        self.cell(label, show(expect_violation), show(w.is_some()));
    }

    fn finish(self) -> FixtureReport {
        self.report
    }
}

fn universe(n: usize) -> Universe {
    Universe::letters(n).expect("fixture universes are small")
}

/// Model set from atom strings: `"" "a" "ab"` -> `{}, {a}, {a,b}`.
fn ms(u: &Universe, words: &[&str]) -> ModelSet {
    let bits = words.iter().map(|w| {
        w.chars()
            .map(|c| 1u32 << u.index_of(&c.to_string()).expect("fixture atom"))
            .fold(0, |a, b| a | b)
    });
    ModelSet::from_bits(u, bits).expect("fixture bits fit")
}

fn profile(sets: &[ModelSet]) -> Profile {
    Profile::from_model_sets(sets.iter().cloned()).expect("fixture bases are consistent")
}

fn op(d: CountingDistance, f: Aggregator) -> DistanceOperator {
    DistanceOperator::new(d, f)
}

fn refined(d: CountingDistance, f: Aggregator, kind: RefinementKind) -> RefinedOperator {
    RefinedOperator::new(op(d, f), kind)
}

fn ex1_input() -> (Universe, Profile, ModelSet) {
    let u = universe(2);
    let e = profile(&[ms(&u, &["a", "ab"]), ms(&u, &["b", "ab"])]);
    let mu = ms(&u, &["", "a", "b"]);
    (u, e, mu)
}

fn ex1(r: &mut Recorder) -> Result<()> {
    r.title("two agents over (a, b) under the constraint !a | !b, Hamming distance");
    let (_, e, mu) = ex1_input();
    let h = CountingDistance::Hamming;
    r.table(
        "sigma",
        &e,
        &mu,
        &h,
        Aggregator::Sum,
        &[("{}", "1 1 | 2"), ("{a}", "0 1 | 1"), ("{b}", "1 0 | 1")],
    )?;
    r.table(
        "gmax",
        &e,
        &mu,
        &h,
        Aggregator::GMax,
        &[
            ("{}", "1 1 | (1,1)"),
            ("{a}", "0 1 | (1,0)"),
            ("{b}", "1 0 | (1,0)"),
        ],
    )?;
    for f in [Aggregator::Sum, Aggregator::GMax] {
        r.cell(format!("merge {f}"), "{a}, {b}", op(h.clone(), f).apply(&e, &mu)?);
    }
    Ok(())
}

fn ex3(r: &mut Recorder) -> Result<()> {
    r.title("refining the two-agent merge into Horn with lex, closure and lex/closure");
    let (_, e, mu) = ex1_input();
    let and = BooleanFn::and();
    let base = op(CountingDistance::Hamming, Aggregator::Sum);
    let m = base.apply(&e, &mu)?;
    r.cell("merge", "{a}, {b}", &m);
    r.cell("#(M,E)", 2, cardintersection(&m, &e)?);
    let cases = [
        ("lex", RefinementKind::lex(and.clone()), "{a}"),
        ("closure", RefinementKind::closure(and.clone()), "{}, {a}, {b}"),
        (
            "lex-closure",
            RefinementKind::lex_closure(and.clone()),
            "{}, {a}, {b}",
        ),
    ];
    for (name, kind, want) in cases {
        let out = RefinedOperator::new(base.clone(), kind).apply(&e, &mu)?;
        r.cell(name, want, out);
    }
    Ok(())
}

/// IC4 for `op` on `{K1, K2}` under `mu`; the fixture expects a violation.
fn ic4(
    r: &mut Recorder,
    tag: &str,
    op: &dyn MergeOperator,
    k1: &ModelSet,
    k2: &ModelSet,
    mu: &ModelSet,
) -> Result<()> {
    let inst = Instance::Pair {
        k1: k1.clone(),
        k2: k2.clone(),
        mu: mu.clone(),
    };
    let w = check_postulate(PostulateId::IC4, op, &inst)?;
    r.verdict(&format!("{tag} IC4"), true, w);
    Ok(())
}

fn prop3_horn(r: &mut Recorder) -> Result<()> {
    r.title("lex refinement breaks IC4 in Horn (Hamming) and with the drastic distance");
    let u = universe(2);
    let and = BooleanFn::and();
    let h = CountingDistance::Hamming;
    let k1 = ms(&u, &["", "a", "b"]);
    let k2 = ms(&u, &["ab"]);
    let mu = ms(&u, &["", "a", "b", "ab"]);
    let e = profile(&[k1.clone(), k2.clone()]);
    r.table(
        "hamming,sigma",
        &e,
        &mu,
        &h,
        Aggregator::Sum,
        &[
            ("{}", "0 2 | 2"),
            ("{a}", "0 1 | 1"),
            ("{b}", "0 1 | 1"),
            ("{a,b}", "1 0 | 1"),
        ],
    )?;
    r.table(
        "hamming,gmax",
        &e,
        &mu,
        &h,
        Aggregator::GMax,
        &[
            ("{}", "0 2 | (2,0)"),
            ("{a}", "0 1 | (1,0)"),
            ("{b}", "0 1 | (1,0)"),
            ("{a,b}", "1 0 | (1,0)"),
        ],
    )?;
    for f in [Aggregator::Sum, Aggregator::GMax] {
        let m = op(h.clone(), f).apply(&e, &mu)?;
        r.cell(format!("hamming,{f} M"), "{a}, {b}, {a,b}", &m);
        let lex = refined(h.clone(), f, RefinementKind::lex(and.clone()));
        let out = lex.apply(&e, &mu)?;
        r.cell(format!("hamming,{f} lex"), "{a}", &out);
        r.cell(format!("hamming,{f} #(lex,E)"), 1, cardintersection(&out, &e)?);
        ic4(r, &format!("hamming,{f},lex"), &lex, &k1, &k2, &mu)?;
    }

    // drastic: split a smallest non-closed set {a},{b} into two bases
    let d = CountingDistance::Drastic;
    let k1 = ms(&u, &["a"]);
    let k2 = ms(&u, &["b"]);
    let e = profile(&[k1.clone(), k2.clone()]);
    r.table(
        "drastic,sigma",
        &e,
        &mu,
        &d,
        Aggregator::Sum,
        &[
            ("{}", "1 1 | 2"),
            ("{a}", "0 1 | 1"),
            ("{b}", "1 0 | 1"),
            ("{a,b}", "1 1 | 2"),
        ],
    )?;
    for f in [Aggregator::Sum, Aggregator::GMax] {
        r.cell(
            format!("drastic,{f} M"),
            "{a}, {b}",
            op(d.clone(), f).apply(&e, &mu)?,
        );
        let lex = refined(d.clone(), f, RefinementKind::lex(and.clone()));
        let out = lex.apply(&e, &mu)?;
        r.cell(format!("drastic,{f} lex"), "{a}", &out);
        ic4(r, &format!("drastic,{f},lex"), &lex, &k1, &k2, &mu)?;
    }
    Ok(())
}

fn prop3_krom(r: &mut Recorder) -> Result<()> {
    r.title("lex refinement breaks IC4 in Krom (Hamming)");
    let u = universe(4);
    let maj = BooleanFn::majority3();
    let h = CountingDistance::Hamming;
    let k1 = ms(&u, &["", "a", "b", "c", "d"]);
    let k2 = ms(&u, &["ab", "cd"]);
    let mu = ms(&u, &["", "a", "b", "c", "d", "ab", "cd"]);
    let e = profile(&[k1.clone(), k2.clone()]);
    let dists = [
        ("{}", 0u64, 2u64),
        ("{a}", 0, 1),
        ("{b}", 0, 1),
        ("{c}", 0, 1),
        ("{d}", 0, 1),
        ("{a,b}", 1, 0),
        ("{c,d}", 1, 0),
    ];
    for f in [Aggregator::Sum, Aggregator::GMax] {
        let rows: Vec<(&str, String)> = dists
            .iter()
            .map(|&(w, x, y)| {
                let score = match f {
                    Aggregator::Sum => (x + y).to_string(),
                    Aggregator::GMax => format!("({},{})", x.max(y), x.min(y)),
                };
                (w, format!("{x} {y} | {score}"))
            })
            .collect();
        let refs: Vec<(&str, &str)> = rows.iter().map(|(w, v)| (*w, v.as_str())).collect();
        r.table(&format!("hamming,{f}"), &e, &mu, &h, f, &refs)?;
        let m = op(h.clone(), f).apply(&e, &mu)?;
        r.cell(format!("hamming,{f} M"), "{a}, {b}, {a,b}, {c}, {d}, {c,d}", &m);
        r.cell(
            format!("hamming,{f} M closed"),
            false,
            Fragment::krom().contains(&m),
        );
        let lex = refined(h.clone(), f, RefinementKind::lex(maj.clone()));
        let out = lex.apply(&e, &mu)?;
        r.cell(format!("hamming,{f} lex"), "{a}", &out);
        r.cell(format!("hamming,{f} #(lex,E)"), 1, cardintersection(&out, &e)?);
        ic4(r, &format!("hamming,{f},lex"), &lex, &k1, &k2, &mu)?;
    }
    Ok(())
}

fn prop4_horn(r: &mut Recorder) -> Result<()> {
    r.title("closure refinement of Hamming GMax breaks IC4 in Horn");
    let u = universe(2);
    let h = CountingDistance::Hamming;
    let k1 = ms(&u, &[""]);
    let k2 = ms(&u, &["ab"]);
    let mu = ms(&u, &["", "a", "b", "ab"]);
    let e = profile(&[k1.clone(), k2.clone()]);
    r.table(
        "hamming,gmax",
        &e,
        &mu,
        &h,
        Aggregator::GMax,
        &[
            ("{}", "0 2 | (2,0)"),
            ("{a}", "1 1 | (1,1)"),
            ("{b}", "1 1 | (1,1)"),
            ("{a,b}", "2 0 | (2,0)"),
        ],
    )?;
    r.cell("M", "{a}, {b}", op(h.clone(), Aggregator::GMax).apply(&e, &mu)?);
    let cl = refined(h, Aggregator::GMax, RefinementKind::closure(BooleanFn::and()));
    let out = cl.apply(&e, &mu)?;
    r.cell("closure", "{}, {a}, {b}", &out);
    r.cell("#(closure,E)", 1, cardintersection(&out, &e)?);
    ic4(r, "hamming,gmax,closure", &cl, &k1, &k2, &mu)
}

fn prop4_krom(r: &mut Recorder) -> Result<()> {
    r.title("closure refinement of Hamming GMax breaks IC4 in Krom");
    let u = universe(4);
    let h = CountingDistance::Hamming;
    let k1 = ms(&u, &[""]);
    let k2 = ms(&u, &["ab", "cd"]);
    let mu = ms(&u, &["", "a", "b", "c", "d", "ab", "cd"]);
    let e = profile(&[k1.clone(), k2.clone()]);
    r.table(
        "hamming,gmax",
        &e,
        &mu,
        &h,
        Aggregator::GMax,
        &[
            ("{}", "0 2 | (2,0)"),
            ("{a}", "1 1 | (1,1)"),
            ("{b}", "1 1 | (1,1)"),
            ("{c}", "1 1 | (1,1)"),
            ("{d}", "1 1 | (1,1)"),
            ("{a,b}", "2 0 | (2,0)"),
            ("{c,d}", "2 0 | (2,0)"),
        ],
    )?;
    let m = op(h.clone(), Aggregator::GMax).apply(&e, &mu)?;
    r.cell("M", "{a}, {b}, {c}, {d}", &m);
    r.cell("M closed", false, Fragment::krom().contains(&m));
    let cl = refined(
        h,
        Aggregator::GMax,
        RefinementKind::closure(BooleanFn::majority3()),
    );
    let out = cl.apply(&e, &mu)?;
    r.cell("closure", "{}, {a}, {b}, {c}, {d}", &out);
    r.cell("#(closure,E)", 1, cardintersection(&out, &e)?);
    ic4(r, "hamming,gmax,closure", &cl, &k1, &k2, &mu)
}

fn prop6_fairness(r: &mut Recorder) -> Result<()> {
    r.title("drastic closure and lex/closure refinements are fair on every two-atom instance");
    for frag in [Fragment::horn(), Fragment::krom()] {
        let space = InstanceSpace::new(2, Some(frag.clone()), 2)?;
        let beta = frag.beta().clone();
        let cases = [
            (CountingDistance::Drastic, RefinementKind::closure(beta.clone())),
            (
                CountingDistance::Hamming,
                RefinementKind::lex_closure(beta.clone()),
            ),
            (
                CountingDistance::Drastic,
                RefinementKind::lex_closure(beta.clone()),
            ),
        ];
        for (d, kind) in cases {
            for f in [Aggregator::Sum, Aggregator::GMax] {
                let base = op(d.clone(), f);
                let refined = RefinedOperator::new(base.clone(), kind.clone());
                let report = is_fair(&base, &refined, &space)?;
                r.cell(
                    format!("{} {} unfair instances", frag.name(), refined.label()),
                    0,
                    report.violations.len(),
                );
            }
        }
    }
    Ok(())
}

fn prop8_ic5(r: &mut Recorder) -> Result<()> {
    r.title("closure-based refinements break IC5 in Horn and Krom");
    let u = universe(3);
    let h = CountingDistance::Hamming;
    let e1 = profile(&[
        ms(&u, &["a", "ab", "ac"]),
        ms(&u, &["b", "ab", "bc"]),
        ms(&u, &["c", "ac", "bc"]),
    ]);
    let e2 = profile(&[ms(&u, &["", "b"])]);
    let mu = ms(&u, &["", "a", "b", "c"]);
    let joint = e1.join(&e2)?;
    r.table(
        "E1",
        &e1,
        &mu,
        &h,
        Aggregator::Sum,
        &[
            ("{}", "1 1 1 | 3"),
            ("{a}", "0 1 1 | 2"),
            ("{b}", "1 0 1 | 2"),
            ("{c}", "1 1 0 | 2"),
        ],
    )?;
    r.table(
        "E1+E2",
        &joint,
        &mu,
        &h,
        Aggregator::Sum,
        &[
            ("{}", "1 1 1 0 | 3"),
            ("{a}", "0 1 1 1 | 3"),
            ("{b}", "1 0 1 0 | 2"),
            ("{c}", "1 1 0 1 | 3"),
        ],
    )?;
    for frag in [Fragment::horn(), Fragment::krom()] {
        for kind in [
            RefinementKind::closure(frag.beta().clone()),
            RefinementKind::lex_closure(frag.beta().clone()),
        ] {
            for f in [Aggregator::Sum, Aggregator::GMax] {
                let o = refined(h.clone(), f, kind.clone());
                let tag = format!("{} {}", frag.name(), o.label());
                r.cell(format!("{tag} E1"), "{}, {a}, {b}, {c}", o.apply(&e1, &mu)?);
                r.cell(format!("{tag} E2"), "{}, {b}", o.apply(&e2, &mu)?);
                r.cell(format!("{tag} E1+E2"), "{b}", o.apply(&joint, &mu)?);
                let inst = Instance::TwoProfiles {
                    e1: e1.clone(),
                    e2: e2.clone(),
                    mu: mu.clone(),
                };
                r.verdict(
                    &format!("{tag} IC5"),
                    true,
                    check_postulate(PostulateId::IC5, &o, &inst)?,
                );
            }
        }
    }
    Ok(())
}

fn ic7_common(
    r: &mut Recorder,
    frag: &Fragment,
    e: &Profile,
    mu1: &ModelSet,
    mu2: &ModelSet,
    refined_mu1: &str,
) -> Result<()> {
    let h = CountingDistance::Hamming;
    let both = mu1.intersection(mu2)?;
    for kind in [
        RefinementKind::closure(frag.beta().clone()),
        RefinementKind::lex_closure(frag.beta().clone()),
    ] {
        for f in [Aggregator::Sum, Aggregator::GMax] {
            let o = refined(h.clone(), f, kind.clone());
            let tag = format!("{} {}", frag.name(), o.label());
            let out1 = o.apply(e, mu1)?;
            r.cell(format!("{tag} mu1"), refined_mu1, &out1);
            r.cell(
                format!("{tag} out(mu1) & mu2"),
                "{}, {a}",
                out1.intersection(mu2)?,
            );
            r.cell(format!("{tag} out(mu1 & mu2)"), "{a}", o.apply(e, &both)?);
            let inst = Instance::TwoConstraints {
                profile: e.clone(),
                mu1: mu1.clone(),
                mu2: mu2.clone(),
            };
            r.verdict(
                &format!("{tag} IC7"),
                true,
                check_postulate(PostulateId::IC7, &o, &inst)?,
            );
        }
    }
    Ok(())
}

fn prop8_ic7_horn(r: &mut Recorder) -> Result<()> {
    r.title("closure-based refinements break IC7 in Horn");
    let u = universe(2);
    let e = profile(&[ms(&u, &["a"]), ms(&u, &["b"]), ms(&u, &["ab"])]);
    let mu1 = ms(&u, &["", "a", "b"]);
    let mu2 = ms(&u, &["", "a"]);
    r.table(
        "hamming,sigma",
        &e,
        &mu1,
        &CountingDistance::Hamming,
        Aggregator::Sum,
        &[("{}", "1 1 2 | 4"), ("{a}", "0 2 1 | 3"), ("{b}", "2 0 1 | 3")],
    )?;
    r.cell(
        "M",
        "{a}, {b}",
        op(CountingDistance::Hamming, Aggregator::Sum).apply(&e, &mu1)?,
    );
    ic7_common(r, &Fragment::horn(), &e, &mu1, &mu2, "{}, {a}, {b}")
}

fn prop8_ic7_krom(r: &mut Recorder) -> Result<()> {
    r.title("closure-based refinements break IC7 in Krom");
    let u = universe(3);
    let e = profile(&[
        ms(&u, &["a"]),
        ms(&u, &["b"]),
        ms(&u, &["c"]),
        ms(&u, &["ab", "ac"]),
        ms(&u, &["ab", "bc"]),
    ]);
    let mu1 = ms(&u, &["", "a", "b", "c"]);
    let mu2 = ms(&u, &["", "a"]);
    r.table(
        "hamming,sigma",
        &e,
        &mu1,
        &CountingDistance::Hamming,
        Aggregator::Sum,
        &[
            ("{}", "1 1 1 2 2 | 7"),
            ("{a}", "0 2 2 1 1 | 6"),
            ("{b}", "2 0 2 1 1 | 6"),
            ("{c}", "2 2 0 1 1 | 6"),
        ],
    )?;
    r.cell(
        "M",
        "{a}, {b}, {c}",
        op(CountingDistance::Hamming, Aggregator::Sum).apply(&e, &mu1)?,
    );
    ic7_common(r, &Fragment::krom(), &e, &mu1, &mu2, "{}, {a}, {b}, {c}")
}

fn prop9_ic4(r: &mut Recorder) -> Result<()> {
    r.title("closure refinement of Hamming sigma keeps IC4 on every two-atom instance");
    r.cell(
        "hamming triangle inequality up to 4 atoms",
        true,
        CountingDistance::Hamming.satisfies_triangle_inequality(4),
    );
    for frag in [Fragment::horn(), Fragment::krom()] {
        let o = refined(
            CountingDistance::Hamming,
            Aggregator::Sum,
            RefinementKind::closure(frag.beta().clone()),
        );
        let space = super::SearchSpace::new(2, Some(frag.clone())).with_postulates(vec![PostulateId::IC4]);
        let report = super::search(&space, &o)?;
        r.cell(
            format!("{} IC4 witnesses", frag.name()),
            0,
            report.witness_count(),
        );
    }
    Ok(())
}

fn prop10_nonfair(r: &mut Recorder) -> Result<()> {
    r.title("closure refinement of Hamming sigma is not fair (7 atoms)");
    let u = universe(7);
    let h = CountingDistance::Hamming;
    let e = profile(&[ms(&u, &["a", "ab", "ad", "af"]), ms(&u, &["abcdefg"])]);
    let mu = ms(&u, &["a", "abc", "ade", "afg"]);
    r.table(
        "hamming,sigma",
        &e,
        &mu,
        &h,
        Aggregator::Sum,
        &[
            ("{a}", "0 6 | 6"),
            ("{a,b,c}", "1 4 | 5"),
            ("{a,d,e}", "1 4 | 5"),
            ("{a,f,g}", "1 4 | 5"),
        ],
    )?;
    let base = op(h.clone(), Aggregator::Sum);
    let m = base.apply(&e, &mu)?;
    r.cell("M", "{a,b,c}, {a,d,e}, {a,f,g}", &m);
    r.cell("#(M,E)", 0, cardintersection(&m, &e)?);
    for frag in [Fragment::horn(), Fragment::krom()] {
        let cl = RefinedOperator::new(base.clone(), RefinementKind::closure(frag.beta().clone()));
        let out = cl.apply(&e, &mu)?;
        let tag = frag.name();
        r.cell(format!("{tag} closure"), "{a}, {a,b,c}, {a,d,e}, {a,f,g}", &out);
        r.cell(format!("{tag} #(closure,E)"), 1, cardintersection(&out, &e)?);
        let unfair = crate::refine::fairness_violation(&base, &cl, &e, &mu)?.is_some();
        r.cell(format!("{tag} fair"), false, !unfair);
    }
    Ok(())
}

fn prop11_ic6(r: &mut Recorder) -> Result<()> {
    r.title("every refinement of Hamming GMax breaks IC6 in Horn");
    let u = universe(2);
    let h = CountingDistance::Hamming;
    let k1 = ms(&u, &["a", "ab"]);
    let k2 = ms(&u, &["b", "ab"]);
    let k3 = ms(&u, &["", "a", "b"]);
    let k4 = ms(&u, &[""]);
    let e1 = profile(&[k1.clone(), k2.clone(), k3]);
    let mu = ms(&u, &["", "a", "b", "ab"]);
    r.table(
        "hamming,gmax",
        &e1,
        &mu,
        &h,
        Aggregator::GMax,
        &[
            ("{}", "1 1 0 | (1,1,0)"),
            ("{a}", "0 1 0 | (1,0,0)"),
            ("{b}", "1 0 0 | (1,0,0)"),
            ("{a,b}", "0 0 1 | (1,0,0)"),
        ],
    )?;
    let base = op(h, Aggregator::GMax);
    let m = base.apply(&e1, &mu)?;
    r.cell("M", "{a}, {b}, {a,b}", &m);
    let and = BooleanFn::and();
    let cl = closure(&and, &m);

    // Any refinement maps M to a closed non-empty subset S of Cl(M); each
    // choice of S has a second profile that breaks IC6.
    let candidates = InstanceSpace::new(2, Some(Fragment::horn()), 1)?;
    let x = e1.model_multiset();
    let mut branches = 0;
    for s in candidates.bases().iter().filter(|s| s.is_subset(&cl)) {
        let (second, want_joint) = if s.contains_bits(0) {
            (k4.clone(), "{}, {a}, {b}")
        } else if s.is_subset(&ms(&u, &["a", "ab"])) {
            if s.len() == 1 {
                (k1.clone(), "{a}, {a,b}")
            } else {
                (k2.clone(), "{b}, {a,b}")
            }
        } else if s.is_subset(&ms(&u, &["b", "ab"])) {
            if s.len() == 1 {
                (k2.clone(), "{b}, {a,b}")
            } else {
                (k1.clone(), "{a}, {a,b}")
            }
        } else {
            r.cell(
                format!("S={} is a valid mapping output", super::encode_set(s)),
                false,
                true,
            );
            continue;
        };
        branches += 1;
        // the mapping is fixed on closed inputs, so E2 and E1+E2 are determined
        let e2 = profile(&[second]);
        let joint = e1.join(&e2)?;
        let fixed = FixedOn {
            at: (x.clone(), m.clone()),
            to: s.clone(),
            base: base.clone(),
            kind: RefinementKind::closure(and.clone()),
        };
        let o2 = fixed.apply(&e2, &mu)?;
        let oj = fixed.apply(&joint, &mu)?;
        let tag = format!("S={}", super::encode_set(s));
        r.cell(format!("{tag} E1+E2"), want_joint, &oj);
        let both = s.intersection(&o2)?;
        let violated = !both.is_empty() && !oj.is_subset(&both);
        r.cell(
            format!("{tag} IC6"),
            "violated",
            if violated { "violated" } else { "holds" },
        );
    }
    r.cell("closed candidates for the refined E1 output", 13, branches);

    // and the shipped refinements each land in one of the branches
    for kind in [
        RefinementKind::closure(and.clone()),
        RefinementKind::Lex {
            order: LexOrder::Natural,
            beta: and.clone(),
        },
        RefinementKind::lex_closure(and.clone()),
    ] {
        let o = RefinedOperator::new(base.clone(), kind);
        let label = o.label();
        let s = o.apply(&e1, &mu)?;
        let second = if s.contains_bits(0) {
            k4.clone()
        } else if s.len() == 1 {
            if s.contains_bits(0b01) {
                k1.clone()
            } else {
                k2.clone()
            }
        } else if s.contains_bits(0b01) {
            k2.clone()
        } else {
            k1.clone()
        };
        let inst = Instance::TwoProfiles {
            e1: e1.clone(),
            e2: profile(&[second]),
            mu: mu.clone(),
        };
        r.verdict(
            &format!("{label} IC6"),
            true,
            check_postulate(PostulateId::IC6, &o, &inst)?,
        );
    }
    Ok(())
}

/// Closure refinement except on one `(profile, M)` input, where it returns a
/// chosen closed set. Models an arbitrary refinement on the instances that
/// matter for the IC6 argument.
#[derive(Clone)]
struct FixedOn {
    at: (Vec<ModelSet>, ModelSet),
    to: ModelSet,
    base: DistanceOperator,
    kind: RefinementKind,
}

impl MergeOperator for FixedOn {
    fn apply(&self, profile: &Profile, mu: &ModelSet) -> Result<ModelSet> {
        let m = self.base.apply(profile, mu)?;
        if profile.model_multiset() == self.at.0 && m == self.at.1 {
            return Ok(self.to.clone());
        }
        crate::refine::refine(&self.kind, &m, profile, mu)
    }

    fn label(&self) -> String {
        "fixed".into()
    }
}
