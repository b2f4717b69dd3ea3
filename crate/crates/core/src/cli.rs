//! Command-line front end. [`run`] parses arguments, executes one command and
//! returns the process exit code; the binary is a thin wrapper around it.
//!
//! Exit codes:
//!
//! | command     | 0          | 1               | 2                       | 3                 | 4                      |
//! |-------------|------------|-----------------|-------------------------|-------------------|------------------------|
//! | `merge`     | success    |                 | usage or parse error    | inconsistent base | result not expressible |
//! | `check`     | no witness | witnesses found | usage error, space cap  |                   |                        |
//! | `reproduce` | all match  | some cell differs | unknown fixture       |                   |                        |
//! | `classify`, `closure` | success |       | usage or parse error    |                   |                        |

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::formula::{classify, drop_redundant_clauses, parse, synthesize, Verdict};
use crate::interp::{closure, is_closed, BooleanFn, Fragment, ModelSet, Universe};
use crate::merge::{score_table, Aggregator, CountingDistance, DistanceOperator, MergeOperator};
use crate::postulates::{encode_set, fixture_ids, reproduce, search, PostulateId, SearchSpace};
use crate::problem::ProblemFile;
use crate::refine::{cardintersection, LexOrder, RefinedOperator, RefinementKind};

#[derive(Debug, Parser)]
#[command(
    name = "fragmerge",
    version,
    about = "Belief merging inside Horn, Krom and other closure-defined fragments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Merge the bases of a problem file under its constraint.
    Merge(MergeArgs),
    /// Search a bounded instance space for postulate violations.
    Check(CheckArgs),
    /// Recompute a stored fixture and compare every cell.
    Reproduce(ReproduceArgs),
    /// Classify the clauses of a CNF formula as Horn and/or Krom.
    Classify(ClassifyArgs),
    /// Close a set of interpretations under a Boolean function.
    Closure(ClosureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RefinementChoice {
    None,
    Closure,
    Lex,
    LexClosure,
}

#[derive(Debug, Args)]
pub struct MergeArgs {
    /// Problem file (`-` reads standard input).
    pub file: PathBuf,
    /// hamming, drastic, or table:g1,g2,...
    #[arg(long, default_value = "hamming", value_parser = parse_distance)]
    pub distance: CountingDistance,
    /// sigma or gmax.
    #[arg(long, default_value = "sigma", value_parser = parse_aggregator)]
    pub aggregator: Aggregator,
    #[arg(long, value_enum, default_value = "none")]
    pub refinement: RefinementChoice,
    /// horn, krom, none, or beta:<truth table bits> such as beta:0001.
    #[arg(long, default_value = "none", value_parser = parse_fragment)]
    pub fragment: FragmentChoice,
    /// Interpretations listed first by the lex refinements, e.g. "{b} {a}".
    #[arg(long)]
    pub lex_order: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// distance,aggregator[,refinement], e.g. hamming,sigma,closure.
    #[arg(long, default_value = "hamming,sigma", value_parser = parse_op_spec)]
    pub op: OpSpec,
    #[arg(long, default_value = "horn", value_parser = parse_fragment)]
    pub fragment: FragmentChoice,
    /// ic0-ic3, ic4, ic5,ic7 or all.
    #[arg(long, default_value = "all", value_parser = parse_postulates)]
    pub postulates: PostulateList,
    #[arg(long, default_value_t = 2)]
    pub atoms: usize,
    #[arg(long, default_value_t = 2)]
    pub max_profile: usize,
    /// Stop listing witnesses per postulate after this many.
    #[arg(long)]
    pub max_witnesses: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Fixture id, or `all`.
    pub id: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub formula: String,
    /// Atom order, e.g. a,b,c. Defaults to order of first appearance.
    #[arg(long)]
    pub atoms: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    /// Interpretations, e.g. "{a} {b}".
    pub models: String,
    /// Atom order, e.g. a,b,c.
    #[arg(long)]
    pub atoms: String,
    /// and, or, maj3, or a truth table such as 0001.
    #[arg(long, default_value = "and", value_parser = parse_beta)]
    pub beta: BooleanFn,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// `None` means no fragment.
#[derive(Debug, Clone)]
pub struct FragmentChoice(pub Option<Fragment>);

#[derive(Debug, Clone)]
pub struct PostulateList(pub Vec<PostulateId>);

#[derive(Debug, Clone)]
pub struct OpSpec {
    pub distance: CountingDistance,
    pub aggregator: Aggregator,
    pub refinement: RefinementChoice,
}

fn parse_distance(s: &str) -> Result<CountingDistance, String> {
    match s {
        "hamming" => Ok(CountingDistance::Hamming),
        "drastic" => Ok(CountingDistance::Drastic),
        _ => {
            let list = s
                .strip_prefix("table:")
                .ok_or_else(|| format!("unknown distance `{s}` (hamming, drastic, table:g1,g2,...)"))?;
            let values = list
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<u64>()
                        .map_err(|_| format!("bad table value `{v}`"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            CountingDistance::table(values).map_err(|e| e.to_string())
        }
    }
}

fn parse_aggregator(s: &str) -> Result<Aggregator, String> {
    match s {
        "sigma" | "sum" => Ok(Aggregator::Sum),
        "gmax" => Ok(Aggregator::GMax),
        _ => Err(format!("unknown aggregator `{s}` (sigma, gmax)")),
    }
}

fn parse_beta(s: &str) -> Result<BooleanFn, String> {
    match s {
        "and" => Ok(BooleanFn::and()),
        "maj3" | "majority" => Ok(BooleanFn::majority3()),
        "or" => BooleanFn::from_bits_table(2, &[0, 1, 1, 1])
            .map(|f| f.with_name("or"))
            .map_err(|e| e.to_string()),
        _ => {
            let bits: Vec<u8> = s
                .chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(format!(
                        "unknown function `{s}` (and, or, maj3, or a 0/1 truth table)"
                    )),
                })
                .collect::<Result<_, _>>()?;
            if bits.len() < 2 || !bits.len().is_power_of_two() {
                return Err(format!("truth table `{s}` must have 2^k entries"));
            }
            BooleanFn::from_bits_table(bits.len().trailing_zeros() as usize, &bits).map_err(|e| e.to_string())
        }
    }
}

fn parse_fragment(s: &str) -> Result<FragmentChoice, String> {
    match s {
        "horn" => Ok(FragmentChoice(Some(Fragment::horn()))),
        "krom" => Ok(FragmentChoice(Some(Fragment::krom()))),
        "none" => Ok(FragmentChoice(None)),
        _ => {
            let table = s
                .strip_prefix("beta:")
                .ok_or_else(|| format!("unknown fragment `{s}` (horn, krom, none, beta:<table>)"))?;
            Ok(FragmentChoice(Some(Fragment::from_beta(parse_beta(table)?))))
        }
    }
}

fn parse_postulates(s: &str) -> Result<PostulateList, String> {
    PostulateId::parse_list(s)
        .map(PostulateList)
        .map_err(|e| e.to_string())
}

fn parse_refinement(s: &str) -> Result<RefinementChoice, String> {
    RefinementChoice::from_str(s, true)
        .map_err(|_| format!("unknown refinement `{s}` (none, closure, lex, lex-closure)"))
}

/// `hamming,sigma,closure`; a table distance swallows the numeric fields
/// after it, as in `table:1,3,3,gmax,lex`.
fn parse_op_spec(s: &str) -> Result<OpSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let mut i = 1;
    let dist_text = if parts[0].starts_with("table:") {
        while i < parts.len() && parts[i].parse::<u64>().is_ok() {
            i += 1;
        }
        parts[..i].join(",")
    } else {
        parts[0].to_string()
    };
    let distance = parse_distance(&dist_text)?;
    let aggregator = parse_aggregator(parts.get(i).ok_or("missing aggregator in --op")?)?;
    let refinement = match parts.get(i + 1) {
        Some(r) => parse_refinement(r)?,
        None => RefinementChoice::None,
    };
    if parts.len() > i + 2 {
        return Err(format!("trailing fields in --op `{s}`"));
    }
    Ok(OpSpec {
        distance,
        aggregator,
        refinement,
    })
}

fn refinement_kind(choice: RefinementChoice, beta: &BooleanFn, order: LexOrder) -> Option<RefinementKind> {
    match choice {
        RefinementChoice::None => None,
        RefinementChoice::Closure => Some(RefinementKind::Closure(beta.clone())),
        RefinementChoice::Lex => Some(RefinementKind::Lex {
            order,
            beta: beta.clone(),
        }),
        RefinementChoice::LexClosure => Some(RefinementKind::LexClosure {
            order,
            beta: beta.clone(),
        }),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Merge(a) => cmd_merge(a, out, err),
        Command::Check(a) => cmd_check(a, out, err),
        Command::Reproduce(a) => cmd_reproduce(a, out, err),
        Command::Classify(a) => cmd_classify(a, out, err),
        Command::Closure(a) => cmd_closure(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

type CmdResult = std::io::Result<i32>;

fn fail(err: &mut dyn Write, code: i32, msg: impl std::fmt::Display) -> CmdResult {
    writeln!(err, "error: {msg}")?;
    Ok(code)
}

fn cmd_merge(a: &MergeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let text = if a.file.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&a.file)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => return fail(err, 2, format!("{}: {e}", a.file.display())),
    };
    let problem = match ProblemFile::parse(&text) {
        Ok(p) => p,
        Err(e) => {
            let code = if matches!(e.error, Error::InconsistentBase(_)) {
                3
            } else {
                2
            };
            return fail(err, code, e);
        }
    };
    let fragment = a.fragment.0.as_ref();
    if a.refinement != RefinementChoice::None && fragment.is_none() {
        return fail(err, 2, "a refinement needs --fragment");
    }
    let u = &problem.universe;
    let order = match &a.lex_order {
        Some(t) => match LexOrder::parse(u, t) {
            Ok(o) => o,
            Err(e) => return fail(err, 2, format!("--lex-order: {e}")),
        },
        None => LexOrder::Natural,
    };
    let profile = problem.profile();
    let mu = &problem.constraint;
    let base = DistanceOperator::new(a.distance.clone(), a.aggregator);
    let run = || -> crate::error::Result<_> {
        let rows = score_table(&profile, mu, &base.distance, base.aggregator)?;
        let m = base.apply(&profile, mu)?;
        let m_count = cardintersection(&m, &profile)?;
        let refined = match fragment.and_then(|f| refinement_kind(a.refinement, f.beta(), order.clone())) {
            Some(kind) => {
                let label = kind.label();
                let r = RefinedOperator::new(base.clone(), kind).apply(&profile, mu)?;
                let c = cardintersection(&r, &profile)?;
                Some((label, r, c))
            }
            None => None,
        };
        Ok((rows, m, m_count, refined))
    };
    let (rows, m, m_count, refined) = match run() {
        Ok(v) => v,
        Err(e) => return fail(err, 2, e),
    };
    let final_set = refined.as_ref().map_or(&m, |(_, r, _)| r);
    // fragment formula, or the reason there is none
    let formula = match fragment {
        None => None,
        Some(f) => {
            if let Some(w) = crate::interp::closure_witness(f.beta(), final_set) {
                write_merge(a, out, &problem, &rows, &m, m_count, refined.as_ref(), None)?;
                let e = w.into_error(f.beta());
                return fail(
                    err,
                    4,
                    format!("merge result is not expressible in {}: {e}", f.name()),
                );
            }
            match synthesize(final_set, f) {
                Ok(phi) => {
                    let phi = drop_redundant_clauses(&phi, u).unwrap_or(phi);
                    Some(Ok(phi.display(u).to_string()))
                }
                Err(Error::NoSyntacticFragment(_)) => {
                    Some(Err("closed, but the fragment has no clause syntax".to_string()))
                }
                Err(e) => return fail(err, 2, e),
            }
        }
    };
    write_merge(
        a,
        out,
        &problem,
        &rows,
        &m,
        m_count,
        refined.as_ref(),
        formula.as_ref(),
    )?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn write_merge(
    a: &MergeArgs,
    out: &mut dyn Write,
    problem: &ProblemFile,
    rows: &[crate::merge::ScoreRow],
    m: &ModelSet,
    m_count: usize,
    refined: Option<&(String, ModelSet, usize)>,
    formula: Option<&Result<String, String>>,
) -> std::io::Result<()> {
    let u = &problem.universe;
    let op_label = DistanceOperator::new(a.distance.clone(), a.aggregator).label();
    match a.format {
        Format::Machine => {
            writeln!(out, "atoms\t{}", u.atoms().join(" "))?;
            for (name, b) in &problem.bases {
                writeln!(out, "base\t{name}\t{}", encode_set(b.models()))?;
            }
            writeln!(out, "constraint\t{}", encode_set(&problem.constraint))?;
            writeln!(out, "operator\t{op_label}")?;
            for r in rows {
                let ds: Vec<String> = r.distances.iter().map(u64::to_string).collect();
                writeln!(out, "row\t{}\t{}\t{}", r.interpretation, ds.join(" "), r.score)?;
            }
            writeln!(out, "merge\t{}\t{m_count}", encode_set(m))?;
            if let Some((label, r, c)) = refined {
                writeln!(out, "refined\t{label}\t{}\t{c}", encode_set(r))?;
            }
            match formula {
                Some(Ok(f)) => writeln!(out, "formula\t{f}")?,
                Some(Err(why)) => writeln!(out, "formula\t-\t{why}")?,
                None => {}
            }
        }
        Format::Text => {
            writeln!(out, "atoms: {}", u.atoms().join(" "))?;
            for (name, b) in &problem.bases {
                writeln!(out, "base {name}: {}", b.models())?;
            }
            writeln!(out, "constraint: {}", problem.constraint)?;
            writeln!(out, "operator: {op_label}")?;
            writeln!(out)?;
            let names: Vec<&str> = problem.bases.iter().map(|(n, _)| n.as_str()).collect();
            let mut table = vec![{
                let mut h = vec!["".to_string()];
                h.extend(names.iter().map(|n| n.to_string()));
                h.push(a.aggregator.to_string());
                h
            }];
            for r in rows {
                let mut line = vec![r.interpretation.to_string()];
                line.extend(r.distances.iter().map(u64::to_string));
                line.push(r.score.to_string());
                table.push(line);
            }
            let cols = table[0].len();
            let widths: Vec<usize> = (0..cols)
                .map(|c| table.iter().map(|l| l[c].len()).max().unwrap_or(0))
                .collect();
            for line in &table {
                let cells: Vec<String> = line
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                writeln!(out, "  {}", cells.join("  ").trim_end())?;
            }
            writeln!(out)?;
            writeln!(out, "merge: {m}")?;
            writeln!(out, "#(merge,E): {m_count}")?;
            if let Some((label, r, c)) = refined {
                writeln!(out, "refined ({label}): {r}")?;
                writeln!(out, "#(refined,E): {c}")?;
            }
            match formula {
                Some(Ok(f)) => writeln!(out, "formula: {f}")?,
                Some(Err(why)) => writeln!(out, "formula: none ({why})")?,
                None => {}
            }
        }
    }
    Ok(())
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let fragment = a.fragment.0.clone();
    let base = DistanceOperator::new(a.op.distance.clone(), a.op.aggregator);
    let op: Box<dyn MergeOperator> = match a.op.refinement {
        RefinementChoice::None => Box::new(base),
        choice => {
            let Some(f) = fragment.as_ref() else {
                return fail(err, 2, "a refinement needs --fragment");
            };
            let kind = refinement_kind(choice, f.beta(), LexOrder::Natural).expect("not none");
            Box::new(RefinedOperator::new(base, kind))
        }
    };
    let space = SearchSpace::new(a.atoms, fragment.clone())
        .with_postulates(a.postulates.0.clone())
        .with_max_profile(a.max_profile)
        .with_limit(a.max_witnesses);
    let report = match search(&space, op.as_ref()) {
        Ok(r) => r,
        Err(e) => return fail(err, 2, e),
    };
    let frag_name = fragment.as_ref().map_or("all sets".to_string(), Fragment::name);
    match a.format {
        Format::Machine => {
            for o in &report.outcomes {
                writeln!(
                    out,
                    "summary\t{}\t{}\t{}",
                    o.postulate,
                    o.checked,
                    o.witnesses.len()
                )?;
            }
            for w in report.witnesses() {
                let outputs: Vec<String> = w
                    .outputs
                    .iter()
                    .map(|(n, s)| format!("{n}={}", encode_set(s)))
                    .collect();
                writeln!(
                    out,
                    "witness\t{}\t{}\t{}",
                    w.postulate,
                    w.instance.encode(),
                    outputs.join(" ")
                )?;
            }
        }
        Format::Text => {
            writeln!(out, "operator: {}", report.operator)?;
            writeln!(
                out,
                "space: {} atoms, {frag_name}, profiles of up to {} bases",
                a.atoms, a.max_profile
            )?;
            for o in &report.outcomes {
                let verdict = if o.witnesses.is_empty() { "ok" } else { "VIOLATED" };
                writeln!(
                    out,
                    "{:<4} {verdict:<8} checked {:>8}  witnesses {}",
                    o.postulate.to_string(),
                    o.checked,
                    o.witnesses.len()
                )?;
            }
            if report.witness_count() > 0 {
                writeln!(out)?;
                for w in report.witnesses() {
                    write!(out, "{}", w.render())?;
                }
            }
        }
    }
    Ok(if report.witness_count() == 0 { 0 } else { 1 })
}

fn cmd_reproduce(a: &ReproduceArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let ids: Vec<&str> = if a.id == "all" {
        fixture_ids().to_vec()
    } else {
        vec![a.id.as_str()]
    };
    let mut all_pass = true;
    for id in ids {
        let report = match reproduce(id) {
            Ok(r) => r,
            Err(e @ Error::UnknownFixture(_)) => {
                return fail(
                    err,
                    2,
                    format!("{e}; known fixtures: {}", fixture_ids().join(", ")),
                );
            }
            Err(e) => return fail(err, 2, e),
        };
        all_pass &= report.passes();
        match a.format {
            Format::Text => write!(out, "{report}")?,
            Format::Machine => {
                for c in &report.cells {
                    let verdict = if c.pass() { "ok" } else { "mismatch" };
                    writeln!(
                        out,
                        "cell\t{id}\t{}\t{}\t{}\t{verdict}",
                        c.label, c.expected, c.actual
                    )?;
                }
            }
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}

/// Atoms in order of first appearance.
fn atoms_in(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_ascii_lowercase() {
            let mut end = i + c.len_utf8();
            while let Some(&(j, d)) = chars.peek() {
                if d.is_ascii_lowercase() || d.is_ascii_digit() || d == '_' {
                    end = j + d.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            let name = &text[i..end];
            if !out.iter().any(|n| n == name) {
                out.push(name.to_string());
            }
        }
    }
    out
}

fn universe_arg(atoms: Option<&str>, fallback: &str) -> crate::error::Result<Universe> {
    match atoms {
        Some(list) => Universe::new(
            list.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty()),
        ),
        None => Universe::new(atoms_in(fallback)),
    }
}

fn cmd_classify(a: &ClassifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let u = match universe_arg(a.atoms.as_deref(), &a.formula) {
        Ok(u) => u,
        Err(e) => return fail(err, 2, e),
    };
    let phi = match parse(&a.formula, &u) {
        Ok(f) => f,
        Err(e) => return fail(err, 2, e),
    };
    let c = classify(&phi);
    let verdict = match c.verdict {
        Verdict::Cnf(k) => k.to_string(),
        Verdict::NonCnf => "not cnf".to_string(),
    };
    let semantic = match crate::formula::models(&phi, &u) {
        Ok(m) => Some((
            is_closed(&BooleanFn::and(), &m),
            is_closed(&BooleanFn::majority3(), &m),
        )),
        Err(_) => None,
    };
    let yn = |b: bool| if b { "yes" } else { "no" };
    match a.format {
        Format::Machine => {
            for (cl, k) in &c.clauses {
                writeln!(out, "clause\t{}\t{k}", cl.to_formula().display(&u))?;
            }
            writeln!(out, "verdict\t{verdict}")?;
            if let Some((h, k)) = semantic {
                writeln!(out, "closed\tand\t{}", yn(h))?;
                writeln!(out, "closed\tmaj3\t{}", yn(k))?;
            }
        }
        Format::Text => {
            for (cl, k) in &c.clauses {
                writeln!(out, "clause {}: {k}", cl.to_formula().display(&u))?;
            }
            writeln!(out, "verdict: {verdict}")?;
            if let Some((h, k)) = semantic {
                writeln!(out, "models closed under and: {}", yn(h))?;
                writeln!(out, "models closed under maj3: {}", yn(k))?;
            }
        }
    }
    Ok(0)
}

fn cmd_closure(a: &ClosureArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let u = match universe_arg(Some(&a.atoms), "") {
        Ok(u) => u,
        Err(e) => return fail(err, 2, e),
    };
    let m = match ModelSet::parse(&u, &a.models) {
        Ok(m) => m,
        Err(e) => return fail(err, 2, e),
    };
    let cl = closure(&a.beta, &m);
    match a.format {
        Format::Machine => {
            writeln!(out, "input\t{}", encode_set(&m))?;
            writeln!(out, "closure\t{}\t{}", a.beta, encode_set(&cl))?;
            writeln!(out, "closed\t{}", cl == m)?;
        }
        Format::Text => {
            writeln!(out, "closure under {}: {cl}", a.beta)?;
            writeln!(out, "input closed: {}", if cl == m { "yes" } else { "no" })?;
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn op_spec_parsing() {
        let s = parse_op_spec("hamming,gmax,lex-closure").unwrap();
        assert_eq!(s.distance, CountingDistance::Hamming);
        assert_eq!(s.aggregator, Aggregator::GMax);
        assert_eq!(s.refinement, RefinementChoice::LexClosure);
        let s = parse_op_spec("table:1,3,3,sigma").unwrap();
        assert_eq!(s.distance, CountingDistance::table(vec![1, 3, 3]).unwrap());
        assert_eq!(s.refinement, RefinementChoice::None);
        for bad in [
            "hamming",
            "euclid,sigma",
            "hamming,max",
            "hamming,sigma,foo",
            "hamming,sigma,lex,x",
            "table:0,sigma",
        ] {
            assert!(parse_op_spec(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn beta_parsing() {
        assert_eq!(parse_beta("0001").unwrap(), BooleanFn::and());
        assert_eq!(parse_beta("maj3").unwrap(), BooleanFn::majority3());
        assert!(parse_beta("1001").is_err());
        assert!(parse_beta("011").is_err());
        assert!(parse_fragment("beta:0111").unwrap().0.is_some());
    }

    #[test]
    fn atoms_follow_first_appearance() {
        assert_eq!(atoms_in("(b | a1) & !b -> T & c_2"), vec!["b", "a1", "c_2"]);
    }
}
