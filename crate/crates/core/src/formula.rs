//! Propositional formulas: parsing, printing, model enumeration, Horn/Krom
//! classification, and synthesis of a fragment formula from a closed model
//! set.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! iff     := implies ("<->" implies)*        left-associative
//! implies := or ("->" implies)?              right-associative
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "!" unary | "(" iff ")" | "T" | "F" | atom
//! atom    := [a-z][a-z0-9_]*
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::interp::{closure_witness, ClauseClass, Fragment, ModelSet, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Const(bool),
    Atom(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(index: usize) -> Self {
        Formula::Atom(index)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    /// Left-nested conjunction; `T` for an empty iterator.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Const(true))
    }

    /// Left-nested disjunction; `F` for an empty iterator.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Const(false))
    }

    /// Truth value under the interpretation given as a bit pattern.
    pub fn eval_bits(&self, bits: u32) -> bool {
        match self {
            Formula::Const(b) => *b,
            Formula::Atom(i) => bits & (1 << i) != 0,
            Formula::Not(f) => !f.eval_bits(bits),
            Formula::And(l, r) => l.eval_bits(bits) && r.eval_bits(bits),
            Formula::Or(l, r) => l.eval_bits(bits) || r.eval_bits(bits),
            Formula::Implies(l, r) => !l.eval_bits(bits) || r.eval_bits(bits),
            Formula::Iff(l, r) => l.eval_bits(bits) == r.eval_bits(bits),
        }
    }

    fn max_atom(&self) -> Option<usize> {
        match self {
            Formula::Const(_) => None,
            Formula::Atom(i) => Some(*i),
            Formula::Not(f) => f.max_atom(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.max_atom().max(r.max_atom())
            }
        }
    }

    pub fn check_atoms(&self, universe: &Universe) -> Result<()> {
        match self.max_atom() {
            Some(i) if i >= universe.len() => Err(Error::AtomOutOfRange {
                index: i,
                atoms: universe.len(),
            }),
            _ => Ok(()),
        }
    }

    /// Printer bound to a universe, e.g. `format!("{}", f.display(&u))`.
    pub fn display<'a>(&'a self, universe: &'a Universe) -> FormulaDisplay<'a> {
        FormulaDisplay {
            formula: self,
            universe,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) => 5,
            Formula::Const(_) | Formula::Atom(_) => 6,
        }
    }
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    universe: &'a Universe,
}

impl FormulaDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, node: &Formula) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, c: &Formula, parens: bool| {
            if parens {
                f.write_str("(")?;
                self.write(f, c)?;
                f.write_str(")")
            } else {
                self.write(f, c)
            }
        };
        match node {
            Formula::Const(true) => f.write_str("T"),
            Formula::Const(false) => f.write_str("F"),
            Formula::Atom(i) => match self.universe.atom(*i) {
                Some(name) => f.write_str(name),
                None => write!(f, "?{i}"),
            },
            Formula::Not(inner) => {
                f.write_str("!")?;
                child(f, inner, inner.precedence() < node.precedence())
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Iff(l, r) => {
                let p = node.precedence();
                let op = match node {
                    Formula::And(..) => " & ",
                    Formula::Or(..) => " | ",
                    _ => " <-> ",
                };
                child(f, l, l.precedence() < p)?;
                f.write_str(op)?;
                child(f, r, r.precedence() <= p)
            }
            Formula::Implies(l, r) => {
                let p = node.precedence();
                child(f, l, l.precedence() <= p)?;
                f.write_str(" -> ")?;
                child(f, r, r.precedence() < p)
            }
        }
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Atom(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' => Token::Not,
            b'&' => Token::And,
            b'|' => Token::Or,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'T' => Token::True,
            b'F' => Token::False,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Token::Iff
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len() && matches!(bytes[i + 1], b'a'..=b'z' | b'0'..=b'9' | b'_') {
                    i += 1;
                }
                Token::Atom(text[start..=i].to_string())
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    position: i,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    universe: &'a Universe,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implies()?;
        while self.eat(&Token::Iff) {
            let rhs = self.implies()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat(&Token::Implies) {
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat(&Token::Or) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let at = self.offset();
        let Some((_, tok)) = self.tokens.get(self.pos).cloned() else {
            return Err(Error::Syntax {
                position: at,
                message: "unexpected end of input".into(),
            });
        };
        self.pos += 1;
        match tok {
            Token::Not => Ok(Formula::not(self.unary()?)),
            Token::True => Ok(Formula::Const(true)),
            Token::False => Ok(Formula::Const(false)),
            Token::Atom(name) => match self.universe.index_of(&name) {
                Some(i) => Ok(Formula::Atom(i)),
                None => Err(Error::UnknownAtom { name, position: at }),
            },
            Token::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Token::RParen) {
                    return Err(Error::Syntax {
                        position: self.offset(),
                        message: "expected `)`".into(),
                    });
                }
                Ok(inner)
            }
            other => Err(Error::Syntax {
                position: at,
                message: format!("unexpected {}", describe(&other)),
            }),
        }
    }
}

fn describe(tok: &Token) -> &'static str {
    match tok {
        Token::And => "`&`",
        Token::Or => "`|`",
        Token::Implies => "`->`",
        Token::Iff => "`<->`",
        Token::RParen => "`)`",
        Token::LParen => "`(`",
        Token::Not => "`!`",
        Token::True | Token::False => "constant",
        Token::Atom(_) => "atom",
    }
}

/// Parses `text` against the atoms of `universe`.
pub fn parse(text: &str, universe: &Universe) -> Result<Formula> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        universe,
    };
    let f = p.iff()?;
    if p.pos != p.tokens.len() {
        let (at, tok) = &p.tokens[p.pos];
        return Err(Error::Syntax {
            position: *at,
            message: format!("unexpected {} after complete formula", describe(tok)),
        });
    }
    Ok(f)
}

/// All models of `phi` over `universe`, by enumeration of `2^|U|` interpretations.
pub fn models(phi: &Formula, universe: &Universe) -> Result<ModelSet> {
    models_with_cap(phi, universe, crate::interp::DEFAULT_ENUM_CAP)
}

pub fn models_with_cap(phi: &Formula, universe: &Universe, cap: usize) -> Result<ModelSet> {
    universe.check_enumerable(cap)?;
    phi.check_atoms(universe)?;
    let members = (0..=universe.full_mask()).filter(|&w| phi.eval_bits(w)).collect();
    Ok(ModelSet::from_sorted_unchecked(universe, members))
}

/// A disjunction of literals, as bit masks of positive and negative atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    pos: u32,
    neg: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub atom: usize,
    pub positive: bool,
}

impl Clause {
    /// Clause over the given literals; duplicates collapse. May be tautological.
    pub fn new<I: IntoIterator<Item = Literal>>(literals: I) -> Self {
        let mut c = Clause { pos: 0, neg: 0 };
        for l in literals {
            if l.positive {
                c.pos |= 1 << l.atom;
            } else {
                c.neg |= 1 << l.atom;
            }
        }
        c
    }

    pub(crate) fn from_masks(pos: u32, neg: u32) -> Self {
        Clause { pos, neg }
    }

    pub fn positive_mask(&self) -> u32 {
        self.pos
    }

    pub fn negative_mask(&self) -> u32 {
        self.neg
    }

    pub fn len(&self) -> usize {
        (self.pos.count_ones() + self.neg.count_ones()) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.pos == 0 && self.neg == 0
    }

    pub fn positive_count(&self) -> usize {
        self.pos.count_ones() as usize
    }

    pub fn is_tautology(&self) -> bool {
        self.pos & self.neg != 0
    }

    pub fn is_horn(&self) -> bool {
        self.positive_count() <= 1
    }

    pub fn is_krom(&self) -> bool {
        self.len() <= 2
    }

    pub fn kind(&self) -> ClauseKind {
        match (self.is_horn(), self.is_krom()) {
            (true, true) => ClauseKind::Both,
            (true, false) => ClauseKind::Horn,
            (false, true) => ClauseKind::Krom,
            (false, false) => ClauseKind::General,
        }
    }

    pub fn satisfied_by(&self, bits: u32) -> bool {
        bits & self.pos != 0 || !bits & self.neg != 0
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        (0..32usize).flat_map(move |i| {
            let p = (self.pos & (1 << i) != 0).then_some(Literal {
                atom: i,
                positive: true,
            });
            let n = (self.neg & (1 << i) != 0).then_some(Literal {
                atom: i,
                positive: false,
            });
            p.into_iter().chain(n)
        })
    }

    /// Disjunction of literals in atom order; `F` for the empty clause.
    pub fn to_formula(&self) -> Formula {
        Formula::disjunction(self.literals().map(|l| {
            if l.positive {
                Formula::Atom(l.atom)
            } else {
                Formula::not(Formula::Atom(l.atom))
            }
        }))
    }

    /// `self` subsumes `other` when its literals are a subset of other's.
    pub fn subsumes(&self, other: &Clause) -> bool {
        self.pos & !other.pos == 0 && self.neg & !other.neg == 0
    }
}

impl ClauseClass {
    pub fn admits(&self, clause: &Clause) -> bool {
        match self {
            ClauseClass::Horn => clause.is_horn(),
            ClauseClass::Krom => clause.is_krom(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClauseKind {
    Horn,
    Krom,
    Both,
    General,
}

impl ClauseKind {
    fn meet(self, other: ClauseKind) -> ClauseKind {
        use ClauseKind::*;
        match (self, other) {
            (Both, k) | (k, Both) => k,
            (Horn, Horn) => Horn,
            (Krom, Krom) => Krom,
            _ => General,
        }
    }

    pub fn is_horn(self) -> bool {
        matches!(self, ClauseKind::Horn | ClauseKind::Both)
    }

    pub fn is_krom(self) -> bool {
        matches!(self, ClauseKind::Krom | ClauseKind::Both)
    }
}

impl fmt::Display for ClauseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClauseKind::Horn => "horn",
            ClauseKind::Krom => "krom",
            ClauseKind::Both => "horn+krom",
            ClauseKind::General => "general",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Conjunction of clauses; the kind holds for every clause.
    Cnf(ClauseKind),
    NonCnf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub clauses: Vec<(Clause, ClauseKind)>,
    pub verdict: Verdict,
}

fn collect_conjuncts<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::And(l, r) => {
            collect_conjuncts(l, out);
            collect_conjuncts(r, out);
        }
        other => out.push(other),
    }
}

fn collect_literals(f: &Formula, out: &mut Vec<Literal>) -> bool {
    match f {
        Formula::Or(l, r) => collect_literals(l, out) && collect_literals(r, out),
        Formula::Atom(i) => {
            out.push(Literal {
                atom: *i,
                positive: true,
            });
            true
        }
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Atom(i) => {
                out.push(Literal {
                    atom: *i,
                    positive: false,
                });
                true
            }
            _ => false,
        },
        Formula::Const(false) => true,
        _ => false,
    }
}

/// Syntactic Horn/Krom classification of a CNF formula.
///
/// A top-level `T` is the empty conjunction and `F` (alone or as a disjunct)
/// contributes nothing to its clause. Anything else outside CNF gives
/// [`Verdict::NonCnf`].
pub fn classify(phi: &Formula) -> Classification {
    if *phi == Formula::Const(true) {
        return Classification {
            clauses: Vec::new(),
            verdict: Verdict::Cnf(ClauseKind::Both),
        };
    }
    let mut conjuncts = Vec::new();
    collect_conjuncts(phi, &mut conjuncts);
    let mut clauses = Vec::new();
    for c in conjuncts {
        let mut lits = Vec::new();
        if !collect_literals(c, &mut lits) {
            return Classification {
                clauses: Vec::new(),
                verdict: Verdict::NonCnf,
            };
        }
        let clause = Clause::new(lits);
        clauses.push((clause, clause.kind()));
    }
    let overall = clauses.iter().fold(ClauseKind::Both, |acc, (_, k)| acc.meet(*k));
    Classification {
        clauses,
        verdict: Verdict::Cnf(overall),
    }
}

fn candidate_clauses(class: ClauseClass, n: usize) -> Vec<Clause> {
    let mut out = Vec::new();
    match class {
        ClauseClass::Horn => {
            for neg in 0u32..(1 << n) {
                out.push(Clause::from_masks(0, neg));
                for head in 0..n {
                    if neg & (1 << head) == 0 {
                        out.push(Clause::from_masks(1 << head, neg));
                    }
                }
            }
        }
        ClauseClass::Krom => {
            let lits: Vec<(u32, u32)> = (0..n).flat_map(|i| [(1u32 << i, 0u32), (0, 1u32 << i)]).collect();
            out.push(Clause::from_masks(0, 0));
            for (i, a) in lits.iter().enumerate() {
                out.push(Clause::from_masks(a.0, a.1));
                for b in &lits[i + 1..] {
                    let c = Clause::from_masks(a.0 | b.0, a.1 | b.1);
                    if !c.is_tautology() {
                        out.push(c);
                    }
                }
            }
        }
    }
    // shorter first, then by literals in atom order with positive before negative
    out.sort_by_key(|c| {
        let lits: Vec<(usize, bool)> = c.literals().map(|l| (l.atom, !l.positive)).collect();
        (c.len(), lits)
    });
    out.dedup();
    out
}

/// Fragment formula whose models are exactly `set`.
///
/// Conjoins every non-tautological fragment clause satisfied by all members,
/// keeping only clauses not subsumed by a shorter kept clause. For a closed
/// set this conjunction has exactly the closure as its models, and the closure
/// is the set itself; the result is re-checked by enumeration.
pub fn synthesize(set: &ModelSet, fragment: &Fragment) -> Result<Formula> {
    let class = fragment
        .clause_class()
        .ok_or_else(|| Error::NoSyntacticFragment(fragment.name()))?;
    let universe = set.universe();
    if let Some(w) = closure_witness(fragment.beta(), set) {
        return Err(w.into_error(fragment.beta()));
    }
    if set.is_empty() {
        return Ok(Formula::and(Formula::Atom(0), Formula::not(Formula::Atom(0))));
    }
    let mut kept: Vec<Clause> = Vec::new();
    for c in candidate_clauses(class, universe.len()) {
        if kept.iter().any(|k| k.subsumes(&c)) {
            continue;
        }
        if set.bits().iter().all(|&w| c.satisfied_by(w)) {
            kept.push(c);
        }
    }
    let result = Formula::conjunction(kept.iter().map(Clause::to_formula));
    if models_with_cap(&result, universe, crate::interp::MAX_ATOMS)? != *set {
        return Err(Error::SynthesisMismatch);
    }
    Ok(result)
}

/// Drops clauses entailed by the remaining ones, checked by enumeration.
pub fn drop_redundant_clauses(phi: &Formula, universe: &Universe) -> Result<Formula> {
    let target = models(phi, universe)?;
    let mut conjuncts: Vec<Formula> = {
        let mut v = Vec::new();
        collect_conjuncts(phi, &mut v);
        v.into_iter().cloned().collect()
    };
    let mut i = 0;
    while i < conjuncts.len() {
        let rest = Formula::conjunction(
            conjuncts
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, f)| f.clone()),
        );
        if models(&rest, universe)? == target {
            conjuncts.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(Formula::conjunction(conjuncts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::{is_closed, BooleanFn};
    use proptest::prelude::*;

    fn ab() -> Universe {
        Universe::new(["a", "b"]).unwrap()
    }

    fn show(f: &Formula, u: &Universe) -> String {
        f.display(u).to_string()
    }

    #[test]
    fn parses_negated_disjunctions_and_top() {
        let u = ab();
        let mu = parse("!a | !b", &u).unwrap();
        assert_eq!(
            mu,
            Formula::or(Formula::not(Formula::Atom(0)), Formula::not(Formula::Atom(1)))
        );
        let phi = parse("(a | b) & (!a | !b)", &u).unwrap();
        assert_eq!(show(&phi, &u), "(a | b) & (!a | !b)");
        assert_eq!(models(&parse("T", &u).unwrap(), &u).unwrap().len(), 4);
    }

    #[test]
    fn precedence_and_associativity() {
        let u = Universe::letters(3).unwrap();
        let f = parse("a -> b -> c", &u).unwrap();
        assert_eq!(
            f,
            Formula::implies(
                Formula::Atom(0),
                Formula::implies(Formula::Atom(1), Formula::Atom(2))
            )
        );
        let g = parse("!a & b | c <-> a", &u).unwrap();
        assert_eq!(show(&g, &u), "!a & b | c <-> a");
        let h = parse("(a -> b) -> c", &u).unwrap();
        assert_eq!(show(&h, &u), "(a -> b) -> c");
        let k = parse("a & (b & c)", &u).unwrap();
        assert_eq!(show(&k, &u), "a & (b & c)");
        assert_eq!(show(&parse("!(a | b)", &u).unwrap(), &u), "!(a | b)");
        assert_eq!(show(&parse("!!a", &u).unwrap(), &u), "!!a");
    }

    #[test]
    fn parse_errors() {
        let u = ab();
        assert_eq!(
            parse("a & z", &u),
            Err(Error::UnknownAtom {
                name: "z".into(),
                position: 4
            })
        );
        assert!(matches!(parse("a &", &u), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(parse("(a", &u), Err(Error::Syntax { .. })));
        assert!(matches!(parse("a b", &u), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(
            parse("a # b", &u),
            Err(Error::Syntax { position: 2, .. })
        ));
        assert!(matches!(parse("", &u), Err(Error::Syntax { position: 0, .. })));
    }

    #[test]
    fn model_examples() {
        let u = ab();
        let mu = models(&parse("!a | !b", &u).unwrap(), &u).unwrap();
        assert_eq!(mu, ModelSet::from_bits(&u, [0, 1, 2]).unwrap());
        assert!(models(&Formula::Const(false), &u).unwrap().is_empty());
        let phi = models(&parse("(a | b) & (!a | !b)", &u).unwrap(), &u).unwrap();
        assert_eq!(phi, ModelSet::from_bits(&u, [1, 2]).unwrap());
        let big = Universe::letters(17).unwrap();
        assert!(matches!(
            models(&Formula::Const(true), &big),
            Err(Error::UniverseTooLarge { size: 17, cap: 16 })
        ));
        assert!(matches!(
            models(&Formula::Atom(5), &u),
            Err(Error::AtomOutOfRange { .. })
        ));
    }

    #[test]
    fn classification_examples() {
        let u = Universe::letters(3).unwrap();
        let c = |s: &str| classify(&parse(s, &u).unwrap()).verdict;
        assert_eq!(c("!a | !b"), Verdict::Cnf(ClauseKind::Both));
        assert_eq!(c("a | b"), Verdict::Cnf(ClauseKind::Krom));
        assert_eq!(c("a | b | !c"), Verdict::Cnf(ClauseKind::General));
        assert_eq!(c("!a | !b | c"), Verdict::Cnf(ClauseKind::Horn));
        assert_eq!(c("(a | b) & (!a | !b | c)"), Verdict::Cnf(ClauseKind::General));
        assert_eq!(c("a -> b"), Verdict::NonCnf);
        assert_eq!(c("!(a & b)"), Verdict::NonCnf);
        assert_eq!(c("T"), Verdict::Cnf(ClauseKind::Both));
        assert_eq!(c("F"), Verdict::Cnf(ClauseKind::Both));
        let full = classify(&parse("(a | b) & !c", &u).unwrap());
        assert_eq!(full.clauses.len(), 2);
        assert_eq!(full.clauses[1].1, ClauseKind::Both);
    }

    #[test]
    fn synthesis_examples() {
        let u = ab();
        let horn = synthesize(&ModelSet::from_bits(&u, [0, 1, 2]).unwrap(), &Fragment::horn()).unwrap();
        assert_eq!(show(&horn, &u), "!a | !b");

        let krom = synthesize(&ModelSet::from_bits(&u, [1, 2]).unwrap(), &Fragment::krom()).unwrap();
        assert_eq!(
            models(&krom, &u).unwrap(),
            ModelSet::from_bits(&u, [1, 2]).unwrap()
        );
        assert_eq!(show(&krom, &u), "(a | b) & (!a | !b)");

        let err = synthesize(&ModelSet::from_bits(&u, [1, 2]).unwrap(), &Fragment::horn()).unwrap_err();
        assert!(matches!(err, Error::NotClosed { .. }));

        let empty = synthesize(&ModelSet::empty(&u), &Fragment::horn()).unwrap();
        assert_eq!(show(&empty, &u), "a & !a");
        let all = synthesize(&ModelSet::full(&u, 16).unwrap(), &Fragment::krom()).unwrap();
        assert_eq!(all, Formula::Const(true));

        let semantic = Fragment::from_beta(BooleanFn::and());
        assert!(matches!(
            synthesize(&ModelSet::empty(&u), &semantic),
            Err(Error::NoSyntacticFragment(_))
        ));
    }

    #[test]
    fn redundant_clause_pass_keeps_models() {
        let u = Universe::letters(3).unwrap();
        let f = parse("(!a | b) & (!b | c) & (!a | c)", &u).unwrap();
        let g = drop_redundant_clauses(&f, &u).unwrap();
        assert_eq!(models(&f, &u).unwrap(), models(&g, &u).unwrap());
        assert_eq!(show(&g, &u), "(!a | b) & (!b | c)");
    }

    /// Every clause set of at most 4 clauses from `pool`.
    fn clause_sets(pool: &[Clause], max: usize) -> Vec<Vec<Clause>> {
        let mut out = vec![Vec::new()];
        let mut frontier: Vec<(usize, Vec<Clause>)> = vec![(0, Vec::new())];
        for _ in 0..max {
            let mut next = Vec::new();
            for (start, set) in &frontier {
                for (i, c) in pool.iter().enumerate().skip(*start) {
                    let mut s = set.clone();
                    s.push(*c);
                    out.push(s.clone());
                    next.push((i + 1, s));
                }
            }
            frontier = next;
        }
        out
    }

    #[test]
    fn horn_and_krom_formulas_are_closed_and_round_trip() {
        let u = Universe::letters(3).unwrap();
        for (class, beta, fragment) in [
            (ClauseClass::Horn, BooleanFn::and(), Fragment::horn()),
            (ClauseClass::Krom, BooleanFn::majority3(), Fragment::krom()),
        ] {
            let pool: Vec<Clause> = candidate_clauses(class, 3);
            for set in clause_sets(&pool, 4) {
                let phi = Formula::conjunction(set.iter().map(Clause::to_formula));
                let verdict = classify(&phi).verdict;
                match class {
                    ClauseClass::Horn => assert!(matches!(verdict, Verdict::Cnf(k) if k.is_horn())),
                    ClauseClass::Krom => assert!(matches!(verdict, Verdict::Cnf(k) if k.is_krom())),
                }
                let m = models(&phi, &u).unwrap();
                assert!(is_closed(&beta, &m), "{} not closed", show(&phi, &u));
                let back = synthesize(&m, &fragment).unwrap();
                assert_eq!(models(&back, &u).unwrap(), m);
            }
        }
    }

    fn arb_formula(atoms: usize) -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            (0..atoms).prop_map(Formula::Atom),
            any::<bool>().prop_map(Formula::Const),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
                (inner.clone(), inner).prop_map(|(l, r)| Formula::iff(l, r)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(f in arb_formula(3)) {
            let u = Universe::letters(3).unwrap();
            let text = show(&f, &u);
            prop_assert_eq!(parse(&text, &u).unwrap(), f);
        }
    }
}
