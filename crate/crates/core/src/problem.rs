//! Line-oriented problem files:
//!
//! ```text
//! # comments run to the end of the line
//! atoms: a b
//! base k1: a & (b -> a)
//! base k2: models {b} {a,b}
//! constraint: !a | !b
//! ```
//!
//! `atoms` comes first. Several `constraint` lines are conjoined; without
//! one the constraint is `T`.

use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{models, parse, Formula};
use crate::interp::{ModelSet, Universe, DEFAULT_ENUM_CAP};
use crate::merge::{Base, Profile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemError {
    /// 1-based line number.
    pub line: usize,
    pub error: Error,
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.error)
    }
}

impl std::error::Error for ProblemError {}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub universe: Universe,
    pub bases: Vec<(String, Base)>,
    pub constraint: ModelSet,
    pub constraint_source: Vec<Formula>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> std::result::Result<ProblemFile, ProblemError> {
        let mut universe: Option<Universe> = None;
        let mut bases: Vec<(String, Base)> = Vec::new();
        let mut constraint: Option<ModelSet> = None;
        let mut constraint_source = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let at = |error: Error| ProblemError { line, error };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (head, body) = content.split_once(':').ok_or_else(|| {
                at(Error::Syntax {
                    position: 0,
                    message: "expected `atoms:`, `base <name>:` or `constraint:`".into(),
                })
            })?;
            let head = head.trim();
            let body = body.trim();
            if head == "atoms" {
                if universe.is_some() {
                    return Err(at(syntax("atoms declared twice")));
                }
                let names = body
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty());
                let u = Universe::new(names).map_err(at)?;
                u.check_enumerable(DEFAULT_ENUM_CAP).map_err(at)?;
                universe = Some(u);
                continue;
            }
            let u = universe
                .as_ref()
                .ok_or_else(|| at(syntax("`atoms:` must come before bases and constraints")))?;
            if let Some(name) = head.strip_prefix("base") {
                let name = name.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(at(syntax("expected `base <name>:`")));
                }
                if bases.iter().any(|(n, _)| n == name) {
                    return Err(at(syntax(&format!("base `{name}` declared twice"))));
                }
                let base = match body.strip_prefix("models") {
                    Some(list) => Base::with_source(ModelSet::parse(u, list).map_err(at)?, Vec::new()),
                    None => {
                        let phi = parse(body, u).map_err(at)?;
                        Base::with_source(models(&phi, u).map_err(at)?, vec![phi])
                    }
                };
                let base = base.map_err(|_| at(Error::InconsistentBase(name.to_string())))?;
                bases.push((name.to_string(), base));
            } else if head == "constraint" {
                let m = match body.strip_prefix("models") {
                    Some(list) => ModelSet::parse(u, list).map_err(at)?,
                    None => {
                        let phi = parse(body, u).map_err(at)?;
                        let m = models(&phi, u).map_err(at)?;
                        constraint_source.push(phi);
                        m
                    }
                };
                constraint = Some(match constraint {
                    Some(prev) => prev.intersection(&m).map_err(at)?,
                    None => m,
                });
            } else {
                return Err(at(syntax(&format!("unknown directive `{head}`"))));
            }
        }
        let universe = universe.ok_or(ProblemError {
            line: last_line.max(1),
            error: syntax("missing `atoms:` declaration"),
        })?;
        if bases.is_empty() {
            return Err(ProblemError {
                line: last_line.max(1),
                error: Error::EmptyProfile,
            });
        }
        let constraint = match constraint {
            Some(c) => c,
            None => ModelSet::full(&universe, DEFAULT_ENUM_CAP).expect("universe size checked"),
        };
        Ok(ProblemFile {
            universe,
            bases,
            constraint,
            constraint_source,
        })
    }

    pub fn profile(&self) -> Profile {
        Profile::new(self.bases.iter().map(|(_, b)| b.clone()).collect())
            .expect("at least one base over one universe")
    }
}

fn syntax(message: &str) -> Error {
    Error::Syntax {
        position: 0,
        message: message.to_string(),
    }
}

/// Convenience for callers that only need the error value.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    ProblemFile::parse(text).map_err(|e| e.error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_formulas_models_and_comments() {
        let p = ProblemFile::parse(
            "# two agents\natoms: a b\nbase k1: a   # likes a\nbase k2: models {b} {a,b}\nconstraint: !a | !b\n",
        )
        .unwrap();
        assert_eq!(p.bases.len(), 2);
        assert_eq!(p.bases[0].1.models().to_string(), "{a}, {a,b}");
        assert_eq!(p.bases[1].1.models().to_string(), "{b}, {a,b}");
        assert_eq!(p.constraint.to_string(), "{}, {a}, {b}");
        assert_eq!(p.profile().len(), 2);
    }

    #[test]
    fn constraints_conjoin_and_default_to_top() {
        let p = ProblemFile::parse("atoms: a b\nbase k: T\nconstraint: a | b\nconstraint: !a\n").unwrap();
        assert_eq!(p.constraint.to_string(), "{b}");
        let p = ProblemFile::parse("atoms: a\nbase k: a\n").unwrap();
        assert_eq!(p.constraint.len(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = ProblemFile::parse("atoms: a b\nbase k: a &\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.error, Error::Syntax { .. }));
        let e = ProblemFile::parse("atoms: a\nbase k: a & !a\n").unwrap_err();
        assert_eq!(e.error, Error::InconsistentBase("k".into()));
        let e = ProblemFile::parse("base k: a\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = ProblemFile::parse("atoms: a\nbase k: z\n").unwrap_err();
        assert!(matches!(e.error, Error::UnknownAtom { .. }));
        let e = ProblemFile::parse("atoms: a\n").unwrap_err();
        assert_eq!(e.error, Error::EmptyProfile);
        let e = ProblemFile::parse("atoms: a\nbase k: a\nbase k: a\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(ProblemFile::parse("atoms: a\nfoo: a\n").is_err());
    }
}
