//! Belief merging for propositional fragments.
//!
//! Model-based merge operators (counting distance plus Σ or GMax
//! aggregation), refinements that move their results into a fragment whose
//! model sets are closed under a Boolean function (Horn under AND, Krom under
//! ternary majority, or any user-supplied symmetric function), and
//! exhaustive checkers for the IC0–IC8 merging postulates.
//!
//! ```
//! use fragmerge::{formula, merge, refine, interp::{BooleanFn, Universe}};
//!
//! let u = Universe::new(["a", "b"]).unwrap();
//! let k1 = formula::models(&formula::parse("a", &u).unwrap(), &u).unwrap();
//! let k2 = formula::models(&formula::parse("b", &u).unwrap(), &u).unwrap();
//! let mu = formula::models(&formula::parse("!a | !b", &u).unwrap(), &u).unwrap();
//! let e = merge::Profile::from_model_sets([k1, k2]).unwrap();
//!
//! let op = merge::DistanceOperator::new(merge::CountingDistance::Hamming, merge::Aggregator::Sum);
//! let horn = refine::RefinedOperator::new(op, refine::RefinementKind::closure(BooleanFn::and()));
//! use fragmerge::merge::MergeOperator;
//! assert_eq!(horn.apply(&e, &mu).unwrap().to_string(), "{}, {a}, {b}");
//! ```

pub mod cli;
pub mod error;
pub mod formula;
pub mod interp;
pub mod merge;
pub mod postulates;
pub mod problem;
pub mod refine;
pub mod space;

pub use error::{Error, Result};
pub use interp::{BooleanFn, Fragment, Interpretation, ModelSet, Universe};
pub use merge::{Aggregator, Base, CountingDistance, DistanceOperator, MergeOperator, Profile};
pub use refine::{LexOrder, RefinedOperator, RefinementKind};
