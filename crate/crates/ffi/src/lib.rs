//! C ABI over `fragmerge`.
//!
//! Objects are opaque handles created by `fm_*_new` (or returned through
//! out-parameters) and released with the matching `fm_*_free`. Every fallible
//! call returns an [`FmStatus`]; on failure the message is available from
//! [`fm_last_error_message`] on the same thread until the next failing call.
//! Strings handed out by the library are freed with [`fm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fragmerge::formula;
use fragmerge::interp::{closure, is_closed};
use fragmerge::postulates;
use fragmerge::refine::cardintersection;
use fragmerge::{
    Aggregator, CountingDistance, DistanceOperator, Error, Fragment, MergeOperator, ModelSet, Profile,
    RefinedOperator, RefinementKind, Universe,
};

/// Status codes. `FM_OK` is zero; everything else is a failure.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmStatus {
    FmOk = 0,
    FmNullPointer = 1,
    /// Not valid UTF-8 or otherwise malformed.
    FmInvalidArgument = 2,
    FmSyntax = 3,
    FmUniverseMismatch = 4,
    FmInconsistentBase = 5,
    FmEmptyProfile = 6,
    /// The set is not closed under the fragment's function.
    FmNotClosed = 7,
    FmUnknownFixture = 8,
    /// The caller's buffer is too small; the required length was written.
    FmBufferTooSmall = 9,
    FmPanic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmDistance {
    FmHamming = 0,
    FmDrastic = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmAggregator {
    FmSum = 0,
    FmGmax = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmRefinement {
    FmNoRefinement = 0,
    FmClosure = 1,
    FmLex = 2,
    FmLexClosure = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmFragment {
    FmHorn = 0,
    FmKrom = 1,
}

/// Ordered atom names.
pub struct FmUniverse(Universe);

/// A set of interpretations over one universe.
pub struct FmModelSet(ModelSet);

/// A growing list of bases over one universe.
pub struct FmProfile {
    universe: Universe,
    bases: Vec<ModelSet>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(FmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Syntax { .. } | Error::UnknownAtom { .. } => FmStatus::FmSyntax,
            Error::UniverseMismatch => FmStatus::FmUniverseMismatch,
            Error::InconsistentBase(_) => FmStatus::FmInconsistentBase,
            Error::EmptyProfile => FmStatus::FmEmptyProfile,
            Error::NotClosed { .. } => FmStatus::FmNotClosed,
            Error::UnknownFixture(_) => FmStatus::FmUnknownFixture,
            _ => FmStatus::FmInvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(FmStatus::FmNullPointer, format!("{what} is null"))
}

/// Runs `f`, turning errors and panics into a status plus a stored message.
fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> FmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FmStatus::FmOk,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FmStatus::FmPanic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(FmStatus::FmInvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn obj<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s)
        .map_err(|_| Failure(FmStatus::FmInvalidArgument, "nul in output".into()))?
        .into_raw();
    Ok(())
}

fn fragment(f: FmFragment) -> Fragment {
    match f {
        FmFragment::FmHorn => Fragment::horn(),
        FmFragment::FmKrom => Fragment::krom(),
    }
}

/// Message of the last failing call on this thread, or null. Owned by the
/// library; valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn fm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a universe from atom names separated by whitespace or commas.
///
/// # Safety
/// `atoms` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fm_universe_new(atoms: *const c_char, out: *mut *mut FmUniverse) -> FmStatus {
    guard(|| {
        let text = str_arg(atoms, "atoms")?;
        let u = Universe::new(
            text.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty()),
        )?;
        put(out, FmUniverse(u))
    })
}

/// # Safety
/// `u` must be null or a handle from `fm_universe_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fm_universe_free(u: *mut FmUniverse) {
    if !u.is_null() {
        drop(Box::from_raw(u));
    }
}

/// Number of atoms, or 0 for a null handle.
///
/// # Safety
/// `u` must be null or a live universe handle.
#[no_mangle]
pub unsafe extern "C" fn fm_universe_len(u: *const FmUniverse) -> usize {
    u.as_ref().map_or(0, |u| u.0.len())
}

/// Models of a formula such as `a & (b -> !c)`.
///
/// # Safety
/// Pointers must be valid; `formula` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn fm_formula_models(
    u: *const FmUniverse,
    formula: *const c_char,
    out: *mut *mut FmModelSet,
) -> FmStatus {
    guard(|| {
        let u = &obj(u, "universe")?.0;
        let phi = formula::parse(str_arg(formula, "formula")?, u)?;
        put(out, FmModelSet(formula::models(&phi, u)?))
    })
}

/// Parses a set written as `{} {a} {a,b}`.
///
/// # Safety
/// Pointers must be valid; `text` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn fm_model_set_parse(
    u: *const FmUniverse,
    text: *const c_char,
    out: *mut *mut FmModelSet,
) -> FmStatus {
    guard(|| {
        let u = &obj(u, "universe")?.0;
        put(out, FmModelSet(ModelSet::parse(u, str_arg(text, "text")?)?))
    })
}

/// Builds a set from interpretation bit patterns (bit `i` is atom `i`).
/// Duplicates are dropped.
///
/// # Safety
/// `bits` must point to `len` values (or be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn fm_model_set_from_bits(
    u: *const FmUniverse,
    bits: *const u32,
    len: usize,
    out: *mut *mut FmModelSet,
) -> FmStatus {
    guard(|| {
        let u = &obj(u, "universe")?.0;
        let items: &[u32] = if len == 0 {
            &[]
        } else if bits.is_null() {
            return Err(null("bits"));
        } else {
            std::slice::from_raw_parts(bits, len)
        };
        put(out, FmModelSet(ModelSet::from_bits(u, items.iter().copied())?))
    })
}

/// # Safety
/// `m` must be null or a live model-set handle.
#[no_mangle]
pub unsafe extern "C" fn fm_model_set_free(m: *mut FmModelSet) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of members, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live model-set handle.
#[no_mangle]
pub unsafe extern "C" fn fm_model_set_len(m: *const FmModelSet) -> usize {
    m.as_ref().map_or(0, |m| m.0.len())
}

/// Copies the members in ascending order into `buf`. Always writes the
/// member count to `written`; returns `FM_BUFFER_TOO_SMALL` if it exceeds `cap`.
///
/// # Safety
/// `buf` must have room for `cap` values; `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fm_model_set_bits(
    m: *const FmModelSet,
    buf: *mut u32,
    cap: usize,
    written: *mut usize,
) -> FmStatus {
    guard(|| {
        let bits = obj(m, "set")?.0.bits();
        if written.is_null() {
            return Err(null("written"));
        }
        *written = bits.len();
        if bits.len() > cap {
            return Err(Failure(
                FmStatus::FmBufferTooSmall,
                format!("{} members do not fit in {cap}", bits.len()),
            ));
        }
        if !bits.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(bits.as_ptr(), buf, bits.len());
        }
        Ok(())
    })
}

/// Renders the set as `{}, {a}, {a,b}`; an empty set renders as `(none)`.
///
/// # Safety
/// `out` receives a string to release with `fm_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fm_model_set_to_string(m: *const FmModelSet, out: *mut *mut c_char) -> FmStatus {
    guard(|| put_string(out, obj(m, "set")?.0.to_string()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn fm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// An empty profile; add bases with `fm_profile_push`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fm_profile_new(u: *const FmUniverse, out: *mut *mut FmProfile) -> FmStatus {
    guard(|| {
        let u = obj(u, "universe")?.0.clone();
        put(
            out,
            FmProfile {
                universe: u,
                bases: Vec::new(),
            },
        )
    })
}

/// Appends a copy of `base`, which must be non-empty.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fm_profile_push(p: *mut FmProfile, base: *const FmModelSet) -> FmStatus {
    guard(|| {
        let p = p.as_mut().ok_or_else(|| null("profile"))?;
        let base = &obj(base, "base")?.0;
        if base.universe() != &p.universe {
            return Err(Error::UniverseMismatch.into());
        }
        if base.is_empty() {
            let name = format!("#{}", p.bases.len() + 1);
            return Err(Error::InconsistentBase(name).into());
        }
        p.bases.push(base.clone());
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a live profile handle.
#[no_mangle]
pub unsafe extern "C" fn fm_profile_free(p: *mut FmProfile) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

fn profile_of(p: &FmProfile) -> Result<Profile, Failure> {
    Ok(Profile::from_model_sets(p.bases.iter().cloned())?)
}

/// Merges the profile under `mu`, optionally refining into `frag`.
/// `frag` is ignored when `refinement` is `FM_NO_REFINEMENT`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fm_merge(
    profile: *const FmProfile,
    mu: *const FmModelSet,
    distance: FmDistance,
    aggregator: FmAggregator,
    refinement: FmRefinement,
    frag: FmFragment,
    out: *mut *mut FmModelSet,
) -> FmStatus {
    guard(|| {
        let e = profile_of(obj(profile, "profile")?)?;
        let mu = &obj(mu, "mu")?.0;
        let d = match distance {
            FmDistance::FmHamming => CountingDistance::Hamming,
            FmDistance::FmDrastic => CountingDistance::Drastic,
        };
        let f = match aggregator {
            FmAggregator::FmSum => Aggregator::Sum,
            FmAggregator::FmGmax => Aggregator::GMax,
        };
        let base = DistanceOperator::new(d, f);
        let beta = fragment(frag).beta().clone();
        let result = match refinement {
            FmRefinement::FmNoRefinement => base.apply(&e, mu)?,
            FmRefinement::FmClosure => {
                RefinedOperator::new(base, RefinementKind::closure(beta)).apply(&e, mu)?
            }
            FmRefinement::FmLex => RefinedOperator::new(base, RefinementKind::lex(beta)).apply(&e, mu)?,
            FmRefinement::FmLexClosure => {
                RefinedOperator::new(base, RefinementKind::lex_closure(beta)).apply(&e, mu)?
            }
        };
        put(out, FmModelSet(result))
    })
}

/// Least superset of `m` closed under the fragment's function.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fm_closure(
    frag: FmFragment,
    m: *const FmModelSet,
    out: *mut *mut FmModelSet,
) -> FmStatus {
    guard(|| {
        let m = &obj(m, "set")?.0;
        put(out, FmModelSet(closure(fragment(frag).beta(), m)))
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fm_is_closed(frag: FmFragment, m: *const FmModelSet, out: *mut bool) -> FmStatus {
    guard(|| {
        let m = &obj(m, "set")?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = is_closed(fragment(frag).beta(), m);
        Ok(())
    })
}

/// Number of bases in the profile sharing a model with `m`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fm_card_intersection(
    m: *const FmModelSet,
    profile: *const FmProfile,
    out: *mut usize,
) -> FmStatus {
    guard(|| {
        let m = &obj(m, "set")?.0;
        let e = profile_of(obj(profile, "profile")?)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = cardintersection(m, &e)?;
        Ok(())
    })
}

/// A Horn or Krom CNF whose models are exactly `m`. Fails with
/// `FM_NOT_CLOSED` if `m` is outside the fragment.
///
/// # Safety
/// `out` receives a string to release with `fm_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fm_synthesize(
    m: *const FmModelSet,
    frag: FmFragment,
    out: *mut *mut c_char,
) -> FmStatus {
    guard(|| {
        let m = &obj(m, "set")?.0;
        let phi = formula::synthesize(m, &fragment(frag))?;
        let phi = formula::drop_redundant_clauses(&phi, m.universe())?;
        put_string(out, phi.display(m.universe()).to_string())
    })
}

/// Recomputes a stored fixture; `passes` is set to whether every cell matched.
///
/// # Safety
/// `id` must be nul-terminated; `passes` writable.
#[no_mangle]
pub unsafe extern "C" fn fm_reproduce(id: *const c_char, passes: *mut bool) -> FmStatus {
    guard(|| {
        let report = postulates::reproduce(str_arg(id, "id")?)?;
        let passes = passes.as_mut().ok_or_else(|| null("passes"))?;
        *passes = report.passes();
        Ok(())
    })
}
