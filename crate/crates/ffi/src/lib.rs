//! C ABI for `clifford_pentagon`.
//!
//! Every function returns a [`PcStatus`]; results come back through out
//! pointers. Handles are opaque and owned by the caller once returned, and
//! each has a matching `_free`. On failure [`pc_last_error`] describes the
//! most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use clifford_pentagon::enumeration::{enumerate_up_to_iso, enumerate_with, EnumerationOptions};
use clifford_pentagon::io::{to_json, SemigroupFile, SolutionFile};
use clifford_pentagon::{classify, Error, FiniteSemigroup, Solution};

/// Status codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad index, buffer too small or non-UTF-8 string.
    InvalidArgument = 2,
    /// Wrong shape, empty, out-of-range entry or non-associative table.
    InvalidTable = 3,
    NotClifford = 4,
    /// The θ-table breaks one of the two axioms.
    NotASolution = 5,
    Json = 6,
    /// Any other library error.
    Failed = 7,
    Panic = 8,
}

/// A validated finite semigroup.
pub struct PcSemigroup(Arc<FiniteSemigroup>);

/// A validated solution.
pub struct PcSolution(Solution);

/// The result of an enumeration.
pub struct PcSolutionList(Vec<Solution>);

/// Classification of a solution. The idempotent-invariant, idempotent-fixed
/// and neither entries are -1 when the base is not Clifford.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PcFlags {
    pub commutative: i8,
    pub cocommutative: i8,
    pub involutive: i8,
    pub idempotent: i8,
    pub e_invariant: i8,
    pub e_fixed: i8,
    pub neither: i8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> PcStatus {
    match e {
        Error::BadShape { .. }
        | Error::Empty
        | Error::OutOfRangeEntry { .. }
        | Error::NotAssociative { .. } => PcStatus::InvalidTable,
        Error::NotClifford(_) | Error::NotInverseSemigroup { .. } => PcStatus::NotClifford,
        Error::AxiomViolated { .. } => PcStatus::NotASolution,
        Error::Json(_) => PcStatus::Json,
        _ => PcStatus::Failed,
    }
}

struct Fail(PcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(PcStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording its error and turning panics into [`PcStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PcStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PcStatus::Panic
        }
    }
}

unsafe fn slice<'a>(data: *const usize, len: usize) -> Result<&'a [usize], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null("table"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn string<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null("string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(PcStatus::InvalidArgument, "string is not UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

fn flat_to_rows(order: usize, table: &[usize]) -> Result<Vec<Vec<usize>>, Fail> {
    if order == 0 || table.len() != order * order {
        return Err(Error::BadShape {
            order,
            len: table.len(),
        }
        .into());
    }
    Ok(table.chunks(order).map(<[_]>::to_vec).collect())
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn pc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a semigroup from a row-major `order * order` table.
///
/// # Safety
/// `table` must point to `order * order` readable values.
#[no_mangle]
pub unsafe extern "C" fn pc_semigroup_new(
    order: usize,
    table: *const usize,
    out: *mut *mut PcSemigroup,
) -> PcStatus {
    guard(|| {
        let table = slice(table, order.saturating_mul(order))?;
        let s = FiniteSemigroup::new("ffi", Vec::new(), &flat_to_rows(order, table)?)?;
        put(out, PcSemigroup(Arc::new(s)))
    })
}

/// Parses a semigroup JSON document (`{"table": [[...]], ...}`).
///
/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pc_semigroup_from_json(
    json: *const c_char,
    out: *mut *mut PcSemigroup,
) -> PcStatus {
    guard(|| {
        let file: SemigroupFile = serde_json::from_str(string(json)?).map_err(Error::from)?;
        put(out, PcSemigroup(Arc::new(file.into_semigroup("ffi")?)))
    })
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_semigroup_order(s: *const PcSemigroup, out: *mut usize) -> PcStatus {
    guard(|| {
        let s = deref(s, "semigroup")?;
        *out.as_mut().ok_or_else(|| null("out"))? = s.0.order();
        Ok(())
    })
}

/// Writes 1 to `out` when the semigroup is Clifford, 0 otherwise.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_semigroup_is_clifford(s: *const PcSemigroup, out: *mut i8) -> PcStatus {
    guard(|| {
        let s = deref(s, "semigroup")?;
        *out.as_mut().ok_or_else(|| null("out"))? = i8::from(s.0.is_clifford().holds());
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_semigroup_free(s: *mut PcSemigroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Validates a row-major θ-table against the base semigroup.
///
/// # Safety
/// `s` must be a live handle; `theta` must point to `order * order` values.
#[no_mangle]
pub unsafe extern "C" fn pc_solution_new(
    s: *const PcSemigroup,
    theta: *const usize,
    len: usize,
    out: *mut *mut PcSolution,
) -> PcStatus {
    guard(|| {
        let s = deref(s, "semigroup")?;
        let theta = slice(theta, len)?;
        put(
            out,
            PcSolution(Solution::from_flat(s.0.clone(), theta.to_vec())?),
        )
    })
}

/// Parses a solution JSON document with an inline semigroup or a
/// `fixture:<name>` reference.
///
/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pc_solution_from_json(
    json: *const c_char,
    out: *mut *mut PcSolution,
) -> PcStatus {
    use clifford_pentagon::io::{load_semigroup, SemigroupRef};
    guard(|| {
        let file: SolutionFile = serde_json::from_str(string(json)?).map_err(Error::from)?;
        let base = match file.semigroup {
            SemigroupRef::Inline(f) => f.into_semigroup("ffi")?,
            SemigroupRef::Path(p) if p.starts_with("fixture:") => load_semigroup(&p)?,
            SemigroupRef::Path(p) => {
                return Err(Fail(
                    PcStatus::InvalidArgument,
                    format!("semigroup path `{p}` cannot be resolved here"),
                ))
            }
        };
        let sol = clifford_pentagon::check_axioms(Arc::new(base), &file.theta)?;
        put(out, PcSolution(sol))
    })
}

/// `θ_a(b)`
///
/// # Safety
/// `sol` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_solution_theta(
    sol: *const PcSolution,
    a: usize,
    b: usize,
    out: *mut usize,
) -> PcStatus {
    guard(|| {
        let sol = deref(sol, "solution")?;
        let n = sol.0.order();
        if a >= n || b >= n {
            return Err(Fail(
                PcStatus::InvalidArgument,
                format!("({a}, {b}) out of range for order {n}"),
            ));
        }
        *out.as_mut().ok_or_else(|| null("out"))? = sol.0.theta(a, b);
        Ok(())
    })
}

/// Copies the row-major θ-table into `buf`, which must hold `order * order`
/// values.
///
/// # Safety
/// `sol` must be a live handle; `buf` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn pc_solution_copy_theta(
    sol: *const PcSolution,
    buf: *mut usize,
    len: usize,
) -> PcStatus {
    guard(|| {
        let sol = deref(sol, "solution")?;
        let table = sol.0.table();
        if len < table.len() {
            return Err(Fail(
                PcStatus::InvalidArgument,
                format!("buffer holds {len} values, need {}", table.len()),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(table.as_ptr(), buf, table.len());
        Ok(())
    })
}

/// # Safety
/// `sol` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_solution_classify(
    sol: *const PcSolution,
    out: *mut PcFlags,
) -> PcStatus {
    guard(|| {
        let sol = deref(sol, "solution")?;
        let f = classify(&sol.0);
        let tri = |b: Option<bool>| b.map_or(-1, i8::from);
        *out.as_mut().ok_or_else(|| null("out"))? = PcFlags {
            commutative: f.commutative.into(),
            cocommutative: f.cocommutative.into(),
            involutive: f.involutive.into(),
            idempotent: f.idempotent.into(),
            e_invariant: tri(f.e_invariant),
            e_fixed: tri(f.e_fixed),
            neither: tri(f.neither()),
        };
        Ok(())
    })
}

/// Serialises the solution (with its semigroup inline). Free the result
/// with [`pc_string_free`].
///
/// # Safety
/// `sol` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_solution_to_json(
    sol: *const PcSolution,
    out: *mut *mut c_char,
) -> PcStatus {
    guard(|| {
        let sol = deref(sol, "solution")?;
        let text = CString::new(to_json(&SolutionFile::from(&sol.0)))
            .map_err(|_| Fail(PcStatus::Failed, "NUL in output".into()))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = text.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `sol` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_solution_free(sol: *mut PcSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// Every solution on `s` in lexicographic θ-table order, or one per
/// isomorphism class when `up_to_iso` is non-zero. `threads == 0` uses the
/// default pool.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_enumerate(
    s: *const PcSemigroup,
    threads: usize,
    up_to_iso: i32,
    out: *mut *mut PcSolutionList,
) -> PcStatus {
    guard(|| {
        let s = deref(s, "semigroup")?;
        let opts = EnumerationOptions {
            threads: (threads > 0).then_some(threads),
            filter: Vec::new(),
        };
        let sols = if up_to_iso != 0 {
            enumerate_up_to_iso(&s.0, &opts)
        } else {
            enumerate_with(&s.0, &opts)
        };
        put(out, PcSolutionList(sols))
    })
}

/// # Safety
/// `list` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_solution_list_len(
    list: *const PcSolutionList,
    out: *mut usize,
) -> PcStatus {
    guard(|| {
        let list = deref(list, "list")?;
        *out.as_mut().ok_or_else(|| null("out"))? = list.0.len();
        Ok(())
    })
}

/// Copies entry `index` into a new solution handle.
///
/// # Safety
/// `list` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_solution_list_get(
    list: *const PcSolutionList,
    index: usize,
    out: *mut *mut PcSolution,
) -> PcStatus {
    guard(|| {
        let list = deref(list, "list")?;
        let sol = list.0.get(index).ok_or_else(|| {
            Fail(
                PcStatus::InvalidArgument,
                format!("index {index} out of range for {} solutions", list.0.len()),
            )
        })?;
        put(out, PcSolution(sol.clone()))
    })
}

/// # Safety
/// `list` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_solution_list_free(list: *mut PcSolutionList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}
