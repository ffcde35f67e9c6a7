//! C interface for the restricted Lie algebra workbench.
//!
//! Algebras travel across the boundary as opaque handles created by
//! [`rla_parse`] or [`rla_generate`] and released by [`rla_free`]. Reports
//! come back as JSON strings allocated here; release every returned string
//! with [`rla_string_free`]. Calls never unwind across the boundary; on any
//! non-OK status a human-readable message is available from
//! [`rla_last_error`] until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rla::families::FamilySpec;
use rla::harness::{self, Analysis, CorpusConfig, Mode, SkippedCheck};
use rla::{cli, families, format, structure};
use rla::{Error, FiniteField, LatticeMode, RestrictedLieAlgebra, SubalgebraLattice};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RlaStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed input: JSON, coordinates, factor lists, unknown ids.
    ParseError = 3,
    /// The algebra violates its defining identities; the report says where.
    ValidationError = 4,
    /// An assert-mode check failed; the report carries the witness.
    AssertFailure = 5,
    /// The requested enumeration exceeds the budget.
    ResourceLimit = 6,
    /// The maximal torus has no toral basis, so no root decomposition.
    NotATorus = 7,
    /// Family parameters out of range or missing.
    BadParameters = 8,
    /// Unexpected internal failure; see the error message.
    InternalError = 9,
}

/// Opaque algebra handle.
pub struct RlaAlgebra {
    inner: RestrictedLieAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> RlaStatus {
    match e {
        Error::Validation(_) => RlaStatus::ValidationError,
        Error::ResourceLimit { .. } => RlaStatus::ResourceLimit,
        Error::NotATorus => RlaStatus::NotATorus,
        Error::BadParameters(_) => RlaStatus::BadParameters,
        Error::Parse(_)
        | Error::BadAlgebra(_)
        | Error::BadField(_)
        | Error::NotPrime(_)
        | Error::ReducibleModulus { .. }
        | Error::NotMonic => RlaStatus::ParseError,
        _ => RlaStatus::InternalError,
    }
}

fn fail(e: &Error) -> RlaStatus {
    set_error(e.to_string());
    status_of(e)
}

/// Runs a body with panics converted to `InternalError` and the thread-local
/// message cleared on entry.
fn guard(body: impl FnOnce() -> RlaStatus) -> RlaStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic".into());
            RlaStatus::InternalError
        }
    }
}

/// # Safety
/// `p` must be null or point to a NUL-terminated string.
unsafe fn in_str<'a>(p: *const c_char) -> Result<&'a str, RlaStatus> {
    if p.is_null() {
        set_error("null string argument".into());
        return Err(RlaStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8".into());
        RlaStatus::InvalidUtf8
    })
}

unsafe fn in_handle<'a>(h: *const RlaAlgebra) -> Result<&'a RestrictedLieAlgebra, RlaStatus> {
    if h.is_null() {
        set_error("null algebra handle".into());
        return Err(RlaStatus::NullArgument);
    }
    Ok(&(*h).inner)
}

unsafe fn out_string(s: String, out: *mut *mut c_char) -> RlaStatus {
    if out.is_null() {
        set_error("null output pointer".into());
        return RlaStatus::NullArgument;
    }
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            RlaStatus::Ok
        }
        Err(_) => {
            set_error("report contains an interior NUL byte".into());
            RlaStatus::InternalError
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

fn mode_of(ordinary: bool) -> LatticeMode {
    if ordinary { LatticeMode::Ordinary } else { LatticeMode::Restricted }
}

/// Schema version stamped into every JSON report.
#[no_mangle]
pub extern "C" fn rla_schema_version() -> u32 {
    rla::SCHEMA_VERSION
}

/// Returns a copy of the last error message on this thread, or null when the
/// last call succeeded. Free it with `rla_string_free`.
#[no_mangle]
pub extern "C" fn rla_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Releases a string returned by any call here.
///
/// # Safety
/// `s` must be null or a pointer previously returned by this library.
#[no_mangle]
pub unsafe extern "C" fn rla_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an algebra document (the JSON interchange format) into a handle.
/// The document only has to be well formed; run `rla_validate` to check the
/// algebra identities.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rla_parse(
    json: *const c_char,
    out: *mut *mut RlaAlgebra,
) -> RlaStatus {
    guard(|| {
        let text = match in_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("null output pointer".into());
            return RlaStatus::NullArgument;
        }
        match format::parse_spec(text).and_then(|s| format::algebra_from_spec(&s)) {
            Ok(l) => {
                *out = Box::into_raw(Box::new(RlaAlgebra { inner: l }));
                RlaStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Releases an algebra handle.
///
/// # Safety
/// `h` must be null or a pointer previously returned by this library, and
/// must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rla_free(h: *mut RlaAlgebra) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Dimension of the algebra, or -1 on a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rla_dim(h: *const RlaAlgebra) -> i32 {
    match in_handle(h) {
        Ok(l) => l.dim() as i32,
        Err(_) => -1,
    }
}

/// Serializes the algebra back to its canonical JSON document.
///
/// # Safety
/// `h` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rla_serialize(
    h: *const RlaAlgebra,
    out: *mut *mut c_char,
) -> RlaStatus {
    guard(|| {
        let l = match in_handle(h) {
            Ok(l) => l,
            Err(s) => return s,
        };
        out_string(format::serialize_spec(&format::spec_from_algebra(l)), out)
    })
}

/// Checks the defining identities. Writes the full report either way and
/// returns `Ok` when the algebra is valid, `ValidationError` when not.
///
/// # Safety
/// `h` must be a live handle; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rla_validate(
    h: *const RlaAlgebra,
    out_json: *mut *mut c_char,
) -> RlaStatus {
    guard(|| {
        let l = match in_handle(h) {
            Ok(l) => l,
            Err(s) => return s,
        };
        let report = l.validate();
        let ok = report.ok;
        let doc =
            format::ValidateReport { schema_version: rla::SCHEMA_VERSION, report };
        let s = out_string(to_json(&doc), out_json);
        if s != RlaStatus::Ok {
            return s;
        }
        if ok {
            RlaStatus::Ok
        } else {
            set_error("algebra identities violated; see the report".into());
            RlaStatus::ValidationError
        }
    })
}

/// Full structure report: flags, series, radicals, torus, roots.
///
/// # Safety
/// `h` must be a live handle; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rla_analyze(
    h: *const RlaAlgebra,
    budget: u64,
    out_json: *mut *mut c_char,
) -> RlaStatus {
    guard(|| {
        let l = match in_handle(h) {
            Ok(l) => l,
            Err(s) => return s,
        };
        match format::structure_report(l, budget) {
            Ok(r) => out_string(to_json(&r), out_json),
            Err(e) => fail(&e),
        }
    })
}

/// Subalgebra lattice report in restricted (default) or ordinary mode.
///
/// # Safety
/// `h` must be a live handle; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rla_lattice(
    h: *const RlaAlgebra,
    ordinary: bool,
    budget: u64,
    out_json: *mut *mut c_char,
) -> RlaStatus {
    guard(|| {
        let l = match in_handle(h) {
            Ok(l) => l,
            Err(s) => return s,
        };
        let run = SubalgebraLattice::enumerate(l, mode_of(ordinary), budget)
            .and_then(|lat| format::lattice_report(&lat, budget));
        match run {
            Ok(r) => out_string(to_json(&r), out_json),
            Err(e) => fail(&e),
        }
    })
}

/// DOT rendering of the lattice: one node per subalgebra, one edge per
/// covering pair.
///
/// # Safety
/// `h` must be a live handle; `out_dot` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rla_lattice_dot(
    h: *const RlaAlgebra,
    ordinary: bool,
    budget: u64,
    out_dot: *mut *mut c_char,
) -> RlaStatus {
    guard(|| {
        let l = match in_handle(h) {
            Ok(l) => l,
            Err(s) => return s,
        };
        match SubalgebraLattice::enumerate(l, mode_of(ordinary), budget) {
            Ok(lat) => out_string(lat.to_dot(), out_dot),
            Err(e) => fail(&e),
        }
    })
}

/// Runs catalog checks against the algebra. `theorems` is a comma-separated
/// id list ("T1,T7"), or null/"all" for the whole catalog. Returns
/// `AssertFailure` when an assert-mode check fails; the report names it.
///
/// # Safety
/// `h` must be a live handle; `theorems` null or NUL-terminated; `out_json`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rla_verify(
    h: *const RlaAlgebra,
    theorems: *const c_char,
    budget: u64,
    out_json: *mut *mut c_char,
) -> RlaStatus {
    guard(|| {
        let l = match in_handle(h) {
            Ok(l) => l,
            Err(s) => return s,
        };
        let ids: Vec<String> = if theorems.is_null() {
            harness::catalog().iter().map(|r| r.id.to_string()).collect()
        } else {
            let list = match in_str(theorems) {
                Ok(t) => t,
                Err(s) => return s,
            };
            if list == "all" {
                harness::catalog().iter().map(|r| r.id.to_string()).collect()
            } else {
                let parts: Vec<String> =
                    list.split(',').map(|s| s.trim().to_string()).collect();
                for id in &parts {
                    if harness::theorem(id).is_none() {
                        return fail(&Error::Parse(format!("unknown theorem id: {id}")));
                    }
                }
                parts
            }
        };
        let mut analysis = Analysis::new(l, budget);
        let mut outcomes = Vec::new();
        for id in &ids {
            match analysis.outcome(id) {
                Ok(o) => outcomes.push(o),
                Err(e) => return fail(&e),
            }
        }
        let failures = outcomes
            .iter()
            .filter(|o| o.applicable && o.mode == Mode::Assert && o.holds == Some(false))
            .count();
        let doc = format::VerifyReport {
            schema_version: rla::SCHEMA_VERSION,
            outcomes,
            skipped: Vec::<SkippedCheck>::new(),
            assert_failures: failures,
        };
        let s = out_string(to_json(&doc), out_json);
        if s != RlaStatus::Ok {
            return s;
        }
        if failures > 0 {
            set_error(format!("{failures} assert-mode check(s) failed"));
            RlaStatus::AssertFailure
        } else {
            RlaStatus::Ok
        }
    })
}

/// Runs the instance corpus. `config_json` is the corpus configuration
/// document, or null for the built-in default. Identical configurations
/// produce byte-identical reports.
///
/// # Safety
/// `config_json` null or NUL-terminated; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rla_corpus(
    config_json: *const c_char,
    out_json: *mut *mut c_char,
) -> RlaStatus {
    guard(|| {
        let cfg: CorpusConfig = if config_json.is_null() {
            CorpusConfig::default()
        } else {
            let text = match in_str(config_json) {
                Ok(t) => t,
                Err(s) => return s,
            };
            match serde_json::from_str(text) {
                Ok(c) => c,
                Err(e) => return fail(&Error::Parse(format!("corpus config: {e}"))),
            }
        };
        match harness::corpus(&cfg) {
            Ok(report) => {
                let failures = report.totals.assert_failures;
                let s = out_string(to_json(&report), out_json);
                if s != RlaStatus::Ok {
                    return s;
                }
                if failures > 0 {
                    set_error(format!("{failures} assert-mode check(s) failed"));
                    RlaStatus::AssertFailure
                } else {
                    RlaStatus::Ok
                }
            }
            Err(e) => fail(&e),
        }
    })
}

/// Builds a named family instance over GF(p^k). `n` is the family's size
/// parameter (dimension count or nilpotent-block width, whichever the family
/// takes); pass a negative value when the family has none. `factors` is an
/// optional `;`-separated list of `,`-separated skew polynomial coefficient
/// lists, low degree first (for the cyclic and solvable-model families).
///
/// # Safety
/// `family` must be NUL-terminated; `factors` null or NUL-terminated; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rla_generate(
    family: *const c_char,
    p: u64,
    k: u32,
    n: i64,
    factors: *const c_char,
    out: *mut *mut RlaAlgebra,
) -> RlaStatus {
    guard(|| {
        let fam = match in_str(family) {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("null output pointer".into());
            return RlaStatus::NullArgument;
        }
        let factor_lists = if factors.is_null() {
            Vec::new()
        } else {
            let text = match in_str(factors) {
                Ok(t) => t,
                Err(s) => return s,
            };
            match cli::parse_factors(text) {
                Ok(v) => v,
                Err(e) => return fail(&e),
            }
        };
        let field = match FiniteField::new(p, k, None) {
            Ok(f) => f,
            Err(e) => return fail(&e),
        };
        let size = if n < 0 { None } else { Some(n as usize) };
        let spec = FamilySpec {
            family: fam.to_string(),
            n: size,
            pmap: None,
            custom_pmap: None,
            factors: factor_lists,
            lines: size,
        };
        match families::gen(&field, &spec) {
            Ok(l) => {
                *out = Box::into_raw(Box::new(RlaAlgebra { inner: l }));
                RlaStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Splits an element into commuting semisimple and p-nilpotent parts inside
/// its own cyclic restricted subalgebra. `element` uses the same coordinate
/// syntax as the command line: comma-separated, `:`-joined digit arrays for
/// extension-field entries.
///
/// # Safety
/// `h` must be a live handle; `element` NUL-terminated; `out_json` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rla_jc(
    h: *const RlaAlgebra,
    element: *const c_char,
    out_json: *mut *mut c_char,
) -> RlaStatus {
    guard(|| {
        let l = match in_handle(h) {
            Ok(l) => l,
            Err(s) => return s,
        };
        let text = match in_str(element) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let x = match cli::parse_element(text, l) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        let (xs, xn) = structure::jordan_chevalley(l, &x);
        let doc = format::JcReport {
            schema_version: rla::SCHEMA_VERSION,
            element: format::element_doc(l, &x),
            semisimple: format::element_doc(l, xs.coords()),
            p_nilpotent: format::element_doc(l, xn.coords()),
        };
        out_string(to_json(&doc), out_json)
    })
}
