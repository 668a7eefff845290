//! C ABI over `galois_trees`.
//!
//! Specs and verification reports cross the boundary as opaque handles.
//! Every fallible call returns a [`GtStatus`]; on failure the message is
//! available from [`gt_last_error`] on the same thread. Integers that may
//! exceed 64 bits come back as decimal strings, structured data as JSON.
//! Strings handed out by this library are released with [`gt_string_free`].
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use galois_trees::format::{bigint_json, int_poly_json, parse_spec, serialize_spec};
use galois_trees::jacobian::{jacobian_group, labelled_polynomial, specialized_cover_polynomial, tree_count};
use galois_trees::verify::{verify_main_theorem, VerificationReport};
use galois_trees::{Cover, CoverSpec, Error, Graph};

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// The document or one of its ids, elements or lengths is malformed.
    InvalidSpec = 3,
    /// Well formed, but outside what the operation accepts (a trivial or
    /// disconnected cover, say).
    Unsupported = 4,
    /// Internal failure; the library caught a panic.
    Internal = 5,
}

/// Which graph of a cover a query refers to.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtGraph {
    Base = 0,
    Cover = 1,
}

/// A parsed cover spec together with its built cover.
pub struct GtSpec {
    spec: CoverSpec,
    cover: Cover,
}

/// The result of verifying the factorization for one spec.
pub struct GtReport {
    report: VerificationReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> GtStatus {
    match err {
        Error::DuplicateId(_)
        | Error::UnknownVertex(_)
        | Error::UnknownEdge(_)
        | Error::MalformedElement { .. }
        | Error::BadGroup(_)
        | Error::NonPositiveLength(_)
        | Error::Spec(_) => GtStatus::InvalidSpec,
        _ => GtStatus::Unsupported,
    }
}

/// Runs `body`, recording any error or panic for [`gt_last_error`].
fn guard(body: impl FnOnce() -> Result<(), (GtStatus, String)>) -> GtStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GtStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            GtStatus::Internal
        }
    }
}

fn fail(err: Error) -> (GtStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (GtStatus, String) {
    (GtStatus::NullPointer, format!("{what} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, (GtStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), (GtStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (GtStatus, String)> {
    let c = CString::new(s).map_err(|_| (GtStatus::Internal, "string contains NUL".to_string()))?;
    write(out, c.into_raw())
}

fn graph_of(h: &GtSpec, which: GtGraph) -> &Graph {
    match which {
        GtGraph::Base => h.spec.base(),
        GtGraph::Cover => h.cover.total(),
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library on this thread; do not free it.
#[no_mangle]
pub extern "C" fn gt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn gt_status_name(status: GtStatus) -> *const c_char {
    let s: &'static CStr = match status {
        GtStatus::Ok => c"ok",
        GtStatus::NullPointer => c"null pointer",
        GtStatus::InvalidUtf8 => c"invalid UTF-8",
        GtStatus::InvalidSpec => c"invalid spec",
        GtStatus::Unsupported => c"unsupported input",
        GtStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a JSON cover spec and builds its cover.
#[no_mangle]
pub unsafe extern "C" fn gt_spec_from_json(json: *const c_char, out: *mut *mut GtSpec) -> GtStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| (GtStatus::InvalidUtf8, "spec is not UTF-8".to_string()))?;
        let spec = parse_spec(text).map_err(fail)?;
        let cover = Cover::build(&spec);
        write(out, Box::into_raw(Box::new(GtSpec { spec, cover })))
    })
}

/// Releases a spec handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gt_spec_free(spec: *mut GtSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// The spec in canonical JSON form.
#[no_mangle]
pub unsafe extern "C" fn gt_spec_to_json(spec: *const GtSpec, out: *mut *mut c_char) -> GtStatus {
    guard(|| {
        let h = borrow(spec, "spec")?;
        write_string(out, serialize_spec(&h.spec))
    })
}

/// Order of the deck group.
#[no_mangle]
pub unsafe extern "C" fn gt_spec_group_order(spec: *const GtSpec, out: *mut u64) -> GtStatus {
    guard(|| write(out, borrow(spec, "spec")?.spec.group().order()))
}

/// Whether every dilation subgroup is trivial.
#[no_mangle]
pub unsafe extern "C" fn gt_spec_is_free(spec: *const GtSpec, out: *mut bool) -> GtStatus {
    guard(|| write(out, borrow(spec, "spec")?.spec.is_free()))
}

/// Vertex and edge counts of the base or the cover.
#[no_mangle]
pub unsafe extern "C" fn gt_spec_size(
    spec: *const GtSpec,
    which: GtGraph,
    vertices: *mut usize,
    edges: *mut usize,
) -> GtStatus {
    guard(|| {
        let g = graph_of(borrow(spec, "spec")?, which);
        write(vertices, g.num_vertices())?;
        write(edges, g.num_edges())
    })
}

/// Number of spanning trees, as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn gt_spec_tree_count(spec: *const GtSpec, which: GtGraph, out: *mut *mut c_char) -> GtStatus {
    guard(|| {
        let g = graph_of(borrow(spec, "spec")?, which);
        write_string(out, tree_count(g).to_string())
    })
}

/// Invariant factors of the Jacobian as a JSON array.
#[no_mangle]
pub unsafe extern "C" fn gt_spec_jacobian_json(spec: *const GtSpec, which: GtGraph, out: *mut *mut c_char) -> GtStatus {
    guard(|| {
        let g = graph_of(borrow(spec, "spec")?, which);
        let jac = jacobian_group(g).map_err(fail)?;
        let factors: Vec<_> = jac.invariant_factors.iter().map(bigint_json).collect();
        write_string(out, serde_json::Value::from(factors).to_string())
    })
}

/// The Jacobian polynomial in the base edge variables, as JSON terms. For
/// the cover, each edge variable is specialized to its image's variable.
#[no_mangle]
pub unsafe extern "C" fn gt_spec_polynomial_json(spec: *const GtSpec, which: GtGraph, out: *mut *mut c_char) -> GtStatus {
    guard(|| {
        let h = borrow(spec, "spec")?;
        let poly = match which {
            GtGraph::Base => {
                let ids = h.spec.base().edge_id_list();
                let labels: Vec<usize> = (0..ids.len()).collect();
                labelled_polynomial(h.spec.base(), &labels, &ids)
            }
            GtGraph::Cover => specialized_cover_polynomial(&h.cover),
        }
        .map_err(fail)?;
        write_string(out, int_poly_json(&poly).to_string())
    })
}

/// Checks the factorization of the cover's Jacobian polynomial and tree
/// count through base data. A report is produced even when the identity
/// fails; inspect it with [`gt_report_holds`].
#[no_mangle]
pub unsafe extern "C" fn gt_verify(spec: *const GtSpec, out: *mut *mut GtReport) -> GtStatus {
    guard(|| {
        let h = borrow(spec, "spec")?;
        let report = verify_main_theorem(&h.spec).map_err(fail)?;
        write(out, Box::into_raw(Box::new(GtReport { report })))
    })
}

/// Releases a report handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gt_report_free(report: *mut GtReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Polynomial identity and agreement of all three tree counts.
#[no_mangle]
pub unsafe extern "C" fn gt_report_holds(report: *const GtReport, out: *mut bool) -> GtStatus {
    guard(|| write(out, borrow(report, "report")?.report.holds()))
}

/// The cover's spanning-tree count, as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn gt_report_tree_count(report: *const GtReport, out: *mut *mut c_char) -> GtStatus {
    guard(|| write_string(out, borrow(report, "report")?.report.cover_tree_count.to_string()))
}

/// The count predicted from the character weights, or null when the
/// product failed to be integral.
#[no_mangle]
pub unsafe extern "C" fn gt_report_predicted_tree_count(report: *const GtReport, out: *mut *mut c_char) -> GtStatus {
    guard(|| match &borrow(report, "report")?.report.theorem_tree_count {
        Some(n) => write_string(out, n.to_string()),
        None => write(out, ptr::null_mut()),
    })
}

/// The specialized cover polynomial computed directly, as JSON terms.
#[no_mangle]
pub unsafe extern "C" fn gt_report_polynomial_json(report: *const GtReport, out: *mut *mut c_char) -> GtStatus {
    guard(|| write_string(out, int_poly_json(&borrow(report, "report")?.report.lhs).to_string()))
}
