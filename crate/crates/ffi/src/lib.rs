//! C interface to `oddcycle`.
//!
//! Graphs live behind the opaque `OcGraph` handle. Every function returns an
//! `OcStatus`; on failure `oc_last_error_message` describes the error for the
//! calling thread. Strings handed out by the library are released with
//! `oc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use oddcycle::cli::OrientationReport;
use oddcycle::color::{choose_edges, ListAssignment};
use oddcycle::digraph::{Demand, LineDigraph};
use oddcycle::io::{parse_graph, write_graph, Format};
use oddcycle::orient::orient_gstar_at;
use oddcycle::recognize::in_gstar;
use oddcycle::verify::check_kernel_perfect;
use oddcycle::{ColorError, Graph, OrientError};

/// Opaque graph handle.
pub struct OcGraph {
    graph: Graph,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotInClass = 4,
    Precondition = 5,
    SizeCap = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OcFormat {
    Edgelist = 0,
    Graph6 = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: OcStatus, message: impl Into<String>) -> OcStatus {
    set_error(message);
    status
}

fn guard(body: impl FnOnce() -> OcStatus) -> OcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(OcStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, OcStatus> {
    if text.is_null() {
        return Err(fail(OcStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(text).to_str().map_err(|_| fail(OcStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn graph_ref<'a>(g: *const OcGraph) -> Result<&'a Graph, OcStatus> {
    g.as_ref().map(|h| &h.graph).ok_or_else(|| fail(OcStatus::NullPointer, "null graph handle"))
}

unsafe fn write_json(out: *mut *mut c_char, value: &impl serde::Serialize) -> OcStatus {
    let text = match serde_json::to_string(value) {
        Ok(t) => t,
        Err(e) => return fail(OcStatus::Internal, e.to_string()),
    };
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            OcStatus::Ok
        }
        Err(e) => fail(OcStatus::Internal, e.to_string()),
    }
}

fn orient_status(e: &OrientError) -> OcStatus {
    match e {
        OrientError::NotInClass { .. } | OrientError::NotInClassNoWitness { .. } => OcStatus::NotInClass,
        OrientError::ParameterTooSmall { .. } | OrientError::DiamondTipImpossible => OcStatus::Precondition,
        _ => OcStatus::Internal,
    }
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn oc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn oc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph from text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oc_graph_parse(text: *const c_char, format: OcFormat, out: *mut *mut OcGraph) -> OcStatus {
    guard(|| {
        if out.is_null() {
            return fail(OcStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let fmt = match format {
            OcFormat::Edgelist => Format::Edgelist,
            OcFormat::Graph6 => Format::Graph6,
        };
        match parse_graph(text, fmt) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(OcGraph { graph }));
                OcStatus::Ok
            }
            Err(e) => fail(OcStatus::Parse, e.to_string()),
        }
    })
}

/// Builds a graph on `n` vertices from `m` edges given as `2m` endpoints.
///
/// # Safety
/// `endpoints` must point to `2 * m` values (or be NULL when `m == 0`) and
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn oc_graph_from_edges(
    n: usize,
    endpoints: *const usize,
    m: usize,
    out: *mut *mut OcGraph,
) -> OcStatus {
    guard(|| {
        if out.is_null() || (endpoints.is_null() && m > 0) {
            return fail(OcStatus::NullPointer, "null pointer");
        }
        let raw = if m == 0 { &[][..] } else { std::slice::from_raw_parts(endpoints, 2 * m) };
        match Graph::new(n, raw.chunks(2).map(|p| (p[0], p[1]))) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(OcGraph { graph }));
                OcStatus::Ok
            }
            Err(e) => fail(OcStatus::Parse, e.to_string()),
        }
    })
}

/// Releases a graph. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn oc_graph_free(g: *mut OcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices; 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oc_graph_vertex_count(g: *const OcGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.vertex_count())
}

/// Number of edges; 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oc_graph_edge_count(g: *const OcGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.edge_count())
}

/// Serializes the graph in the given format.
///
/// # Safety
/// `g` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn oc_graph_write(g: *const OcGraph, format: OcFormat, out: *mut *mut c_char) -> OcStatus {
    guard(|| {
        let graph = match graph_ref(g) {
            Ok(x) => x,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(OcStatus::NullPointer, "null output pointer");
        }
        let fmt = match format {
            OcFormat::Edgelist => Format::Edgelist,
            OcFormat::Graph6 => Format::Graph6,
        };
        match CString::new(write_graph(graph, fmt)) {
            Ok(c) => {
                *out = c.into_raw();
                OcStatus::Ok
            }
            Err(e) => fail(OcStatus::Internal, e.to_string()),
        }
    })
}

/// Membership test; also writes the block classification as JSON when
/// `out_json` is not NULL.
///
/// # Safety
/// `g` must be a live handle, `in_class` valid, `out_json` NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn oc_classify(g: *const OcGraph, in_class: *mut bool, out_json: *mut *mut c_char) -> OcStatus {
    guard(|| {
        let graph = match graph_ref(g) {
            Ok(x) => x,
            Err(s) => return s,
        };
        if in_class.is_null() {
            return fail(OcStatus::NullPointer, "null output pointer");
        }
        let class = in_gstar(graph);
        *in_class = class.in_gstar;
        if out_json.is_null() {
            OcStatus::Ok
        } else {
            write_json(out_json, &class)
        }
    })
}

/// Kernel-perfect `t`-orientation (`t >= max(4, Δ)`) as a JSON report with
/// the graph, demand, arcs and certificate.
///
/// # Safety
/// `g` must be a live handle and `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn oc_orient(g: *const OcGraph, t: usize, out_json: *mut *mut c_char) -> OcStatus {
    guard(|| {
        let graph = match graph_ref(g) {
            Ok(x) => x,
            Err(s) => return s,
        };
        if out_json.is_null() {
            return fail(OcStatus::NullPointer, "null output pointer");
        }
        let v = graph.non_isolated().next().unwrap_or(0);
        match orient_gstar_at(graph, t, v) {
            Ok(o) => {
                let report = OrientationReport {
                    graph: graph.clone(),
                    demand: Demand::uniform(graph, t),
                    arcs: o.digraph.arcs(),
                    outdegrees: o.digraph.outdegrees(),
                    max_outdegree: o.digraph.max_outdegree(),
                    bidirected_pairs: o.digraph.bidirected_pairs(),
                    certificate: Some(o.certificate),
                };
                write_json(out_json, &report)
            }
            Err(e) => fail(orient_status(&e), e.to_string()),
        }
    })
}

/// Colors the edges from JSON lists `{"edge": [colors]}`; writes
/// `{"edge": color}`.
///
/// # Safety
/// `g` must be a live handle, `lists_json` a NUL-terminated string and
/// `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn oc_choose_edges(
    g: *const OcGraph,
    lists_json: *const c_char,
    out_json: *mut *mut c_char,
) -> OcStatus {
    guard(|| {
        let graph = match graph_ref(g) {
            Ok(x) => x,
            Err(s) => return s,
        };
        let text = match read_str(lists_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out_json.is_null() {
            return fail(OcStatus::NullPointer, "null output pointer");
        }
        let lists: ListAssignment = match serde_json::from_str(text) {
            Ok(l) => l,
            Err(e) => return fail(OcStatus::Parse, e.to_string()),
        };
        match choose_edges(graph, &lists) {
            Ok(c) => write_json(out_json, &c),
            Err(ColorError::Orient(e)) => fail(orient_status(&e), e.to_string()),
            Err(e @ ColorError::Demand { .. }) => fail(OcStatus::Precondition, e.to_string()),
            Err(e @ ColorError::ContractViolation(_)) if lists.len() != graph.edge_count() => {
                fail(OcStatus::Precondition, e.to_string())
            }
            Err(e) => fail(OcStatus::Internal, e.to_string()),
        }
    })
}

/// Checks an orientation report (as produced by `oc_orient`) for
/// kernel-perfectness by exhaustive search (at most 20 edges).
///
/// # Safety
/// `orientation_json` must be a NUL-terminated string, `result` valid.
#[no_mangle]
pub unsafe extern "C" fn oc_verify_kernel_perfect(orientation_json: *const c_char, result: *mut bool) -> OcStatus {
    guard(|| {
        let text = match read_str(orientation_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        if result.is_null() {
            return fail(OcStatus::NullPointer, "null output pointer");
        }
        let report: OrientationReport = match serde_json::from_str(text) {
            Ok(r) => r,
            Err(e) => return fail(OcStatus::Parse, e.to_string()),
        };
        let d = match LineDigraph::from_graph(&report.graph, report.arcs.iter().copied()) {
            Ok(d) => d,
            Err(e) => return fail(OcStatus::Parse, e.to_string()),
        };
        match check_kernel_perfect(&d) {
            Ok(r) => {
                *result = r.kernel_perfect;
                OcStatus::Ok
            }
            Err(e) => fail(OcStatus::SizeCap, e.to_string()),
        }
    })
}
