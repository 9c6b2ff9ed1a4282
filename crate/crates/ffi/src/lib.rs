//! C interface. Graphs are opaque handles created by
//! [`sinkopt_graph_parse`] and released with [`sinkopt_graph_free`]. Every
//! fallible call returns a [`SinkoptStatus`]; the message of the last
//! failure on the calling thread is available from
//! [`sinkopt_last_error_message`].
//!
//! Node sets cross the boundary as arrays of the original node labels.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sinkopt::candidates::{StarterMode, DEFAULT_MAX_CARD};
use sinkopt::cover::vertex_cover_from_matching;
use sinkopt::optimizer::{brute_force_oracle, greedy, run_starter_method, SolveOptions};
use sinkopt::{hitting_times, Error, Evaluator, Graph, NodeSet, RankContext};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SinkoptStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidGraph = 4,
    InvalidArgument = 5,
    SolverFailure = 6,
    TooLarge = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Opaque parsed graph.
pub struct SinkoptGraph {
    graph: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> SinkoptStatus {
    match err {
        Error::MalformedLine { .. } => SinkoptStatus::ParseError,
        Error::SelfLoop(_) | Error::EmptyGraph | Error::Disconnected(_) => SinkoptStatus::InvalidGraph,
        Error::SolverFailure { .. } | Error::WalkCapExceeded(_) => SinkoptStatus::SolverFailure,
        Error::TooLarge { .. } => SinkoptStatus::TooLarge,
        _ => SinkoptStatus::InvalidArgument,
    }
}

fn fail(status: SinkoptStatus, msg: impl Into<String>) -> SinkoptStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> SinkoptStatus) -> SinkoptStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(SinkoptStatus::Panic, "internal panic"),
    }
}

fn lift(r: Result<SinkoptStatus, Error>) -> SinkoptStatus {
    r.unwrap_or_else(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn graph_ref<'a>(g: *const SinkoptGraph) -> Option<&'a Graph> {
    g.as_ref().map(|h| &h.graph)
}

unsafe fn label_set(g: &Graph, labels: *const u64, len: usize) -> Result<NodeSet, SinkoptStatus> {
    if labels.is_null() && len > 0 {
        return Err(fail(SinkoptStatus::NullPointer, "labels is null"));
    }
    let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(labels, len) };
    g.set_from_labels(slice).map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn write_set(g: &Graph, s: &NodeSet, out: *mut u64, cap: usize, out_len: *mut usize) -> SinkoptStatus {
    if !out_len.is_null() {
        *out_len = s.len();
    }
    if cap < s.len() {
        return fail(SinkoptStatus::BufferTooSmall, format!("need {} slots, got {cap}", s.len()));
    }
    if out.is_null() && !s.is_empty() {
        return fail(SinkoptStatus::NullPointer, "output buffer is null");
    }
    for (k, label) in s.labels(g).into_iter().enumerate() {
        *out.add(k) = label;
    }
    SinkoptStatus::Ok
}

/// Parses a NUL-terminated edge list into a new graph handle.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sinkopt_graph_parse(text: *const c_char, out: *mut *mut SinkoptGraph) -> SinkoptStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(SinkoptStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(SinkoptStatus::InvalidUtf8, "edge list is not UTF-8");
        };
        lift(Graph::parse_edge_list(s).map(|p| {
            *out = Box::into_raw(Box::new(SinkoptGraph { graph: p.graph }));
            SinkoptStatus::Ok
        }))
    })
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `g` must come from [`sinkopt_graph_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sinkopt_graph_free(g: *mut SinkoptGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of nodes, 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sinkopt_graph_node_count(g: *const SinkoptGraph) -> usize {
    graph_ref(g).map_or(0, Graph::node_count)
}

/// Number of edges, 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sinkopt_graph_edge_count(g: *const SinkoptGraph) -> usize {
    graph_ref(g).map_or(0, Graph::edge_count)
}

/// Copies node labels in ascending order into `out[0..cap]`.
///
/// # Safety
/// `out` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn sinkopt_graph_labels(g: *const SinkoptGraph, out: *mut u64, cap: usize) -> SinkoptStatus {
    guard(|| {
        let Some(g) = graph_ref(g) else {
            return fail(SinkoptStatus::NullPointer, "graph is null");
        };
        write_set(g, &NodeSet::full(g.node_count()), out, cap, ptr::null_mut())
    })
}

/// Total expected hitting time `F` of the labelled set.
///
/// # Safety
/// `labels` must point to `len` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sinkopt_objective(
    g: *const SinkoptGraph,
    labels: *const u64,
    len: usize,
    out: *mut f64,
) -> SinkoptStatus {
    guard(|| {
        let (Some(g), false) = (graph_ref(g), out.is_null()) else {
            return fail(SinkoptStatus::NullPointer, "null argument");
        };
        let a = match label_set(g, labels, len) {
            Ok(a) => a,
            Err(s) => return s,
        };
        lift(Evaluator::new(g).objective(&a).map(|f| {
            *out = f;
            SinkoptStatus::Ok
        }))
    })
}

/// Hitting times from every node, in ascending label order; nodes in the
/// target get 0. `out` needs one slot per node.
///
/// # Safety
/// `labels` must point to `len` values and `out` to `cap` slots.
#[no_mangle]
pub unsafe extern "C" fn sinkopt_hitting_times(
    g: *const SinkoptGraph,
    labels: *const u64,
    len: usize,
    out: *mut f64,
    cap: usize,
) -> SinkoptStatus {
    guard(|| {
        let (Some(g), false) = (graph_ref(g), out.is_null()) else {
            return fail(SinkoptStatus::NullPointer, "null argument");
        };
        let n = g.node_count();
        if cap < n {
            return fail(SinkoptStatus::BufferTooSmall, format!("need {n} slots, got {cap}"));
        }
        let a = match label_set(g, labels, len) {
            Ok(a) => a,
            Err(s) => return s,
        };
        lift(hitting_times(g, &a).map(|prof| {
            let times = std::slice::from_raw_parts_mut(out, n);
            times.fill(0.0);
            for (&i, &t) in prof.nodes.iter().zip(&prof.times) {
                times[i] = t;
            }
            SinkoptStatus::Ok
        }))
    })
}

/// Vertex cover from a greedy maximal matching.
///
/// # Safety
/// `out` must have room for `cap` labels; `out_len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sinkopt_vertex_cover(
    g: *const SinkoptGraph,
    out: *mut u64,
    cap: usize,
    out_len: *mut usize,
) -> SinkoptStatus {
    guard(|| {
        let Some(g) = graph_ref(g) else {
            return fail(SinkoptStatus::NullPointer, "graph is null");
        };
        write_set(g, &vertex_cover_from_matching(g), out, cap, out_len)
    })
}

unsafe fn emit(
    g: &Graph,
    r: Result<(NodeSet, f64), Error>,
    out: *mut u64,
    cap: usize,
    out_f: *mut f64,
) -> SinkoptStatus {
    match r {
        Ok((s, f)) => {
            if !out_f.is_null() {
                *out_f = f;
            }
            write_set(g, &s, out, cap, ptr::null_mut())
        }
        Err(e) => fail(status_of(&e), e.to_string()),
    }
}

/// Classic greedy selection of `k` nodes.
///
/// # Safety
/// `out` must have room for `cap >= k` labels; `out_f` may be null.
#[no_mangle]
pub unsafe extern "C" fn sinkopt_greedy(
    g: *const SinkoptGraph,
    k: usize,
    out: *mut u64,
    cap: usize,
    out_f: *mut f64,
) -> SinkoptStatus {
    guard(|| {
        let Some(g) = graph_ref(g) else {
            return fail(SinkoptStatus::NullPointer, "graph is null");
        };
        let r = greedy(&Evaluator::new(g), k).map(|x| (x.set, x.f));
        emit(g, r, out, cap, out_f)
    })
}

/// Exhaustive optimum over all `k`-node sets.
///
/// # Safety
/// As for [`sinkopt_greedy`].
#[no_mangle]
pub unsafe extern "C" fn sinkopt_oracle(
    g: *const SinkoptGraph,
    k: usize,
    out: *mut u64,
    cap: usize,
    out_f: *mut f64,
) -> SinkoptStatus {
    guard(|| {
        let Some(g) = graph_ref(g) else {
            return fail(SinkoptStatus::NullPointer, "graph is null");
        };
        let r = brute_force_oracle(&Evaluator::new(g), k);
        emit(g, r, out, cap, out_f)
    })
}

/// Starter-set method with threshold `nu`, starters drawn from subsets of
/// the matching cover.
///
/// # Safety
/// As for [`sinkopt_greedy`].
#[no_mangle]
pub unsafe extern "C" fn sinkopt_solve(
    g: *const SinkoptGraph,
    k: usize,
    nu: f64,
    out: *mut u64,
    cap: usize,
    out_f: *mut f64,
) -> SinkoptStatus {
    guard(|| {
        let Some(g) = graph_ref(g) else {
            return fail(SinkoptStatus::NullPointer, "graph is null");
        };
        let ev = Evaluator::new(g);
        let r = RankContext::build(&ev, &vertex_cover_from_matching(g), None).and_then(|ctx| {
            let opts = SolveOptions {
                k,
                nu,
                max_card: DEFAULT_MAX_CARD,
                mode: StarterMode::CoverSubsets,
                include_greedy_prefix: false,
                swap_refine: false,
                with_oracle: false,
                tol: 1e-9,
            };
            run_starter_method(&ev, &ctx, &opts).map(|rep| (rep.offered.set, rep.offered.f))
        });
        emit(g, r, out, cap, out_f)
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Runs the command-line interface on `argv[0..argc]` (program name first).
/// Output strings must be released with [`sinkopt_string_free`].
///
/// # Safety
/// `argv` must hold `argc` valid C strings; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sinkopt_dispatch_json(
    argv: *const *const c_char,
    argc: usize,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
    exit_code: *mut c_int,
) -> SinkoptStatus {
    guard(|| {
        if (argv.is_null() && argc > 0) || out_stdout.is_null() || out_stderr.is_null() || exit_code.is_null() {
            return fail(SinkoptStatus::NullPointer, "null argument");
        }
        let mut args = Vec::with_capacity(argc);
        for k in 0..argc {
            let p = *argv.add(k);
            if p.is_null() {
                return fail(SinkoptStatus::NullPointer, format!("argv[{k}] is null"));
            }
            match CStr::from_ptr(p).to_str() {
                Ok(s) => args.push(s.to_owned()),
                Err(_) => return fail(SinkoptStatus::InvalidUtf8, format!("argv[{k}] is not UTF-8")),
            }
        }
        let out = sinkopt::cli::dispatch(args);
        *exit_code = out.code;
        *out_stdout = into_c_string(out.stdout);
        *out_stderr = into_c_string(out.stderr);
        SinkoptStatus::Ok
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sinkopt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sinkopt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
