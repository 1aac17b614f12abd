//! C ABI over the graphonlab toolkit.
//!
//! Conventions:
//! - Objects are opaque handles created by `gl_*_load` / constructor
//!   functions and released with the matching `gl_*_free`. Passing a handle
//!   to the wrong free, double-freeing, or using a freed handle is
//!   undefined behavior, as usual for C APIs.
//! - Every fallible function returns a [`GlStatus`]; outputs go through out
//!   pointers, which are written only on `GL_STATUS_OK`.
//! - `gl_last_error_message` returns a thread-local message for the most
//!   recent failure on the calling thread.
//! - All panics are caught at the boundary and reported as
//!   `GL_STATUS_PANIC`.

use graphonlab::dist::{
    cut_distance_fractional, cut_distance_graphs_labeled, cut_norm, edit_distance_graphs,
    CutNormMode,
};
use graphonlab::graph::{FractionalColoring, KColoredDigraph, SimpleGraph};
use graphonlab::kernel::{kernel_of_graph, pullback_coloring, KDigraphon, StepKernel};
use graphonlab::property::TestProperty;
use graphonlab::sample::{
    round_coloring, sample_from_digraphon, sample_graph_from_graphon, sample_induced, RngSpec,
};
use graphonlab::tester::{acceptance_probability, maxcut, MaxCutMode, TesterSpec};
use graphonlab::Error;
use libc::{c_char, size_t};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    /// Precondition violation on operation inputs.
    Invalid = 5,
    /// Exact mode requested beyond its size guard.
    SizeGuard = 6,
    UnknownId = 7,
    /// An internal panic was caught at the boundary.
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> GlStatus {
    match err {
        Error::Io(_) => GlStatus::Io,
        Error::Parse { .. } => GlStatus::Parse,
        Error::Invalid(_) => GlStatus::Invalid,
        Error::SizeGuard(_) => GlStatus::SizeGuard,
        Error::UnknownId(_) => GlStatus::UnknownId,
    }
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Undirected simple graph handle.
pub struct GlGraph(SimpleGraph);
/// Step-kernel handle.
pub struct GlKernel(StepKernel);
/// k-digraphon handle.
pub struct GlDigraphon(KDigraphon);
/// k-colored digraph handle.
pub struct GlColoredDigraph(KColoredDigraph);
/// Fractional coloring handle.
pub struct GlFractional(FractionalColoring);

fn guard<T>(body: impl FnOnce() -> Result<T, GlStatus>, write: impl FnOnce(T)) -> GlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(value)) => {
            write(value);
            GlStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            GlStatus::Panic
        }
    }
}

fn fail(err: Error) -> GlStatus {
    let status = status_of(&err);
    set_error(&err.to_string());
    status
}

unsafe fn path_str<'a>(path: *const c_char) -> Result<&'a str, GlStatus> {
    if path.is_null() {
        set_error("null path");
        return Err(GlStatus::NullArgument);
    }
    CStr::from_ptr(path).to_str().map_err(|_| {
        set_error("path is not valid UTF-8");
        GlStatus::InvalidUtf8
    })
}

unsafe fn deref<'a, T>(ptr: *const T) -> Result<&'a T, GlStatus> {
    if ptr.is_null() {
        set_error("null handle");
        return Err(GlStatus::NullArgument);
    }
    Ok(&*ptr)
}

fn out_write<T>(out: *mut T, value: T) -> Result<(), GlStatus> {
    if out.is_null() {
        set_error("null out pointer");
        return Err(GlStatus::NullArgument);
    }
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn load_impl<T, H>(
    path: *const c_char,
    out: *mut *mut H,
    load: fn(&str) -> Result<T, Error>,
    wrap: fn(T) -> H,
) -> GlStatus {
    guard(
        || {
            let path = path_str(path)?;
            let obj = load(path).map_err(fail)?;
            if out.is_null() {
                set_error("null out pointer");
                return Err(GlStatus::NullArgument);
            }
            Ok(Box::into_raw(Box::new(wrap(obj))))
        },
        |ptr| unsafe { out.write(ptr) },
    )
}

unsafe fn save_impl<H>(
    handle: *const H,
    path: *const c_char,
    save: impl FnOnce(&H, &str) -> Result<(), Error>,
) -> GlStatus {
    guard(
        || {
            let h = deref(handle)?;
            let path = path_str(path)?;
            save(h, path).map_err(fail)
        },
        |()| {},
    )
}

unsafe fn free_impl<H>(handle: *mut H) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Loads a graph from its text format.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_load(path: *const c_char, out: *mut *mut GlGraph) -> GlStatus {
    load_impl(path, out, |p| SimpleGraph::load(p), GlGraph)
}

/// Writes a graph in its text format.
///
/// # Safety
/// `handle` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_save(handle: *const GlGraph, path: *const c_char) -> GlStatus {
    save_impl(handle, path, |h, p| h.0.save(p))
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `handle` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_free(handle: *mut GlGraph) {
    free_impl(handle)
}

/// Loads a step kernel from its text format.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_kernel_load(path: *const c_char, out: *mut *mut GlKernel) -> GlStatus {
    load_impl(path, out, |p| StepKernel::load(p), GlKernel)
}

/// Writes a step kernel in its text format (equal partitions only).
///
/// # Safety
/// `handle` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gl_kernel_save(handle: *const GlKernel, path: *const c_char) -> GlStatus {
    save_impl(handle, path, |h, p| h.0.save(p))
}

/// Releases a kernel handle. Null is ignored.
///
/// # Safety
/// `handle` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gl_kernel_free(handle: *mut GlKernel) {
    free_impl(handle)
}

/// Loads a k-digraphon from its text format.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_digraphon_load(
    path: *const c_char,
    out: *mut *mut GlDigraphon,
) -> GlStatus {
    load_impl(path, out, |p| KDigraphon::load(p), GlDigraphon)
}

/// Writes a k-digraphon in its text format.
///
/// # Safety
/// `handle` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gl_digraphon_save(
    handle: *const GlDigraphon,
    path: *const c_char,
) -> GlStatus {
    save_impl(handle, path, |h, p| h.0.save(p))
}

/// Releases a digraphon handle. Null is ignored.
///
/// # Safety
/// `handle` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gl_digraphon_free(handle: *mut GlDigraphon) {
    free_impl(handle)
}

/// Loads a k-colored digraph from its text format.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_colored_load(
    path: *const c_char,
    out: *mut *mut GlColoredDigraph,
) -> GlStatus {
    load_impl(path, out, |p| KColoredDigraph::load(p), GlColoredDigraph)
}

/// Writes a k-colored digraph in its text format.
///
/// # Safety
/// `handle` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gl_colored_save(
    handle: *const GlColoredDigraph,
    path: *const c_char,
) -> GlStatus {
    save_impl(handle, path, |h, p| h.0.save(p))
}

/// Releases a colored-digraph handle. Null is ignored.
///
/// # Safety
/// `handle` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gl_colored_free(handle: *mut GlColoredDigraph) {
    free_impl(handle)
}

/// Loads a fractional coloring from its text format.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_fractional_load(
    path: *const c_char,
    out: *mut *mut GlFractional,
) -> GlStatus {
    load_impl(path, out, |p| FractionalColoring::load(p), GlFractional)
}

/// Writes a fractional coloring in its text format.
///
/// # Safety
/// `handle` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gl_fractional_save(
    handle: *const GlFractional,
    path: *const c_char,
) -> GlStatus {
    save_impl(handle, path, |h, p| h.0.save(p))
}

/// Releases a fractional-coloring handle. Null is ignored.
///
/// # Safety
/// `handle` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gl_fractional_free(handle: *mut GlFractional) {
    free_impl(handle)
}

/// Builds a graph from a flat array of 0-based endpoint pairs
/// `[u0, v0, u1, v1, ...]`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable u32 values (may be null
/// when `edge_count` is 0); `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_from_edges(
    n: size_t,
    edges: *const u32,
    edge_count: size_t,
    out: *mut *mut GlGraph,
) -> GlStatus {
    guard(
        || {
            if edges.is_null() && edge_count > 0 {
                set_error("null edge array");
                return Err(GlStatus::NullArgument);
            }
            let mut g = SimpleGraph::empty(n);
            for e in 0..edge_count {
                let u = *edges.add(2 * e) as usize;
                let v = *edges.add(2 * e + 1) as usize;
                g.add_edge(u, v).map_err(fail)?;
            }
            if out.is_null() {
                set_error("null out pointer");
                return Err(GlStatus::NullArgument);
            }
            Ok(Box::into_raw(Box::new(GlGraph(g))))
        },
        |ptr| unsafe { out.write(ptr) },
    )
}

/// Node count of a graph handle.
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_node_count(g: *const GlGraph) -> size_t {
    deref(g).map(|g| g.0.n()).unwrap_or(0)
}

/// Edge count of a graph handle.
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_edge_count(g: *const GlGraph) -> size_t {
    deref(g).map(|g| g.0.edge_count()).unwrap_or(0)
}

/// Adjacency query; false for out-of-range ids or a null handle.
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_has_edge(g: *const GlGraph, u: size_t, v: size_t) -> bool {
    match deref(g) {
        Ok(g) => u < g.0.n() && v < g.0.n() && u != v && g.0.has_edge(u, v),
        Err(_) => false,
    }
}

/// 0/1 step kernel of a graph.
///
/// # Safety
/// `g` must be a live graph handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_kernel_of_graph(g: *const GlGraph, out: *mut *mut GlKernel) -> GlStatus {
    guard(
        || {
            let g = deref(g)?;
            if out.is_null() {
                set_error("null out pointer");
                return Err(GlStatus::NullArgument);
            }
            Ok(Box::into_raw(Box::new(GlKernel(kernel_of_graph(&g.0)))))
        },
        |ptr| unsafe { out.write(ptr) },
    )
}

/// Cut norm of a step kernel. Exact mode enumerates subsets and is guarded;
/// otherwise a multi-start local search reports a lower bound with
/// `*out_exact = false`.
///
/// # Safety
/// `k` must be a live kernel handle; out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn gl_kernel_cut_norm(
    k: *const GlKernel,
    exact: bool,
    out_value: *mut f64,
    out_exact: *mut bool,
) -> GlStatus {
    guard(
        || {
            let k = deref(k)?;
            let mode = if exact {
                CutNormMode::Exact
            } else {
                CutNormMode::Auto
            };
            let r = cut_norm(&k.0, mode).map_err(fail)?;
            out_write(out_value, r.value)?;
            out_write(out_exact, r.exact)?;
            Ok(())
        },
        |()| {},
    )
}

/// Labeled cut distance of two graphs on the same node set.
///
/// # Safety
/// Both handles must be live; out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn gl_cut_distance_graphs(
    a: *const GlGraph,
    b: *const GlGraph,
    out_value: *mut f64,
    out_exact: *mut bool,
) -> GlStatus {
    guard(
        || {
            let a = deref(a)?;
            let b = deref(b)?;
            let r = cut_distance_graphs_labeled(&a.0, &b.0, CutNormMode::Auto).map_err(fail)?;
            out_write(out_value, r.value)?;
            out_write(out_exact, r.exact)?;
            Ok(())
        },
        |()| {},
    )
}

/// Edit distance |E Δ E'| / n² of two graphs on the same node set.
///
/// # Safety
/// Both handles must be live; `out_value` valid.
#[no_mangle]
pub unsafe extern "C" fn gl_edit_distance_graphs(
    a: *const GlGraph,
    b: *const GlGraph,
    out_value: *mut f64,
) -> GlStatus {
    guard(
        || {
            let a = deref(a)?;
            let b = deref(b)?;
            let v = edit_distance_graphs(&a.0, &b.0).map_err(fail)?;
            out_write(out_value, v)?;
            Ok(())
        },
        |()| {},
    )
}

/// Cut distance of two fractional colorings on the same node set.
///
/// # Safety
/// Both handles must be live; out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn gl_cut_distance_fractional(
    a: *const GlFractional,
    b: *const GlFractional,
    out_value: *mut f64,
    out_exact: *mut bool,
) -> GlStatus {
    guard(
        || {
            let a = deref(a)?;
            let b = deref(b)?;
            let d = cut_distance_fractional(&a.0, &b.0, CutNormMode::Auto).map_err(fail)?;
            out_write(out_value, d.value)?;
            out_write(out_exact, d.exact)?;
            Ok(())
        },
        |()| {},
    )
}

/// Shadow of a colored digraph: edges whose pair carries a color <= m in
/// either direction.
///
/// # Safety
/// `l` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gl_shadow(
    l: *const GlColoredDigraph,
    m: u8,
    out: *mut *mut GlGraph,
) -> GlStatus {
    guard(
        || {
            let l = deref(l)?;
            let g = graphonlab::shadow(&l.0, m).map_err(fail)?;
            if out.is_null() {
                set_error("null out pointer");
                return Err(GlStatus::NullArgument);
            }
            Ok(Box::into_raw(Box::new(GlGraph(g))))
        },
        |ptr| unsafe { out.write(ptr) },
    )
}

/// Whether both directions of every pair agree about being <= m.
///
/// # Safety
/// `l` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gl_is_consistent_coloring(
    l: *const GlColoredDigraph,
    m: u8,
    out: *mut bool,
) -> GlStatus {
    guard(
        || {
            let l = deref(l)?;
            let v = graphonlab::is_consistent_coloring(&l.0, m).map_err(fail)?;
            out_write(out, v)?;
            Ok(())
        },
        |()| {},
    )
}

/// Pulls a k-digraphon's coloring back onto a graph; `out_degenerate`
/// counts cells where the uniform fallback replaced a vanishing
/// denominator.
///
/// # Safety
/// Handles must be live; out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn gl_pullback_coloring(
    f: *const GlGraph,
    w: *const GlDigraphon,
    m: u8,
    out: *mut *mut GlFractional,
    out_degenerate: *mut size_t,
) -> GlStatus {
    guard(
        || {
            let f = deref(f)?;
            let w = deref(w)?;
            let pb = pullback_coloring(&f.0, &w.0, m).map_err(fail)?;
            out_write(out_degenerate, pb.degenerate_cells)?;
            if out.is_null() {
                set_error("null out pointer");
                return Err(GlStatus::NullArgument);
            }
            Ok(Box::into_raw(Box::new(GlFractional(pb.coloring))))
        },
        |ptr| unsafe { out.write(ptr) },
    )
}

/// Randomized rounding of a fractional coloring (independent per ordered
/// pair) under the given seed/stream.
///
/// # Safety
/// `h` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gl_round_coloring(
    h: *const GlFractional,
    master_seed: u64,
    stream: u64,
    out: *mut *mut GlColoredDigraph,
) -> GlStatus {
    guard(
        || {
            let h = deref(h)?;
            let l = round_coloring(&h.0, RngSpec::new(master_seed, stream));
            if out.is_null() {
                set_error("null out pointer");
                return Err(GlStatus::NullArgument);
            }
            Ok(Box::into_raw(Box::new(GlColoredDigraph(l))))
        },
        |ptr| unsafe { out.write(ptr) },
    )
}

/// Uniform random induced subgraph on r nodes.
///
/// # Safety
/// `g` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gl_sample_induced(
    g: *const GlGraph,
    r: size_t,
    master_seed: u64,
    stream: u64,
    out: *mut *mut GlGraph,
) -> GlStatus {
    guard(
        || {
            let g = deref(g)?;
            let s = sample_induced(&g.0, r, RngSpec::new(master_seed, stream)).map_err(fail)?;
            if out.is_null() {
                set_error("null out pointer");
                return Err(GlStatus::NullArgument);
            }
            Ok(Box::into_raw(Box::new(GlGraph(s))))
        },
        |ptr| unsafe { out.write(ptr) },
    )
}

/// W-random graph from a symmetric step kernel with values in the unit interval.
///
/// # Safety
/// `u` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gl_sample_graph_from_graphon(
    u: *const GlKernel,
    n: size_t,
    master_seed: u64,
    stream: u64,
    out: *mut *mut GlGraph,
) -> GlStatus {
    guard(
        || {
            let u = deref(u)?;
            let g = sample_graph_from_graphon(&u.0, n, RngSpec::new(master_seed, stream))
                .map_err(fail)?;
            if out.is_null() {
                set_error("null out pointer");
                return Err(GlStatus::NullArgument);
            }
            Ok(Box::into_raw(Box::new(GlGraph(g))))
        },
        |ptr| unsafe { out.write(ptr) },
    )
}

/// r-node colored digraph sampled from a k-digraphon.
///
/// # Safety
/// `w` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gl_sample_from_digraphon(
    w: *const GlDigraphon,
    r: size_t,
    master_seed: u64,
    stream: u64,
    out: *mut *mut GlColoredDigraph,
) -> GlStatus {
    guard(
        || {
            let w = deref(w)?;
            let l =
                sample_from_digraphon(&w.0, r, RngSpec::new(master_seed, stream)).map_err(fail)?;
            if out.is_null() {
                set_error("null out pointer");
                return Err(GlStatus::NullArgument);
            }
            Ok(Box::into_raw(Box::new(GlColoredDigraph(l))))
        },
        |ptr| unsafe { out.write(ptr) },
    )
}

/// Max-cut density (cut edges / n²). Exact mode is guarded; otherwise the
/// local-search lower bound is reported with `*out_exact = false`.
///
/// # Safety
/// `g` must be a live handle; out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn gl_maxcut_density(
    g: *const GlGraph,
    exact: bool,
    out_value: *mut f64,
    out_exact: *mut bool,
) -> GlStatus {
    guard(
        || {
            let g = deref(g)?;
            let mode = if exact {
                MaxCutMode::Exact
            } else {
                MaxCutMode::Auto
            };
            let mc = maxcut(&g.0, mode).map_err(fail)?;
            out_write(out_value, mc.density)?;
            out_write(out_exact, mc.exact)?;
            Ok(())
        },
        |()| {},
    )
}

/// Acceptance frequency of the max-cut tester (threshold c, sample size r)
/// over `trials` seeded samples.
///
/// # Safety
/// `g` must be a live handle; `out_acceptance` valid.
#[no_mangle]
pub unsafe extern "C" fn gl_tester_acceptance(
    g: *const GlGraph,
    c: f64,
    r: size_t,
    trials: size_t,
    master_seed: u64,
    stream: u64,
    out_acceptance: *mut f64,
) -> GlStatus {
    guard(
        || {
            let g = deref(g)?;
            let spec = TesterSpec::new(
                TestProperty::MaxCut {
                    c,
                    margin_scale: None,
                },
                r,
                trials,
            )
            .map_err(fail)?;
            let rep = acceptance_probability(&g.0, &spec, RngSpec::new(master_seed, stream))
                .map_err(fail)?;
            out_write(out_acceptance, rep.acceptance)?;
            Ok(())
        },
        |()| {},
    )
}
