//! C interface to the gdesign library.
//!
//! Graphs and spectra are opaque handles created by `gd_*_new` style
//! functions and released with the matching `_free`. Every fallible call
//! returns a [`GdStatus`]; on failure a message is available from
//! [`gd_last_error`] on the same thread until the next failing call.
//! Vertex indices are 0-based. No function retains a caller pointer.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gdesign::bounds::{check_theorem, CheckOptions};
use gdesign::catalog::catalog_get;
use gdesign::design::{design_strength, Design};
use gdesign::graph::{from_graph6, parse_lcf, Graph, VertexSubset};
use gdesign::search::{brute_force, BruteForceOptions, DEFAULT_WITNESS_CAP};
use gdesign::spectral::{ClassBasis, Spectrum};
use gdesign::weighted::find_minor_design;
use gdesign::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    BufferTooSmall = 3,
    Panic = 4,
    VertexOutOfRange = 10,
    SelfLoop = 11,
    Disconnected = 12,
    EmptyGraph = 13,
    EmptySubset = 14,
    DuplicateVertex = 15,
    Graph6 = 16,
    Lcf = 17,
    EdgeList = 18,
    Parameter = 19,
    UnknownGraph = 20,
    CatalogInvariant = 21,
    NonRegular = 22,
    NotSymmetric = 23,
    EigenNonConvergence = 24,
    DimensionMismatch = 25,
    WeightNormalization = 26,
    NonPositiveWeights = 27,
    BudgetExceeded = 28,
    SingularMinor = 29,
    NoMinor = 30,
}

impl From<&Error> for GdStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::VertexOutOfRange { .. } => GdStatus::VertexOutOfRange,
            Error::SelfLoop(_) => GdStatus::SelfLoop,
            Error::Disconnected { .. } => GdStatus::Disconnected,
            Error::EmptyGraph => GdStatus::EmptyGraph,
            Error::EmptySubset => GdStatus::EmptySubset,
            Error::DuplicateVertex(_) => GdStatus::DuplicateVertex,
            Error::Graph6(_) => GdStatus::Graph6,
            Error::Lcf(_) => GdStatus::Lcf,
            Error::EdgeList(_) => GdStatus::EdgeList,
            Error::Parameter(_) => GdStatus::Parameter,
            Error::UnknownGraph(_) => GdStatus::UnknownGraph,
            Error::CatalogInvariant { .. } => GdStatus::CatalogInvariant,
            Error::NonRegular { .. } => GdStatus::NonRegular,
            Error::NotSymmetric(_) => GdStatus::NotSymmetric,
            Error::EigenNonConvergence => GdStatus::EigenNonConvergence,
            Error::DimensionMismatch { .. } => GdStatus::DimensionMismatch,
            Error::WeightNormalization(_) => GdStatus::WeightNormalization,
            Error::NonPositiveWeights => GdStatus::NonPositiveWeights,
            Error::BudgetExceeded { .. } => GdStatus::BudgetExceeded,
            Error::SingularMinor { .. } => GdStatus::SingularMinor,
            Error::NoMinor(_) => GdStatus::NoMinor,
        }
    }
}

/// Opaque graph handle.
pub struct GdGraph(Graph);

/// Opaque spectrum handle: eigenpairs plus the frequency-class bases.
pub struct GdSpectrum {
    spectrum: Spectrum,
    basis: ClassBasis,
}

/// Strength of a design.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct GdStrength {
    /// Leading eigenfunctions integrated under the best ordering.
    pub k: usize,
    /// Eigenfunctions in fully integrated frequency classes.
    pub k_min: usize,
    /// Frequency of the first class that is not integrated; 0 if none.
    pub lambda_star: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: GdStatus, msg: impl Into<String>) -> GdStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> GdStatus {
    fail(GdStatus::from(&e), e.to_string())
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), GdStatus>) -> GdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GdStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(GdStatus::Panic, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, GdStatus>;
}

impl<T> OrStatus<T> for Result<T, Error> {
    fn or_status(self) -> Result<T, GdStatus> {
        self.map_err(from_error)
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, GdStatus> {
    if p.is_null() {
        return Err(fail(GdStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(GdStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], GdStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(GdStatus::NullPointer, "null array"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut<'a, T>(p: *mut T, len: usize) -> Result<&'a mut [T], GdStatus> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(fail(GdStatus::NullPointer, "null output array"));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, GdStatus> {
    p.as_ref().ok_or_else(|| fail(GdStatus::NullPointer, "null handle"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), GdStatus> {
    if out.is_null() {
        return Err(fail(GdStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn design(n: usize, vertices: *const usize, len: usize, weights: *const f64) -> Result<Design, GdStatus> {
    let members = slice(vertices, len)?;
    let subset = VertexSubset::new(n, members.iter().copied()).or_status()?;
    if weights.is_null() {
        return Ok(Design::equal(subset));
    }
    let given = slice(weights, len)?;
    let ordered = subset
        .members()
        .iter()
        .map(|v| given[members.iter().position(|m| m == v).unwrap()])
        .collect();
    Design::weighted(subset, ordered).or_status()
}

/// Message for the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Stable lowercase name of a status code.
#[no_mangle]
pub extern "C" fn gd_status_name(status: GdStatus) -> *const c_char {
    let name: &'static CStr = match status {
        GdStatus::Ok => c"ok",
        GdStatus::NullPointer => c"null_pointer",
        GdStatus::InvalidUtf8 => c"invalid_utf8",
        GdStatus::BufferTooSmall => c"buffer_too_small",
        GdStatus::Panic => c"panic",
        GdStatus::VertexOutOfRange => c"vertex_out_of_range",
        GdStatus::SelfLoop => c"self_loop",
        GdStatus::Disconnected => c"disconnected",
        GdStatus::EmptyGraph => c"empty_graph",
        GdStatus::EmptySubset => c"empty_subset",
        GdStatus::DuplicateVertex => c"duplicate_vertex",
        GdStatus::Graph6 => c"graph6",
        GdStatus::Lcf => c"lcf",
        GdStatus::EdgeList => c"edge_list",
        GdStatus::Parameter => c"parameter",
        GdStatus::UnknownGraph => c"unknown_graph",
        GdStatus::CatalogInvariant => c"catalog_invariant",
        GdStatus::NonRegular => c"non_regular",
        GdStatus::NotSymmetric => c"not_symmetric",
        GdStatus::EigenNonConvergence => c"eigen_non_convergence",
        GdStatus::DimensionMismatch => c"dimension_mismatch",
        GdStatus::WeightNormalization => c"weight_normalization",
        GdStatus::NonPositiveWeights => c"non_positive_weights",
        GdStatus::BudgetExceeded => c"budget_exceeded",
        GdStatus::SingularMinor => c"singular_minor",
        GdStatus::NoMinor => c"no_minor",
    };
    name.as_ptr()
}

fn boxed(out: *mut *mut GdGraph, g: Graph) -> Result<(), GdStatus> {
    unsafe { write(out, Box::into_raw(Box::new(GdGraph(g)))) }
}

/// Builds a named catalog graph.
#[no_mangle]
pub unsafe extern "C" fn gd_graph_from_catalog(name: *const c_char, out: *mut *mut GdGraph) -> GdStatus {
    guard(|| boxed(out, catalog_get(text(name)?).or_status()?))
}

/// Builds a graph from an LCF code such as `[5,-9,7,-7,9,-5]^4`.
#[no_mangle]
pub unsafe extern "C" fn gd_graph_from_lcf(code: *const c_char, out: *mut *mut GdGraph) -> GdStatus {
    guard(|| boxed(out, parse_lcf(text(code)?).or_status()?.build().or_status()?))
}

/// Builds a graph from a graph6 string.
#[no_mangle]
pub unsafe extern "C" fn gd_graph_from_graph6(g6: *const c_char, out: *mut *mut GdGraph) -> GdStatus {
    guard(|| boxed(out, from_graph6(text(g6)?.trim()).or_status()?))
}

/// Builds a connected simple graph on `n` vertices from `edge_count` pairs
/// stored flat in `edges` (`u0, v0, u1, v1, ...`).
#[no_mangle]
pub unsafe extern "C" fn gd_graph_from_edges(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut GdGraph,
) -> GdStatus {
    guard(|| {
        let flat = slice(edges, 2 * edge_count)?;
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        boxed(out, Graph::from_edge_list(n, &pairs).or_status()?)
    })
}

/// Releases a graph. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gd_graph_free(graph: *mut GdGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of vertices, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn gd_graph_order(graph: *const GdGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.n())
}

/// Number of edges, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn gd_graph_edge_count(graph: *const GdGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Hop distances from the vertex set to every vertex; `out` holds `n` entries.
#[no_mangle]
pub unsafe extern "C" fn gd_graph_distances(
    graph: *const GdGraph,
    sources: *const usize,
    source_count: usize,
    out: *mut usize,
    out_len: usize,
) -> GdStatus {
    guard(|| {
        let g = &handle(graph)?.0;
        if out_len < g.n() {
            return Err(fail(GdStatus::BufferTooSmall, format!("need {} entries", g.n())));
        }
        let w = VertexSubset::new(g.n(), slice(sources, source_count)?.iter().copied()).or_status()?;
        slice_mut(out, g.n())?.copy_from_slice(&g.distances_from(&w));
        Ok(())
    })
}

/// Eigendecomposition of the random-walk operator with frequency classes
/// split at gaps above `eps_deg`.
#[no_mangle]
pub unsafe extern "C" fn gd_spectrum_new(
    graph: *const GdGraph,
    eps_eig: f64,
    eps_deg: f64,
    out: *mut *mut GdSpectrum,
) -> GdStatus {
    guard(|| {
        if !(eps_eig > 0.0 && eps_deg > 0.0) {
            return Err(fail(GdStatus::Parameter, "tolerances must be positive"));
        }
        let spectrum = Spectrum::of(&handle(graph)?.0, eps_eig).or_status()?;
        let basis = ClassBasis::new(&spectrum, eps_deg);
        write(out, Box::into_raw(Box::new(GdSpectrum { spectrum, basis })))
    })
}

/// Releases a spectrum. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gd_spectrum_free(spectrum: *mut GdSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// Eigenvalues of `AD^-1 - I` in frequency order; `out` holds `n` entries.
#[no_mangle]
pub unsafe extern "C" fn gd_spectrum_eigenvalues(spectrum: *const GdSpectrum, out: *mut f64, out_len: usize) -> GdStatus {
    guard(|| {
        let s = &handle(spectrum)?.spectrum;
        if out_len < s.n() {
            return Err(fail(GdStatus::BufferTooSmall, format!("need {} entries", s.n())));
        }
        slice_mut(out, s.n())?.copy_from_slice(&s.ordered_eigenvalues());
        Ok(())
    })
}

/// Number of frequency classes.
#[no_mangle]
pub unsafe extern "C" fn gd_spectrum_class_count(spectrum: *const GdSpectrum) -> usize {
    spectrum.as_ref().map_or(0, |s| s.basis.len())
}

/// Strength of a design. `weights` may be null for equal weights; otherwise
/// it holds one weight per vertex in the order given, summing to 1.
#[no_mangle]
pub unsafe extern "C" fn gd_design_strength(
    spectrum: *const GdSpectrum,
    vertices: *const usize,
    len: usize,
    weights: *const f64,
    eps_int: f64,
    out: *mut GdStrength,
) -> GdStatus {
    guard(|| {
        let s = handle(spectrum)?;
        let d = design(s.spectrum.n(), vertices, len, weights)?;
        let r = design_strength(&s.basis, &d, eps_int).or_status()?;
        write(out, GdStrength { k: r.k, k_min: r.k_min, lambda_star: r.lambda_star })
    })
}

/// Checks the neighbourhood-growth bounds at every radius for a positive-weight
/// design on a regular graph. `passed` is set to 1 or 0.
#[no_mangle]
pub unsafe extern "C" fn gd_check_bounds(
    graph: *const GdGraph,
    spectrum: *const GdSpectrum,
    vertices: *const usize,
    len: usize,
    weights: *const f64,
    eps_int: f64,
    passed: *mut i32,
) -> GdStatus {
    guard(|| {
        let g = &handle(graph)?.0;
        let s = handle(spectrum)?;
        if s.spectrum.n() != g.n() {
            return Err(fail(GdStatus::DimensionMismatch, "graph and spectrum differ in order"));
        }
        let d = design(g.n(), vertices, len, weights)?;
        let c = check_theorem(g, &s.basis, &d, eps_int, CheckOptions::default()).or_status()?;
        write(passed, i32::from(c.passed))
    })
}

/// Exhaustive search over equal-weight subsets of `size` vertices. Writes the
/// best strength, the number of maximizers and the lexicographically first
/// maximizer (`size` entries) to `witness`.
#[no_mangle]
pub unsafe extern "C" fn gd_brute_force(
    spectrum: *const GdSpectrum,
    size: usize,
    eps_int: f64,
    budget: u64,
    best_k: *mut usize,
    witness_count: *mut u64,
    witness: *mut usize,
) -> GdStatus {
    guard(|| {
        let s = handle(spectrum)?;
        let r = brute_force(&s.basis, size, eps_int, BruteForceOptions { budget, witness_cap: DEFAULT_WITNESS_CAP })
            .or_status()?;
        slice_mut(witness, size)?.copy_from_slice(r.witnesses[0].members());
        write(best_k, r.best_k)?;
        write(witness_count, r.witness_count)
    })
}

/// `k` vertices and weights integrating the first `k` eigenfunctions.
/// `vertices` and `weights` hold `k` entries each.
#[no_mangle]
pub unsafe extern "C" fn gd_minor_design(
    spectrum: *const GdSpectrum,
    k: usize,
    eps_sing: f64,
    vertices: *mut usize,
    weights: *mut f64,
    residual: *mut f64,
) -> GdStatus {
    guard(|| {
        let s = handle(spectrum)?;
        let sol = find_minor_design(&s.spectrum, k, eps_sing).or_status()?;
        slice_mut(vertices, k)?.copy_from_slice(sol.subset.members());
        slice_mut(weights, k)?.copy_from_slice(&sol.weights);
        write(residual, sol.residual)
    })
}
