//! C ABI for the ebfs search engine.
//!
//! Instances and results are opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call
//! returns an [`EbfsStatus`]; on failure a message for the calling thread
//! is available from [`ebfs_last_error`] until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ebfs::cli::format::{parse_graph, parse_knapsack, FormatError};
use ebfs::engine::GreedyViolationPolicy;
use ebfs::problems::{Edge, Graph, Item, KnapsackInstance, KnapsackTheory, KruskalTheory, PathTreeTheory, PrimTheory, SpspTheory};
use ebfs::{solve, EngineConfig, EngineError, Mode, ProblemTheory, SearchStats};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EbfsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Validation = 4,
    GreedyViolation = 5,
    NoOptimum = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EbfsProblem {
    Spsp = 0,
    Sssp = 1,
    MstPrim = 2,
    MstKruskal = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EbfsMode {
    Exhaustive = 0,
    Greedy = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct EbfsOptions {
    pub mode: EbfsMode,
    /// Rerun exhaustively instead of failing when greedy mode keeps more
    /// than one space at a level.
    pub greedy_fallback: bool,
    /// 0 runs on the calling thread.
    pub threads: u32,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct EbfsStats {
    pub levels: u64,
    pub generated: u64,
    pub duplicates_removed: u64,
    pub equivalence_merged: u64,
    pub dominated_pruned: u64,
    pub retained: u64,
    pub locals_found: u64,
    pub greedy_fallbacks: u64,
    pub max_undominated_width: u64,
}

pub struct EbfsGraph(Graph);

pub struct EbfsKnapsack(KnapsackInstance);

pub struct EbfsResult {
    optima: Vec<Vec<usize>>,
    optimal_cost: Option<u64>,
    stats: SearchStats,
}

struct Failure(EbfsStatus, String);

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        let status = match e {
            FormatError::Parse { .. } => EbfsStatus::Parse,
            FormatError::Validation { .. } => EbfsStatus::Validation,
        };
        Failure(status, e.to_string())
    }
}

impl From<ebfs::problems::ProblemError> for Failure {
    fn from(e: ebfs::problems::ProblemError) -> Self {
        Failure(EbfsStatus::Validation, e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        Failure(EbfsStatus::GreedyViolation, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> EbfsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EbfsStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal error: {message}"));
            EbfsStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(EbfsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null("text"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(EbfsStatus::InvalidArgument, format!("text is not UTF-8: {e}")))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Options matching the CLI defaults: exhaustive, no fallback, one thread.
#[no_mangle]
pub extern "C" fn ebfs_options_default() -> EbfsOptions {
    EbfsOptions {
        mode: EbfsMode::Exhaustive,
        greedy_fallback: false,
        threads: 0,
    }
}

unsafe fn config(options: *const EbfsOptions) -> EngineConfig {
    let o = options.as_ref().copied().unwrap_or_else(|| ebfs_options_default());
    EngineConfig {
        mode: match o.mode {
            EbfsMode::Exhaustive => Mode::Exhaustive,
            EbfsMode::Greedy => Mode::Greedy,
        },
        greedy_violation: if o.greedy_fallback {
            GreedyViolationPolicy::FallbackExhaustive
        } else {
            GreedyViolationPolicy::Fail
        },
        threads: (o.threads > 0).then_some(o.threads as usize),
        ..EngineConfig::default()
    }
}

/// Message for the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ebfs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static name of a status code, such as `"parse"`.
#[no_mangle]
pub extern "C" fn ebfs_status_name(status: EbfsStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        EbfsStatus::Ok => b"ok\0",
        EbfsStatus::NullPointer => b"null pointer\0",
        EbfsStatus::InvalidArgument => b"invalid argument\0",
        EbfsStatus::Parse => b"parse\0",
        EbfsStatus::Validation => b"validation\0",
        EbfsStatus::GreedyViolation => b"greedy violation\0",
        EbfsStatus::NoOptimum => b"no optimum\0",
        EbfsStatus::BufferTooSmall => b"buffer too small\0",
        EbfsStatus::Panic => b"panic\0",
    };
    name.as_ptr().cast()
}

/// Parses the edge-list text format.
///
/// # Safety
/// `input` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ebfs_graph_parse(input: *const c_char, out: *mut *mut EbfsGraph) -> EbfsStatus {
    guard(|| store(out, EbfsGraph(parse_graph(text(input)?)?)))
}

/// Builds a graph from parallel arrays of `edges` endpoints and weights.
///
/// # Safety
/// Each array must hold `edges` elements and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ebfs_graph_from_edges(
    nodes: usize,
    from: *const usize,
    to: *const usize,
    weight: *const u64,
    edges: usize,
    out: *mut *mut EbfsGraph,
) -> EbfsStatus {
    guard(|| {
        let (from, to, weight) = (slice(from, edges, "from")?, slice(to, edges, "to")?, slice(weight, edges, "weight")?);
        let list = (0..edges).map(|i| Edge::new(from[i], to[i], weight[i])).collect();
        store(out, EbfsGraph(Graph::new(nodes, list)?))
    })
}

/// # Safety
/// `graph` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn ebfs_graph_node_count(graph: *const EbfsGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.node_count())
}

/// # Safety
/// `graph` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn ebfs_graph_edge_count(graph: *const EbfsGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `graph` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ebfs_graph_free(graph: *mut EbfsGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Parses the knapsack text format.
///
/// # Safety
/// `input` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ebfs_knapsack_parse(input: *const c_char, out: *mut *mut EbfsKnapsack) -> EbfsStatus {
    guard(|| store(out, EbfsKnapsack(parse_knapsack(text(input)?)?)))
}

/// # Safety
/// Both arrays must hold `items` elements and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ebfs_knapsack_from_items(
    capacity: u64,
    weight: *const u64,
    utility: *const u64,
    items: usize,
    out: *mut *mut EbfsKnapsack,
) -> EbfsStatus {
    guard(|| {
        let (weight, utility) = (slice(weight, items, "weight")?, slice(utility, items, "utility")?);
        let list = weight
            .iter()
            .zip(utility)
            .map(|(&weight, &utility)| Item { weight, utility })
            .collect();
        store(out, EbfsKnapsack(KnapsackInstance::new(capacity, list)))
    })
}

/// # Safety
/// `knapsack` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ebfs_knapsack_free(knapsack: *mut EbfsKnapsack) {
    if !knapsack.is_null() {
        drop(Box::from_raw(knapsack));
    }
}

fn solved<T: ProblemTheory<Solution = Vec<usize>>>(t: &T, config: &EngineConfig) -> Result<EbfsResult, Failure> {
    let r = solve(t, config)?;
    Ok(EbfsResult {
        optima: r.optima,
        optimal_cost: r.optimal_cost,
        stats: r.stats,
    })
}

/// Solves a graph problem. `source` is ignored for Kruskal and `target`
/// is read only for single-pair shortest path. `options` may be null.
///
/// # Safety
/// `graph` must be a live handle, `options` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ebfs_solve_graph(
    graph: *const EbfsGraph,
    problem: EbfsProblem,
    source: usize,
    target: usize,
    options: *const EbfsOptions,
    out: *mut *mut EbfsResult,
) -> EbfsStatus {
    guard(|| {
        let g = handle(graph, "graph")?.0.clone();
        let config = config(options);
        let result = match problem {
            EbfsProblem::Spsp => solved(&SpspTheory::new(g, source, target)?, &config)?,
            EbfsProblem::Sssp => solved(&PathTreeTheory::new(g, source)?, &config)?,
            EbfsProblem::MstPrim => solved(&PrimTheory::new(g, source)?, &config)?,
            EbfsProblem::MstKruskal => solved(&KruskalTheory::new(g)?, &config)?,
        };
        store(out, result)
    })
}

/// # Safety
/// `knapsack` must be a live handle, `options` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ebfs_solve_knapsack(
    knapsack: *const EbfsKnapsack,
    options: *const EbfsOptions,
    out: *mut *mut EbfsResult,
) -> EbfsStatus {
    guard(|| {
        let k = handle(knapsack, "knapsack")?.0.clone();
        store(out, solved(&KnapsackTheory::new(k), &config(options))?)
    })
}

/// # Safety
/// `result` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ebfs_result_has_optimum(result: *const EbfsResult) -> bool {
    result.as_ref().is_some_and(|r| r.optimal_cost.is_some())
}

/// Writes the optimal cost, or returns `NoOptimum` when nothing feasible
/// was found.
///
/// # Safety
/// `result` must be a live handle and `cost` writable.
#[no_mangle]
pub unsafe extern "C" fn ebfs_result_cost(result: *const EbfsResult, cost: *mut u64) -> EbfsStatus {
    guard(|| {
        let r = handle(result, "result")?;
        let c = r
            .optimal_cost
            .ok_or_else(|| Failure(EbfsStatus::NoOptimum, "no feasible solution".into()))?;
        *cost.as_mut().ok_or_else(|| null("cost"))? = c;
        Ok(())
    })
}

/// # Safety
/// `result` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ebfs_result_optima_count(result: *const EbfsResult) -> usize {
    result.as_ref().map_or(0, |r| r.optima.len())
}

/// Copies optimum `index` (edge ids, or item ids for knapsack) into
/// `buffer`. `len` always receives the full length, so a call with
/// `capacity` 0 sizes the buffer; `BufferTooSmall` means nothing was
/// copied.
///
/// # Safety
/// `result` must be a live handle, `buffer` must hold `capacity` elements
/// and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ebfs_result_optimum(
    result: *const EbfsResult,
    index: usize,
    buffer: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> EbfsStatus {
    guard(|| {
        let r = handle(result, "result")?;
        let z = r.optima.get(index).ok_or_else(|| {
            Failure(
                EbfsStatus::InvalidArgument,
                format!("optimum {index} out of range for {} optima", r.optima.len()),
            )
        })?;
        *len.as_mut().ok_or_else(|| null("len"))? = z.len();
        if z.len() > capacity {
            return Err(Failure(
                EbfsStatus::BufferTooSmall,
                format!("optimum has {} elements, buffer holds {capacity}", z.len()),
            ));
        }
        if !z.is_empty() {
            if buffer.is_null() {
                return Err(null("buffer"));
            }
            ptr::copy_nonoverlapping(z.as_ptr(), buffer, z.len());
        }
        Ok(())
    })
}

/// # Safety
/// `result` must be a live handle and `stats` writable.
#[no_mangle]
pub unsafe extern "C" fn ebfs_result_stats(result: *const EbfsResult, stats: *mut EbfsStats) -> EbfsStatus {
    guard(|| {
        let s = &handle(result, "result")?.stats;
        *stats.as_mut().ok_or_else(|| null("stats"))? = EbfsStats {
            levels: s.levels as u64,
            generated: s.generated as u64,
            duplicates_removed: s.duplicates_removed as u64,
            equivalence_merged: s.equivalence_merged as u64,
            dominated_pruned: s.dominated_pruned as u64,
            retained: s.retained as u64,
            locals_found: s.locals_found as u64,
            greedy_fallbacks: s.greedy_fallbacks as u64,
            max_undominated_width: s.max_undominated_width() as u64,
        };
        Ok(())
    })
}

/// Result as a JSON object with `optimal_cost`, `optima` and `stats`.
/// Release the string with [`ebfs_string_free`]. Null on failure.
///
/// # Safety
/// `result` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ebfs_result_json(result: *const EbfsResult) -> *mut c_char {
    let mut json = ptr::null_mut();
    guard(|| {
        let r = handle(result, "result")?;
        let value = serde_json::json!({
            "optimal_cost": r.optimal_cost,
            "optima": r.optima,
            "stats": r.stats,
        });
        json = CString::new(value.to_string()).expect("JSON has no NUL").into_raw();
        Ok(())
    });
    json
}

/// # Safety
/// `result` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ebfs_result_free(result: *mut EbfsResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ebfs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
