//! C ABI over the satcube library.
//!
//! Conventions:
//!
//! * `Formula` and `SolutionSet` cross the boundary as opaque pointers
//!   created and freed by this library only;
//! * every fallible call returns a [`satcube_status`] code and writes its
//!   result through an out-pointer, which is left untouched on failure;
//! * strings returned through `char **` are NUL-terminated, UTF-8, owned by
//!   the caller, and must be released with [`satcube_string_free`];
//! * a human-readable message for the most recent failure on the current
//!   thread is available via [`satcube_last_error_message`].
//!
//! The matching header lives at `include/satcube.h` (generated with
//! cbindgen; see `cbindgen.toml`).

// pointer contracts are stated once above instead of per function
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use satcube::error::Error;
use satcube::extremal;
use satcube::formula::{Formula, GenConfig, SampleMode};
use satcube::hypercube::{self, SolutionSet};
use satcube::solver::{self, SolveStatus, SolverConfig, ValueOrder, VarOrder};
use satcube::topology;
use satcube::{dimacs, Result};

/// Status codes returned by every fallible `satcube_*` call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum satcube_status {
    SATCUBE_OK = 0,
    SATCUBE_ERR_NULL_POINTER = 1,
    SATCUBE_ERR_INVALID_ARGUMENT = 2,
    SATCUBE_ERR_DUPLICATE_VARIABLE = 3,
    SATCUBE_ERR_CAPACITY_EXCEEDED = 4,
    SATCUBE_ERR_CAP_EXCEEDED = 5,
    SATCUBE_ERR_PARSE = 6,
    SATCUBE_ERR_EMPTY_SOLUTION_SPACE = 7,
    SATCUBE_ERR_UNSUPPORTED = 8,
    SATCUBE_ERR_INTERNAL = 9,
}

use satcube_status::*;

/// Solver outcome values written by `satcube_solve`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum satcube_solve_status {
    SATCUBE_SOLVE_SAT = 10,
    SATCUBE_SOLVE_UNSAT = 20,
    SATCUBE_SOLVE_BUDGET_EXHAUSTED = 0,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> satcube_status {
    match err {
        Error::DuplicateVariable { .. } => SATCUBE_ERR_DUPLICATE_VARIABLE,
        Error::CapacityExceeded { .. } => SATCUBE_ERR_CAPACITY_EXCEEDED,
        Error::CapExceeded { .. } => SATCUBE_ERR_CAP_EXCEEDED,
        Error::Parse { .. } => SATCUBE_ERR_PARSE,
        Error::EmptySolutionSpace => SATCUBE_ERR_EMPTY_SOLUTION_SPACE,
        Error::Unsupported(_) => SATCUBE_ERR_UNSUPPORTED,
        Error::Io(_) | Error::Json(_) => SATCUBE_ERR_INTERNAL,
        _ => SATCUBE_ERR_INVALID_ARGUMENT,
    }
}

fn fail(err: Error) -> satcube_status {
    let code = status_of(&err);
    set_last_error(err.to_string());
    code
}

/// Run `body`, mapping errors and panics to status codes.
fn guarded<F>(body: F) -> satcube_status
where
    F: FnOnce() -> Result<()>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SATCUBE_OK,
        Ok(Err(e)) => fail(e),
        Err(_) => {
            set_last_error("internal panic".into());
            SATCUBE_ERR_INTERNAL
        }
    }
}

unsafe fn out_write<T>(out: *mut T, value: T) -> Result<()> {
    if out.is_null() {
        return Err(Error::Config("null out-pointer".into()));
    }
    unsafe { ptr::write(out, value) };
    Ok(())
}

fn to_c_string(text: String) -> Result<*mut c_char> {
    CString::new(text)
        .map(CString::into_raw)
        .map_err(|_| Error::Config("string contains NUL".into()))
}

unsafe fn borrow<'a, T>(ptr: *const T) -> Result<&'a T> {
    if ptr.is_null() {
        return Err(Error::Config("null handle".into()));
    }
    Ok(unsafe { &*ptr })
}

fn null_pointer() -> satcube_status {
    set_last_error("null pointer argument".into());
    SATCUBE_ERR_NULL_POINTER
}

/// Library version as a static NUL-terminated string. Do not free.
#[no_mangle]
pub extern "C" fn satcube_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent error on this thread, or NULL if none.
/// Valid until the next failing call on the same thread. Do not free.
#[no_mangle]
pub extern "C" fn satcube_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned through a `char **` out-parameter.
#[no_mangle]
pub unsafe extern "C" fn satcube_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

// ---------------------------------------------------------------------------
// Formula handles

/// Seeded random instance. `mode` 0 = with replacement, 1 = unique clauses.
#[no_mangle]
pub unsafe extern "C" fn satcube_formula_random(
    n_vars: u32,
    n_clauses: u64,
    mode: i32,
    seed: u64,
    out: *mut *mut Formula,
) -> satcube_status {
    guarded(|| {
        let mode = match mode {
            0 => SampleMode::WithReplacement,
            1 => SampleMode::Unique,
            other => return Err(Error::Config(format!("unknown sample mode {other}"))),
        };
        let f = Formula::random(&GenConfig {
            n_vars,
            n_clauses,
            mode,
            seed,
        })?;
        unsafe { out_write(out, Box::into_raw(Box::new(f))) }
    })
}

/// Parse DIMACS text (NUL-terminated).
#[no_mangle]
pub unsafe extern "C" fn satcube_formula_parse_dimacs(
    text: *const c_char,
    out: *mut *mut Formula,
) -> satcube_status {
    if text.is_null() {
        return null_pointer();
    }
    guarded(|| {
        let text = unsafe { CStr::from_ptr(text) }
            .to_str()
            .map_err(|_| Error::Config("DIMACS text is not valid UTF-8".into()))?;
        let f = dimacs::parse_str(text)?;
        unsafe { out_write(out, Box::into_raw(Box::new(f))) }
    })
}

/// Serialize a formula as DIMACS into a newly allocated string.
#[no_mangle]
pub unsafe extern "C" fn satcube_formula_to_dimacs(
    f: *const Formula,
    out: *mut *mut c_char,
) -> satcube_status {
    guarded(|| {
        let f = unsafe { borrow(f) }?;
        let text = dimacs::to_string(f, &[]);
        unsafe { out_write(out, to_c_string(text)?) }
    })
}

/// Number of variables; 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn satcube_formula_n_vars(f: *const Formula) -> u32 {
    unsafe { f.as_ref() }.map_or(0, Formula::n_vars)
}

/// Number of clauses; 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn satcube_formula_n_clauses(f: *const Formula) -> u64 {
    unsafe { f.as_ref() }.map_or(0, |f| f.n_clauses() as u64)
}

#[no_mangle]
pub unsafe extern "C" fn satcube_formula_free(f: *mut Formula) {
    if !f.is_null() {
        drop(unsafe { Box::from_raw(f) });
    }
}

// ---------------------------------------------------------------------------
// Enumeration

/// Exhaustively enumerate the solution set (refuses n_vars > cap; the cap
/// itself is limited to 26).
#[no_mangle]
pub unsafe extern "C" fn satcube_enumerate(
    f: *const Formula,
    cap: u32,
    out: *mut *mut SolutionSet,
) -> satcube_status {
    guarded(|| {
        let f = unsafe { borrow(f) }?;
        let s = hypercube::enumerate_with_cap(f, cap)?;
        unsafe { out_write(out, Box::into_raw(Box::new(s))) }
    })
}

/// |S|; 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn satcube_solution_set_count(s: *const SolutionSet) -> u64 {
    unsafe { s.as_ref() }.map_or(0, SolutionSet::count)
}

/// 1 if the assignment index is a valid solution, else 0.
#[no_mangle]
pub unsafe extern "C" fn satcube_solution_set_contains(s: *const SolutionSet, idx: u64) -> i32 {
    match unsafe { s.as_ref() } {
        Some(s) if idx < s.space_size() => s.contains(idx) as i32,
        _ => 0,
    }
}

#[no_mangle]
pub unsafe extern "C" fn satcube_solution_set_free(s: *mut SolutionSet) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

// ---------------------------------------------------------------------------
// Topology

/// Cluster / frozen-variable report as a JSON string (see the library docs
/// for the schema).
#[no_mangle]
pub unsafe extern "C" fn satcube_topology_report_json(
    f: *const Formula,
    cap: u32,
    out: *mut *mut c_char,
) -> satcube_status {
    guarded(|| {
        let f = unsafe { borrow(f) }?;
        let report = topology::topology_report(f, cap)?;
        let text = serde_json::to_string_pretty(&report)?;
        unsafe { out_write(out, to_c_string(text)?) }
    })
}

// ---------------------------------------------------------------------------
// Solver

/// Chronological DFS. `var_order` 0 = static ascending, 1 = seeded random;
/// `value_order` 0 = zero first, 1 = one first, 2 = seeded random;
/// `node_budget` 0 means unbounded. On success writes the solve status and,
/// for SAT, the model assignment index through `model_out` (left untouched
/// otherwise).
#[no_mangle]
pub unsafe extern "C" fn satcube_solve(
    f: *const Formula,
    var_order: i32,
    value_order: i32,
    seed: u64,
    node_budget: u64,
    status_out: *mut satcube_solve_status,
    model_out: *mut u64,
) -> satcube_status {
    guarded(|| {
        let f = unsafe { borrow(f) }?;
        let cfg = solver_config(var_order, value_order, seed, node_budget)?;
        let result = solver::solve(f, &cfg)?;
        let code = match result.status {
            SolveStatus::Sat => satcube_solve_status::SATCUBE_SOLVE_SAT,
            SolveStatus::Unsat => satcube_solve_status::SATCUBE_SOLVE_UNSAT,
            SolveStatus::BudgetExhausted => satcube_solve_status::SATCUBE_SOLVE_BUDGET_EXHAUSTED,
        };
        unsafe { out_write(status_out, code) }?;
        if let Some(model) = result.model {
            if !model_out.is_null() {
                unsafe { ptr::write(model_out, model) };
            }
        }
        Ok(())
    })
}

/// Like `satcube_solve`, but returns the full result (status, model as
/// signed literals, statistics) as a JSON string.
#[no_mangle]
pub unsafe extern "C" fn satcube_solve_json(
    f: *const Formula,
    var_order: i32,
    value_order: i32,
    seed: u64,
    node_budget: u64,
    out: *mut *mut c_char,
) -> satcube_status {
    guarded(|| {
        let f = unsafe { borrow(f) }?;
        let cfg = solver_config(var_order, value_order, seed, node_budget)?;
        let result = solver::solve(f, &cfg)?;
        let model_lits: Option<Vec<i64>> = result.model.map(|idx| {
            (1..=f.n_vars())
                .map(|v| {
                    if idx >> (v - 1) & 1 == 1 {
                        v as i64
                    } else {
                        -(v as i64)
                    }
                })
                .collect()
        });
        let text = serde_json::to_string_pretty(&serde_json::json!({
            "status": result.status,
            "model": model_lits,
            "stats": result.stats,
        }))?;
        unsafe { out_write(out, to_c_string(text)?) }
    })
}

fn solver_config(
    var_order: i32,
    value_order: i32,
    seed: u64,
    node_budget: u64,
) -> Result<SolverConfig> {
    Ok(SolverConfig {
        var_order: match var_order {
            0 => VarOrder::StaticAscending,
            1 => VarOrder::SeededRandom,
            other => return Err(Error::Config(format!("unknown var order {other}"))),
        },
        value_order: match value_order {
            0 => ValueOrder::ZeroFirst,
            1 => ValueOrder::OneFirst,
            2 => ValueOrder::SeededRandom,
            other => return Err(Error::Config(format!("unknown value order {other}"))),
        },
        seed,
        node_budget: (node_budget > 0).then_some(node_budget),
    })
}

/// 1 if the assignment index satisfies every clause, else 0.
#[no_mangle]
pub unsafe extern "C" fn satcube_verify_model(f: *const Formula, model: u64) -> i32 {
    match unsafe { f.as_ref() } {
        Some(f) if f.n_vars() <= 63 && model < 1u64 << f.n_vars() => {
            solver::verify_model(f, model) as i32
        }
        _ => 0,
    }
}

// ---------------------------------------------------------------------------
// Extremal constructions

/// All 8 sign patterns over the triple (i, j, k): unsatisfiable for any n.
#[no_mangle]
pub unsafe extern "C" fn satcube_make_unsat_core(
    n_vars: u32,
    i: u32,
    j: u32,
    k: u32,
    out: *mut *mut Formula,
) -> satcube_status {
    guarded(|| {
        let f = extremal::make_unsat_core(n_vars, (i, j, k))?;
        unsafe { out_write(out, Box::into_raw(Box::new(f))) }
    })
}

/// The 7*C(n,3)-clause maximal satisfiable instance whose unique solution
/// is `target`.
#[no_mangle]
pub unsafe extern "C" fn satcube_make_max_sat(
    n_vars: u32,
    target: u64,
    out: *mut *mut Formula,
) -> satcube_status {
    guarded(|| {
        let inst = extremal::make_max_sat(n_vars, target)?;
        unsafe { out_write(out, Box::into_raw(Box::new(inst.formula))) }
    })
}

/// Exact boundary counts as JSON (large counts are decimal strings).
#[no_mangle]
pub unsafe extern "C" fn satcube_bounds_json(n_vars: u64, out: *mut *mut c_char) -> satcube_status {
    guarded(|| {
        let summary = extremal::bounds_summary(n_vars)?;
        let text = serde_json::to_string_pretty(&summary.to_json())?;
        unsafe { out_write(out, to_c_string(text)?) }
    })
}

// ---------------------------------------------------------------------------
// Analytics

/// Expected number of solutions 2^n (7/8)^m.
#[no_mangle]
pub extern "C" fn satcube_expected_solutions(n_vars: u32, m: u64) -> f64 {
    satcube::experiments::expected_solutions(n_vars, m)
}

/// Expected branches to the first solution (8/7)^m.
#[no_mangle]
pub extern "C" fn satcube_expected_search_effort(m: u64) -> f64 {
    satcube::experiments::expected_search_effort(m)
}

/// n * alpha * ln(8/7).
#[no_mangle]
pub extern "C" fn satcube_log_effort(n_vars: u32, alpha: f64) -> f64 {
    satcube::experiments::log_effort(n_vars, alpha)
}
