//! C ABI over `llc_tune`.
//!
//! Objects are opaque heap handles released with the matching `*_free`.
//! Every fallible call returns an [`LlctStatus`]; on failure the message is
//! available from [`llct_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use llc_tune::control::{closed_loop_spectrum, objective, ControlError, LeadLagProblem};
use llc_tune::numerics::eigenvalues;
use llc_tune::optim::{run_boa, run_de, run_ga, BoaConfig, DeConfig, GaConfig, OptimError, RunRecord};
use llc_tune::{LeadLagParams, Matrix, SearchSpace, Spectrum, StateSpacePlant};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LlctStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Numerical = 3,
    Parse = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LlctAlgorithm {
    Boa = 0,
    Ga = 1,
    De = 2,
}

/// Opaque plant handle.
pub struct LlctPlant(StateSpacePlant);

/// Opaque optimizer run result.
pub struct LlctRunRecord(RunRecord);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(LlctStatus, String);

impl Failure {
    fn new(status: LlctStatus, msg: impl Into<String>) -> Self {
        Self(status, msg.into())
    }
}

impl From<ControlError> for Failure {
    fn from(e: ControlError) -> Self {
        let status = match e {
            ControlError::InvalidParams(_)
            | ControlError::InvalidPlant(_)
            | ControlError::OutOfBounds { .. } => LlctStatus::InvalidArgument,
            ControlError::Json(_) => LlctStatus::Parse,
            _ => LlctStatus::Numerical,
        };
        Self(status, e.to_string())
    }
}

impl From<OptimError> for Failure {
    fn from(e: OptimError) -> Self {
        let status = match e {
            OptimError::PopulationTooSmall { .. } | OptimError::InvalidConfig(_) | OptimError::Space(_) => {
                LlctStatus::InvalidArgument
            }
            _ => LlctStatus::Numerical,
        };
        Self(status, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LlctStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            LlctStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside llc_tune");
            LlctStatus::Panic
        }
    }
}

unsafe fn non_null<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(LlctStatus::NullPointer, format!("{name} is null")))
}

unsafe fn out_ref<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure::new(LlctStatus::NullPointer, format!("{name} is null")))
}

unsafe fn c_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(LlctStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::new(LlctStatus::Parse, format!("{name} is not UTF-8: {e}")))
}

/// Copies `values` into a caller buffer, reporting the required length.
unsafe fn copy_out(values: &[f64], out: *mut f64, capacity: usize, out_len: *mut usize) -> Result<(), Failure> {
    if let Some(len) = out_len.as_mut() {
        *len = values.len();
    }
    if capacity < values.len() {
        return Err(Failure::new(
            LlctStatus::BufferTooSmall,
            format!("buffer holds {capacity} values, need {}", values.len()),
        ));
    }
    if !values.is_empty() {
        if out.is_null() {
            return Err(Failure::new(LlctStatus::NullPointer, "output buffer is null"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    }
    Ok(())
}

unsafe fn copy_spectrum(
    s: &Spectrum,
    re: *mut f64,
    im: *mut f64,
    capacity: usize,
    out_len: *mut usize,
) -> Result<(), Failure> {
    let (r, i): (Vec<f64>, Vec<f64>) = s.iter().map(|l| (l.re, l.im)).unzip();
    copy_out(&r, re, capacity, out_len)?;
    copy_out(&i, im, capacity, out_len)
}

/// Message for the last failed call on this thread. Empty after a success.
/// The pointer stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn llct_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Built-in fourth-order benchmark plant.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn llct_plant_new_default(out: *mut *mut LlctPlant) -> LlctStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = Box::into_raw(Box::new(LlctPlant(StateSpacePlant::reference())));
        Ok(())
    })
}

/// Parses a plant from the JSON plant-file format (one-based indices).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn llct_plant_from_json(json: *const c_char, out: *mut *mut LlctPlant) -> LlctStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let plant = StateSpacePlant::from_json_str(c_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(LlctPlant(plant)));
        Ok(())
    })
}

/// # Safety
/// `plant` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn llct_plant_free(plant: *mut LlctPlant) {
    if !plant.is_null() {
        drop(Box::from_raw(plant));
    }
}

/// Number of plant states, or 0 for a null handle.
///
/// # Safety
/// `plant` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn llct_plant_order(plant: *const LlctPlant) -> usize {
    plant.as_ref().map_or(0, |p| p.0.order())
}

/// Minimum closed-loop damping ratio for the given controller.
///
/// # Safety
/// `plant` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn llct_objective(
    plant: *const LlctPlant,
    kc: f64,
    t1: f64,
    t2: f64,
    out: *mut f64,
) -> LlctStatus {
    guard(|| {
        let plant = non_null(plant, "plant")?;
        let out = out_ref(out, "out")?;
        *out = objective(&plant.0, LeadLagParams::new(kc, t1, t2))?;
        Ok(())
    })
}

/// Closed-loop eigenvalues, sorted by real then imaginary part.
/// `re` and `im` each need room for order + 2 values; `out_len` receives
/// that count even when the buffers are too small.
///
/// # Safety
/// `plant` must be a live handle; `re`/`im` valid for `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn llct_closed_loop_eigenvalues(
    plant: *const LlctPlant,
    kc: f64,
    t1: f64,
    t2: f64,
    re: *mut f64,
    im: *mut f64,
    capacity: usize,
    out_len: *mut usize,
) -> LlctStatus {
    guard(|| {
        let plant = non_null(plant, "plant")?;
        let s = closed_loop_spectrum(&plant.0, LeadLagParams::new(kc, t1, t2))?;
        copy_spectrum(&s, re, im, capacity, out_len)
    })
}

/// Eigenvalues of a row-major `n` by `n` matrix. `re` and `im` need `n` slots.
///
/// # Safety
/// `data` must be valid for `n * n` reads; `re`/`im` for `n` writes.
#[no_mangle]
pub unsafe extern "C" fn llct_matrix_eigenvalues(
    data: *const f64,
    n: usize,
    re: *mut f64,
    im: *mut f64,
) -> LlctStatus {
    guard(|| {
        let len = n
            .checked_mul(n)
            .ok_or_else(|| Failure::new(LlctStatus::InvalidArgument, "matrix size overflows"))?;
        let values = if len == 0 {
            Vec::new()
        } else {
            non_null(data, "data")?;
            std::slice::from_raw_parts(data, len).to_vec()
        };
        let m = Matrix::new(n, n, values).map_err(|e| Failure::new(LlctStatus::InvalidArgument, e.to_string()))?;
        let s = eigenvalues(&m).map_err(|e| Failure::new(LlctStatus::Numerical, e.to_string()))?;
        copy_spectrum(&s, re, im, n, ptr::null_mut())
    })
}

/// Runs one optimizer on the lead-lag problem.
///
/// `config_json` is the algorithm's JSON config object (null for defaults).
/// `lower` and `upper` are 3-element bounds for (kc, t1, t2); pass null for
/// both to use the default box.
///
/// # Safety
/// Pointers must be null or valid as described; `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn llct_run(
    plant: *const LlctPlant,
    algorithm: LlctAlgorithm,
    config_json: *const c_char,
    lower: *const f64,
    upper: *const f64,
    out: *mut *mut LlctRunRecord,
) -> LlctStatus {
    guard(|| {
        let plant = non_null(plant, "plant")?;
        let out = out_ref(out, "out")?;
        let space = match (lower.is_null(), upper.is_null()) {
            (true, true) => SearchSpace::lead_lag_default(),
            (false, false) => SearchSpace::new(
                std::slice::from_raw_parts(lower, 3).to_vec(),
                std::slice::from_raw_parts(upper, 3).to_vec(),
                vec!["kc".into(), "t1".into(), "t2".into()],
            )
            .map_err(|e| Failure::new(LlctStatus::InvalidArgument, e.to_string()))?,
            _ => return Err(Failure::new(LlctStatus::NullPointer, "lower and upper must both be set or both null")),
        };
        let problem = LeadLagProblem::new(plant.0.clone(), space)?;
        let json = if config_json.is_null() { "{}" } else { c_str(config_json, "config_json")? };
        let parse = |e: serde_json::Error| Failure::new(LlctStatus::Parse, format!("config: {e}"));
        let f = |x: &[f64]| problem.evaluate(x);
        let record = match algorithm {
            LlctAlgorithm::Boa => run_boa(f, problem.space(), &serde_json::from_str::<BoaConfig>(json).map_err(parse)?),
            LlctAlgorithm::Ga => run_ga(f, problem.space(), &serde_json::from_str::<GaConfig>(json).map_err(parse)?),
            LlctAlgorithm::De => run_de(f, problem.space(), &serde_json::from_str::<DeConfig>(json).map_err(parse)?),
        }?;
        *out = Box::into_raw(Box::new(LlctRunRecord(record)));
        Ok(())
    })
}

/// # Safety
/// `run` must come from [`llct_run`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn llct_run_free(run: *mut LlctRunRecord) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// Best objective found, or NaN for a null handle.
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn llct_run_best_objective(run: *const LlctRunRecord) -> f64 {
    run.as_ref().map_or(f64::NAN, |r| r.0.final_best_objective)
}

/// Objective evaluations performed, or 0 for a null handle.
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn llct_run_evaluation_count(run: *const LlctRunRecord) -> usize {
    run.as_ref().map_or(0, |r| r.0.evaluation_count)
}

/// Writes the best (kc, t1, t2) into `out[0..3]`.
///
/// # Safety
/// `run` must be a live handle and `out` valid for 3 writes.
#[no_mangle]
pub unsafe extern "C" fn llct_run_best_position(run: *const LlctRunRecord, out: *mut f64) -> LlctStatus {
    guard(|| {
        let run = non_null(run, "run")?;
        copy_out(&run.0.final_best_position, out, 3, ptr::null_mut())
    })
}

/// Best-so-far objective per generation, starting with the initial
/// population (generations + 1 values).
///
/// # Safety
/// `run` must be a live handle; `out` valid for `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn llct_run_trace(
    run: *const LlctRunRecord,
    out: *mut f64,
    capacity: usize,
    out_len: *mut usize,
) -> LlctStatus {
    guard(|| {
        let run = non_null(run, "run")?;
        copy_out(&run.0.best_objective_per_generation, out, capacity, out_len)
    })
}
