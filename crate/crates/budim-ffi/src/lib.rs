//! C ABI over the `budim` crate.
//!
//! Conventions:
//! - every fallible call returns a [`BudimStatus`]; results come back
//!   through out-pointers that are written only on `BUDIM_STATUS_OK`;
//! - stateful objects cross the boundary as opaque handles created and
//!   destroyed by matching `_new` / `_free` pairs;
//! - no call unwinds across the boundary: panics are caught and mapped
//!   to `BUDIM_STATUS_INTERNAL`.
//!
//! The header `include/budim.h` is generated from this file at build
//! time.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use budim::admissible::{critical_bases, interval_endpoints, is_admissible_block};
use budim::dimension::{DimensionEvaluator, Regime};
use budim::entropy::entropy;
use budim::expansions::{greedy_of_x, quasi_greedy_of_x, Base, TiePolicy};
use budim::words::{Alphabet, Word};
use budim::Error;

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudimStatus {
    /// Success; out-parameters are valid.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was out of range (alphabet size, digits, base, x, ...).
    InvalidArgument = 2,
    /// The digit block fails the admissibility conditions.
    NotAdmissible = 3,
    /// A digit decision fell within the tie tolerance under strict
    /// tie handling.
    NearTie = 4,
    /// The comparison or interval relation could not be decided at the
    /// requested tolerance.
    Undecided = 5,
    /// An internal iteration or size budget was exhausted.
    BudgetExceeded = 6,
    /// A caller-supplied buffer is too small for the result.
    BufferTooSmall = 7,
    /// A panic was caught at the boundary; the library state is still
    /// usable but the call produced nothing.
    Internal = 8,
}

/// Regime tag for dimension samples, mirroring the core enum without
/// its payload.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudimRegime {
    /// Base at or below the critical base: dimension zero.
    TrivialZero = 0,
    /// Base inside an admissible interval; `block` holds the generator.
    Interval = 1,
    /// Base at or above the alphabet size: dimension `log N / log beta`.
    SuperCritical = 2,
    /// Location failed; only the bracket `[dim_lo, dim_hi]` is known.
    Unresolved = 3,
}

/// Maximum generator-block length stored inline in [`BudimSample`].
pub const BUDIM_MAX_BLOCK: usize = 32;

/// One evaluation of the dimension function.
///
/// When `regime` is `BUDIM_REGIME_UNRESOLVED`, only `dim_lo`/`dim_hi`
/// bracket the value and `h` is NaN; otherwise `dim_lo == dim_hi`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct BudimSample {
    pub beta: f64,
    pub dim_lo: f64,
    pub dim_hi: f64,
    /// Topological entropy of the governing subshift; NaN when unresolved.
    pub h: f64,
    pub regime: BudimRegime,
    /// Generator block digits (valid for `block_len` entries) when
    /// `regime` is `BUDIM_REGIME_INTERVAL`; zero-length otherwise.
    pub block: [u32; BUDIM_MAX_BLOCK],
    pub block_len: usize,
}

/// Opaque handle over a reusable dimension evaluator (interval table
/// plus entropy cache). Create with [`budim_evaluator_new`], destroy
/// with [`budim_evaluator_free`].
pub struct BudimEvaluator {
    inner: DimensionEvaluator,
}

fn status_of(err: &Error) -> BudimStatus {
    match err {
        Error::NotAdmissible => BudimStatus::NotAdmissible,
        Error::NearTie { .. } => BudimStatus::NearTie,
        Error::Undecided | Error::DepthExceeded(_) => BudimStatus::Undecided,
        Error::BudgetExceeded(_) => BudimStatus::BudgetExceeded,
        _ => BudimStatus::InvalidArgument,
    }
}

fn guarded(f: impl FnOnce() -> BudimStatus) -> BudimStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(BudimStatus::Internal)
}

/// Builds a `Word` from a raw digit buffer, validating the alphabet.
unsafe fn word_from_raw(n: u32, digits: *const u32, len: usize) -> Result<Word, BudimStatus> {
    if digits.is_null() {
        return Err(BudimStatus::NullPointer);
    }
    let alphabet = Alphabet::new(n).map_err(|e| status_of(&e))?;
    let slice = std::slice::from_raw_parts(digits, len);
    Word::new(alphabet, slice.to_vec()).map_err(|e| status_of(&e))
}

/// Static, null-terminated name of a status code (never null).
#[no_mangle]
pub extern "C" fn budim_status_name(status: BudimStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        BudimStatus::Ok => b"ok\0",
        BudimStatus::NullPointer => b"null pointer\0",
        BudimStatus::InvalidArgument => b"invalid argument\0",
        BudimStatus::NotAdmissible => b"not admissible\0",
        BudimStatus::NearTie => b"near tie\0",
        BudimStatus::Undecided => b"undecided\0",
        BudimStatus::BudgetExceeded => b"budget exceeded\0",
        BudimStatus::BufferTooSmall => b"buffer too small\0",
        BudimStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}

/// Expands `x` in base `beta` over the alphabet `{0, ..., n-1}`.
///
/// Writes exactly `depth` digits to `digits_out`. `quasi` selects the
/// quasi-greedy map (largest digit with a nonzero remainder) instead of
/// the greedy one. Near-boundary decisions snap to the exact boundary
/// semantics.
///
/// # Safety
/// `digits_out` must point to at least `depth` writable `uint32_t`.
#[no_mangle]
pub unsafe extern "C" fn budim_expand(
    n: u32,
    beta: f64,
    x: f64,
    quasi: bool,
    depth: usize,
    digits_out: *mut u32,
) -> BudimStatus {
    if digits_out.is_null() {
        return BudimStatus::NullPointer;
    }
    guarded(|| {
        let alphabet = match Alphabet::new(n) {
            Ok(a) => a,
            Err(e) => return status_of(&e),
        };
        let base = match Base::new(alphabet, beta) {
            Ok(b) => b.with_tie_policy(TiePolicy::Snap),
            Err(e) => return status_of(&e),
        };
        let word = if quasi {
            quasi_greedy_of_x(x, &base, depth)
        } else {
            greedy_of_x(x, &base, depth)
        };
        match word {
            Ok(w) => {
                let out = std::slice::from_raw_parts_mut(digits_out, depth);
                out.copy_from_slice(w.digits());
                BudimStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Returns 1 if the block is admissible, 0 if not, and a negative
/// status code (negated [`BudimStatus`]) on invalid input.
///
/// # Safety
/// `digits` must point to `len` readable `uint32_t`.
#[no_mangle]
pub unsafe extern "C" fn budim_is_admissible(n: u32, digits: *const u32, len: usize) -> i32 {
    match word_from_raw(n, digits, len) {
        Ok(w) => i32::from(is_admissible_block(&w)),
        Err(status) => -(status as i32),
    }
}

/// Computes the certified base interval generated by an admissible
/// block: `lo`/`hi` are midpoints, `lo_radius`/`hi_radius` enclosure
/// half-widths, all certified to `tol`.
///
/// # Safety
/// `digits` must point to `len` readable `uint32_t`; the out-pointers
/// must be valid or null (null out-pointers are skipped).
#[no_mangle]
pub unsafe extern "C" fn budim_interval(
    n: u32,
    digits: *const u32,
    len: usize,
    tol: f64,
    lo: *mut f64,
    lo_radius: *mut f64,
    hi: *mut f64,
    hi_radius: *mut f64,
) -> BudimStatus {
    guarded(|| {
        let word = match word_from_raw(n, digits, len) {
            Ok(w) => w,
            Err(status) => return status,
        };
        match interval_endpoints(&word, tol) {
            Ok(iv) => {
                if !lo.is_null() {
                    *lo = iv.beta_l.value;
                }
                if !lo_radius.is_null() {
                    *lo_radius = iv.beta_l.radius;
                }
                if !hi.is_null() {
                    *hi = iv.beta_u.value;
                }
                if !hi_radius.is_null() {
                    *hi_radius = iv.beta_u.radius;
                }
                BudimStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Computes the topological entropy of the subshift generated by an
/// admissible block, together with the certified spectral radius.
/// `certified_zero` is set to 1 when `h = 0` was established by the
/// dual certificate (spectral enclosure contains 1 and word counts
/// grow subexponentially).
///
/// # Safety
/// `digits` must point to `len` readable `uint32_t`; out-pointers must
/// be valid or null.
#[no_mangle]
pub unsafe extern "C" fn budim_entropy(
    n: u32,
    digits: *const u32,
    len: usize,
    tol: f64,
    h: *mut f64,
    rho: *mut f64,
    rho_radius: *mut f64,
    certified_zero: *mut i32,
) -> BudimStatus {
    guarded(|| {
        let word = match word_from_raw(n, digits, len) {
            Ok(w) => w,
            Err(status) => return status,
        };
        match entropy(&word, tol) {
            Ok(e) => {
                if !h.is_null() {
                    *h = e.h;
                }
                if !rho.is_null() {
                    *rho = e.rho;
                }
                if !rho_radius.is_null() {
                    *rho_radius = e.rho_radius;
                }
                if !certified_zero.is_null() {
                    *certified_zero = i32::from(e.certified_zero);
                }
                BudimStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Computes the generalized golden mean `g_n` and the critical base
/// `beta_c(n)` (the base below which only trivial expansions are
/// unique), both certified to `tol`.
///
/// # Safety
/// Out-pointers must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn budim_critical_bases(
    n: u32,
    tol: f64,
    g_n: *mut f64,
    beta_c: *mut f64,
) -> BudimStatus {
    guarded(|| {
        let alphabet = match Alphabet::new(n) {
            Ok(a) => a,
            Err(e) => return status_of(&e),
        };
        match critical_bases(alphabet, tol) {
            Ok((g, c)) => {
                if !g_n.is_null() {
                    *g_n = g.value;
                }
                if !beta_c.is_null() {
                    *beta_c = c.value;
                }
                BudimStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Creates a dimension evaluator for alphabet `{0, ..., n-1}` covering
/// generator blocks up to length `p_max`, with digit-scan depth `depth`
/// and certification tolerance `tol`. Writes the handle to `out`.
///
/// # Safety
/// `out` must be a valid pointer; the returned handle must be released
/// with [`budim_evaluator_free`].
#[no_mangle]
pub unsafe extern "C" fn budim_evaluator_new(
    n: u32,
    p_max: usize,
    depth: usize,
    tol: f64,
    out: *mut *mut BudimEvaluator,
) -> BudimStatus {
    if out.is_null() {
        return BudimStatus::NullPointer;
    }
    guarded(|| {
        let alphabet = match Alphabet::new(n) {
            Ok(a) => a,
            Err(e) => return status_of(&e),
        };
        match DimensionEvaluator::new(alphabet, p_max, depth, tol) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(BudimEvaluator { inner }));
                BudimStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Evaluates the dimension function at `beta` and fills `sample`.
///
/// # Safety
/// `evaluator` must be a live handle from [`budim_evaluator_new`];
/// `sample` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn budim_evaluator_eval(
    evaluator: *const BudimEvaluator,
    beta: f64,
    sample: *mut BudimSample,
) -> BudimStatus {
    if evaluator.is_null() || sample.is_null() {
        return BudimStatus::NullPointer;
    }
    guarded(|| {
        let ev = &(*evaluator).inner;
        match ev.eval(beta) {
            Ok(s) => {
                let mut out = BudimSample {
                    beta: s.beta,
                    dim_lo: s.dim_lo,
                    dim_hi: s.dim_hi,
                    h: s.h.unwrap_or(f64::NAN),
                    regime: match &s.regime {
                        Regime::TrivialZero => BudimRegime::TrivialZero,
                        Regime::AdmissibleInterval(_) => BudimRegime::Interval,
                        Regime::SuperCritical => BudimRegime::SuperCritical,
                        Regime::Unresolved => BudimRegime::Unresolved,
                    },
                    block: [0; BUDIM_MAX_BLOCK],
                    block_len: 0,
                };
                if let Regime::AdmissibleInterval(block) = &s.regime {
                    if block.len() > BUDIM_MAX_BLOCK {
                        return BudimStatus::BufferTooSmall;
                    }
                    out.block[..block.len()].copy_from_slice(block.digits());
                    out.block_len = block.len();
                }
                *sample = out;
                BudimStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a handle created by [`budim_evaluator_new`]. Passing null
/// is a no-op.
///
/// # Safety
/// `evaluator` must be null or a live handle; it must not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn budim_evaluator_free(evaluator: *mut BudimEvaluator) {
    if !evaluator.is_null() {
        drop(Box::from_raw(evaluator));
    }
}
