//! Thin helpers around the arbitrary-precision binary floats used for all
//! base/series arithmetic. Precision is chosen per operation: digit
//! recursions amplify absolute error by a factor of beta per step, so the
//! working precision must grow linearly with the requested depth.

use dashu_float::round::mode::Zero;
use dashu_float::FBig;

/// Arbitrary-precision binary float, truncating rounding.
pub type Real = FBig<Zero, 2>;

/// Lift an `f64` to a `Real` with the given precision (in bits).
pub fn real_from_f64(x: f64, prec: usize) -> Real {
    Real::try_from(x)
        .expect("finite float")
        .with_precision(prec)
        .value()
}

pub fn real_from_u32(x: u32, prec: usize) -> Real {
    Real::from(x).with_precision(prec).value()
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// Working precision for a digit recursion of `depth` steps in base `beta`,
/// resolving quantities down to scale `2^-guard_bits`.
pub fn recursion_precision(beta: f64, depth: usize, guard_bits: usize) -> usize {
    let per_step = beta.log2().max(0.1);
    (per_step * depth as f64).ceil() as usize + guard_bits + 32
}

/// Number of series terms needed so that the geometric tail
/// `(N-1) beta^-n / (beta - 1)` drops below `bound`.
pub fn tail_depth(n_digits: u32, beta_lo: f64, bound: f64) -> usize {
    debug_assert!(beta_lo > 1.0 && bound > 0.0);
    let num = (n_digits as f64 - 1.0).max(1.0) / (beta_lo - 1.0) / bound;
    (num.ln() / beta_lo.ln()).ceil().max(1.0) as usize + 2
}

/// Geometric tail bound for digits `>= depth`: `(N-1) beta^-depth / (beta-1)`.
pub fn tail_bound(n_digits: u32, beta_lo: f64, depth: usize) -> f64 {
    let b = beta_lo;
    (n_digits as f64 - 1.0) * b.powi(-(depth as i32)) / (b - 1.0)
}
