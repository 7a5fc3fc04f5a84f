//! Greedy and quasi-greedy expansions in a real base, the projection
//! `Pi_beta((d_i)) = sum d_i beta^-i`, and the lexicographic
//! characterizations of greedy and unique expansions.
//!
//! Digit decisions compare `a` against `beta * r`. The recursion amplifies
//! absolute error by `beta` per step, so every decision carries an explicit
//! tie guard: a comparison that lands within `2^-guard_bits * max(1, beta*r)`
//! of an exact boundary is reported as `NearTie` instead of silently
//! resolved — unless the boundary is hit *exactly*, which happens at
//! algebraic bases representable in binary and is then decided correctly.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::real::{real_from_f64, real_from_u32, recursion_precision, to_f64, Real};
use crate::words::{exact_cmp_periodic, Alphabet, DigitStream, Word};

/// Default digit depth for expansions.
pub const DEFAULT_DEPTH: usize = 256;
/// Default depth for stream comparisons.
pub const DEFAULT_CMP_DEPTH: usize = 4096;
/// Default tie-guard width in bits.
pub const DEFAULT_GUARD_BITS: usize = 40;

/// What to do when a digit decision falls inside the tie guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TiePolicy {
    /// Report `NearTie`: the digit cannot be certified either way.
    #[default]
    Strict,
    /// Treat the comparison as landing exactly on the boundary. This
    /// yields the expansion of the nearby boundary base — what a user
    /// typing a rounded algebraic base (e.g. 1.61803398875) expects.
    Snap,
}

/// A base `beta > 1` over a digit alphabet, carried at arbitrary precision.
#[derive(Debug, Clone)]
pub struct Base {
    alphabet: Alphabet,
    beta: Real,
    guard_bits: usize,
    tie_policy: TiePolicy,
}

impl Base {
    pub fn new(alphabet: Alphabet, beta: f64) -> Result<Base> {
        if !(beta > 1.0) || !beta.is_finite() {
            return Err(Error::BaseOutOfRange(format!("{beta}")));
        }
        Ok(Base {
            alphabet,
            beta: real_from_f64(beta, 64),
            guard_bits: DEFAULT_GUARD_BITS,
            tie_policy: TiePolicy::Strict,
        })
    }

    /// Base from a high-precision value, e.g. a certified interval endpoint.
    pub fn from_real(alphabet: Alphabet, beta: Real) -> Result<Base> {
        if to_f64(&beta) <= 1.0 {
            return Err(Error::BaseOutOfRange(beta.to_string()));
        }
        Ok(Base { alphabet, beta, guard_bits: DEFAULT_GUARD_BITS, tie_policy: TiePolicy::Strict })
    }

    /// Widen or narrow the tie guard. Deep endpoint checks need a narrow
    /// guard because legitimate decision margins shrink like `beta^-depth`.
    pub fn with_guard_bits(mut self, bits: usize) -> Base {
        self.guard_bits = bits;
        self
    }

    pub fn with_tie_policy(mut self, policy: TiePolicy) -> Base {
        self.tie_policy = policy;
        self
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn beta(&self) -> &Real {
        &self.beta
    }

    pub fn beta_f64(&self) -> f64 {
        to_f64(&self.beta)
    }

    fn working_precision(&self, depth: usize) -> usize {
        recursion_precision(self.beta_f64(), depth, self.guard_bits)
            .max(self.beta.precision())
            .max(64)
    }

    /// Largest representable point `(N-1)/(beta-1)`.
    fn x_max(&self, prec: usize) -> Real {
        let b = self.beta.clone().with_precision(prec).value();
        let one = real_from_u32(1, prec);
        real_from_u32(self.alphabet.max_digit(), prec) / (b - one)
    }
}

/// Truncated series `sum_{i<depth} d_i beta^-(i+1)` evaluated by Horner's
/// scheme. Always an under-estimate of the full projection (truncating
/// rounding, nonnegative terms).
pub fn partial_sum(digits: &DigitStream, beta: &Real, depth: usize, prec: usize) -> Real {
    let b = beta.clone().with_precision(prec).value();
    let mut s = real_from_u32(0, prec);
    for i in (0..depth as u64).rev() {
        s = (s + real_from_u32(digits.digit(i), prec)) / &b;
    }
    s
}

/// Geometric tail bound `(N-1) beta^-depth / (beta-1)` for digits past
/// `depth`, padded upward to stay conservative under truncating rounding.
fn tail_real(n: u32, beta: &Real, depth: usize, prec: usize) -> Real {
    let b = beta.clone().with_precision(prec).value();
    let one = real_from_u32(1, prec);
    let t = real_from_u32(n - 1, prec) / b.powi((depth as isize).into()) / (&b - &one);
    let fudge = one + real_from_f64(2f64.powi(-20), prec);
    t * fudge
}

/// Midpoint of the certified enclosure of `Pi_beta(digits)` after `depth`
/// terms; the half-width is `(N-1) beta^-depth / (2(beta-1))`.
pub fn project(digits: &DigitStream, base: &Base, depth: usize) -> f64 {
    let prec = base.working_precision(depth).max(96);
    let s = partial_sum(digits, base.beta(), depth, prec);
    let tail = tail_real(digits.alphabet().n(), base.beta(), depth, prec);
    to_f64(&s) + to_f64(&tail) / 2.0
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Greedy,
    Quasi,
}

/// A digit decision, plus the boundary value the comparison was snapped
/// to, if any. A snapped step must also renormalize the remainder to
/// `boundary - digit`, otherwise the sub-guard offset keeps amplifying by
/// `beta` per step and surfaces as wrong digits a few positions later.
struct Decision {
    digit: u32,
    snapped_to: Option<i64>,
}

/// One digit decision: largest `a` with `a <= y` (greedy) or `a < y`
/// (quasi-greedy), clamped to the digit range. Exact boundaries decide;
/// ambiguous ones fail.
fn decide_digit(
    y: &Real,
    eps: &Real,
    nmax: u32,
    mode: Mode,
    policy: TiePolicy,
    index: usize,
) -> Result<Decision> {
    let f = y.floor();
    let frac = y - Real::from(f.clone());
    let fi = to_f64(&Real::from(f)) as i64;
    let clamp = |v: i64| v.clamp(0, i64::from(nmax)) as u32;
    let plain = |digit: u32| Decision { digit, snapped_to: None };
    if frac == Real::ZERO {
        // Exact boundary: beta*r is an integer in the working arithmetic.
        return match mode {
            Mode::Greedy => Ok(plain(clamp(fi))),
            Mode::Quasi => {
                if fi <= 0 {
                    Err(Error::NearTie { index })
                } else {
                    Ok(plain(clamp(fi - 1)))
                }
            }
        };
    }
    let one = real_from_u32(1, frac.precision().max(32));
    let (boundary, lo_branch, hi_branch) = if frac < *eps {
        (fi, fi - 1, fi) // y within the guard of the integer fi
    } else if &one - &frac < *eps {
        (fi + 1, fi, fi + 1) // y within the guard of fi + 1
    } else {
        // Clear of every boundary: floor is the greedy digit and, being
        // strictly below y, also the quasi-greedy digit.
        if fi < 0 {
            return Err(Error::NearTie { index });
        }
        return Ok(plain(clamp(fi)));
    };
    let (a, b) = (clamp(lo_branch), clamp(hi_branch));
    if a == b {
        return Ok(plain(a));
    }
    match policy {
        TiePolicy::Strict => Err(Error::NearTie { index }),
        TiePolicy::Snap => {
            // As if y equals the boundary exactly.
            let digit = match mode {
                Mode::Greedy => clamp(boundary),
                Mode::Quasi => {
                    if boundary <= 0 {
                        return Err(Error::NearTie { index });
                    }
                    clamp(boundary - 1)
                }
            };
            Ok(Decision { digit, snapped_to: Some(boundary) })
        }
    }
}

fn expand(x: &Real, base: &Base, depth: usize, mode: Mode) -> Result<Word> {
    let nmax = base.alphabet.max_digit();
    let prec = base.working_precision(depth);
    let beta = base.beta.clone().with_precision(prec).value();
    let eps = real_from_f64(2f64.powi(-(base.guard_bits as i32)), prec);
    let mut r = x.clone().with_precision(prec).value();
    let mut digits = Vec::with_capacity(depth);
    for i in 0..depth {
        let y = &beta * &r;
        let scale = if to_f64(&y) > 1.0 { y.clone() } else { real_from_u32(1, prec) };
        let d = decide_digit(&y, &(&eps * &scale), nmax, mode, base.tie_policy, i)?;
        r = match d.snapped_to {
            Some(m) => {
                // Renormalize: continue exactly as at the boundary.
                real_from_f64((m - i64::from(d.digit)) as f64, prec)
            }
            None => y - real_from_u32(d.digit, prec),
        };
        digits.push(d.digit);
    }
    Word::new(base.alphabet, digits)
}

fn check_x_range(x: &Real, base: &Base, prec: usize) -> Result<()> {
    let slack = real_from_f64(2f64.powi(-40), prec);
    let xmax = base.x_max(prec);
    if x < &Real::ZERO || *x > &xmax * &(real_from_u32(1, prec) + slack) {
        return Err(Error::XOutOfRange);
    }
    Ok(())
}

/// Greedy expansion of `x`: at each step the largest digit `a <= beta*r`.
pub fn greedy_of_x(x: f64, base: &Base, depth: usize) -> Result<Word> {
    let prec = base.working_precision(depth);
    let xr = real_from_f64(x, prec);
    check_x_range(&xr, base, prec)?;
    expand(&xr, base, depth, Mode::Greedy)
}

/// Quasi-greedy expansion of `x`: largest digit `a < beta*r`, giving the
/// largest *infinite* expansion. `x = 0` maps to `0^inf` by convention.
pub fn quasi_greedy_of_x(x: f64, base: &Base, depth: usize) -> Result<Word> {
    let prec = base.working_precision(depth);
    let xr = real_from_f64(x, prec);
    check_x_range(&xr, base, prec)?;
    if x == 0.0 {
        return Word::new(base.alphabet, vec![0; depth]);
    }
    expand(&xr, base, depth, Mode::Quasi)
}

/// Quasi-greedy expansion of 1, the sequence written `alpha(beta)`.
/// Requires `1 < beta <= N`.
pub fn quasi_greedy_of_one(base: &Base, depth: usize) -> Result<Word> {
    let prec = base.working_precision(depth);
    let n = real_from_u32(base.alphabet.n(), prec);
    if base.beta() > &n {
        return Err(Error::BaseOutOfRange(base.beta().to_string()));
    }
    expand(&real_from_u32(1, prec), base, depth, Mode::Quasi)
}

/// Quasi-greedy expansion of 1 with a proposed digit sequence, for bases
/// where the numeric recursion hits exact ties (algebraic left endpoints).
/// Each proposed digit is validated against the recursion within `tol`:
/// `a < beta*r + tol`, and maximality `a + 1 >= beta*r - tol` unless
/// `a = N-1`. This checks the hint rather than trusting it.
pub fn quasi_greedy_of_one_with_hint(
    base: &Base,
    hint: &DigitStream,
    depth: usize,
    tol: f64,
) -> Result<Word> {
    let prec = base.working_precision(depth);
    let beta = base.beta.clone().with_precision(prec).value();
    let tol = real_from_f64(tol, prec);
    let nmax = base.alphabet.max_digit();
    let mut r = real_from_u32(1, prec);
    let mut digits = Vec::with_capacity(depth);
    for i in 0..depth as u64 {
        let a = hint.digit(i);
        base.alphabet.check_digit(i64::from(a))?;
        let y = &beta * &r;
        let ar = real_from_u32(a, prec);
        if ar >= &y + &tol {
            return Err(Error::NotQuasiGreedy);
        }
        if a < nmax && &ar + &real_from_u32(1, prec) < &y - &tol {
            return Err(Error::NotQuasiGreedy);
        }
        r = y - ar;
        digits.push(a);
    }
    Word::new(base.alphabet, digits)
}

/// Exact test of the quasi-greedy condition for eventually periodic
/// streams: infinitely many nonzero digits and `shift^k(s) <= s` for all k.
pub fn is_quasi_greedy_sequence(s: &DigitStream) -> Result<bool> {
    let (pre, per) = s.periodic_form().ok_or(Error::NotEventuallyPeriodic)?;
    if per.iter().all(|&d| d == 0) {
        return Ok(false);
    }
    // Shifts repeat with period `per.len()` past the preperiod.
    for k in 1..=(pre.len() + per.len()) as u64 {
        if exact_cmp_periodic(&s.shift(k), s)? == Ordering::Greater {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compare a stream's tail against a finite digit prefix; `None` when they
/// agree over the whole prefix.
fn cmp_tail_vs_prefix(s: &DigitStream, from: u64, alpha: &[u32]) -> Option<Ordering> {
    for (j, &a) in alpha.iter().enumerate() {
        match s.digit(from + j as u64).cmp(&a) {
            Ordering::Equal => {}
            other => return Some(other),
        }
    }
    None
}

/// Positions that exhaust all distinct tails of an eventually periodic
/// stream: `0 ..= preperiod + period`.
fn tail_positions(s: &DigitStream) -> Result<u64> {
    let (pre, per) = s.periodic_form().ok_or(Error::NotEventuallyPeriodic)?;
    Ok((pre.len() + per.len()) as u64)
}

/// Greedy characterization: `s` is the greedy expansion of its value iff
/// `shift^n(s) < alpha(beta)` whenever the n-th digit is below `N-1`.
pub fn is_greedy_sequence(s: &DigitStream, base: &Base, depth: usize) -> Result<bool> {
    let alpha = quasi_greedy_of_one(base, depth)?;
    let span = tail_positions(s)?;
    for n in 1..=span {
        if s.digit(n - 1) < base.alphabet.max_digit() {
            match cmp_tail_vs_prefix(s, n, alpha.digits()) {
                Some(Ordering::Less) => {}
                Some(Ordering::Greater) => return Ok(false),
                None => return Err(Error::DepthExceeded(depth)),
                Some(Ordering::Equal) => unreachable!("scan skips equal digits"),
            }
        }
    }
    Ok(true)
}

/// Strengthened greedy characterization: all tails past a sub-maximal
/// digit stay below `alpha(beta)`. Equivalent to `is_greedy_sequence`;
/// kept as an independent route for cross-checking.
pub fn is_greedy_sequence_all_tails(s: &DigitStream, base: &Base, depth: usize) -> Result<bool> {
    let alpha = quasi_greedy_of_one(base, depth)?;
    let span = tail_positions(s)?;
    let (pre, per) = s.periodic_form().ok_or(Error::NotEventuallyPeriodic)?;
    let first_submax = (0..pre.len() + per.len())
        .find(|&i| s.digit(i as u64) < base.alphabet.max_digit());
    let Some(m) = first_submax else {
        return Ok(true); // (N-1)^inf: condition vacuous
    };
    for n in (m as u64 + 1)..=(span + m as u64 + 1) {
        match cmp_tail_vs_prefix(s, n, alpha.digits()) {
            Some(Ordering::Less) => {}
            Some(Ordering::Greater) => return Ok(false),
            None => return Err(Error::DepthExceeded(depth)),
            Some(Ordering::Equal) => unreachable!("scan skips equal digits"),
        }
    }
    Ok(true)
}

/// Unique-expansion test: every tail past the first sub-maximal digit stays
/// strictly below `alpha(beta)`, and so does every reflected tail past the
/// first nonzero digit. When no such digit exists the corresponding family
/// is vacuous (`(N-1)^inf` and `0^inf` are endpoints with one expansion).
pub fn is_unique_expansion(s: &DigitStream, base: &Base, depth: usize) -> Result<bool> {
    let alpha = quasi_greedy_of_one(base, depth)?;
    let span = tail_positions(s)?;
    let nmax = base.alphabet.max_digit();
    let first = |pred: &dyn Fn(u32) -> bool| (0..span).find(|&i| pred(s.digit(i)));

    if let Some(m) = first(&|d| d < nmax) {
        for j in (m + 1)..=(m + 1 + span) {
            match cmp_tail_vs_prefix(s, j, alpha.digits()) {
                Some(Ordering::Less) => {}
                Some(Ordering::Greater) => return Ok(false),
                None => return Err(Error::DepthExceeded(depth)),
                Some(Ordering::Equal) => unreachable!("scan skips equal digits"),
            }
        }
    }
    if let Some(n) = first(&|d| d > 0) {
        let refl = s.reflect();
        for j in (n + 1)..=(n + 1 + span) {
            match cmp_tail_vs_prefix(&refl, j, alpha.digits()) {
                Some(Ordering::Less) => {}
                Some(Ordering::Greater) => return Ok(false),
                None => return Err(Error::DepthExceeded(depth)),
                Some(Ordering::Equal) => unreachable!("scan skips equal digits"),
            }
        }
    }
    Ok(true)
}

/// The two-sided strict condition `reflect(alpha) < shift^k(s) < alpha`
/// for every k. A sufficient condition for unique expansions.
pub fn satisfies_two_sided_condition(s: &DigitStream, base: &Base, depth: usize) -> Result<bool> {
    let alpha = quasi_greedy_of_one(base, depth)?;
    let alpha_refl: Vec<u32> =
        alpha.digits().iter().map(|&d| base.alphabet.reflect_digit(d)).collect();
    let span = tail_positions(s)?;
    for k in 0..=span {
        match cmp_tail_vs_prefix(s, k, alpha.digits()) {
            Some(Ordering::Less) => {}
            Some(Ordering::Greater) => return Ok(false),
            None => return Err(Error::DepthExceeded(depth)),
            Some(Ordering::Equal) => unreachable!("scan skips equal digits"),
        }
        match cmp_tail_vs_prefix(s, k, &alpha_refl) {
            Some(Ordering::Greater) => {}
            Some(Ordering::Less) => return Ok(false),
            None => return Err(Error::DepthExceeded(depth)),
            Some(Ordering::Equal) => unreachable!("scan skips equal digits"),
        }
    }
    Ok(true)
}

/// A real number with a certified error radius, at both machine and full
/// precision.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CertifiedReal {
    pub value: f64,
    pub radius: f64,
    #[serde(skip)]
    pub precise: Real,
}

impl CertifiedReal {
    pub fn exact(value: f64) -> CertifiedReal {
        CertifiedReal { value, radius: 0.0, precise: real_from_f64(value, 64) }
    }

    /// Do the two enclosures certifiably not intersect?
    pub fn certainly_below(&self, other: &CertifiedReal) -> bool {
        self.value + self.radius < other.value - other.radius
    }

    pub fn overlaps(&self, other: &CertifiedReal) -> bool {
        (self.value - other.value).abs() <= self.radius + other.radius
    }
}

/// The unique `beta` in `(1, N]` with `Pi_beta(s) = 1`, for a quasi-greedy
/// sequence `s`, located by bisection on the strictly decreasing map
/// `beta -> Pi_beta(s)`.
///
/// Sign decisions use the certified enclosure `[S_d, S_d + tail]` of the
/// truncated series; an undecidable midpoint either gets more terms or —
/// once the tail is small against the bracket — yields a direct enclosure
/// of the root via the slope bound `|dPi/dbeta| >= 1/N^2` (valid because
/// the first digit of a quasi-greedy sequence is >= 1).
pub fn base_from_quasi_greedy(s: &DigitStream, tol: f64) -> Result<CertifiedReal> {
    let alphabet = s.alphabet();
    let n = alphabet.n();
    if s.is_eventually_periodic() {
        if !is_quasi_greedy_sequence(s)? {
            return Err(Error::NotQuasiGreedy);
        }
    } else {
        // Bounded sanity check for non-periodic streams (the condition is
        // only semi-decidable there).
        let prefix = s.prefix(DEFAULT_DEPTH);
        for k in 1..64.min(prefix.len()) {
            if prefix[k..] > prefix[..prefix.len() - k] {
                return Err(Error::NotQuasiGreedy);
            }
        }
        if s.digit(0) == 0 {
            return Err(Error::NotQuasiGreedy);
        }
    }

    let tol = tol.clamp(1e-300, 0.5); // keep -log2(tol) finite
    let tol_bits = (-tol.log2()).ceil().max(1.0) as usize;
    let prec = tol_bits + 96;
    let tol_r = real_from_f64(tol, prec);
    let one = real_from_u32(1, prec);
    let nn_sq = real_from_u32(n * n, prec);
    let quarter = real_from_f64(0.25, prec);

    let mut lo = &one + &real_from_f64(2f64.powi(-10), prec);
    let mut hi = real_from_u32(n, prec);
    // Establish Pi(lo) > 1, walking lo toward 1 if needed. Start shallow:
    // the loop deepens on demand.
    let mut d = 64;
    loop {
        let s_lo = partial_sum(s, &lo, d, prec);
        if s_lo >= one {
            break;
        }
        let tail = tail_real(n, &lo, d, prec);
        if &s_lo + &tail <= one {
            // Root certifiably below lo; move the bracket down.
            hi = lo.clone();
            lo = &one + &((&lo - &one) / real_from_u32(2, prec));
            if &hi - &lo < tol_r {
                break;
            }
        } else {
            d += d / 2 + 8;
        }
        if d > 1 << 22 {
            return Err(Error::BudgetExceeded("series depth in base bisection".into()));
        }
    }

    while &hi - &lo > tol_r {
        let mid = (&lo + &hi) / real_from_u32(2, prec);
        loop {
            let s_mid = partial_sum(s, &mid, d, prec);
            let tail = tail_real(n, &mid, d, prec);
            if s_mid >= one {
                lo = mid.clone();
                break;
            }
            if &s_mid + &tail <= one {
                hi = mid.clone();
                break;
            }
            // |Pi(mid) - 1| <= tail, so |mid - root| <= tail * N^2.
            let slack = &tail * &nn_sq;
            if &slack <= &(&(&hi - &lo) * &quarter) {
                let new_lo = &mid - &slack;
                let new_hi = &mid + &slack;
                if new_lo > lo {
                    lo = new_lo;
                }
                if new_hi < hi {
                    hi = new_hi;
                }
                break;
            }
            d += d / 2 + 8;
            if d > 1 << 22 {
                return Err(Error::BudgetExceeded("series depth in base bisection".into()));
            }
        }
    }

    let precise = (&lo + &hi) / real_from_u32(2, prec);
    let radius = to_f64(&(&hi - &lo)) * 0.5 * (1.0 + 1e-12) + f64::MIN_POSITIVE;
    Ok(CertifiedReal { value: to_f64(&precise), radius, precise })
}
