//! Admissible blocks and their base intervals.
//!
//! A block `t_1...t_p` with `t_p < N-1` is *admissible* when for every
//! `1 <= i <= p` the cyclic rotation dominates the reflection,
//! `reflect(t_1...t_p) <= t_i...t_p t_1...t_{i-1}`, and
//! `(t_i...t_p)^+ reflect(t_1...t_{i-1}) <= (t_1...t_p)^+`.
//! Each admissible block generates a base interval `[beta_L, beta_U]`:
//! at `beta_L` the quasi-greedy expansion of 1 is `(t_1...t_p)^inf`
//! (so `beta_L` is an algebraic root of an explicit polynomial), and at
//! `beta_U` it is the generalized Thue-Morse stream of `t^+` (located
//! numerically by certified series bisection).

use std::cmp::Ordering;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansions::{
    base_from_quasi_greedy, quasi_greedy_of_one, Base, CertifiedReal, TiePolicy,
};
use crate::real::{real_from_f64, real_from_u32, to_f64, Real};
use crate::words::{gtm_prefix_doubling, reflect_digits, Alphabet, DigitStream, Word};

/// Candidate budget for exhaustive enumeration.
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;
/// Default certified radius for endpoints.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Exact admissibility test by finite word comparisons.
pub fn is_admissible_block(t: &Word) -> bool {
    let alphabet = t.alphabet();
    let d = t.digits();
    let p = d.len();
    if d[p - 1] + 1 >= alphabet.n() {
        return false;
    }
    let refl = reflect_digits(d, alphabet);
    // t^+ once; rotations and split comparisons per i.
    let mut plus = d.to_vec();
    plus[p - 1] += 1;
    for i in 0..p {
        // reflect(t) <= t_i..t_p t_1..t_{i-1} (cyclic rotation by i)
        let rotation_cmp = (0..p)
            .map(|j| refl[j].cmp(&d[(i + j) % p]))
            .find(|c| *c != Ordering::Equal)
            .unwrap_or(Ordering::Equal);
        if rotation_cmp == Ordering::Greater {
            return false;
        }
        if i == 0 {
            continue; // second condition is trivial at i = 1
        }
        // (t_i..t_p)^+ reflect(t_1..t_{i-1}) <= t^+
        let mut left: Vec<u32> = d[i..].to_vec();
        let last = left.last_mut().expect("i < p");
        *last += 1; // <= N-1 because t_p < N-1 and interior digits stay in range
        if *last >= alphabet.n() {
            return false;
        }
        left.extend(refl[..i].iter().copied());
        if left > plus {
            return false;
        }
    }
    true
}

/// `None` when the block is admissible; otherwise a human-readable
/// witness for the first violated condition.
pub fn admissibility_witness(t: &Word) -> Option<String> {
    let alphabet = t.alphabet();
    let d = t.digits();
    let p = d.len();
    if d[p - 1] + 1 >= alphabet.n() {
        return Some(format!("t_{p} = {} is the maximal digit", d[p - 1]));
    }
    let refl = reflect_digits(d, alphabet);
    let mut plus = d.to_vec();
    plus[p - 1] += 1;
    for i in 0..p {
        let rotation_cmp = (0..p)
            .map(|j| refl[j].cmp(&d[(i + j) % p]))
            .find(|c| *c != Ordering::Equal)
            .unwrap_or(Ordering::Equal);
        if rotation_cmp == Ordering::Greater {
            return Some(if i == 0 {
                format!("reflect(t_1..t_{p}) > t_1..t_{p}")
            } else {
                format!("reflect(t_1..t_{p}) > rotation t_{}..t_{p} t_1..t_{}", i + 1, i)
            });
        }
        if i == 0 {
            continue;
        }
        let mut left: Vec<u32> = d[i..].to_vec();
        *left.last_mut().expect("i < p") += 1;
        left.extend(refl[..i].iter().copied());
        if left > plus {
            return Some(format!(
                "(t_{}..t_{p})^+ reflect(t_1..t_{}) > (t_1..t_{p})^+",
                i + 1,
                i
            ));
        }
    }
    None
}

/// All admissible blocks of length `<= p_max` in (length, lexicographic)
/// order. The scan is exhaustive over `N^p` candidates per length.
pub fn enumerate_admissible(alphabet: Alphabet, p_max: usize) -> Result<Vec<Word>> {
    enumerate_admissible_budget(alphabet, p_max, DEFAULT_ENUM_BUDGET)
}

pub fn enumerate_admissible_budget(
    alphabet: Alphabet,
    p_max: usize,
    budget: u64,
) -> Result<Vec<Word>> {
    let n = alphabet.n() as u64;
    let mut total: u64 = 0;
    for p in 1..=p_max as u32 {
        total = total.saturating_add(n.saturating_pow(p));
    }
    if total > budget {
        return Err(Error::BudgetExceeded(format!(
            "{total} candidates exceed budget {budget}"
        )));
    }
    let mut out = Vec::new();
    for p in 1..=p_max {
        let mut digits = vec![0u32; p];
        loop {
            let w = Word::new(alphabet, digits.clone()).expect("digits in range");
            if is_admissible_block(&w) {
                out.push(w);
            }
            // odometer increment
            let mut i = p;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < alphabet.n() {
                    break;
                }
                digits[i] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    Ok(out)
}

/// An admissible block with certified interval endpoints.
#[derive(Debug, Clone)]
pub struct AdmissibleInterval {
    pub block: Word,
    pub beta_l: CertifiedReal,
    pub beta_u: CertifiedReal,
}

impl AdmissibleInterval {
    pub fn p(&self) -> usize {
        self.block.len()
    }

    /// Does the certified interval contain `beta` (inclusive, padded by
    /// the endpoint radii)?
    pub fn contains(&self, beta: f64) -> bool {
        beta >= self.beta_l.value - self.beta_l.radius
            && beta <= self.beta_u.value + self.beta_u.radius
    }
}

impl Serialize for AdmissibleInterval {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AdmissibleInterval", 4)?;
        s.serialize_field("N", &self.block.alphabet().n())?;
        s.serialize_field("block", &self.block)?;
        s.serialize_field("beta_L", &self.beta_l)?;
        s.serialize_field("beta_U", &self.beta_u)?;
        s.end()
    }
}

/// The polynomial `P(beta) = beta^p - 1 - sum t_i beta^(p-i)`, whose root
/// in `(1, N]` is `beta_L` (from summing the periodic series
/// `Pi_beta((t)^inf) = 1`).
fn beta_l_poly(block: &Word, beta: &Real, prec: usize) -> Real {
    let b = beta.clone().with_precision(prec).value();
    // Horner over coefficients [1, -t_1, ..., -t_p] then subtract 1.
    let mut v = real_from_u32(1, prec);
    for &t in block.digits() {
        v = v * &b - real_from_u32(t, prec);
    }
    v - real_from_u32(1, prec)
}

/// `beta_L`: the root of the periodic-series polynomial in `(1, N]`,
/// isolated by sign-change bisection with an exact-hit fast path.
pub fn beta_l_root(block: &Word, tol: f64) -> Result<CertifiedReal> {
    let alphabet = block.alphabet();
    let tol = tol.clamp(1e-300, 0.5); // keep -log2(tol) finite
    let prec = (-tol.log2()).ceil().max(1.0) as usize + 128;
    let tol_r = real_from_f64(tol, prec);
    let mut lo = real_from_f64(1.0 + 2f64.powi(-10), prec);
    let mut hi = real_from_u32(alphabet.n(), prec);
    debug_assert!(beta_l_poly(block, &lo, prec) < Real::ZERO);
    debug_assert!(beta_l_poly(block, &hi, prec) > Real::ZERO);
    while &hi - &lo > tol_r {
        let mid = (&lo + &hi) / real_from_u32(2, prec);
        let v = beta_l_poly(block, &mid, prec);
        if v == Real::ZERO {
            // Exact root (integer or dyadic beta_L, e.g. N-1).
            let radius = 2f64.powi(-(prec as i32) + 8).max(f64::MIN_POSITIVE);
            return Ok(CertifiedReal { value: to_f64(&mid), radius, precise: mid });
        } else if v < Real::ZERO {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let precise = (&lo + &hi) / real_from_u32(2, prec);
    let radius = to_f64(&(&hi - &lo)) * 0.5 * (1.0 + 1e-12) + f64::MIN_POSITIVE;
    Ok(CertifiedReal { value: to_f64(&precise), radius, precise })
}

/// Closed form for the base `G_N` below which no nontrivial unique
/// expansions exist: `k + 1` for `N = 2k + 1`, `(k + sqrt(k^2 + 4k))/2`
/// for `N = 2k`.
pub fn generalized_golden_ratio(alphabet: Alphabet, prec: usize) -> Real {
    use dashu_base::SquareRoot;
    let n = alphabet.n();
    let k = n / 2;
    if n % 2 == 1 {
        real_from_u32(k + 1, prec)
    } else {
        let disc = real_from_u32(k * k + 4 * k, prec);
        (real_from_u32(k, prec) + disc.sqrt()) / real_from_u32(2, prec)
    }
}

/// Both endpoints of the interval generated by an admissible block, with
/// the structural invariants checked on the certified enclosures.
pub fn interval_endpoints(block: &Word, tol: f64) -> Result<AdmissibleInterval> {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    type Key = (u32, Vec<u32>, u64);
    static CACHE: OnceLock<Mutex<HashMap<Key, AdmissibleInterval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (block.alphabet().n(), block.digits().to_vec(), tol.to_bits());
    if let Some(iv) = cache.lock().unwrap().get(&key) {
        return Ok(iv.clone());
    }
    let iv = interval_endpoints_uncached(block, tol)?;
    cache.lock().unwrap().insert(key, iv.clone());
    Ok(iv)
}

fn interval_endpoints_uncached(block: &Word, tol: f64) -> Result<AdmissibleInterval> {
    if !is_admissible_block(block) {
        return Err(Error::NotAdmissible);
    }
    let beta_l = beta_l_root(block, tol)?;
    let seed = block.plus_one()?;
    let theta = DigitStream::gtm(&seed)?;
    let beta_u = base_from_quasi_greedy(&theta, tol)?;

    if !beta_l.certainly_below(&beta_u) {
        return Err(Error::Undecided);
    }
    let g = to_f64(&generalized_golden_ratio(block.alphabet(), 96));
    let n = f64::from(block.alphabet().n());
    debug_assert!(beta_l.value + beta_l.radius >= g - 1e-9);
    debug_assert!(beta_u.value - beta_u.radius < n);

    Ok(AdmissibleInterval { block: block.clone(), beta_l, beta_u })
}

/// The increasing base ladder `beta_1 < beta_2 < ... < beta_U`, where
/// `beta_n` has the periodic quasi-greedy expansion
/// `(theta_1...theta_L reflect(theta_1...theta_L))^inf`, `L = 2^(n-1) p`.
pub fn beta_ladder(block: &Word, n_max: usize, tol: f64) -> Result<Vec<CertifiedReal>> {
    if !is_admissible_block(block) {
        return Err(Error::NotAdmissible);
    }
    let alphabet = block.alphabet();
    let seed = block.plus_one()?;
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let len = block
            .len()
            .checked_shl(n as u32 - 1)
            .filter(|&l| l <= 1 << 20)
            .ok_or_else(|| Error::BudgetExceeded("ladder prefix length".into()))?;
        let mut period = gtm_prefix_doubling(&seed, len)?;
        period.extend(reflect_digits(&period.clone(), alphabet));
        let word = Word::new(alphabet, period)?;
        out.push(base_from_quasi_greedy(&DigitStream::periodic(&word), tol)?);
    }
    Ok(out)
}

/// How two admissible intervals can relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalRelation {
    Disjoint,
    /// Certified structurally: one block's extended seed is a doubling
    /// prefix of the other's Thue-Morse stream, which pins the shared
    /// right endpoint without asserting equality of two computed reals.
    SameRightEndpoint,
    Identical,
}

/// Is `long`'s seed a doubling-prefix extension of `short`'s, i.e.
/// `|long| = 2^k |short|` and `long^+ = theta(short^+)` on `|long|` digits?
/// An exact integer test.
fn doubling_extension(short: &Word, long: &Word) -> bool {
    let (q, p) = (short.len(), long.len());
    if p <= q || p % q != 0 || !(p / q).is_power_of_two() {
        return false;
    }
    let (Ok(short_seed), Ok(long_seed)) = (short.plus_one(), long.plus_one()) else {
        return false;
    };
    match gtm_prefix_doubling(&short_seed, p) {
        Ok(prefix) => prefix == long_seed.digits(),
        Err(_) => false,
    }
}

/// Classify the relation between the intervals of two admissible blocks.
/// Overlapping enclosures are only accepted when the structural
/// doubling-prefix certificate identifies the right endpoints; otherwise
/// `Undecided` signals that `tol` was too coarse.
pub fn interval_relation(a: &Word, b: &Word, tol: f64) -> Result<IntervalRelation> {
    if !is_admissible_block(a) || !is_admissible_block(b) {
        return Err(Error::NotAdmissible);
    }
    if a == b {
        return Ok(IntervalRelation::Identical);
    }
    if doubling_extension(a, b) || doubling_extension(b, a) {
        return Ok(IntervalRelation::SameRightEndpoint);
    }
    let ia = interval_endpoints(a, tol)?;
    let ib = interval_endpoints(b, tol)?;
    if ia.beta_u.certainly_below(&ib.beta_l) || ib.beta_u.certainly_below(&ia.beta_l) {
        return Ok(IntervalRelation::Disjoint);
    }
    Err(Error::Undecided)
}

/// `G_N` (closed form) and the critical base `beta_c(N)`, the base whose
/// quasi-greedy expansion of 1 is the Komornik-Loreti digit stream.
///
/// Memoized per `(N, tol)`: location queries hit this on every call and
/// the series bisection for `beta_c` is not cheap.
pub fn critical_bases(alphabet: Alphabet, tol: f64) -> Result<(CertifiedReal, CertifiedReal)> {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<(u32, u64), (CertifiedReal, CertifiedReal)>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (alphabet.n(), tol.to_bits());
    if let Some(pair) = cache.lock().unwrap().get(&key) {
        return Ok(pair.clone());
    }
    let pair = critical_bases_uncached(alphabet, tol)?;
    cache.lock().unwrap().insert(key, pair.clone());
    Ok(pair)
}

fn critical_bases_uncached(alphabet: Alphabet, tol: f64) -> Result<(CertifiedReal, CertifiedReal)> {
    let prec = (-tol.log2()).ceil().max(1.0) as usize + 96;
    let g = generalized_golden_ratio(alphabet, prec);
    let g_cert = CertifiedReal {
        value: to_f64(&g),
        radius: if alphabet.n() % 2 == 1 { 0.0 } else { 1e-18 },
        precise: g,
    };
    let kl = crate::words::komornik_loreti_stream(alphabet);
    let beta_c = base_from_quasi_greedy(&kl, tol)?;
    Ok((g_cert, beta_c))
}

/// A table of enumerated intervals for repeated containment queries.
///
/// Certified endpoints are expensive and the enumeration can run to
/// ~10^5 blocks, so the table stores only cheap double-precision
/// brackets per block and certifies lazily: a query filters candidates
/// through the brackets, then computes (and caches) certified endpoints
/// for the handful that survive.
#[derive(Debug)]
pub struct IntervalTable {
    alphabet: Alphabet,
    tol: f64,
    entries: Vec<TableEntry>,
    certified: std::sync::Mutex<std::collections::HashMap<usize, AdmissibleInterval>>,
}

#[derive(Debug, Clone)]
struct TableEntry {
    block: Word,
    /// f64 bisection approximation of `beta_L` (error ~1e-13).
    approx_l: f64,
    /// Rigorous (up to rounding) upper bound for `beta_U`: the root of
    /// the block polynomial of `t^+` padded with max digits.
    upper_u: f64,
}

/// Candidate filter slack around the double-precision brackets.
const APPROX_SLACK: f64 = 1e-9;

impl IntervalTable {
    pub fn build(alphabet: Alphabet, p_max: usize, tol: f64) -> Result<IntervalTable> {
        let blocks = enumerate_admissible(alphabet, p_max)?;
        let entries = blocks
            .into_iter()
            .map(|block| {
                let approx_l = approx_beta_l(&block);
                let upper_u = upper_bound_beta_u(&block);
                TableEntry { block, approx_l, upper_u }
            })
            .collect();
        Ok(IntervalTable {
            alphabet,
            tol,
            entries,
            certified: std::sync::Mutex::new(std::collections::HashMap::new()),
        })
    }

    /// A table with no intervals (every location falls through to the
    /// scan).
    pub fn empty(alphabet: Alphabet) -> IntervalTable {
        IntervalTable {
            alphabet,
            tol: DEFAULT_TOL,
            entries: Vec::new(),
            certified: std::sync::Mutex::new(std::collections::HashMap::new()),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn blocks(&self) -> impl Iterator<Item = &Word> {
        self.entries.iter().map(|e| &e.block)
    }

    fn certified_entry(&self, i: usize) -> Result<AdmissibleInterval> {
        if let Some(iv) = self.certified.lock().unwrap().get(&i) {
            return Ok(iv.clone());
        }
        let block = &self.entries[i].block;
        // interval width shrinks like beta^-p: tighten accordingly
        let tol = self.tol.min(self.entries[i].approx_l.powi(-(block.len() as i32 + 20)));
        let iv = interval_endpoints(block, tol)?;
        self.certified.lock().unwrap().insert(i, iv.clone());
        Ok(iv)
    }

    /// First interval (in enumeration order: shortest block, then
    /// lexicographic) whose certified enclosure contains `beta`.
    pub fn locate(&self, beta: f64) -> Option<AdmissibleInterval> {
        for i in 0..self.entries.len() {
            let e = &self.entries[i];
            if beta < e.approx_l - APPROX_SLACK || beta > e.upper_u + APPROX_SLACK {
                continue;
            }
            if let Ok(iv) = self.certified_entry(i) {
                if iv.contains(beta) {
                    return Some(iv);
                }
            }
        }
        None
    }
}

/// Double-precision root of `b^p - t_1 b^{p-1} - ... - t_p - 1`.
fn approx_beta_l(block: &Word) -> f64 {
    let t = block.digits();
    let n = f64::from(block.alphabet().n());
    let f = |b: f64| t.iter().fold(1.0, |acc, &d| acc * b - f64::from(d)) - 1.0;
    bisect_f64(f, 1.0 + 1e-9, n)
}

/// Upper bound for `beta_U`: pad the digits of `t^+` with the maximal
/// digit forever; the padded series dominates the Thue-Morse one, so its
/// root does too.
fn upper_bound_beta_u(block: &Word) -> f64 {
    let alphabet = block.alphabet();
    let n = f64::from(alphabet.n());
    let Ok(plus) = block.plus_one() else { return n };
    let t: Vec<f64> = plus.digits().iter().map(|&d| f64::from(d)).collect();
    let p = t.len() as i32;
    // g decreasing in b; g(b) > 0 near 1, g(N) <= 0 in range
    let g = |b: f64| {
        let head: f64 = t.iter().enumerate().map(|(i, &d)| d * b.powi(-(i as i32 + 1))).sum();
        head + (n - 1.0) * b.powi(-p) / (b - 1.0) - 1.0
    };
    if g(n) > 0.0 {
        return n;
    }
    bisect_f64(|b| -g(b), 1.0 + 1e-9, n)
}

/// Plain f64 bisection of an increasing function with `f(lo) < 0 < f(hi)`
/// (clamps to an endpoint if the sign assumption fails).
fn bisect_f64(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    if f(lo) >= 0.0 {
        return lo;
    }
    if f(hi) <= 0.0 {
        return hi;
    }
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Outcome of locating the admissible block governing a base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Located {
    Block(Word),
    /// The closure condition held at every checked position: `beta` sits
    /// in the closure of the unique-expansion bases.
    InClosureU,
    BelowCritical,
    Unresolved,
}

/// Find the admissible block whose interval contains `beta`.
///
/// Containment in an enumerated interval is preferred (robust, and it
/// resolves left endpoints to their interval). Off the table, the scan
/// looks for the least `m` with `shift^m(alpha) <= reflect(alpha)` and
/// proposes the block `alpha_1...alpha_m^-`, verifying admissibility and
/// containment before accepting it.
pub fn locate_block(base: &Base, depth: usize, table: &IntervalTable) -> Result<Located> {
    let alphabet = base.alphabet();
    let beta = base.beta_f64();
    let (_, beta_c) = critical_bases(alphabet, DEFAULT_TOL)?;
    if beta <= beta_c.value + beta_c.radius {
        return Ok(Located::BelowCritical);
    }
    if beta >= f64::from(alphabet.n()) {
        return Ok(Located::Unresolved);
    }
    if let Some(iv) = table.locate(beta) {
        return Ok(Located::Block(iv.block.clone()));
    }

    let snap = base.clone().with_tie_policy(TiePolicy::Snap);
    let alpha = match quasi_greedy_of_one(&snap, depth) {
        Ok(w) => w,
        Err(_) => return Ok(Located::Unresolved),
    };
    let a = alpha.digits();
    let refl = reflect_digits(a, alphabet);
    for m in 1..a.len() {
        // shift^m(alpha) <= reflect(alpha) on the available prefix; an
        // all-equal run-out is ambiguous and skipped.
        let cmp = (0..a.len() - m)
            .map(|j| a[m + j].cmp(&refl[j]))
            .find(|c| *c != Ordering::Equal);
        if cmp != Some(Ordering::Less) {
            continue;
        }
        let candidate = Word::new(alphabet, a[..m].to_vec())?;
        let Ok(block) = candidate.minus_one() else {
            return Ok(Located::Unresolved);
        };
        if !is_admissible_block(&block) {
            return Ok(Located::Unresolved);
        }
        // The interval width shrinks like beta^-p: the endpoint tolerance
        // must shrink with it or the enclosures cannot be separated.
        let tol = DEFAULT_TOL.min(beta.powi(-(block.len() as i32 + 20))).max(1e-300);
        let Ok(iv) = interval_endpoints(&block, tol) else {
            return Ok(Located::Unresolved);
        };
        if iv.contains(beta) {
            return Ok(Located::Block(block));
        }
        return Ok(Located::Unresolved);
    }
    Ok(Located::InClosureU)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphabet(n: u32) -> Alphabet {
        Alphabet::new(n).unwrap()
    }

    fn word(n: u32, digits: &[u32]) -> Word {
        Word::new(alphabet(n), digits.to_vec()).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible_block(&word(2, &[1, 0])));
        assert!(is_admissible_block(&word(4, &[3, 1])));
        assert!(!is_admissible_block(&word(2, &[0])));
        assert!(!is_admissible_block(&word(2, &[1]))); // t_1 = N-1
        assert!(is_admissible_block(&word(10, &[8])));
        assert!(is_admissible_block(&word(3, &[1])));
        assert!(is_admissible_block(&word(4, &[2, 1]))); // k(k-1), N=2k
    }

    #[test]
    fn enumeration_small() {
        assert!(enumerate_admissible(alphabet(2), 1).unwrap().is_empty());
        let n3 = enumerate_admissible(alphabet(3), 1).unwrap();
        assert_eq!(n3, vec![word(3, &[1])]);
        let n10 = enumerate_admissible(alphabet(10), 1).unwrap();
        let expect: Vec<Word> = [5u32, 6, 7, 8].iter().map(|&d| word(10, &[d])).collect();
        assert_eq!(n10, expect);
        // length-1 blocks are exactly ceil((N-1)/2) <= t_1 <= N-2
        for n in 2..=12u32 {
            let blocks = enumerate_admissible(alphabet(n), 1).unwrap();
            let expect: Vec<u32> = ((n - 1).div_ceil(2)..=n.saturating_sub(2)).collect();
            let got: Vec<u32> = blocks.iter().map(|w| w.digits()[0]).collect();
            assert_eq!(got, expect, "N={n}");
        }
        assert!(matches!(
            enumerate_admissible_budget(alphabet(10), 8, 1000),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn ordering_of_enumeration() {
        let blocks = enumerate_admissible(alphabet(4), 3).unwrap();
        for pair in blocks.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            assert!(a.len() < b.len() || (a.len() == b.len() && a.digits() < b.digits()));
        }
        assert!(blocks.contains(&word(4, &[3, 1])));
        assert!(blocks.contains(&word(4, &[2, 1])));
    }

    #[test]
    fn endpoints_basic() {
        let iv = interval_endpoints(&word(2, &[1, 0]), 1e-12).unwrap();
        let golden = 1.618033988749894848;
        assert!((iv.beta_l.value - golden).abs() < 1e-11);
        assert!((iv.beta_u.value - 1.78723).abs() < 1e-4);
        assert!(iv.beta_l.certainly_below(&iv.beta_u));

        let iv = interval_endpoints(&word(10, &[8]), 1e-12).unwrap();
        assert!((iv.beta_l.value - 9.0).abs() < 1e-11);
        let lower = (9.0 + 85f64.sqrt()) / 2.0;
        assert!(iv.beta_u.value > lower, "{} vs {}", iv.beta_u.value, lower);
        assert!(iv.beta_u.value < 10.0);

        assert!(matches!(
            interval_endpoints(&word(2, &[0]), 1e-12),
            Err(Error::NotAdmissible)
        ));
    }

    #[test]
    fn endpoint_invariants_small() {
        for n in 2..=5u32 {
            let g = to_f64(&generalized_golden_ratio(alphabet(n), 96));
            for b in enumerate_admissible(alphabet(n), 2).unwrap() {
                let iv = interval_endpoints(&b, 1e-12).unwrap();
                assert!(iv.beta_l.certainly_below(&iv.beta_u), "{b}");
                assert!(iv.beta_l.value + iv.beta_l.radius >= g - 1e-9, "{b}");
                assert!(iv.beta_u.value + iv.beta_u.radius < f64::from(n), "{b}");
            }
        }
    }

    #[test]
    fn ladder_increases_to_beta_u() {
        // Rung gaps shrink like beta^-(2^n p): four rungs stay separable
        // at this tolerance, deeper ones would collapse into beta_U.
        let block = word(2, &[1, 0]);
        let iv = interval_endpoints(&block, 1e-12).unwrap();
        let ladder = beta_ladder(&block, 4, 1e-12).unwrap();
        for pair in ladder.windows(2) {
            assert!(pair[0].certainly_below(&pair[1]));
        }
        assert!(ladder.last().unwrap().certainly_below(&iv.beta_u));
        // successive gaps shrink
        for w in ladder.windows(3) {
            assert!(w[2].value - w[1].value < w[1].value - w[0].value);
        }
        // the known first rung: root of Pi_beta((1100)^inf) = 1
        assert!((ladder[0].value - 1.7548776662469).abs() < 1e-10);
    }

    #[test]
    fn relations() {
        let a = word(4, &[2, 1]);
        let b = word(4, &[3, 1]);
        assert_eq!(interval_relation(&a, &a, 1e-12).unwrap(), IntervalRelation::Identical);
        assert_eq!(interval_relation(&a, &b, 1e-12).unwrap(), IntervalRelation::Disjoint);
        // doubled block of 31: seed 32, theta = 3201..., block = 3201^- = 3200
        let doubled_seed = gtm_prefix_doubling(&word(4, &[3, 2]), 4).unwrap();
        let doubled = Word::new(alphabet(4), doubled_seed).unwrap().minus_one().unwrap();
        assert!(is_admissible_block(&doubled));
        assert_eq!(
            interval_relation(&b, &doubled, 1e-12).unwrap(),
            IntervalRelation::SameRightEndpoint
        );
        assert_eq!(
            interval_relation(&doubled, &b, 1e-12).unwrap(),
            IntervalRelation::SameRightEndpoint
        );
    }

    #[test]
    fn critical_base_values() {
        let (g, bc) = critical_bases(alphabet(2), 1e-12).unwrap();
        assert!((g.value - 1.618033988749894848).abs() < 1e-12);
        assert!((bc.value - 1.787231650).abs() < 1e-8, "{}", bc.value);
        let (g3, _) = critical_bases(alphabet(3), 1e-12).unwrap();
        assert_eq!(g3.value, 2.0);
        let (g10, bc10) = critical_bases(alphabet(10), 1e-12).unwrap();
        assert!((g10.value - (5.0 + 45f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((bc10.value - 5.976).abs() < 1e-3, "{}", bc10.value);
        assert!(g10.value < bc10.value);
    }

    #[test]
    fn locating_bases() {
        let table = IntervalTable::build(alphabet(10), 1, 1e-12).unwrap();
        let base = Base::new(alphabet(10), 9.05).unwrap();
        match locate_block(&base, 256, &table).unwrap() {
            Located::Block(b) => assert_eq!(b, word(10, &[8])),
            other => panic!("expected block, got {other:?}"),
        }
        // beta = 9 is the left endpoint of the interval of "8": containment
        // resolves it to the interval.
        let base = Base::new(alphabet(10), 9.0).unwrap();
        match locate_block(&base, 256, &table).unwrap() {
            Located::Block(b) => assert_eq!(b, word(10, &[8])),
            other => panic!("expected block, got {other:?}"),
        }
        let base = Base::new(alphabet(10), 3.0).unwrap();
        assert_eq!(locate_block(&base, 256, &table).unwrap(), Located::BelowCritical);
    }

    #[test]
    fn locating_via_scan() {
        // Empty table forces the corollary scan.
        let table = IntervalTable::empty(alphabet(2));
        let base = Base::new(alphabet(2), 1.9).unwrap();
        match locate_block(&base, 256, &table).unwrap() {
            Located::Block(b) => {
                assert!(is_admissible_block(&b));
                // The governing block at 1.9 is long (p = 52), so the
                // interval is only ~beta^-52 wide.
                let tol = 1.9f64.powi(-(b.len() as i32 + 20));
                let iv = interval_endpoints(&b, tol).unwrap();
                assert!(iv.contains(1.9), "{iv:?}");
            }
            other => panic!("expected block, got {other:?}"),
        }
    }

    #[test]
    fn interval_json_shape() {
        let iv = interval_endpoints(&word(10, &[8]), 1e-12).unwrap();
        let v: serde_json::Value = serde_json::to_value(&iv).unwrap();
        assert_eq!(v["N"], 10);
        assert_eq!(v["block"][0], 8);
        assert!(v["beta_L"]["value"].is_f64());
        assert!(v["beta_L"]["radius"].is_f64());
        assert!(v["beta_U"]["value"].is_f64());
    }

    #[test]
    fn quasi_greedy_at_left_endpoint_matches_period() {
        use crate::expansions::quasi_greedy_of_one_with_hint;
        for b in enumerate_admissible(alphabet(4), 2).unwrap() {
            let iv = interval_endpoints(&b, 1e-30).unwrap();
            let base = Base::from_real(alphabet(4), iv.beta_l.precise.clone()).unwrap();
            let hint = DigitStream::periodic(&b);
            let w = quasi_greedy_of_one_with_hint(&base, &hint, 4 * b.len(), 1e-20).unwrap();
            let expect: Vec<u32> =
                (0..4 * b.len()).map(|i| b.digits()[i % b.len()]).collect();
            assert_eq!(w.digits(), &expect[..], "block {b}");
        }
    }
}
