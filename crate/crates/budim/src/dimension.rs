//! The dimension function `beta -> dim_H U_{beta,N}`: regime
//! classification, pointwise evaluation `h(Z_t)/log beta`, and uniform
//! curve sampling for figure reproduction.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::admissible::{critical_bases, locate_block, IntervalTable, Located, DEFAULT_TOL};
use crate::entropy::{entropy, EntropyResult};
use crate::error::Result;
use crate::expansions::Base;
use crate::words::{Alphabet, Word};

/// Which part of the base axis a sample falls in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "block", rename_all = "snake_case")]
pub enum Regime {
    /// `beta <= beta_c(N)`: only the trivial expansions are unique.
    TrivialZero,
    /// `beta` inside the admissible interval generated by this block.
    AdmissibleInterval(Word),
    /// `beta >= N`: every expansion is unique, dimension `log N / log beta`.
    SuperCritical,
    /// Location failed within budget (or `beta` lies in the closure set);
    /// only the bracket `[0, log N / log beta]` is known.
    Unresolved,
}

impl Regime {
    /// Short machine-stable label used in CSV output.
    pub fn label(&self) -> &'static str {
        match self {
            Regime::TrivialZero => "trivial_zero",
            Regime::AdmissibleInterval(_) => "interval",
            Regime::SuperCritical => "supercritical",
            Regime::Unresolved => "unresolved",
        }
    }
}

/// One evaluation of the dimension function.
///
/// Resolved samples have `dim_lo == dim_hi == dim()`; unresolved samples
/// carry only the bracketing bounds and `dim()` is `None` (they are never
/// interpolated).
#[derive(Debug, Clone, Serialize)]
pub struct DimensionSample {
    pub beta: f64,
    pub n: u32,
    pub regime: Regime,
    pub dim_lo: f64,
    pub dim_hi: f64,
    /// Entropy of the governing subshift (`None` when unresolved).
    pub h: Option<f64>,
}

impl DimensionSample {
    pub fn dim(&self) -> Option<f64> {
        if matches!(self.regime, Regime::Unresolved) {
            None
        } else {
            Some(self.dim_lo)
        }
    }
}

/// Reusable evaluator: the interval table and the per-block entropy
/// cache survive across grid points (sweeps revisit the same interval
/// thousands of times).
pub struct DimensionEvaluator {
    alphabet: Alphabet,
    table: IntervalTable,
    depth: usize,
    tol: f64,
    beta_c: f64,
    cache: Mutex<HashMap<Vec<u32>, EntropyResult>>,
}

impl DimensionEvaluator {
    pub fn new(alphabet: Alphabet, p_max: usize, depth: usize, tol: f64) -> Result<DimensionEvaluator> {
        let table = IntervalTable::build(alphabet, p_max, tol)?;
        let (_, beta_c) = critical_bases(alphabet, DEFAULT_TOL)?;
        Ok(DimensionEvaluator {
            alphabet,
            table,
            depth,
            tol,
            beta_c: beta_c.value + beta_c.radius,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn table(&self) -> &IntervalTable {
        &self.table
    }

    fn cached_entropy(&self, block: &Word) -> Result<EntropyResult> {
        let key = block.digits().to_vec();
        if let Some(e) = self.cache.lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let e = entropy(block, self.tol)?;
        self.cache.lock().unwrap().insert(key, e.clone());
        Ok(e)
    }

    pub fn eval(&self, beta: f64) -> Result<DimensionSample> {
        let n = self.alphabet.n();
        let log_n_over_log_beta = f64::from(n).ln() / beta.ln();
        // unresolved bracket: dim of a subset of the line is also <= 1
        let bracket_hi = log_n_over_log_beta.min(1.0);
        if beta <= self.beta_c {
            // validate the base even though the answer is immediate
            Base::new(self.alphabet, beta)?;
            return Ok(DimensionSample {
                beta,
                n,
                regime: Regime::TrivialZero,
                dim_lo: 0.0,
                dim_hi: 0.0,
                h: Some(0.0),
            });
        }
        if beta >= f64::from(n) {
            return Ok(DimensionSample {
                beta,
                n,
                regime: Regime::SuperCritical,
                dim_lo: log_n_over_log_beta,
                dim_hi: log_n_over_log_beta,
                h: Some(f64::from(n).ln()),
            });
        }
        let base = Base::new(self.alphabet, beta)?;
        match locate_block(&base, self.depth, &self.table)? {
            Located::BelowCritical => Ok(DimensionSample {
                beta,
                n,
                regime: Regime::TrivialZero,
                dim_lo: 0.0,
                dim_hi: 0.0,
                h: Some(0.0),
            }),
            Located::Block(block) => {
                // near-critical blocks can be long enough that their edge
                // graph blows the vertex budget; report the bracket instead
                let e = match self.cached_entropy(&block) {
                    Ok(e) => e,
                    Err(crate::error::Error::BudgetExceeded(_)) => {
                        return Ok(DimensionSample {
                            beta,
                            n,
                            regime: Regime::Unresolved,
                            dim_lo: 0.0,
                            dim_hi: bracket_hi,
                            h: None,
                        })
                    }
                    Err(e) => return Err(e),
                };
                // h <= log(out-degree) <= log N, so this stays in range
                let dim = (e.h / beta.ln()).clamp(0.0, log_n_over_log_beta);
                Ok(DimensionSample {
                    beta,
                    n,
                    regime: Regime::AdmissibleInterval(block),
                    dim_lo: dim,
                    dim_hi: dim,
                    h: Some(e.h),
                })
            }
            Located::InClosureU | Located::Unresolved => Ok(DimensionSample {
                beta,
                n,
                regime: Regime::Unresolved,
                dim_lo: 0.0,
                dim_hi: bracket_hi,
                h: None,
            }),
        }
    }
}

/// One-shot evaluation (builds a fresh table; use [`DimensionEvaluator`]
/// for sweeps).
pub fn dim_unique_set(base: &Base, p_max: usize, tol: f64) -> Result<DimensionSample> {
    let ev = DimensionEvaluator::new(base.alphabet(), p_max, 256, tol)?;
    ev.eval(base.beta_f64())
}

/// A sampled dimension curve.
#[derive(Debug, Clone, Serialize)]
pub struct CurveSamples {
    pub samples: Vec<DimensionSample>,
    pub unresolved_fraction: f64,
}

/// Uniform grid over `[beta_lo, beta_hi]`, in increasing `beta` order.
pub fn sample_curve(
    alphabet: Alphabet,
    beta_lo: f64,
    beta_hi: f64,
    grid_points: usize,
    p_max: usize,
    tol: f64,
) -> Result<CurveSamples> {
    assert!(beta_lo > 1.0 && beta_lo < beta_hi, "need 1 < beta_lo < beta_hi");
    assert!(grid_points >= 2, "need at least two grid points");
    let ev = DimensionEvaluator::new(alphabet, p_max, 256, tol)?;
    let step = (beta_hi - beta_lo) / (grid_points - 1) as f64;
    let mut samples = Vec::with_capacity(grid_points);
    let mut unresolved = 0usize;
    for i in 0..grid_points {
        let beta = beta_lo + step * i as f64;
        let s = ev.eval(beta)?;
        if matches!(s.regime, Regime::Unresolved) {
            unresolved += 1;
        }
        samples.push(s);
    }
    Ok(CurveSamples {
        samples,
        unresolved_fraction: unresolved as f64 / grid_points as f64,
    })
}
