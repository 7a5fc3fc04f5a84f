//! Digit alphabets, finite words, infinite digit streams and the
//! generalized Thue-Morse family.
//!
//! Digits live in `{0, ..., N-1}` and the *reflection* of a digit `d` is
//! `N-1-d`. A generalized Thue-Morse stream is defined by repeated
//! doubling: the prefix of length `2^(m+1) p` is the prefix of length
//! `2^m p` followed by its reflection with the last digit bumped by one.
//! Random access goes through a closed formula in terms of the classical
//! Thue-Morse sequence, so deep digits never require materializing the
//! doubled prefix.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The digit set `{0, ..., n-1}`, `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    n: u32,
}

impl Alphabet {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::AlphabetTooSmall(n));
        }
        Ok(Alphabet { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn max_digit(&self) -> u32 {
        self.n - 1
    }

    pub fn reflect_digit(&self, d: u32) -> u32 {
        debug_assert!(d < self.n);
        self.n - 1 - d
    }

    pub fn check_digit(&self, d: i64) -> Result<u32> {
        if d < 0 || d >= i64::from(self.n) {
            Err(Error::DigitOutOfRange { digit: d, n: self.n })
        } else {
            Ok(d as u32)
        }
    }
}

/// A finite digit block over an alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    digits: Vec<u32>,
}

impl Word {
    pub fn new(alphabet: Alphabet, digits: Vec<u32>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyWord);
        }
        for &d in &digits {
            alphabet.check_digit(i64::from(d))?;
        }
        Ok(Word { alphabet, digits })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit-wise reflection `d -> N-1-d`.
    pub fn reflect(&self) -> Word {
        Word {
            alphabet: self.alphabet,
            digits: reflect_digits(&self.digits, self.alphabet),
        }
    }

    /// `t_1 ... t_p^-`: decrement the last digit.
    pub fn minus_one(&self) -> Result<Word> {
        let mut digits = self.digits.clone();
        let last = digits.last_mut().expect("nonempty");
        if *last == 0 {
            return Err(Error::DigitOutOfRange { digit: -1, n: self.alphabet.n });
        }
        *last -= 1;
        Ok(Word { alphabet: self.alphabet, digits })
    }

    /// `t_1 ... t_p^+`: increment the last digit.
    pub fn plus_one(&self) -> Result<Word> {
        let mut digits = self.digits.clone();
        let last = digits.last_mut().expect("nonempty");
        if *last + 1 >= self.alphabet.n {
            return Err(Error::DigitOutOfRange {
                digit: i64::from(*last) + 1,
                n: self.alphabet.n,
            });
        }
        *last += 1;
        Ok(Word { alphabet: self.alphabet, digits })
    }

    /// Lexicographic comparison of two equal-length blocks.
    pub fn cmp_block(&self, other: &Word) -> Ordering {
        debug_assert_eq!(self.len(), other.len());
        self.digits.cmp(&other.digits)
    }

    /// Parse from either a compact digit string (`"910"`, only for N <= 10),
    /// a hyphen-joined form (`"9-1-0"`), or a JSON-style list (`"[9,1,0]"`).
    pub fn parse(alphabet: Alphabet, s: &str) -> Result<Word> {
        let s = s.trim();
        let digits: Vec<i64> = if s.starts_with('[') {
            let inner = s.trim_start_matches('[').trim_end_matches(']');
            inner
                .split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| p.trim().parse::<i64>().map_err(|_| Error::EmptyWord))
                .collect::<Result<_>>()?
        } else if s.contains('-') {
            s.split('-')
                .map(|p| p.trim().parse::<i64>().map_err(|_| Error::EmptyWord))
                .collect::<Result<_>>()?
        } else if alphabet.n() <= 10 {
            s.chars()
                .map(|c| c.to_digit(10).map(i64::from).ok_or(Error::EmptyWord))
                .collect::<Result<_>>()?
        } else {
            return Err(Error::EmptyWord);
        };
        let digits = digits
            .into_iter()
            .map(|d| alphabet.check_digit(d))
            .collect::<Result<Vec<u32>>>()?;
        Word::new(alphabet, digits)
    }

    /// Hyphen-joined rendering, unambiguous for any alphabet size.
    pub fn to_hyphen_string(&self) -> String {
        self.digits
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet.n() <= 10 {
            for d in &self.digits {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            write!(f, "[")?;
            for (i, d) in self.digits.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{d}")?;
            }
            write!(f, "]")
        }
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.digits.serialize(serializer)
    }
}

pub(crate) fn reflect_digits(digits: &[u32], alphabet: Alphabet) -> Vec<u32> {
    digits.iter().map(|&d| alphabet.reflect_digit(d)).collect()
}

/// Classical Thue-Morse digit: parity of the binary digit sum of `i`.
pub fn classical_tm(i: u64) -> u32 {
    i.count_ones() & 1
}

/// Closed formula for the generalized Thue-Morse digit `theta_ell` (1-based)
/// of the stream generated by `seed = t_1 ... t_p^+`.
pub fn gtm_digit_closed(seed: &Word, ell: u64) -> Result<u32> {
    let block = seed_to_block(seed)?;
    Ok(gtm_digit_of_block(&block, seed.alphabet(), ell))
}

/// The underlying block `t_1 ... t_p` of a seed `t_1 ... t_p^+`.
fn seed_to_block(seed: &Word) -> Result<Vec<u32>> {
    let mut block = seed.digits().to_vec();
    let last = block.last_mut().expect("nonempty");
    if *last == 0 {
        return Err(Error::InvalidSeed);
    }
    *last -= 1;
    Ok(block)
}

/// `theta_ell` with `ell = i p + q`, `1 <= q <= p`:
/// `t_q + tau_i (reflect(t_q) - t_q)`, plus `tau_{i+1} - tau_i` when `q = p`.
fn gtm_digit_of_block(block: &[u32], alphabet: Alphabet, ell: u64) -> u32 {
    debug_assert!(ell >= 1);
    let p = block.len() as u64;
    let i = (ell - 1) / p;
    let q = ell - i * p; // 1..=p
    let t_q = i64::from(block[(q - 1) as usize]);
    let refl = i64::from(alphabet.reflect_digit(t_q as u32));
    let tau_i = i64::from(classical_tm(i));
    let mut v = t_q + tau_i * (refl - t_q);
    if q == p {
        v += i64::from(classical_tm(i + 1)) - tau_i;
    }
    debug_assert!(v >= 0 && v < i64::from(alphabet.n()));
    v as u32
}

/// Materialize a prefix of the generalized Thue-Morse stream by the doubling
/// construction. Kept separate from the closed formula so the two routes can
/// be checked against each other.
pub fn gtm_prefix_doubling(seed: &Word, len: usize) -> Result<Vec<u32>> {
    if seed.digits().last().copied() == Some(0) {
        return Err(Error::InvalidSeed);
    }
    let alphabet = seed.alphabet();
    let mut w = seed.digits().to_vec();
    while w.len() < len {
        let mut half = reflect_digits(&w, alphabet);
        let last = half.last_mut().expect("nonempty");
        debug_assert!(*last + 1 < alphabet.n());
        *last += 1;
        w.extend(half);
    }
    w.truncate(len);
    Ok(w)
}

/// Outcome of a depth-bounded lexicographic comparison of streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexCmp {
    Less,
    /// No disagreement within the compared depth. Never silently treated as
    /// equality: stream equality is only semi-decidable.
    EqualToDepth,
    Greater,
}

enum Repr {
    Periodic { preperiod: Vec<u32>, period: Vec<u32> },
    Gtm { block: Vec<u32> },
    Generated { f: Box<dyn Fn(u64) -> u32 + Send + Sync>, memo: Mutex<Vec<u32>> },
}

/// A lazily evaluated infinite digit sequence. Cheap to clone; reads from
/// multiple threads are safe.
#[derive(Clone)]
pub struct DigitStream {
    alphabet: Alphabet,
    offset: u64,
    repr: Arc<Repr>,
}

impl DigitStream {
    /// Purely periodic stream `(period)^inf`.
    pub fn periodic(period: &Word) -> DigitStream {
        DigitStream {
            alphabet: period.alphabet(),
            offset: 0,
            repr: Arc::new(Repr::Periodic {
                preperiod: Vec::new(),
                period: period.digits().to_vec(),
            }),
        }
    }

    /// Eventually periodic stream `preperiod (period)^inf`.
    pub fn eventually_periodic(alphabet: Alphabet, preperiod: Vec<u32>, period: &Word) -> Result<DigitStream> {
        for &d in preperiod.iter() {
            alphabet.check_digit(i64::from(d))?;
        }
        if period.alphabet() != alphabet {
            return Err(Error::AlphabetMismatch(period.alphabet().n(), alphabet.n()));
        }
        Ok(DigitStream {
            alphabet,
            offset: 0,
            repr: Arc::new(Repr::Periodic {
                preperiod,
                period: period.digits().to_vec(),
            }),
        })
    }

    /// Generalized Thue-Morse stream generated by `seed = t_1 ... t_p^+`.
    pub fn gtm(seed: &Word) -> Result<DigitStream> {
        let block = seed_to_block(seed)?;
        Ok(DigitStream {
            alphabet: seed.alphabet(),
            offset: 0,
            repr: Arc::new(Repr::Gtm { block }),
        })
    }

    /// Stream backed by a deterministic digit producer; digits are memoized.
    pub fn generated<F>(alphabet: Alphabet, f: F) -> DigitStream
    where
        F: Fn(u64) -> u32 + Send + Sync + 'static,
    {
        DigitStream {
            alphabet,
            offset: 0,
            repr: Arc::new(Repr::Generated {
                f: Box::new(f),
                memo: Mutex::new(Vec::new()),
            }),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// The `i`-th digit, 0-based.
    pub fn digit(&self, i: u64) -> u32 {
        let idx = self.offset + i;
        match &*self.repr {
            Repr::Periodic { preperiod, period } => {
                let pre = preperiod.len() as u64;
                if idx < pre {
                    preperiod[idx as usize]
                } else {
                    period[((idx - pre) % period.len() as u64) as usize]
                }
            }
            Repr::Gtm { block } => gtm_digit_of_block(block, self.alphabet, idx + 1),
            Repr::Generated { f, memo } => {
                let mut memo = memo.lock().expect("memo poisoned");
                while (memo.len() as u64) <= idx {
                    let d = f(memo.len() as u64);
                    debug_assert!(d < self.alphabet.n());
                    memo.push(d);
                }
                memo[idx as usize]
            }
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<u32> {
        (0..len as u64).map(|i| self.digit(i)).collect()
    }

    /// Left shift by `k` positions.
    pub fn shift(&self, k: u64) -> DigitStream {
        DigitStream {
            alphabet: self.alphabet,
            offset: self.offset + k,
            repr: Arc::clone(&self.repr),
        }
    }

    /// Digit-wise reflection of the whole stream.
    pub fn reflect(&self) -> DigitStream {
        let inner = self.clone();
        let n = self.alphabet;
        DigitStream::generated(n, move |i| n.reflect_digit(inner.digit(i)))
    }

    /// For eventually periodic streams, the `(preperiod, period)` pair with
    /// the current shift folded in.
    pub fn periodic_form(&self) -> Option<(Vec<u32>, Vec<u32>)> {
        match &*self.repr {
            Repr::Periodic { preperiod, period } => {
                let pre = preperiod.len() as u64;
                if self.offset <= pre {
                    Some((preperiod[self.offset as usize..].to_vec(), period.clone()))
                } else {
                    let k = ((self.offset - pre) % period.len() as u64) as usize;
                    let mut rotated = period[k..].to_vec();
                    rotated.extend_from_slice(&period[..k]);
                    Some((Vec::new(), rotated))
                }
            }
            _ => None,
        }
    }

    pub fn is_eventually_periodic(&self) -> bool {
        matches!(&*self.repr, Repr::Periodic { .. })
    }
}

impl fmt::Debug for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DigitStream(N={}, prefix=", self.alphabet.n())?;
        for d in self.prefix(16) {
            write!(f, "{d},")?;
        }
        write!(f, "...)")
    }
}

/// Depth-bounded lexicographic comparison of two streams.
pub fn lex_cmp(a: &DigitStream, b: &DigitStream, depth: usize) -> LexCmp {
    for i in 0..depth as u64 {
        match a.digit(i).cmp(&b.digit(i)) {
            Ordering::Less => return LexCmp::Less,
            Ordering::Greater => return LexCmp::Greater,
            Ordering::Equal => {}
        }
    }
    LexCmp::EqualToDepth
}

/// Exact comparison of two eventually periodic streams. Decides equality by
/// comparing over `max(preperiods) + lcm(periods) + max(periods)` digits.
pub fn exact_cmp_periodic(a: &DigitStream, b: &DigitStream) -> Result<Ordering> {
    let (pre_a, per_a) = a.periodic_form().ok_or(Error::NotEventuallyPeriodic)?;
    let (pre_b, per_b) = b.periodic_form().ok_or(Error::NotEventuallyPeriodic)?;
    let pre = pre_a.len().max(pre_b.len());
    let l = lcm(per_a.len(), per_b.len());
    let depth = pre + l + per_a.len().max(per_b.len());
    for i in 0..depth as u64 {
        match a.digit(i).cmp(&b.digit(i)) {
            Ordering::Equal => {}
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// The Komornik-Loreti digit stream `(lambda_i(N))`, computed from the
/// classical Thue-Morse sequence:
/// `lambda_i = k - 1 + tau_i` for `N = 2k`, and
/// `lambda_i = k + tau_i - tau_{i-1}` for `N = 2k + 1`.
pub fn komornik_loreti_stream(alphabet: Alphabet) -> DigitStream {
    let n = alphabet.n();
    DigitStream::generated(alphabet, move |idx| {
        let i = idx + 1; // 1-based
        let k = i64::from(n / 2);
        let v = if n % 2 == 0 {
            k - 1 + i64::from(classical_tm(i))
        } else {
            k + i64::from(classical_tm(i)) - i64::from(classical_tm(i - 1))
        };
        debug_assert!(v >= 0 && v < i64::from(n));
        v as u32
    })
}
