//! Randomized invariants across the word, expansion, admissibility and
//! entropy layers.

use proptest::prelude::*;

use budim::admissible::{
    enumerate_admissible, interval_endpoints, is_admissible_block, DEFAULT_TOL,
};
use budim::entropy::{entropy, word_count};
use budim::expansions::{
    base_from_quasi_greedy, project, quasi_greedy_of_one, quasi_greedy_of_x, Base, TiePolicy,
};
use budim::words::{classical_tm, lex_cmp, Alphabet, DigitStream, LexCmp, Word};

fn arb_alphabet() -> impl Strategy<Value = Alphabet> {
    (2u32..=6).prop_map(|n| Alphabet::new(n).unwrap())
}

fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
    arb_alphabet().prop_flat_map(move |a| {
        proptest::collection::vec(0..a.n(), 1..=max_len)
            .prop_map(move |digits| Word::new(a, digits).unwrap())
    })
}

/// Admissible blocks drawn uniformly from the enumeration.
fn arb_admissible(n_max: u32, p_max: usize) -> impl Strategy<Value = Word> {
    (2u32..=n_max, proptest::num::usize::ANY).prop_map(move |(n, pick)| {
        let blocks = enumerate_admissible(Alphabet::new(n).unwrap(), p_max).unwrap();
        blocks[pick % blocks.len()].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflection_is_an_order_reversing_involution(a in arb_word(8), b in arb_word(8)) {
        prop_assert_eq!(a.reflect().reflect(), a.clone());
        if a.alphabet().n() == b.alphabet().n() && a.len() == b.len() {
            prop_assert_eq!(a.cmp_block(&b), b.reflect().cmp_block(&a.reflect()));
        }
    }

    #[test]
    fn thue_morse_recurrence(i in 0u64..1_000_000) {
        prop_assert_eq!(classical_tm(2 * i), classical_tm(i));
        prop_assert_eq!(classical_tm(2 * i + 1), 1 - classical_tm(i));
    }

    #[test]
    fn gtm_closed_formula_matches_doubling(block in arb_admissible(6, 4)) {
        let seed = block.plus_one().unwrap();
        let len = 16 * block.len();
        let doubled = budim::words::gtm_prefix_doubling(&seed, len).unwrap();
        let stream = DigitStream::gtm(&seed).unwrap();
        prop_assert_eq!(stream.prefix(len), doubled);
    }

    #[test]
    fn gtm_tails_stay_between_reflected_and_plain_prefix(block in arb_admissible(5, 3)) {
        // two-sided bound driving everything downstream: every tail of the
        // Thue-Morse stream sits in [reflect(theta), theta]
        let seed = block.plus_one().unwrap();
        let theta = DigitStream::gtm(&seed).unwrap();
        let refl = theta.reflect();
        for k in 1..64u64 {
            let tail = theta.shift(k);
            prop_assert!(!matches!(lex_cmp(&tail, &theta, 64), LexCmp::Greater), "k={k}");
            prop_assert!(!matches!(lex_cmp(&refl, &tail, 64), LexCmp::Greater), "k={k}");
        }
    }

    #[test]
    fn quasi_greedy_projects_back(n in 2u32..=6, beta_frac in 0.05f64..0.95, x_frac in 0.01f64..0.99) {
        let a = Alphabet::new(n).unwrap();
        let beta = 1.05 + beta_frac * (f64::from(n) - 1.1);
        let base = Base::new(a, beta).unwrap().with_tie_policy(TiePolicy::Snap);
        let x = x_frac * (f64::from(n) - 1.0) / (beta - 1.0);
        let depth = 96;
        let w = quasi_greedy_of_x(x, &base, depth).unwrap();
        let stream = DigitStream::eventually_periodic(
            a, w.digits().to_vec(), &Word::new(a, vec![0]).unwrap()).unwrap();
        let y = project(&stream, &base, depth);
        // the projection encloses the series by midpoint + tail/2, and
        // the expansion itself only pins x up to a depth-digit tail
        let tail = f64::from(n) * beta.powi(-(depth as i32)) / (beta - 1.0);
        prop_assert!((y - x).abs() <= tail + 1e-9, "projection off: {y} vs {x}");
    }

    #[test]
    fn greedy_dominates_quasi_greedy(n in 2u32..=6, beta_frac in 0.05f64..0.95, x_frac in 0.01f64..0.99) {
        let a = Alphabet::new(n).unwrap();
        let beta = 1.05 + beta_frac * (f64::from(n) - 1.1);
        let base = Base::new(a, beta).unwrap().with_tie_policy(TiePolicy::Snap);
        let x = x_frac * (f64::from(n) - 1.0) / (beta - 1.0);
        let g = budim::expansions::greedy_of_x(x, &base, 48).unwrap();
        let q = quasi_greedy_of_x(x, &base, 48).unwrap();
        prop_assert!(g.cmp_block(&q) != std::cmp::Ordering::Less, "{g} < {q}");
    }

    #[test]
    fn interval_endpoints_are_ordered_and_in_range(block in arb_admissible(5, 3)) {
        let n = f64::from(block.alphabet().n());
        let iv = interval_endpoints(&block, DEFAULT_TOL).unwrap();
        prop_assert!(iv.beta_l.value + iv.beta_l.radius < iv.beta_u.value - iv.beta_u.radius);
        prop_assert!(iv.beta_l.value > 1.0);
        prop_assert!(iv.beta_u.value < n);
    }

    #[test]
    fn base_round_trips_through_quasi_greedy_expansion(block in arb_admissible(5, 2)) {
        // at the right endpoint, the quasi-greedy expansion of 1 is the
        // Thue-Morse stream of the block
        let seed = block.plus_one().unwrap();
        let theta = DigitStream::gtm(&seed).unwrap();
        let beta_u = base_from_quasi_greedy(&theta, 1e-14).unwrap();
        let base = Base::new(block.alphabet(), beta_u.value)
            .unwrap()
            .with_tie_policy(TiePolicy::Snap);
        let alpha = quasi_greedy_of_one(&base, 40).unwrap();
        // f64 rounding of beta_u can flip digits near the end of the
        // prefix; the leading digits must agree
        prop_assert_eq!(&alpha.digits()[..16], &theta.prefix(16)[..]);
    }

    #[test]
    fn quasi_greedy_expansion_of_one_is_monotone_in_beta(
        n in 2u32..=6, lo_frac in 0.05f64..0.9, gap in 0.01f64..0.5) {
        let a = Alphabet::new(n).unwrap();
        let lo = 1.05 + lo_frac * (f64::from(n) - 1.1);
        let hi = (lo + gap).min(f64::from(n) - 1e-6);
        prop_assume!(hi > lo);
        let b_lo = Base::new(a, lo).unwrap().with_tie_policy(TiePolicy::Snap);
        let b_hi = Base::new(a, hi).unwrap().with_tie_policy(TiePolicy::Snap);
        let alpha_lo = quasi_greedy_of_one(&b_lo, 48).unwrap();
        let alpha_hi = quasi_greedy_of_one(&b_hi, 48).unwrap();
        prop_assert!(alpha_lo.cmp_block(&alpha_hi) != std::cmp::Ordering::Greater,
            "alpha({lo}) > alpha({hi})");
    }

    #[test]
    fn word_counts_are_submultiplicative(block in arb_admissible(5, 3),
                                         m in 1usize..12, k in 1usize..12) {
        // every valid (m+k)-word splits into valid halves; only the
        // window-based count (lengths >= p) splits this way
        let p = block.len();
        prop_assume!(m >= p && k >= p);
        let c_m = word_count(&block, m).unwrap();
        let c_k = word_count(&block, k).unwrap();
        let c_mk = word_count(&block, m + k).unwrap();
        prop_assert!(c_mk <= c_m * c_k);
    }

    #[test]
    fn entropy_within_global_bounds(block in arb_admissible(5, 3)) {
        let n = f64::from(block.alphabet().n());
        let e = entropy(&block, 1e-10).unwrap();
        prop_assert!(e.h >= 0.0);
        prop_assert!(e.h <= n.ln() + 1e-9);
        // out-degree bound: at most t_1 - reflect(t_1) + 1 successors
        let t1 = block.digits()[0];
        let out = f64::from(t1 - block.alphabet().reflect_digit(t1) + 1);
        prop_assert!(e.h <= out.ln() + 1e-9, "{} > log {}", e.h, out);
    }

    #[test]
    fn admissibility_is_stable_under_enumeration(n in 2u32..=5) {
        // every enumerated block passes the predicate, and no rejected
        // length-2 word sneaks in
        let a = Alphabet::new(n).unwrap();
        let blocks = enumerate_admissible(a, 2).unwrap();
        for b in &blocks {
            prop_assert!(is_admissible_block(b));
        }
        let mut found = 0usize;
        for d1 in 0..n {
            for d2 in 0..n {
                let w = Word::new(a, vec![d1, d2]).unwrap();
                if is_admissible_block(&w) {
                    found += 1;
                }
            }
        }
        let len2 = blocks.iter().filter(|b| b.len() == 2).count();
        prop_assert_eq!(found, len2);
    }
}
