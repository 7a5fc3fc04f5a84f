//! End-to-end acceptance checks, one per shipped guarantee. Each test
//! prints a single PASS line (visible with `--nocapture`); a failure
//! panics with the offending case.

use std::time::Instant;

use budim::admissible::{
    beta_l_root, critical_bases, enumerate_admissible, interval_endpoints, interval_relation,
    IntervalRelation,
};
use budim::dimension::{dim_unique_set, sample_curve, Regime};
use budim::entropy::{
    build_sft, entropy, entropy_closed_p1, entropy_closed_p2, growth_ratio_estimate,
    spectral_radius, word_count,
};
use budim::expansions::{quasi_greedy_of_one, Base, TiePolicy};
use budim::words::{gtm_prefix_doubling, komornik_loreti_stream, Alphabet, DigitStream, Word};

fn alphabet(n: u32) -> Alphabet {
    Alphabet::new(n).unwrap()
}

fn word(n: u32, digits: &[u32]) -> Word {
    Word::new(alphabet(n), digits.to_vec()).unwrap()
}

#[test]
fn criterion_1_entropy_closed_form_p1() {
    let t0 = Instant::now();
    let base = Base::new(alphabet(10), 9.0).unwrap();
    let s = dim_unique_set(&base, 1, 1e-12).unwrap();
    let expected = 8f64.ln() / 9f64.ln();
    assert!(
        (s.dim().unwrap() - expected).abs() < 1e-10,
        "dim at beta=9: {:?}",
        s
    );

    for n in 3..=30u32 {
        let a = alphabet(n);
        for b in enumerate_admissible(a, 1).unwrap() {
            let t1 = b.digits()[0];
            let closed = entropy_closed_p1(t1, a).unwrap();
            let spectral = entropy(&b, 1e-11).unwrap();
            assert!(
                (spectral.h - closed).abs() < 1e-10,
                "N={n} t1={t1}: {} vs {}",
                spectral.h,
                closed
            );
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 1.0, "took {dt:?}");
    println!("criterion 1 (length-1 closed-form entropy): PASS ({dt:.2?})");
}

#[test]
fn criterion_2_entropy_closed_form_p2() {
    let t0 = Instant::now();
    let mut checked = 0usize;
    for n in 2..=30u32 {
        let a = alphabet(n);
        for b in enumerate_admissible(a, 2).unwrap() {
            if b.len() != 2 {
                continue;
            }
            let (t1, t2) = (b.digits()[0], b.digits()[1]);
            let closed = entropy_closed_p2(t1, t2, a).unwrap();
            let spectral = entropy(&b, 1e-11).unwrap();
            assert!(
                (spectral.h - closed).abs() < 1e-10,
                "N={n} block={b}: {} vs {}",
                spectral.h,
                closed
            );
            checked += 1;
        }
    }
    assert!(checked > 100);
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 10.0, "took {dt:?}");
    println!("criterion 2 (length-2 closed-form entropy, {checked} blocks): PASS ({dt:.2?})");
}

#[test]
fn criterion_3_zero_entropy_at_critical_blocks() {
    let t0 = Instant::now();
    // N = 2k -> k(k-1); N = 2k+1 -> k
    for (n, digits) in [
        (2u32, vec![1u32, 0]),
        (3, vec![1]),
        (4, vec![2, 1]),
        (10, vec![5, 4]),
        (20, vec![10, 9]),
    ] {
        let b = word(n, &digits);
        let e = entropy(&b, 1e-11).unwrap();
        assert!(e.certified_zero, "N={n}: {e:?}");
        assert_eq!(e.h, 0.0, "N={n}");
    }
    let (_, bc) = critical_bases(alphabet(10), 1e-12).unwrap();
    assert!((bc.value - 5.976).abs() < 1e-3, "beta_c(10) = {}", bc.value);
    println!(
        "criterion 3 (zero entropy at critical blocks, beta_c(10) = {:.6}): PASS ({:.2?})",
        bc.value,
        t0.elapsed()
    );
}

#[test]
fn criterion_4_word_counts_track_spectral_radius() {
    let t0 = Instant::now();
    let mut checked = 0usize;
    for n in 2..=6u32 {
        for b in enumerate_admissible(alphabet(n), 4).unwrap() {
            let g = build_sft(&b).unwrap();
            let rho = spectral_radius(&g, 1e-11).unwrap();
            let est = growth_ratio_estimate(&b, 40).unwrap();
            assert!(
                (est - rho.mid()).abs() < 1e-3,
                "N={n} block={b}: ratio {est} vs rho {}",
                rho.mid()
            );
            checked += 1;
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 60.0, "took {dt:?}");
    println!("criterion 4 (growth ratio vs spectral radius, {checked} blocks): PASS ({dt:.2?})");
}

#[test]
fn criterion_5_intervals_disjoint_or_shared_right_endpoint() {
    let t0 = Instant::now();
    let mut pairs = 0usize;
    for n in 2..=5u32 {
        let blocks = enumerate_admissible(alphabet(n), 4).unwrap();
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                let rel = interval_relation(&blocks[i], &blocks[j], 1e-12)
                    .unwrap_or_else(|e| panic!("N={n} {} vs {}: {e}", blocks[i], blocks[j]));
                assert!(
                    matches!(
                        rel,
                        IntervalRelation::Disjoint | IntervalRelation::SameRightEndpoint
                    ),
                    "N={n} {} vs {}: {rel:?}",
                    blocks[i],
                    blocks[j]
                );
                pairs += 1;
            }
        }
    }
    println!(
        "criterion 5 (pairwise interval law, {pairs} pairs, zero undecided): PASS ({:.2?})",
        t0.elapsed()
    );
}

#[test]
fn criterion_6_expansions_at_certified_endpoints() {
    let t0 = Instant::now();
    let mut checked = 0usize;
    for n in 2..=6u32 {
        let a = alphabet(n);
        for b in enumerate_admissible(a, 3).unwrap() {
            let p = b.len();
            let coarse = interval_endpoints(&b, 1e-12).unwrap();
            // 64 correct digits need the endpoint far beyond f64: a root
            // error delta perturbs step i by ~beta^i delta, while genuine
            // digit gaps at step i can be as small as ~beta^-i. Pin the
            // root to beta^-160 and place the snap guard at ~beta^-72,
            // above the accumulated error and below every genuine gap.
            let beta_ref = coarse.beta_u.value;
            let tol = beta_ref.powi(-160).max(1e-300);
            let guard = (72.0 * beta_ref.log2()).ceil() as usize;

            // right endpoint: quasi-greedy expansion of 1 is the
            // Thue-Morse stream of the block
            let seed = b.plus_one().unwrap();
            let theta = DigitStream::gtm(&seed).unwrap();
            let beta_u = budim::expansions::base_from_quasi_greedy(&theta, tol).unwrap();
            let base = Base::from_real(a, beta_u.precise.clone())
                .unwrap()
                .with_guard_bits(guard)
                .with_tie_policy(TiePolicy::Snap);
            let alpha = quasi_greedy_of_one(&base, 64).unwrap();
            assert_eq!(
                alpha.digits(),
                &theta.prefix(64)[..],
                "N={n} block={b}: right endpoint"
            );

            // left endpoint: quasi-greedy expansion of 1 is (t)^infty
            let beta_l = beta_l_root(&b, tol).unwrap();
            let base = Base::from_real(a, beta_l.precise.clone())
                .unwrap()
                .with_guard_bits(guard)
                .with_tie_policy(TiePolicy::Snap);
            let alpha = quasi_greedy_of_one(&base, 64).unwrap();
            let periodic = DigitStream::periodic(&b);
            assert_eq!(
                alpha.digits(),
                &periodic.prefix(64)[..],
                "N={n} block={b}: left endpoint (p={p})"
            );
            checked += 1;
        }
    }
    println!(
        "criterion 6 (64-digit expansions at both certified endpoints, {checked} blocks): PASS ({:.2?})",
        t0.elapsed()
    );
}

#[test]
fn criterion_7_thue_morse_consistency() {
    let t0 = Instant::now();
    // closed formula == doubling construction out to 2^10 * p digits
    for n in 2..=6u32 {
        for b in enumerate_admissible(alphabet(n), 4).unwrap() {
            let seed = b.plus_one().unwrap();
            let len = (1usize << 10) * b.len();
            let doubled = gtm_prefix_doubling(&seed, len).unwrap();
            let stream = DigitStream::gtm(&seed).unwrap();
            assert_eq!(stream.prefix(len), doubled, "N={n} block={b}");
        }
    }
    // the Komornik-Loreti digits are the Thue-Morse stream of ceil(N/2)
    for n in 2..=30u32 {
        let a = alphabet(n);
        let kl = komornik_loreti_stream(a);
        let seed = Word::new(a, vec![n.div_ceil(2)]).unwrap();
        let gtm = DigitStream::gtm(&seed).unwrap();
        assert_eq!(kl.prefix(1 << 10), gtm.prefix(1 << 10), "N={n}");
    }
    // prefix dominance: every tail window of length <= 6 stays within
    // [reflect(prefix), prefix]
    for n in 2..=4u32 {
        for b in enumerate_admissible(alphabet(n), 3).unwrap() {
            let seed = b.plus_one().unwrap();
            let theta = DigitStream::gtm(&seed).unwrap();
            let digits = theta.prefix(256 + 6);
            let a = alphabet(n);
            for len in 1..=6usize {
                let prefix = &digits[..len];
                let refl: Vec<u32> = prefix.iter().map(|&d| a.reflect_digit(d)).collect();
                for i in 1..=256usize {
                    let w = &digits[i..i + len];
                    assert!(w <= prefix, "N={n} block={b} i={i} len={len}");
                    assert!(w >= &refl[..], "N={n} block={b} i={i} len={len}");
                }
            }
        }
    }
    println!(
        "criterion 7 (Thue-Morse closed form, doubling, Komornik-Loreti): PASS ({:.2?})",
        t0.elapsed()
    );
}

#[test]
fn criterion_8_dimension_curves() {
    let t0 = Instant::now();

    // N = 10 over (1, 110): trivial, staircase, then supercritical
    let curve = sample_curve(alphabet(10), 1.001, 110.0, 2000, 6, 1e-12).unwrap();
    let (_, bc) = critical_bases(alphabet(10), 1e-12).unwrap();
    let mut groups: std::collections::HashMap<Vec<u32>, Vec<(f64, f64)>> =
        std::collections::HashMap::new();
    for s in &curve.samples {
        if s.beta <= bc.value {
            assert_eq!(s.regime.label(), "trivial_zero", "{s:?}");
        }
        if s.beta >= 10.0 {
            assert_eq!(s.regime.label(), "supercritical", "{s:?}");
            let expected = 10f64.ln() / s.beta.ln();
            assert!((s.dim().unwrap() - expected).abs() < 1e-12);
        }
        if let Regime::AdmissibleInterval(b) = &s.regime {
            groups
                .entry(b.digits().to_vec())
                .or_default()
                .push((s.beta, s.dim().unwrap()));
        }
    }
    // within each located interval dim * log beta is one constant
    for (block, pts) in &groups {
        let h0 = pts[0].1 * pts[0].0.ln();
        for &(beta, dim) in pts {
            assert!(
                (dim * beta.ln() - h0).abs() < 1e-9,
                "block {block:?}: h drifts at beta={beta}"
            );
        }
    }
    assert!(!groups.is_empty());

    // N = 20 with only 1- and 2-level intervals still resolves most bases
    let (_, bc20) = critical_bases(alphabet(20), 1e-12).unwrap();
    let curve20 = sample_curve(alphabet(20), bc20.value + 1e-6, 20.0, 2000, 2, 1e-12).unwrap();
    assert!(
        curve20.unresolved_fraction <= 0.40,
        "coverage {:.1}%",
        100.0 * (1.0 - curve20.unresolved_fraction)
    );

    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 300.0, "took {dt:?}");
    println!(
        "criterion 8 (dimension curves; N=20 coverage {:.1}%): PASS ({dt:.2?})",
        100.0 * (1.0 - curve20.unresolved_fraction)
    );
}

#[test]
fn criterion_9_entropy_invariant_under_doubling() {
    let t0 = Instant::now();
    let mut checked = 0usize;
    for n in 2..=5u32 {
        let a = alphabet(n);
        for b in enumerate_admissible(a, 3).unwrap() {
            let plus = b.plus_one().unwrap();
            let mut doubled = plus.digits().to_vec();
            doubled.extend(plus.digits().iter().map(|&d| a.reflect_digit(d)));
            let db = Word::new(a, doubled).unwrap();
            let e1 = entropy(&b, 1e-11).unwrap();
            let e2 = entropy(&db, 1e-11).unwrap();
            assert!(
                (e1.h - e2.h).abs() < 1e-9,
                "N={n} {b} vs {db}: {} vs {}",
                e1.h,
                e2.h
            );
            // doubling preserves the word-count scale as well
            assert_eq!(
                word_count(&b, 0).unwrap(),
                word_count(&db, 0).unwrap()
            );
            checked += 1;
        }
    }
    println!(
        "criterion 9 (entropy invariant under block doubling, {checked} blocks): PASS ({:.2?})",
        t0.elapsed()
    );
}
