use diagram_growth::asymptotics::{
    self, convergence_report, hayman_log_bn, lambert_w, log_bn_estimate, CobEgf, RootOptions,
};
use diagram_growth::bigmath::{ln_exact, ExactInt};
use diagram_growth::enumerate::oracle_bn;
use diagram_growth::families::{bn, egf_for, sequence, sequence_via};
use diagram_growth::guards::Guards;
use diagram_growth::qalgebra::q_binomial;
use diagram_growth::{DiagramFamily, Provenance};
use num_bigint::{BigInt, Sign};
use proptest::prelude::*;

fn any_family() -> impl Strategy<Value = DiagramFamily> {
    let all = DiagramFamily::catalogue(&[1, 2, 3, 4], &[3, 5]);
    (0..all.len()).prop_map(move |i| all[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ln_exact_is_deterministic(digits in proptest::collection::vec(any::<u32>(), 1..200)) {
        let x = BigInt::from_slice(Sign::Plus, &digits);
        prop_assume!(x > ExactInt::from(0));
        let (a, b) = (ln_exact(&x), ln_exact(&x.clone()));
        prop_assert_eq!(a.to_bits(), b.to_bits());
        let bits = x.bits() as f64;
        prop_assert!(a <= bits * std::f64::consts::LN_2 + 1e-9);
        prop_assert!(a >= (bits - 1.0) * std::f64::consts::LN_2 - 1e-9);
    }

    #[test]
    fn lambert_residual(e in -6.0f64..6.0) {
        let x = 10f64.powf(e);
        let w = lambert_w(x).unwrap();
        prop_assert!((w * w.exp() - x).abs() <= 1e-12 * x.max(1.0));
    }

    #[test]
    fn egf_path_matches_closed_form(f in any_family(), n in 0usize..30) {
        if egf_for(f, 0).is_some() {
            let e = sequence_via(f, n, Provenance::Egf).unwrap().values;
            prop_assert_eq!(e, sequence(f, n).unwrap().values);
        }
    }

    #[test]
    fn oracle_matches_formula(f in any_family(), n in 0usize..5) {
        let n = if matches!(f, DiagramFamily::GlFq { q: 5 }) { n.min(3) } else { n };
        prop_assert_eq!(oracle_bn(f, n).unwrap(), bn(f, n).unwrap());
    }

    #[test]
    fn q_binomial_symmetric(a in 0usize..14, b in 0i64..14) {
        prop_assert_eq!(q_binomial(a, b), q_binomial(a, a as i64 - b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn hayman_agrees_with_closed_cob(k in 1u32..=4, n in 1000usize..20000) {
        let closed = log_bn_estimate(DiagramFamily::Cob { k }, n).unwrap().log;
        let hay = hayman_log_bn(&CobEgf { k: k as f64 }, n).unwrap();
        prop_assert!((closed - hay).abs() / hay.abs() <= 0.05);
    }
}

/// Over the sampled grid (within exact guards), `|ratio - 1|` must shrink
/// at every step for each family with a full-`b_n` approximant.
#[test]
fn full_bn_ratio_monotone_toward_one() {
    let grid = [100usize, 300, 1000, 3000, 10000];
    let mut families = vec![
        DiagramFamily::Brauer,
        DiagramFamily::OrientedUpDown,
        DiagramFamily::Partition,
    ];
    families.extend((1..=4).map(|k| DiagramFamily::Cob { k }));
    let mut failures = Vec::new();
    for f in families {
        let rep = convergence_report(f, &grid, &Guards::default(), RootOptions::default());
        let errs: Vec<(usize, f64)> = rep.ok_rows().map(|r| (r.n, (r.ratio - 1.0).abs())).collect();
        println!("{f}: {errs:?}");
        if !errs.windows(2).all(|w| w[1].1 < w[0].1) {
            failures.push(f.to_string());
        }
    }
    assert!(failures.is_empty(), "non-monotone ratio for {failures:?}");
}

#[test]
fn glfq_ratio_at_float_precision() {
    // The approximant is exact up to the tail of the constant, so beyond
    // n = 40 the ratio sits at double-precision noise.
    let rep = convergence_report(DiagramFamily::GlFq { q: 3 }, &[40, 100, 400], &Guards::default(), RootOptions::default());
    for row in rep.ok_rows() {
        assert!((row.ratio - 1.0).abs() < 1e-9, "{row:?}");
    }
}

#[test]
fn leading_z_is_coarser_than_full() {
    let n = 2000;
    let exact = ln_exact(&bn(DiagramFamily::Cob { k: 2 }, n).unwrap());
    let full = asymptotics::cob_log_estimate(n, 2, asymptotics::ZCorrection::Full).unwrap();
    let lead = asymptotics::cob_log_estimate(n, 2, asymptotics::ZCorrection::Leading).unwrap();
    assert!((full - exact).abs() < (lead - exact).abs());
}
