use hurwitz::counting::{
    brute_force_approx, brute_force_approx_chunked, cd_quantities, g_rho, g_rho_exhaustive,
    qpq_ratio, sandwich_series, x_rho, CDParams, Method,
};
use hurwitz::engine::hurwitz_expand;
use hurwitz::real::rat;
use hurwitz::sample::Sampler;
use hurwitz::{ExactReal, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

fn sqrt2_params(delta: Rational) -> CDParams {
    let s = ExactReal::sqrt(2).unwrap();
    let c = s.sub(&ExactReal::from(1)).unwrap();
    CDParams::new(s, ExactReal::from(1), c, ExactReal::from(1), delta, rat(1, 10)).unwrap()
}

/// `Q(p, q) = q (q x - p)` on the half-plane `q > kappa`.
fn linear_params(x: &ExactReal, delta: Rational) -> CDParams {
    CDParams::new(
        x.clone(),
        ExactReal::from(-1),
        ExactReal::from(1),
        ExactReal::from(0),
        delta,
        rat(1, 2),
    )
    .unwrap()
}

/// `b = 1, d = 2, c = sqrt 3`, so `a = (1 + sqrt 3)/2`.
fn mixed_params(delta: Rational) -> CDParams {
    let c = ExactReal::sqrt(3).unwrap();
    let a = ExactReal::surd(1, 1, 2, 3).unwrap();
    CDParams::new(a, ExactReal::from(1), c, ExactReal::from(2), delta, rat(1, 3)).unwrap()
}

fn pairs(g: &hurwitz::counting::GCount) -> Vec<(BigInt, BigInt)> {
    g.witnesses.iter().map(|w| (w.p.clone(), w.q.clone())).collect()
}

#[test]
fn g_rho_window_search_matches_box_search() {
    let cases = [
        (sqrt2_params(rat(3, 10)), 120),
        (sqrt2_params(rat(1, 20)), 120),
        (linear_params(&ExactReal::surd(-5, 1, 1, 26).unwrap(), rat(3, 10)), 150),
        (mixed_params(rat(3, 10)), 100),
    ];
    let mut nonempty = 0;
    for (params, rho) in &cases {
        let rho = BigInt::from(*rho);
        let fast = g_rho(params, &rho).unwrap();
        let slow = g_rho_exhaustive(params, &rho).unwrap();
        assert_eq!(pairs(&fast), pairs(&slow));
        nonempty += usize::from(fast.count > 0);
    }
    assert_eq!(nonempty, 3);
}

#[test]
fn g_rho_pinned_regression() {
    let g = g_rho(&sqrt2_params(rat(3, 10)), &BigInt::from(100)).unwrap();
    let slow = g_rho_exhaustive(&sqrt2_params(rat(3, 10)), &BigInt::from(100)).unwrap();
    assert_eq!(g.count, slow.count);
    assert_eq!(g.count, 1);
    let far = g_rho(&sqrt2_params(rat(3, 10)), &BigInt::from(10_000)).unwrap();
    assert_eq!(pairs(&far), vec![(BigInt::from(1), BigInt::from(-1))]);
    let mixed = g_rho(&mixed_params(rat(3, 10)), &BigInt::from(10_000)).unwrap();
    let want: Vec<(BigInt, BigInt)> = [(2911, -2131), (780, -571), (209, -153), (56, -41), (15, -11), (4, -3)]
        .into_iter()
        .map(|(p, q)| (BigInt::from(p), BigInt::from(q)))
        .collect();
    let mut got = pairs(&mixed);
    got.sort_by(|a, b| b.cmp(a));
    assert_eq!(got, want);
}

#[test]
fn g_rho_counts_the_same_pairs_as_x_rho_for_a_linear_form() {
    let xs = [
        ExactReal::surd(-1, 1, 1, 2).unwrap(),
        ExactReal::surd(-1, 1, 2, 5).unwrap(),
        ExactReal::surd(3, -1, 2, 7).unwrap(),
    ];
    for x in &xs {
        assert!(x.compare_rational(&rat(0, 1)).unwrap().is_gt());
        assert!(x.compare_rational(&rat(1, 1)).unwrap().is_lt());
        for delta in [rat(1, 4), rat(3, 10)] {
            let params = linear_params(x, delta.clone());
            for rho in [100u64, 1000, 10_000] {
                let rho = BigInt::from(rho);
                let g = g_rho(&params, &rho).unwrap();
                let xr = x_rho(x, &delta, &rho, Method::Convergent).unwrap();
                let from_x: Vec<_> = xr.records.iter().map(|r| (r.p.clone(), r.q.clone())).collect();
                assert_eq!(pairs(&g), from_x, "x = {x}, delta = {delta}, rho = {rho}");
            }
        }
    }
}

#[test]
fn ratio_identity_holds_on_witnesses() {
    let params = mixed_params(rat(1, 4));
    let g = g_rho(&params, &BigInt::from(80)).unwrap();
    for w in &g.witnesses {
        let r = qpq_ratio(&params, &w.p, &w.q).unwrap();
        assert!(r.signum().unwrap().is_gt());
    }
}

#[test]
fn convergent_method_matches_brute_force_on_a_sample() {
    let sample = Sampler::new(17).surds(40);
    for x in &sample {
        for delta in [rat(1, 5), rat(1, 3)] {
            let rho = BigInt::from(3000);
            let a = x_rho(x, &delta, &rho, Method::Convergent).unwrap();
            let b = x_rho(x, &delta, &rho, Method::Oracle).unwrap();
            assert_eq!(a.records.len(), b.records.len(), "{x}");
            for (r, s) in a.records.iter().zip(&b.records) {
                assert_eq!((&r.p, &r.q, &r.quality), (&s.p, &s.q, &s.quality));
            }
            let ln = (3000f64).ln();
            let approx = a.count as f64 / ln;
            let lo = a.value.lo.to_f64().unwrap();
            let hi = a.value.hi.to_f64().unwrap();
            assert!(lo - 1e-9 <= approx && approx <= hi + 1e-9);
        }
    }
}

#[test]
fn convergent_method_rejects_wide_delta() {
    let x = ExactReal::sqrt(3).unwrap();
    assert!(x_rho(&x, &rat(1, 2), &BigInt::from(100), Method::Convergent).is_err());
    assert!(x_rho(&x, &rat(1, 2), &BigInt::from(100), Method::Oracle).is_ok());
}

#[test]
fn sandwiches_hold_for_random_surds() {
    for x in Sampler::new(23).surds(30) {
        for delta in [rat(1, 7), rat(2, 7)] {
            for s in sandwich_series(&x, &delta, 40).unwrap() {
                assert!(s.holds(), "{x} {delta} n = {}", s.n);
            }
        }
    }
}

#[test]
fn cd_quantities_match_a_direct_count() {
    let x = ExactReal::surd(5, 3, 7, 19).unwrap();
    let delta = rat(1, 4);
    let n = 40;
    let cd = cd_quantities(&x, &delta, n).unwrap();
    let terms: Vec<i64> = hurwitz_expand(&x, n + 2)
        .unwrap()
        .terms()
        .iter()
        .map(|t| t.abs().to_i64().unwrap())
        .collect();
    let count = |t: f64| (1..=n).filter(|&j| terms[j + 1] as f64 >= t).count() as i64;
    assert_eq!(cd.e_n, Rational::new(count(5.0).into(), (n as i64).into()));
    assert_eq!(cd.f_n, Rational::new(count(2.5).into(), (n as i64).into()));
    let mean = terms[1..=n].iter().map(|&a| (a as f64).ln()).sum::<f64>() / n as f64;
    assert!(cd.alpha.lo.to_f64().unwrap() <= mean + 1e-12);
    assert!(cd.alpha.hi.to_f64().unwrap() >= mean - 1e-12);
    assert!(cd_quantities(&x, &rat(1, 3), n).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chunking_does_not_change_the_records(seed in any::<u64>(), chunk in 1u64..300, num in 1i64..9) {
        let x = Sampler::new(seed).surd();
        let delta = rat(num, 10);
        let whole = brute_force_approx(&x, &delta, 700).unwrap();
        let split = brute_force_approx_chunked(&x, &delta, 700, chunk).unwrap();
        prop_assert_eq!(whole, split);
    }
}
