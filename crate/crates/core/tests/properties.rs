use std::collections::BTreeSet;

use hdepth::*;
use proptest::prelude::*;

fn ev(c: Vec<u32>) -> ExponentVector {
    ExponentVector::new(c).unwrap()
}

fn all_below(g: &[u32]) -> Vec<ExponentVector> {
    Interval::new(ExponentVector::zero(g.len()), ev(g.to_vec()))
        .unwrap()
        .points()
        .collect()
}

fn intervals_below(g: &[u32]) -> Vec<Interval> {
    let pts = all_below(g);
    let mut out = Vec::new();
    for a in &pts {
        for b in &pts {
            if a.is_below(b) {
                out.push(Interval::new(a.clone(), b.clone()).unwrap());
            }
        }
    }
    out
}

#[test]
fn split_tiles_every_interval_below_three() {
    let mut triples = 0;
    for g in all_below(&[3, 3, 3]) {
        for iv in intervals_below(g.coords()) {
            let rho_low = rho(iv.low(), &g).unwrap();
            for b0 in iv.points() {
                let parts = split_interval(&iv, &b0, &g).unwrap();
                assert_eq!(parts[0], Interval::new(iv.low().clone(), b0.clone()).unwrap());
                let total: u64 = parts.iter().map(Interval::size).sum();
                assert_eq!(total, iv.size());
                let mut seen = BTreeSet::new();
                for part in &parts {
                    assert!(iv.contains(part.low()) && iv.contains(part.high()));
                    assert!(b0.is_below(part.high()));
                    assert!(rho(part.high(), &g).unwrap() >= rho(&b0, &g).unwrap());
                    assert!(rho(part.high(), &g).unwrap() >= rho_low);
                    for c in part.points() {
                        assert!(seen.insert(c), "overlap in split of {iv:?} at {b0}");
                    }
                }
                triples += 1;
            }
        }
    }
    assert_eq!(triples, 35 * 35 * 35);
}

#[test]
fn minimal_points_reaching_a_saturation_level_hit_it_exactly() {
    for g in all_below(&[2, 2, 2]) {
        for iv in intervals_below(g.coords()) {
            let lo = rho(iv.low(), &g).unwrap();
            let hi = rho(iv.high(), &g).unwrap();
            for s in lo + 1..=hi {
                let reach: Vec<_> = iv.points().filter(|x| rho(x, &g).unwrap() >= s).collect();
                for x in &reach {
                    let minimal = reach.iter().all(|y| y == x || !y.is_below(x));
                    if minimal {
                        assert_eq!(rho(x, &g).unwrap(), s, "{iv:?} s={s} x={x}");
                    }
                }
            }
        }
    }
}

#[test]
fn pinned_shifts_tile_each_interval() {
    for g in all_below(&[2, 2, 2]) {
        for iv in intervals_below(g.coords()) {
            let z = z_set(iv.high(), &g).unwrap();
            let shifts = g_set(&iv, &g).unwrap();
            let expected: u64 = iv.size() / z.iter().map(|j| u64::from(g.coords()[j] - iv.low().coords()[j] + 1)).product::<u64>();
            assert_eq!(shifts.len() as u64, expected);
            let mut covered = BTreeSet::new();
            for c in &shifts {
                assert!(iv.contains(c));
                for j in z.iter() {
                    assert_eq!(c.coords()[j], iv.low().coords()[j]);
                }
                let mut top = c.coords().to_vec();
                for j in z.iter() {
                    top[j] = g.coords()[j];
                }
                for x in Interval::new(c.clone(), ev(top)).unwrap().points() {
                    assert!(covered.insert(x));
                }
            }
            assert_eq!(covered, iv.points().collect());
        }
    }
}

#[test]
fn order_laws_on_a_small_box() {
    let pts = all_below(&[2, 1, 2]);
    for a in &pts {
        assert!(leq(a, a).unwrap());
        for b in &pts {
            let (j, m) = join_meet(a, b).unwrap();
            assert!(leq(a, &j).unwrap() && leq(b, &j).unwrap());
            assert!(leq(&m, a).unwrap() && leq(&m, b).unwrap());
            if leq(a, b).unwrap() && leq(b, a).unwrap() {
                assert_eq!(a, b);
            }
            for c in &pts {
                if leq(a, b).unwrap() && leq(b, c).unwrap() {
                    assert!(leq(a, c).unwrap());
                }
                if leq(a, c).unwrap() && leq(b, c).unwrap() {
                    assert!(leq(&j, c).unwrap());
                }
                if leq(c, a).unwrap() && leq(c, b).unwrap() {
                    assert!(leq(c, &m).unwrap());
                }
            }
        }
    }
}

fn bound_strategy() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=2, 1..=3)
}

fn point_below(g: Vec<u32>) -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
    let per: Vec<_> = g.iter().map(|&x| 0..=x).collect();
    (Just(g), per)
}

fn series_strategy() -> impl Strategy<Value = TruncatedSeries> {
    bound_strategy().prop_flat_map(|g| {
        let n = all_below(&g).len();
        (Just(g), prop::collection::vec(0u64..=2, n)).prop_map(|(g, coeffs)| {
            let pts = all_below(&g);
            TruncatedSeries::from_terms(ev(g), pts.into_iter().zip(coeffs)).unwrap()
        })
    })
}

fn config_strategy() -> impl Strategy<Value = SearchConfig> {
    (
        prop::sample::select(ElementOrder::NAMES.to_vec()),
        prop::sample::select(CoverOrder::NAMES.to_vec()),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(e, c, memo, counting)| SearchConfig {
            element_order: e.parse().unwrap(),
            cover_order: c.parse().unwrap(),
            memoize_failures: memo,
            counting_bound: counting,
            ..SearchConfig::default()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn saturation_is_monotone((g, a) in bound_strategy().prop_flat_map(point_below), bump in prop::collection::vec(0u32..=2, 3)) {
        let b: Vec<u32> = a.iter().zip(&g).zip(&bump).map(|((&x, &top), &d)| (x + d).min(top)).collect();
        let (g, a, b) = (ev(g), ev(a), ev(b));
        prop_assert!(leq(&a, &b).unwrap());
        prop_assert!(rho(&a, &g).unwrap() <= rho(&b, &g).unwrap());
        prop_assert!(z_set(&a, &g).unwrap().is_subset(z_set(&b, &g).unwrap()));
    }

    #[test]
    fn subtraction_inverts_addition(p in series_strategy(), q_coeffs in prop::collection::vec(0u64..=2, 27)) {
        let q = TruncatedSeries::from_terms(
            p.bound().clone(),
            all_below(p.bound().coords()).into_iter().zip(q_coeffs),
        ).unwrap();
        let sum = p.add(&q);
        prop_assert_eq!(subtract_checked(&sum, &q).unwrap(), p.clone());
        prop_assert_eq!(subtract_checked(&sum, &p).unwrap(), q.clone());
        if !q.is_zero() {
            let err = subtract_checked(&p, &sum.add(&q)).unwrap_err();
            prop_assert!(err.deficit > 0);
        }
    }

    #[test]
    fn elements_to_cover_are_the_low_saturation_support(p in series_strategy(), s in 0usize..=3, cfg in config_strategy()) {
        prop_assume!(s <= p.dim());
        let got: BTreeSet<_> = find_elements_to_cover(&p, s, &cfg).unwrap().into_iter().collect();
        let want: BTreeSet<_> = p.support().filter(|a| rho(a, p.bound()).unwrap() < s).cloned().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn possible_covers_are_exactly_the_subtractable_boxes(p in series_strategy(), s in 0usize..=3, cfg in config_strategy()) {
        prop_assume!(s <= p.dim());
        for a in p.support().filter(|a| rho(a, p.bound()).unwrap() < s) {
            let got: BTreeSet<_> = find_possible_covers(&p, s, a, &cfg).unwrap().into_iter().collect();
            let want: BTreeSet<_> = Interval::new(a.clone(), p.bound().clone())
                .unwrap()
                .points()
                .filter(|b| rho(b, p.bound()).unwrap() == s)
                .filter(|b| Interval::new(a.clone(), b.clone()).unwrap().points().all(|c| p.coeff(&c) > 0))
                .collect();
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn check_is_sound_and_monotone(p in series_strategy(), cfg in config_strategy()) {
        let mut answers = Vec::new();
        for s in 0..=p.dim() {
            let out = check_hilbert_depth(&p, s, &cfg).unwrap();
            if let Some(pp) = &out.certificate {
                prop_assert!(verify_partition(&p, pp));
                prop_assert!(pp.parts().iter().all(|iv| rho(iv.high(), p.bound()).unwrap() >= s));
            }
            answers.push(out.certificate.is_some());
        }
        prop_assert!(answers[0]);
        prop_assert!(answers.windows(2).all(|w| w[0] || !w[1]));
        let depth = answers.iter().filter(|&&x| x).count() - 1;
        prop_assert_eq!(hdepth_of_series(&p, &cfg).unwrap().value, depth);
    }

    #[test]
    fn rendering_preserves_the_series(p in series_strategy()) {
        let report = hdepth_of_series(&p, &SearchConfig::default()).unwrap();
        let d = render_decomposition(&report.certificate);
        prop_assert!(verify_decomposition(&p, &d));
        prop_assert_eq!(d.series().unwrap(), p.clone());
        if !d.spaces.is_empty() {
            prop_assert_eq!(d.depth(), report.value);
        }
    }

    #[test]
    fn intersecting_intervals_share_a_point(
        (g, a) in prop::collection::vec(0u32..=2, 2).prop_flat_map(point_below),
        x in prop::collection::vec(0u32..=2, 2),
        y in prop::collection::vec(0u32..=2, 2),
        z in prop::collection::vec(0u32..=2, 2),
    ) {
        let _ = g;
        let mk = |lo: &[u32], d: &[u32]| Interval::new(ev(lo.to_vec()), ev(lo.iter().zip(d).map(|(p, q)| p + q).collect())).unwrap();
        let i1 = mk(&a, &x);
        let i2 = mk(&y, &z);
        let shared = i1.points().any(|c| i2.contains(&c));
        prop_assert_eq!(intervals_intersect(&i1, &i2).unwrap(), shared);
    }
}
