use std::collections::{BTreeMap, HashMap};

use hdepth::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ev(c: Vec<u32>) -> ExponentVector {
    ExponentVector::new(c).unwrap()
}

fn box_points(lo: &[u32], hi: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for (&l, &h) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|p| {
                (l..=h).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn random_bound(rng: &mut ChaCha8Rng) -> ExponentVector {
    let n = *[1, 2, 2, 3, 3, 3].choose(rng).unwrap();
    ev((0..n).map(|_| *[0, 1, 1, 2, 2].choose(rng).unwrap()).collect())
}

fn random_series(rng: &mut ChaCha8Rng) -> TruncatedSeries {
    let g = random_bound(rng);
    let mut pts = box_points(&vec![0; g.dim()], g.coords());
    pts.shuffle(rng);
    let k = rng.gen_range(pts.len().div_ceil(2)..=pts.len()).min(16);
    let terms = pts.into_iter().take(k).map(|p| (ev(p), rng.gen_range(1..=2)));
    TruncatedSeries::from_terms(g, terms).unwrap()
}

fn random_ideal(rng: &mut ChaCha8Rng, n: usize, max_gens: usize) -> MonomialIdeal {
    let k = rng.gen_range(1..=max_gens);
    let gens = (0..k).map(|_| ev((0..n).map(|_| rng.gen_range(0..=2)).collect())).collect();
    MonomialIdeal::new(n, gens).unwrap()
}

/// Random `I/J` with `J ⊆ I`, both generated in degrees ≤ 2 per variable.
fn random_quotient(rng: &mut ChaCha8Rng) -> QuotientModule {
    let n = rng.gen_range(1..=3);
    let i = random_ideal(rng, n, 3);
    let j = if rng.gen_bool(0.2) {
        MonomialIdeal::zero(n)
    } else {
        // Multiply generators of I by random monomials so that J ⊆ I.
        let gens = (0..rng.gen_range(1..=3))
            .map(|_| {
                let base = i.generators()[rng.gen_range(0..i.generators().len())].coords().to_vec();
                ev(base.iter().map(|&x| x + rng.gen_range(0..=1)).collect())
            })
            .collect();
        MonomialIdeal::new(n, gens).unwrap()
    };
    QuotientModule::new(i, j).unwrap()
}

#[test]
fn engine_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let configs = [
        SearchConfig::default(),
        SearchConfig {
            element_order: ElementOrder::LexDesc,
            cover_order: CoverOrder::LargestBoxFirst,
            counting_bound: false,
            driver: Driver::Scan,
            ..SearchConfig::default()
        },
        SearchConfig {
            element_order: ElementOrder::ByRhoAsc,
            cover_order: CoverOrder::SmallestBoxFirst,
            memoize_failures: true,
            ..SearchConfig::default()
        },
    ];
    let mut strict = 0;
    for round in 0..240 {
        let p = random_series(&mut rng);
        let expected = brute_force_hdepth(&p, BruteForceCap::default()).unwrap();
        if 0 < expected && expected < p.dim() {
            strict += 1;
        }
        for cfg in &configs {
            let report = hdepth_of_series(&p, cfg).unwrap();
            assert_eq!(report.value, expected, "round {round}: {p:?} {cfg:?}");
            assert!(verify_partition(&p, &report.certificate));
            if !report.certificate.is_empty() {
                assert_eq!(report.certificate.min_rho(), expected);
            }
            // Monotone in s: a certificate exactly up to the value.
            for s in 0..=p.dim() {
                let out = check_hilbert_depth(&p, s, cfg).unwrap();
                assert_eq!(out.certificate.is_some(), s <= expected, "round {round} s {s}");
                if let Some(c) = out.certificate {
                    assert!(verify_partition(&p, &c));
                    assert!(c.parts().iter().all(|iv| rho(iv.high(), p.bound()).unwrap() >= s));
                }
            }
        }
    }
    assert!(strict >= 40, "only {strict} instances with 0 < depth < n");
}

#[test]
fn engine_agrees_with_brute_force_on_module_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 60 {
        let n = rng.gen_range(1..=3);
        let mut m = ModuleExpr::new(n);
        for _ in 0..rng.gen_range(1..=2) {
            let shift = ev((0..n).map(|_| rng.gen_range(0..=1)).collect());
            m = if rng.gen_bool(0.3) {
                m.with_free(shift).unwrap()
            } else {
                let i = random_ideal(&mut rng, n, 2);
                m.with_quotient(i, MonomialIdeal::zero(n), shift).unwrap()
            };
        }
        let g = determine_bound(&m);
        let p = series_of(&m, &g).unwrap();
        let Ok(expected) = brute_force_hdepth(&p, BruteForceCap::default()) else {
            continue;
        };
        assert_eq!(hdepth(&m, &SearchConfig::default()).unwrap().value, expected, "{m:?}");
        checked += 1;
    }
}

/// Brute-force annihilator test: some `u` supported on `z` with
/// `c + u ∈ J`, searching every `u` up to a generous degree.
fn kills_by_search(c: &[u32], z: VariableSet, j: &MonomialIdeal, reach: u32) -> bool {
    let hi: Vec<u32> = (0..c.len()).map(|k| if z.contains(k) { reach } else { 0 }).collect();
    box_points(&vec![0; c.len()], &hi).into_iter().any(|u| {
        let w: Vec<u32> = c.iter().zip(&u).map(|(a, b)| a + b).collect();
        j.contains(&ev(w))
    })
}

#[test]
fn annihilator_test_agrees_with_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let q = random_quotient(&mut rng);
        let n = q.dim();
        let support: Vec<_> = q.series().support().cloned().collect();
        if support.is_empty() {
            continue;
        }
        let c = support[rng.gen_range(0..support.len())].clone();
        let z = VariableSet::from_mask(rng.gen_range(0..(1u64 << n)));
        let expected = kills_by_search(c.coords(), z, q.denominator(), 6);
        assert_eq!(annihilator_intersects(&c, z, &q).unwrap(), expected, "{q:?} {c} {z:?}");
    }
}

type State = BTreeMap<Vec<u32>, ()>;

/// Exhaustive Stanley depth of a quotient with a small truncated support:
/// tiles the support with boxes `[a, b]` whose pinned part `G[a, b]` is not
/// annihilated by `K[Z_b]`, maximizing the smallest saturation.
fn brute_force_sdepth(q: &QuotientModule) -> usize {
    let g = q.bound().coords().to_vec();
    let state: State = q.series().support().map(|a| (a.coords().to_vec(), ())).collect();
    let mut memo = HashMap::new();
    sdepth_rec(&state, &g, q, &mut memo)
}

fn sdepth_rec(state: &State, g: &[u32], q: &QuotientModule, memo: &mut HashMap<State, usize>) -> usize {
    let Some(a) = state.keys().next().cloned() else {
        return g.len();
    };
    if let Some(&v) = memo.get(state) {
        return v;
    }
    let mut value = 0;
    for b in box_points(&a, g) {
        let sat = b.iter().zip(g).filter(|(x, y)| x == y).count();
        let inside = box_points(&a, &b);
        if inside.iter().any(|c| !state.contains_key(c)) {
            continue;
        }
        let z: VariableSet = (0..g.len()).filter(|&k| b[k] == g[k]).collect();
        let killed = inside
            .iter()
            .filter(|c| (0..g.len()).all(|k| !z.contains(k) || c[k] == a[k]))
            .any(|c| kills_by_search(c, z, q.denominator(), 6));
        if killed {
            continue;
        }
        let mut rest = state.clone();
        for c in &inside {
            rest.remove(c);
        }
        value = value.max(sat.min(sdepth_rec(&rest, g, q, memo)));
    }
    memo.insert(state.clone(), value);
    value
}

#[test]
fn stanley_search_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let mut checked = 0;
    let mut gap = 0;
    while checked < 150 {
        let q = random_quotient(&mut rng);
        if q.series().support_len() > 14 {
            continue;
        }
        let expected = brute_force_sdepth(&q);
        for disjoint in [false, true] {
            let cfg = SearchConfig {
                disjointness_check: disjoint,
                ..SearchConfig::default()
            };
            let report = sdepth(&q, &cfg).unwrap();
            assert_eq!(report.value, expected, "{q:?} disjoint={disjoint}");
            assert!(verify_stanley_decomposition(&q, &report.certificate));
        }
        let h = hdepth_of_series(q.series(), &SearchConfig::default()).unwrap();
        assert!(expected <= h.value);
        if expected > 0 {
            gap += 1;
        }
        checked += 1;
    }
    assert!(gap >= 30, "only {gap} quotients with positive Stanley depth");
}

#[test]
fn depth_is_independent_of_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let i = random_ideal(&mut rng, n, 3);
        let m = ModuleExpr::ideal(i);
        let g = determine_bound(&m);
        let bigger = ev(g.coords().iter().map(|&x| x + rng.gen_range(0..=1)).collect());
        let a = hdepth_of_series(&series_of(&m, &g).unwrap(), &SearchConfig::default()).unwrap();
        let b = hdepth_of_series(&series_of(&m, &bigger).unwrap(), &SearchConfig::default()).unwrap();
        assert_eq!(a.value, b.value, "{m:?} g={g} g'={bigger}");
    }
}
