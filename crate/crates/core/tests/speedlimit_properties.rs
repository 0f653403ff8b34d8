use std::f64::consts::PI;

use proptest::prelude::*;
use qsl_core::models::{
    all_zero_state, build_polygon_topology, energy_stats_ladder, energy_stats_spin, entangled_state,
    separable_energy_composition, valid_polygons, EnergyStats, LadderModel, SpinModel, DIM_BUDGET,
};
use qsl_core::speedlimit::{
    entangled_qsl_time, ising_qsl_strong, predicted_orthogonality_time_entangled,
    predicted_ratio_entangled, qsl_time, separable_bound,
};
use qsl_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bound(e: f64, de: f64) -> f64 {
    qsl_time(&EnergyStats::new(0.0, e, de).unwrap(), 0.0).unwrap().bound_time
}

proptest! {
    #[test]
    fn bound_is_monotone_in_resources(
        e in 0.01f64..10.0, de in 0.01f64..10.0, extra in 0.0f64..5.0, eps in 0.0f64..0.99,
    ) {
        let at = |e: f64, de: f64| qsl_time(&EnergyStats::new(0.0, e, de).unwrap(), eps).unwrap().bound_time;
        prop_assert!(at(e + extra, de) <= at(e, de));
        prop_assert!(at(e, de + extra) <= at(e, de));
    }

    #[test]
    fn bound_shrinks_as_target_grows(e in 0.01f64..10.0, de in 0.01f64..10.0, a in 0.0f64..0.99, b in 0.0f64..0.99) {
        let s = EnergyStats::new(0.0, e, de).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(qsl_time(&s, hi).unwrap().bound_time <= qsl_time(&s, lo).unwrap().bound_time);
    }
}

#[test]
fn separable_bound_dominates_generic_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut equalities = 0;
    for _ in 0..1000 {
        let len = rng.gen_range(1..=8);
        let subs: Vec<(f64, f64)> = (0..len)
            .map(|_| {
                let e = if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.0..3.0) };
                let de = if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.0..3.0) };
                (e, de)
            })
            .collect();
        let sep = match separable_bound(&subs) {
            Ok(v) => v,
            Err(Error::StationaryState) => continue,
            Err(e) => panic!("{e}"),
        };
        let c = separable_energy_composition(&subs).unwrap();
        let generic = bound(c.mean_energy, c.spread);
        assert!(sep >= generic * (1.0 - 1e-12), "{subs:?}");
        if sep == generic {
            equalities += 1;
            assert!(c.max_energy == c.mean_energy || c.max_spread == c.spread, "{subs:?}");
        }
    }
    assert!(equalities > 0);
}

#[test]
fn single_active_subsystem_saturates() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let len = rng.gen_range(1..=8);
        let active = rng.gen_range(0..len);
        let resources = (rng.gen_range(0.01..3.0), rng.gen_range(0.01..3.0));
        let mut subs = vec![(0.0, 0.0); len];
        subs[active] = resources;
        let c = separable_energy_composition(&subs).unwrap();
        assert_eq!(c.max_energy, c.mean_energy);
        assert_eq!(c.max_spread, c.spread);
        assert_eq!(separable_bound(&subs).unwrap(), bound(c.mean_energy, c.spread));
    }
}

#[test]
fn homogeneous_gap_is_root_m() {
    for m in 1..=16 {
        let subs = vec![(0.7, 0.7); m];
        let c = separable_energy_composition(&subs).unwrap();
        let ratio = separable_bound(&subs).unwrap() / bound(c.mean_energy, c.spread);
        assert!((ratio - (m as f64).sqrt()).abs() < 1e-12);
    }
}

#[test]
fn entangled_bound_matches_measured_stats() {
    for n in 2..=64usize {
        for m in 1..=6usize {
            let model = LadderModel::new(m, n, 0.9).unwrap();
            // Beyond the dimension budget the state is supported on N levels of
            // spacing Mω₀, identical to one party with ω₀ → Mω₀.
            let stats = match model.hilbert_dim() {
                Some(d) if d <= DIM_BUDGET => {
                    energy_stats_ladder(&entangled_state(&model).unwrap(), &model).unwrap()
                }
                _ => {
                    let folded = LadderModel::new(1, n, 0.9 * m as f64).unwrap();
                    energy_stats_ladder(&entangled_state(&folded).unwrap(), &folded).unwrap()
                }
            };
            let report = qsl_time(&stats, 0.0).unwrap();
            let closed = entangled_qsl_time(&model).unwrap();
            assert!((report.bound_time - closed).abs() <= 1e-12 * closed.max(1.0), "N={n} M={m}");
            assert_eq!(report.dominant_branch, qsl_core::speedlimit::Branch::Spread);
        }
    }
}

#[test]
fn entangled_ratio_bounded_and_increasing() {
    let cap = 2.0 / 3f64.sqrt();
    let mut last = 0.0;
    for n in 2..=4096 {
        let r = predicted_ratio_entangled(n).unwrap();
        assert!((1.0..cap).contains(&r));
        assert!(r > last);
        last = r;
        let model = LadderModel::new(3, n, 1.0).unwrap();
        let direct = predicted_orthogonality_time_entangled(&model).unwrap() / entangled_qsl_time(&model).unwrap();
        assert!((direct - r).abs() < 1e-12);
    }
}

#[test]
fn strong_regime_bound_approximates_exact() {
    let t = build_polygon_topology(6, 2).unwrap();
    let q = t.num_groups();
    let model = SpinModel::new(t, 1e-4, 1.0).unwrap();
    let stats = energy_stats_spin(&all_zero_state(6).unwrap(), &model).unwrap();
    let exact = qsl_time(&stats, 0.0).unwrap().bound_time;
    let strong = ising_qsl_strong(1.0, q).unwrap();
    assert!(((exact - strong) / exact).abs() < 1e-4);

    let model = SpinModel::new(build_polygon_topology(6, 2).unwrap(), 0.001, 1.0).unwrap();
    let stats = energy_stats_spin(&all_zero_state(6).unwrap(), &model).unwrap();
    let exact = qsl_time(&stats, 0.0).unwrap().bound_time;
    assert!((exact / (PI / (2.0 * 6f64.sqrt())) - 1.0).abs() < 1e-3);
}

#[test]
fn q_formula_ratio_identity() {
    for (m, k) in valid_polygons(24) {
        let q = build_polygon_topology(m, k).unwrap().num_groups() as f64;
        assert!((q.sqrt() / 2.0 - (m as f64 / (2.0 * k as f64)).sqrt()).abs() < 1e-15);
    }
}
