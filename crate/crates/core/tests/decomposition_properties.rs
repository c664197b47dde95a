mod common;

use choquet_rn::choquet::{indefinite_integral, integral};
use choquet_rn::decomposition::{
    check_decomposition, check_decomposition_scoped, derive_function, dyadic_approximant, family_from_function,
    lemma_tail_check, verify_rn, DecompositionFamily, PairScope,
};
use choquet_rn::gen;
use choquet_rn::props::{abs_continuous, equal_ae, has_property_sigma, strongly_abs_continuous};
use choquet_rn::{ExtRational, MeasurableSet, MeasurableSpace, MonotoneMeasure, SimpleFunction};
use common::{instance, q, random_family, sampled_decomposition};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use std::sync::Arc;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn function_families_decompose_their_integrals(seed in any::<u64>()) {
        let inst = instance(&mut gen::rng(seed), 1, 5);
        let family = family_from_function(&inst.f);
        let report = check_decomposition(&inst.mu, &inst.nu, &family).unwrap();
        prop_assert!(report.holds, "{:?}", report.witness());
        prop_assert_eq!(derive_function(&family), inst.f.clone());
        prop_assert!(lemma_tail_check(&inst.mu, &inst.nu, &family).unwrap().holds);
    }

    #[test]
    fn passing_families_derive_verified_functions(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let inst = instance(&mut rng, 1, 5);
        // either the canonical family or a random one
        let family = if rng.gen_bool(0.5) { family_from_function(&inst.f) } else { random_family(&mut rng, &inst.space) };
        let report = check_decomposition(&inst.mu, &inst.nu, &family).unwrap();
        if report.holds {
            let f = derive_function(&family);
            prop_assert!(verify_rn(&inst.mu, &inst.nu, &f).unwrap().holds);
            prop_assert!(abs_continuous(&inst.mu, &inst.nu).unwrap().holds);
            prop_assert!(strongly_abs_continuous(&inst.mu, &inst.nu).unwrap().holds);
            prop_assert!(lemma_tail_check(&inst.mu, &inst.nu, &family).unwrap().holds);
        }
    }

    #[test]
    fn reduced_check_matches_dense_sampling(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let space = gen::space(&mut rng, 1, 4);
        let nu = gen::monotone(&mut rng, &space, 0.3);
        let family = random_family(&mut rng, &space);
        // μ either exactly decomposed by the family or an arbitrary monotone measure
        let mu = if rng.gen_bool(0.5) {
            indefinite_integral(&derive_function(&family), &nu).unwrap()
        } else {
            gen::monotone(&mut rng, &space, 0.3)
        };
        if mu.is_finite() {
            let reduced = check_decomposition(&mu, &nu, &family).unwrap().holds;
            prop_assert_eq!(reduced, sampled_decomposition(&mu, &nu, &family));
        }
    }

    #[test]
    fn consecutive_pairs_decide_like_all_pairs(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let space = gen::space(&mut rng, 1, 5);
        let nu = gen::monotone(&mut rng, &space, 0.3);
        let mu = gen::monotone(&mut rng, &space, 0.3);
        let family = random_family(&mut rng, &space);
        let all = check_decomposition(&mu, &nu, &family).unwrap().holds;
        let sets = space.sets().unwrap();
        let consecutive = check_decomposition_scoped(&mu, &nu, &family, sets, PairScope::Consecutive).unwrap().holds;
        prop_assert_eq!(all, consecutive);
    }

    #[test]
    fn violations_are_reproducible(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let space = gen::space(&mut rng, 1, 4);
        let nu = gen::monotone(&mut rng, &space, 0.3);
        let mu = gen::monotone(&mut rng, &space, 0.3);
        let family = random_family(&mut rng, &space);
        let report = check_decomposition(&mu, &nu, &family).unwrap();
        prop_assert_eq!(report.violations.is_empty(), report.violation_count == 0);
        for v in &report.violations {
            let bps = family.breakpoints();
            let s = |k: usize| v.set & bps[k].set;
            let dmu = mu.get(s(v.i)).as_rational().unwrap() - mu.get(s(v.j)).as_rational().unwrap();
            let dnu = nu.get(s(v.i)).as_rational().unwrap() - nu.get(s(v.j)).as_rational().unwrap();
            prop_assert_eq!(&v.middle, &dmu);
            prop_assert!(&bps[v.i + 1].alpha * &dnu > dmu || dmu > &bps[v.j].alpha * &dnu);
        }
    }

    #[test]
    fn dyadic_approximants_are_sandwiched(seed in any::<u64>()) {
        let inst = instance(&mut gen::rng(seed), 1, 4);
        let family = family_from_function(&inst.f);
        let f = derive_function(&family);
        let mut previous: Vec<ExtRational> = vec![ExtRational::zero(); inst.space.set_count().unwrap()];
        for n in 1..=8u32 {
            let fnn = dyadic_approximant(&family, n).unwrap();
            let step = ExtRational::from(BigRational::new(BigInt::from(1), BigInt::from(1u64 << n)));
            let cap = f.min_const(&ExtRational::from_integer(u64::from(n)));
            for x in 0..inst.space.atom_count() {
                prop_assert!(fnn.get(x) <= f.get(x));
                prop_assert!(cap.get(x) <= &(fnn.get(x) + &step));
            }
            for a in inst.space.sets().unwrap() {
                let v = integral(&fnn, &inst.nu, a).unwrap();
                prop_assert!(v <= *inst.mu.get(a));
                prop_assert!(v >= previous[a.bits() as usize]);
                previous[a.bits() as usize] = v;
            }
        }
    }

    #[test]
    fn comonotone_derivatives_add(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let space = gen::space(&mut rng, 1, 5);
        let nu = gen::monotone(&mut rng, &space, 0.3);
        let (f, g) = gen::comonotone_pair(&mut rng, &space);
        let mu = indefinite_integral(&f, &nu).unwrap();
        let lambda = indefinite_integral(&g, &nu).unwrap();
        let sum = mu.sum(&lambda).unwrap();
        prop_assert!(verify_rn(&sum, &nu, &f.add(&g).unwrap()).unwrap().holds);
    }

    #[test]
    fn derivatives_are_unique_under_property_sigma(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let space = gen::space(&mut rng, 1, 5);
        let nu = gen::additive(&mut rng, &space, 0.3);
        prop_assert!(has_property_sigma(&nu).holds);
        let f = gen::function(&mut rng, &space, 0.2);
        let mu = indefinite_integral(&f, &nu).unwrap();
        // perturb on ν-null atoms only
        let values = (0..space.atom_count())
            .map(|x| if nu.get(MeasurableSet::singleton(x)).is_zero() { gen::sparse_rational(&mut rng, 0.2, 9, 2) } else { f.get(x).clone() })
            .collect();
        let g = SimpleFunction::new(space.clone(), values).unwrap();
        prop_assert!(verify_rn(&mu, &nu, &g).unwrap().holds);
        let cmp = equal_ae(&f, &g, &nu).unwrap();
        prop_assert!(cmp.equal);
        prop_assert!(mu.get(cmp.difference_set).is_zero());
    }
}

#[test]
fn non_uniqueness_without_property_sigma() {
    let fx = choquet_rn::fixtures::example_3_6();
    assert!(!has_property_sigma(&fx.nu).holds);
    assert!(verify_rn(&fx.mu, &fx.nu, &fx.f1).unwrap().holds);
    assert!(verify_rn(&fx.mu, &fx.nu, &fx.f2).unwrap().holds);
    let one = SimpleFunction::constant(fx.space.clone(), q("1"));
    assert!(verify_rn(&fx.mu, &fx.nu, &one).unwrap().holds);
    let cmp = equal_ae(&fx.f1, &fx.f2, &fx.nu).unwrap();
    assert!(!cmp.equal);
    assert_eq!(cmp.measure, q("1"));
}

#[test]
fn failing_fixture_is_refuted_at_the_singleton() {
    let fx = choquet_rn::fixtures::f3();
    let family = DecompositionFamily::new(
        fx.space.clone(),
        vec![(BigRational::zero(), fx.space.full()), (BigRational::from_integer(1.into()), fx.space.empty())],
    )
    .unwrap();
    let report = check_decomposition(&fx.mu, &fx.nu, &family).unwrap();
    assert!(!report.holds);
    assert!(report
        .violations
        .iter()
        .any(|v| v.set == fx.space.set_from_names(&["1"]).unwrap() && v.middle > v.right));
    assert!(!sampled_decomposition(&fx.mu, &fx.nu, &family));
}

#[test]
fn infinite_inputs_are_refused() {
    let s = Arc::new(MeasurableSpace::power_set(&["a"]).unwrap());
    let inf = MonotoneMeasure::from_fn(s.clone(), |a| if a.is_empty() { q("0") } else { ExtRational::infinity() }).unwrap();
    let family = DecompositionFamily::new(s.clone(), vec![(BigRational::zero(), s.full())]).unwrap();
    assert!(check_decomposition(&inf, &inf, &family).is_err());
}
