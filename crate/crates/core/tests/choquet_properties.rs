mod common;

use choquet_rn::choquet::{choquet_integral, integral, is_comonotone};
use choquet_rn::gen;
use choquet_rn::measure::Generator;
use choquet_rn::{ExtRational, MonotoneMeasure, SimpleFunction};
use common::{oracle_integral, q};
use proptest::prelude::*;
use rand::Rng;

fn setup(seed: u64) -> (rand_chacha::ChaCha8Rng, std::sync::Arc<choquet_rn::MeasurableSpace>, MonotoneMeasure) {
    let mut rng = gen::rng(seed);
    let space = gen::space(&mut rng, 1, 5);
    let nu = gen::monotone(&mut rng, &space, 0.3);
    (rng, space, nu)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn agrees_with_brute_force_oracle(seed in any::<u64>()) {
        let (mut rng, space, nu) = setup(seed);
        let f = gen::function(&mut rng, &space, 0.2);
        let a = gen::set(&mut rng, &space);
        prop_assert_eq!(integral(&f, &nu, a).unwrap(), oracle_integral(&f, &nu, a));
    }

    #[test]
    fn breakdown_is_a_decreasing_layer_sum(seed in any::<u64>()) {
        let (mut rng, space, nu) = setup(seed);
        let f = gen::function(&mut rng, &space, 0.2);
        let a = gen::set(&mut rng, &space);
        let b = choquet_integral(&f, &nu, a).unwrap();
        let sum: ExtRational = b.layers.iter().map(|l| &l.contribution).sum();
        prop_assert_eq!(&sum, &b.total);
        for w in b.layers.windows(2) {
            prop_assert!(w[0].measure >= w[1].measure);
            prop_assert!(w[0].threshold < w[1].threshold);
        }
    }

    #[test]
    fn null_sets_integrate_to_zero(seed in any::<u64>()) {
        let (mut rng, space, nu) = setup(seed);
        let f = gen::function(&mut rng, &space, 0.2);
        for a in space.sets().unwrap().filter(|&a| nu.get(a).is_zero()) {
            prop_assert!(integral(&f, &nu, a).unwrap().is_zero());
        }
    }

    #[test]
    fn monotone_in_the_integrand(seed in any::<u64>()) {
        let (mut rng, space, nu) = setup(seed);
        let f = gen::function(&mut rng, &space, 0.2);
        let bump = gen::function(&mut rng, &space, 0.5);
        let g = f.add(&bump).unwrap();
        prop_assert!(f.le(&g).unwrap());
        let a = gen::set(&mut rng, &space);
        prop_assert!(integral(&f, &nu, a).unwrap() <= integral(&g, &nu, a).unwrap());
    }

    #[test]
    fn positively_homogeneous(seed in any::<u64>()) {
        let (mut rng, space, nu) = setup(seed);
        let f = gen::function(&mut rng, &space, 0.2);
        let c = ExtRational::from(gen::rational(&mut rng, 7, 4));
        let a = gen::set(&mut rng, &space);
        prop_assert_eq!(integral(&f.scale(&c), &nu, a).unwrap(), &c * &integral(&f, &nu, a).unwrap());
    }

    #[test]
    fn indicator_integrates_to_measure(seed in any::<u64>()) {
        let (mut rng, space, nu) = setup(seed);
        let a = gen::set(&mut rng, &space);
        let chi = SimpleFunction::indicator(space.clone(), a);
        prop_assert_eq!(integral(&chi, &nu, a).unwrap(), nu.get(a).clone());
    }

    #[test]
    fn restriction_matches_multiplying_by_indicator(seed in any::<u64>()) {
        let (mut rng, space, nu) = setup(seed);
        let f = gen::function(&mut rng, &space, 0.2);
        let a = gen::set(&mut rng, &space);
        prop_assert_eq!(integral(&f, &nu, a).unwrap(), integral(&f.restrict(a), &nu, space.full()).unwrap());
    }

    #[test]
    fn truncations_increase_to_the_integral(seed in any::<u64>()) {
        let (mut rng, space, nu) = setup(seed);
        let mut f = gen::function(&mut rng, &space, 0.2);
        if rng.gen_bool(0.3) {
            let x = rng.gen_range(0..space.atom_count());
            let mut v = f.values().to_vec();
            v[x] = ExtRational::infinity();
            f = SimpleFunction::new(space.clone(), v).unwrap();
        }
        let a = gen::set(&mut rng, &space);
        let full = integral(&f, &nu, a).unwrap();
        let top = f.max_finite_value().unwrap_or_else(ExtRational::zero);
        let mut previous = ExtRational::zero();
        for n in 0..12u64 {
            let value = integral(&f.min_const(&ExtRational::from_integer(n)), &nu, a).unwrap();
            prop_assert!(value >= previous);
            if full.is_finite() && ExtRational::from_integer(n) >= top {
                prop_assert_eq!(&value, &full);
            }
            previous = value;
        }
        if full.is_infinite() {
            // the infinite part carries mass, so the truncations grow linearly
            let big = integral(&f.min_const(&ExtRational::from_integer(1000)), &nu, a).unwrap();
            let small = integral(&f.min_const(&ExtRational::from_integer(10)), &nu, a).unwrap();
            prop_assert!(big > small);
        }
    }

    #[test]
    fn comonotone_pairs_add(seed in any::<u64>()) {
        let (mut rng, space, nu) = setup(seed);
        let (f, g) = gen::comonotone_pair(&mut rng, &space);
        prop_assert!(is_comonotone(&f, &g).unwrap());
        let a = gen::set(&mut rng, &space);
        let sum = f.add(&g).unwrap();
        prop_assert_eq!(
            integral(&sum, &nu, a).unwrap(),
            integral(&f, &nu, a).unwrap() + integral(&g, &nu, a).unwrap()
        );
        let (fa, ga) = (f.restrict(a), g.restrict(a));
        prop_assert!(is_comonotone(&fa, &ga).unwrap());
        prop_assert_eq!(
            integral(&fa.add(&ga).unwrap(), &nu, space.full()).unwrap(),
            integral(&f, &nu, a).unwrap() + integral(&g, &nu, a).unwrap()
        );
    }

    #[test]
    fn truncation_and_excess_are_comonotone(seed in any::<u64>()) {
        let (mut rng, space, nu) = setup(seed);
        let f = gen::function(&mut rng, &space, 0.2);
        let c = ExtRational::from(gen::rational(&mut rng, 6, 3));
        let (low, high) = (f.min_const(&c), f.excess_over(&c));
        prop_assert!(is_comonotone(&low, &high).unwrap());
        prop_assert_eq!(low.add(&high).unwrap(), f.clone());
        prop_assert_eq!(
            integral(&f, &nu, space.full()).unwrap(),
            integral(&low, &nu, space.full()).unwrap() + integral(&high, &nu, space.full()).unwrap()
        );
    }

    #[test]
    fn additive_measures_give_weighted_sums(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let space = gen::space(&mut rng, 1, 5);
        let nu = gen::additive(&mut rng, &space, 0.3);
        let f = gen::function(&mut rng, &space, 0.2);
        let a = gen::set(&mut rng, &space);
        let weights = nu.atom_weights();
        let expect: ExtRational = a.atoms().map(|x| f.get(x) * &weights[x]).sum();
        prop_assert_eq!(integral(&f, &nu, a).unwrap(), expect);
    }
}

#[test]
fn fixture_integrals() {
    let fx = choquet_rn::fixtures::example_3_6();
    assert_eq!(integral(&fx.f1, &fx.nu, fx.space.full()).unwrap(), q("1"));
    let c = choquet_rn::fixtures::classical();
    let b = choquet_integral(&c.f, &c.nu, c.space.full()).unwrap();
    assert_eq!(b.total, q("8/3"));
    assert_eq!(b.layers.len(), 2);
    assert_eq!(b.layers[0].contribution, q("5/3"));
    assert_eq!(b.layers[1].contribution, q("1"));
}

#[test]
fn infinite_values_on_null_sets_vanish() {
    let s = std::sync::Arc::new(choquet_rn::MeasurableSpace::power_set(&["a", "b"]).unwrap());
    let nu = MonotoneMeasure::from_generator(s.clone(), &Generator::Additive(vec![q("1"), q("0")])).unwrap();
    let f = SimpleFunction::new(s.clone(), vec![q("2"), ExtRational::infinity()]).unwrap();
    assert_eq!(integral(&f, &nu, s.full()).unwrap(), q("2"));
    let g = SimpleFunction::new(s.clone(), vec![ExtRational::infinity(), q("1")]).unwrap();
    assert!(integral(&g, &nu, s.full()).unwrap().is_infinite());
}
