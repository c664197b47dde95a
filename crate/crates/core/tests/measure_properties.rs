mod common;

use choquet_rn::gen;
use choquet_rn::measure::Generator;
use choquet_rn::props::{
    abs_continuous, has_property_sigma, is_null_additive, is_weakly_null_additive, strongly_abs_continuous,
};
use choquet_rn::witness::Witness;
use choquet_rn::{Error, ExtRational, MeasurableSpace, MonotoneMeasure};
use common::q;
use proptest::prelude::*;
use rand::Rng;
use std::sync::Arc;

fn pair(seed: u64) -> (MonotoneMeasure, MonotoneMeasure) {
    let mut rng = gen::rng(seed);
    let space = gen::space(&mut rng, 1, 5);
    let nu = gen::monotone(&mut rng, &space, 0.35);
    let mu = gen::monotone(&mut rng, &space, 0.35);
    (mu, nu)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn abs_and_strong_continuity_coincide(seed in any::<u64>()) {
        let (mu, nu) = pair(seed);
        let weak = abs_continuous(&mu, &nu).unwrap();
        let strong = strongly_abs_continuous(&mu, &nu).unwrap();
        prop_assert_eq!(weak.holds, strong.holds);
        for m in &strong.moduli {
            prop_assert!(*mu.get(m.attained_at) >= m.epsilon);
            prop_assert_eq!(nu.get(m.attained_at), &m.delta);
        }
        if let Some(Witness::AbsoluteContinuity { set, mu_value }) = weak.witness {
            prop_assert!(nu.get(set).is_zero());
            prop_assert_eq!(mu.get(set), &mu_value);
            prop_assert!(!mu_value.is_zero());
        }
    }

    #[test]
    fn null_additive_implies_weakly_null_additive(seed in any::<u64>()) {
        let (mu, _) = pair(seed);
        let strong = is_null_additive(&mu);
        let weak = is_weakly_null_additive(&mu);
        if strong.holds {
            prop_assert!(weak.holds);
        }
        prop_assert_eq!(has_property_sigma(&mu).holds, weak.holds);
        if let Some(Witness::NullAdjunction { set, null_set, set_value, union_value }) = strong.witness {
            prop_assert!(mu.get(null_set).is_zero());
            prop_assert_eq!(mu.get(set), &set_value);
            prop_assert_eq!(mu.get(set | null_set), &union_value);
            prop_assert_ne!(set_value, union_value);
        }
        if let Some(Witness::NullUnion { first, second, union_value }) = weak.witness {
            prop_assert!(mu.get(first).is_zero() && mu.get(second).is_zero());
            prop_assert_eq!(mu.get(first | second), &union_value);
            prop_assert!(!union_value.is_zero());
        }
    }

    #[test]
    fn additive_measures_are_null_additive(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let space = gen::space(&mut rng, 1, 5);
        let nu = gen::additive(&mut rng, &space, 0.4);
        prop_assert!(nu.is_additive());
        prop_assert!(is_null_additive(&nu).holds);
    }

    #[test]
    fn perturbed_tables_report_genuine_violations(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let space = gen::space(&mut rng, 1, 5);
        let m = gen::monotone(&mut rng, &space, 0.2);
        let mut table = m.table().to_vec();
        let k = rng.gen_range(0..table.len());
        table[k] = ExtRational::from(gen::rational(&mut rng, 8, 3));
        match MonotoneMeasure::from_table(space.clone(), table.clone()) {
            Ok(_) => {}
            Err(Error::InvalidMeasure(Witness::NotVanishing { value })) => {
                prop_assert_eq!(&table[0], &value);
                prop_assert!(!value.is_zero());
            }
            Err(Error::InvalidMeasure(Witness::Monotonicity { subset, superset, subset_value, superset_value })) => {
                prop_assert!(subset.is_subset(superset));
                prop_assert_eq!(&table[subset.bits() as usize], &subset_value);
                prop_assert_eq!(&table[superset.bits() as usize], &superset_value);
                prop_assert!(subset_value > superset_value);
            }
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
        }
    }
}

#[test]
fn generators_are_monotone() {
    let s = Arc::new(MeasurableSpace::power_set(&["a", "b", "c"]).unwrap());
    for g in [
        Generator::IndicatorFull,
        Generator::Cardinality(q("3/2")),
        Generator::Additive(vec![q("1"), q("0"), q("2")]),
        Generator::MaxWeight(vec![q("1"), q("0"), q("2")]),
    ] {
        let m = MonotoneMeasure::from_generator(s.clone(), &g).unwrap();
        assert!(MonotoneMeasure::from_table(s.clone(), m.table().to_vec()).is_ok());
    }
}

#[test]
fn indicator_full_lacks_property_sigma() {
    let s = Arc::new(MeasurableSpace::power_set(&["a", "b"]).unwrap());
    let m = MonotoneMeasure::from_generator(s.clone(), &Generator::IndicatorFull).unwrap();
    let v = has_property_sigma(&m);
    assert!(!v.holds);
    assert!(v.note.is_some());
    assert!(matches!(v.witness, Some(Witness::NullUnion { .. })));
}

#[test]
fn decreasing_table_is_rejected() {
    let s = Arc::new(MeasurableSpace::power_set(&["a", "b"]).unwrap());
    let err = MonotoneMeasure::from_table(s.clone(), vec![q("0"), q("2"), q("1"), q("1")]).unwrap_err();
    let Error::InvalidMeasure(Witness::Monotonicity { subset, superset, .. }) = err else {
        panic!("expected a monotonicity witness, got {err}");
    };
    assert_eq!(s.format_set(subset), "{a}");
    assert_eq!(superset, s.full());
    let err = MonotoneMeasure::from_table(s, vec![q("1"), q("2"), q("2"), q("2")]).unwrap_err();
    assert!(matches!(err, Error::InvalidMeasure(Witness::NotVanishing { .. })));
}
