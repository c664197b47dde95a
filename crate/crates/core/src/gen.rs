//! Seeded random instances for property checks and randomized suites.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ext::ExtRational;
use crate::function::SimpleFunction;
use crate::measure::{Generator, MonotoneMeasure};
use crate::space::{MeasurableSet, MeasurableSpace};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `0 ≤ p ≤ max_num`, `1 ≤ q ≤ max_den`.
pub fn rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(0..=max_num)),
        BigInt::from(rng.gen_range(1..=max_den)),
    )
}

/// Like [`rational`] but zero with probability `zero_prob`.
pub fn sparse_rational(rng: &mut impl Rng, zero_prob: f64, max_num: i64, max_den: i64) -> ExtRational {
    if rng.gen_bool(zero_prob) {
        ExtRational::zero()
    } else {
        let r = BigRational::new(
            BigInt::from(rng.gen_range(1..=max_num)),
            BigInt::from(rng.gen_range(1..=max_den)),
        );
        ExtRational::from(r)
    }
}

/// Power-set space on `x0, x1, …` with `min..=max` atoms.
pub fn space(rng: &mut impl Rng, min: usize, max: usize) -> Arc<MeasurableSpace> {
    let n = rng.gen_range(min..=max);
    let names: Vec<String> = (0..n).map(|k| format!("x{k}")).collect();
    Arc::new(MeasurableSpace::power_set(&names).expect("distinct names"))
}

/// Monotone measure built bottom-up: each set takes the largest value of its
/// covering subsets plus a random (often zero) increment.
pub fn monotone(rng: &mut impl Rng, space: &Arc<MeasurableSpace>, zero_prob: f64) -> MonotoneMeasure {
    let mut table: Vec<ExtRational> = Vec::with_capacity(1 << space.atom_count());
    for a in space.sets().expect("small space") {
        if a.is_empty() {
            table.push(ExtRational::zero());
            continue;
        }
        let floor = a
            .atoms()
            .map(|x| table[a.remove(x).bits() as usize].clone())
            .max()
            .expect("nonempty");
        table.push(floor + sparse_rational(rng, zero_prob, 4, 3));
    }
    MonotoneMeasure::from_table(space.clone(), table).expect("monotone by construction")
}

pub fn additive(rng: &mut impl Rng, space: &Arc<MeasurableSpace>, zero_prob: f64) -> MonotoneMeasure {
    let weights = (0..space.point_count())
        .map(|_| sparse_rational(rng, zero_prob, 5, 4))
        .collect();
    MonotoneMeasure::from_generator(space.clone(), &Generator::Additive(weights)).expect("nonnegative weights")
}

/// Simple function with values from a small pool, so ties are common.
pub fn function(rng: &mut impl Rng, space: &Arc<MeasurableSpace>, zero_prob: f64) -> SimpleFunction {
    let pool: Vec<ExtRational> = (0..3).map(|_| sparse_rational(rng, zero_prob, 6, 3)).collect();
    let values = (0..space.atom_count())
        .map(|_| {
            if rng.gen_bool(0.3) {
                sparse_rational(rng, zero_prob, 6, 3)
            } else {
                pool.choose(rng).expect("nonempty pool").clone()
            }
        })
        .collect();
    SimpleFunction::new(space.clone(), values).expect("one value per atom")
}

/// Two functions nondecreasing along one random atom order.
pub fn comonotone_pair(rng: &mut impl Rng, space: &Arc<MeasurableSpace>) -> (SimpleFunction, SimpleFunction) {
    let mut order: Vec<usize> = (0..space.atom_count()).collect();
    order.shuffle(rng);
    let f = ascending(rng, space, &order);
    let g = ascending(rng, space, &order);
    (f, g)
}

fn ascending(rng: &mut impl Rng, space: &Arc<MeasurableSpace>, order: &[usize]) -> SimpleFunction {
    let mut acc = ExtRational::zero();
    let mut values = vec![ExtRational::zero(); order.len()];
    for &x in order {
        acc = acc + sparse_rational(rng, 0.4, 3, 2);
        values[x] = acc.clone();
    }
    SimpleFunction::new(space.clone(), values).expect("one value per atom")
}

pub fn set(rng: &mut impl Rng, space: &MeasurableSpace) -> MeasurableSet {
    MeasurableSet::from_bits(rng.gen_range(0..(1u128 << space.atom_count())))
}
