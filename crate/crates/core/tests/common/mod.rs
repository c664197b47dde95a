#![allow(dead_code)]

use std::sync::Arc;

use choquet_rn::choquet::indefinite_integral;
use choquet_rn::decomposition::DecompositionFamily;
use choquet_rn::gen;
use choquet_rn::measure::{Generator, SetFunction};
use choquet_rn::{ExtRational, MeasurableSet, MeasurableSpace, MonotoneMeasure, SimpleFunction};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(s: &str) -> ExtRational {
    s.parse().unwrap()
}

pub fn r(s: &str) -> BigRational {
    choquet_rn::ext::parse_rational(s).unwrap()
}

/// Integrates `α ↦ ν({x ∈ A : f(x) ≥ α})` as a step function, sampling it
/// at the midpoint of every gap between consecutive distinct values.
pub fn oracle_integral(f: &SimpleFunction, nu: &impl SetFunction, a: MeasurableSet) -> ExtRational {
    let n = f.values().len();
    let members: Vec<usize> = (0..n).filter(|&x| a.contains(x)).collect();
    let at_least = |alpha: &BigRational| {
        members
            .iter()
            .filter(|&&x| match f.get(x).as_rational() {
                Some(v) => v >= alpha,
                None => true,
            })
            .fold(MeasurableSet::EMPTY, |s, &x| s.insert(x))
    };
    let mut cuts: Vec<BigRational> = vec![BigRational::zero()];
    cuts.extend(members.iter().filter_map(|&x| f.get(x).as_rational().cloned()));
    cuts.sort();
    cuts.dedup();
    let two = BigRational::from_integer(BigInt::from(2));
    let mut total = ExtRational::zero();
    for w in cuts.windows(2) {
        let mid = (&w[0] + &w[1]) / &two;
        let len = ExtRational::from(&w[1] - &w[0]);
        total = total + &len * &nu.value(at_least(&mid));
    }
    // beyond the largest finite value only the infinite points remain
    let top = cuts.last().unwrap() + BigRational::one();
    let tail = nu.value(at_least(&top));
    if !tail.is_zero() {
        return ExtRational::infinity();
    }
    total
}

/// Brute-force decomposition check: for each sampled rational pair
/// `α < β` and every set `A`, the two-sided inequality on the
/// right-continuous family, plus `μ(A_m) = ν(A_m) = 0`.
pub fn sampled_decomposition(mu: &MonotoneMeasure, nu: &MonotoneMeasure, family: &DecompositionFamily) -> bool {
    let space = family.space();
    let eps = BigRational::new(BigInt::from(1), BigInt::from(1_000_000));
    let mut grid: Vec<BigRational> = vec![BigRational::zero()];
    let bps = family.breakpoints();
    for (k, b) in bps.iter().enumerate() {
        grid.push(b.alpha.clone());
        grid.push(&b.alpha + &eps);
        if b.alpha > eps {
            grid.push(&b.alpha - &eps);
        }
        if let Some(next) = bps.get(k + 1) {
            grid.push((&b.alpha + &next.alpha) / BigRational::from_integer(BigInt::from(2)));
        }
    }
    grid.push(&bps.last().unwrap().alpha + BigRational::from_integer(BigInt::from(7)));
    grid.sort();
    grid.dedup();
    let val = |m: &MonotoneMeasure, s: MeasurableSet| m.get(s).as_rational().unwrap().clone();
    for a in space.sets().unwrap() {
        for (i, alpha) in grid.iter().enumerate() {
            let sa = a & family.at(alpha);
            for beta in &grid[i + 1..] {
                let sb = a & family.at(beta);
                let dnu = val(nu, sa) - val(nu, sb);
                let dmu = val(mu, sa) - val(mu, sb);
                if alpha * &dnu > dmu || dmu > beta * &dnu {
                    return false;
                }
            }
        }
    }
    let tail = family.tail_set();
    mu.get(tail).is_zero() && nu.get(tail).is_zero()
}

/// Random `(ν, f, μ = ∫ f dν)` on 2–5 atoms.
pub struct Instance {
    pub space: Arc<MeasurableSpace>,
    pub nu: MonotoneMeasure,
    pub f: SimpleFunction,
    pub mu: MonotoneMeasure,
}

pub fn instance(rng: &mut ChaCha8Rng, min: usize, max: usize) -> Instance {
    let space = gen::space(rng, min, max);
    let nu = gen::monotone(rng, &space, 0.3);
    let f = gen::function(rng, &space, 0.2);
    let mu = indefinite_integral(&f, &nu).unwrap();
    Instance { space, nu, f, mu }
}

/// A random family: atoms leave the chain in a random order at random
/// increasing thresholds, sometimes several at once.
pub fn random_family(rng: &mut ChaCha8Rng, space: &Arc<MeasurableSpace>) -> DecompositionFamily {
    let mut order: Vec<usize> = (0..space.atom_count()).collect();
    order.shuffle(rng);
    let mut list = vec![(BigRational::zero(), space.full())];
    let mut current = space.full();
    let mut alpha = BigRational::zero();
    let keep_tail = rng.gen_bool(0.2);
    let mut iter = order.into_iter().peekable();
    while let Some(x) = iter.next() {
        current = current.remove(x);
        if iter.peek().is_some() && rng.gen_bool(0.3) {
            continue;
        }
        if keep_tail && iter.peek().is_none() {
            break;
        }
        alpha += gen::rational(rng, 3, 2) + BigRational::new(BigInt::from(1), BigInt::from(4));
        list.push((alpha.clone(), current));
    }
    DecompositionFamily::new(space.clone(), list).unwrap()
}

/// Additive `(μ, ν)`; with `respect_nulls` false at least one `ν`-null atom
/// carries `μ`-mass.
pub fn additive_pair(rng: &mut ChaCha8Rng, respect_nulls: bool) -> (MonotoneMeasure, MonotoneMeasure) {
    let space = gen::space(rng, 1, 5);
    let nu_w: Vec<ExtRational> = (0..space.point_count())
        .map(|_| gen::sparse_rational(rng, 0.25, 5, 4))
        .collect();
    let mut mu_w: Vec<ExtRational> = nu_w
        .iter()
        .map(|w| {
            if w.is_zero() && respect_nulls {
                ExtRational::zero()
            } else {
                gen::sparse_rational(rng, 0.2, 6, 3)
            }
        })
        .collect();
    if !respect_nulls {
        // force at least one ν-null atom carrying μ-mass
        let x = rng.gen_range(0..space.point_count());
        let mut nu_w = nu_w;
        nu_w[x] = ExtRational::zero();
        mu_w[x] = ExtRational::from(gen::rational(rng, 4, 3) + BigRational::from_integer(1.into()));
        let nu = MonotoneMeasure::from_generator(space.clone(), &Generator::Additive(nu_w)).unwrap();
        let mu = MonotoneMeasure::from_generator(space, &Generator::Additive(mu_w)).unwrap();
        return (mu, nu);
    }
    let nu = MonotoneMeasure::from_generator(space.clone(), &Generator::Additive(nu_w)).unwrap();
    let mu = MonotoneMeasure::from_generator(space, &Generator::Additive(mu_w)).unwrap();
    (mu, nu)
}
