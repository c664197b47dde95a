//! Exact Choquet integration of simple functions.
//!
//! For a step integrand the layer-cake integral
//! `∫_A f dν = ∫_0^∞ ν({f ≥ α} ∩ A) dα` is a finite sum over the distinct
//! values `0 = t_0 < t_1 < … < t_m` of `f` on `A`: the integrand
//! `α ↦ ν({f ≥ α} ∩ A)` is constant on every `(t_{k-1}, t_k]`.

use std::sync::Arc;

use crate::error::Error;
use crate::ext::ExtRational;
use crate::function::SimpleFunction;
use crate::measure::{MonotoneMeasure, SetFunction};
use crate::space::MeasurableSet;
use crate::witness::Witness;

/// One band `(previous, threshold]` of the layer-cake sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub previous: ExtRational,
    pub threshold: ExtRational,
    /// `{f ≥ threshold} ∩ A`.
    pub level_set: MeasurableSet,
    pub measure: ExtRational,
    /// `(threshold − previous) · measure`, with `0 · ∞ = 0`.
    pub contribution: ExtRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralBreakdown {
    pub layers: Vec<Layer>,
    pub total: ExtRational,
}

/// `∫_A f dν` together with its layer decomposition.
pub fn choquet_integral<M: SetFunction + ?Sized>(
    f: &SimpleFunction,
    nu: &M,
    set: MeasurableSet,
) -> Result<IntegralBreakdown, Error> {
    if f.space() != nu.space() || !f.space().contains_set(set) {
        return Err(Error::SpaceMismatch);
    }
    let mut layers = Vec::new();
    let mut previous = ExtRational::zero();
    for t in f.distinct_values_on(set) {
        if t.is_zero() {
            continue;
        }
        let level_set = f.level_set(&t) & set;
        let measure = nu.value(level_set);
        let width = t.checked_sub(&previous).expect("thresholds ascend");
        let contribution = &width * &measure;
        layers.push(Layer {
            previous: std::mem::replace(&mut previous, t.clone()),
            threshold: t,
            level_set,
            measure,
            contribution,
        });
    }
    let total = layers.iter().map(|l| &l.contribution).sum();
    Ok(IntegralBreakdown { layers, total })
}

/// Value of `∫_A f dν` only.
pub fn integral<M: SetFunction + ?Sized>(
    f: &SimpleFunction,
    nu: &M,
    set: MeasurableSet,
) -> Result<ExtRational, Error> {
    Ok(choquet_integral(f, nu, set)?.total)
}

/// The indefinite integral `A ↦ ∫_A f dν`.
pub fn indefinite_integral(f: &SimpleFunction, nu: &MonotoneMeasure) -> Result<MonotoneMeasure, Error> {
    if f.space_arc() != nu.space_arc() {
        return Err(Error::SpaceMismatch);
    }
    let space: Arc<_> = nu.space_arc().clone();
    let table = space
        .sets()?
        .map(|a| integral(f, nu, a))
        .collect::<Result<Vec<_>, _>>()?;
    // monotone in A: every layer {f ≥ t} ∩ A grows with A
    Ok(MonotoneMeasure::from_trusted_table(space, table))
}

/// Whether `f` and `g` never order two atoms strictly oppositely.
///
/// Returns the first offending atom pair in `(i, j)`, `i < j`, order.
pub fn comonotone_witness(f: &SimpleFunction, g: &SimpleFunction) -> Result<Option<Witness>, Error> {
    f.same(g)?;
    let n = f.space().atom_count();
    for i in 0..n {
        for j in i + 1..n {
            let fo = f.get(i).cmp(f.get(j));
            let go = g.get(i).cmp(g.get(j));
            if fo.is_ne() && go.is_ne() && fo != go {
                return Ok(Some(Witness::Comonotone { first: i, second: j }));
            }
        }
    }
    Ok(None)
}

pub fn is_comonotone(f: &SimpleFunction, g: &SimpleFunction) -> Result<bool, Error> {
    Ok(comonotone_witness(f, g)?.is_none())
}
