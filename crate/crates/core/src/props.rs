//! Regularity classifiers and absolute-continuity relations.
//!
//! All scans run over the finite algebra in canonical set order, so the
//! reported witness is the first violation in that order.

use crate::error::Error;
use crate::ext::ExtRational;
use crate::function::SimpleFunction;
use crate::measure::MonotoneMeasure;
use crate::space::MeasurableSet;
use crate::witness::Witness;

/// Reduction recorded alongside every property (σ) verdict.
pub const PROPERTY_SIGMA_NOTE: &str = "on a finite algebra every increasing sequence of sets is \
eventually constant, so null-continuity (and lower continuity) hold automatically; \
property (sigma) reduces to weak null-additivity";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub note: Option<&'static str>,
}

impl Verdict {
    fn from_witness(witness: Option<Witness>) -> Self {
        Verdict {
            holds: witness.is_none(),
            witness,
            note: None,
        }
    }
}

fn null_sets(m: &MonotoneMeasure) -> Vec<MeasurableSet> {
    m.space_arc()
        .sets()
        .expect("materialized")
        .filter(|&a| m.get(a).is_zero())
        .collect()
}

/// `m(A₁) = m(A₂) = 0 ⇒ m(A₁ ∪ A₂) = 0`.
pub fn is_weakly_null_additive(m: &MonotoneMeasure) -> Verdict {
    let nulls = null_sets(m);
    for (i, &a) in nulls.iter().enumerate() {
        for &b in &nulls[i + 1..] {
            let u = m.get(a | b);
            if !u.is_zero() {
                return Verdict::from_witness(Some(Witness::NullUnion {
                    first: a,
                    second: b,
                    union_value: u.clone(),
                }));
            }
        }
    }
    Verdict::from_witness(None)
}

/// `m(N) = 0 ⇒ m(A ∪ N) = m(A)` for every `A`.
pub fn is_null_additive(m: &MonotoneMeasure) -> Verdict {
    let nulls = null_sets(m);
    for a in m.space_arc().sets().expect("materialized") {
        for &n in &nulls {
            let u = m.get(a | n);
            if u != m.get(a) {
                return Verdict::from_witness(Some(Witness::NullAdjunction {
                    set: a,
                    null_set: n,
                    set_value: m.get(a).clone(),
                    union_value: u.clone(),
                }));
            }
        }
    }
    Verdict::from_witness(None)
}

/// Null sets form a σ-ideal. On finite spaces this is weak null-additivity.
pub fn has_property_sigma(m: &MonotoneMeasure) -> Verdict {
    Verdict {
        note: Some(PROPERTY_SIGMA_NOTE),
        ..is_weakly_null_additive(m)
    }
}

/// `μ ≪ ν`: every `ν`-null set is `μ`-null.
pub fn abs_continuous(mu: &MonotoneMeasure, nu: &MonotoneMeasure) -> Result<Verdict, Error> {
    same(mu, nu)?;
    let witness = mu
        .space_arc()
        .sets()?
        .find(|&a| nu.get(a).is_zero() && !mu.get(a).is_zero())
        .map(|a| Witness::AbsoluteContinuity {
            set: a,
            mu_value: mu.get(a).clone(),
        });
    Ok(Verdict::from_witness(witness))
}

/// `δ(ε) = min{ν(A) : μ(A) ≥ ε}` for one positive value `ε` of `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus {
    pub epsilon: ExtRational,
    pub delta: ExtRational,
    /// First set attaining the minimum.
    pub attained_at: MeasurableSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongContinuity {
    pub holds: bool,
    pub moduli: Vec<Modulus>,
}

/// `μ ≪ˢ ν`, decided through the finite `(ε, δ)` table.
///
/// Only the distinct positive values of `μ` need checking: for any `ε > 0`
/// the sets with `μ(A) ≥ ε` are those with `μ(A) ≥ ε'` for the least value
/// `ε' ≥ ε` that `μ` takes.
pub fn strongly_abs_continuous(mu: &MonotoneMeasure, nu: &MonotoneMeasure) -> Result<StrongContinuity, Error> {
    same(mu, nu)?;
    mu.require_finite("mu")?;
    let mut eps: Vec<ExtRational> = mu.table().iter().filter(|v| !v.is_zero()).cloned().collect();
    eps.sort();
    eps.dedup();
    let sets: Vec<MeasurableSet> = mu.space_arc().sets()?.collect();
    let moduli: Vec<Modulus> = eps
        .into_iter()
        .map(|epsilon| {
            let (attained_at, delta) = sets
                .iter()
                .filter(|&&a| *mu.get(a) >= epsilon)
                .map(|&a| (a, nu.get(a).clone()))
                .min_by(|x, y| x.1.cmp(&y.1))
                .expect("U attains the largest value");
            Modulus {
                epsilon,
                delta,
                attained_at,
            }
        })
        .collect();
    let holds = moduli.iter().all(|m| !m.delta.is_zero());
    Ok(StrongContinuity { holds, moduli })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AeComparison {
    pub equal: bool,
    pub difference_set: MeasurableSet,
    pub measure: ExtRational,
}

/// `f = g` a.e.\[ν\], i.e. `ν({f ≠ g}) = 0`.
pub fn equal_ae(f: &SimpleFunction, g: &SimpleFunction, nu: &MonotoneMeasure) -> Result<AeComparison, Error> {
    if f.space() != &**nu.space_arc() {
        return Err(Error::SpaceMismatch);
    }
    let difference_set = f.difference_set(g)?;
    let measure = nu.get(difference_set).clone();
    Ok(AeComparison {
        equal: measure.is_zero(),
        difference_set,
        measure,
    })
}

fn same(a: &MonotoneMeasure, b: &MonotoneMeasure) -> Result<(), Error> {
    if crate::measure::same_space(a.space_arc(), b.space_arc()) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}
