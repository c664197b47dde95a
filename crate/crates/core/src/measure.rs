//! Monotone measures on finite spaces.

use std::sync::Arc;

use crate::error::Error;
use crate::ext::ExtRational;
use crate::space::{MeasurableSet, MeasurableSpace, MAX_ENUMERABLE_ATOMS};
use crate::witness::Witness;

/// Anything that assigns a value in `[0, ∞]` to the measurable sets of a space.
///
/// Materialized measures implement it by table lookup; the truncation models
/// evaluate rules lazily so they can live on spaces too large to tabulate.
pub trait SetFunction {
    fn space(&self) -> &MeasurableSpace;
    fn value(&self, set: MeasurableSet) -> ExtRational;
}

impl<T: SetFunction + ?Sized> SetFunction for &T {
    fn space(&self) -> &MeasurableSpace {
        (**self).space()
    }
    fn value(&self, set: MeasurableSet) -> ExtRational {
        (**self).value(set)
    }
}

/// Shorthand ways of specifying a measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Values for every nonempty measurable set (the empty set may be omitted).
    Explicit(Vec<(MeasurableSet, ExtRational)>),
    /// Additive measure from one weight per point.
    Additive(Vec<ExtRational>),
    /// `1` on the whole space, `0` elsewhere.
    IndicatorFull,
    /// Largest point weight in the set (`0` on `∅`).
    MaxWeight(Vec<ExtRational>),
    /// `scale · |A|` with `|A|` the number of points.
    Cardinality(ExtRational),
}

/// A fully materialized monotone measure: `m(∅) = 0` and `A ⊆ B ⇒ m(A) ≤ m(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMeasure {
    space: Arc<MeasurableSpace>,
    table: Vec<ExtRational>,
}

impl MonotoneMeasure {
    pub fn from_generator(space: Arc<MeasurableSpace>, generator: &Generator) -> Result<Self, Error> {
        let count = space.set_count()?;
        let points = space.point_count();
        let table = match generator {
            Generator::Explicit(entries) => {
                let mut table: Vec<Option<ExtRational>> = vec![None; count];
                table[0] = Some(ExtRational::zero());
                for (set, v) in entries {
                    if !space.contains_set(*set) {
                        return Err(Error::NotMeasurable(format!("{:#x}", set.bits())));
                    }
                    table[set.bits() as usize] = Some(v.clone());
                }
                let table = table
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| {
                        v.ok_or_else(|| {
                            Error::MissingEntry(
                                space.set_names(MeasurableSet::from_bits(i as u128)).join(","),
                            )
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                // explicit tables carry no proof, so scan them in full
                return Self::from_table(space, table);
            }
            Generator::Additive(weights) => {
                check_arity(points, weights.len())?;
                let atom_w: Vec<ExtRational> = (0..space.atom_count())
                    .map(|b| space.atom_points(b).iter().map(|&p| &weights[p]).sum())
                    .collect();
                tabulate(&space, |a| a.atoms().map(|b| &atom_w[b]).sum())
            }
            Generator::IndicatorFull => {
                let full = space.full();
                tabulate(&space, |a| {
                    if a == full {
                        ExtRational::one()
                    } else {
                        ExtRational::zero()
                    }
                })
            }
            Generator::MaxWeight(weights) => {
                check_arity(points, weights.len())?;
                let atom_w: Vec<ExtRational> = (0..space.atom_count())
                    .map(|b| {
                        space
                            .atom_points(b)
                            .iter()
                            .map(|&p| weights[p].clone())
                            .max()
                            .unwrap_or_else(ExtRational::zero)
                    })
                    .collect();
                tabulate(&space, |a| {
                    a.atoms()
                        .map(|b| atom_w[b].clone())
                        .max()
                        .unwrap_or_else(ExtRational::zero)
                })
            }
            Generator::Cardinality(scale) => tabulate(&space, |a| {
                scale * &ExtRational::from_integer(space.point_len(a) as u64)
            }),
        };
        // Additive, max-weight and cardinality measures with nonnegative
        // weights are monotone and vanish at ∅ by construction.
        Ok(MonotoneMeasure { space, table })
    }

    /// Validates a full table indexed by set bit mask.
    pub fn from_table(space: Arc<MeasurableSpace>, table: Vec<ExtRational>) -> Result<Self, Error> {
        let count = space.set_count()?;
        check_arity(count, table.len())?;
        if let Some(w) = monotonicity_violation(&space, |a| table[a.bits() as usize].clone()) {
            return Err(Error::InvalidMeasure(w));
        }
        Ok(MonotoneMeasure { space, table })
    }

    /// Tabulates and validates an arbitrary set function.
    pub fn from_fn(
        space: Arc<MeasurableSpace>,
        f: impl FnMut(MeasurableSet) -> ExtRational,
    ) -> Result<Self, Error> {
        let table = tabulate(&space, f);
        Self::from_table(space, table)
    }

    /// Table known to be monotone by construction.
    pub(crate) fn from_trusted_table(space: Arc<MeasurableSpace>, table: Vec<ExtRational>) -> Self {
        debug_assert!(monotonicity_violation(&space, |a| table[a.bits() as usize].clone()).is_none());
        MonotoneMeasure { space, table }
    }

    pub fn zero(space: Arc<MeasurableSpace>) -> Result<Self, Error> {
        let table = tabulate(&space, |_| ExtRational::zero());
        Ok(MonotoneMeasure { space, table })
    }

    pub fn space_arc(&self) -> &Arc<MeasurableSpace> {
        &self.space
    }

    /// Values indexed by set bit mask.
    pub fn table(&self) -> &[ExtRational] {
        &self.table
    }

    pub fn get(&self, set: MeasurableSet) -> &ExtRational {
        &self.table[set.bits() as usize]
    }

    /// `m(U) < ∞`.
    pub fn is_finite(&self) -> bool {
        self.get(self.space.full()).is_finite()
    }

    pub fn require_finite(&self, name: &str) -> Result<(), Error> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::InfiniteValue(format!("{name}(U)")))
        }
    }

    /// `m(A) = Σ_{x ∈ A} m({x})` over algebra atoms, for every `A`.
    pub fn is_additive(&self) -> bool {
        let singles: Vec<&ExtRational> =
            (0..self.space.atom_count()).map(|b| self.get(MeasurableSet::singleton(b))).collect();
        self.space
            .sets()
            .expect("materialized measure is enumerable")
            .all(|a| *self.get(a) == a.atoms().map(|b| singles[b]).sum::<ExtRational>())
    }

    /// Value on each algebra atom.
    pub fn atom_weights(&self) -> Vec<ExtRational> {
        (0..self.space.atom_count())
            .map(|b| self.get(MeasurableSet::singleton(b)).clone())
            .collect()
    }

    /// Setwise sum `(m + other)(A) = m(A) + other(A)`.
    pub fn sum(&self, other: &MonotoneMeasure) -> Result<MonotoneMeasure, Error> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        let table = self.table.iter().zip(&other.table).map(|(a, b)| a + b).collect();
        Ok(MonotoneMeasure::from_trusted_table(self.space.clone(), table))
    }
}

impl SetFunction for MonotoneMeasure {
    fn space(&self) -> &MeasurableSpace {
        &self.space
    }
    fn value(&self, set: MeasurableSet) -> ExtRational {
        self.get(set).clone()
    }
}

pub(crate) fn same_space(a: &Arc<MeasurableSpace>, b: &Arc<MeasurableSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn check_arity(expected: usize, got: usize) -> Result<(), Error> {
    if expected != got {
        return Err(Error::Arity { expected, got });
    }
    Ok(())
}

fn tabulate(space: &MeasurableSpace, mut f: impl FnMut(MeasurableSet) -> ExtRational) -> Vec<ExtRational> {
    space
        .sets()
        .expect("caller checked enumerability")
        .map(&mut f)
        .collect()
}

/// First violation of vanishing/monotonicity in canonical order.
///
/// Checking each set against its covering subsets `A ∖ {x}` suffices: any
/// comparable pair is joined by a chain of covering pairs.
pub fn monotonicity_violation(
    space: &MeasurableSpace,
    m: impl Fn(MeasurableSet) -> ExtRational,
) -> Option<Witness> {
    let empty = m(MeasurableSet::EMPTY);
    if !empty.is_zero() {
        return Some(Witness::NotVanishing { value: empty });
    }
    if space.atom_count() > MAX_ENUMERABLE_ATOMS {
        return None;
    }
    for a in space.sets().ok()? {
        let va = m(a);
        for x in a.atoms() {
            let sub = a.remove(x);
            let vs = m(sub);
            if vs > va {
                return Some(Witness::Monotonicity {
                    subset: sub,
                    superset: a,
                    subset_value: vs,
                    superset_value: va,
                });
            }
        }
    }
    None
}
