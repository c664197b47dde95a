use std::fmt;

use crate::ext::ExtRational;
use crate::space::{MeasurableSet, MeasurableSpace};

/// Concrete data falsifying a property; re-evaluating the property on it
/// reproduces the violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `m(∅) ≠ 0`.
    NotVanishing { value: ExtRational },
    /// `subset ⊆ superset` but `m(subset) > m(superset)`.
    Monotonicity {
        subset: MeasurableSet,
        superset: MeasurableSet,
        subset_value: ExtRational,
        superset_value: ExtRational,
    },
    /// Two null sets with a non-null union.
    NullUnion {
        first: MeasurableSet,
        second: MeasurableSet,
        union_value: ExtRational,
    },
    /// Adjoining the null set `null_set` changes the measure of `set`.
    NullAdjunction {
        set: MeasurableSet,
        null_set: MeasurableSet,
        set_value: ExtRational,
        union_value: ExtRational,
    },
    /// `ν(set) = 0 < μ(set)`.
    AbsoluteContinuity { set: MeasurableSet, mu_value: ExtRational },
    /// `f` and `g` order the two atoms oppositely.
    Comonotone { first: usize, second: usize },
}

impl Witness {
    /// Human-readable rendering with atom names.
    pub fn describe(&self, space: &MeasurableSpace) -> String {
        let s = |a: &MeasurableSet| space.format_set(*a);
        match self {
            Witness::NotVanishing { value } => format!("m({{}}) = {value} != 0"),
            Witness::Monotonicity {
                subset,
                superset,
                subset_value,
                superset_value,
            } => format!(
                "m({}) = {subset_value} > m({}) = {superset_value}",
                s(subset),
                s(superset)
            ),
            Witness::NullUnion {
                first,
                second,
                union_value,
            } => format!(
                "m({}) = m({}) = 0 but m(union) = {union_value}",
                s(first),
                s(second)
            ),
            Witness::NullAdjunction {
                set,
                null_set,
                set_value,
                union_value,
            } => format!(
                "m({}) = 0 but m({} ∪ {}) = {union_value} != {set_value}",
                s(null_set),
                s(set),
                s(null_set)
            ),
            Witness::AbsoluteContinuity { set, mu_value } => {
                format!("nu({}) = 0 < mu = {mu_value}", s(set))
            }
            Witness::Comonotone { first, second } => format!(
                "atoms {} and {} are ordered oppositely",
                space.atom_label(*first),
                space.atom_label(*second)
            ),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Witness::NotVanishing { .. } => "not_vanishing",
            Witness::Monotonicity { .. } => "monotonicity",
            Witness::NullUnion { .. } => "null_union",
            Witness::NullAdjunction { .. } => "null_adjunction",
            Witness::AbsoluteContinuity { .. } => "absolute_continuity",
            Witness::Comonotone { .. } => "comonotone",
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} witness {:?}", self.kind(), self)
    }
}
