use std::sync::Arc;

use crate::error::Error;
use crate::ext::ExtRational;
use crate::measure::same_space;
use crate::space::{MeasurableSet, MeasurableSpace};

/// A nonnegative measurable function, constant on each algebra atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleFunction {
    space: Arc<MeasurableSpace>,
    values: Vec<ExtRational>,
}

impl SimpleFunction {
    /// One value per algebra atom.
    pub fn new(space: Arc<MeasurableSpace>, values: Vec<ExtRational>) -> Result<Self, Error> {
        if values.len() != space.atom_count() {
            return Err(Error::Arity {
                expected: space.atom_count(),
                got: values.len(),
            });
        }
        Ok(SimpleFunction { space, values })
    }

    /// One value per point; the values must be constant on algebra atoms.
    pub fn from_point_values(space: Arc<MeasurableSpace>, values: Vec<ExtRational>) -> Result<Self, Error> {
        if values.len() != space.point_count() {
            return Err(Error::Arity {
                expected: space.point_count(),
                got: values.len(),
            });
        }
        let mut per_atom = Vec::with_capacity(space.atom_count());
        for b in 0..space.atom_count() {
            let pts = space.atom_points(b);
            let v = &values[pts[0]];
            if pts.iter().any(|&p| values[p] != *v) {
                return Err(Error::NotMeasurable(space.atom_label(b)));
            }
            per_atom.push(v.clone());
        }
        Ok(SimpleFunction {
            space,
            values: per_atom,
        })
    }

    pub fn constant(space: Arc<MeasurableSpace>, c: ExtRational) -> Self {
        let values = vec![c; space.atom_count()];
        SimpleFunction { space, values }
    }

    /// `χ_A`.
    pub fn indicator(space: Arc<MeasurableSpace>, set: MeasurableSet) -> Self {
        let values = (0..space.atom_count())
            .map(|b| {
                if set.contains(b) {
                    ExtRational::one()
                } else {
                    ExtRational::zero()
                }
            })
            .collect();
        SimpleFunction { space, values }
    }

    pub fn space(&self) -> &MeasurableSpace {
        &self.space
    }

    pub fn space_arc(&self) -> &Arc<MeasurableSpace> {
        &self.space
    }

    /// Value on an algebra atom.
    pub fn get(&self, atom: usize) -> &ExtRational {
        &self.values[atom]
    }

    pub fn values(&self) -> &[ExtRational] {
        &self.values
    }

    /// Value at each point, in point order.
    pub fn point_values(&self) -> Vec<ExtRational> {
        (0..self.space.point_count())
            .map(|p| self.values[self.space.atom_of_point(p)].clone())
            .collect()
    }

    /// `{f ≥ t}`.
    pub fn level_set(&self, t: &ExtRational) -> MeasurableSet {
        self.atoms_where(|v| v >= t)
    }

    /// `{f > t}`.
    pub fn strict_level_set(&self, t: &ExtRational) -> MeasurableSet {
        self.atoms_where(|v| v > t)
    }

    pub fn atoms_where(&self, pred: impl Fn(&ExtRational) -> bool) -> MeasurableSet {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| pred(v))
            .fold(MeasurableSet::EMPTY, |s, (i, _)| s.insert(i))
    }

    /// Distinct values taken on `set`, ascending.
    pub fn distinct_values_on(&self, set: MeasurableSet) -> Vec<ExtRational> {
        let mut vs: Vec<ExtRational> = set.atoms().map(|b| self.values[b].clone()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn max_finite_value(&self) -> Option<ExtRational> {
        self.values.iter().filter(|v| v.is_finite()).max().cloned()
    }

    /// `{f ≠ g}`.
    pub fn difference_set(&self, other: &SimpleFunction) -> Result<MeasurableSet, Error> {
        self.same(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .fold(MeasurableSet::EMPTY, |s, (i, _)| s.insert(i)))
    }

    /// Pointwise `f ≤ g`.
    pub fn le(&self, other: &SimpleFunction) -> Result<bool, Error> {
        self.same(other)?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    pub fn map(&self, f: impl Fn(&ExtRational) -> ExtRational) -> SimpleFunction {
        SimpleFunction {
            space: self.space.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn zip_with(
        &self,
        other: &SimpleFunction,
        f: impl Fn(&ExtRational, &ExtRational) -> ExtRational,
    ) -> Result<SimpleFunction, Error> {
        self.same(other)?;
        Ok(SimpleFunction {
            space: self.space.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &SimpleFunction) -> Result<SimpleFunction, Error> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scale(&self, c: &ExtRational) -> SimpleFunction {
        self.map(|v| c * v)
    }

    /// `f ∧ c`.
    pub fn min_const(&self, c: &ExtRational) -> SimpleFunction {
        self.map(|v| v.clone().min(c.clone()))
    }

    /// `(f − c) ∨ 0`; `∞` stays `∞`.
    pub fn excess_over(&self, c: &ExtRational) -> SimpleFunction {
        self.map(|v| v.checked_sub(c).unwrap_or_else(ExtRational::zero))
    }

    /// `f · χ_A`.
    pub fn restrict(&self, set: MeasurableSet) -> SimpleFunction {
        SimpleFunction {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| if set.contains(i) { v.clone() } else { ExtRational::zero() })
                .collect(),
        }
    }

    pub(crate) fn same(&self, other: &SimpleFunction) -> Result<(), Error> {
        if same_space(&self.space, &other.space) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// `a=1 b=5/2` style rendering.
    pub fn describe(&self) -> String {
        (0..self.space.atom_count())
            .map(|b| format!("{}={}", self.space.atom_label(b), self.values[b]))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExtRational {
        s.parse().unwrap()
    }

    #[test]
    fn level_sets_and_truncations() {
        let s = Arc::new(MeasurableSpace::power_set(&["a", "b", "c"]).unwrap());
        let f = SimpleFunction::new(s.clone(), vec![q("1"), q("3"), ExtRational::infinity()]).unwrap();
        assert_eq!(f.level_set(&q("3")).bits(), 0b110);
        assert_eq!(f.strict_level_set(&q("3")).bits(), 0b100);
        assert_eq!(f.min_const(&q("2")).values(), &[q("1"), q("2"), q("2")]);
        assert_eq!(
            f.excess_over(&q("2")).values(),
            &[q("0"), q("1"), ExtRational::infinity()]
        );
        assert_eq!(f.max_finite_value(), Some(q("3")));
    }

    #[test]
    fn point_values_must_respect_blocks() {
        let blocks = vec![vec!["a".to_string(), "b".to_string()], vec!["c".to_string()]];
        let s = Arc::new(MeasurableSpace::build(&["a", "b", "c"], Some(&blocks)).unwrap());
        assert!(SimpleFunction::from_point_values(s.clone(), vec![q("1"), q("2"), q("3")]).is_err());
        let f = SimpleFunction::from_point_values(s, vec![q("1"), q("1"), q("3")]).unwrap();
        assert_eq!(f.values(), &[q("1"), q("3")]);
    }

    #[test]
    fn space_mismatch_is_reported() {
        let s1 = Arc::new(MeasurableSpace::power_set(&["a"]).unwrap());
        let s2 = Arc::new(MeasurableSpace::power_set(&["b"]).unwrap());
        let f = SimpleFunction::constant(s1, q("1"));
        let g = SimpleFunction::constant(s2, q("1"));
        assert!(matches!(f.add(&g), Err(Error::SpaceMismatch)));
    }
}
