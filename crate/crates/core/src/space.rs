//! Finite measurable spaces and their measurable sets.
//!
//! A finite σ-algebra is determined by its atoms (a partition of the points),
//! so every measurable set is stored as a bit mask over algebra atoms.

use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use crate::error::Error;

/// Largest number of points (and hence algebra atoms) a space may have.
pub const MAX_POINTS: usize = 128;

/// Largest algebra for which all `2^k` measurable sets are enumerated.
pub const MAX_ENUMERABLE_ATOMS: usize = 20;

/// A measurable set, as a bit mask over the algebra atoms of its space.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeasurableSet(u128);

impl MeasurableSet {
    pub const EMPTY: MeasurableSet = MeasurableSet(0);

    pub fn from_bits(bits: u128) -> Self {
        MeasurableSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(atom: usize) -> Self {
        MeasurableSet(1u128 << atom)
    }

    /// First `n` atoms.
    pub fn prefix(n: usize) -> Self {
        if n >= 128 {
            MeasurableSet(u128::MAX)
        } else {
            MeasurableSet((1u128 << n) - 1)
        }
    }

    pub fn contains(self, atom: usize) -> bool {
        atom < 128 && self.0 >> atom & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: MeasurableSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn insert(self, atom: usize) -> Self {
        MeasurableSet(self.0 | 1u128 << atom)
    }

    pub fn remove(self, atom: usize) -> Self {
        MeasurableSet(self.0 & !(1u128 << atom))
    }

    /// Atom indices in ascending order.
    pub fn atoms(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }
}

impl BitOr for MeasurableSet {
    type Output = MeasurableSet;
    fn bitor(self, rhs: Self) -> Self {
        MeasurableSet(self.0 | rhs.0)
    }
}

impl BitAnd for MeasurableSet {
    type Output = MeasurableSet;
    fn bitand(self, rhs: Self) -> Self {
        MeasurableSet(self.0 & rhs.0)
    }
}

impl Sub for MeasurableSet {
    type Output = MeasurableSet;
    fn sub(self, rhs: Self) -> Self {
        MeasurableSet(self.0 & !rhs.0)
    }
}

impl Not for MeasurableSet {
    type Output = MeasurableSet;
    /// Bitwise complement over all 128 slots; intersect with `space.full()`.
    fn not(self) -> Self {
        MeasurableSet(!self.0)
    }
}

/// How the σ-algebra is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    PowerSet,
    /// Generated by a partition of the points (blocks as point indices).
    Partition(Vec<Vec<usize>>),
}

/// A finite universe of named points with a σ-algebra given by its atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurableSpace {
    names: Vec<String>,
    algebra: Algebra,
    // algebra atom -> points, ordered by smallest point
    blocks: Vec<Vec<usize>>,
    point_block: Vec<usize>,
}

impl MeasurableSpace {
    /// Power-set space over the given atom names.
    pub fn power_set<S: AsRef<str>>(names: &[S]) -> Result<Self, Error> {
        Self::build(names, None)
    }

    /// Builds a space; with `partition`, the algebra is the one generated by
    /// the given blocks of point names.
    pub fn build<S: AsRef<str>>(names: &[S], partition: Option<&[Vec<String>]>) -> Result<Self, Error> {
        if names.is_empty() {
            return Err(Error::EmptySpace);
        }
        if names.len() > MAX_POINTS {
            return Err(Error::TooManyAtoms {
                atoms: names.len(),
                limit: MAX_POINTS,
            });
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.as_str(), i).is_some() {
                return Err(Error::DuplicateAtom(n.clone()));
            }
        }
        let (algebra, mut blocks) = match partition {
            None => (Algebra::PowerSet, (0..names.len()).map(|i| vec![i]).collect::<Vec<_>>()),
            Some(parts) => {
                let mut seen = vec![false; names.len()];
                let mut blocks = Vec::with_capacity(parts.len());
                for part in parts {
                    if part.is_empty() {
                        return Err(Error::InvalidPartition("empty block".into()));
                    }
                    let mut block = Vec::with_capacity(part.len());
                    for n in part {
                        let &i = index
                            .get(n.as_str())
                            .ok_or_else(|| Error::UnknownAtom(n.clone()))?;
                        if seen[i] {
                            return Err(Error::InvalidPartition(format!(
                                "atom {n:?} appears in more than one block"
                            )));
                        }
                        seen[i] = true;
                        block.push(i);
                    }
                    block.sort_unstable();
                    blocks.push(block);
                }
                if let Some(i) = seen.iter().position(|s| !s) {
                    return Err(Error::InvalidPartition(format!(
                        "atom {:?} is not covered",
                        names[i]
                    )));
                }
                blocks.sort();
                (Algebra::Partition(blocks.clone()), blocks)
            }
        };
        blocks.sort();
        let mut point_block = vec![0; names.len()];
        for (b, block) in blocks.iter().enumerate() {
            for &p in block {
                point_block[p] = b;
            }
        }
        Ok(MeasurableSpace {
            names,
            algebra,
            blocks,
            point_block,
        })
    }

    /// Integer-labelled power-set space `{0, 1, …, n-1}`.
    pub fn integers(n: usize) -> Result<Self, Error> {
        let names: Vec<String> = (0..n).map(|k| k.to_string()).collect();
        Self::power_set(&names)
    }

    pub fn point_names(&self) -> &[String] {
        &self.names
    }

    pub fn point_count(&self) -> usize {
        self.names.len()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn is_power_set(&self) -> bool {
        matches!(self.algebra, Algebra::PowerSet)
    }

    /// Number of algebra atoms.
    pub fn atom_count(&self) -> usize {
        self.blocks.len()
    }

    /// Points making up an algebra atom.
    pub fn atom_points(&self, atom: usize) -> &[usize] {
        &self.blocks[atom]
    }

    pub fn atom_of_point(&self, point: usize) -> usize {
        self.point_block[point]
    }

    /// Display label of an algebra atom: the point name, or `{p,q,…}` for a block.
    pub fn atom_label(&self, atom: usize) -> String {
        match self.blocks[atom].as_slice() {
            [p] => self.names[*p].clone(),
            ps => format!(
                "{{{}}}",
                ps.iter().map(|&p| self.names[p].as_str()).collect::<Vec<_>>().join(",")
            ),
        }
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn full(&self) -> MeasurableSet {
        MeasurableSet::prefix(self.atom_count())
    }

    pub fn empty(&self) -> MeasurableSet {
        MeasurableSet::EMPTY
    }

    pub fn complement(&self, set: MeasurableSet) -> MeasurableSet {
        self.full() - set
    }

    pub fn contains_set(&self, set: MeasurableSet) -> bool {
        set.is_subset(self.full())
    }

    /// Number of measurable sets, `2^k`.
    pub fn set_count(&self) -> Result<usize, Error> {
        self.require_enumerable(MAX_ENUMERABLE_ATOMS)?;
        Ok(1usize << self.atom_count())
    }

    pub fn require_enumerable(&self, limit: usize) -> Result<(), Error> {
        if self.atom_count() > limit {
            return Err(Error::TooManyAtoms {
                atoms: self.atom_count(),
                limit,
            });
        }
        Ok(())
    }

    /// All measurable sets in canonical order (ascending bit mask).
    pub fn sets(&self) -> Result<impl Iterator<Item = MeasurableSet>, Error> {
        let count = self.set_count()? as u128;
        Ok((0..count).map(MeasurableSet::from_bits))
    }

    /// The measurable set with exactly these points; errors when the points do
    /// not form a union of algebra atoms.
    pub fn set_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<MeasurableSet, Error> {
        let mut points = vec![false; self.point_count()];
        for n in names {
            let i = self
                .point_index(n.as_ref())
                .ok_or_else(|| Error::UnknownAtom(n.as_ref().to_string()))?;
            points[i] = true;
        }
        let mut set = MeasurableSet::EMPTY;
        for (b, block) in self.blocks.iter().enumerate() {
            let hit = block.iter().filter(|&&p| points[p]).count();
            if hit == block.len() {
                set = set.insert(b);
            } else if hit > 0 {
                let listed: Vec<&str> = names.iter().map(|s| s.as_ref()).collect();
                return Err(Error::NotMeasurable(listed.join(",")));
            }
        }
        Ok(set)
    }

    /// Point names of a set in canonical point order.
    pub fn set_names(&self, set: MeasurableSet) -> Vec<String> {
        let mut points: Vec<usize> = set.atoms().flat_map(|b| self.blocks[b].iter().copied()).collect();
        points.sort_unstable();
        points.into_iter().map(|p| self.names[p].clone()).collect()
    }

    /// Number of points in a set (not algebra atoms).
    pub fn point_len(&self, set: MeasurableSet) -> usize {
        set.atoms().map(|b| self.blocks[b].len()).sum()
    }

    /// `{a,b}` style rendering.
    pub fn format_set(&self, set: MeasurableSet) -> String {
        format!("{{{}}}", self.set_names(set).join(","))
    }
}

impl fmt::Display for MeasurableSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U = {{{}}}", self.names.join(","))?;
        if let Algebra::Partition(_) = self.algebra {
            let blocks: Vec<String> = (0..self.atom_count()).map(|b| self.atom_label(b)).collect();
            write!(f, ", algebra generated by {}", blocks.join(" "))?;
        }
        Ok(())
    }
}
