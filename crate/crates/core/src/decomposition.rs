//! Decomposition families and the Radon–Nikodym construction built on them.
//!
//! A decreasing family `{A_α}` indexed by the nonnegative rationals takes only
//! finitely many distinct values on a finite space, so it is stored as a step
//! function: breakpoints `(α_0, A_0), …, (α_m, A_m)` with `α_0 = 0`, `A_0 = U`,
//! `A_0 ⊇ A_1 ⊇ … ⊇ A_m`, and `A_α = A_i` on the band `[α_i, α_{i+1})`
//! (the last band is `[α_m, ∞)`).
//!
//! The step list fixes the family up to its value at the breakpoints
//! themselves. [`DecompositionFamily::at`] reads it right-continuously;
//! [`DecompositionFamily::level_set_at`] reads the left-continuous version,
//! for which `A_α = {f ≥ α}` with `f` the derived function. Both versions
//! have the same derived function and the same decomposition verdicts, since
//! the inequalities are closed under the band limits.
//!
//! One degenerate band is admitted: `α_1 = 0`. Then `A_0 = U` holds only at
//! `α = 0` and `A_α = A_1` on `(0, α_2)`. This is what lets a family encode a
//! function vanishing on some atoms.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::choquet::integral;
use crate::error::Error;
use crate::ext::ExtRational;
use crate::function::SimpleFunction;
use crate::measure::SetFunction;
use crate::space::{MeasurableSet, MeasurableSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Breakpoint {
    pub alpha: BigRational,
    pub set: MeasurableSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionFamily {
    space: Arc<MeasurableSpace>,
    breakpoints: Vec<Breakpoint>,
}

impl DecompositionFamily {
    /// Validates and canonicalizes a breakpoint list (equal consecutive sets
    /// are merged into the earlier breakpoint).
    pub fn new(space: Arc<MeasurableSpace>, list: Vec<(BigRational, MeasurableSet)>) -> Result<Self, Error> {
        let Some((alpha0, set0)) = list.first() else {
            return Err(Error::InvalidFamily("empty breakpoint list".into()));
        };
        if !alpha0.is_zero() {
            return Err(Error::InvalidFamily(format!("first threshold is {alpha0}, not 0")));
        }
        if *set0 != space.full() {
            return Err(Error::InvalidFamily(format!(
                "A_0 = {} is not the whole space",
                space.format_set(*set0)
            )));
        }
        for (k, w) in list.windows(2).enumerate() {
            let (a, sa) = (&w[0].0, w[0].1);
            let (b, sb) = (&w[1].0, w[1].1);
            if b.is_negative() {
                return Err(Error::InvalidFamily(format!("negative threshold {b}")));
            }
            let zero_split = k == 0 && b.is_zero();
            if b <= a && !zero_split {
                return Err(Error::InvalidFamily(format!(
                    "thresholds must increase strictly: {a} then {b}"
                )));
            }
            if !space.contains_set(sb) {
                return Err(Error::NotMeasurable(format!("{:#x}", sb.bits())));
            }
            if !sb.is_subset(sa) {
                return Err(Error::InvalidFamily(format!(
                    "family is not decreasing: {} at {b} is not contained in {} at {a}",
                    space.format_set(sb),
                    space.format_set(sa)
                )));
            }
        }
        let mut breakpoints: Vec<Breakpoint> = Vec::with_capacity(list.len());
        for (alpha, set) in list {
            if breakpoints.last().is_some_and(|b| b.set == set) {
                continue;
            }
            breakpoints.push(Breakpoint { alpha, set });
        }
        Ok(DecompositionFamily { space, breakpoints })
    }

    pub fn space(&self) -> &MeasurableSpace {
        &self.space
    }

    pub fn space_arc(&self) -> &Arc<MeasurableSpace> {
        &self.space
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    /// Index of the last breakpoint, `m`.
    pub fn last_index(&self) -> usize {
        self.breakpoints.len() - 1
    }

    /// `A_m`, the set on the unbounded band.
    pub fn tail_set(&self) -> MeasurableSet {
        self.breakpoints[self.last_index()].set
    }

    /// Right-continuous reading: `A_i` for `α ∈ [α_i, α_{i+1})`, and `U` at `0`.
    pub fn at(&self, alpha: &BigRational) -> MeasurableSet {
        if alpha.is_zero() {
            return self.space.full();
        }
        let i = self.breakpoints.partition_point(|b| b.alpha <= *alpha) - 1;
        self.breakpoints[i].set
    }

    /// Left-continuous reading: `A_i` for `α ∈ (α_i, α_{i+1}]`, and `U` at `0`.
    pub fn level_set_at(&self, alpha: &BigRational) -> MeasurableSet {
        if !alpha.is_positive() {
            return self.space.full();
        }
        let i = self.breakpoints.partition_point(|b| b.alpha < *alpha) - 1;
        self.breakpoints[i].set
    }

    /// Intersects every set with `U_n = prefix` and re-homes the family on
    /// `sub`, whose atoms must be the first atoms of this space.
    pub fn restrict(&self, sub: Arc<MeasurableSpace>) -> Result<DecompositionFamily, Error> {
        let mask = sub.full();
        let list = self
            .breakpoints
            .iter()
            .map(|b| (b.alpha.clone(), b.set & mask))
            .collect();
        DecompositionFamily::new(sub, list)
    }

    /// `[(0,{…}), (1,{…})]` style rendering.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .breakpoints
            .iter()
            .map(|b| format!("({}, {})", b.alpha, self.space.format_set(b.set)))
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

/// `A_α = {f ≥ α}` in canonical step form: a breakpoint at `0` with `U`, then
/// one breakpoint `(v, {f > v})` per distinct finite value `v` of `f`.
/// Atoms where `f = ∞` stay in every set.
pub fn family_from_function(f: &SimpleFunction) -> DecompositionFamily {
    let space = f.space_arc().clone();
    let mut list = vec![(BigRational::zero(), space.full())];
    for v in f.distinct_values_on(space.full()) {
        if let Some(r) = v.as_rational() {
            list.push((r.clone(), f.strict_level_set(&v)));
        }
    }
    DecompositionFamily::new(space, list).expect("level sets of a function form a valid family")
}

/// `f(x) = sup{α | x ∈ A_α}`: `α_{i+1}` for the last breakpoint `i` whose set
/// contains `x`, or `∞` when `x` lies in every set.
pub fn derive_function(family: &DecompositionFamily) -> SimpleFunction {
    let space = family.space_arc().clone();
    let bps = family.breakpoints();
    let values = (0..space.atom_count())
        .map(|x| {
            let last = bps.iter().take_while(|b| b.set.contains(x)).count() - 1;
            match bps.get(last + 1) {
                Some(next) => ExtRational::from(next.alpha.clone()),
                None => ExtRational::infinity(),
            }
        })
        .collect();
    SimpleFunction::new(space, values).expect("one value per atom")
}

pub const MAX_DYADIC_DEPTH: u32 = 16;

/// `f_n = 2^{-n} Σ_{k=1}^{n·2^n} χ_{A_{k/2^n}}`, with `A_α` the level sets of
/// the derived function.
pub fn dyadic_approximant(family: &DecompositionFamily, n: u32) -> Result<SimpleFunction, Error> {
    if n == 0 || n > MAX_DYADIC_DEPTH {
        return Err(Error::InvalidFamily(format!(
            "dyadic depth must lie in 1..={MAX_DYADIC_DEPTH}, got {n}"
        )));
    }
    let space = family.space_arc().clone();
    let scale = BigInt::one() << n;
    let mut counts = vec![0u64; space.atom_count()];
    for k in 1..=(u64::from(n) << n) {
        let alpha = BigRational::new(BigInt::from(k), scale.clone());
        for x in family.level_set_at(&alpha).atoms() {
            counts[x] += 1;
        }
    }
    let values = counts
        .into_iter()
        .map(|c| ExtRational::from(BigRational::new(BigInt::from(c), scale.clone())))
        .collect();
    SimpleFunction::new(space, values)
}

/// One instance of the two-sided inequality
/// `α_{i+1}·Δν ≤ Δμ ≤ α_j·Δν` with `Δ· = ·(A ∩ A_i) − ·(A ∩ A_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRecord {
    pub i: usize,
    pub j: usize,
    pub set: MeasurableSet,
    pub left: BigRational,
    pub middle: BigRational,
    pub right: BigRational,
}

impl PairRecord {
    pub fn holds(&self) -> bool {
        self.left <= self.middle && self.middle <= self.right
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailRecord {
    pub mu: BigRational,
    pub nu: BigRational,
}

impl TailRecord {
    pub fn holds(&self) -> bool {
        self.mu.is_zero() && self.nu.is_zero()
    }
}

/// Maximum number of violating records kept in a report.
pub const MAX_RECORDED_VIOLATIONS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub holds: bool,
    pub sets_checked: usize,
    pub pairs_checked: usize,
    pub violation_count: usize,
    /// First violations in canonical (set, i, j) order.
    pub violations: Vec<PairRecord>,
    pub tail: TailRecord,
}

impl DecompositionReport {
    pub fn witness(&self) -> Option<&PairRecord> {
        self.violations.first()
    }
}

fn finite(v: ExtRational, what: impl FnOnce() -> String) -> Result<BigRational, Error> {
    v.into_rational().ok_or_else(|| Error::InfiniteValue(what()))
}

fn same_space(a: &MeasurableSpace, b: &MeasurableSpace) -> Result<(), Error> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// All pair inequalities for a single test set `A`.
pub fn pair_records<M: SetFunction, N: SetFunction>(
    mu: &M,
    nu: &N,
    family: &DecompositionFamily,
    set: MeasurableSet,
) -> Result<Vec<PairRecord>, Error> {
    let mut out = Vec::new();
    scan_pairs(mu, nu, family, set, PairScope::All, |r| out.push(r))?;
    Ok(out)
}

/// Which breakpoint pairs `i < j` a check visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairScope {
    All,
    /// Only `j = i + 1`. Equivalent to [`PairScope::All`] for monotone `ν`:
    /// consecutive pairs force `Δμ = α_{i+1}·Δν` band by band, and summing
    /// bands between `i` and `j` lands between `α_{i+1}·Δν` and `α_j·Δν`
    /// because every band increment of `ν` is nonnegative.
    Consecutive,
}

fn scan_pairs<M: SetFunction, N: SetFunction>(
    mu: &M,
    nu: &N,
    family: &DecompositionFamily,
    set: MeasurableSet,
    scope: PairScope,
    mut sink: impl FnMut(PairRecord),
) -> Result<usize, Error> {
    let bps = family.breakpoints();
    let label = |m: &str, s: MeasurableSet| format!("{m}({})", family.space().format_set(s));
    let mut mus = Vec::with_capacity(bps.len());
    let mut nus = Vec::with_capacity(bps.len());
    for b in bps {
        let s = set & b.set;
        mus.push(finite(mu.value(s), || label("mu", s))?);
        nus.push(finite(nu.value(s), || label("nu", s))?);
    }
    let mut pairs = 0;
    for i in 0..bps.len() {
        let stop = match scope {
            PairScope::All => bps.len(),
            PairScope::Consecutive => (i + 2).min(bps.len()),
        };
        for j in i + 1..stop {
            let dnu = &nus[i] - &nus[j];
            sink(PairRecord {
                i,
                j,
                set,
                left: &bps[i + 1].alpha * &dnu,
                middle: &mus[i] - &mus[j],
                right: &bps[j].alpha * &dnu,
            });
            pairs += 1;
        }
    }
    Ok(pairs)
}

/// Checks the decomposition inequalities for every measurable set and every
/// breakpoint pair `i < j`, plus the tail condition `μ(A_m) = ν(A_m) = 0`.
///
/// For `α ∈ [α_i, α_{i+1})` and `β ∈ [α_j, α_{j+1})` both sides of the
/// inequality only depend on `(i, j)`, and the strongest instances are the
/// limits `α → α_{i+1}` and `β → α_j`. Pairs inside one band are trivial.
pub fn check_decomposition<M: SetFunction, N: SetFunction>(
    mu: &M,
    nu: &N,
    family: &DecompositionFamily,
) -> Result<DecompositionReport, Error> {
    let sets = family.space().sets()?;
    check_decomposition_on(mu, nu, family, sets)
}

/// [`check_decomposition`] restricted to the given test sets.
pub fn check_decomposition_on<M: SetFunction, N: SetFunction>(
    mu: &M,
    nu: &N,
    family: &DecompositionFamily,
    sets: impl IntoIterator<Item = MeasurableSet>,
) -> Result<DecompositionReport, Error> {
    check_decomposition_scoped(mu, nu, family, sets, PairScope::All)
}

pub fn check_decomposition_scoped<M: SetFunction, N: SetFunction>(
    mu: &M,
    nu: &N,
    family: &DecompositionFamily,
    sets: impl IntoIterator<Item = MeasurableSet>,
    scope: PairScope,
) -> Result<DecompositionReport, Error> {
    same_space(mu.space(), family.space())?;
    same_space(nu.space(), family.space())?;
    let full = family.space().full();
    finite(mu.value(full), || "mu(U)".into())?;
    finite(nu.value(full), || "nu(U)".into())?;

    let mut sets_checked = 0;
    let mut pairs_checked = 0;
    let mut violation_count = 0;
    let mut violations = Vec::new();
    for set in sets {
        sets_checked += 1;
        pairs_checked += scan_pairs(mu, nu, family, set, scope, |r| {
            if !r.holds() {
                violation_count += 1;
                if violations.len() < MAX_RECORDED_VIOLATIONS {
                    violations.push(r);
                }
            }
        })?;
    }
    let tail_set = family.tail_set();
    let tail = TailRecord {
        mu: finite(mu.value(tail_set), || "mu(A_m)".into())?,
        nu: finite(nu.value(tail_set), || "nu(A_m)".into())?,
    };
    Ok(DecompositionReport {
        holds: violation_count == 0 && tail.holds(),
        sets_checked,
        pairs_checked,
        violation_count,
        violations,
        tail,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RnFailure {
    pub set: MeasurableSet,
    pub measure: ExtRational,
    pub integral: ExtRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RnReport {
    pub holds: bool,
    pub sets_checked: usize,
    pub failures: Vec<RnFailure>,
}

/// Checks `μ(A) = ∫_A f dν` exactly on every measurable set.
pub fn verify_rn<M: SetFunction, N: SetFunction>(mu: &M, nu: &N, f: &SimpleFunction) -> Result<RnReport, Error> {
    let sets = f.space().sets()?;
    verify_rn_on(mu, nu, f, sets)
}

pub fn verify_rn_on<M: SetFunction, N: SetFunction>(
    mu: &M,
    nu: &N,
    f: &SimpleFunction,
    sets: impl IntoIterator<Item = MeasurableSet>,
) -> Result<RnReport, Error> {
    same_space(mu.space(), f.space())?;
    let mut failures = Vec::new();
    let mut sets_checked = 0;
    for set in sets {
        sets_checked += 1;
        let measure = mu.value(set);
        let value = integral(f, nu, set)?;
        if measure != value {
            failures.push(RnFailure {
                set,
                measure,
                integral: value,
            });
        }
    }
    Ok(RnReport {
        holds: failures.is_empty(),
        sets_checked,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaRecord {
    pub i: usize,
    /// `α_{i+1} · ν(A_i)`.
    pub scaled_nu: ExtRational,
    /// `μ(A_i)`.
    pub mu: ExtRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub holds: bool,
    pub records: Vec<LemmaRecord>,
}

/// Finite form of the tail lemma: `α_{i+1} · ν(A_i) ≤ μ(A_i)` for `i < m`.
pub fn lemma_tail_check<M: SetFunction, N: SetFunction>(
    mu: &M,
    nu: &N,
    family: &DecompositionFamily,
) -> Result<LemmaReport, Error> {
    same_space(mu.space(), family.space())?;
    same_space(nu.space(), family.space())?;
    let bps = family.breakpoints();
    let records: Vec<LemmaRecord> = (0..family.last_index())
        .map(|i| LemmaRecord {
            i,
            scaled_nu: &ExtRational::from(bps[i + 1].alpha.clone()) * &nu.value(bps[i].set),
            mu: mu.value(bps[i].set),
        })
        .collect();
    Ok(LemmaReport {
        holds: records.iter().all(|r| r.scaled_nu <= r.mu),
        records,
    })
}
