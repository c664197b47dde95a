//! Countable spaces seen through nested truncations `U_n = {0, 1, …, n}`.
//!
//! Measures and families are given by rules defined on all finite sets of
//! integers, so evaluating a set `A ⊆ U_m` gives the same answer in every
//! `U_n ⊇ U_m`. Per-truncation tables carry no such guarantee and are checked
//! explicitly. Every statement here is about finitely many truncations: the
//! values at `N_max` are truncated limit evidence, not limits.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Signed;

use crate::choquet::integral;
use crate::decomposition::{
    check_decomposition_scoped, derive_function, family_from_function, DecompositionFamily, DecompositionReport,
    PairScope,
};
use crate::error::Error;
use crate::ext::ExtRational;
use crate::function::SimpleFunction;
use crate::measure::{MonotoneMeasure, SetFunction};
use crate::space::{MeasurableSet, MeasurableSpace, MAX_ENUMERABLE_ATOMS};

pub const DEFAULT_N_MAX: usize = 16;
pub const MAX_N_MAX: usize = 64;

/// How a measure is evaluated on finite sets of integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasureRule {
    /// `1` on nonempty sets.
    IndicatorNonempty,
    /// `c` on nonempty sets.
    ConstantNonempty(ExtRational),
    /// `max A`, and `0` on `∅`.
    MaxElement,
    /// `Σ_{k ∈ A} w_k`; needs a weight for every point of `U_{N_max}`.
    Additive(Vec<ExtRational>),
    /// `Σ_{k ∈ A} first · ratio^k`.
    Geometric { first: BigRational, ratio: BigRational },
    /// `scale · |A|`.
    Cardinality(ExtRational),
    /// One table per truncation, entry `n - 1` living on `U_n`.
    Explicit(Vec<MonotoneMeasure>),
}

impl MeasureRule {
    pub fn name(&self) -> &'static str {
        match self {
            MeasureRule::IndicatorNonempty => "indicator_nonempty",
            MeasureRule::ConstantNonempty(_) => "constant_nonempty",
            MeasureRule::MaxElement => "max_element",
            MeasureRule::Additive(_) => "additive",
            MeasureRule::Geometric { .. } => "geometric",
            MeasureRule::Cardinality(_) => "cardinality",
            MeasureRule::Explicit(_) => "explicit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Compiled {
    Nonempty(ExtRational),
    Max,
    Weights(Vec<ExtRational>),
    Tables(Vec<MonotoneMeasure>),
}

impl Compiled {
    fn new(rule: &MeasureRule, points: usize) -> Result<Self, Error> {
        Ok(match rule {
            MeasureRule::IndicatorNonempty => Compiled::Nonempty(ExtRational::one()),
            MeasureRule::ConstantNonempty(c) => Compiled::Nonempty(c.clone()),
            MeasureRule::MaxElement => Compiled::Max,
            MeasureRule::Additive(w) => {
                if w.len() < points {
                    return Err(Error::Truncation(format!(
                        "additive rule has {} weights, U_N_max has {points} points",
                        w.len()
                    )));
                }
                Compiled::Weights(w[..points].to_vec())
            }
            MeasureRule::Geometric { first, ratio } => {
                if first.is_negative() || ratio.is_negative() {
                    return Err(Error::NegativeValue(format!("geometric rule {first}, {ratio}")));
                }
                let mut w = Vec::with_capacity(points);
                let mut cur = first.clone();
                for _ in 0..points {
                    w.push(ExtRational::from(cur.clone()));
                    cur *= ratio;
                }
                Compiled::Weights(w)
            }
            MeasureRule::Cardinality(c) => Compiled::Weights(vec![c.clone(); points]),
            MeasureRule::Explicit(tables) => Compiled::Tables(tables.clone()),
        })
    }

    fn value(&self, n: usize, set: MeasurableSet) -> ExtRational {
        match self {
            Compiled::Nonempty(c) => {
                if set.is_empty() {
                    ExtRational::zero()
                } else {
                    c.clone()
                }
            }
            Compiled::Max => set.atoms().last().map_or_else(ExtRational::zero, |k| ExtRational::from_integer(k as u64)),
            Compiled::Weights(w) => set.atoms().map(|k| &w[k]).sum(),
            Compiled::Tables(t) => t[n - 1].get(set).clone(),
        }
    }
}

/// `N_max` nested truncations with a rule for each of `μ` and `ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationModel {
    mu_rule: MeasureRule,
    nu_rule: MeasureRule,
    mu: Compiled,
    nu: Compiled,
    spaces: Vec<Arc<MeasurableSpace>>,
}

impl TruncationModel {
    /// Builds `U_1 ⊂ … ⊂ U_{N_max}` and checks cross-truncation consistency
    /// and finiteness of `μ(U_n)`, `ν(U_n)`.
    pub fn new(mu_rule: MeasureRule, nu_rule: MeasureRule, n_max: usize) -> Result<Self, Error> {
        if !(1..=MAX_N_MAX).contains(&n_max) {
            return Err(Error::Truncation(format!("N_max must lie in 1..={MAX_N_MAX}, got {n_max}")));
        }
        let spaces = (1..=n_max)
            .map(|n| MeasurableSpace::integers(n + 1).map(Arc::new))
            .collect::<Result<Vec<_>, _>>()?;
        let mu = Compiled::new(&mu_rule, n_max + 1)?;
        let nu = Compiled::new(&nu_rule, n_max + 1)?;
        let model = TruncationModel {
            mu_rule,
            nu_rule,
            mu,
            nu,
            spaces,
        };
        for (name, c) in [("mu", &model.mu), ("nu", &model.nu)] {
            if let Compiled::Tables(t) = c {
                model.check_tables(name, t)?;
            }
        }
        for n in 1..=n_max {
            let full = model.space(n).full();
            for (name, c) in [("mu", &model.mu), ("nu", &model.nu)] {
                if c.value(n, full).is_infinite() {
                    return Err(Error::Truncation(format!("{name}(U_{n}) is infinite")));
                }
            }
        }
        Ok(model)
    }

    fn check_tables(&self, name: &str, tables: &[MonotoneMeasure]) -> Result<(), Error> {
        if tables.len() < self.n_max() {
            return Err(Error::Truncation(format!(
                "{name} has {} tables, N_max is {}",
                tables.len(),
                self.n_max()
            )));
        }
        for n in 1..=self.n_max() {
            if tables[n - 1].space_arc().as_ref() != self.space(n).as_ref() {
                return Err(Error::Truncation(format!("{name} table {n} does not live on U_{n}")));
            }
        }
        // consecutive agreement is enough by transitivity
        for n in 2..=self.n_max() {
            for a in self.space(n - 1).sets()? {
                if tables[n - 2].get(a) != tables[n - 1].get(a) {
                    return Err(Error::Truncation(format!(
                        "{name} is inconsistent: {name}({}) is {} on U_{} but {} on U_{n}",
                        self.space(n).format_set(a),
                        tables[n - 2].get(a),
                        n - 1,
                        tables[n - 1].get(a)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n_max(&self) -> usize {
        self.spaces.len()
    }

    pub fn mu_rule(&self) -> &MeasureRule {
        &self.mu_rule
    }

    pub fn nu_rule(&self) -> &MeasureRule {
        &self.nu_rule
    }

    /// `U_n` for `1 ≤ n ≤ N_max`.
    pub fn space(&self, n: usize) -> &Arc<MeasurableSpace> {
        &self.spaces[n - 1]
    }

    pub fn top_space(&self) -> &Arc<MeasurableSpace> {
        self.space(self.n_max())
    }

    /// `μ|_{U_n}`.
    pub fn mu(&self, n: usize) -> RuleMeasure<'_> {
        RuleMeasure {
            rule: &self.mu,
            space: self.space(n),
            n,
        }
    }

    /// `ν|_{U_n}`.
    pub fn nu(&self, n: usize) -> RuleMeasure<'_> {
        RuleMeasure {
            rule: &self.nu,
            space: self.space(n),
            n,
        }
    }

    /// The same model cut at depth `m ≤ N_max`.
    pub fn truncate(&self, m: usize) -> Result<TruncationModel, Error> {
        if m == 0 || m > self.n_max() {
            return Err(Error::Truncation(format!("cannot cut a depth-{} model at {m}", self.n_max())));
        }
        let mut out = self.clone();
        out.spaces.truncate(m);
        Ok(out)
    }
}

/// A rule measure evaluated lazily on one truncation.
#[derive(Clone, Copy, Debug)]
pub struct RuleMeasure<'a> {
    rule: &'a Compiled,
    space: &'a Arc<MeasurableSpace>,
    n: usize,
}

impl RuleMeasure<'_> {
    pub fn materialize(&self) -> Result<MonotoneMeasure, Error> {
        MonotoneMeasure::from_fn(self.space.clone(), |a| self.value(a))
    }
}

impl SetFunction for RuleMeasure<'_> {
    fn space(&self) -> &MeasurableSpace {
        self.space
    }
    fn value(&self, set: MeasurableSet) -> ExtRational {
        self.rule.value(self.n, set)
    }
}

/// How the family on each truncation is produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyRule {
    /// `A_α = {k : p_k ≥ α}`, positions `p_k` defaulting to `k`.
    ThresholdTail { positions: Option<Vec<ExtRational>> },
    /// One family per truncation, entry `n - 1` living on `U_n`.
    Explicit(Vec<DecompositionFamily>),
}

impl FamilyRule {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyRule::ThresholdTail { .. } => "threshold_tail",
            FamilyRule::Explicit(_) => "explicit",
        }
    }

    /// The family on `U_n`.
    pub fn family(&self, model: &TruncationModel, n: usize) -> Result<DecompositionFamily, Error> {
        let space = model.space(n).clone();
        match self {
            FamilyRule::ThresholdTail { positions } => {
                let points = space.point_count();
                let values = match positions {
                    None => (0..points).map(|k| ExtRational::from_integer(k as u64)).collect(),
                    Some(p) if p.len() >= points => p[..points].to_vec(),
                    Some(p) => {
                        return Err(Error::Truncation(format!(
                            "threshold_tail has {} positions, U_{n} has {points} points",
                            p.len()
                        )))
                    }
                };
                Ok(family_from_function(&SimpleFunction::new(space, values)?))
            }
            FamilyRule::Explicit(list) => {
                let fam = list
                    .get(n - 1)
                    .ok_or_else(|| Error::Truncation(format!("no explicit family for U_{n}")))?;
                if fam.space() != space.as_ref() {
                    return Err(Error::Truncation(format!("family {n} does not live on U_{n}")));
                }
                Ok(fam.clone())
            }
        }
    }
}

/// Test sets for a truncation with `points` points: the power set up to the
/// enumeration limit, otherwise singletons, initial and final segments and
/// the two parity classes, each with its complement.
pub fn test_sets(space: &MeasurableSpace) -> Vec<MeasurableSet> {
    if let Ok(sets) = space.sets() {
        return sets.collect();
    }
    let n = space.atom_count();
    let full = space.full();
    let mut out = vec![MeasurableSet::EMPTY];
    for k in 0..n {
        out.push(MeasurableSet::singleton(k));
        out.push(MeasurableSet::prefix(k + 1));
        out.push(full - MeasurableSet::prefix(k));
    }
    let evens = (0..n).step_by(2).fold(MeasurableSet::EMPTY, |s, k| s.insert(k));
    out.push(evens);
    let mut with_complements: Vec<MeasurableSet> = out.iter().flat_map(|&a| [a, full - a]).collect();
    with_complements.sort();
    with_complements.dedup();
    with_complements
}

/// Decomposition check and derived function on one truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationReport {
    pub n: usize,
    pub family: DecompositionFamily,
    pub decomposition: DecompositionReport,
    pub f: SimpleFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlueFailure {
    Decomposition { n: usize },
    /// `f_n|_{U_{n-1}} ≠ f_{n-1}`; `nu_null` tells whether the disagreement
    /// set is `ν`-null, i.e. whether an a.e. repair would have sufficed.
    Incompatible {
        smaller: usize,
        larger: usize,
        atoms: MeasurableSet,
        nu_null: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueReport {
    pub truncations: Vec<TruncationReport>,
    pub failure: Option<GlueFailure>,
    /// The common extension on `U_{N_max}`, present when nothing failed.
    pub f: Option<SimpleFunction>,
    /// `{f = ∞}` and its `ν`-measure on `U_{N_max}`.
    pub infinite_set: MeasurableSet,
    pub infinite_set_nu: ExtRational,
}

impl GlueReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    /// `ν({f = ∞}) = 0`.
    pub fn finite_ae(&self) -> bool {
        self.infinite_set_nu.is_zero()
    }

    pub fn derivative(&self) -> Result<&SimpleFunction, Error> {
        match (&self.failure, &self.f) {
            (None, Some(f)) => Ok(f),
            (Some(GlueFailure::Decomposition { n }), _) => {
                Err(Error::Truncation(format!("decomposition fails on U_{n}")))
            }
            (Some(GlueFailure::Incompatible { smaller, larger, atoms, nu_null }), _) => {
                Err(Error::IncompatibleTruncations {
                    smaller: *smaller,
                    larger: *larger,
                    atoms: atoms.atoms().collect(),
                    nu_null: *nu_null,
                })
            }
            (None, None) => unreachable!("successful glue always carries f"),
        }
    }
}

/// Checks the decomposition on every truncation, derives `f_n`, and glues the
/// compatible sequence into one function on `U_{N_max}`.
pub fn glue_derivative(model: &TruncationModel, rule: &FamilyRule) -> Result<GlueReport, Error> {
    let mut truncations: Vec<TruncationReport> = Vec::with_capacity(model.n_max());
    let mut failure = None;
    for n in 1..=model.n_max() {
        let family = rule.family(model, n)?;
        let space = model.space(n);
        let decomposition = check_decomposition_scoped(
            &model.mu(n),
            &model.nu(n),
            &family,
            test_sets(space),
            PairScope::Consecutive,
        )?;
        let f = derive_function(&family);
        if failure.is_none() && !decomposition.holds {
            failure = Some(GlueFailure::Decomposition { n });
        }
        if failure.is_none() {
            if let Some(prev) = truncations.last() {
                let atoms = (0..prev.f.values().len())
                    .filter(|&k| f.get(k) != prev.f.get(k))
                    .fold(MeasurableSet::EMPTY, |s, k| s.insert(k));
                if !atoms.is_empty() {
                    failure = Some(GlueFailure::Incompatible {
                        smaller: n - 1,
                        larger: n,
                        atoms,
                        nu_null: model.nu(n).value(atoms).is_zero(),
                    });
                }
            }
        }
        truncations.push(TruncationReport {
            n,
            family,
            decomposition,
            f,
        });
    }
    let top = truncations.last().expect("N_max >= 1");
    let infinite_set = top.f.atoms_where(ExtRational::is_infinite);
    let infinite_set_nu = model.nu(model.n_max()).value(infinite_set);
    let f = failure.is_none().then(|| top.f.clone());
    Ok(GlueReport {
        truncations,
        failure,
        f,
        infinite_set,
        infinite_set_nu,
    })
}

/// `μ(A ∩ U_n)` against `∫_{A ∩ U_n} f dν` at one depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthRecord {
    pub n: usize,
    pub measure: ExtRational,
    pub integral: ExtRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFailure {
    pub set: MeasurableSet,
    pub n: usize,
    pub kind: SetFailureKind,
    pub measure: ExtRational,
    pub integral: ExtRational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetFailureKind {
    Mismatch,
    /// One side decreased from depth `n - 1` to `n`.
    NotIncreasing,
}

pub const MAX_RECORDED_FAILURES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaReport {
    pub holds: bool,
    pub sets_checked: usize,
    pub checks: usize,
    pub failure_count: usize,
    pub failures: Vec<SetFailure>,
    /// Per-depth values on `A = U_{N_max}`: truncated limit evidence.
    pub evidence: Vec<DepthRecord>,
}

/// For every test set `A ⊆ U_{N_max}` and depth `n`: `μ(A ∩ U_n) = ∫_{A ∩ U_n} f dν`
/// on `U_n`, with both sides nondecreasing in `n`.
///
/// Every condition depends on `A` only through `A ∩ U_n`, so each distinct
/// intersection is evaluated once per depth; a failure is recorded once, for
/// the first test set producing that intersection.
pub fn verify_sigma_finite(
    model: &TruncationModel,
    f: &SimpleFunction,
    sets: &[MeasurableSet],
) -> Result<SigmaReport, Error> {
    let top = model.top_space();
    if f.space() != top.as_ref() {
        return Err(Error::SpaceMismatch);
    }
    if let Some(bad) = sets.iter().find(|a| !a.is_subset(top.full())) {
        return Err(Error::NotMeasurable(format!("{:#x}", bad.bits())));
    }
    let mut failures = Vec::new();
    let mut failure_count = 0;
    let mut record = |failure: SetFailure| {
        failure_count += 1;
        if failures.len() < MAX_RECORDED_FAILURES {
            failures.push(failure);
        }
    };
    let mut evidence = Vec::new();
    let whole = sets.contains(&top.full());
    let mut previous: HashMap<MeasurableSet, (ExtRational, ExtRational)> = HashMap::new();
    for n in 1..=model.n_max() {
        let space = model.space(n);
        let fn_ = SimpleFunction::new(space.clone(), f.values()[..=n].to_vec())?;
        let (mu, nu) = (model.mu(n), model.nu(n));
        let mut current: HashMap<MeasurableSet, (ExtRational, ExtRational)> = HashMap::new();
        for &set in sets {
            let a = set & space.full();
            if current.contains_key(&a) {
                continue;
            }
            let measure = mu.value(a);
            let value = integral(&fn_, &nu, a)?;
            let failure = |kind| SetFailure {
                set,
                n,
                kind,
                measure: measure.clone(),
                integral: value.clone(),
            };
            if measure != value {
                record(failure(SetFailureKind::Mismatch));
            }
            let below = (n > 1).then(|| a & model.space(n - 1).full());
            if let Some((pm, pi)) = below.and_then(|b| previous.get(&b)) {
                if measure < *pm || value < *pi {
                    record(failure(SetFailureKind::NotIncreasing));
                }
            }
            if whole && a == space.full() {
                evidence.push(DepthRecord {
                    n,
                    measure: measure.clone(),
                    integral: value.clone(),
                });
            }
            current.insert(a, (measure, value));
        }
        previous = current;
    }
    Ok(SigmaReport {
        holds: failure_count == 0,
        sets_checked: sets.len(),
        checks: sets.len() * model.n_max(),
        failure_count,
        failures,
        evidence,
    })
}

/// Whether every truncation is small enough for power-set test sets.
pub fn power_set_tests(model: &TruncationModel) -> bool {
    model.top_space().atom_count() <= MAX_ENUMERABLE_ATOMS
}
