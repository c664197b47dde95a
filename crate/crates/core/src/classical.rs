//! The additive special case: derivatives read off a parametrized Hahn
//! decomposition of `μ − τν`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::decomposition::{check_decomposition, derive_function, verify_rn, DecompositionFamily, DecompositionReport, RnReport};
use crate::error::Error;
use crate::ext::ExtRational;
use crate::function::SimpleFunction;
use crate::measure::{same_space, MonotoneMeasure};
use crate::props::{abs_continuous, equal_ae, AeComparison, Verdict};
use crate::solver::{solve_rn, SolverCertificate, MAX_SOLVER_ATOMS};
use crate::space::MeasurableSet;
use crate::witness::Witness;

fn additive_weights(m: &MonotoneMeasure, name: &str) -> Result<Vec<BigRational>, Error> {
    if !m.is_additive() {
        return Err(Error::NotAdditive(name.into()));
    }
    m.require_finite(name)?;
    Ok(m
        .atom_weights()
        .into_iter()
        .map(|w| w.into_rational().expect("finite total"))
        .collect())
}

fn check_pair(mu: &MonotoneMeasure, nu: &MonotoneMeasure) -> Result<(Vec<BigRational>, Vec<BigRational>), Error> {
    if !same_space(mu.space_arc(), nu.space_arc()) {
        return Err(Error::SpaceMismatch);
    }
    Ok((additive_weights(mu, "mu")?, additive_weights(nu, "nu")?))
}

fn positive_set(mu: &[BigRational], nu: &[BigRational], tau: &BigRational) -> MeasurableSet {
    mu.iter()
        .zip(nu)
        .enumerate()
        .filter(|(_, (m, n))| **m >= tau * *n)
        .fold(MeasurableSet::EMPTY, |s, (x, _)| s.insert(x))
}

/// Atoms with `μ{x} − τ·ν{x} ≥ 0`. Ties go to the positive set.
pub fn hahn_positive_set(mu: &MonotoneMeasure, nu: &MonotoneMeasure, tau: &BigRational) -> Result<MeasurableSet, Error> {
    if *tau < BigRational::zero() {
        return Err(Error::NegativeValue(tau.to_string()));
    }
    let (m, n) = check_pair(mu, nu)?;
    Ok(positive_set(&m, &n, tau))
}

/// Sorted distinct ratios `μ{x}/ν{x}` over atoms with `ν{x} > 0`.
fn ratios(mu: &[BigRational], nu: &[BigRational]) -> Vec<BigRational> {
    let mut r: Vec<BigRational> = mu
        .iter()
        .zip(nu)
        .filter(|(_, n)| !n.is_zero())
        .map(|(m, n)| m / n)
        .collect();
    r.sort();
    r.dedup();
    r
}

/// Breakpoint at `0` and at every distinct atom ratio, each carrying the
/// positive set for thresholds just above it.
pub fn classical_family(mu: &MonotoneMeasure, nu: &MonotoneMeasure) -> Result<DecompositionFamily, Error> {
    let (m, n) = check_pair(mu, nu)?;
    if let Some(Witness::AbsoluteContinuity { set, .. }) = abs_continuous(mu, nu)?.witness {
        return Err(Error::NotAbsolutelyContinuous { witness: set });
    }
    let space = mu.space_arc().clone();
    let r = ratios(&m, &n);
    let mut list = vec![(BigRational::zero(), space.full())];
    for (k, rk) in r.iter().enumerate() {
        let tau = match r.get(k + 1) {
            Some(next) => (rk + next) / BigRational::from_integer(2.into()),
            None => rk + BigRational::one(),
        };
        list.push((rk.clone(), positive_set(&m, &n, &tau)));
    }
    DecompositionFamily::new(space, list)
}

/// `μ{x}/ν{x}` where `ν{x} > 0`, and `0` on `ν`-null atoms.
pub fn ratio_function(mu: &MonotoneMeasure, nu: &MonotoneMeasure) -> Result<SimpleFunction, Error> {
    let (m, n) = check_pair(mu, nu)?;
    let values = m
        .iter()
        .zip(&n)
        .map(|(a, b)| {
            if b.is_zero() {
                ExtRational::zero()
            } else {
                ExtRational::from(a / b)
            }
        })
        .collect();
    SimpleFunction::new(mu.space_arc().clone(), values)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassicalOutcome {
    Derived {
        family: DecompositionFamily,
        f: SimpleFunction,
        decomposition: DecompositionReport,
        verification: RnReport,
        ratio_agreement: AeComparison,
    },
    Refuted {
        /// Independent run of the general solver; absent above its size limit.
        solver: Option<SolverCertificate>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalReport {
    pub abs_continuity: Verdict,
    pub outcome: ClassicalOutcome,
}

impl ClassicalReport {
    /// Whether a verified derivative was produced.
    pub fn solvable(&self) -> bool {
        match &self.outcome {
            ClassicalOutcome::Derived {
                decomposition,
                verification,
                ratio_agreement,
                ..
            } => decomposition.holds && verification.holds && ratio_agreement.equal,
            ClassicalOutcome::Refuted { .. } => false,
        }
    }

    /// The general solver agrees with the verdict from absolute continuity.
    pub fn consistent(&self) -> bool {
        match &self.outcome {
            ClassicalOutcome::Derived { .. } => self.solvable(),
            ClassicalOutcome::Refuted { solver } => solver.as_ref().map_or(true, |s| !s.is_solvable()),
        }
    }
}

/// For additive pairs a derivative exists iff `μ ≪ ν`.
pub fn classical_rn_check(mu: &MonotoneMeasure, nu: &MonotoneMeasure) -> Result<ClassicalReport, Error> {
    check_pair(mu, nu)?;
    let abs_continuity = abs_continuous(mu, nu)?;
    let outcome = if abs_continuity.holds {
        let family = classical_family(mu, nu)?;
        let f = derive_function(&family);
        let decomposition = check_decomposition(mu, nu, &family)?;
        let verification = verify_rn(mu, nu, &f)?;
        let ratio_agreement = equal_ae(&f, &ratio_function(mu, nu)?, nu)?;
        ClassicalOutcome::Derived {
            family,
            f,
            decomposition,
            verification,
            ratio_agreement,
        }
    } else {
        let solver = if mu.space_arc().atom_count() <= MAX_SOLVER_ATOMS {
            Some(solve_rn(mu, nu)?)
        } else {
            None
        };
        ClassicalOutcome::Refuted { solver }
    };
    Ok(ClassicalReport {
        abs_continuity,
        outcome,
    })
}
