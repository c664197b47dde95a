//! Decides whether a finite pair `(μ, ν)` admits `f` with `μ(A) = ∫_A f dν`.
//!
//! Search space: every maximal chain `U = B_0 ⊋ B_1 ⊋ … ⊋ B_m` (one algebra
//! atom removed per step) with heights `v_0 ≤ v_1 ≤ … ≤ v_m` and
//! `f = v_i` on `B_i ∖ B_{i+1}`. With increments `d_i = v_i − v_{i−1} ≥ 0`
//! (`v_{−1} = 0`), `∫_A f dν = Σ_i d_i · ν(A ∩ B_i)`, so each chain is a
//! linear feasibility problem with one equation per measurable set.
//!
//! Completeness: if some `f` works, ordering the atoms by ascending `f`
//! (ties broken arbitrarily) gives a maximal chain containing every level set
//! of `f`, and the values of `f` along it are feasible heights. An infinite
//! value can only occur on a set `S` with `ν(S) = 0` (else `μ(U) = ∞`);
//! lowering it to the previous height leaves every layer `ν(A ∩ B_i)` and
//! hence every integral unchanged, so finite heights suffice.

use num_rational::BigRational;
use num_traits::Zero;

use crate::decomposition::{
    check_decomposition, family_from_function, verify_rn, DecompositionFamily, DecompositionReport, RnReport,
};
use crate::error::Error;
use crate::ext::ExtRational;
use crate::function::SimpleFunction;
use crate::lp::{nonnegative_solution, LinearOutcome};
use crate::measure::{same_space, MonotoneMeasure};
use crate::props::abs_continuous;
use crate::space::MeasurableSet;
use crate::witness::Witness;

/// Largest algebra the chain search accepts (`6! = 720` chains).
pub const MAX_SOLVER_ATOMS: usize = 6;

pub const INFINITE_HEIGHT_NOTE: &str = "infinite heights are never needed: any solution taking inf on \
a nu-null set integrates identically once that value is lowered to the previous height";

/// A maximal chain, given by the order in which atoms are removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCandidate {
    pub order: Vec<usize>,
}

impl ChainCandidate {
    /// `B_0 = U, B_1, …, B_m` with `B_i = U ∖ {order[0..i]}`.
    pub fn sets(&self) -> Vec<MeasurableSet> {
        let mut cur = MeasurableSet::prefix(self.order.len());
        let mut out = Vec::with_capacity(self.order.len());
        for &x in &self.order {
            out.push(cur);
            cur = cur.remove(x);
        }
        out
    }

    /// The function taking height `heights[i]` on the atom removed at step `i`.
    pub fn function_values(&self, heights: &[BigRational]) -> Vec<ExtRational> {
        let mut values = vec![ExtRational::zero(); self.order.len()];
        for (&x, h) in self.order.iter().zip(heights) {
            values[x] = ExtRational::from(h.clone());
        }
        values
    }
}

/// All maximal chains of an `n`-atom algebra in lexicographic order of the
/// removal sequence.
pub fn maximal_chains(n: usize) -> impl Iterator<Item = ChainCandidate> {
    let mut next: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let current = next.take()?;
        next = next_permutation(&current);
        Some(ChainCandidate { order: current })
    })
}

fn next_permutation(p: &[usize]) -> Option<Vec<usize>> {
    let mut p = p.to_vec();
    let i = (1..p.len()).rev().find(|&i| p[i - 1] < p[i])?;
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1])?;
    p.swap(i - 1, j);
    p[i..].reverse();
    Some(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainOutcome {
    /// Nondecreasing heights `v_0..v_m` along the chain.
    Feasible { heights: Vec<BigRational> },
    /// The equations are contradictory; `set` is the equation that failed.
    Inconsistent { set: MeasurableSet },
    /// Consistent, but no solution has nondecreasing nonnegative heights.
    NoMonotoneSolution,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRecord {
    pub order: Vec<usize>,
    pub outcome: ChainOutcome,
}

/// Solves the exact linear system of one chain.
pub fn solve_chain(mu: &MonotoneMeasure, nu: &MonotoneMeasure, chain: &ChainCandidate) -> Result<ChainOutcome, Error> {
    let space = mu.space_arc();
    let chain_sets = chain.sets();
    let sets: Vec<MeasurableSet> = space.sets()?.collect();
    let fin = |v: &ExtRational| {
        v.as_rational()
            .cloned()
            .ok_or_else(|| Error::InfiniteValue("measure value".into()))
    };
    let mut rows = Vec::with_capacity(sets.len());
    let mut rhs = Vec::with_capacity(sets.len());
    for &a in &sets {
        rows.push(
            chain_sets
                .iter()
                .map(|&b| fin(nu.get(a & b)))
                .collect::<Result<Vec<_>, _>>()?,
        );
        rhs.push(fin(mu.get(a))?);
    }
    Ok(match nonnegative_solution(&rows, &rhs) {
        LinearOutcome::Feasible(increments) => {
            let mut acc = BigRational::zero();
            let heights = increments
                .into_iter()
                .map(|d| {
                    acc += d;
                    acc.clone()
                })
                .collect();
            ChainOutcome::Feasible { heights }
        }
        LinearOutcome::Inconsistent { row } => ChainOutcome::Inconsistent { set: sets[row] },
        LinearOutcome::Infeasible => ChainOutcome::NoMonotoneSolution,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverCertificate {
    Solvable {
        /// First feasible chain in canonical order.
        chain: Vec<usize>,
        chains_examined: usize,
        f: SimpleFunction,
        family: DecompositionFamily,
        decomposition: DecompositionReport,
        verification: RnReport,
    },
    Unsolvable {
        /// Set with `ν = 0 < μ`, when absolute continuity already fails.
        abs_witness: Option<Witness>,
        /// Every maximal chain, each infeasible.
        chains: Vec<ChainRecord>,
    },
}

impl SolverCertificate {
    pub fn is_solvable(&self) -> bool {
        matches!(self, SolverCertificate::Solvable { .. })
    }

    pub fn derivative(&self) -> Option<&SimpleFunction> {
        match self {
            SolverCertificate::Solvable { f, .. } => Some(f),
            SolverCertificate::Unsolvable { .. } => None,
        }
    }
}

/// Searches maximal chains in canonical order for an exact solution.
pub fn solve_rn(mu: &MonotoneMeasure, nu: &MonotoneMeasure) -> Result<SolverCertificate, Error> {
    if !same_space(mu.space_arc(), nu.space_arc()) {
        return Err(Error::SpaceMismatch);
    }
    let space = mu.space_arc().clone();
    space.require_enumerable(MAX_SOLVER_ATOMS)?;
    mu.require_finite("mu")?;
    nu.require_finite("nu")?;

    let mut chains = Vec::new();
    for chain in maximal_chains(space.atom_count()) {
        match solve_chain(mu, nu, &chain)? {
            ChainOutcome::Feasible { heights } => {
                let f = SimpleFunction::new(space.clone(), chain.function_values(&heights))?;
                let family = family_from_function(&f);
                let decomposition = check_decomposition(mu, nu, &family)?;
                let verification = verify_rn(mu, nu, &f)?;
                return Ok(SolverCertificate::Solvable {
                    chain: chain.order,
                    chains_examined: chains.len() + 1,
                    f,
                    family,
                    decomposition,
                    verification,
                });
            }
            outcome => chains.push(ChainRecord {
                order: chain.order,
                outcome,
            }),
        }
    }
    Ok(SolverCertificate::Unsolvable {
        abs_witness: abs_continuous(mu, nu)?.witness,
        chains,
    })
}
