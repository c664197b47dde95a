//! Named worked instances used by the CLI `example` command, the Python
//! bindings and the test suites.

use std::sync::Arc;

use crate::choquet::indefinite_integral;
use crate::decomposition::DecompositionFamily;
use crate::ext::{parse_rational, ExtRational};
use crate::function::SimpleFunction;
use crate::measure::{Generator, MonotoneMeasure};
use crate::sigma::{FamilyRule, MeasureRule, TruncationModel};
use crate::space::MeasurableSpace;

fn q(s: &str) -> ExtRational {
    s.parse().expect("fixture literal")
}

/// Non-uniqueness example on `U = {1,2,3,4}`: `μ = ν = χ_{A = U}`, family
/// `U → evens → ∅` at thresholds `0, 1, 2`, and two derivatives that differ
/// everywhere.
pub struct NonUniqueness {
    pub space: Arc<MeasurableSpace>,
    pub mu: MonotoneMeasure,
    pub nu: MonotoneMeasure,
    pub family: DecompositionFamily,
    /// `1` on odd points, `2` on even points.
    pub f1: SimpleFunction,
    /// `2` on odd points, `1` on even points.
    pub f2: SimpleFunction,
}

pub fn example_3_6() -> NonUniqueness {
    let space = Arc::new(MeasurableSpace::power_set(&["1", "2", "3", "4"]).expect("fixture"));
    let nu = MonotoneMeasure::from_generator(space.clone(), &Generator::IndicatorFull).expect("fixture");
    let mu = nu.clone();
    let evens = space.set_from_names(&["2", "4"]).expect("fixture");
    let family = DecompositionFamily::new(
        space.clone(),
        vec![
            (parse_rational("0").unwrap(), space.full()),
            (parse_rational("1").unwrap(), evens),
            (parse_rational("2").unwrap(), space.empty()),
        ],
    )
    .expect("fixture");
    let f1 = SimpleFunction::new(space.clone(), vec![q("1"), q("2"), q("1"), q("2")]).expect("fixture");
    let f2 = SimpleFunction::new(space.clone(), vec![q("2"), q("1"), q("2"), q("1")]).expect("fixture");
    NonUniqueness {
        space,
        mu,
        nu,
        family,
        f1,
        f2,
    }
}

/// Additive pair on `{a, b}`: `ν` has weights `(1/2, 1/3)`, `f = (2, 5)` and
/// `μ(A) = ∫_A f dν`.
pub struct Classical {
    pub space: Arc<MeasurableSpace>,
    pub mu: MonotoneMeasure,
    pub nu: MonotoneMeasure,
    pub f: SimpleFunction,
}

pub fn classical() -> Classical {
    let space = Arc::new(MeasurableSpace::power_set(&["a", "b"]).expect("fixture"));
    let nu = MonotoneMeasure::from_generator(space.clone(), &Generator::Additive(vec![q("1/2"), q("1/3")]))
        .expect("fixture");
    let f = SimpleFunction::new(space.clone(), vec![q("2"), q("5")]).expect("fixture");
    let mu = indefinite_integral(&f, &nu).expect("fixture");
    Classical { space, mu, nu, f }
}

/// `U = {1, 2}`, `ν = χ_{A = U}`, `μ(A) = |A|/2`: absolute continuity fails.
pub struct AbsContinuityFailure {
    pub space: Arc<MeasurableSpace>,
    pub mu: MonotoneMeasure,
    pub nu: MonotoneMeasure,
}

pub fn f3() -> AbsContinuityFailure {
    let space = Arc::new(MeasurableSpace::power_set(&["1", "2"]).expect("fixture"));
    let nu = MonotoneMeasure::from_generator(space.clone(), &Generator::IndicatorFull).expect("fixture");
    let mu = MonotoneMeasure::from_generator(space.clone(), &Generator::Cardinality(q("1/2"))).expect("fixture");
    AbsContinuityFailure { space, mu, nu }
}

/// Countable example truncated to `U_n = {0, …, n}`: `ν(A) = 1` for nonempty
/// `A`, `μ(A) = max A`, family `A_α = [α, ∞) ∩ U_n`.
pub fn example_4_4(n_max: usize) -> Result<(TruncationModel, FamilyRule), crate::Error> {
    let model = TruncationModel::new(MeasureRule::MaxElement, MeasureRule::IndicatorNonempty, n_max)?;
    Ok((model, FamilyRule::ThresholdTail { positions: None }))
}
