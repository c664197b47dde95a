//! Named worked examples, each expressed as an ordinary spec file so the
//! echoed input of an example run can be replayed with `--input`.

use std::collections::BTreeMap;

use choquet_rn::fixtures;
use choquet_rn::props::{equal_ae, has_property_sigma};
use choquet_rn::spec::{explicit_spec, family_spec, function_spec, FamilyRuleSpec, GeneratorSpec, RuleSpec, SpecFile, TruncationSpec};
use choquet_rn::{Error, ExtRational};
use clap::ValueEnum;

use crate::commands::{self, Names};
use crate::render;
use crate::report::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleId {
    /// Two derivatives that differ everywhere.
    #[value(name = "ex-3-6")]
    NonUniqueness,
    /// The countable example glued over truncations `U_n = {0, …, n}`.
    #[value(name = "ex-4-4")]
    Countable,
    /// An additive pair solved end to end.
    #[value(name = "classical")]
    Classical,
}

pub const DEFAULT_EXAMPLE_DEPTH: usize = 8;

pub fn spec(id: ExampleId, n: Option<usize>) -> SpecFile {
    match id {
        ExampleId::NonUniqueness => {
            let fx = fixtures::example_3_6();
            SpecFile {
                atoms: Some(fx.space.point_names().to_vec()),
                measures: BTreeMap::from([
                    ("mu".into(), GeneratorSpec::IndicatorFull),
                    ("nu".into(), GeneratorSpec::IndicatorFull),
                ]),
                functions: BTreeMap::from([("f1".into(), function_spec(&fx.f1)), ("f2".into(), function_spec(&fx.f2))]),
                family: Some(family_spec(&fx.family)),
                ..SpecFile::default()
            }
        }
        ExampleId::Countable => SpecFile {
            truncations: Some(TruncationSpec {
                n_max: n.unwrap_or(DEFAULT_EXAMPLE_DEPTH),
                mu: RuleSpec::MaxElement,
                nu: RuleSpec::IndicatorNonempty,
                family: Some(FamilyRuleSpec::ThresholdTail { positions: None }),
            }),
            ..SpecFile::default()
        },
        ExampleId::Classical => {
            let fx = fixtures::classical();
            let weights = fx
                .space
                .point_names()
                .iter()
                .cloned()
                .zip(fx.nu.atom_weights())
                .collect::<BTreeMap<String, ExtRational>>();
            SpecFile {
                atoms: Some(fx.space.point_names().to_vec()),
                measures: BTreeMap::from([
                    ("mu".into(), explicit_spec(&fx.mu)),
                    ("nu".into(), GeneratorSpec::Additive { weights }),
                ]),
                functions: BTreeMap::from([("f".into(), function_spec(&fx.f))]),
                ..SpecFile::default()
            }
        }
    }
}

pub fn run(id: ExampleId, file: &SpecFile) -> Result<Outcome, Error> {
    let spec = file.load()?;
    let names = Names::default();
    let mut out = Outcome::default();
    match id {
        ExampleId::NonUniqueness => {
            for f in ["f1", "f2"] {
                let per = Names {
                    f: f.into(),
                    ..names.clone()
                };
                out.merge(f, commands::verify(&spec, &per)?);
            }
            out.merge("family", commands::check(&spec, &names)?);
            let nu = spec.measure("nu")?;
            let (f1, f2) = (spec.function("f1")?, spec.function("f2")?);
            let cmp = equal_ae(f1, f2, nu)?;
            out.verdict(
                "f1 and f2 differ on a set of positive nu-measure",
                !cmp.equal,
                None,
            );
            out.put("equal_ae", render::ae(&cmp, f1.space()));
            out.put("property_sigma", render::property(&has_property_sigma(nu), nu.space_arc()));
        }
        ExampleId::Countable => out.merge("sigma_finite", commands::sigma_finite(&spec, None)?),
        ExampleId::Classical => {
            out.merge("integrate", commands::integrate(&spec, &names, None)?);
            out.merge("classical", commands::classical(&spec, &names)?);
            out.merge("solve", commands::solve(&spec, &names)?);
        }
    }
    Ok(out)
}
