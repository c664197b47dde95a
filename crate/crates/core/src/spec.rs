//! The JSON input format shared by the CLI and the bindings.
//!
//! ```json
//! {
//!   "atoms": ["a", "b"],
//!   "measures": {
//!     "nu": {"type": "additive", "weights": {"a": "1/2", "b": "1/3"}},
//!     "mu": {"type": "explicit", "table": {"a": "1", "b": "5/3", "a,b": "8/3"}}
//!   },
//!   "functions": {"f": {"a": "2", "b": "5"}},
//!   "family": [{"alpha": "0", "set": ["a", "b"]}, {"alpha": "2", "set": ["b"]}, {"alpha": "5", "set": []}]
//! }
//! ```
//!
//! Rationals are `"p/q"` strings, `"inf"` is infinity. Explicit tables are
//! keyed by comma-separated atom names (`""` for the empty set).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::decomposition::DecompositionFamily;
use crate::error::Error;
use crate::ext::ExtRational;
use crate::function::SimpleFunction;
use crate::measure::{Generator, MonotoneMeasure};
use crate::sigma::{FamilyRule, MeasureRule, TruncationModel, DEFAULT_N_MAX};
use crate::space::{MeasurableSet, MeasurableSpace};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub measures: BTreeMap<String, GeneratorSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functions: BTreeMap<String, BTreeMap<String, ExtRational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<BreakpointSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncations: Option<TruncationSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorSpec {
    Explicit { table: BTreeMap<String, ExtRational> },
    Additive { weights: BTreeMap<String, ExtRational> },
    IndicatorFull,
    MaxWeight { weights: BTreeMap<String, ExtRational> },
    Cardinality {
        #[serde(default = "ExtRational::one")]
        scale: ExtRational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BreakpointSpec {
    pub alpha: ExtRational,
    pub set: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationSpec {
    #[serde(rename = "N_max", default = "default_n_max")]
    pub n_max: usize,
    pub mu: RuleSpec,
    pub nu: RuleSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyRuleSpec>,
}

fn default_n_max() -> usize {
    DEFAULT_N_MAX
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case", deny_unknown_fields)]
pub enum RuleSpec {
    IndicatorNonempty,
    ConstantNonempty { value: ExtRational },
    MaxElement,
    Additive { weights: Vec<ExtRational> },
    Geometric { first: ExtRational, ratio: ExtRational },
    Cardinality {
        #[serde(default = "ExtRational::one")]
        scale: ExtRational,
    },
    /// Entry `n - 1` is the table on `U_n`, keyed like [`GeneratorSpec::Explicit`].
    Explicit { tables: Vec<BTreeMap<String, ExtRational>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyRuleSpec {
    ThresholdTail {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        positions: Option<Vec<ExtRational>>,
    },
    Explicit { families: Vec<Vec<BreakpointSpec>> },
}

/// Everything a spec file describes, validated.
#[derive(Clone, Debug)]
pub struct LoadedSpec {
    pub source: SpecFile,
    pub space: Option<Arc<MeasurableSpace>>,
    pub measures: BTreeMap<String, MonotoneMeasure>,
    pub functions: BTreeMap<String, SimpleFunction>,
    pub family: Option<DecompositionFamily>,
    pub truncations: Option<(TruncationModel, FamilyRule)>,
}

fn at<T>(path: impl Into<String>, r: Result<T, Error>) -> Result<T, Error> {
    r.map_err(|e| Error::Spec {
        path: path.into(),
        source: Box::new(e),
    })
}

/// Parses JSON text. Syntax and type errors carry line and column.
pub fn parse_spec(text: &str) -> Result<SpecFile, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn load_spec(text: &str) -> Result<LoadedSpec, Error> {
    parse_spec(text)?.load()
}

/// `"a,b"` → `{a, b}`; `""` → `∅`.
pub fn parse_set_key(space: &MeasurableSpace, key: &str) -> Result<MeasurableSet, Error> {
    let names: Vec<&str> = key.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    space.set_from_names(&names)
}

/// The key [`parse_set_key`] reads back: names in space order.
pub fn set_key(space: &MeasurableSpace, set: MeasurableSet) -> String {
    space.set_names(set).join(",")
}

fn point_values(
    space: &MeasurableSpace,
    map: &BTreeMap<String, ExtRational>,
    path: &str,
) -> Result<Vec<ExtRational>, Error> {
    for name in map.keys() {
        if space.point_index(name).is_none() {
            return at(path, Err(Error::UnknownAtom(name.clone())));
        }
    }
    space
        .point_names()
        .iter()
        .map(|name| {
            map.get(name)
                .cloned()
                .ok_or_else(|| Error::Spec {
                    path: path.into(),
                    source: Box::new(Error::MissingEntry(name.clone())),
                })
        })
        .collect()
}

fn table(
    space: &MeasurableSpace,
    entries: &BTreeMap<String, ExtRational>,
    path: &str,
) -> Result<Vec<(MeasurableSet, ExtRational)>, Error> {
    entries
        .iter()
        .map(|(k, v)| Ok((at(format!("{path}.{k:?}"), parse_set_key(space, k))?, v.clone())))
        .collect()
}

fn family(space: &Arc<MeasurableSpace>, list: &[BreakpointSpec], path: &str) -> Result<DecompositionFamily, Error> {
    let mut steps = Vec::with_capacity(list.len());
    for (i, b) in list.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let alpha = at(
            format!("{p}.alpha"),
            b.alpha
                .as_rational()
                .cloned()
                .ok_or_else(|| Error::InvalidFamily("thresholds must be finite".into())),
        )?;
        let set = at(format!("{p}.set"), space.set_from_names(&b.set))?;
        steps.push((alpha, set));
    }
    at(path, DecompositionFamily::new(space.clone(), steps))
}

impl GeneratorSpec {
    pub fn to_generator(&self, space: &MeasurableSpace, path: &str) -> Result<Generator, Error> {
        Ok(match self {
            GeneratorSpec::Explicit { table: t } => Generator::Explicit(table(space, t, &format!("{path}.table"))?),
            GeneratorSpec::Additive { weights } => {
                Generator::Additive(point_values(space, weights, &format!("{path}.weights"))?)
            }
            GeneratorSpec::IndicatorFull => Generator::IndicatorFull,
            GeneratorSpec::MaxWeight { weights } => {
                Generator::MaxWeight(point_values(space, weights, &format!("{path}.weights"))?)
            }
            GeneratorSpec::Cardinality { scale } => Generator::Cardinality(scale.clone()),
        })
    }
}

impl TruncationSpec {
    pub fn load(&self, path: &str) -> Result<(TruncationModel, FamilyRule), Error> {
        let mu = self.mu.to_rule(self.n_max, &format!("{path}.mu"))?;
        let nu = self.nu.to_rule(self.n_max, &format!("{path}.nu"))?;
        let model = at(path, TruncationModel::new(mu, nu, self.n_max))?;
        let rule = match &self.family {
            None | Some(FamilyRuleSpec::ThresholdTail { positions: None }) => FamilyRule::ThresholdTail { positions: None },
            Some(FamilyRuleSpec::ThresholdTail { positions }) => FamilyRule::ThresholdTail {
                positions: positions.clone(),
            },
            Some(FamilyRuleSpec::Explicit { families }) => {
                let mut out = Vec::with_capacity(families.len());
                for (i, list) in families.iter().enumerate() {
                    let n = i + 1;
                    if n > model.n_max() {
                        break;
                    }
                    out.push(family(model.space(n), list, &format!("{path}.family.families[{i}]"))?);
                }
                FamilyRule::Explicit(out)
            }
        };
        Ok((model, rule))
    }
}

impl RuleSpec {
    pub fn to_rule(&self, n_max: usize, path: &str) -> Result<MeasureRule, Error> {
        let finite = |v: &ExtRational, field: &str| {
            v.as_rational()
                .cloned()
                .ok_or_else(|| Error::Spec {
                    path: format!("{path}.{field}"),
                    source: Box::new(Error::InfiniteValue(field.into())),
                })
        };
        Ok(match self {
            RuleSpec::IndicatorNonempty => MeasureRule::IndicatorNonempty,
            RuleSpec::ConstantNonempty { value } => MeasureRule::ConstantNonempty(value.clone()),
            RuleSpec::MaxElement => MeasureRule::MaxElement,
            RuleSpec::Additive { weights } => MeasureRule::Additive(weights.clone()),
            RuleSpec::Geometric { first, ratio } => MeasureRule::Geometric {
                first: finite(first, "first")?,
                ratio: finite(ratio, "ratio")?,
            },
            RuleSpec::Cardinality { scale } => MeasureRule::Cardinality(scale.clone()),
            RuleSpec::Explicit { tables } => {
                let mut out = Vec::with_capacity(tables.len());
                for (i, t) in tables.iter().enumerate().take(n_max) {
                    let p = format!("{path}.tables[{i}]");
                    let space = Arc::new(at(&p, MeasurableSpace::integers(i + 2))?);
                    let g = Generator::Explicit(table(&space, t, &p)?);
                    out.push(at(&p, MonotoneMeasure::from_generator(space, &g))?);
                }
                MeasureRule::Explicit(out)
            }
        })
    }
}

impl SpecFile {
    pub fn load(&self) -> Result<LoadedSpec, Error> {
        let space = match &self.atoms {
            Some(atoms) => Some(Arc::new(at("atoms", MeasurableSpace::build(atoms, self.partition.as_deref()))?)),
            None if self.partition.is_some() => {
                return at("partition", Err(Error::InvalidPartition("partition given without atoms".into())))
            }
            None => None,
        };
        let need_space = |what: &str| {
            space.clone().ok_or_else(|| Error::Spec {
                path: what.into(),
                source: Box::new(Error::Parse("\"atoms\" is required".into())),
            })
        };
        let mut measures = BTreeMap::new();
        for (name, g) in &self.measures {
            let path = format!("measures.{name}");
            let s = need_space(&path)?;
            let generator = g.to_generator(&s, &path)?;
            measures.insert(name.clone(), at(&path, MonotoneMeasure::from_generator(s, &generator))?);
        }
        let mut functions = BTreeMap::new();
        for (name, values) in &self.functions {
            let path = format!("functions.{name}");
            let s = need_space(&path)?;
            let v = point_values(&s, values, &path)?;
            functions.insert(name.clone(), at(&path, SimpleFunction::from_point_values(s, v))?);
        }
        let family = match &self.family {
            Some(list) => Some(family(&need_space("family")?, list, "family")?),
            None => None,
        };
        let truncations = match &self.truncations {
            Some(t) => Some(t.load("truncations")?),
            None => None,
        };
        Ok(LoadedSpec {
            source: self.clone(),
            space,
            measures,
            functions,
            family,
            truncations,
        })
    }
}

impl LoadedSpec {
    pub fn space(&self) -> Result<&Arc<MeasurableSpace>, Error> {
        self.space
            .as_ref()
            .ok_or_else(|| Error::Parse("spec has no \"atoms\"".into()))
    }

    pub fn measure(&self, name: &str) -> Result<&MonotoneMeasure, Error> {
        self.measures
            .get(name)
            .ok_or_else(|| Error::Parse(format!("spec has no measure {name:?}")))
    }

    pub fn function(&self, name: &str) -> Result<&SimpleFunction, Error> {
        self.functions
            .get(name)
            .ok_or_else(|| Error::Parse(format!("spec has no function {name:?}")))
    }

    pub fn require_family(&self) -> Result<&DecompositionFamily, Error> {
        self.family
            .as_ref()
            .ok_or_else(|| Error::Parse("spec has no \"family\"".into()))
    }

    pub fn require_truncations(&self) -> Result<&(TruncationModel, FamilyRule), Error> {
        self.truncations
            .as_ref()
            .ok_or_else(|| Error::Parse("spec has no \"truncations\"".into()))
    }
}

/// Spec file describing a materialized measure as an explicit table.
pub fn explicit_spec(m: &MonotoneMeasure) -> GeneratorSpec {
    let space = m.space_arc();
    let table = space
        .sets()
        .expect("materialized")
        .filter(|a| !a.is_empty())
        .map(|a| (set_key(space, a), m.get(a).clone()))
        .collect();
    GeneratorSpec::Explicit { table }
}

/// Spec entries for a function and a family.
pub fn function_spec(f: &SimpleFunction) -> BTreeMap<String, ExtRational> {
    f.space()
        .point_names()
        .iter()
        .cloned()
        .zip(f.point_values())
        .collect()
}

pub fn family_spec(family: &DecompositionFamily) -> Vec<BreakpointSpec> {
    family
        .breakpoints()
        .iter()
        .map(|b| BreakpointSpec {
            alpha: ExtRational::from(b.alpha.clone()),
            set: family.space().set_names(b.set),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const CLASSICAL: &str = r#"{
        "atoms": ["a", "b"],
        "measures": {
            "nu": {"type": "additive", "weights": {"a": "1/2", "b": "1/3"}},
            "mu": {"type": "explicit", "table": {"a": "1", "b": "5/3", "a,b": "8/3"}}
        },
        "functions": {"f": {"a": "2", "b": "5"}},
        "family": [{"alpha": "0", "set": ["a", "b"]}, {"alpha": "2", "set": ["b"]}, {"alpha": "5", "set": []}]
    }"#;

    #[test]
    fn loads_the_classical_fixture() {
        let spec = load_spec(CLASSICAL).unwrap();
        let fx = fixtures::classical();
        assert_eq!(spec.measure("mu").unwrap(), &fx.mu);
        assert_eq!(spec.measure("nu").unwrap(), &fx.nu);
        assert_eq!(spec.function("f").unwrap(), &fx.f);
        assert_eq!(spec.require_family().unwrap().breakpoints().len(), 3);
    }

    #[test]
    fn round_trips_through_serialization() {
        let spec = parse_spec(CLASSICAL).unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(parse_spec(&text).unwrap(), spec);
    }

    #[test]
    fn errors_name_their_location() {
        let bad = CLASSICAL.replace("\"b\": \"5/3\", \"a,b\"", "\"c\": \"5/3\", \"a,b\"");
        let err = load_spec(&bad).unwrap_err().to_string();
        assert!(err.contains("measures.mu.table"), "{err}");
        let err = load_spec("{\"atoms\": [\"a\"], \"measures\": {\"m\": {\"type\": \"nope\"}}}").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
        let non_monotone = r#"{"atoms":["a","b"],"measures":{"m":{"type":"explicit","table":{"a":"1","b":"0","a,b":"0"}}}}"#;
        assert!(load_spec(non_monotone).unwrap_err().to_string().contains("measures.m"));
    }

    #[test]
    fn loads_truncation_models() {
        let text = r#"{"truncations": {"N_max": 6, "mu": {"rule": "max_element"}, "nu": {"rule": "indicator_nonempty"}}}"#;
        let spec = load_spec(text).unwrap();
        let (model, rule) = spec.require_truncations().unwrap();
        assert_eq!(model.n_max(), 6);
        assert_eq!(rule, &FamilyRule::ThresholdTail { positions: None });

        let infinite = r#"{"truncations": {"mu": {"rule": "constant_nonempty", "value": "inf"}, "nu": {"rule": "indicator_nonempty"}}}"#;
        assert!(load_spec(infinite).is_err());
    }

    #[test]
    fn explicit_spec_reloads_to_the_same_measure() {
        let fx = fixtures::example_3_6();
        let mut spec = SpecFile {
            atoms: Some(fx.space.point_names().to_vec()),
            ..SpecFile::default()
        };
        spec.measures.insert("nu".into(), explicit_spec(&fx.nu));
        spec.functions.insert("f".into(), function_spec(&fx.f1));
        spec.family = Some(family_spec(&fx.family));
        let loaded = spec.load().unwrap();
        assert_eq!(loaded.measure("nu").unwrap(), &fx.nu);
        assert_eq!(loaded.function("f").unwrap(), &fx.f1);
        assert_eq!(loaded.require_family().unwrap(), &fx.family);
    }
}
