//! JSON views of the library's report types. Sets are rendered as
//! comma-separated atom names, rationals as `p/q` strings.

use choquet_rn::choquet::IntegralBreakdown;
use choquet_rn::decomposition::{DecompositionFamily, DecompositionReport, LemmaReport, RnReport};
use choquet_rn::props::{AeComparison, StrongContinuity, Verdict};
use choquet_rn::sigma::{GlueFailure, GlueReport, SetFailureKind, SigmaReport};
use choquet_rn::solver::{ChainOutcome, SolverCertificate};
use choquet_rn::spec::set_key;
use choquet_rn::witness::Witness;
use choquet_rn::{ExtRational, MeasurableSet, MeasurableSpace, MonotoneMeasure, SimpleFunction};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

pub fn set(space: &MeasurableSpace, a: MeasurableSet) -> Value {
    Value::String(set_key(space, a))
}

pub fn ext(v: &ExtRational) -> Value {
    Value::String(v.to_string())
}

pub fn rat(v: &BigRational) -> Value {
    Value::String(v.to_string())
}

pub fn function(f: &SimpleFunction) -> Value {
    let space = f.space();
    let map: Map<String, Value> = space
        .point_names()
        .iter()
        .zip(f.point_values())
        .map(|(n, v)| (n.clone(), ext(&v)))
        .collect();
    Value::Object(map)
}

pub fn measure(m: &MonotoneMeasure) -> Value {
    let space = m.space_arc();
    let map: Map<String, Value> = space
        .sets()
        .expect("materialized")
        .map(|a| (set_key(space, a), ext(m.get(a))))
        .collect();
    Value::Object(map)
}

pub fn family(f: &DecompositionFamily) -> Value {
    let space = f.space();
    Value::Array(
        f.breakpoints()
            .iter()
            .map(|b| json!({"alpha": rat(&b.alpha), "set": set(space, b.set)}))
            .collect(),
    )
}

pub fn witness(w: &Witness, space: &MeasurableSpace) -> String {
    w.describe(space)
}

pub fn property(v: &Verdict, space: &MeasurableSpace) -> Value {
    let mut out = json!({"holds": v.holds});
    if let Some(w) = &v.witness {
        out["witness"] = json!({"kind": w.kind(), "description": witness(w, space)});
    }
    if let Some(note) = v.note {
        out["note"] = json!(note);
    }
    out
}

pub fn breakdown(b: &IntegralBreakdown, space: &MeasurableSpace) -> Value {
    json!({
        "total": ext(&b.total),
        "layers": b.layers.iter().map(|l| json!({
            "from": ext(&l.previous),
            "to": ext(&l.threshold),
            "level_set": set(space, l.level_set),
            "measure": ext(&l.measure),
            "contribution": ext(&l.contribution),
        })).collect::<Vec<_>>(),
    })
}

pub fn moduli(s: &StrongContinuity, space: &MeasurableSpace) -> Value {
    json!({
        "holds": s.holds,
        "moduli": s.moduli.iter().map(|m| json!({
            "epsilon": ext(&m.epsilon),
            "delta": ext(&m.delta),
            "attained_at": set(space, m.attained_at),
        })).collect::<Vec<_>>(),
    })
}

pub fn decomposition(r: &DecompositionReport, space: &MeasurableSpace) -> Value {
    json!({
        "holds": r.holds,
        "sets_checked": r.sets_checked,
        "pairs_checked": r.pairs_checked,
        "violation_count": r.violation_count,
        "violations": r.violations.iter().map(|v| json!({
            "set": set(space, v.set),
            "i": v.i,
            "j": v.j,
            "left": rat(&v.left),
            "middle": rat(&v.middle),
            "right": rat(&v.right),
        })).collect::<Vec<_>>(),
        "tail": {"mu": rat(&r.tail.mu), "nu": rat(&r.tail.nu), "holds": r.tail.holds()},
    })
}

pub fn decomposition_witness(r: &DecompositionReport, space: &MeasurableSpace) -> Option<String> {
    if let Some(v) = r.witness() {
        return Some(format!(
            "A = {}, i = {}, j = {}: {} <= {} <= {} fails",
            space.format_set(v.set),
            v.i,
            v.j,
            v.left,
            v.middle,
            v.right
        ));
    }
    (!r.tail.holds()).then(|| format!("tail set has mu = {}, nu = {}", r.tail.mu, r.tail.nu))
}

pub fn lemma(r: &LemmaReport) -> Value {
    json!({
        "holds": r.holds,
        "records": r.records.iter().map(|l| json!({
            "i": l.i,
            "scaled_nu": ext(&l.scaled_nu),
            "mu": ext(&l.mu),
        })).collect::<Vec<_>>(),
    })
}

pub fn rn(r: &RnReport, space: &MeasurableSpace) -> Value {
    json!({
        "holds": r.holds,
        "sets_checked": r.sets_checked,
        "failures": r.failures.iter().map(|f| json!({
            "set": set(space, f.set),
            "measure": ext(&f.measure),
            "integral": ext(&f.integral),
        })).collect::<Vec<_>>(),
    })
}

pub fn rn_witness(r: &RnReport, space: &MeasurableSpace) -> Option<String> {
    r.failures
        .first()
        .map(|f| format!("mu({}) = {} but the integral is {}", space.format_set(f.set), f.measure, f.integral))
}

pub fn ae(c: &AeComparison, space: &MeasurableSpace) -> Value {
    json!({
        "equal": c.equal,
        "difference_set": set(space, c.difference_set),
        "measure": ext(&c.measure),
    })
}

fn chain(order: &[usize], space: &MeasurableSpace) -> Value {
    Value::Array(order.iter().map(|&x| Value::String(space.atom_label(x))).collect())
}

pub fn certificate(c: &SolverCertificate, space: &MeasurableSpace) -> Value {
    match c {
        SolverCertificate::Solvable {
            chain: order,
            chains_examined,
            f,
            family: fam,
            decomposition: d,
            verification,
        } => json!({
            "solvable": true,
            "chain": chain(order, space),
            "chains_examined": chains_examined,
            "f": function(f),
            "family": family(fam),
            "decomposition": decomposition(d, space),
            "verification": rn(verification, space),
        }),
        SolverCertificate::Unsolvable { abs_witness, chains } => {
            let mut out = json!({
                "solvable": false,
                "chains": chains.iter().map(|r| {
                    let outcome = match &r.outcome {
                        ChainOutcome::Feasible { heights } => {
                            json!({"kind": "feasible", "heights": heights.iter().map(rat).collect::<Vec<_>>()})
                        }
                        ChainOutcome::Inconsistent { set: a } => json!({"kind": "inconsistent", "set": set(space, *a)}),
                        ChainOutcome::NoMonotoneSolution => json!({"kind": "no_nonnegative_increments"}),
                    };
                    json!({"order": chain(&r.order, space), "outcome": outcome})
                }).collect::<Vec<_>>(),
            });
            if let Some(w) = abs_witness {
                out["witness"] = json!({"kind": w.kind(), "description": witness(w, space)});
                if let Witness::AbsoluteContinuity { set: a, .. } = w {
                    out["witness"]["set"] = set(space, *a);
                }
            }
            out
        }
    }
}

pub fn certificate_witness(c: &SolverCertificate, space: &MeasurableSpace) -> Option<String> {
    match c {
        SolverCertificate::Solvable { .. } => None,
        SolverCertificate::Unsolvable { abs_witness: Some(w), .. } => Some(witness(w, space)),
        SolverCertificate::Unsolvable { chains, .. } => {
            Some(format!("none of the {} maximal chains admits a nonnegative solution", chains.len()))
        }
    }
}

pub fn glue(g: &GlueReport) -> Value {
    let mut out = json!({
        "holds": g.holds(),
        "finite_ae": g.finite_ae(),
        "truncations": g.truncations.iter().map(|t| json!({
            "n": t.n,
            "family": family(&t.family),
            "decomposition_holds": t.decomposition.holds,
            "pairs_checked": t.decomposition.pairs_checked,
            "f": function(&t.f),
        })).collect::<Vec<_>>(),
        "infinite_set_nu": ext(&g.infinite_set_nu),
    });
    if let Some(f) = &g.f {
        out["f"] = function(f);
        out["infinite_set"] = set(f.space(), g.infinite_set);
    }
    if let Some(failure) = &g.failure {
        out["failure"] = glue_failure(failure);
    }
    out
}

fn glue_failure(f: &GlueFailure) -> Value {
    match f {
        GlueFailure::Decomposition { n } => json!({"kind": "decomposition", "n": n}),
        GlueFailure::Incompatible {
            smaller,
            larger,
            atoms,
            nu_null,
        } => json!({
            "kind": "incompatible",
            "smaller": smaller,
            "larger": larger,
            "atoms": atoms.atoms().collect::<Vec<_>>(),
            "ae_repair_possible": nu_null,
        }),
    }
}

pub fn glue_witness(g: &GlueReport) -> Option<String> {
    g.failure.as_ref().map(|f| match f {
        GlueFailure::Decomposition { n } => format!("decomposition fails on U_{n}"),
        GlueFailure::Incompatible {
            smaller,
            larger,
            atoms,
            nu_null,
        } => format!(
            "f_{larger} restricted to U_{smaller} differs from f_{smaller} at points {:?}{}",
            atoms.atoms().collect::<Vec<_>>(),
            if *nu_null { " (a nu-null set)" } else { "" }
        ),
    })
}

pub fn sigma(r: &SigmaReport, space: &MeasurableSpace) -> Value {
    json!({
        "holds": r.holds,
        "sets_checked": r.sets_checked,
        "checks": r.checks,
        "failure_count": r.failure_count,
        "failures": r.failures.iter().map(|f| json!({
            "set": set(space, f.set),
            "n": f.n,
            "kind": match f.kind {
                SetFailureKind::Mismatch => "mismatch",
                SetFailureKind::NotIncreasing => "not_increasing",
            },
            "measure": ext(&f.measure),
            "integral": ext(&f.integral),
        })).collect::<Vec<_>>(),
        "whole_space_by_depth": r.evidence.iter().map(|d| json!({
            "n": d.n,
            "measure": ext(&d.measure),
            "integral": ext(&d.integral),
        })).collect::<Vec<_>>(),
    })
}

pub fn sigma_witness(r: &SigmaReport, space: &MeasurableSpace) -> Option<String> {
    r.failures.first().map(|f| {
        format!(
            "A = {} at depth {}: mu = {}, integral = {}",
            space.format_set(f.set),
            f.n,
            f.measure,
            f.integral
        )
    })
}
