use choquet_rn::choquet::{choquet_integral, comonotone_witness, indefinite_integral, integral};
use choquet_rn::classical::{classical_rn_check, hahn_positive_set, ClassicalOutcome};
use choquet_rn::decomposition::{
    check_decomposition, derive_function, dyadic_approximant, family_from_function, lemma_tail_check, verify_rn,
};
use choquet_rn::gen;
use choquet_rn::measure::Generator;
use choquet_rn::props::{
    abs_continuous, equal_ae, has_property_sigma, is_null_additive, is_weakly_null_additive, strongly_abs_continuous,
};
use choquet_rn::sigma::{glue_derivative, power_set_tests, test_sets, verify_sigma_finite};
use choquet_rn::solver::{solve_rn, MAX_SOLVER_ATOMS};
use choquet_rn::spec::{parse_set_key, LoadedSpec};
use choquet_rn::{Error, ExtRational, MonotoneMeasure, SimpleFunction};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use serde_json::{json, Value};

use crate::render;
use crate::report::Outcome;

/// Names of the spec entries a command reads.
#[derive(Clone, Debug)]
pub struct Names {
    pub mu: String,
    pub nu: String,
    pub f: String,
    pub g: String,
}

impl Default for Names {
    fn default() -> Self {
        Names {
            mu: "mu".into(),
            nu: "nu".into(),
            f: "f".into(),
            g: "g".into(),
        }
    }
}

fn pair<'a>(spec: &'a LoadedSpec, names: &Names) -> Result<(&'a MonotoneMeasure, &'a MonotoneMeasure), Error> {
    Ok((spec.measure(&names.mu)?, spec.measure(&names.nu)?))
}

pub fn props(spec: &LoadedSpec, names: &Names) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    let mut measures = serde_json::Map::new();
    for (name, m) in &spec.measures {
        let space = m.space_arc();
        measures.insert(
            name.clone(),
            json!({
                "table": render::measure(m),
                "additive": m.is_additive(),
                "weakly_null_additive": render::property(&is_weakly_null_additive(m), space),
                "null_additive": render::property(&is_null_additive(m), space),
                "property_sigma": render::property(&has_property_sigma(m), space),
            }),
        );
    }
    out.put("measures", measures);
    if let (Ok(mu), Ok(nu)) = (spec.measure(&names.mu), spec.measure(&names.nu)) {
        let space = mu.space_arc();
        let abs = abs_continuous(mu, nu)?;
        out.verdict(
            format!("{} << {}", names.mu, names.nu),
            abs.holds,
            abs.witness.as_ref().map(|w| render::witness(w, space)),
        );
        out.put("abs_continuous", render::property(&abs, space));
        if mu.is_finite() {
            let strong = strongly_abs_continuous(mu, nu)?;
            let witness = strong
                .moduli
                .iter()
                .find(|m| m.delta.is_zero())
                .map(|m| format!("mu({}) >= {} with nu = 0", space.format_set(m.attained_at), m.epsilon));
            out.verdict(format!("{} <<s {}", names.mu, names.nu), strong.holds, witness);
            out.put("strongly_abs_continuous", render::moduli(&strong, space));
        } else {
            out.put("strongly_abs_continuous", "skipped: mu takes the value inf");
        }
    }
    Ok(out)
}

pub fn integrate(spec: &LoadedSpec, names: &Names, set: Option<&str>) -> Result<Outcome, Error> {
    let f = spec.function(&names.f)?;
    let nu = spec.measure(&names.nu)?;
    let space = nu.space_arc();
    let a = match set {
        Some(key) => parse_set_key(space, key)?,
        None => space.full(),
    };
    let b = choquet_integral(f, nu, a)?;
    let mut out = Outcome::default();
    out.put("set", render::set(space, a));
    out.put("integral", render::ext(&b.total));
    out.put("breakdown", render::breakdown(&b, space));
    Ok(out)
}

pub fn comonotone(spec: &LoadedSpec, names: &Names) -> Result<Outcome, Error> {
    let f = spec.function(&names.f)?;
    let g = spec.function(&names.g)?;
    let w = comonotone_witness(f, g)?;
    let mut out = Outcome::default();
    out.verdict(
        format!("{} and {} are comonotone", names.f, names.g),
        w.is_none(),
        w.as_ref().map(|w| render::witness(w, f.space())),
    );
    out.put("comonotone", w.is_none());
    Ok(out)
}

pub fn check(spec: &LoadedSpec, names: &Names) -> Result<Outcome, Error> {
    let (mu, nu) = pair(spec, names)?;
    let family = spec.require_family()?;
    let space = mu.space_arc();
    let report = check_decomposition(mu, nu, family)?;
    let mut out = Outcome::default();
    out.verdict("decomposition", report.holds, render::decomposition_witness(&report, space));
    out.put("family", render::family(family));
    out.put("decomposition", render::decomposition(&report, space));
    if report.holds {
        let lemma = lemma_tail_check(mu, nu, family)?;
        out.verdict("tail bound", lemma.holds, None);
        out.put("tail_bound", render::lemma(&lemma));
    }
    Ok(out)
}

fn optional_verification(spec: &LoadedSpec, names: &Names, f: &SimpleFunction, out: &mut Outcome) -> Result<(), Error> {
    if let Ok((mu, nu)) = pair(spec, names) {
        let report = verify_rn(mu, nu, f)?;
        out.verdict("verification", report.holds, render::rn_witness(&report, f.space()));
        out.put("verification", render::rn(&report, f.space()));
    }
    Ok(())
}

pub fn derive(spec: &LoadedSpec, names: &Names) -> Result<Outcome, Error> {
    let family = spec.require_family()?;
    let f = derive_function(family);
    let mut out = Outcome::default();
    out.put("family", render::family(family));
    out.put("f", render::function(&f));
    optional_verification(spec, names, &f, &mut out)?;
    Ok(out)
}

pub fn dyadic(spec: &LoadedSpec, names: &Names, n: u32) -> Result<Outcome, Error> {
    let family = spec.require_family()?;
    let f = derive_function(family);
    let fnn = dyadic_approximant(family, n)?;
    let space = family.space();
    let step = ExtRational::from(BigRational::new(BigInt::one(), BigInt::one() << n));
    let cap = f.min_const(&ExtRational::from_integer(u64::from(n)));
    let bad = (0..space.atom_count()).find(|&x| fnn.get(x) > f.get(x) || cap.get(x) > &(fnn.get(x) + &step));
    let mut out = Outcome::default();
    out.verdict(
        "f^n - 2^-n <= f_n <= f",
        bad.is_none(),
        bad.map(|x| format!("atom {}", space.atom_label(x))),
    );
    out.put("n", n);
    out.put("f", render::function(&f));
    out.put("f_n", render::function(&fnn));
    if let Ok((mu, nu)) = pair(spec, names) {
        let mut rows = serde_json::Map::new();
        let mut first_excess = None;
        for a in space.sets()? {
            let value = integral(&fnn, nu, a)?;
            if value > *mu.get(a) && first_excess.is_none() {
                first_excess = Some(a);
            }
            rows.insert(
                choquet_rn::spec::set_key(space, a),
                json!({"integral": render::ext(&value), "mu": render::ext(mu.get(a))}),
            );
        }
        out.verdict(
            "integral of f_n <= mu on every set",
            first_excess.is_none(),
            first_excess.map(|a| space.format_set(a)),
        );
        out.put("integrals", rows);
    }
    Ok(out)
}

pub fn verify(spec: &LoadedSpec, names: &Names) -> Result<Outcome, Error> {
    let (mu, nu) = pair(spec, names)?;
    let f = spec.function(&names.f)?;
    let report = verify_rn(mu, nu, f)?;
    let mut out = Outcome::default();
    out.verdict("verification", report.holds, render::rn_witness(&report, f.space()));
    out.put("f", render::function(f));
    out.put("verification", render::rn(&report, f.space()));
    Ok(out)
}

pub fn solve(spec: &LoadedSpec, names: &Names) -> Result<Outcome, Error> {
    let (mu, nu) = pair(spec, names)?;
    let space = mu.space_arc();
    let cert = solve_rn(mu, nu)?;
    let mut out = Outcome::default();
    out.verdict("solvable", cert.is_solvable(), render::certificate_witness(&cert, space));
    out.put("certificate", render::certificate(&cert, space));
    Ok(out)
}

pub fn classical(spec: &LoadedSpec, names: &Names) -> Result<Outcome, Error> {
    let (mu, nu) = pair(spec, names)?;
    let space = mu.space_arc();
    let report = classical_rn_check(mu, nu)?;
    let mut out = Outcome::default();
    let abs = &report.abs_continuity;
    out.verdict(
        format!("{} << {}", names.mu, names.nu),
        abs.holds,
        abs.witness.as_ref().map(|w| render::witness(w, space)),
    );
    out.put("abs_continuous", render::property(abs, space));
    match &report.outcome {
        ClassicalOutcome::Derived {
            family,
            f,
            decomposition,
            verification,
            ratio_agreement,
        } => {
            out.verdict("derivative verified", report.solvable(), render::rn_witness(verification, space));
            // Hahn positive sets between consecutive breakpoints
            let bps = family.breakpoints();
            let hahn: Vec<Value> = bps
                .iter()
                .enumerate()
                .map(|(k, b)| -> Result<Value, Error> {
                    let next = bps.get(k + 1).map_or_else(|| &b.alpha + BigRational::one(), |n| n.alpha.clone());
                    let tau = (&b.alpha + &next) / BigRational::from_integer(2.into());
                    let positive = hahn_positive_set(mu, nu, &tau)?;
                    Ok(json!({"tau": render::rat(&tau), "positive_set": render::set(space, positive)}))
                })
                .collect::<Result<_, _>>()?;
            out.put("hahn_sets", hahn);
            out.put("family", render::family(family));
            out.put("f", render::function(f));
            out.put("decomposition", render::decomposition(decomposition, space));
            out.put("verification", render::rn(verification, space));
            out.put("ratio_agreement", render::ae(ratio_agreement, space));
        }
        ClassicalOutcome::Refuted { solver } => {
            out.put(
                "solver",
                solver
                    .as_ref()
                    .map(|c| render::certificate(c, space))
                    .unwrap_or_else(|| json!(format!("skipped above {MAX_SOLVER_ATOMS} atoms"))),
            );
        }
    }
    out.verdict("classical and general solver agree", report.consistent(), None);
    Ok(out)
}

pub fn sigma_finite(spec: &LoadedSpec, n: Option<usize>) -> Result<Outcome, Error> {
    let (model, rule) = spec.require_truncations()?;
    let model = match n {
        Some(n) if n != model.n_max() => model.truncate(n)?,
        _ => model.clone(),
    };
    let mut out = Outcome::default();
    out.put("n_max", model.n_max());
    out.put("mu_rule", model.mu_rule().name());
    out.put("nu_rule", model.nu_rule().name());
    out.put("family_rule", rule.name());
    let glue = glue_derivative(&model, rule)?;
    out.verdict("glued derivative", glue.holds(), render::glue_witness(&glue));
    out.put("glue", render::glue(&glue));
    if let Ok(f) = glue.derivative() {
        out.verdict(
            "nu(f = inf) = 0",
            glue.finite_ae(),
            (!glue.finite_ae()).then(|| format!("nu = {}", glue.infinite_set_nu)),
        );
        let sets = test_sets(model.top_space());
        out.put("test_sets", if power_set_tests(&model) { "power set" } else { "structured" });
        let report = verify_sigma_finite(&model, f, &sets)?;
        out.verdict("verification at every depth", report.holds, render::sigma_witness(&report, model.top_space()));
        out.put("verification", render::sigma(&report, model.top_space()));
    }
    Ok(out)
}

/// Randomized consistency checks over `count` generated instances.
pub fn suite(seed: u64, count: usize) -> Result<Outcome, Error> {
    let mut rng = gen::rng(seed);
    let mut failures: [Option<usize>; 5] = [None; 5];
    let mut note = |slot: usize, k: usize, ok: bool| {
        if !ok && failures[slot].is_none() {
            failures[slot] = Some(k);
        }
    };
    let mut null_perturbations = 0;
    for k in 0..count {
        let space = gen::space(&mut rng, 1, 5);
        let nu = gen::monotone(&mut rng, &space, 0.3);
        let f = gen::function(&mut rng, &space, 0.2);
        let mu = indefinite_integral(&f, &nu)?;
        let family = family_from_function(&f);
        let round = check_decomposition(&mu, &nu, &family)?.holds && derive_function(&family) == f;
        note(0, k, round && verify_rn(&mu, &nu, &f)?.holds);
        note(1, k, solve_rn(&mu, &nu)?.is_solvable());
        let passes = check_decomposition(&mu, &nu, &family)?.holds;
        note(2, k, !passes || (abs_continuous(&mu, &nu)?.holds && strongly_abs_continuous(&mu, &nu)?.holds));
        let (p, q) = gen::comonotone_pair(&mut rng, &space);
        let a = gen::set(&mut rng, &space);
        note(3, k, integral(&p.add(&q)?, &nu, a)? == integral(&p, &nu, a)? + integral(&q, &nu, a)?);
        // additive ν: derivatives agree a.e. after a null perturbation
        let weights: Vec<ExtRational> = (0..space.atom_count()).map(|_| gen::sparse_rational(&mut rng, 0.3, 5, 3)).collect();
        let add = MonotoneMeasure::from_generator(space.clone(), &Generator::Additive(weights.clone()))?;
        let mu_add = indefinite_integral(&f, &add)?;
        let values = (0..space.atom_count())
            .map(|x| {
                if weights[x].is_zero() && rng.gen_bool(0.5) {
                    null_perturbations += 1;
                    gen::sparse_rational(&mut rng, 0.0, 9, 2)
                } else {
                    f.get(x).clone()
                }
            })
            .collect();
        let g = SimpleFunction::new(space.clone(), values)?;
        note(4, k, verify_rn(&mu_add, &add, &g)?.holds && equal_ae(&f, &g, &add)?.equal);
    }
    let labels = [
        "round trip through the level-set family",
        "integrals are solvable",
        "decomposition implies absolute continuity",
        "comonotone additivity",
        "uniqueness a.e. for additive measures",
    ];
    let mut out = Outcome::default();
    for (label, failure) in labels.iter().zip(failures) {
        out.verdict(*label, failure.is_none(), failure.map(|k| format!("instance {k}")));
    }
    out.put("seed", seed);
    out.put("count", count);
    out.put("null_perturbations", null_perturbations);
    Ok(out)
}
