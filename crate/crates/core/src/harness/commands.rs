use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{resolve_set, CommandOptions, ExperimentConfig};
use crate::check::{Check, CheckOutcome};
use crate::error::{Error, Result};
use crate::field::{FieldParams, PointId};
use crate::geometry::{
    affine_lines, check_poles, check_slice, random_independent_tuple, verify_sphere_size_bounds, AffineSubspace,
    Geometry,
};
use crate::graph::DistanceGraph;
use crate::pac::{child_seed, loss_ceiling, sample_complexity_sweep, LearningTask, SweepConfig};
use crate::pointset::PointSet;
use crate::prism::{
    classify_prism, count_prisms_formula, enumerate_prisms, factorial, find_bad_sets, max_poles_bound,
    PrismClass, PrismFilter, PrismOrder,
};
use crate::vc::{prism_guided_witness, validate_assignment, vc_dimension, ClassKind, Hypothesis, VcBudget};

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::InvalidArgument(format!("result not representable: {e}")))
}

fn graph_for(config: &ExperimentConfig, params: &FieldParams) -> Result<DistanceGraph> {
    let set = resolve_set(&config.set, params)?;
    DistanceGraph::new(Arc::new(Geometry::new(*params)), &set)
}

pub(super) fn dispatch(config: &ExperimentConfig, params: &FieldParams) -> Result<(Value, Vec<Check>)> {
    match &config.command {
        CommandOptions::SphereSize => sphere_size(params),
        CommandOptions::Gamma { k } => gamma(&graph_for(config, params)?, *k),
        CommandOptions::Prisms {
            n,
            filter,
            order,
            limit,
            max_prisms,
        } => {
            let g = graph_for(config, params)?;
            prisms(&g, n.unwrap_or(params.d()), *filter, *order, *limit, *max_prisms, config.seed)
        }
        CommandOptions::BadSets { n, limit, max_prisms } => {
            let g = graph_for(config, params)?;
            bad_sets(&g, n.unwrap_or(params.d()), *limit, *max_prisms)
        }
        CommandOptions::VcDim {
            class,
            max_candidates,
            max_prisms,
            structural_cap_only,
            time_budget_secs,
        } => {
            let g = graph_for(config, params)?;
            let budget = VcBudget {
                max_candidates: *max_candidates,
                max_prisms: *max_prisms,
                search_above_cap: !structural_cap_only,
                deadline: time_budget_secs.map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0))),
            };
            vc_dim(&g, *class, &budget)
        }
        CommandOptions::Witness { max_prisms } => witness(&graph_for(config, params)?, *max_prisms),
        CommandOptions::PacSweep {
            class,
            epsilon,
            delta,
            m_grid,
            trials,
            confidence_band,
            target,
            max_hypotheses,
        } => {
            let g = graph_for(config, params)?;
            let sweep = SweepConfig {
                epsilon: *epsilon,
                delta: *delta,
                m_grid: m_grid.clone(),
                trials: *trials,
                confidence_band: *confidence_band,
            };
            pac_sweep(&g, *class, &sweep, target.as_deref(), *max_hypotheses, config.seed)
        }
        CommandOptions::Verify(opts) => {
            let set = resolve_set(&config.set, params)?;
            verify_suite(params, &set, opts, config.seed)
        }
    }
}

fn sphere_size(params: &FieldParams) -> Result<(Value, Vec<Check>)> {
    let report = verify_sphere_size_bounds(params);
    let at_t = report.rows.iter().find(|r| r.t == params.t()).map(|r| r.size);
    let check = Check::new("sphere-size-bounds", CheckOutcome::from_bool(report.all_hold()));
    Ok((json!({ "size_at_t": at_t, "report": to_value(&report)? }), vec![check]))
}

fn gamma(graph: &DistanceGraph, k: usize) -> Result<(Value, Vec<Check>)> {
    let report = graph.gamma_report(k)?;
    let check = Check::new("chain-count-bound", report.outcome());
    Ok((
        json!({
            "vertices": graph.num_vertices(),
            "edges": graph.num_edges(),
            "report": to_value(&report)?,
        }),
        vec![check],
    ))
}

fn prisms(
    graph: &DistanceGraph,
    n: usize,
    filter: PrismFilter,
    order: PrismOrder,
    limit: usize,
    max_prisms: usize,
    seed: u64,
) -> Result<(Value, Vec<Check>)> {
    let formula = count_prisms_formula(graph, n)?;
    let mut listed = Vec::new();
    let mut enumerated = 0usize;
    for p in enumerate_prisms(graph, n, filter, order).take(max_prisms.saturating_add(1)) {
        if listed.len() < limit {
            listed.push(p);
        }
        enumerated += 1;
    }
    let complete = enumerated <= max_prisms;
    let enumerated = enumerated.min(max_prisms);
    let mut checks = Vec::new();
    if filter == PrismFilter::Nondegenerate {
        let scale = match order {
            PrismOrder::Ordered => 1,
            PrismOrder::Unordered => 2 * factorial(n),
        };
        checks.push(if complete {
            Check::new(
                "prism-formula",
                CheckOutcome::from_bool(enumerated as u128 * scale == formula),
            )
            .with_detail(format!("formula {formula}, enumerated {enumerated} x {scale}"))
        } else {
            Check::new("prism-formula", CheckOutcome::Informational)
                .with_detail(format!("enumeration stopped at {max_prisms} prisms"))
        });
    }
    let mut results = json!({
        "n": n,
        "filter": filter,
        "order": order,
        "formula_count": to_value(&formula)?,
        "enumerated": enumerated,
        "enumeration_complete": complete,
        "prisms": to_value(&listed)?,
    });
    if n == graph.params().d() && formula > 0 {
        use crate::prism::{affinely_nondegenerate_fraction, FractionMethod};
        let method = if formula <= max_prisms as u128 {
            FractionMethod::Exact
        } else {
            FractionMethod::Sampled { samples: 2000, seed }
        };
        let fraction = affinely_nondegenerate_fraction(graph, method)?;
        checks.push(
            Check::new("affinely-nondegenerate-fraction", CheckOutcome::Informational)
                .with_detail(format!("{:.6}", fraction.ratio)),
        );
        results["fraction"] = to_value(&fraction)?;
    }
    Ok((results, checks))
}

fn bad_sets(graph: &DistanceGraph, n: usize, limit: usize, max_prisms: usize) -> Result<(Value, Vec<Check>)> {
    let geometry = graph.geometry();
    let params = graph.params();
    let mut examined = 0usize;
    let mut with_bad = 0usize;
    let mut without_bad = Vec::new();
    let mut listed = Vec::new();
    let mut bad_by_size = vec![0usize; n];
    let mut bound_violations = Vec::new();
    for prism in enumerate_prisms(graph, n, PrismFilter::AffinelyNondegenerate, PrismOrder::Unordered).take(max_prisms)
    {
        examined += 1;
        let report = find_bad_sets(&prism, geometry);
        if report.admits_bad_set() {
            with_bad += 1;
        } else if without_bad.len() < limit {
            without_bad.push(prism.clone());
        }
        for b in report.bad_subsets() {
            let k = b.subset.len();
            bad_by_size[k] += 1;
            if b.pole_count as u128 >= max_poles_bound(k, params) {
                bound_violations.push(json!({ "prism": to_value(&prism)?, "subset": to_value(&b.subset)?, "poles": b.pole_count, "bound": to_value(&max_poles_bound(k, params))? }));
            }
        }
        if listed.len() < limit {
            listed.push(report);
        }
    }
    let outcome = if examined == 0 {
        CheckOutcome::HypothesisUnmet
    } else {
        CheckOutcome::from_bool(bound_violations.is_empty())
    };
    let check = Check::new("bad-set-max-poles", outcome)
        .with_detail(format!("{} violations among {examined} prisms", bound_violations.len()));
    Ok((
        json!({
            "n": n,
            "examined": examined,
            "complete": examined < max_prisms,
            "prisms_with_bad_set": with_bad,
            "prisms_without_bad_set": examined - with_bad,
            "bad_sets_by_size": bad_by_size,
            "examples_without_bad_set": to_value(&without_bad)?,
            "reports": to_value(&listed)?,
            "bound_violations": bound_violations,
        }),
        vec![check],
    ))
}

fn vc_dim(graph: &DistanceGraph, class: ClassKind, budget: &VcBudget) -> Result<(Value, Vec<Check>)> {
    let report = vc_dimension(graph, class, budget);
    let space = graph.geometry().space();
    let mut checks = vec![Check::new("vc-structural-cap", CheckOutcome::from_bool(!report.cap_violated))
        .with_detail(format!("cap {}", report.structural_cap))];
    if let Some(w) = &report.prism_witness {
        checks.push(Check::new("witness-valid", CheckOutcome::from_bool(w.validate(space))));
    }
    let value = json!({
        "vc": report.value.lower(),
        "exact": matches!(report.value, crate::vc::VcValue::Exact(_)),
        "report": to_value(&report)?,
    });
    Ok((value, checks))
}

fn witness(graph: &DistanceGraph, max_prisms: usize) -> Result<(Value, Vec<Check>)> {
    let (found, tried) = prism_guided_witness(graph, max_prisms);
    let space = graph.geometry().space();
    let Some(w) = found else {
        let outcome = if tried == 0 {
            CheckOutcome::HypothesisUnmet
        } else {
            CheckOutcome::Fail
        };
        return Ok((
            json!({ "prisms_tried": tried, "witness": null }),
            vec![Check::new("witness-found", outcome).with_detail(format!("{tried} prisms tried"))],
        ));
    };
    let one = w.one_param_assignment(graph.vertex_set(), space);
    let one_ok = one
        .as_ref()
        .is_some_and(|a| validate_assignment(&w.prism.center, a, space));
    let checks = vec![
        Check::new("witness-valid", CheckOutcome::from_bool(w.validate(space))),
        Check::new("one-param-assignment-valid", CheckOutcome::from_bool(one_ok)),
    ];
    Ok((
        json!({
            "prisms_tried": tried,
            "witness": to_value(&w)?,
            "one_param_assignment": to_value(&one)?,
        }),
        checks,
    ))
}

fn pac_sweep(
    graph: &DistanceGraph,
    class: ClassKind,
    sweep: &SweepConfig,
    target: Option<&[u32]>,
    max_hypotheses: u64,
    seed: u64,
) -> Result<(Value, Vec<Check>)> {
    let domain = graph.vertex_set().clone();
    let e = domain.len() as u64;
    let class_size = match class {
        ClassKind::TwoParam => e * e.saturating_sub(1),
        ClassKind::OneParam => e,
    };
    if class_size > max_hypotheses {
        return Err(Error::InvalidArgument(format!(
            "class has {class_size} hypotheses, above --max-hypotheses {max_hypotheses}"
        )));
    }
    let geometry = graph.geometry_arc().clone();
    let ceiling = loss_ceiling(&domain, class, &geometry)?;
    let target = match (class, target) {
        (_, None) => ceiling.argmax,
        (ClassKind::TwoParam, Some(&[u, v])) => Hypothesis::two_param(PointId(u), PointId(v))?,
        (ClassKind::OneParam, Some(&[y])) => Hypothesis::one_param(PointId(y)),
        (_, Some(t)) => {
            return Err(Error::InvalidArgument(format!(
                "target needs {} point indices, got {}",
                if class == ClassKind::TwoParam { 2 } else { 1 },
                t.len()
            )))
        }
    };
    let task = LearningTask::uniform(geometry, domain, target, seed)?;
    let curve = sample_complexity_sweep(&task, sweep)?;
    let all_consistent = curve.points.iter().all(|p| p.consistent == p.trials);
    let max_loss = curve.points.iter().map(|p| p.max_loss).fold(0.0, f64::max);
    let checks = vec![
        Check::new("erm-sample-consistent", CheckOutcome::from_bool(all_consistent)),
        Check::new("loss-within-ceiling", CheckOutcome::from_bool(max_loss <= ceiling.ceiling))
            .with_detail(format!("max loss {max_loss}, ceiling {}", ceiling.ceiling)),
    ];
    Ok((
        json!({
            "target": to_value(&target)?,
            "ceiling": to_value(&ceiling)?,
            "curve": to_value(&curve)?,
        }),
        checks,
    ))
}

/// Budgets for the one-shot check suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Random subspaces per dimension and random tuples per size.
    pub samples: usize,
    /// Prisms examined by the enumeration-based checks.
    pub max_prisms: usize,
    /// Prisms searched for bad sets.
    pub bad_set_prisms: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            samples: 1000,
            max_prisms: 200_000,
            bad_set_prisms: 200,
        }
    }
}

/// Every machine-checkable claim on one instance: sphere sizes, chain
/// counts, the prism count formula, sphere slices of affine subspaces, common
/// poles of independent tuples, affine nondegeneracy of 3-prisms and the
/// pole bound for bad sets.
pub fn verify_suite(
    params: &FieldParams,
    set: &PointSet,
    opts: &VerifyOptions,
    seed: u64,
) -> Result<(Value, Vec<Check>)> {
    let geometry = Arc::new(Geometry::new(*params));
    let graph = DistanceGraph::new(geometry.clone(), set)?;
    let d = params.d();
    let mut checks = Vec::new();
    let mut results = serde_json::Map::new();

    let spheres = verify_sphere_size_bounds(params);
    checks.push(Check::new("sphere-size-bounds", CheckOutcome::from_bool(spheres.all_hold())));
    results.insert("sphere_sizes".into(), to_value(&spheres)?);

    let mut gammas = Vec::new();
    for k in 1..=3 {
        let r = graph.gamma_report(k)?;
        checks.push(Check::new(format!("chain-count-bound-k{k}"), r.outcome()));
        gammas.push(r);
    }
    results.insert("chain_counts".into(), to_value(&gammas)?);

    let mut prism_rows = Vec::new();
    let mut sizes = vec![2];
    if d > 2 {
        sizes.push(d);
    }
    for n in sizes {
        let formula = count_prisms_formula(&graph, n)?;
        let scale = 2 * factorial(n);
        let name = format!("prism-formula-n{n}");
        if formula / scale > opts.max_prisms as u128 {
            checks.push(Check::new(name, CheckOutcome::Informational).with_detail("over budget, skipped"));
            continue;
        }
        let unordered = enumerate_prisms(&graph, n, PrismFilter::Nondegenerate, PrismOrder::Unordered).count() as u128;
        checks.push(
            Check::new(name, CheckOutcome::from_bool(unordered * scale == formula))
                .with_detail(format!("formula {formula}, enumerated {unordered} x {scale}")),
        );
        prism_rows.push(json!({ "n": n, "formula": to_value(&formula)?, "unordered": to_value(&unordered)? }));
    }
    results.insert("prism_counts".into(), Value::Array(prism_rows));

    // Sphere slices: every line when the space is small, plus random subspaces.
    let mut slice_total = 0usize;
    let mut slice_violations = Vec::new();
    let mut slice_isotropic = 0usize;
    if params.num_points() <= 4096 {
        for line in affine_lines(params) {
            let c = check_slice(&line, params);
            slice_total += 1;
            if !c.within_bound {
                slice_isotropic += usize::from(c.totally_isotropic);
                slice_violations.push(json!({ "subspace": to_value(&line)?, "check": to_value(&c)? }));
            }
        }
    }
    for n in 1..=d {
        let mut rng = ChaCha8Rng::seed_from_u64(child_seed(seed, n, 45));
        for _ in 0..opts.samples {
            let sub = AffineSubspace::random(params, n, &mut rng)?;
            let c = check_slice(&sub, params);
            slice_total += 1;
            if !c.within_bound {
                slice_isotropic += usize::from(c.totally_isotropic);
                slice_violations.push(json!({ "subspace": to_value(&sub)?, "check": to_value(&c)? }));
            }
        }
    }
    checks.push(
        Check::new("sphere-slice-bound", CheckOutcome::from_bool(slice_violations.is_empty()))
            .with_detail(format!(
                "{} violations in {slice_total} subspaces, {slice_isotropic} totally isotropic",
                slice_violations.len()
            )),
    );
    let first_violations: Vec<Value> = slice_violations.iter().take(5).cloned().collect();
    results.insert(
        "sphere_slices".into(),
        json!({ "examined": slice_total, "violations": slice_violations.len(), "examples": first_violations }),
    );

    let mut pole_total = 0usize;
    let mut pole_violations = Vec::new();
    let mut isotropic_violations = 0usize;
    for k in 1..=d {
        let mut rng = ChaCha8Rng::seed_from_u64(child_seed(seed, k, 47));
        for _ in 0..opts.samples {
            let anchors = random_independent_tuple(geometry.space(), k, &mut rng)?;
            let c = check_poles(&anchors, &geometry)?;
            pole_total += 1;
            if !c.within_bound {
                isotropic_violations += usize::from(c.poles_isotropic);
                pole_violations.push(c);
            }
        }
    }
    checks.push(
        Check::new("common-pole-bound", CheckOutcome::from_bool(pole_violations.is_empty())).with_detail(format!(
            "{} violations in {pole_total} tuples, {isotropic_violations} with poles on a totally isotropic subspace",
            pole_violations.len()
        )),
    );
    results.insert(
        "common_poles".into(),
        json!({
            "examined": pole_total,
            "violations": pole_violations.len(),
            "examples": to_value(&pole_violations.iter().take(5).collect::<Vec<_>>())?,
        }),
    );

    if d == 3 {
        let mut examined = 0usize;
        let mut exceptions = Vec::new();
        for p in enumerate_prisms(&graph, 3, PrismFilter::Nondegenerate, PrismOrder::Unordered).take(opts.max_prisms)
        {
            examined += 1;
            if classify_prism(&p, &geometry)? != PrismClass::AffinelyNondegenerate {
                exceptions.push(p);
            }
        }
        let outcome = if examined == 0 {
            CheckOutcome::HypothesisUnmet
        } else {
            CheckOutcome::from_bool(exceptions.is_empty())
        };
        checks.push(
            Check::new("three-prisms-affinely-nondegenerate", outcome)
                .with_detail(format!("{} exceptions among {examined} prisms", exceptions.len())),
        );
        results.insert(
            "three_prisms".into(),
            json!({
                "examined": examined,
                "exceptions": exceptions.len(),
                "examples": to_value(&exceptions.iter().take(5).collect::<Vec<_>>())?,
            }),
        );
    }

    let (bad_results, bad_checks) = bad_sets(&graph, d, 0, opts.bad_set_prisms)?;
    checks.extend(bad_checks);
    results.insert("bad_sets".into(), bad_results);

    Ok((Value::Object(results), checks))
}
