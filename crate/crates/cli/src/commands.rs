use std::collections::BTreeMap;
use std::fmt::Write as _;

use fpp_core::certificates::{
    certificate_pipeline, coherence_phi_lower, mutual_coherence, solve_certificate,
    spectral_phi_lower,
};
use fpp_core::dynamics::{
    displacement_diameter_check, fixed_point_affine, orbit, MapKind, MapSpec, Scheme,
};
use fpp_core::pressure::{
    inner_unsigned_min, per_k_value, phi_k, pressure_p, BoundKind, PerKRecord, PressureQuery,
    SearchMode, Variant,
};
use fpp_core::replication::{run_all, run_case, Quantity, ReplicationCase};
use fpp_core::{Error, PointSet, Vector};
use serde_json::{json, Value};

use crate::args::{
    CertificateArgs, CoherenceArgs, DynamicsArgs, ModeArg, PressureArgs, ReplicateArgs, SchemeArg,
    VariantArg,
};
use crate::input::{self, Problem};
use crate::report::{list, Outcome, Report};
use crate::CliError;

/// Largest set for which `coherence --cross-check` runs exhaustive levels.
const CROSS_CHECK_MAX_POINTS: usize = 6;
const BOUND_SLACK: f64 = 1e-8;

pub struct Context {
    pub argv: Vec<String>,
    pub threads: usize,
}

impl Context {
    fn outcome(&self, config: Value, results: Value, text: String, exit: u8) -> Outcome {
        Outcome {
            report: Report {
                command: self.argv.clone(),
                config,
                results,
                wall_time_seconds: None,
            },
            text,
            exit,
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn kind_label(kind: BoundKind) -> &'static str {
    match kind {
        BoundKind::Exact => "exact",
        BoundKind::LowerBound => "lower_bound",
        BoundKind::Approximate => "approximate",
    }
}

fn query(p: &Problem, threads: usize) -> PressureQuery {
    let mut q = PressureQuery::new(p.set.clone(), p.base.clone()).with_threads(threads);
    if let Some(d) = p.delta {
        q = q.with_delta(d);
    }
    q
}

fn problem_config(path: &std::path::Path, p: &Problem, delta: f64) -> Value {
    json!({
        "input": path.display().to_string(),
        "norm": p.set.norm(),
        "dim": p.set.dim(),
        "m": p.set.len(),
        "base": p.base,
        "delta": p.delta,
        "delta_resolved": delta,
    })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut a, b) {
        a.extend(b);
    }
    a
}

fn table(rows: &[PerKRecord]) -> String {
    let mut s = String::from("k\tvalue\tbound\tadmissible\twitness\n");
    for r in rows {
        let witness: Vec<String> = r.witness.iter().map(usize::to_string).collect();
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}\t[{}]",
            r.k,
            r.value,
            kind_label(r.bound_kind),
            r.admissible,
            witness.join(", ")
        );
    }
    s
}

pub fn pressure(ctx: &Context, args: &PressureArgs) -> Result<Outcome, CliError> {
    if let Some(eta) = args.eta {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(CliError::Usage(format!("eta out of range (0, 1]: {eta}")));
        }
    }
    let variant = match args.variant {
        VariantArg::Signed => Variant::Signed,
        VariantArg::Unsigned => Variant::Unsigned,
        VariantArg::Separated => Variant::Separated,
    };
    if variant == Variant::Separated && args.eta.is_none() {
        return Err(CliError::Usage("--variant separated requires --eta".into()));
    }
    let problem = input::load(&args.input.input, args.input.norm)?;
    let mut q = query(&problem, ctx.threads)
        .with_budget(args.budget)
        .with_seed(args.seed);
    if let Some(eta) = args.eta {
        q = q.with_eta(eta);
    }
    match args.mode {
        ModeArg::Auto => {}
        ModeArg::Exhaustive => q = q.with_mode(SearchMode::Exhaustive),
        ModeArg::Search => q = q.with_mode(SearchMode::Search),
    }
    if let Some(k_max) = args.k_max {
        q = q.with_k_max(k_max as usize);
    }
    let delta = q.resolved_delta()?;
    let config = merge(
        problem_config(&args.input.input, &problem, delta),
        json!({
            "variant": variant,
            "k": args.k,
            "k_max": args.k_max,
            "eta": args.eta,
            "mode": format!("{:?}", args.mode).to_lowercase(),
            "budget": args.budget,
            "seed": args.seed,
            "threads": ctx.threads,
            "tolerance": args.tolerance,
        }),
    );

    let mut text = format!(
        "variant {}, delta {delta}\n",
        to_value(&variant).as_str().unwrap_or("")
    );
    let results = if let Some(k) = args.k {
        let row = per_k_value(&q, variant, k as usize)?;
        text.push_str(&table(std::slice::from_ref(&row)));
        let positive = row.value > args.tolerance;
        let _ = writeln!(
            text,
            "value: {} ({})",
            row.value,
            kind_label(row.bound_kind)
        );
        json!({
            "per_k": [row],
            "value": row.value,
            "bound_kind": row.bound_kind,
            "positive": positive,
        })
    } else {
        let report = pressure_p(&q, variant)?;
        text.push_str(&table(&report.per_k));
        let _ = writeln!(
            text,
            "truncated inf: {} ({}{})",
            report.truncated_inf,
            kind_label(report.truncated_kind),
            if report.exact_zero_rule_applied {
                ", zero rule applied"
            } else {
                ""
            }
        );
        merge(
            to_value(&report),
            json!({ "positive": report.truncated_inf > args.tolerance }),
        )
    };
    Ok(ctx.outcome(config, results, text, 0))
}

pub fn certificate(ctx: &Context, args: &CertificateArgs) -> Result<Outcome, CliError> {
    let problem = input::load(&args.input.input, args.input.norm)?;
    let q = query(&problem, ctx.threads);
    let delta = q.resolved_delta()?;
    let normalized = q.normalized()?;
    let n = normalized.norm();
    let cert = solve_certificate(normalized.points(), n)?;
    let unsigned_inner = inner_unsigned_min(normalized.points(), n)?;
    let m = normalized.len();
    let tuples: BTreeMap<usize, Vec<usize>> = [(m, (0..m).collect())].into();
    let certs = [(m, cert.clone())].into();
    let pipeline = certificate_pipeline(&q, &tuples, &certs)?;
    let row = &pipeline.rows[0];
    let unsigned_bound = if row.unsigned_certified {
        Some(cert.gamma)
    } else {
        None
    };

    let mut text = String::new();
    let _ = writeln!(text, "f: {}", list(cert.f.as_slice()));
    let _ = writeln!(text, "gamma: {}", cert.gamma);
    let _ = writeln!(
        text,
        "dual norm: {} (ok: {})",
        cert.norm_of_f, row.check.dual_norm_ok
    );
    let _ = writeln!(
        text,
        "level ok: {}, abs level ok: {}",
        row.check.level_ok, row.check.abs_level_ok
    );
    let _ = writeln!(text, "unsigned inner minimum: {}", unsigned_inner.value);
    let _ = writeln!(text, "signed inner minimum: {}", row.signed_inner);
    let _ = writeln!(
        text,
        "signed check: {}",
        to_value(&row.signed_check).as_str().unwrap_or("")
    );

    let results = json!({
        "certificate": cert,
        "check": row.check,
        "unsigned_bound": unsigned_bound,
        "unsigned_inner": unsigned_inner.value,
        "signed_inner": row.signed_inner,
        "signed_check": row.signed_check,
    });
    Ok(ctx.outcome(
        problem_config(&args.input.input, &problem, delta),
        results,
        text,
        0,
    ))
}

pub fn coherence(ctx: &Context, args: &CoherenceArgs) -> Result<Outcome, CliError> {
    let problem = input::load(&args.input.input, args.input.norm)?;
    let q = query(&problem, ctx.threads);
    let delta = q.resolved_delta()?;
    // the bounds concern the differences y - base
    let shifted = PointSet::new(
        problem
            .set
            .points()
            .iter()
            .map(|y| y.sub(&problem.base))
            .collect(),
        problem.set.norm(),
    )?;
    let mu = mutual_coherence(&shifted)?;
    let report = coherence_phi_lower(shifted.len(), mu)?;
    let spectral = spectral_phi_lower(&shifted, delta)?;

    let mut text = String::new();
    let _ = writeln!(text, "mu: {mu}");
    let _ = writeln!(
        text,
        "phi lower (coherence): {} (clamped: {})",
        report.phi_lower, report.clamped
    );
    let _ = writeln!(text, "phi lower (spectral): {spectral}");

    let cross_check = if args.cross_check {
        let m = shifted.len();
        if m > CROSS_CHECK_MAX_POINTS {
            let _ = writeln!(
                text,
                "cross-check skipped: m = {m} > {CROSS_CHECK_MAX_POINTS}"
            );
            Value::Null
        } else {
            let mut rows = Vec::new();
            for k in 1..=m {
                let phi = phi_k(&q, k, SearchMode::Exhaustive)?.value;
                let coherence_ok = report.phi_lower <= phi + BOUND_SLACK;
                let spectral_ok = spectral <= phi + BOUND_SLACK;
                let _ = writeln!(
                    text,
                    "k = {k}: phi_k {phi}, coherence ok {coherence_ok}, spectral ok {spectral_ok}"
                );
                rows.push(json!({
                    "k": k,
                    "phi_k": phi,
                    "coherence_ok": coherence_ok,
                    "spectral_ok": spectral_ok,
                }));
            }
            Value::Array(rows)
        }
    } else {
        Value::Null
    };

    let results = json!({
        "mu": mu,
        "m": report.m,
        "lambda_min": report.lambda_min,
        "phi_lower": report.phi_lower,
        "clamped": report.clamped,
        "spectral_phi_lower": spectral,
        "cross_check": cross_check,
    });
    let config = merge(
        problem_config(&args.input.input, &problem, delta),
        json!({ "cross_check": args.cross_check }),
    );
    Ok(ctx.outcome(config, results, text, 0))
}

pub fn dynamics(ctx: &Context, args: &DynamicsArgs) -> Result<Outcome, CliError> {
    let map: MapSpec = serde_json::from_str(&input::read(&args.map)?)
        .map_err(|e| CliError::Usage(format!("invalid map: {e}")))?;
    map.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let x0 = match &args.x0 {
        Some(s) => {
            Vector::new(input::parse_list(s)?).map_err(|e| CliError::Usage(e.to_string()))?
        }
        None => Vector::zeros(map.dim()),
    };
    if x0.dim() != map.dim() {
        return Err(CliError::Usage(format!(
            "x0 has length {}, map dimension is {}",
            x0.dim(),
            map.dim()
        )));
    }
    let region = match &args.region {
        Some(path) => Some(input::load(path, Some(map.ambient_norm))?.set),
        None => None,
    };
    let scheme = match args.scheme {
        SchemeArg::Plain => Scheme::Plain,
        SchemeArg::Krasnoselskii => Scheme::Krasnoselskii,
    };

    let fixed_point = match fixed_point_affine(&map) {
        Ok(x) => Some(x),
        Err(e) if args.fixed_point => return Err(e.into()),
        Err(_) => None,
    };
    let record = orbit(&map, &x0, args.steps, scheme)?;
    let nonexpansive = map.is_nonexpansive().ok();
    let lemmas = if args.check_lemmas {
        let region = match region {
            Some(r) => r,
            None => PointSet::new(record.iterates.clone(), map.ambient_norm)?,
        };
        Some(displacement_diameter_check(&map, &region)?)
    } else {
        None
    };

    let mut text = String::new();
    let _ = writeln!(
        text,
        "map: {}, nonexpansive: {}",
        match map.kind {
            MapKind::Affine { .. } => "affine",
            MapKind::Translation { .. } => "translation",
        },
        nonexpansive.map_or("unknown".to_string(), |b| b.to_string())
    );
    if let Some(x) = &fixed_point {
        let _ = writeln!(text, "fixed point: {}", list(x.as_slice()));
    }
    let last = record.iterates.last().expect("orbit holds x0");
    let _ = writeln!(text, "final iterate: {}", list(last.as_slice()));
    let _ = writeln!(
        text,
        "final residual: {}",
        record.residuals.last().copied().unwrap_or(0.0)
    );
    let _ = writeln!(text, "hull diameter: {}", record.hull_diameter);
    let _ = writeln!(
        text,
        "displacement estimate: {}",
        record.displacement_estimate
    );
    if let Some(l) = &lemmas {
        let _ = writeln!(
            text,
            "lemmas: delta {} <= diam {}: {}; orbit factor-two bound: {}",
            l.delta_est, l.diam, l.lemma_5a_ok, l.lemma_5b_ok
        );
    }

    let config = json!({
        "map": args.map.display().to_string(),
        "spec": map,
        "x0": x0,
        "steps": args.steps,
        "scheme": scheme,
        "check_lemmas": args.check_lemmas,
        "fixed_point": args.fixed_point,
        "region": args.region.as_ref().map(|p| p.display().to_string()),
    });
    let results = json!({
        "nonexpansive": nonexpansive,
        "fixed_point": fixed_point,
        "orbit": record,
        "lemmas": lemmas,
    });
    Ok(ctx.outcome(config, results, text, 0))
}

fn quantity(q: &Quantity) -> String {
    match q {
        Quantity::Scalar(x) => x.to_string(),
        Quantity::Vector(v) => list(v),
    }
}

pub fn replicate(ctx: &Context, args: &ReplicateArgs) -> Result<Outcome, CliError> {
    let cases: Vec<ReplicationCase> = match &args.case {
        Some(name) if !args.all => vec![run_case(name).map_err(|e| match e {
            Error::UnknownCase(_) => CliError::Usage(e.to_string()),
            other => other.into(),
        })?],
        _ => run_all(),
    };
    let passed = cases.iter().filter(|c| c.passed).count();
    let mut text = String::new();
    for c in &cases {
        let _ = writeln!(
            text,
            "{}  {}  computed {}  expected {}  tol {:e}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            quantity(&c.computed),
            quantity(&c.expected),
            c.tolerance
        );
    }
    let _ = writeln!(text, "{passed}/{} passed", cases.len());
    let exit = if passed == cases.len() { 0 } else { 4 };
    let config = json!({ "all": args.all, "case": args.case });
    let results = json!({ "cases": cases, "passed": passed, "total": cases.len() });
    Ok(ctx.outcome(config, results, text, exit))
}
