use std::sync::Arc;

use flatquot_core::descent::{amitsur_exactness, cocycle_check, descend, verify_effectivity, DescentDatum, RingExtension};
use flatquot_core::exactalg::{FpModule, ModVec};
use flatquot_core::flf::FiniteFreeAlgebra;
use flatquot_core::grading::present_subalgebra;
use flatquot_core::groups::{artin_schreier_check, kummer_check};
use flatquot_core::quotients::{
    fiber_square_points_check, freeness_check_constant, freeness_check_diag, gallery, overall, quotient_diag, quotient_flf, relation_from_constant_action,
    torsor_check, Check, GalleryOptions, Verdict,
};
use flatquot_core::{AlgError, Budget, Poly, PresentedAlgebra, Result};
use serde_json::{json, Value};

use crate::job::JobFile;

pub const TASKS: [&str; 10] = [
    "quotient-diag",
    "quotient-flf",
    "torsor-check",
    "freeness",
    "gallery",
    "descent",
    "amitsur",
    "finite-free",
    "kummer",
    "artin-schreier",
];

pub struct Outcome {
    pub verdict: Verdict,
    pub result: Value,
}

fn outcome(checks: Vec<Check>, extra: Value) -> Outcome {
    let verdict = overall(&checks);
    let mut result = extra;
    result["checks"] = json!(checks);
    Outcome { verdict, result }
}

fn check(name: &str, ok: bool, witness: impl Into<String>) -> Check {
    Check::new(name, Verdict::from_bool(ok), witness)
}

pub fn run(job: &JobFile, budget: &Budget) -> Result<Outcome> {
    match job.task.as_str() {
        "quotient-diag" => quotient_diag_task(job, budget),
        "quotient-flf" => quotient_flf_task(job, budget),
        "torsor-check" => {
            let a = job.ring()?;
            let g = job.grading(&a)?;
            Ok(outcome(torsor_check(&g, bound(job, &g), budget)?, json!({})))
        }
        "freeness" => freeness_task(job, budget),
        "gallery" => {
            let spec = job.gallery.as_ref().ok_or_else(|| AlgError::InvalidInput("job is missing the \"gallery\" section".into()))?;
            let opts = GalleryOptions { bound: job.bound, n: spec.n.or(job.n) };
            let report = gallery(&spec.name, &opts, budget)?;
            Ok(Outcome { verdict: report.verdict, result: json!(report) })
        }
        "descent" => descent_task(job, budget),
        "amitsur" => amitsur_task(job, budget),
        "finite-free" => finite_free_task(job, budget),
        "kummer" => {
            let a = job.ring()?;
            let xi = a.parse_elem(job.element.as_deref().ok_or_else(|| AlgError::InvalidInput("kummer needs \"element\"".into()))?)?;
            let n = job.n.ok_or_else(|| AlgError::InvalidInput("kummer needs \"n\"".into()))?;
            let r = kummer_check(&a, &xi, n, budget)?;
            Ok(Outcome { verdict: Verdict::from_bool(r.passes()), result: json!(r) })
        }
        "artin-schreier" => {
            let a = job.ring()?;
            let e = a.parse_elem(job.element.as_deref().ok_or_else(|| AlgError::InvalidInput("artin-schreier needs \"element\"".into()))?)?;
            let r = artin_schreier_check(&a, &e, budget)?;
            Ok(Outcome { verdict: Verdict::from_bool(r.passes()), result: json!(r) })
        }
        other => Err(AlgError::InvalidInput(format!("task: unknown task {other:?}; known: {}", TASKS.join(", ")))),
    }
}

fn bound(job: &JobFile, g: &flatquot_core::grading::MGrading) -> u32 {
    job.bound.unwrap_or_else(|| g.default_bound())
}

fn quotient_diag_task(job: &JobFile, budget: &Budget) -> Result<Outcome> {
    let a = job.ring()?;
    let g = job.grading(&a)?;
    match quotient_diag(&g, bound(job, &g), job.override_freeness, budget) {
        Ok(q) => Ok(Outcome { verdict: q.verdict(), result: json!(q.summary()) }),
        Err(AlgError::Precondition(m)) => Ok(outcome(vec![Check::new("action is free", Verdict::Fail, m)], json!({}))),
        Err(e) => Err(e),
    }
}

fn quotient_flf_task(job: &JobFile, budget: &Budget) -> Result<Outcome> {
    let a = job.ring()?;
    let act = job.action(&a, budget)?;
    let r = match relation_from_constant_action(&act, budget) {
        Ok(r) => r,
        Err(AlgError::Precondition(m)) => {
            let free = freeness_check_constant(&act, budget)?;
            let mut checks = free.checks;
            checks.push(Check::new("relation is a closed immersion", Verdict::Fail, m));
            return Ok(outcome(checks, json!({})));
        }
        Err(e) => return Err(e),
    };
    let q = quotient_flf(&r, job.bound.unwrap_or(budget.degree_bound.min(4)), budget)?;
    let mut summary = q.summary();
    for &order in &job.fiber_square {
        let fs = fiber_square_points_check(&r, &q, order, budget)?;
        summary.checks.push(check(
            &format!("fiber square over F_{order}"),
            fs.agree,
            format!("{} points, {} pairs with equal image, {} pairs from the relation", fs.points, fs.fiber_pairs, fs.relation_pairs),
        ));
    }
    let verdict = overall(&summary.checks).max(q.verdict());
    summary.verdict = verdict;
    Ok(Outcome { verdict, result: json!(summary) })
}

fn freeness_task(job: &JobFile, budget: &Budget) -> Result<Outcome> {
    let a = job.ring()?;
    let report = match (&job.grading, &job.action) {
        (Some(_), None) => {
            let g = job.grading(&a)?;
            freeness_check_diag(&g, bound(job, &g), budget)?
        }
        (None, Some(_)) => freeness_check_constant(&job.action(&a, budget)?, budget)?,
        _ => return Err(AlgError::InvalidInput("freeness needs exactly one of \"grading\" or \"action\"".into())),
    };
    Ok(Outcome { verdict: report.verdict, result: json!(report) })
}

fn parse_vec(a: &PresentedAlgebra, row: &[String]) -> Result<ModVec> {
    row.iter().map(|s| a.parse_elem(s)).collect()
}

fn show_module(m: &FpModule) -> Value {
    let a = m.ring();
    let rels: Vec<Vec<String>> = m.relations().iter().map(|v| v.iter().map(|f| a.format(f)).collect()).collect();
    json!({"gens": m.ngens(), "relations": rels})
}

fn extension(job: &JobFile, budget: &Budget) -> Result<Arc<RingExtension>> {
    let base = job.ring()?;
    let spec = job.descent.as_ref().ok_or_else(|| AlgError::InvalidInput("job is missing the \"descent\" section".into()))?;
    let vars: Vec<&str> = spec.cover.vars.iter().map(String::as_str).collect();
    let rels: Vec<&str> = spec.cover.relations.iter().map(String::as_str).collect();
    Ok(Arc::new(RingExtension::adjoin(base, &vars, &rels, budget)?))
}

fn module_over(ring: &Arc<PresentedAlgebra>, job: &JobFile, budget: &Budget) -> Result<FpModule> {
    let spec = &job.descent.as_ref().expect("checked by extension").module;
    let rels = spec.relations.iter().map(|r| {
        if r.len() != spec.gens {
            return Err(AlgError::InvalidInput(format!("descent.module: relation of length {} for {} generators", r.len(), spec.gens)));
        }
        parse_vec(ring, r)
    });
    FpModule::new(ring.clone(), spec.gens, rels.collect::<Result<_>>()?, budget)
}

fn descent_task(job: &JobFile, budget: &Budget) -> Result<Outcome> {
    let ext = extension(job, budget)?;
    let m = module_over(ext.cover(), job, budget)?;
    let spec = job.descent.as_ref().expect("checked by extension");
    let datum = match &spec.phi {
        None => DescentDatum::canonical(ext.clone(), &m, budget)?,
        Some(rows) => {
            let t = &ext.double.algebra;
            let phi = rows.iter().map(|r| parse_vec(t, r)).collect::<Result<Vec<_>>>()?;
            DescentDatum::new(ext.clone(), m.clone(), phi, budget)?
        }
    };
    let cocycle = cocycle_check(&datum, budget)?;
    let mut checks = vec![check("cocycle condition", cocycle, "phi13 = phi12 * phi23 over B⊗B⊗B")];
    let mut extra = json!({"double_ring_variables": ext.double.algebra.var_names()});
    if cocycle {
        let d = descend(&datum, budget)?;
        let eff = verify_effectivity(&datum, &d, budget)?;
        checks.push(check("effective: comparison is an isomorphism compatible with phi", eff, "M ⊗_A B → M' over B"));
        extra["descended"] = show_module(&d.module);
    }
    Ok(outcome(checks, extra))
}

fn amitsur_task(job: &JobFile, budget: &Budget) -> Result<Outcome> {
    let ext = extension(job, budget)?;
    let m = module_over(ext.base(), job, budget)?;
    let r = amitsur_exactness(&ext, &m, budget)?;
    let checks = vec![
        check("M → M ⊗ B injective", r.injective, "kernel computed by syzygies"),
        check("exact at M ⊗ B", r.exact_in_middle, "equalizer equals the image of M"),
    ];
    Ok(outcome(checks, json!({})))
}

fn finite_free_task(job: &JobFile, budget: &Budget) -> Result<Outcome> {
    let total = job.ring()?;
    let spec = job.finite_free.as_ref().ok_or_else(|| AlgError::InvalidInput("job is missing the \"finite_free\" section".into()))?;
    let gens = spec.base_gens.iter().map(|s| total.parse_elem(s)).collect::<Result<Vec<Poly>>>()?;
    let (base, incl) = present_subalgebra(&total, &gens, budget)?;
    let basis = match &spec.basis {
        Some(b) => Some(b.iter().map(|s| total.parse_elem(s)).collect::<Result<Vec<_>>>()?),
        None => None,
    };
    let ff = FiniteFreeAlgebra::from_map(incl, basis, budget)?;
    let mut checks = Vec::new();
    let mut elements = Vec::new();
    for s in &spec.elements {
        let e = total.parse_elem(s)?;
        let norm = ff.norm(&e, budget)?;
        let (u, nu) = ff.norm_unit_criterion(&e, budget)?;
        checks.push(check(&format!("{s}: unit iff norm is a unit"), u == nu, format!("unit: {u}, norm unit: {nu}")));
        for &q in &spec.zero_locus_q {
            checks.push(check(&format!("{s}: zero locus image over F_{q}"), ff.zero_locus_image_check(&e, q, budget)?, "point count"));
        }
        let cp: Vec<String> = ff.charpoly(&e, budget)?.iter().map(|c| base.format(c)).collect();
        elements.push(json!({"element": s, "norm": base.format(&norm), "trace": base.format(&ff.trace(&e, budget)?), "charpoly": cp}));
    }
    let basis: Vec<String> = ff.basis().iter().map(|e| total.format(e)).collect();
    Ok(outcome(checks, json!({"base": base.summary(), "rank": ff.rank(), "basis": basis, "elements": elements})))
}
