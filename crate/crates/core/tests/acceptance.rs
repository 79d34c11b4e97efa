//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! with its tolerance and time limit.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use flatquot_core::abgrp::{Cardinality, FgAbGroup, GroupHom};
use flatquot_core::descent::{amitsur_exactness, cocycle_check, descend, equivariant_nondescent_demo, verify_effectivity, DescentDatum};
use flatquot_core::exactalg::FpModule;
use flatquot_core::flf::registered_algebras;
use flatquot_core::grading::MGrading;
use flatquot_core::groups::{alphap_kernel, artin_schreier_check, diag_degree, diag_quotient, kummer_check, DiagonalizableGroupScheme};
use flatquot_core::quotients::{
    fiber_square_points_check, find_isomorphism, find_isomorphism_over, freeness_check_constant, gallery, overall, quotient_diag, quotient_flf,
    relation_from_constant_action, torsor_check, ConstantAction, GalleryOptions, Verdict,
};
use flatquot_core::{CoeffField, PresentedAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_917;

fn criterion(n: u32, title: &str, tolerance: &str, limit_secs: u64, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_secs);
    let in_time = elapsed <= limit;
    let (ok, detail) = match &outcome {
        Ok(d) => (in_time, d.clone()),
        Err(e) => (false, e.clone()),
    };
    println!(
        "criterion {n:>2} {} | {title} | tolerance {tolerance} | {:.2} s of {limit_secs} s | {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(outcome.is_ok(), "criterion {n}: {detail}");
    assert!(in_time, "criterion {n}: {:.2} s exceeds the {limit_secs} s limit", elapsed.as_secs_f64());
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

#[test]
fn criterion_01_p1_charts() {
    criterion(1, "P1 charts", "exact", 5, || {
        let b = budget();
        let q = CoeffField::Rationals;
        let mut gens = Vec::new();
        for inv in ["x", "y"] {
            let a = Arc::new(PresentedAlgebra::parse(q, &["x", "y"], &[inv], &[]).map_err(e)?);
            let g = MGrading::new(a, FgAbGroup::free(1), vec![FgAbGroup::free(1).generator(0); 2]).map_err(e)?;
            let res = quotient_diag(&g, 4, false, &b).map_err(e)?;
            let alg = &res.algebra;
            ensure(alg.visible_vars().len() == 1 && alg.user_relations().is_empty() && alg.inverted().is_empty(), format!("chart {inv}: {alg}"))?;
            ensure(res.verdict() == Verdict::Pass, format!("chart {inv}: {:?}", res.checks))?;
            gens.push(res.generators()[0].clone());
        }
        ensure(gens == ["y*x_inv", "x*y_inv"], format!("{gens:?}"))?;
        let r = gallery("p1_charts", &GalleryOptions::default(), &b).map_err(e)?;
        ensure(r.verdict == Verdict::Pass && r.facts["transition"] == "t -> t^-1", "transition")?;
        Ok(format!("charts {} and {}, transition t -> t^-1", gens[0], gens[1]))
    });
}

#[test]
fn criterion_02_pgl2() {
    criterion(2, "PGL2 torsor", "exact", 60, || {
        let b = budget();
        let a = Arc::new(
            PresentedAlgebra::parse(CoeffField::Rationals, &["x11", "x12", "x21", "x22", "dinv"], &[], &["dinv*(x11*x22 - x12*x21) - 1"]).map_err(e)?,
        );
        let z = FgAbGroup::free(1);
        let one = z.generator(0);
        let degs = vec![one.clone(), one.clone(), one.clone(), one.clone(), z.scale(-2, &one)];
        let g = MGrading::new(a, z, degs).map_err(e)?;
        let res = quotient_diag(&g, 4, false, &b).map_err(e)?;
        ensure(res.verdict() == Verdict::Pass, format!("{:#?}", res.checks))?;
        let torsor = torsor_check(&g, 4, &b).map_err(e)?;
        ensure(overall(&torsor) == Verdict::Pass, format!("{torsor:#?}"))?;
        ensure(torsor.iter().any(|c| c.witness.contains("dinv")), "no witness through the inverse determinant")?;
        let psi = torsor.iter().filter(|c| c.name.starts_with("X^i")).count();
        ensure(psi == 2, format!("{psi} grouplike checks"))?;
        Ok(format!("{} generators of degree 0; {}", res.generators().len(), torsor[0].witness))
    });
}

#[test]
fn criterion_03_kummer_routes() {
    for n in [2u32, 3, 4] {
        criterion(3, &format!("Kummer route agreement, n = {n}"), "exact", 10, || {
            let b = budget();
            let q = CoeffField::Rationals;
            let a = Arc::new(DiagonalizableGroupScheme::new(FgAbGroup::free(1), q).group_algebra());
            let cyc = FgAbGroup::cyclic(i64::from(n));
            let g = MGrading::new(a, cyc.clone(), vec![cyc.generator(0)]).map_err(e)?;
            let res = quotient_diag(&g, n, false, &b).map_err(e)?;
            let gens = res.generators();
            ensure(gens == [format!("x^{n}")] || gens == [format!("x_inv^{n}")], format!("{gens:?}"))?;
            let u = GroupHom::new(FgAbGroup::free(1), cyc, vec![vec![1]]).map_err(e)?;
            let dq = diag_quotient(&u, q, &b).map_err(e)?;
            let iso = find_isomorphism_over(&res.inclusion, &dq.inclusion, &b).map_err(e)?.ok_or("no isomorphism")?;
            let abstract_iso = find_isomorphism(&res.algebra, &dq.inclusion.source().clone(), 1, &b).map_err(e)?;
            ensure(abstract_iso.is_some(), "abstract search failed")?;
            let shown: Vec<String> = iso.describe().into_iter().map(|(v, i)| format!("{v} -> {i}")).collect();
            Ok(format!("B = {}, isomorphism {}", res.algebra, shown.join(", ")))
        });
    }
}

#[test]
fn criterion_04_finite_free_quotient() {
    criterion(4, "finite free quotient by Z/2", "exact", 30, || {
        let b = budget();
        let mut lines = Vec::new();
        for field in [CoeffField::Rationals, CoeffField::Prime(5)] {
            let a = Arc::new(PresentedAlgebra::parse(field, &["x"], &["x"], &[]).map_err(e)?);
            let act = ConstantAction::cyclic(a.clone(), 2, vec![a.parse_elem("-x").map_err(e)?], &b).map_err(e)?;
            ensure(freeness_check_constant(&act, &b).map_err(e)?.verdict == Verdict::Pass, "not free")?;
            let r = relation_from_constant_action(&act, &b).map_err(e)?;
            let res = quotient_flf(&r, 2, &b).map_err(e)?;
            let alg = &res.algebra;
            ensure(alg.visible_vars().len() == 1 && alg.inverted().len() == 1 && alg.user_relations().is_empty(), format!("B = {alg}"))?;
            for needle in ["integral", "free of rank 2", "surjective", "injective"] {
                let c = res.checks.iter().find(|c| c.name.contains(needle)).ok_or(format!("missing {needle}"))?;
                ensure(c.verdict == Verdict::Pass, format!("{}: {}", c.name, c.witness))?;
            }
            ensure(res.verdict() == Verdict::Pass, "certificate")?;
            if field == CoeffField::Prime(5) {
                for q in [5, 25] {
                    let fs = fiber_square_points_check(&r, &res, q, &b).map_err(e)?;
                    ensure(fs.agree, format!("fiber square over F_{q}"))?;
                    lines.push(format!("F_{q}: {} pairs", fs.fiber_pairs));
                }
            }
            lines.push(format!("{field}: B = {alg} via {}", res.generators().join(", ")));
        }
        Ok(lines.join("; "))
    });
}

#[test]
fn criterion_05_nonfree_rejection() {
    criterion(5, "non-free rejection", "exact", 5, || {
        let b = budget();
        let r = gallery("a1_z2_nonfree", &GalleryOptions::default(), &b).map_err(e)?;
        ensure(r.verdict == Verdict::Fail && r.quotients.is_empty(), "a1 not rejected")?;
        let w = &r.checks[0].witness;
        ensure(w.contains("2*x"), format!("witness {w}"))?;
        let ov = r.checks.iter().find(|c| c.name.contains("Q[x^2]")).ok_or("no override check")?;
        ensure(ov.verdict == Verdict::Pass, "override ring differs from Q[x^2]")?;
        let r2 = gallery("a2_gm_nonfree", &GalleryOptions::default(), &b).map_err(e)?;
        ensure(r2.verdict == Verdict::Fail && r2.quotients.is_empty(), "a2 not rejected")?;
        Ok(format!("a1: {w}; a2: {}", r2.checks[0].witness))
    });
}

#[test]
fn criterion_06_descent_suite() {
    criterion(6, "descent suite", "exact", 120, || {
        let b = budget();
        let corpus = descent_corpus();
        ensure(corpus.len() >= 10, "corpus too small")?;
        for (label, ext, m) in &corpus {
            ensure(amitsur_exactness(ext, m, &b).map_err(e)?.holds(), format!("Amitsur fails on {label}"))?;
            let d = DescentDatum::canonical(ext.clone(), m, &b).map_err(e)?;
            let desc = descend(&d, &b).map_err(e)?;
            ensure(verify_effectivity(&d, &desc, &b).map_err(e)?, format!("roundtrip fails on {label}"))?;
        }

        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let exts = [
            field_ext(CoeffField::Rationals, 2),
            field_ext(CoeffField::Rationals, 3),
            field_ext(CoeffField::Rationals, -1),
            field_ext(CoeffField::Prime(5), 2),
            field_ext(CoeffField::Prime(7), 3),
            root_ext("T^2 - x"),
        ];
        let mut done = 0;
        while done < 100 {
            let ext = exts[rng.gen_range(0..exts.len())].clone();
            let bb = ext.cover().clone();
            let rank = rng.gen_range(1..=2usize);
            let w: Vec<Vec<_>> = if ext.base().nvars() == 0 {
                (0..rank).map(|_| (0..rank).map(|_| random_elem(&mut rng, &bb, 1)).collect()).collect()
            } else {
                // unipotent, so invertible over any ring
                let f = random_elem(&mut rng, &bb, 2);
                if rank == 1 {
                    vec![vec![bb.constant(rng.gen_range(1..=3))]]
                } else {
                    vec![vec![bb.one(), f], vec![bb.zero(), bb.one()]]
                }
            };
            let d = match DescentDatum::twisted(ext.clone(), FpModule::free(bb.clone(), rank), &w, &b) {
                Ok(d) => d,
                Err(flatquot_core::AlgError::NotAUnit(_)) => continue,
                Err(x) => return Err(x.to_string()),
            };
            ensure(cocycle_check(&d, &b).map_err(e)?, format!("twist {done}: cocycle"))?;
            let desc = descend(&d, &b).map_err(e)?;
            ensure(verify_effectivity(&d, &desc, &b).map_err(e)?, format!("twist {done}: not effective"))?;
            done += 1;
        }
        Ok(format!("{} Amitsur pairs, {} roundtrips, {done} twisted data (seed {SEED})", corpus.len(), corpus.len()))
    });
}

#[test]
fn criterion_07_equivariant_nondescent() {
    criterion(7, "equivariant non-descent", "exact", 5, || {
        let mut parts = Vec::new();
        for n in [2, 3] {
            let r = equivariant_nondescent_demo(n, CoeffField::Rationals, &budget()).map_err(e)?;
            ensure(r.strict && !r.s_in_generated, format!("n = {n}"))?;
            ensure(r.invariant_part == [format!("s^{n}")], format!("{:?}", r.invariant_part))?;
            parts.push(format!("n = {n}: (s^{n}) strictly inside (s)"));
        }
        Ok(parts.join("; "))
    });
}

#[test]
fn criterion_08_norm_laws() {
    criterion(8, "norm laws over F_3, F_5, F_7", "zero failures", 60, || {
        let b = budget();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
        let mut pairs = 0;
        for p in [3u64, 5, 7] {
            let field = CoeffField::Prime(p);
            for (name, ff) in registered_algebras(field, &b).map_err(e)? {
                let total = ff.total().clone();
                for _ in 0..100 {
                    let x = random_elem(&mut rng, &total, 2);
                    let y = random_elem(&mut rng, &total, 2);
                    let nxy = ff.norm(&total.mul(&x, &y, &b).map_err(e)?, &b).map_err(e)?;
                    let prod = ff.base().mul(&ff.norm(&x, &b).map_err(e)?, &ff.norm(&y, &b).map_err(e)?, &b).map_err(e)?;
                    ensure(ff.base().eq_elems(&nxy, &prod, &b).map_err(e)?, format!("{name} over F_{p}: N(xy) != N(x)N(y)"))?;
                    ff.norm_unit_criterion(&x, &b).map_err(e)?;
                    ensure(ff.zero_locus_image_check(&x, p, &b).map_err(e)?, format!("{name} over F_{p}: zero locus image"))?;
                    pairs += 1;
                }
            }
        }
        Ok(format!("{pairs} pairs"))
    });
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn criterion_09_exact_sequences() {
    criterion(9, "Kummer, Artin-Schreier and alpha_p", "exact", 30, || {
        let b = budget();
        let mut kummer = 0;
        for p in [2u64, 3, 5, 7] {
            let k = Arc::new(PresentedAlgebra::base_field(CoeffField::Prime(p)));
            for n in 1..=6u32 {
                let xi = k.constant(if p == 2 { 1 } else { 2 });
                let r = kummer_check(&k, &xi, n, &b).map_err(e)?;
                ensure(r.passes() && r.cover_rank == n as usize, format!("kummer p = {p}, n = {n}"))?;
                ensure(r.etale == (gcd(u64::from(n), p) == 1), format!("etale mismatch p = {p}, n = {n}"))?;
                kummer += 1;
            }
        }
        let q = Arc::new(PresentedAlgebra::base_field(CoeffField::Rationals));
        for n in 1..=5 {
            let r = kummer_check(&q, &q.constant(3), n, &b).map_err(e)?;
            ensure(r.passes() && r.etale, format!("kummer over Q, n = {n}"))?;
            kummer += 1;
        }

        // (p, variables, relations, connected components)
        let as_cases: [(u64, &[&str], &[&str], u32); 6] = [
            (3, &[], &[], 1),
            (2, &["e"], &["e^2 - e"], 2),
            (3, &["t"], &["t^2"], 1),
            (5, &["t"], &["t^2 - 1"], 2),
            (2, &["t"], &["t^3 + t"], 2),
            (3, &["t"], &["t^2 + 1"], 1),
        ];
        for (p, vars, rels, comps) in as_cases {
            let a = Arc::new(PresentedAlgebra::parse(CoeffField::Prime(p), vars, &[], rels).map_err(e)?);
            let r = artin_schreier_check(&a, &a.zero(), &b).map_err(e)?;
            ensure(r.kernel_size == Some(p.pow(comps)), format!("AS kernel over {a}: {:?}", r.kernel_size))?;
        }

        // (p, nilpotency index k) for F_p[e]/(e^k): dimension k - ceil(k/p)
        let ap_cases = [(2u64, 2u32), (2, 3), (2, 4), (3, 3), (3, 5), (5, 4)];
        for (p, k) in ap_cases {
            let a = PresentedAlgebra::parse(CoeffField::Prime(p), &["e"], &[], &[&format!("e^{k}")]).map_err(e)?;
            let dim = alphap_kernel(&a, &b).map_err(e)?.len() as u32;
            let expected = k - k.div_ceil(p as u32);
            ensure(dim == expected, format!("alpha_p over F_{p}[e]/(e^{k}): {dim} != {expected}"))?;
        }
        let two = PresentedAlgebra::parse(CoeffField::Prime(2), &["a", "c"], &[], &["a^2", "c^2"]).map_err(e)?;
        ensure(alphap_kernel(&two, &b).map_err(e)?.len() == 3, "alpha_2 over F_2[a,c]/(a^2,c^2)")?;
        Ok(format!("{kummer} Kummer covers, {} Artin-Schreier algebras, {} alpha_p algebras", as_cases.len(), ap_cases.len() + 1))
    });
}

#[test]
fn criterion_10_degree_law() {
    criterion(10, "degree law dim k[M] = |M|", "exact", 5, || {
        let b = budget();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
        let mut shown = Vec::new();
        for _ in 0..10 {
            let k = rng.gen_range(1..=3);
            let orders: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=6)).collect();
            let m = FgAbGroup::from_cyclic_factors(&orders).0;
            let expected: u64 = orders.iter().product::<i64>() as u64;
            ensure(m.order() == Cardinality::Finite(expected), format!("|{m}|"))?;
            let field = if rng.gen_bool(0.5) { CoeffField::Rationals } else { CoeffField::Prime(7) };
            let d = diag_degree(&DiagonalizableGroupScheme::new(m.clone(), field), &b).map_err(e)?;
            ensure(d as u64 == expected, format!("dim k[{m}] = {d}, expected {expected}"))?;
            shown.push(format!("{m}"));
        }
        Ok(shown.join(", "))
    });
}
