//! Acceptance run: one line per criterion. Exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tambara_core::bispan::bispan_canonical;
use tambara_core::exponential::{dependent_product, pasting_distributive, pasting_functorial, pasting_pullback, ExponentialWitness};
use tambara_core::green::{check_distinct, polynomial_top_norms, constant_top_obstruction};
use tambara_core::group::{GroupRef, Subgroup, SymmetricGroup};
use tambara_core::gset::{gsets_up_to, GSet};
use tambara_core::mackey::table_isos;
use tambara_core::tambara::{ft0_iso, ft1_iso, ft_basis, polynomial_check, restriction_compat, verify_semi_tambara, FreeTambara};
use tambara_core::xi::{xi_naturality_all, xi_surjectivity};
use tambara_core::Limits;

const SEED: u64 = 20240601;
const C1_INSTANCES: usize = 200;
const C1_BUDGET: Duration = Duration::from_secs(60);
const C2_INSTANCES: usize = 100;
const C2_BUDGET: Duration = Duration::from_secs(60);
const C3_WINDOW: usize = 4;
const C3_BUDGET: Duration = Duration::from_secs(300);
const MAX_T: usize = 3;
const MAX_DEGREE: usize = 2;
const C6_BUDGET: Duration = Duration::from_secs(300);
const C7_MAX_DEGREE: usize = 3;
const C8_BUDGET: Duration = Duration::from_secs(1);
const C9_BUDGET: Duration = Duration::from_secs(1);
const C10_MAX: usize = 4;
// maps enumerated per fiber product in the universal-property count
const ORACLE_BUDGET: usize = 20_000;

type Outcome = Result<String, String>;

fn s3() -> GroupRef {
    SymmetricGroup::new(3).group().clone()
}

fn within(start: Instant, budget: Duration, detail: String) -> Outcome {
    let took = start.elapsed();
    if took <= budget {
        Ok(detail)
    } else {
        Err(format!("{detail}; took {took:.2?}, budget {budget:.0?}"))
    }
}

fn corpus() -> Vec<(String, GSet)> {
    let mut out = Vec::new();
    for n in [2, 3, 4] {
        for t in gsets_up_to(&cyclic(n), MAX_T) {
            out.push((format!("C{n} |T|={} {:?}", t.size(), t.orbit_types()), t));
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let groups = [cyclic(1), cyclic(2), cyclic(3), s3()];
    let mut checked = 0;
    for n in 0..C1_INSTANCES {
        let g = &groups[n % groups.len()];
        let x = random_gset(g, 5, &mut rng);
        let i = random_map_from(&x, 5, &mut rng);
        let j = random_map_from(i.target(), 5, &mut rng);
        let d = dependent_product(&i, &j).map_err(|e| format!("instance {n}: {e}"))?;
        compare_with_naive(&i, &j, &d).map_err(|e| format!("instance {n}: {e}"))?;
        checked += universal_property_counts(&i, &j, &d, ORACLE_BUDGET).map_err(|e| format!("instance {n}: {e}"))?;
    }
    within(start, C1_BUDGET, format!("{C1_INSTANCES} instances, {checked} orbit-level universal checks"))
}

fn certificate_ok(w: Option<ExponentialWitness>) -> bool {
    w.is_some_and(|w| w.on_a.is_bijective() && w.on_b.is_bijective())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let groups = [cyclic(1), cyclic(2), cyclic(3), s3()];
    let cap = Limits::default().section_cap;
    let mut counts = [0usize; 3];
    let mut n = 0;
    while counts.iter().any(|&c| c < C2_INSTANCES) {
        let g = &groups[n % groups.len()];
        n += 1;
        let x = random_gset(g, 4, &mut rng);
        let i = random_map_from(&x, 4, &mut rng);
        let j = random_map_from(i.target(), 3, &mut rng);
        let k = random_map_from(j.target(), 3, &mut rng);
        let w = random_gset(g, 4, &mut rng);
        let err = |e: tambara_core::Error| format!("instance {n}: {e}");
        if let Some(kw) = random_map(&w, j.target(), &mut rng) {
            if !certificate_ok(pasting_pullback(&i, &j, &kw, cap).map_err(err)?) {
                return Err(format!("pullback pasting fails on instance {n}"));
            }
            counts[0] += 1;
        }
        if !certificate_ok(pasting_distributive(&i, &j, &k, cap).map_err(err)?) {
            return Err(format!("distributive pasting fails on instance {n}"));
        }
        counts[1] += 1;
        if !certificate_ok(pasting_functorial(&i, &j, &k, cap).map_err(err)?) {
            return Err(format!("functorial pasting fails on instance {n}"));
        }
        counts[2] += 1;
    }
    within(start, C2_BUDGET, format!("certified pullback/distributive/functorial = {counts:?}"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let lim = Limits::default();
    let cases = corpus();
    let mut checks = 0;
    for (name, t) in &cases {
        let ft = FreeTambara::new(t, lim);
        let rep = verify_semi_tambara(&ft, C3_WINDOW, MAX_DEGREE, &lim).map_err(|e| format!("{name}: {e}"))?;
        if !rep.passed() {
            return Err(format!("{name}: {} failures, first: {}", rep.failures.len(), rep.failures[0]));
        }
        checks += rep.checks;
    }
    within(start, C3_BUDGET, format!("{} cases, window {C3_WINDOW}, {checks} checks", cases.len()))
}

fn criterion_4() -> Outcome {
    let lim = Limits::default();
    let cases = corpus();
    for (name, t) in &cases {
        let i0 = ft0_iso(t, &lim).map_err(|e| format!("{name} degree 0: {e}"))?;
        if !i0.map.commutes(&i0.source, &i0.target) {
            return Err(format!("{name}: degree 0 map does not commute"));
        }
        if table_isos(&i0.source, &i0.target, 2).len() != 1 {
            return Err(format!("{name}: degree 0 isomorphism is not unique"));
        }
        let i1 = ft1_iso(t, &lim).map_err(|e| format!("{name} degree 1: {e}"))?;
        if !i1.map.commutes(&i1.source, &i1.target) {
            return Err(format!("{name}: degree 1 map does not commute"));
        }
    }
    Ok(format!("{} cases, degree 0 and 1 bijections commute", cases.len()))
}

fn criterion_5() -> Outcome {
    let lim = Limits::default();
    let pairs = [
        ("C2 > e", cyclic(2), vec![0]),
        ("C4 > C2", cyclic(4), vec![0, 2]),
        ("S3 > C3", s3(), vec![0, 3, 4]),
    ];
    let mut cases = 0;
    for (name, g, h) in pairs {
        let h = Subgroup::new(&g, &h).map_err(|e| format!("{name}: {e}"))?;
        for t in gsets_up_to(&g, MAX_T) {
            let rep = restriction_compat(&h, &t, MAX_DEGREE, &lim).map_err(|e| format!("{name}: {e}"))?;
            if !rep.passed() {
                return Err(format!("{name} |T|={}: {}", t.size(), rep.failures[0]));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (G, H, T) cases up to degree {MAX_DEGREE}"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let lim = Limits::default();
    let (mut checks, mut witnesses) = (0, 0);
    for g in [cyclic(2), cyclic(3)] {
        let free = OSet::cosets(&g, &[0]);
        let pt = OSet::cosets(&g, &g.elements().collect::<Vec<_>>());
        for t in [free.to_gset(), free.disjoint(&pt).to_gset()] {
            for n in [2, 3] {
                let name = format!("C{} |T|={} n={n}", g.order(), t.size());
                let rep = xi_naturality_all(&t, n, true, &lim).map_err(|e| format!("{name}: {e}"))?;
                if !rep.passed() {
                    return Err(format!("{name}: {}", rep.failures[0]));
                }
                checks += rep.checks;
                let ws = xi_surjectivity(&t, n, &lim).map_err(|e| format!("{name}: {e}"))?;
                let basis = ft_basis(&t, &GSet::point(&g), n, &lim).map_err(|e| format!("{name}: {e}"))?;
                if ws.len() != basis.len() || !ws.iter().all(|w| w.verified) {
                    return Err(format!("{name}: {} of {} classes have verified witnesses", ws.iter().filter(|w| w.verified).count(), basis.len()));
                }
                witnesses += ws.len();
            }
        }
    }
    within(start, C6_BUDGET, format!("{checks} naturality checks, {witnesses} witnesses"))
}

fn criterion_7() -> Outcome {
    let lim = Limits::default();
    let g = cyclic(1);
    for size in 0..=MAX_T {
        let rep = polynomial_check(&GSet::trivial(&g, size), C7_MAX_DEGREE, &lim).map_err(|e| e.to_string())?;
        if !rep.passed() {
            return Err(format!("|T|={size}: {}", rep.failures[0]));
        }
    }
    Ok(format!("|T| <= {MAX_T}, degree <= {C7_MAX_DEGREE}"))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let lim = Limits::default();
    for p in [2, 3] {
        let cert = constant_top_obstruction(p, p, &lim).map_err(|e| e.to_string())?;
        if !cert.no_structure || cert.candidates.len() != p as usize {
            return Err(format!("p={p}: {} candidates, no_structure={}", cert.candidates.len(), cert.no_structure));
        }
    }
    within(start, C8_BUDGET, String::from("p = 2, 3: every candidate rejected"))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let cands = polynomial_top_norms(2, 2, 2, &Limits::default()).map_err(|e| e.to_string())?;
    let rendered: Vec<String> = cands.iter().map(|c| c.image.render()).collect();
    for m in ["x1^2", "x1*x2", "x2^2"] {
        if !rendered.iter().any(|r| r == m) {
            return Err(format!("{m} missing from {rendered:?}"));
        }
    }
    let rep = check_distinct(&cands, 2, 2);
    if !rep.distinct || rep.count < 3 {
        return Err(format!("{} distinct structures, duplicates {:?}", rep.count, rep.duplicates));
    }
    within(start, C9_BUDGET, format!("{} candidates, {} distinct", cands.len(), rep.count))
}

fn criterion_10() -> Outcome {
    let g = cyclic(2);
    let reps = subgroup_class_reps(&g);
    let free = OSet::cosets(&g, &[0]);
    let pt = OSet::cosets(&g, &[0, 1]);
    let (mut size, mut pairs, mut classes) = (0, 0, 0);
    for (t, x) in [(free.clone(), pt.clone()), (free.clone(), free.clone()), (free.disjoint(&pt), pt.clone())] {
        // bispans with different |U| or |V| are never isomorphic, so the
        // exhaustive comparison runs inside each size bucket
        for nv in 0..=C10_MAX {
            for nu in 0..=C10_MAX {
                let mut bucket = Vec::new();
                for v in gsets_of_size(&g, &reps, nv) {
                    for c in equivariant_maps(&v, &x) {
                        for u in gsets_of_size(&g, &reps, nu) {
                            for b in equivariant_maps(&u, &v) {
                                for a in equivariant_maps(&u, &t) {
                                    bucket.push(OBispan { t: t.clone(), u: u.clone(), v: v.clone(), x: x.clone(), a, b: b.clone(), c: c.clone() });
                                }
                            }
                        }
                    }
                }
                let canon: Vec<_> = bucket.iter().map(|b| bispan_canonical(&b.to_bispan())).collect();
                let distinct: BTreeSet<_> = canon.iter().map(|c| c.components().to_vec()).collect();
                classes += distinct.len();
                for p in 0..bucket.len() {
                    for q in p + 1..bucket.len() {
                        if (canon[p] == canon[q]) != bispans_isomorphic(&bucket[p], &bucket[q]) {
                            return Err(format!("|U|={nu} |V|={nv}: disagreement on pair ({p}, {q})"));
                        }
                        pairs += 1;
                    }
                }
                size += bucket.len();
            }
        }
    }
    Ok(format!("{size} bispans, {classes} classes, {pairs} pairs compared"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("dependent products match the brute-force universal property", criterion_1),
        ("pasting lemmas certified on random instances", criterion_2),
        ("semi-Tambara axioms on the window", criterion_3),
        ("degree 0 and degree 1 graded isomorphisms", criterion_4),
        ("restriction compatibility", criterion_5),
        ("Ξ naturality and surjectivity witnesses", criterion_6),
        ("trivial group gives polynomials", criterion_7),
        ("obstruction for C_p", criterion_8),
        ("distinct norm structures for p = 2, s = 2", criterion_9),
        ("canonical form agrees with isomorphism search", criterion_10),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{took:.2?}]", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({detail}) [{took:.2?}]", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
