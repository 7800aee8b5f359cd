//! Acceptance criteria 1-9, one PASS/FAIL line each. Runs without the libtest harness so the
//! lines are always printed.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use common::{qi, random_dim, random_pipeline, random_set, rng, v};
use semiconvex::algebra::{affine_preimage, closure, intersect, Pipeline};
use semiconvex::classify::{has_ray_intersection, has_semident, semident_at};
use semiconvex::constructions::{
    construct_compact_interval, construct_open_interval, construct_pointed_rectangle, define_from_ray,
    polymorphism_check, representative, verify_pointed_stripe, PolymorphismOutcome,
};
use semiconvex::{classify, AffineMap, CellSet, HPolyhedron, LinConstraint, PieceList, Rational, Rel};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn class_of(s: &CellSet) -> Result<u8, String> {
    classify(s).map(|c| c.tag.number()).map_err(|e| e.to_string())
}

fn set(dim: usize, pieces: Vec<Vec<LinConstraint>>) -> CellSet {
    CellSet::canonicalize(&PieceList::new(dim, pieces)).expect("convex input")
}

fn c(coeffs: &[i64], rel: Rel, rhs: i64) -> LinConstraint {
    LinConstraint::new(v(coeffs), rel, qi(rhs))
}

fn reps() -> Vec<CellSet> {
    (1..=6).map(|k| representative(k).expect("representative")).collect()
}

fn criterion_1() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (k, s) in (1..=6).zip(reps()) {
        let t = Instant::now();
        let got = class_of(&s)?;
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        ensure(got == k, || format!("representative {k} classified as {got}"))?;
        ensure(dt < Duration::from_secs(1), || format!("representative {k} took {dt:?}"))?;
    }
    Ok(format!("six representatives, slowest {slowest:.2?}"))
}

fn criterion_2() -> Outcome {
    let open_ray = set(1, vec![vec![c(&[-1], Rel::Lt, 0)]]);
    ensure(class_of(&open_ray)? == 6, || "open ray".into())?;
    let half_open = set(1, vec![vec![c(&[-1], Rel::Le, 0), c(&[1], Rel::Lt, 1)]]);
    ensure(class_of(&half_open)? == 3, || "[0,1)".into())?;
    let stripe = set(2, vec![
        vec![c(&[0, -1], Rel::Lt, 0), c(&[0, 1], Rel::Lt, 1)],
        vec![c(&[0, 1], Rel::Eq, 0), c(&[-1, 0], Rel::Lt, 0)],
    ]);
    ensure(class_of(&stripe)? == 6, || "stripe with ray".into())?;
    ensure(class_of(&closure(&stripe))? == 2, || "closure of stripe with ray".into())?;
    let rect = representative(4).map_err(|e| e.to_string())?;
    let a = vec![Rational::new(1, 2), qi(0)];
    let w = semident_at(&rect, &a).map_err(|e| e.to_string())?.ok_or("no semident at (1/2, 0)")?;
    ensure(w.verify(&rect) && w.a == a, || format!("semident witness {w:?} does not verify"))?;
    let again = semident_at(&rect, &a).map_err(|e| e.to_string())?;
    ensure(again.as_ref() == Some(&w), || "semident witness not reproducible".into())?;
    Ok(format!(
        "open ray 6, [0,1) 3, stripe with ray 6 and closure 2, semident (1/2,0) with s = {:?}, t = {:?}; quarter disk out of scope (not semilinear)",
        w.s, w.t
    ))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let unit = representative(2).map_err(|e| e.to_string())?;
    let px = affine_preimage(&unit, &AffineMap::coordinates(2, &[0]).expect("map")).map_err(|e| e.to_string())?;
    let py = affine_preimage(&unit, &AffineMap::coordinates(2, &[1]).expect("map")).map_err(|e| e.to_string())?;
    let sq = intersect(&[&px, &py]).map_err(|e| e.to_string())?;
    let want = CellSet::from_polyhedron(&HPolyhedron::cuboid(&v(&[0, 0]), &v(&[1, 1]))).map_err(|e| e.to_string())?;
    ensure(sq.set_equal(&want).map_err(|e| e.to_string())?, || "intersection is not the unit square".into())?;
    let dt = t.elapsed();
    ensure(dt < Duration::from_secs(1), || format!("took {dt:?}"))?;
    Ok(format!("unit square in {dt:.2?}"))
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let r = reps();
    let err = |e: semiconvex::Error| e.to_string();
    for k in [3, 4, 5] {
        let rep = construct_open_interval(&r[k - 1]).map_err(err)?;
        ensure(rep.verified, || format!("open interval from representative {k}"))?;
    }
    for k in [2, 3, 4] {
        let rep = construct_compact_interval(&r[k - 1]).map_err(err)?;
        ensure(rep.verified, || format!("compact interval from representative {k}"))?;
    }
    ensure(construct_pointed_rectangle(&r[3]).map_err(err)?.verified, || "pointed rectangle".into())?;
    for (k, s) in r.iter().enumerate() {
        ensure(define_from_ray(s).map_err(err)?.verified, || format!("from ray on representative {}", k + 1))?;
    }
    let mut g = rng(4);
    for i in 0..10 {
        let d = random_dim(&mut g, 3);
        let s = random_set(&mut g, d);
        let rep = define_from_ray(&s).map_err(err)?;
        ensure(rep.verified, || format!("from ray on random set {i}: {:?}", s.to_pieces()))?;
    }
    let dt = t.elapsed();
    ensure(dt < Duration::from_secs(120), || format!("took {dt:?}"))?;
    Ok(format!("all constructions verified in {dt:.2?}"))
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let r = reps();
    let mut g = rng(5);
    let mut nodes = 0;
    for i in 0..200 {
        let depth = g.gen_range(1..=4);
        let p = Pipeline::new(random_pipeline(&mut g, depth, &r));
        let report = p.check_monotonicity().map_err(|e| format!("pipeline {i}: {e}\n{}", p.trace().join("\n")))?;
        nodes += report.nodes.len();
        ensure(report.flags() == 0, || format!("pipeline {i} flagged:\n{}", p.trace().join("\n")))?;
    }
    let dt = t.elapsed();
    ensure(dt < Duration::from_secs(300), || format!("took {dt:?}"))?;
    Ok(format!("200 pipelines, {nodes} nodes, no flags, {dt:.2?}"))
}

fn criterion_6() -> Outcome {
    let mut g = rng(6);
    let (mut semidents, mut rays) = (0, 0);
    for i in 0..50 {
        let d = random_dim(&mut g, 3);
        let s = random_set(&mut g, d);
        match has_semident(&s).map_err(|e| e.to_string())? {
            Some(w) => {
                semidents += 1;
                ensure(w.verify(&s), || format!("set {i}: semident witness fails"))?;
            }
            None => {
                let hit = common::semident_oracle(&s, 8, 2, 512);
                ensure(hit.is_none(), || format!("set {i}: oracle semident {hit:?} missed"))?;
            }
        }
        match has_ray_intersection(&s).map_err(|e| e.to_string())? {
            Some(w) => {
                rays += 1;
                ensure(w.verify(&s), || format!("set {i}: ray witness fails"))?;
            }
            None => {
                let hit = common::ray_oracle(&s, 8, 2);
                ensure(hit.is_none(), || format!("set {i}: oracle ray {hit:?} missed"))?;
            }
        }
    }
    Ok(format!("50 sets, {semidents} semident and {rays} ray witnesses verified, 0 disagreements"))
}

fn random_lambda(g: &mut impl Rng, nonnegative: bool) -> Vec<Rational> {
    let m = g.gen_range(2..=3);
    let den = g.gen_range(1..=4);
    loop {
        let mut nums: Vec<i64> = (0..m - 1)
            .map(|_| if nonnegative { g.gen_range(0..=den) } else { g.gen_range(-2 * den..=2 * den) })
            .collect();
        let last = den - nums.iter().sum::<i64>();
        if nonnegative && last < 0 {
            continue;
        }
        nums.push(last);
        return nums.into_iter().map(|k| Rational::new(k, den)).collect();
    }
}

fn criterion_7() -> Outcome {
    let err = |e: semiconvex::Error| e.to_string();
    let unit = representative(2).map_err(err)?;
    let mut g = rng(7);
    let mut negative: Vec<Vec<Rational>> = vec![v(&[2, -1]), v(&[-1, 2]), v(&[1, 1, -1]), vec![Rational::new(3, 2), Rational::new(-1, 2)]];
    while negative.len() < 24 {
        let l = random_lambda(&mut g, false);
        if l.iter().any(Rational::is_negative) {
            negative.push(l);
        }
    }
    for l in &negative {
        let out = polymorphism_check(&unit, l).map_err(err)?;
        ensure(matches!(out, PolymorphismOutcome::Violated { .. }), || format!("[0,1] preserved by {l:?}"))?;
    }
    let diag = CellSet::from_polyhedron(&HPolyhedron::new(2, [c(&[1, -1], Rel::Eq, 0)]).map_err(err)?).map_err(err)?;
    for _ in 0..50 {
        let l = random_lambda(&mut g, false);
        ensure(polymorphism_check(&diag, &l).map_err(err)? == PolymorphismOutcome::Preserved, || format!("diagonal violated by {l:?}"))?;
    }
    for i in 0..20 {
        let d = random_dim(&mut g, 3);
        let s = random_set(&mut g, d);
        for _ in 0..3 {
            let l = random_lambda(&mut g, true);
            ensure(polymorphism_check(&s, &l).map_err(err)? == PolymorphismOutcome::Preserved, || format!("random set {i} violated by {l:?}"))?;
        }
    }
    Ok(format!("{} negative vectors violate [0,1]; 50 preserve the diagonal; 60 nonnegative checks preserved", negative.len()))
}

fn criterion_8() -> Outcome {
    let mut g = rng(8);
    let mut seen = [0usize; 7];
    for i in 0..100 {
        let d = random_dim(&mut g, 3);
        let s = random_set(&mut g, d);
        let k = class_of(&closure(&s))?;
        ensure(matches!(k, 1 | 2 | 6), || format!("set {i}: closure has class {k}"))?;
        seen[k as usize] += 1;
    }
    Ok(format!("1 x{}, 2 x{}, 6 x{}", seen[1], seen[2], seen[6]))
}

fn criterion_9() -> Outcome {
    let r = verify_pointed_stripe(&representative(5).map_err(|e| e.to_string())?, 4, 16, 2).map_err(|e| e.to_string())?;
    ensure(r.all_agree(), || format!("disagreements at {:?}", r.disagreements))?;
    Ok(format!(
        "{}/{} grid points agree (truncated at n <= {}: {}/{})",
        r.agree, r.points, r.truncation, r.truncated_agree, r.points
    ))
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, fn() -> Outcome); 9] = [
        (1, "representative classification", criterion_1),
        (2, "worked examples", criterion_2),
        (3, "square from two stripes", criterion_3),
        (4, "construction verification", criterion_4),
        (5, "monotonicity fuzz", criterion_5),
        (6, "oracle agreement", criterion_6),
        (7, "polymorphism dichotomy", criterion_7),
        (8, "closure classes", criterion_8),
        (9, "pointed stripe pointwise", criterion_9),
    ];
    let filter: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, name, f) in criteria {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let t = Instant::now();
        let outcome = f();
        let dt = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {n} PASS [{dt:.2?}] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} FAIL [{dt:.2?}] {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
