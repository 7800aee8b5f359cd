//! Re-checks the witness payload of an earlier `classify` report against a set.

use serde::de::DeserializeOwned;
use serde_json::Value;

use semiconvex::classify::{classify, SemidentWitness};
use semiconvex::linalg::{add, dot, in_span, norm_sq, sub};
use semiconvex::{CellSet, HPolyhedron, LinConstraint, NotConvexWitness, PieceList, Rational, Vector};

fn field<T: DeserializeOwned>(v: &Value, key: &str) -> Result<T, String> {
    let x = v.get(key).ok_or_else(|| format!("missing field `{key}`"))?;
    serde_json::from_value(x.clone()).map_err(|e| format!("field `{key}`: {e}"))
}

/// Outcome of one check: which witness kind was checked and whether it holds.
pub struct Check {
    pub kind: &'static str,
    pub valid: bool,
}

pub fn check_not_convex(pieces: &PieceList, report: &Value) -> Result<Check, String> {
    let w = report.pointer("/result/witness").ok_or("report has no not-convex witness")?;
    let w = NotConvexWitness { x: field(w, "x")?, y: field(w, "y")?, m: field(w, "m")? };
    let d = sub(&w.y, &w.x);
    let valid = pieces.contains(&w.x) && pieces.contains(&w.y) && !pieces.contains(&w.m) && {
        // m = x + mu (y - x) with 0 < mu < 1
        let dd = norm_sq(&d);
        !dd.is_zero() && {
            let mu = dot(&sub(&w.m, &w.x), &d) / &dd;
            mu.is_positive() && mu < Rational::one() && add(&w.x, &semiconvex::linalg::scale(&d, &mu)) == w.m
        }
    };
    Ok(Check { kind: "not_convex", valid })
}

pub fn check_class(set: &CellSet, report: &Value) -> Result<Vec<Check>, String> {
    let class: u8 = report
        .pointer("/result/class")
        .and_then(Value::as_u64)
        .ok_or("report has no class")? as u8;
    let witness = report.pointer("/result/witness").ok_or("report has no witness")?;
    let actual = classify(set).map_err(|e| e.to_string())?.tag.number();
    let mut out = vec![Check { kind: "class", valid: actual == class }];
    if let Some(w) = witness.get("ray") {
        let v: Vector = field(w, "v")?;
        let dir: Vector = field(w, "w")?;
        let ok = !dir.iter().all(Rational::is_zero)
            && set.line_membership(&v, &dir).is_some_and(|iv| {
                iv.hi == semiconvex::Bound::Unbounded && iv.lo.value().is_some_and(|l| l.is_zero())
            });
        out.push(Check { kind: "ray", valid: ok });
    }
    if let Some(w) = witness.get("semident") {
        out.push(check_decomposition(set, &w["decomposition"])?);
        let s = &w["semident"];
        let sw = SemidentWitness {
            a: field(s, "a")?,
            cell: field(s, "cell")?,
            face: field(s, "face")?,
            excluded: field(s, "excluded")?,
            s: field(s, "s")?,
            t: field(s, "t")?,
            lambda: field(s, "lambda")?,
        };
        out.push(Check { kind: "semident", valid: sw.verify(set) });
    }
    if let Some(w) = witness.get("bounded") {
        out.push(check_decomposition(set, w)?);
    }
    if let Some(w) = witness.get("affine") {
        let basis: Vec<Vector> = field(w, "basis")?;
        let lin = set.top().lineality_space().map_err(|e| e.to_string())?;
        let spans = basis.len() == lin.len() && basis.iter().all(|b| in_span(&lin, b));
        let affine = set.is_empty() || (set.is_closed() && set.top().inequalities().is_empty());
        out.push(Check { kind: "affine", valid: spans && affine });
    }
    if let Some(w) = witness.pointer("/not_decomposable/not_translation_invariant") {
        let point: Vector = field(w, "point")?;
        let shift: Vector = field(w, "shift")?;
        let lin = set.top().lineality_space().map_err(|e| e.to_string())?;
        let valid = set.contains(&point) && !set.contains(&add(&point, &shift)) && in_span(&lin, &shift);
        out.push(Check { kind: "not_translation_invariant", valid });
    }
    if witness.get("not_decomposable").and_then(Value::as_str) == Some("RECESSION_EXCEEDS_LINEALITY") {
        let top = set.top();
        let rec = top.recession_cone().map_err(|e| e.to_string())?;
        let lin = top.lineality_space().map_err(|e| e.to_string())?;
        let valid = rec.generators().rays.iter().any(|r| !in_span(&lin, r));
        out.push(Check { kind: "recession_exceeds_lineality", valid });
    }
    Ok(out)
}

/// `basis` spans the lineality space and every vertex of the hull section orthogonal
/// to it lies within `radius_sq`.
fn check_decomposition(set: &CellSet, w: &Value) -> Result<Check, String> {
    let basis: Vec<Vector> = field(w, "basis")?;
    let radius_sq: Rational = field(w, "radius_sq")?;
    let top = set.top();
    let lin = top.lineality_space().map_err(|e| e.to_string())?;
    let spans = basis.len() == lin.len() && basis.iter().all(|b| in_span(&lin, b));
    let section = HPolyhedron::new(
        set.dim(),
        top.constraint_list().into_iter().chain(basis.iter().map(|b| LinConstraint::eq(b.clone(), Rational::zero()))),
    )
    .map_err(|e| e.to_string())?;
    let g = section.generators();
    let bounded = g.rays.is_empty() && g.lines.is_empty() && g.vertices.iter().all(|v| norm_sq(v) <= radius_sq);
    Ok(Check { kind: "bounded_mod_v", valid: spans && bounded })
}
