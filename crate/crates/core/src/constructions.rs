//! Representatives of the six classes, pipelines defining one class from
//! another, definitions from the ray, and the finite-arity polymorphism check.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::affine::AffineMap;
use crate::algebra::{affine_preimage, OpNode, Pipeline};
use crate::cell::{Bound, Cell};
use crate::cellset::{CellSet, Lifted, PieceList};
use crate::classify::{
    classify, essentially_inner_point, has_ray_intersection, has_semident, ClassTag, ClassWitness,
    NotDecomposable,
};
use crate::constraint::{LinConstraint, Rel};
use crate::error::{Error, Result};
use crate::linalg::{add, in_span, neg, norm_sq, nullspace, rank, scale, sub, unit, zeros, Vector};
use crate::polyhedron::{Generators, HPolyhedron};
use crate::rational::Rational;

fn qi(n: i64) -> Rational {
    Rational::from_int(n)
}

fn cons(coeffs: &[i64], rel: Rel, rhs: i64) -> LinConstraint {
    LinConstraint::new(coeffs.iter().map(|&c| qi(c)).collect(), rel, qi(rhs))
}

fn pieces(dim: usize, p: Vec<Vec<LinConstraint>>) -> CellSet {
    CellSet::canonicalize(&PieceList::new(dim, p)).expect("built-in sets are convex")
}

/// The canonical set of class `k`: `{0}`, `[0,1]`, `(0,1)`, the pointed rectangle,
/// the pointed stripe and `[0, inf)`.
pub fn representative(k: u8) -> Result<CellSet> {
    let set = match k {
        1 => pieces(1, vec![vec![cons(&[1], Rel::Eq, 0)]]),
        2 => pieces(1, vec![vec![cons(&[-1], Rel::Le, 0), cons(&[1], Rel::Le, 1)]]),
        3 => pieces(1, vec![vec![cons(&[-1], Rel::Lt, 0), cons(&[1], Rel::Lt, 1)]]),
        4 => pieces(2, vec![
            vec![cons(&[-1, 0], Rel::Lt, 1), cons(&[1, 0], Rel::Lt, 1), cons(&[0, -1], Rel::Lt, 0), cons(&[0, 1], Rel::Lt, 1)],
            vec![cons(&[1, 0], Rel::Eq, 0), cons(&[0, 1], Rel::Eq, 0)],
        ]),
        5 => pieces(2, vec![
            vec![cons(&[0, -1], Rel::Lt, 0), cons(&[0, 1], Rel::Lt, 1)],
            vec![cons(&[1, 0], Rel::Eq, 0), cons(&[0, 1], Rel::Eq, 0)],
        ]),
        6 => pieces(1, vec![vec![cons(&[-1], Rel::Le, 0)]]),
        _ => return Err(Error::InvalidArgument(format!("no representative for class {k}"))),
    };
    Ok(set)
}

/// `{(x, y) : x > 0} ∪ {(0, 0)}`.
pub fn pointed_half_plane() -> CellSet {
    pieces(2, vec![
        vec![cons(&[-1, 0], Rel::Lt, 0)],
        vec![cons(&[1, 0], Rel::Eq, 0), cons(&[0, 1], Rel::Eq, 0)],
    ])
}

fn open_ray() -> CellSet {
    pieces(1, vec![vec![cons(&[-1], Rel::Lt, 0)]])
}

#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub name: &'static str,
    pub recipe: String,
    pub pipeline: Pipeline,
    pub target: CellSet,
    pub result: CellSet,
    pub verified: bool,
}

impl ConstructionReport {
    fn run(name: &'static str, recipe: String, root: Arc<OpNode>, target: CellSet) -> Result<Self> {
        let result = root.evaluate()?;
        let verified = result.set_equal(&target)?;
        Ok(ConstructionReport { name, recipe, pipeline: Pipeline::new(root), target, result, verified })
    }
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn vec_str(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Affine map `R^k -> R^n`, `z -> offset + sum_j z_j cols[j]`.
fn columns_map(offset: &[Rational], cols: &[Vector]) -> AffineMap {
    let n = offset.len();
    let matrix = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    AffineMap::new(matrix, offset.to_vec(), cols.len()).expect("consistent shapes")
}

/// Affine map given by rows `(coeffs, constant)`.
fn rows_map(input_dim: usize, rows: Vec<(Vector, Rational)>) -> AffineMap {
    let (matrix, offset): (Vec<Vector>, Vector) = rows.into_iter().unzip();
    AffineMap::new(matrix, offset, input_dim).expect("consistent shapes")
}

fn intersect_all(mut nodes: Vec<Arc<OpNode>>) -> Result<Arc<OpNode>> {
    if nodes.len() == 1 {
        Ok(nodes.pop().expect("one node"))
    } else {
        OpNode::intersect(nodes)
    }
}

pub fn construct_ray(s: &CellSet) -> Result<ConstructionReport> {
    let w = has_ray_intersection(s)?.ok_or_else(|| precondition("no ray intersection"))?;
    let node = OpNode::preimage(OpNode::source(s.clone()), AffineMap::line(&w.v, &w.w))?;
    let target = if s.contains(&w.v) { representative(6)? } else { open_ray() };
    let recipe = format!("preimage along v + x w with v = {}, w = {}", vec_str(&w.v), vec_str(&w.w));
    ConstructionReport::run("ray", recipe, node, target)
}

/// `{x : s + x (u - s) in S} ∩ {x : s + (1 - x)(u - s) in S}` for an inner point `u`
/// and a point `s` of the closure outside `S`.
fn open_interval_node(src: &Arc<OpNode>, s: &CellSet) -> Result<(Arc<OpNode>, String)> {
    if s.is_empty() || s.is_closed() {
        return Err(precondition("set is closed"));
    }
    let u = essentially_inner_point(s)?;
    let e = s.excluded_indices()[0];
    let b = s.samples()[e].clone();
    let d = sub(&u, &b);
    let near = OpNode::preimage(src.clone(), AffineMap::line(&b, &d))?;
    let far = OpNode::preimage(src.clone(), AffineMap::line(&u, &neg(&d)))?;
    let recipe = format!("inner point u = {}, boundary point s = {}", vec_str(&u), vec_str(&b));
    Ok((OpNode::intersect(vec![near, far])?, recipe))
}

pub fn construct_open_interval(s: &CellSet) -> Result<ConstructionReport> {
    let (node, recipe) = open_interval_node(&OpNode::source(s.clone()), s)?;
    ConstructionReport::run("open-interval", recipe, node, representative(3)?)
}

fn compact_interval_node(src: &Arc<OpNode>, s: &CellSet) -> Result<(Arc<OpNode>, String)> {
    let tag = classify(s)?.tag;
    if !matches!(tag, ClassTag::CompactPlusV | ClassTag::OpenBounded | ClassTag::SemidentBounded) {
        return Err(precondition(format!("class {tag}, expected 2, 3 or 4")));
    }
    if !s.is_closed() {
        let (open, recipe) = open_interval_node(src, s)?;
        return Ok((OpNode::closure(open), format!("closure of open interval; {recipe}")));
    }
    let u = essentially_inner_point(s)?;
    let lin = s.top().lineality_space()?;
    let eq_rows: Vec<Vector> = s.top().equalities().iter().map(|c| c.coeffs.clone()).collect();
    let d = nullspace(&eq_rows, s.dim())
        .into_iter()
        .find(|d| !in_span(&lin, d))
        .ok_or_else(|| precondition("set is affine"))?;
    let iv = s.line_membership(&u, &d).ok_or_else(|| Error::Verification("inner point not a member".into()))?;
    let (Some(lo), Some(hi)) = (iv.lo.value(), iv.hi.value()) else {
        return Err(Error::Verification("slice through the inner point is unbounded".into()));
    };
    let a = add(&u, &scale(&d, lo));
    let b = add(&u, &scale(&d, hi));
    let node = OpNode::preimage(src.clone(), AffineMap::line(&a, &sub(&b, &a)))?;
    Ok((node, format!("slice from {} to {}", vec_str(&a), vec_str(&b))))
}

pub fn construct_compact_interval(s: &CellSet) -> Result<ConstructionReport> {
    let (node, recipe) = compact_interval_node(&OpNode::source(s.clone()), s)?;
    ConstructionReport::run("compact-interval", recipe, node, representative(2)?)
}

/// An essentially inner point not on the line through `s` and `t`.
fn off_line_inner_point(set: &CellSet, s: &[Rational], t: &[Rational]) -> Result<Vector> {
    let u = essentially_inner_point(set)?;
    let st = sub(t, s);
    let independent = |b: &Vector| rank(&[sub(b, s), st.clone()], s.len()) == 2;
    if independent(&u) {
        return Ok(u);
    }
    let top = set.top_cell().map(|i| set.cells()[i].clone()).ok_or_else(|| Error::Verification("no top cell".into()))?;
    let eq_rows: Vec<Vector> = set.top().equalities().iter().map(|c| c.coeffs.clone()).collect();
    for d in nullspace(&eq_rows, set.dim()) {
        let iv = top.line_interval(&u, &d).ok_or_else(|| Error::Verification("inner point not in top cell".into()))?;
        let step = iv.hi.value().map_or_else(Rational::one, |h| h / &qi(2));
        let b = add(&u, &scale(&d, &step));
        if independent(&b) {
            return Ok(b);
        }
    }
    Err(Error::Verification("set is at most one-dimensional".into()))
}

pub fn construct_pointed_rectangle(s: &CellSet) -> Result<ConstructionReport> {
    let cls = classify(s)?;
    let w = match cls.witness {
        ClassWitness::Semident { semident, .. } => semident,
        _ if has_semident(s).map(|w| w.is_none()).unwrap_or(true) => return Err(precondition("no semident")),
        _ => return Err(precondition(format!("class {}, expected 4", cls.tag))),
    };
    let n = s.dim();
    let src = OpNode::source(s.clone());
    let (unit_iv, _) = compact_interval_node(&src, s)?;
    let (open_iv, _) = open_interval_node(&src, s)?;
    let b = off_line_inner_point(s, &w.s, &w.t)?;
    let one = Rational::one();
    let half = Rational::new(1, 2);
    let e = |k: usize, i: usize| unit(k, i);

    // Triangle s, b, t in the plane spanned by them.
    let g = columns_map(&w.s, &[sub(&b, &w.s), sub(&w.t, &w.s)]);
    let s1 = intersect_all(vec![
        OpNode::preimage(src.clone(), g)?,
        OpNode::preimage(unit_iv.clone(), rows_map(2, vec![(e(2, 0), Rational::zero())]))?,
        OpNode::preimage(unit_iv.clone(), rows_map(2, vec![(e(2, 1), Rational::zero())]))?,
        OpNode::preimage(unit_iv.clone(), rows_map(2, vec![(vec![one.clone(), one.clone()], Rational::zero())]))?,
    ])?;
    let edge = s1
        .evaluate()?
        .line_membership(&zeros(2), &e(2, 1))
        .ok_or_else(|| Error::Verification("triangle misses its corner".into()))?;
    let c = match edge.hi {
        Bound::Open(c) | Bound::Closed(c) => c,
        Bound::Unbounded => return Err(Error::Verification("unbounded edge".into())),
    };
    let s2 = OpNode::directional_limit(s1, e(2, 1))?;
    // (x1, x2) -> (x1, (1 - c) x2 + c - c x1)
    let shear = rows_map(2, vec![
        (e(2, 0), Rational::zero()),
        (vec![-c.clone(), &one - &c], c.clone()),
    ]);
    let s3 = intersect_all(vec![
        OpNode::preimage(s2, shear)?,
        OpNode::preimage(unit_iv.clone(), rows_map(2, vec![(e(2, 1), Rational::zero())]))?,
    ])?;
    let halve = rows_map(2, vec![(scale(&e(2, 0), &half), Rational::zero()), (scale(&e(2, 1), &half), Rational::zero())]);
    let s4 = intersect_all(vec![
        OpNode::preimage(s3, halve)?,
        OpNode::preimage(unit_iv.clone(), rows_map(2, vec![(e(2, 0), Rational::zero())]))?,
        OpNode::preimage(unit_iv, rows_map(2, vec![(e(2, 1), Rational::zero())]))?,
    ])?;
    // Over (x1, x2, y): (x1, y) in S4, (x1, y - x2) in S4, x2/2 + 1/2 and x1/2 + 1/2 in (0, 1).
    let lifted = intersect_all(vec![
        OpNode::preimage(s4.clone(), rows_map(3, vec![(e(3, 0), Rational::zero()), (e(3, 2), Rational::zero())]))?,
        OpNode::preimage(s4, rows_map(3, vec![(e(3, 0), Rational::zero()), (sub(&e(3, 2), &e(3, 1)), Rational::zero())]))?,
        OpNode::preimage(open_iv.clone(), rows_map(3, vec![(scale(&e(3, 1), &half), half.clone())]))?,
        OpNode::preimage(open_iv, rows_map(3, vec![(scale(&e(3, 0), &half), half.clone())]))?,
    ])?;
    let s5 = OpNode::image(lifted, rows_map(3, vec![(e(3, 1), Rational::zero()), (e(3, 0), Rational::zero())]))?;
    let recipe = format!(
        "semident a = {}, s = {}, t = {}, b = {}, c = {}",
        vec_str(&w.a),
        vec_str(&w.s),
        vec_str(&w.t),
        vec_str(&b),
        c
    );
    debug_assert_eq!(n, s.dim());
    ConstructionReport::run("pointed-rectangle", recipe, s5, representative(4)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct PointwiseReport {
    pub density: u32,
    pub truncation: usize,
    pub points: usize,
    /// Points where the exact limit analysis agrees with the pointed stripe.
    pub agree: usize,
    /// Points where the conjunction truncated at `truncation` agrees with the pointed stripe.
    pub truncated_agree: usize,
    pub disagreements: Vec<Vector>,
}

impl PointwiseReport {
    pub fn all_agree(&self) -> bool {
        self.agree == self.points
    }
}

/// Checks the pointed-stripe formula point by point on the grid with step `1/density`
/// over `[-window, window]^2`. The infinite conjunction over `n` is decided exactly from
/// the interval of `t` with `(t x, 1 - y)` in the slice `S'`.
pub fn verify_pointed_stripe(s: &CellSet, density: u32, truncation: usize, window: i64) -> Result<PointwiseReport> {
    if density == 0 {
        return Err(Error::InvalidArgument("density must be positive".into()));
    }
    let cls = classify(s)?;
    let (p, v) = match cls.witness {
        ClassWitness::NotDecomposable(NotDecomposable::NotTranslationInvariant { point, shift, .. }) => (point, shift),
        _ => return Err(precondition(format!("class {}, expected 5", cls.tag))),
    };
    let u = essentially_inner_point(s)?;
    let slice = affine_preimage(s, &columns_map(&u, &[v.clone(), sub(&p, &u)]))?;
    let iv = s.line_membership(&p, &v).ok_or_else(|| Error::Verification("witness point not a member".into()))?;
    let (Some(a), Some(b)) = (iv.lo.value(), iv.hi.value()) else {
        return Err(Error::Verification("translation line meets the set in an unbounded interval".into()));
    };
    let offset = a - b - Rational::one();
    let stripe = representative(5)?;
    let head = |x: &Rational, y: &Rational| {
        slice.contains(&[x.clone(), y.clone()]) && slice.contains(&[x + &offset, y.clone()])
    };
    let top = |y: &Rational| Rational::one() - y;
    let tail_exact = |x: &Rational, y: &Rational| {
        if x.is_zero() {
            return slice.contains(&[Rational::zero(), top(y)]);
        }
        match slice.line_membership(&[Rational::zero(), top(y)], &[x.clone(), Rational::zero()]) {
            Some(iv) => iv.contains(&Rational::one()) && iv.hi == Bound::Unbounded,
            None => false,
        }
    };
    let tail_truncated = |x: &Rational, y: &Rational| {
        (1..=truncation as i64).all(|k| slice.contains(&[x * &qi(k), top(y)]))
    };
    let steps = 2 * window * density as i64;
    let mut report = PointwiseReport { density, truncation, points: 0, agree: 0, truncated_agree: 0, disagreements: vec![] };
    for i in 0..=steps {
        for j in 0..=steps {
            let x = Rational::new(i, density as i64) - qi(window);
            let y = Rational::new(j, density as i64) - qi(window);
            let want = stripe.contains(&[x.clone(), y.clone()]);
            let h = head(&x, &y);
            report.points += 1;
            if (h && tail_exact(&x, &y)) == want {
                report.agree += 1;
            } else {
                report.disagreements.push(vec![x.clone(), y.clone()]);
            }
            if (h && tail_truncated(&x, &y)) == want {
                report.truncated_agree += 1;
            }
        }
    }
    Ok(report)
}

struct RaySources {
    ray: Arc<OpNode>,
    half_plane: Arc<OpNode>,
}

impl RaySources {
    fn new() -> Result<Self> {
        Ok(RaySources { ray: OpNode::source(representative(6)?), half_plane: OpNode::source(pointed_half_plane()) })
    }

    /// `{x : coeffs . x + constant >= 0}`.
    fn half_space(&self, dim: usize, coeffs: Vector, constant: Rational) -> Result<Arc<OpNode>> {
        OpNode::preimage(self.ray.clone(), rows_map(dim, vec![(coeffs, constant)]))
    }

    /// `{x : coeffs . x + constant > 0}`.
    fn open_half_space(&self, dim: usize, coeffs: Vector, constant: Rational) -> Result<Arc<OpNode>> {
        OpNode::preimage(
            self.half_plane.clone(),
            rows_map(dim, vec![(coeffs, constant), (zeros(dim), Rational::one())]),
        )
    }

    fn hull_blocks(&self, top: &HPolyhedron, only_meeting: Option<&Cell>) -> Result<Vec<Arc<OpNode>>> {
        let dim = top.dim();
        let mut out = Vec::new();
        let mut push = |a: &Vector, b: &Rational| -> Result<()> {
            // a.x <= b
            let outside = LinConstraint::lt(neg(a), -b);
            if only_meeting.is_none_or(|x| x.meet(&[outside]).is_some()) {
                out.push(self.half_space(dim, neg(a), b.clone())?);
            }
            Ok(())
        };
        for c in top.equalities() {
            push(&c.coeffs, &c.rhs)?;
            push(&neg(&c.coeffs), &-&c.rhs)?;
        }
        for c in top.inequalities() {
            push(&c.coeffs, &c.rhs)?;
        }
        Ok(out)
    }

    /// A definable set containing `s` and disjoint from the cell `x`, or `None` when `x` is empty.
    fn separator(&self, s: &CellSet, x: &Cell) -> Result<Option<Arc<OpNode>>> {
        let m = s.dim();
        if x.is_empty() {
            return Ok(None);
        }
        if s.is_empty() {
            return Ok(Some(self.half_space(m, zeros(m), -Rational::one())?));
        }
        let top = s.top();
        let mut blocks = self.hull_blocks(top, Some(x))?;
        for face in top.face_lattice()? {
            if face.tight.is_empty() {
                continue;
            }
            let relint = Cell::from_parts(
                m,
                face.polyhedron.equalities().to_vec(),
                face.polyhedron.inequalities().iter().map(|c| c.with_rel(Rel::Lt)).collect(),
            );
            let Some(xf) = x.intersect(&relint) else { continue };
            // h = sum of tight slacks: >= 0 on the hull, = 0 exactly on the face.
            let mut v = zeros(m);
            let mut beta = Rational::zero();
            for &i in &face.tight {
                let c = &top.inequalities()[i];
                v = sub(&v, &c.coeffs);
                beta += &c.rhs;
            }
            let on_h = LinConstraint::eq(v.clone(), -beta.clone());
            if !s.included_cells().any(|c| c.meet(std::slice::from_ref(&on_h)).is_some()) {
                blocks.push(self.open_half_space(m, v, beta)?);
                continue;
            }
            let x0 = scale(&v, &(-&beta / &norm_sq(&v)));
            let basis = nullspace(&[v.clone()], m);
            let emb = columns_map(&x0, &basis);
            let s_h = affine_preimage(s, &emb)?;
            let pulled: Vec<LinConstraint> = xf.constraints().map(|c| emb.pull_back(c)).collect();
            let x_h = Cell::from_constraints(m - 1, &pulled).expect("face part lies in the hyperplane");
            let Some(inner) = self.separator(&s_h, &x_h)? else {
                blocks.push(self.half_space(m, v, beta)?);
                continue;
            };
            // {h > 0} ∪ emb(inner) as the image of {(b, y) : b in inner, P(v.y, y_i) for all i}
            // under (b, y) -> x0 + M b + y, where P is the pointed half-plane.
            let k = m - 1;
            let width = k + m;
            let mut parts = vec![OpNode::preimage(
                inner,
                rows_map(width, (0..k).map(|j| (unit(width, j), Rational::zero())).collect()),
            )?];
            let mut vy = zeros(width);
            vy[k..].clone_from_slice(&v);
            for i in 0..m {
                parts.push(OpNode::preimage(
                    self.half_plane.clone(),
                    rows_map(width, vec![(vy.clone(), Rational::zero()), (unit(width, k + i), Rational::zero())]),
                )?);
            }
            let glue = rows_map(
                width,
                (0..m)
                    .map(|i| {
                        let mut row: Vector = basis.iter().map(|b| b[i].clone()).collect();
                        row.extend((0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                        (row, x0[i].clone())
                    })
                    .collect(),
            );
            blocks.push(OpNode::image(OpNode::intersect(parts)?, glue)?);
        }
        if blocks.is_empty() {
            return Err(Error::Verification("cell meets the set".into()));
        }
        Ok(Some(intersect_all(blocks)?))
    }
}

/// One closed half-space per facet and two per equality of the closed target.
pub fn define_closed_from_ray(target: &CellSet) -> Result<ConstructionReport> {
    if !target.is_closed() {
        return Err(precondition("set is not closed"));
    }
    let src = RaySources::new()?;
    let dim = target.dim();
    let mut blocks = if target.is_empty() {
        vec![src.half_space(dim, zeros(dim), -Rational::one())?]
    } else {
        src.hull_blocks(target.top(), None)?
    };
    if blocks.is_empty() {
        blocks.push(src.half_space(dim, zeros(dim), Rational::zero())?);
    }
    let recipe = format!("{} closed half-spaces", blocks.len());
    ConstructionReport::run("closed-from-ray", recipe, intersect_all(blocks)?, target.clone())
}

/// Hull half-spaces plus one separator per excluded cell, built from the ray and the
/// pointed half-plane only.
pub fn define_from_ray(target: &CellSet) -> Result<ConstructionReport> {
    let src = RaySources::new()?;
    let dim = target.dim();
    let mut blocks = if target.is_empty() {
        vec![src.half_space(dim, zeros(dim), -Rational::one())?]
    } else {
        src.hull_blocks(target.top(), None)?
    };
    let hull_count = blocks.len();
    for e in target.excluded_indices() {
        if let Some(node) = src.separator(target, &target.cells()[e])? {
            blocks.push(node);
        }
    }
    if blocks.is_empty() {
        blocks.push(src.half_space(dim, zeros(dim), Rational::zero())?);
    }
    let recipe = format!(
        "{hull_count} hull half-spaces, {} separators",
        blocks.len() - hull_count.min(blocks.len())
    );
    ConstructionReport::run("from-ray", recipe, intersect_all(blocks)?, target.clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PolymorphismOutcome {
    Preserved,
    /// `points` lie in the set, their combination `image` does not.
    Violated { points: Vec<Vector>, image: Vector },
}

/// Generators of `l * cl(c)`.
fn scaled_generators(c: &Cell, l: &Rational) -> Generators {
    let g = c.closure().generators().clone();
    let nonzero = |v: &Vector| v.iter().any(|x| !x.is_zero());
    Generators {
        vertices: g.vertices.iter().map(|p| scale(p, l)).collect(),
        rays: g.rays.iter().map(|r| scale(r, l)).filter(nonzero).collect(),
        lines: if l.is_zero() { vec![] } else { g.lines },
    }
}

/// `relint(cl a + cl b)` from generators; equal to `a + b` for relatively open cells.
fn cell_sum(dim: usize, a: &Generators, b: &Generators) -> Result<Option<Cell>> {
    let mut g = Generators { vertices: vec![], rays: vec![], lines: vec![] };
    for p in &a.vertices {
        for q in &b.vertices {
            g.vertices.push(add(p, q));
        }
    }
    g.rays = a.rays.iter().chain(&b.rays).cloned().collect();
    g.lines = a.lines.iter().chain(&b.lines).cloned().collect();
    Ok(Cell::relint_of(&HPolyhedron::from_generators(dim, &g)?))
}

/// Whether `x -> sum lambda_i x_i` maps `S^m` into `S`. The image of `S^m` is folded one
/// coefficient at a time as a deduplicated union of cells, each tested against the complement.
pub fn polymorphism_check(s: &CellSet, lambda: &[Rational]) -> Result<PolymorphismOutcome> {
    if lambda.is_empty() || lambda.iter().sum::<Rational>() != Rational::one() {
        return Err(Error::InvalidArgument("coefficients must sum to 1".into()));
    }
    if s.is_empty() {
        return Ok(PolymorphismOutcome::Preserved);
    }
    let n = s.dim();
    let included: Vec<&Cell> = s.included_cells().collect();
    // Partial sums with the first tuple of cells producing each.
    let mut partial: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
    let zero = Generators { vertices: vec![zeros(n)], rays: vec![], lines: vec![] };
    partial.insert(Cell::relint_of(&HPolyhedron::point(&zeros(n))).expect("a point"), vec![]);
    for l in lambda {
        let terms: Vec<Generators> = included.iter().map(|c| scaled_generators(c, l)).collect();
        let mut next = BTreeMap::new();
        for (k, tuple) in &partial {
            let kg = if tuple.is_empty() { zero.clone() } else { k.closure().generators().clone() };
            for (i, g) in terms.iter().enumerate() {
                if let Some(sum) = cell_sum(n, &kg, g)? {
                    next.entry(sum).or_insert_with(|| {
                        let mut t = tuple.clone();
                        t.push(i);
                        t
                    });
                }
            }
        }
        partial = next;
    }
    // The complement of S: open half-spaces outside the hull, then excluded cells.
    let mut targets: Vec<Cell> = Vec::new();
    for c in s.top().equalities() {
        targets.push(Cell::from_parts(n, vec![], vec![LinConstraint::lt(neg(&c.coeffs), -&c.rhs)]));
        targets.push(Cell::from_parts(n, vec![], vec![LinConstraint::lt(c.coeffs.clone(), c.rhs.clone())]));
    }
    for c in s.top().inequalities() {
        targets.push(Cell::from_parts(n, vec![], vec![LinConstraint::lt(neg(&c.coeffs), -&c.rhs)]));
    }
    targets.extend(s.excluded_indices().into_iter().map(|e| s.cells()[e].clone()));
    let m = lambda.len();
    for (k, tuple) in &partial {
        let Some(target) = targets.iter().find(|t| k.meet(&t.constraint_list()).is_some()) else {
            continue;
        };
        let mut sys = Lifted::new(m * n);
        for (i, &ci) in tuple.iter().enumerate() {
            sys.push_cell(included[ci], &[i * n], None);
        }
        for c in target.constraints() {
            let mut a = zeros(m * n);
            for (i, l) in lambda.iter().enumerate() {
                for j in 0..n {
                    a[i * n + j] = l * &c.coeffs[j];
                }
            }
            sys.push_raw(a, c.rel, c.rhs.clone());
        }
        let z = sys.solve().ok_or_else(|| Error::Verification("combination cell meets the complement but no witness found".into()))?;
        let points: Vec<Vector> = (0..m).map(|i| z[i * n..(i + 1) * n].to_vec()).collect();
        let mut image = zeros(n);
        for (p, l) in points.iter().zip(lambda) {
            image = add(&image, &scale(p, l));
        }
        debug_assert!(points.iter().all(|p| s.contains(p)) && !s.contains(&image));
        return Ok(PolymorphismOutcome::Violated { points, image });
    }
    Ok(PolymorphismOutcome::Preserved)
}

/// Coefficient vector helper for callers building `lambda` from integers over a common denominator.
pub fn lambda_from_ints(nums: &[i64], den: i64) -> Vector {
    nums.iter().map(|&k| Rational::new(k, den)).collect()
}
