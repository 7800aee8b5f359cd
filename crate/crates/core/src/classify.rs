//! The six classes and the geometric predicates deciding them.

use std::fmt;

use serde::Serialize;

use crate::cell::{Bound, Interval};
use crate::cellset::{CellSet, Lifted};
use crate::constraint::{LinConstraint, Rel};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{add, dot, in_span, norm_sq, primitive, scale, sub, unit, zeros, Vector};
use crate::lp::is_feasible;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassTag {
    Affine = 1,
    CompactPlusV = 2,
    OpenBounded = 3,
    SemidentBounded = 4,
    PointedStripeLike = 5,
    Ray = 6,
}

impl ClassTag {
    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(k: u8) -> Option<ClassTag> {
        use ClassTag::*;
        [Affine, CompactPlusV, OpenBounded, SemidentBounded, PointedStripeLike, Ray]
            .get((k as usize).wrapping_sub(1))
            .copied()
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemidentWitness {
    pub a: Vector,
    /// Included cell containing `s`.
    pub cell: usize,
    /// Tight facets of the hull at `t`; `t` lies in the relative interior of that face.
    pub face: Vec<usize>,
    /// Excluded cell containing `a`.
    pub excluded: usize,
    pub s: Vector,
    pub t: Vector,
    pub lambda: Rational,
}

impl SemidentWitness {
    /// Exact re-check against `s`: `a = lambda s + (1 - lambda) t` with `s` in the set, `t` in its closure, `a` outside.
    pub fn verify(&self, set: &CellSet) -> bool {
        let one = Rational::one();
        let mix = add(&scale(&self.s, &self.lambda), &scale(&self.t, &(&one - &self.lambda)));
        self.lambda.is_positive()
            && self.lambda < one
            && mix == self.a
            && set.contains(&self.s)
            && set.top().contains(&self.t)
            && !set.contains(&self.a)
            && set.top().tight_set(&self.t) == self.face
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RayMode {
    ExitsHull,
    ExcludedCell(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayWitness {
    pub v: Vector,
    pub w: Vector,
    pub tail_cell: usize,
    pub mode: RayMode,
}

impl RayWitness {
    /// `{t : v + t w in S}` must be `(0, inf)` or `[0, inf)`.
    pub fn verify(&self, set: &CellSet) -> bool {
        if self.w.iter().all(Rational::is_zero) {
            return false;
        }
        matches!(
            set.line_membership(&self.v, &self.w),
            Some(Interval { lo: Bound::Open(l) | Bound::Closed(l), hi: Bound::Unbounded }) if l.is_zero()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedDecomposition {
    /// Basis of the inner vector space `V`.
    pub basis: Vec<Vector>,
    /// Squared radius of a ball containing the section of the closure orthogonal to `V`.
    pub radius_sq: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NotDecomposable {
    RecessionExceedsLineality,
    /// `point` lies in the set, `point + shift` does not, and `shift` is in `V`.
    NotTranslationInvariant { cell: usize, excluded: usize, point: Vector, shift: Vector },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassWitness {
    Affine { basis: Vec<Vector> },
    Bounded(BoundedDecomposition),
    Semident { decomposition: BoundedDecomposition, semident: SemidentWitness },
    NotDecomposable(NotDecomposable),
    Ray(RayWitness),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexClass {
    pub tag: ClassTag,
    pub witness: ClassWitness,
}

/// Each predicate evaluated independently of the decision order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateTable {
    pub closed: bool,
    pub affine: bool,
    pub bounded_mod_v: bool,
    pub semident: bool,
    pub ray: bool,
}

fn nonempty(s: &CellSet) -> Result<()> {
    if s.is_empty() {
        Err(Error::Empty)
    } else {
        Ok(())
    }
}

pub fn inner_vector_space(s: &CellSet) -> Result<Vec<Vector>> {
    nonempty(s)?;
    s.top().lineality_space()
}

pub fn essentially_inner_point(s: &CellSet) -> Result<Vector> {
    nonempty(s)?;
    s.top().relint_point()
}

pub fn outer_dimension(s: &CellSet) -> Result<usize> {
    nonempty(s)?;
    s.top().dimension().ok_or(Error::Empty)
}

pub fn is_closed(s: &CellSet) -> bool {
    s.is_closed()
}

pub fn is_affine(s: &CellSet) -> bool {
    s.is_empty() || (s.is_closed() && s.top().inequalities().is_empty())
}

pub fn bounded_mod_subspace(s: &CellSet) -> Result<std::result::Result<BoundedDecomposition, NotDecomposable>> {
    nonempty(s)?;
    let n = s.dim();
    let top = s.top();
    // A recession direction strictly decreasing some inequality is not a line.
    let mut cons: Vec<LinConstraint> = top
        .equalities()
        .iter()
        .map(|c| LinConstraint::eq(c.coeffs.clone(), Rational::zero()))
        .collect();
    let mut total = zeros(n);
    for c in top.inequalities() {
        cons.push(LinConstraint::le(c.coeffs.clone(), Rational::zero()));
        total = add(&total, &c.coeffs);
    }
    cons.push(LinConstraint::le(total, -Rational::one()));
    if !top.inequalities().is_empty() && is_feasible(n, &cons) {
        return Ok(Err(NotDecomposable::RecessionExceedsLineality));
    }
    let basis = top.lineality_space()?;
    if !basis.is_empty() {
        let k = basis.len();
        for ci in s.included_indices() {
            for ei in s.excluded_indices() {
                // x in c, x + B mu in e
                let mut sys = Lifted::new(n + k);
                sys.push_cell(&s.cells()[ci], &[0], None);
                for c in s.cells()[ei].constraints() {
                    let mut a = zeros(n + k);
                    a[..n].clone_from_slice(&c.coeffs);
                    for (j, b) in basis.iter().enumerate() {
                        a[n + j] = dot(&c.coeffs, b);
                    }
                    sys.push_raw(a, c.rel, c.rhs.clone());
                }
                if let Some(z) = sys.solve() {
                    let mut shift = zeros(n);
                    for (j, b) in basis.iter().enumerate() {
                        shift = add(&shift, &scale(b, &z[n + j]));
                    }
                    return Ok(Err(NotDecomposable::NotTranslationInvariant {
                        cell: ci,
                        excluded: ei,
                        point: z[..n].to_vec(),
                        shift,
                    }));
                }
            }
        }
    }
    let mut section = top.clone();
    for b in &basis {
        section = section.with_constraint(LinConstraint::eq(b.clone(), Rational::zero()));
    }
    let radius_sq = section
        .generators()
        .vertices
        .iter()
        .map(|v| norm_sq(v))
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(Ok(BoundedDecomposition { basis, radius_sq }))
}

fn semident_search(s: &CellSet, target: Option<&[Rational]>) -> Option<SemidentWitness> {
    let n = s.dim();
    let l = 2 * n;
    let one = Rational::one();
    let zero = Rational::zero();
    let excluded = s.excluded_indices();
    if excluded.is_empty() {
        return None;
    }
    for ci in s.included_indices() {
        let mut base = Lifted::new(2 * n + 1);
        base.push_cell(&s.cells()[ci], &[0], Some((l, zero.clone(), one.clone())));
        for c in s.top().constraints() {
            base.push(c, &[n], Some((l, one.clone(), -one.clone())));
        }
        base.push_raw(unit(2 * n + 1, l), Rel::Lt, one.clone());
        base.push_raw(scale(&unit(2 * n + 1, l), &-one.clone()), Rel::Lt, zero.clone());
        let candidates: Vec<usize> = match target {
            Some(a) => s.cells().iter().position(|c| c.contains(a)).into_iter().collect(),
            None => excluded.clone(),
        };
        for ei in candidates {
            let mut sys = Lifted { width: base.width, cons: base.cons.clone() };
            match target {
                Some(a) => {
                    for (i, ai) in a.iter().enumerate() {
                        sys.push(&LinConstraint::eq(unit(n, i), ai.clone()), &[0, n], None);
                    }
                }
                None => sys.push_cell(&s.cells()[ei], &[0, n], None),
            }
            if let Some(z) = sys.solve() {
                let lambda = z[l].clone();
                let ys = &z[..n];
                let yt = &z[n..l];
                let t = scale(yt, &(&one - &lambda).recip());
                return Some(SemidentWitness {
                    a: add(ys, yt),
                    cell: ci,
                    face: s.top().tight_set(&t),
                    excluded: ei,
                    s: scale(ys, &lambda.recip()),
                    t,
                    lambda,
                });
            }
        }
    }
    None
}

/// Some point outside `s` mixing a member with a closure point, if any.
pub fn has_semident(s: &CellSet) -> Result<Option<SemidentWitness>> {
    nonempty(s)?;
    Ok(semident_search(s, None))
}

/// Witness that the given point `a` is a semident, if it is one.
pub fn semident_at(s: &CellSet, a: &[Rational]) -> Result<Option<SemidentWitness>> {
    nonempty(s)?;
    check_dim(s.dim(), a.len())?;
    if s.contains(a) || !s.top().contains(a) {
        return Ok(None);
    }
    Ok(semident_search(s, Some(a)))
}

fn ray_from_line(s: &CellSet, x: &[Rational], w: &[Rational], tail_cell: usize, mode: RayMode) -> Option<RayWitness> {
    let w = primitive(w);
    let iv = s.line_membership(x, &w)?;
    let lo = iv.lo.value()?.clone();
    let rw = RayWitness { v: add(x, &scale(&w, &lo)), w, tail_cell, mode };
    debug_assert!(rw.verify(s));
    Some(rw)
}

pub fn has_ray_intersection(s: &CellSet) -> Result<Option<RayWitness>> {
    nonempty(s)?;
    let n = s.dim();
    let lin = s.top().lineality_space()?;
    for ci in s.included_indices() {
        let cl = s.cells()[ci].closure();
        for g in &cl.generators().rays {
            if !in_span(&lin, g) {
                if let Some(w) = ray_from_line(s, &s.samples()[ci], g, ci, RayMode::ExitsHull) {
                    return Ok(Some(w));
                }
            }
        }
    }
    for ci in s.included_indices() {
        let cell = &s.cells()[ci];
        let cl = cell.closure();
        let g = cl.generators();
        if g.rays.is_empty() && g.lines.is_empty() {
            continue;
        }
        let rec = cl.recession_cone()?;
        for ei in s.excluded_indices() {
            // x in c, k in rec(cl c), x - k in e
            let mut sys = Lifted::new(2 * n);
            sys.push_cell(cell, &[0], None);
            for c in rec.constraints() {
                sys.push(c, &[n], None);
            }
            for c in s.cells()[ei].constraints() {
                let mut a = zeros(2 * n);
                for j in 0..n {
                    a[j] = c.coeffs[j].clone();
                    a[n + j] = -&c.coeffs[j];
                }
                sys.push_raw(a, c.rel, c.rhs.clone());
            }
            if let Some(z) = sys.solve() {
                let x = &z[..n];
                let k = &z[n..];
                let base = sub(x, k);
                if let Some(w) = ray_from_line(s, &base, k, ci, RayMode::ExcludedCell(ei)) {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

pub fn predicate_table(s: &CellSet) -> Result<PredicateTable> {
    if s.is_empty() {
        return Ok(PredicateTable { closed: true, affine: true, bounded_mod_v: true, semident: false, ray: false });
    }
    Ok(PredicateTable {
        closed: is_closed(s),
        affine: is_affine(s),
        bounded_mod_v: bounded_mod_subspace(s)?.is_ok(),
        semident: has_semident(s)?.is_some(),
        ray: has_ray_intersection(s)?.is_some(),
    })
}

pub fn classify(s: &CellSet) -> Result<ConvexClass> {
    if s.is_empty() {
        return Ok(ConvexClass { tag: ClassTag::Affine, witness: ClassWitness::Affine { basis: vec![] } });
    }
    if let Some(r) = has_ray_intersection(s)? {
        return Ok(ConvexClass { tag: ClassTag::Ray, witness: ClassWitness::Ray(r) });
    }
    let decomposition = match bounded_mod_subspace(s)? {
        Err(reason) => {
            return Ok(ConvexClass {
                tag: ClassTag::PointedStripeLike,
                witness: ClassWitness::NotDecomposable(reason),
            })
        }
        Ok(d) => d,
    };
    if let Some(w) = has_semident(s)? {
        return Ok(ConvexClass {
            tag: ClassTag::SemidentBounded,
            witness: ClassWitness::Semident { decomposition, semident: w },
        });
    }
    if !s.is_closed() {
        return Ok(ConvexClass { tag: ClassTag::OpenBounded, witness: ClassWitness::Bounded(decomposition) });
    }
    if is_affine(s) {
        return Ok(ConvexClass { tag: ClassTag::Affine, witness: ClassWitness::Affine { basis: decomposition.basis } });
    }
    Ok(ConvexClass { tag: ClassTag::CompactPlusV, witness: ClassWitness::Bounded(decomposition) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellset::PieceList;
    use crate::polyhedron::HPolyhedron;
    use crate::rational::{q, qi};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| qi(x)).collect()
    }

    fn c(coeffs: &[i64], rel: Rel, rhs: i64) -> LinConstraint {
        LinConstraint::new(v(coeffs), rel, qi(rhs))
    }

    fn set(dim: usize, pieces: Vec<Vec<LinConstraint>>) -> CellSet {
        CellSet::canonicalize(&PieceList::new(dim, pieces)).unwrap()
    }

    fn pointed_rectangle() -> CellSet {
        set(2, vec![
            vec![c(&[-1, 0], Rel::Lt, 1), c(&[1, 0], Rel::Lt, 1), c(&[0, -1], Rel::Lt, 0), c(&[0, 1], Rel::Lt, 1)],
            vec![c(&[1, 0], Rel::Eq, 0), c(&[0, 1], Rel::Eq, 0)],
        ])
    }

    fn pointed_stripe() -> CellSet {
        set(2, vec![
            vec![c(&[0, -1], Rel::Lt, 0), c(&[0, 1], Rel::Lt, 1)],
            vec![c(&[1, 0], Rel::Eq, 0), c(&[0, 1], Rel::Eq, 0)],
        ])
    }

    #[test]
    fn representatives() {
        let cases = [
            (set(1, vec![vec![c(&[1], Rel::Eq, 0)]]), 1),
            (set(1, vec![vec![c(&[-1], Rel::Le, 0), c(&[1], Rel::Le, 1)]]), 2),
            (set(1, vec![vec![c(&[-1], Rel::Lt, 0), c(&[1], Rel::Lt, 1)]]), 3),
            (pointed_rectangle(), 4),
            (pointed_stripe(), 5),
            (set(1, vec![vec![c(&[-1], Rel::Le, 0)]]), 6),
        ];
        for (s, k) in cases {
            let cls = classify(&s).unwrap();
            assert_eq!(cls.tag.number(), k, "{cls:?}");
        }
    }

    #[test]
    fn semident_of_pointed_rectangle() {
        let pr = pointed_rectangle();
        let w = semident_at(&pr, &[q(1, 2), qi(0)]).unwrap().unwrap();
        assert_eq!(w.a, vec![q(1, 2), qi(0)]);
        assert!(w.verify(&pr));
        let any = has_semident(&pr).unwrap().unwrap();
        assert!(any.verify(&pr));
        assert!(semident_at(&pr, &[qi(0), q(1, 2)]).unwrap().is_none());
    }

    #[test]
    fn ray_on_half_open_stripe() {
        let s = set(2, vec![
            vec![c(&[0, -1], Rel::Lt, 0), c(&[0, 1], Rel::Lt, 1)],
            vec![c(&[0, 1], Rel::Eq, 0), c(&[-1, 0], Rel::Lt, 0)],
        ]);
        let w = has_ray_intersection(&s).unwrap().unwrap();
        assert!(w.verify(&s));
        assert_eq!(w.v, v(&[0, 0]));
        assert_eq!(w.w, v(&[1, 0]));
        assert!(matches!(w.mode, RayMode::ExcludedCell(_)));
        assert_eq!(classify(&s).unwrap().tag, ClassTag::Ray);
        assert_eq!(classify(&s.closure()).unwrap().tag, ClassTag::CompactPlusV);
    }

    #[test]
    fn closed_ray_witness() {
        let s = set(1, vec![vec![c(&[-1], Rel::Le, 0)]]);
        let w = has_ray_intersection(&s).unwrap().unwrap();
        assert_eq!((w.v.clone(), w.w.clone()), (v(&[0]), v(&[1])));
        assert_eq!(w.mode, RayMode::ExitsHull);
    }

    #[test]
    fn decomposition_reasons() {
        let stripe = set(2, vec![vec![c(&[0, -1], Rel::Le, 0), c(&[0, 1], Rel::Le, 1)]]);
        let d = bounded_mod_subspace(&stripe).unwrap().unwrap();
        assert_eq!(d.basis, vec![v(&[1, 0])]);
        assert_eq!(d.radius_sq, qi(1));
        assert!(matches!(
            bounded_mod_subspace(&pointed_stripe()).unwrap(),
            Err(NotDecomposable::NotTranslationInvariant { .. })
        ));
        let ray = set(1, vec![vec![c(&[-1], Rel::Le, 0)]]);
        assert_eq!(bounded_mod_subspace(&ray).unwrap(), Err(NotDecomposable::RecessionExceedsLineality));
    }

    #[test]
    fn inner_point_and_dimension() {
        let sq = CellSet::from_polyhedron(&HPolyhedron::new(3, [
            c(&[-1, 0, 0], Rel::Le, 0), c(&[1, 0, 0], Rel::Le, 1),
            c(&[0, -1, 0], Rel::Le, 0), c(&[0, 1, 0], Rel::Le, 1),
            c(&[0, 0, 1], Rel::Eq, 0),
        ]).unwrap()).unwrap();
        assert_eq!(outer_dimension(&sq).unwrap(), 2);
        let pr = pointed_rectangle();
        let u = essentially_inner_point(&pr).unwrap();
        assert!(pr.contains(&u));
        assert_eq!(outer_dimension(&pr).unwrap(), 2);
        assert!(is_affine(&CellSet::empty(2)));
        assert_eq!(classify(&CellSet::empty(2)).unwrap().tag, ClassTag::Affine);
    }
}
