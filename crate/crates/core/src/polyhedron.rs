//! Closed polyhedra `{x : E x = f, A x <= b}`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::constraint::{LinConstraint, Rel};
use crate::dd::cone_generators;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{
    add, dot, is_zero_vec, neg, nullspace, primitive, primitive_oriented, rref, scale, sub, zeros,
    Vector,
};
use crate::lp::{feasible_point, maximize, minimize, LpOutcome};
use crate::rational::Rational;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Generators {
    pub vertices: Vec<Vector>,
    pub rays: Vec<Vector>,
    pub lines: Vec<Vector>,
}

impl Generators {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[derive(Clone)]
pub struct HPolyhedron {
    dim: usize,
    equalities: Vec<LinConstraint>,
    inequalities: Vec<LinConstraint>,
    gens: OnceLock<Generators>,
}

impl fmt::Debug for HPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPolyhedron(dim {}; ", self.dim)?;
        let parts: Vec<String> = self.constraints().map(|c| c.to_string()).collect();
        write!(f, "{})", parts.join(", "))
    }
}

impl PartialEq for HPolyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.equalities == other.equalities
            && self.inequalities == other.inequalities
    }
}

impl Eq for HPolyhedron {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SeparationKind {
    Supporting,
    Strict,
}

/// `<s - a, normal> >= margin` for every `s` of the polyhedron.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationCertificate {
    pub normal: Vector,
    pub margin: Rational,
    pub kind: SeparationKind,
}

impl SeparationCertificate {
    /// Check the certificate against the generators of `h`.
    pub fn verify(&self, h: &HPolyhedron, a: &[Rational]) -> bool {
        let g = h.generators();
        let bound = match self.kind {
            SeparationKind::Strict => {
                if !self.margin.is_positive() {
                    return false;
                }
                self.margin.clone()
            }
            SeparationKind::Supporting => Rational::zero(),
        };
        g.vertices.iter().all(|v| dot(&sub(v, a), &self.normal) >= bound)
            && g.rays.iter().all(|r| !dot(r, &self.normal).is_negative())
            && g.lines.iter().all(|l| dot(l, &self.normal).is_zero())
    }
}

#[derive(Debug, Clone)]
pub struct Face {
    pub polyhedron: HPolyhedron,
    pub dim: usize,
    /// Indices of the normalized inequalities tight on the face.
    pub tight: Vec<usize>,
}

impl HPolyhedron {
    pub fn from_parts(dim: usize, equalities: Vec<LinConstraint>, inequalities: Vec<LinConstraint>) -> Self {
        debug_assert!(equalities.iter().all(|c| c.rel == Rel::Eq && c.dim() == dim));
        debug_assert!(inequalities.iter().all(|c| c.rel == Rel::Le && c.dim() == dim));
        HPolyhedron { dim, equalities, inequalities, gens: OnceLock::new() }
    }

    pub fn new(dim: usize, constraints: impl IntoIterator<Item = LinConstraint>) -> Result<Self> {
        let mut eqs = Vec::new();
        let mut ineqs = Vec::new();
        for c in constraints {
            check_dim(dim, c.dim())?;
            match c.rel {
                Rel::Eq => eqs.push(c),
                Rel::Le => ineqs.push(c),
                Rel::Lt => {
                    return Err(Error::InvalidArgument(
                        "strict constraint in a closed polyhedron".into(),
                    ))
                }
            }
        }
        Ok(Self::from_parts(dim, eqs, ineqs))
    }

    pub fn universe(dim: usize) -> Self {
        Self::from_parts(dim, vec![], vec![])
    }

    pub fn empty(dim: usize) -> Self {
        Self::from_parts(dim, vec![], vec![LinConstraint::le(zeros(dim), -Rational::one())])
    }

    pub fn point(p: &[Rational]) -> Self {
        let n = p.len();
        let eqs = (0..n)
            .map(|i| LinConstraint::eq(crate::linalg::unit(n, i), p[i].clone()))
            .collect();
        Self::from_parts(n, eqs, vec![])
    }

    /// Axis-parallel box `lo <= x <= hi`.
    pub fn cuboid(lo: &[Rational], hi: &[Rational]) -> Self {
        let n = lo.len();
        let mut ineqs = Vec::new();
        for i in 0..n {
            let e = crate::linalg::unit(n, i);
            ineqs.push(LinConstraint::ge(e.clone(), lo[i].clone()));
            ineqs.push(LinConstraint::le(e, hi[i].clone()));
        }
        Self::from_parts(n, vec![], ineqs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equalities(&self) -> &[LinConstraint] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[LinConstraint] {
        &self.inequalities
    }

    pub fn constraints(&self) -> impl Iterator<Item = &LinConstraint> {
        self.equalities.iter().chain(&self.inequalities)
    }

    pub fn constraint_list(&self) -> Vec<LinConstraint> {
        self.constraints().cloned().collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim && self.constraints().all(|c| c.satisfied_by(x))
    }

    pub fn feasible_point(&self) -> Option<Vector> {
        feasible_point(self.dim, &self.constraint_list())
    }

    pub fn is_empty(&self) -> bool {
        if let Some(g) = self.gens.get() {
            return g.is_empty();
        }
        self.feasible_point().is_none()
    }

    pub fn intersect(&self, other: &HPolyhedron) -> Result<HPolyhedron> {
        check_dim(self.dim, other.dim)?;
        let mut eqs = self.equalities.clone();
        eqs.extend(other.equalities.iter().cloned());
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.iter().cloned());
        Ok(Self::from_parts(self.dim, eqs, ineqs))
    }

    pub fn with_constraint(&self, c: LinConstraint) -> HPolyhedron {
        let mut out = self.clone();
        out.gens = OnceLock::new();
        match c.rel {
            Rel::Eq => out.equalities.push(c),
            _ => out.inequalities.push(c.with_rel(Rel::Le)),
        }
        out
    }

    pub fn maximize(&self, obj: &[Rational]) -> LpOutcome {
        maximize(self.dim, &self.constraint_list(), obj)
    }

    pub fn minimize(&self, obj: &[Rational]) -> LpOutcome {
        minimize(self.dim, &self.constraint_list(), obj)
    }

    /// Indices of inequalities that hold with equality on the whole polyhedron.
    pub fn implicit_equalities(&self) -> Result<Vec<usize>> {
        let n = self.dim;
        let mut undecided: Vec<usize> = (0..self.inequalities.len()).collect();
        let mut loose = vec![false; self.inequalities.len()];
        loop {
            if undecided.is_empty() {
                return if self.is_empty() { Err(Error::Empty) } else { Ok(vec![]) };
            }
            let k = undecided.len();
            let width = n + k;
            let pad = |c: &LinConstraint| {
                let mut v = c.coeffs.clone();
                v.resize(width, Rational::zero());
                LinConstraint::new(v, c.rel, c.rhs.clone())
            };
            let mut cons: Vec<LinConstraint> = self.equalities.iter().map(pad).collect();
            for (i, c) in self.inequalities.iter().enumerate() {
                if loose[i] {
                    cons.push(pad(c));
                }
            }
            for (s, &i) in undecided.iter().enumerate() {
                let mut row = pad(&self.inequalities[i]);
                row.coeffs[n + s] = Rational::one();
                cons.push(row);
                let mut lo = zeros(width);
                lo[n + s] = -Rational::one();
                cons.push(LinConstraint::le(lo.clone(), Rational::zero()));
                lo[n + s] = Rational::one();
                cons.push(LinConstraint::le(lo, Rational::one()));
            }
            let mut obj = zeros(width);
            for o in obj.iter_mut().skip(n) {
                *o = Rational::one();
            }
            let x = match maximize(width, &cons, &obj) {
                LpOutcome::Optimal { x, value } => {
                    if value.is_zero() {
                        return Ok(undecided);
                    }
                    x
                }
                LpOutcome::Infeasible => return Err(Error::Empty),
                LpOutcome::Unbounded => unreachable!("slacks are capped"),
            };
            let point = &x[..n];
            undecided.retain(|&i| {
                let slack = self.inequalities[i].slack_value(point);
                if slack.is_negative() {
                    loose[i] = true;
                    false
                } else {
                    true
                }
            });
        }
    }

    /// Canonical form: empty polyhedra collapse to [`HPolyhedron::empty`];
    /// otherwise equalities are in reduced echelon form (scaled to primitive
    /// integers), inequalities are reduced modulo the equalities, irredundant,
    /// primitive and sorted.
    pub fn normalized(&self) -> HPolyhedron {
        let n = self.dim;
        let implicit = match self.implicit_equalities() {
            Ok(i) => i,
            Err(_) => return Self::empty(n),
        };
        let mut eq_rows: Vec<Vector> = self
            .equalities
            .iter()
            .map(augmented)
            .collect();
        for &i in &implicit {
            eq_rows.push(augmented(&self.inequalities[i]));
        }
        let (r, pivots) = rref(&eq_rows, n + 1);
        debug_assert!(pivots.last().is_none_or(|&p| p < n));
        let mut ineqs: Vec<LinConstraint> = Vec::new();
        for (i, c) in self.inequalities.iter().enumerate() {
            if implicit.contains(&i) {
                continue;
            }
            let red = crate::linalg::reduce_by_rref(&r, &pivots, &augmented(c));
            let c = from_augmented(&red, Rel::Le);
            if c.is_constant() {
                continue;
            }
            let c = c.normalized();
            if !ineqs.contains(&c) {
                ineqs.push(c);
            }
        }
        ineqs.sort();
        let eqs: Vec<LinConstraint> = r
            .iter()
            .map(|row| from_augmented(row, Rel::Eq).normalized())
            .collect();
        // Drop redundant inequalities one at a time.
        let mut keep = vec![true; ineqs.len()];
        for i in 0..ineqs.len() {
            let mut cons = eqs.clone();
            cons.extend(
                ineqs
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i && keep[j])
                    .map(|(_, c)| c.clone()),
            );
            if let LpOutcome::Optimal { value, .. } = maximize(n, &cons, &ineqs[i].coeffs) {
                if value <= ineqs[i].rhs {
                    keep[i] = false;
                }
            }
        }
        let ineqs = ineqs
            .into_iter()
            .zip(keep)
            .filter_map(|(c, k)| k.then_some(c))
            .collect();
        let out = Self::from_parts(n, eqs, ineqs);
        if let Some(g) = self.gens.get() {
            let _ = out.gens.set(g.clone());
        }
        out
    }

    /// Equalities (stated and implicit) spanning the affine hull, in normal form.
    pub fn affine_hull(&self) -> Result<Vec<LinConstraint>> {
        if self.is_empty() {
            return Err(Error::Empty);
        }
        Ok(self.normalized().equalities)
    }

    /// Dimension of the affine hull; `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        let h = self.affine_hull().ok()?;
        Some(self.dim - h.len())
    }

    pub fn generators(&self) -> &Generators {
        self.gens.get_or_init(|| self.compute_generators())
    }

    fn compute_generators(&self) -> Generators {
        let n = self.dim;
        let eqs: Vec<Vector> = self
            .equalities
            .iter()
            .map(|c| {
                let mut v = c.coeffs.clone();
                v.push(-&c.rhs);
                v
            })
            .collect();
        let mut ineqs: Vec<Vector> = Vec::with_capacity(self.inequalities.len() + 1);
        let mut t_nonneg = zeros(n + 1);
        t_nonneg[n] = -Rational::one();
        ineqs.push(t_nonneg);
        for c in &self.inequalities {
            let mut v = c.coeffs.clone();
            v.push(-&c.rhs);
            ineqs.push(v);
        }
        let cone = cone_generators(n + 1, &eqs, &ineqs);
        let mut g = Generators::default();
        for r in cone.rays {
            let t = r[n].clone();
            if t.is_positive() {
                g.vertices.push(r[..n].iter().map(|x| x / &t).collect());
            } else {
                g.rays.push(primitive(&r[..n]));
            }
        }
        if g.vertices.is_empty() {
            return Generators::default();
        }
        g.lines = cone.lines.iter().map(|l| primitive_oriented(&l[..n])).collect();
        g.vertices.sort();
        g.rays.sort();
        g
    }

    /// Polyhedron generated by `g` (convex hull of vertices plus cone of rays and lines).
    pub fn from_generators(dim: usize, g: &Generators) -> Result<HPolyhedron> {
        for v in g.vertices.iter().chain(&g.rays).chain(&g.lines) {
            check_dim(dim, v.len())?;
        }
        if g.vertices.is_empty() {
            return Ok(Self::empty(dim));
        }
        let lift = |v: &Vector, t: i64| {
            let mut w = v.clone();
            w.push(Rational::from(t));
            w
        };
        let eqs: Vec<Vector> = g.lines.iter().map(|l| lift(l, 0)).collect();
        let mut ineqs: Vec<Vector> = g.vertices.iter().map(|v| lift(v, 1)).collect();
        ineqs.extend(g.rays.iter().map(|r| lift(r, 0)));
        let dual = cone_generators(dim + 1, &eqs, &ineqs);
        let mut out_eqs = Vec::new();
        for l in dual.lines {
            let a = l[..dim].to_vec();
            if !is_zero_vec(&a) {
                out_eqs.push(LinConstraint::eq(a, -&l[dim]).normalized());
            }
        }
        let mut out_ineqs = Vec::new();
        for r in dual.rays {
            let a = r[..dim].to_vec();
            if !is_zero_vec(&a) {
                out_ineqs.push(LinConstraint::le(a, -&r[dim]).normalized());
            }
        }
        let out = Self::from_parts(dim, out_eqs, out_ineqs);
        let _ = out.gens.set(g.clone());
        Ok(out)
    }

    /// Constraint-level set equality by mutual implication.
    pub fn set_equal(&self, other: &HPolyhedron) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    pub fn is_subset_of(&self, other: &HPolyhedron) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let cons = self.constraint_list();
        if feasible_point(self.dim, &cons).is_none() {
            return true;
        }
        for c in other.constraints() {
            match maximize(self.dim, &cons, &c.coeffs) {
                LpOutcome::Optimal { value, .. } if value <= c.rhs => {}
                _ => return false,
            }
            if c.rel == Rel::Eq {
                match minimize(self.dim, &cons, &c.coeffs) {
                    LpOutcome::Optimal { value, .. } if value >= c.rhs => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// `{v : A v <= 0, E v = 0}`.
    pub fn recession_cone(&self) -> Result<HPolyhedron> {
        if self.is_empty() {
            return Err(Error::Empty);
        }
        let homog = |c: &LinConstraint| LinConstraint::new(c.coeffs.clone(), c.rel, Rational::zero());
        Ok(Self::from_parts(
            self.dim,
            self.equalities.iter().map(homog).collect(),
            self.inequalities.iter().map(homog).collect(),
        ))
    }

    /// Basis of `{v : A v = 0, E v = 0}`.
    pub fn lineality_space(&self) -> Result<Vec<Vector>> {
        if self.is_empty() {
            return Err(Error::Empty);
        }
        let rows: Vec<Vector> = self.constraints().map(|c| c.coeffs.clone()).collect();
        Ok(nullspace(&rows, self.dim))
    }

    /// All nonempty faces, the polyhedron itself first, then by decreasing dimension.
    pub fn face_lattice(&self) -> Result<Vec<Face>> {
        let p = self.normalized();
        let n = self.dim;
        if p.is_empty() {
            return Err(Error::Empty);
        }
        let eqs = p.equalities.clone();
        let ineqs = p.inequalities.clone();
        let face_poly = |tight: &BTreeSet<usize>| {
            let mut e = eqs.clone();
            let mut rest = Vec::new();
            for (i, c) in ineqs.iter().enumerate() {
                if tight.contains(&i) {
                    e.push(c.with_rel(Rel::Eq));
                } else {
                    rest.push(c.clone());
                }
            }
            Self::from_parts(n, e, rest)
        };
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut faces = Vec::new();
        let mut queue = vec![BTreeSet::new()];
        seen.insert(vec![]);
        while let Some(tight) = queue.pop() {
            let poly = face_poly(&tight).normalized();
            let dim = n - poly.equalities.len();
            faces.push(Face {
                polyhedron: poly,
                dim,
                tight: tight.iter().copied().collect(),
            });
            for i in 0..ineqs.len() {
                if tight.contains(&i) {
                    continue;
                }
                let mut t2 = tight.clone();
                t2.insert(i);
                let cand = face_poly(&t2);
                let Ok(imp) = cand.implicit_equalities() else {
                    continue;
                };
                // Map implicit indices of the candidate back to the global list.
                let rest: Vec<usize> = (0..ineqs.len()).filter(|j| !t2.contains(j)).collect();
                let mut closed = t2;
                for k in imp {
                    closed.insert(rest[k]);
                }
                let key: Vec<usize> = closed.iter().copied().collect();
                if seen.insert(key) {
                    queue.push(closed);
                }
            }
        }
        faces.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.tight.cmp(&b.tight)));
        Ok(faces)
    }

    /// Tight set (indices into `self.inequalities`) of the minimal face containing `x`.
    pub fn tight_set(&self, x: &[Rational]) -> Vec<usize> {
        self.inequalities
            .iter()
            .enumerate()
            .filter(|(_, c)| c.slack_value(x).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Mean of the vertices plus the sum of the rays.
    pub fn relint_point(&self) -> Result<Vector> {
        let g = self.generators();
        if g.is_empty() {
            return Err(Error::Empty);
        }
        let k = Rational::from(g.vertices.len() as i64);
        let mut p = zeros(self.dim);
        for v in &g.vertices {
            p = add(&p, v);
        }
        p = scale(&p, &k.recip());
        for r in &g.rays {
            p = add(&p, r);
        }
        Ok(p)
    }

    /// Relative-interior point found by one LP (cheaper than generators).
    pub fn relint_sample(&self) -> Result<Vector> {
        let imp = self.implicit_equalities()?;
        let mut cons = self.equalities.clone();
        for (i, c) in self.inequalities.iter().enumerate() {
            cons.push(if imp.contains(&i) { c.with_rel(Rel::Eq) } else { c.with_rel(Rel::Lt) });
        }
        feasible_point(self.dim, &cons).ok_or(Error::Empty)
    }

    /// `{h + k}` for a cone `k`.
    pub fn minkowski_sum(&self, k: &HPolyhedron) -> Result<HPolyhedron> {
        check_dim(self.dim, k.dim)?;
        let origin = zeros(self.dim);
        let kn = k.normalized();
        if !kn.contains(&origin) || kn.constraints().any(|c| !c.rhs.is_zero()) {
            return Err(Error::InvalidArgument("second summand is not a cone".into()));
        }
        let g = self.generators();
        if g.is_empty() {
            return Ok(Self::empty(self.dim));
        }
        let kg = kn.generators();
        let mut out = g.clone();
        out.rays.extend(kg.rays.iter().cloned());
        out.lines.extend(kg.lines.iter().cloned());
        Self::from_generators(self.dim, &out)
    }

    /// Closed convex hull of a union of polyhedra.
    pub fn convex_hull_union(list: &[HPolyhedron]) -> Result<HPolyhedron> {
        let Some(first) = list.first() else {
            return Err(Error::InvalidArgument("convex hull of an empty family".into()));
        };
        let dim = first.dim;
        let mut g = Generators::default();
        for h in list {
            check_dim(dim, h.dim)?;
            let hg = h.generators();
            g.vertices.extend(hg.vertices.iter().cloned());
            g.rays.extend(hg.rays.iter().cloned());
            g.lines.extend(hg.lines.iter().cloned());
        }
        Self::from_generators(dim, &g)
    }

    /// Strict separation of `a` from the polyhedron via its lowest-index violated constraint.
    pub fn separate(&self, a: &[Rational]) -> Result<SeparationCertificate> {
        check_dim(self.dim, a.len())?;
        if self.is_empty() {
            return Err(Error::Empty);
        }
        for c in self.constraints() {
            let s = c.slack_value(a);
            if c.satisfied_by(a) {
                continue;
            }
            // Violated: either a . x > rhs, or (equality) a . x < rhs.
            let (normal, margin) = if s.is_positive() {
                (neg(&c.coeffs), s)
            } else {
                (c.coeffs.clone(), -s)
            };
            return Ok(SeparationCertificate { normal, margin, kind: SeparationKind::Strict });
        }
        Err(Error::InvalidArgument("point lies in the polyhedron".into()))
    }
}

fn augmented(c: &LinConstraint) -> Vector {
    let mut v = c.coeffs.clone();
    v.push(c.rhs.clone());
    v
}

fn from_augmented(row: &[Rational], rel: Rel) -> LinConstraint {
    let n = row.len() - 1;
    LinConstraint::new(row[..n].to_vec(), rel, row[n].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| qi(x)).collect()
    }

    fn le(c: &[i64], b: i64) -> LinConstraint {
        LinConstraint::le(v(c), qi(b))
    }

    fn unit_square() -> HPolyhedron {
        HPolyhedron::cuboid(&v(&[0, 0]), &v(&[1, 1]))
    }

    fn triangle() -> HPolyhedron {
        HPolyhedron::new(2, [le(&[-1, 0], 0), le(&[0, -1], 0), le(&[1, 1], 1)]).unwrap()
    }

    #[test]
    fn implicit_equalities_examples() {
        let h = HPolyhedron::new(1, [le(&[1], 0), le(&[-1], 0)]).unwrap();
        assert_eq!(h.implicit_equalities().unwrap(), vec![0, 1]);
        assert!(unit_square().implicit_equalities().unwrap().is_empty());
        let h = HPolyhedron::new(2, [le(&[1, 1], 1), le(&[-1, 0], -1), le(&[0, -1], 0)]).unwrap();
        assert_eq!(h.implicit_equalities().unwrap(), vec![0, 1, 2]);
        assert!(HPolyhedron::empty(2).implicit_equalities().is_err());
    }

    #[test]
    fn generator_examples() {
        let seg = HPolyhedron::cuboid(&v(&[0]), &v(&[1]));
        assert_eq!(seg.generators().vertices, vec![v(&[0]), v(&[1])]);
        let ray = HPolyhedron::new(1, [le(&[-1], 0)]).unwrap();
        let g = ray.generators();
        assert_eq!((g.vertices.clone(), g.rays.clone()), (vec![v(&[0])], vec![v(&[1])]));
        let stripe = HPolyhedron::new(2, [le(&[0, -1], 0), le(&[0, 1], 1)]).unwrap();
        let g = stripe.generators();
        assert_eq!(g.lines, vec![v(&[1, 0])]);
        assert_eq!(g.vertices.len(), 2);
        for p in &g.vertices {
            assert!(stripe.contains(p));
            assert_eq!(p[0], qi(0));
        }
    }

    #[test]
    fn relint_examples() {
        let seg = HPolyhedron::cuboid(&v(&[0]), &v(&[1]));
        assert_eq!(seg.relint_point().unwrap(), vec![q(1, 2)]);
        let diag = HPolyhedron::new(
            2,
            [LinConstraint::eq(v(&[1, -1]), qi(0)), le(&[-1, 0], 0), le(&[1, 0], 2)],
        )
        .unwrap();
        assert_eq!(diag.relint_point().unwrap(), v(&[1, 1]));
        assert_eq!(triangle().relint_point().unwrap(), vec![q(1, 3), q(1, 3)]);
    }

    #[test]
    fn lineality_examples() {
        let stripe = HPolyhedron::new(2, [le(&[0, -1], 0), le(&[0, 1], 1)]).unwrap();
        assert_eq!(stripe.lineality_space().unwrap(), vec![v(&[1, 0])]);
        let ray = HPolyhedron::new(1, [le(&[-1], 0)]).unwrap();
        assert!(ray.lineality_space().unwrap().is_empty());
        let plane = HPolyhedron::new(3, [LinConstraint::eq(v(&[1, -1, 0]), qi(0))]).unwrap();
        let basis = plane.lineality_space().unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(crate::linalg::rank(&[basis.clone(), vec![v(&[1, 1, 0]), v(&[0, 0, 1])]].concat(), 3), 2);
    }

    #[test]
    fn face_counts() {
        let seg = HPolyhedron::cuboid(&v(&[0]), &v(&[1]));
        assert_eq!(seg.face_lattice().unwrap().len(), 3);
        assert_eq!(unit_square().face_lattice().unwrap().len(), 9);
        let ray = HPolyhedron::new(1, [le(&[-1], 0)]).unwrap();
        assert_eq!(ray.face_lattice().unwrap().len(), 2);
    }

    #[test]
    fn hull_and_sum_examples() {
        let a = HPolyhedron::cuboid(&v(&[0]), &v(&[1]));
        let b = HPolyhedron::cuboid(&v(&[2]), &v(&[3]));
        let h = HPolyhedron::convex_hull_union(&[a, b]).unwrap();
        assert!(h.set_equal(&HPolyhedron::cuboid(&v(&[0]), &v(&[3]))));
        let pts = [v(&[0, 1]), v(&[1, 0]), v(&[0, 0])].map(|p| HPolyhedron::point(&p));
        assert!(HPolyhedron::convex_hull_union(&pts).unwrap().set_equal(&triangle()));
        let seg = HPolyhedron::new(
            2,
            [LinConstraint::eq(v(&[0, 1]), qi(0)), le(&[-1, 0], 0), le(&[1, 0], 1)],
        )
        .unwrap();
        let ray = HPolyhedron::new(2, [LinConstraint::eq(v(&[1, 0]), qi(0)), le(&[0, -1], 0)]).unwrap();
        let h = HPolyhedron::convex_hull_union(&[seg, ray]).unwrap();
        let want = HPolyhedron::new(2, [le(&[-1, 0], 0), le(&[0, -1], 0), le(&[1, 0], 1)]).unwrap();
        assert!(h.set_equal(&want));

        let vseg = HPolyhedron::new(2, [LinConstraint::eq(v(&[1, 0]), qi(0)), le(&[0, -1], 0), le(&[0, 1], 1)]).unwrap();
        let cone = HPolyhedron::new(2, [LinConstraint::eq(v(&[0, 1]), qi(0)), le(&[-1, 0], 0)]).unwrap();
        let s = vseg.minkowski_sum(&cone).unwrap();
        let want = HPolyhedron::new(2, [le(&[-1, 0], 0), le(&[0, -1], 0), le(&[0, 1], 1)]).unwrap();
        assert!(s.set_equal(&want));
        assert!(vseg.minkowski_sum(&HPolyhedron::cuboid(&v(&[0, 0]), &v(&[1, 1]))).is_err());
    }

    #[test]
    fn separation_examples() {
        let seg = HPolyhedron::new(1, [le(&[-1], 0), le(&[1], 1)]).unwrap();
        let c = seg.separate(&v(&[2])).unwrap();
        assert_eq!((c.normal.clone(), c.margin.clone()), (v(&[-1]), qi(1)));
        assert!(c.verify(&seg, &v(&[2])));
        let half = HPolyhedron::new(2, [LinConstraint::ge(v(&[0, 1]), qi(1))]).unwrap();
        let c = half.separate(&v(&[0, 0])).unwrap();
        assert_eq!((c.normal.clone(), c.margin.clone()), (v(&[0, 1]), qi(1)));
        assert!(c.verify(&half, &v(&[0, 0])));
        let c = triangle().separate(&v(&[1, 1])).unwrap();
        assert_eq!((c.normal.clone(), c.margin.clone()), (v(&[-1, -1]), qi(1)));
        assert!(seg.separate(&v(&[0])).is_err());
    }

    #[test]
    fn normalization_removes_redundancy() {
        let h = HPolyhedron::new(
            2,
            [le(&[1, 0], 1), le(&[2, 0], 3), le(&[-1, 0], 0), le(&[0, 1], 0), le(&[0, -1], 0)],
        )
        .unwrap()
        .normalized();
        assert_eq!(h.equalities().len(), 1);
        assert_eq!(h.inequalities().len(), 2);
    }
}
