//! Convex semilinear sets as a partition of their closed hull into cells.
//!
//! Canonicalization refines the face decomposition of the hull `P` by every
//! hyperplane occurring in the input pieces, flags each region by one sample,
//! then merges every face of `P` whose regions agree into the single cell
//! `relint F`. When the set is convex the top cell is therefore `relint P`.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::cell::{Cell, Interval};
use crate::constraint::{LinConstraint, Rel};
use crate::error::{check_dim, Error, NotConvexWitness, Result};
use crate::linalg::{add, in_span, nullspace, scale, sub, zeros, Vector};
use crate::lp::feasible_point;
use crate::polyhedron::HPolyhedron;
use crate::rational::Rational;

static MAX_HYPERPLANES: AtomicUsize = AtomicUsize::new(24);

pub const TRUSTED_CAP_FACTOR: usize = 4;

/// Upper bound on the number of hyperplanes an arrangement may use.
pub fn max_hyperplanes() -> usize {
    MAX_HYPERPLANES.load(Ordering::Relaxed)
}

pub fn set_max_hyperplanes(cap: usize) {
    MAX_HYPERPLANES.store(cap, Ordering::Relaxed);
}

/// Raw input: the union of finitely many conjunctions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceList {
    pub dim: usize,
    pub pieces: Vec<Vec<LinConstraint>>,
}

impl PieceList {
    pub fn new(dim: usize, pieces: Vec<Vec<LinConstraint>>) -> Self {
        PieceList { dim, pieces }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.pieces.iter().any(|p| p.iter().all(|c| c.satisfied_by(x)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSet {
    dim: usize,
    top: HPolyhedron,
    cells: Vec<Cell>,
    included: Vec<bool>,
    samples: Vec<Vector>,
    /// Tight facets of `top` on each cell, i.e. the face of `top` holding it.
    faces: Vec<Vec<usize>>,
}

#[derive(Clone)]
struct Region {
    cons: Vec<LinConstraint>,
    eq_rows: Vec<Vector>,
    sample: Vector,
    face: usize,
}

struct FaceCell {
    cell: Cell,
    sample: Vector,
    tight: Vec<usize>,
}

/// `(coeffs, rhs)` as one row, for span tests on hyperplanes.
fn augmented(c: &LinConstraint) -> Vector {
    let mut row = c.coeffs.clone();
    row.push(c.rhs.clone());
    row
}

fn face_cells(top: &HPolyhedron) -> Result<Vec<FaceCell>> {
    let mut out = Vec::new();
    for f in top.face_lattice()? {
        let p = &f.polyhedron;
        let cell = Cell::from_parts(
            top.dim(),
            p.equalities().to_vec(),
            p.inequalities().iter().map(|c| c.with_rel(Rel::Lt)).collect(),
        );
        let sample = cell.sample().ok_or(Error::Empty)?;
        out.push(FaceCell { cell, sample, tight: f.tight });
    }
    Ok(out)
}

fn split_region(r: Region, h: &LinConstraint) -> Vec<Region> {
    if in_span(&r.eq_rows, &h.coeffs) {
        return vec![r];
    }
    let n = r.sample.len();
    let lt = h.with_rel(Rel::Lt);
    let gt = h.negated_coeffs(Rel::Lt);
    let v = h.slack_value(&r.sample);
    let with = |c: &LinConstraint, sample: Vector| {
        let mut cons = r.cons.clone();
        cons.push(c.clone());
        let mut eq_rows = r.eq_rows.clone();
        if c.rel == Rel::Eq {
            eq_rows.push(c.coeffs.clone());
        }
        Region { cons, eq_rows, sample, face: r.face }
    };
    if v.is_zero() {
        let d = nullspace(&r.eq_rows, n)
            .into_iter()
            .find(|d| !crate::linalg::dot(&h.coeffs, d).is_zero())
            .expect("hyperplane is not constant on the region");
        let cell = Cell::from_parts(
            n,
            r.cons.iter().filter(|c| c.rel == Rel::Eq).cloned().collect(),
            r.cons.iter().filter(|c| c.rel == Rel::Lt).cloned().collect(),
        );
        let iv = cell.line_interval(&r.sample, &d).expect("sample lies in its region");
        let half = Rational::new(1, 2);
        let t1 = iv.lo.value().map_or(-Rational::one(), |l| l * &half);
        let t2 = iv.hi.value().map_or(Rational::one(), |u| u * &half);
        let p1 = add(&r.sample, &scale(&d, &t1));
        let p2 = add(&r.sample, &scale(&d, &t2));
        let (neg_pt, pos_pt) = if h.slack_value(&p1).is_negative() { (p1, p2) } else { (p2, p1) };
        return vec![with(&lt, neg_pt), with(h, r.sample.clone()), with(&gt, pos_pt)];
    }
    let (other_side, same_side) = if v.is_positive() { (&lt, &gt) } else { (&gt, &lt) };
    let mut probe = r.cons.clone();
    probe.push(other_side.clone());
    let Some(q) = feasible_point(n, &probe) else {
        return vec![r];
    };
    let vq = h.slack_value(&q);
    let t = &v / &(&v - &vq);
    let m = add(&r.sample, &scale(&sub(&q, &r.sample), &t));
    vec![with(other_side, q), with(h, m), with(same_side, r.sample.clone())]
}

/// Rows of the system `a . (sum of blocks) rel b * (k0 + k1 * z[s])` over a lifted variable vector.
pub(crate) struct Lifted {
    pub width: usize,
    pub cons: Vec<LinConstraint>,
}

impl Lifted {
    pub fn new(width: usize) -> Self {
        Lifted { width, cons: Vec::new() }
    }

    pub fn push(
        &mut self,
        c: &LinConstraint,
        blocks: &[usize],
        scale_var: Option<(usize, Rational, Rational)>,
    ) {
        let mut a = zeros(self.width);
        for &off in blocks {
            for (j, v) in c.coeffs.iter().enumerate() {
                if !v.is_zero() {
                    a[off + j] += v;
                }
            }
        }
        let rhs = match &scale_var {
            None => c.rhs.clone(),
            Some((s, k0, k1)) => {
                a[*s] -= &c.rhs * k1;
                &c.rhs * k0
            }
        };
        self.cons.push(LinConstraint::new(a, c.rel, rhs));
    }

    pub fn push_cell(&mut self, cell: &Cell, blocks: &[usize], scale_var: Option<(usize, Rational, Rational)>) {
        for c in cell.constraints() {
            self.push(c, blocks, scale_var.clone());
        }
    }

    pub fn push_raw(&mut self, a: Vector, rel: Rel, rhs: Rational) {
        self.cons.push(LinConstraint::new(a, rel, rhs));
    }

    pub fn solve(&self) -> Option<Vector> {
        feasible_point(self.width, &self.cons)
    }
}

/// `(x1, x2, m)` with `x1 in c1`, `x2 in c2`, `m` strictly between them and in `e`.
fn mixing_witness(n: usize, c1: &Cell, c2: &Cell, e: &Cell) -> Option<NotConvexWitness> {
    let l = 2 * n;
    let mut sys = Lifted::new(2 * n + 1);
    let one = Rational::one();
    let zero = Rational::zero();
    sys.push_cell(c1, &[0], Some((l, zero.clone(), one.clone())));
    sys.push_cell(c2, &[n], Some((l, one.clone(), -one.clone())));
    sys.push_cell(e, &[0, n], None);
    let mut lam = zeros(2 * n + 1);
    lam[l] = one.clone();
    sys.push_raw(lam.clone(), Rel::Lt, one.clone());
    sys.push_raw(crate::linalg::neg(&lam), Rel::Lt, zero);
    let z = sys.solve()?;
    let lambda = z[l].clone();
    let y1 = &z[..n];
    let y2 = &z[n..l];
    Some(NotConvexWitness {
        x: scale(y1, &lambda.recip()),
        y: scale(y2, &(&one - &lambda).recip()),
        m: add(y1, y2),
    })
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct BuildOptions {
    /// Skip the convexity check (inputs known to denote a convex set).
    pub trusted: bool,
    pub cap: usize,
}

impl CellSet {
    pub fn empty(dim: usize) -> Self {
        CellSet {
            dim,
            top: HPolyhedron::empty(dim),
            cells: vec![],
            included: vec![],
            samples: vec![],
            faces: vec![],
        }
    }

    pub fn universe(dim: usize) -> Self {
        Self::from_polyhedron(&HPolyhedron::universe(dim)).expect("nonempty")
    }

    /// The closed set `h`.
    pub fn from_polyhedron(h: &HPolyhedron) -> Result<Self> {
        let top = h.normalized();
        if top.is_empty() {
            return Ok(Self::empty(h.dim()));
        }
        let fcs = face_cells(&top)?;
        let mut out = CellSet {
            dim: h.dim(),
            top,
            cells: vec![],
            included: vec![],
            samples: vec![],
            faces: vec![],
        };
        for fc in fcs {
            out.cells.push(fc.cell);
            out.included.push(true);
            out.samples.push(fc.sample);
            out.faces.push(fc.tight);
        }
        out.sort_cells();
        Ok(out)
    }

    /// Canonical form of a piece list; fails with a witness when the union is not convex.
    pub fn canonicalize(input: &PieceList) -> Result<Self> {
        Self::canonicalize_with_cap(input, max_hyperplanes())
    }

    pub fn canonicalize_with_cap(input: &PieceList, cap: usize) -> Result<Self> {
        Self::build(input.dim, input.pieces.clone(), BuildOptions { trusted: false, cap })
    }

    /// Canonical form of a union already known to be convex. Operation outputs get
    /// `TRUSTED_CAP_FACTOR` times the hyperplane budget of user input.
    pub fn from_convex_pieces(dim: usize, pieces: Vec<Vec<LinConstraint>>) -> Result<Self> {
        let cap = max_hyperplanes().saturating_mul(TRUSTED_CAP_FACTOR);
        Self::build(dim, pieces, BuildOptions { trusted: true, cap })
    }

    pub(crate) fn build(dim: usize, pieces: Vec<Vec<LinConstraint>>, opts: BuildOptions) -> Result<Self> {
        for p in &pieces {
            for c in p {
                check_dim(dim, c.dim())?;
            }
        }
        let pieces: Vec<Vec<LinConstraint>> = pieces
            .into_iter()
            .filter(|p| feasible_point(dim, p).is_some())
            .collect();
        if pieces.is_empty() {
            return Ok(Self::empty(dim));
        }
        let closures: Vec<HPolyhedron> = pieces
            .iter()
            .map(|p| HPolyhedron::from_parts(
                dim,
                p.iter().filter(|c| c.rel == Rel::Eq).cloned().collect(),
                p.iter().filter(|c| c.rel != Rel::Eq).map(|c| c.with_rel(Rel::Le)).collect(),
            ))
            .collect();
        let top = HPolyhedron::convex_hull_union(&closures)?.normalized();
        let facet_planes: BTreeSet<LinConstraint> =
            top.inequalities().iter().filter_map(|c| c.hyperplane()).collect();
        let mut planes: BTreeSet<LinConstraint> = BTreeSet::new();
        for (p, cl) in pieces.iter().zip(&closures) {
            // A relatively open piece lies in the relative interior of one face of the hull;
            // planes containing that face's affine hull never split it.
            let face_aff = if p.iter().all(|c| c.rel != Rel::Le) {
                let x = cl.relint_point()?;
                let tight = top.tight_set(&x);
                let mut eqs = top.equalities().to_vec();
                eqs.extend(tight.iter().map(|&i| top.inequalities()[i].with_rel(Rel::Eq)));
                let face = HPolyhedron::from_parts(dim, eqs, top.inequalities().to_vec());
                let rows: Vec<Vector> = face.affine_hull()?.iter().map(augmented).collect();
                Some(rows)
            } else {
                None
            };
            for c in p {
                if let Some(h) = c.hyperplane() {
                    let constant = face_aff.as_ref().is_some_and(|rows| in_span(rows, &augmented(&h)));
                    if !constant && !facet_planes.contains(&h) {
                        planes.insert(h);
                    }
                }
            }
        }
        let needed = planes.len() + facet_planes.len();
        if needed > opts.cap {
            return Err(Error::ResourceCap { needed, cap: opts.cap });
        }
        let fcs = face_cells(&top)?;
        let mut regions: Vec<Region> = fcs
            .iter()
            .enumerate()
            .map(|(i, fc)| Region {
                cons: fc.cell.constraint_list(),
                eq_rows: fc.cell.equalities().iter().map(|c| c.coeffs.clone()).collect(),
                sample: fc.sample.clone(),
                face: i,
            })
            .collect();
        for h in &planes {
            regions = regions.into_iter().flat_map(|r| split_region(r, h)).collect();
        }
        let piece_list = PieceList::new(dim, pieces);
        let flags: Vec<bool> = regions.iter().map(|r| piece_list.contains(&r.sample)).collect();

        let mut out = CellSet {
            dim,
            top: top.clone(),
            cells: vec![],
            included: vec![],
            samples: vec![],
            faces: vec![],
        };
        for (fi, fc) in fcs.iter().enumerate() {
            let members: Vec<usize> = (0..regions.len()).filter(|&i| regions[i].face == fi).collect();
            let first = flags[members[0]];
            if members.iter().all(|&i| flags[i] == first) {
                out.cells.push(fc.cell.clone());
                out.included.push(first);
                out.samples.push(fc.sample.clone());
                out.faces.push(fc.tight.clone());
            } else {
                for &i in &members {
                    let cell = Cell::from_constraints(dim, &regions[i].cons)
                        .expect("regions are nonempty");
                    out.cells.push(cell);
                    out.included.push(flags[i]);
                    out.samples.push(regions[i].sample.clone());
                    out.faces.push(fc.tight.clone());
                }
            }
        }
        out.sort_cells();
        if !opts.trusted {
            if let Some(w) = out.convexity_violation() {
                return Err(Error::NotConvex(Box::new(w)));
            }
        }
        Ok(out)
    }

    fn sort_cells(&mut self) {
        let mut idx: Vec<usize> = (0..self.cells.len()).collect();
        idx.sort_by(|&a, &b| self.cells[a].cmp(&self.cells[b]));
        fn take<T: Clone>(idx: &[usize], v: &[T]) -> Vec<T> {
            idx.iter().map(|&i| v[i].clone()).collect()
        }
        self.cells = take(&idx, &self.cells);
        self.included = take(&idx, &self.included);
        self.samples = take(&idx, &self.samples);
        self.faces = take(&idx, &self.faces);
    }

    /// Index of the cell `relint P`, when the top face was not subdivided.
    pub fn top_cell(&self) -> Option<usize> {
        let with_empty_face: Vec<usize> =
            (0..self.cells.len()).filter(|&i| self.faces[i].is_empty()).collect();
        (with_empty_face.len() == 1).then(|| with_empty_face[0])
    }

    fn convexity_violation(&self) -> Option<NotConvexWitness> {
        let n = self.dim;
        let top = self.top_cell().filter(|&t| self.included[t]);
        let inc: Vec<usize> = (0..self.cells.len()).filter(|&i| self.included[i]).collect();
        let exc: Vec<usize> = (0..self.cells.len()).filter(|&i| !self.included[i]).collect();
        if exc.is_empty() {
            return None;
        }
        for (a, &i) in inc.iter().enumerate() {
            for &j in &inc[a + 1..] {
                if Some(i) == top || Some(j) == top {
                    continue;
                }
                let common: BTreeSet<usize> = self.faces[i]
                    .iter()
                    .filter(|f| self.faces[j].contains(f))
                    .copied()
                    .collect();
                for &e in &exc {
                    if !common.iter().all(|f| self.faces[e].contains(f)) {
                        continue;
                    }
                    if let Some(w) = mixing_witness(n, &self.cells[i], &self.cells[j], &self.cells[e]) {
                        return Some(w);
                    }
                }
            }
        }
        None
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// The closure of the set, `P`.
    pub fn top(&self) -> &HPolyhedron {
        &self.top
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn included(&self) -> &[bool] {
        &self.included
    }

    pub fn is_included(&self, i: usize) -> bool {
        self.included[i]
    }

    /// A relative-interior point of each cell.
    pub fn samples(&self) -> &[Vector] {
        &self.samples
    }

    pub fn face_of(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    pub fn included_indices(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.included[i]).collect()
    }

    pub fn excluded_indices(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| !self.included[i]).collect()
    }

    pub fn included_cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().zip(&self.included).filter(|(_, &b)| b).map(|(c, _)| c)
    }

    /// Included cells as pieces.
    pub fn to_pieces(&self) -> PieceList {
        PieceList::new(self.dim, self.included_cells().map(|c| c.constraint_list()).collect())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        if x.len() != self.dim || !self.top.contains(x) {
            return false;
        }
        self.cells
            .iter()
            .position(|c| c.contains(x))
            .is_some_and(|i| self.included[i])
    }

    pub fn membership(&self, x: &[Rational]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        Ok(self.contains(x))
    }

    pub fn is_closed(&self) -> bool {
        self.included.iter().all(|&b| b)
    }

    pub fn closure(&self) -> CellSet {
        if self.is_empty() {
            return self.clone();
        }
        Self::from_polyhedron(&self.top).expect("nonempty top")
    }

    /// Whether every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &CellSet) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        if self.is_empty() {
            return Ok(true);
        }
        if other.is_empty() {
            return Ok(false);
        }
        let exc: Vec<&Cell> = other.excluded_indices().into_iter().map(|i| &other.cells[i]).collect();
        for c in self.included_cells() {
            if !c.closure().is_subset_of(&other.top) {
                return Ok(false);
            }
            if exc.iter().any(|e| c.intersect(e).is_some()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn set_equal(&self, other: &CellSet) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        if self == other {
            return Ok(true);
        }
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// `{t : x0 + t w in S}`, an interval by convexity, or `None` if empty.
    pub fn line_membership(&self, x0: &[Rational], w: &[Rational]) -> Option<Interval> {
        let mut acc: Option<Interval> = None;
        for c in self.included_cells() {
            if let Some(iv) = c.line_interval(x0, w) {
                acc = Some(match acc {
                    None => iv,
                    Some(a) => a.hull(&iv),
                });
            }
        }
        acc
    }

    /// Cell samples plus grid points with denominator `density` inside a window
    /// covering `[-2, 2]^n` and the bounding box of the hull's vertices.
    pub fn sample_points(&self, density: u32) -> Result<Vec<Vector>> {
        if self.is_empty() {
            return Err(Error::Empty);
        }
        if density == 0 {
            return Err(Error::InvalidArgument("density must be positive".into()));
        }
        let n = self.dim;
        let mut lo = vec![Rational::from_int(-2); n];
        let mut hi = vec![Rational::from_int(2); n];
        for v in &self.top.generators().vertices {
            for i in 0..n {
                if v[i] < lo[i] {
                    lo[i] = Rational::from(v[i].floor());
                }
                if v[i] > hi[i] {
                    hi[i] = -Rational::from((-&v[i]).floor());
                }
            }
        }
        let d = Rational::from_int(density as i64);
        let steps: Vec<i64> = (0..n)
            .map(|i| ((&hi[i] - &lo[i]) * &d).floor().try_into().unwrap_or(i64::MAX))
            .collect();
        let total: u128 = steps.iter().map(|&s| s as u128 + 1).product();
        if total > 2_000_000 {
            return Err(Error::ResourceCap { needed: total as usize, cap: 2_000_000 });
        }
        let mut out: Vec<Vector> = self.included_indices().iter().map(|&i| self.samples[i].clone()).collect();
        let mut idx = vec![0i64; n];
        loop {
            let p: Vector = (0..n).map(|i| &lo[i] + &Rational::new(idx[i], density as i64)).collect();
            if self.contains(&p) && !out.contains(&p) {
                out.push(p);
            }
            let mut k = 0;
            loop {
                if k == n {
                    return Ok(out);
                }
                idx[k] += 1;
                if idx[k] <= steps[k] {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| qi(x)).collect()
    }

    fn c(coeffs: &[i64], rel: Rel, rhs: i64) -> LinConstraint {
        LinConstraint::new(v(coeffs), rel, qi(rhs))
    }

    fn pointed_rectangle() -> CellSet {
        let pieces = vec![
            vec![
                c(&[-1, 0], Rel::Lt, 1),
                c(&[1, 0], Rel::Lt, 1),
                c(&[0, -1], Rel::Lt, 0),
                c(&[0, 1], Rel::Lt, 1),
            ],
            vec![c(&[1, 0], Rel::Eq, 0), c(&[0, 1], Rel::Eq, 0)],
        ];
        CellSet::canonicalize(&PieceList::new(2, pieces)).unwrap()
    }

    #[test]
    fn pointed_rectangle_cells() {
        let s = pointed_rectangle();
        assert_eq!(s.included_indices().len(), 2);
        assert!(s.top().set_equal(&HPolyhedron::cuboid(&v(&[-1, 0]), &v(&[1, 1]))));
        assert!(s.contains(&v(&[0, 0])));
        assert!(!s.contains(&[q(1, 2), qi(0)]));
        assert!(s.contains(&[q(1, 2), q(1, 2)]));
        assert!(!s.contains(&v(&[3, 0])));
        let t = s.top_cell().unwrap();
        assert!(s.is_included(t));
    }

    #[test]
    fn union_covering_the_line() {
        let s = CellSet::canonicalize(&PieceList::new(
            1,
            vec![vec![c(&[-1], Rel::Le, 0)], vec![c(&[1], Rel::Lt, 0)]],
        ))
        .unwrap();
        assert_eq!(s.cells().len(), 1);
        assert!(s.is_closed());
    }

    #[test]
    fn gap_is_not_convex() {
        let r = CellSet::canonicalize(&PieceList::new(
            1,
            vec![
                vec![c(&[-1], Rel::Le, 0), c(&[1], Rel::Le, 1)],
                vec![c(&[-1], Rel::Le, -2), c(&[1], Rel::Le, 3)],
            ],
        ));
        match r {
            Err(Error::NotConvex(w)) => {
                let union = |x: &Rational| (*x >= qi(0) && *x <= qi(1)) || (*x >= qi(2) && *x <= qi(3));
                assert!(union(&w.x[0]) && union(&w.y[0]) && !union(&w.m[0]));
                let (lo, hi) = if w.x[0] < w.y[0] { (&w.x[0], &w.y[0]) } else { (&w.y[0], &w.x[0]) };
                assert!(*lo < w.m[0] && w.m[0] < *hi);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equality_and_subset() {
        let open = CellSet::canonicalize(&PieceList::new(1, vec![vec![c(&[-1], Rel::Lt, 0), c(&[1], Rel::Lt, 1)]])).unwrap();
        let closed = open.closure();
        let half = CellSet::canonicalize(&PieceList::new(1, vec![vec![c(&[-1], Rel::Le, 0), c(&[1], Rel::Lt, 1)]])).unwrap();
        assert!(open.is_subset_of(&closed).unwrap());
        assert!(!closed.is_subset_of(&open).unwrap());
        assert!(!closed.set_equal(&half).unwrap());
        assert!(closed.set_equal(&half.closure()).unwrap());
        let pr = pointed_rectangle();
        assert!(pr.is_subset_of(&pr.closure()).unwrap());
        assert!(!pr.set_equal(&pr.closure()).unwrap());
    }

    #[test]
    fn samples_of_unit_interval() {
        let s = CellSet::from_polyhedron(&HPolyhedron::cuboid(&v(&[0]), &v(&[1]))).unwrap();
        let pts = s.sample_points(4).unwrap();
        for k in 0..=4 {
            assert!(pts.contains(&vec![q(k, 4)]));
        }
        assert!(pts.iter().all(|p| s.contains(p)));
        assert!(CellSet::empty(1).sample_points(4).is_err());
        assert!(pointed_rectangle().sample_points(3).unwrap().contains(&v(&[0, 0])));
    }

    #[test]
    fn line_membership_closes_at_isolated_point() {
        let pr = pointed_rectangle();
        let iv = pr.line_membership(&v(&[0, 0]), &v(&[0, 1])).unwrap();
        assert_eq!(iv.lo, crate::cell::Bound::Closed(qi(0)));
        assert_eq!(iv.hi, crate::cell::Bound::Open(qi(1)));
    }
}
