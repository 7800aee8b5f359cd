//! Relatively open polyhedra `{x : E x = f, C x < d}`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::constraint::{LinConstraint, Rel};
use crate::linalg::{add, dot, reduce_by_rref, rref, scale, Vector};
use crate::lp::{feasible_point, maximize, LpOutcome};
use crate::polyhedron::HPolyhedron;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Bound {
    Unbounded,
    Open(Rational),
    Closed(Rational),
}

impl Bound {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Bound::Unbounded => None,
            Bound::Open(v) | Bound::Closed(v) => Some(v),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Bound::Closed(_))
    }
}

/// A nonempty interval of the real line with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn point(t: Rational) -> Self {
        Interval { lo: Bound::Closed(t.clone()), hi: Bound::Closed(t) }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let lo_ok = match &self.lo {
            Bound::Unbounded => true,
            Bound::Open(v) => t > v,
            Bound::Closed(v) => t >= v,
        };
        let hi_ok = match &self.hi {
            Bound::Unbounded => true,
            Bound::Open(v) => t < v,
            Bound::Closed(v) => t <= v,
        };
        lo_ok && hi_ok
    }

    /// Smallest interval containing both (the exact union when they overlap or touch).
    pub fn hull(&self, other: &Interval) -> Interval {
        let lo = match (&self.lo, &other.lo) {
            (Bound::Unbounded, _) | (_, Bound::Unbounded) => Bound::Unbounded,
            (a, b) => {
                let (va, vb) = (a.value().unwrap(), b.value().unwrap());
                match va.cmp(vb) {
                    Ordering::Less => a.clone(),
                    Ordering::Greater => b.clone(),
                    Ordering::Equal => if a.is_closed() { a.clone() } else { b.clone() },
                }
            }
        };
        let hi = match (&self.hi, &other.hi) {
            (Bound::Unbounded, _) | (_, Bound::Unbounded) => Bound::Unbounded,
            (a, b) => {
                let (va, vb) = (a.value().unwrap(), b.value().unwrap());
                match va.cmp(vb) {
                    Ordering::Greater => a.clone(),
                    Ordering::Less => b.clone(),
                    Ordering::Equal => if a.is_closed() { a.clone() } else { b.clone() },
                }
            }
        };
        Interval { lo, hi }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            Bound::Unbounded => write!(f, "(-inf")?,
            Bound::Open(v) => write!(f, "({v}")?,
            Bound::Closed(v) => write!(f, "[{v}")?,
        }
        match &self.hi {
            Bound::Unbounded => write!(f, ", inf)"),
            Bound::Open(v) => write!(f, ", {v})"),
            Bound::Closed(v) => write!(f, ", {v}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cell {
    dim: usize,
    equalities: Vec<LinConstraint>,
    stricts: Vec<LinConstraint>,
}

impl Cell {
    /// Trust the caller that the system is nonempty; no normalization.
    pub fn from_parts(dim: usize, equalities: Vec<LinConstraint>, stricts: Vec<LinConstraint>) -> Self {
        debug_assert!(equalities.iter().all(|c| c.rel == Rel::Eq));
        debug_assert!(stricts.iter().all(|c| c.rel == Rel::Lt));
        Cell { dim, equalities, stricts }
    }

    /// The whole space.
    pub fn universe(dim: usize) -> Self {
        Cell { dim, equalities: vec![], stricts: vec![] }
    }

    /// Normalized cell from `Eq`/`Lt` constraints, or `None` if the system is empty.
    pub fn from_constraints(dim: usize, cons: &[LinConstraint]) -> Option<Cell> {
        let eqs = cons.iter().filter(|c| c.rel == Rel::Eq).cloned().collect();
        let stricts = cons.iter().filter(|c| c.rel == Rel::Lt).cloned().collect();
        debug_assert!(cons.iter().all(|c| c.rel != Rel::Le));
        Cell { dim, equalities: eqs, stricts }.normalized()
    }

    /// Relative interior of a nonempty polyhedron.
    pub fn relint_of(h: &HPolyhedron) -> Option<Cell> {
        let imp = h.implicit_equalities().ok()?;
        let mut cons = h.equalities().to_vec();
        for (i, c) in h.inequalities().iter().enumerate() {
            cons.push(c.with_rel(if imp.contains(&i) { Rel::Eq } else { Rel::Lt }));
        }
        Self::from_constraints(h.dim(), &cons)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equalities(&self) -> &[LinConstraint] {
        &self.equalities
    }

    pub fn stricts(&self) -> &[LinConstraint] {
        &self.stricts
    }

    pub fn constraints(&self) -> impl Iterator<Item = &LinConstraint> {
        self.equalities.iter().chain(&self.stricts)
    }

    pub fn constraint_list(&self) -> Vec<LinConstraint> {
        self.constraints().cloned().collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.constraints().all(|c| c.satisfied_by(x))
    }

    pub fn closure(&self) -> HPolyhedron {
        HPolyhedron::from_parts(
            self.dim,
            self.equalities.clone(),
            self.stricts.iter().map(|c| c.with_rel(Rel::Le)).collect(),
        )
    }

    pub fn sample(&self) -> Option<Vector> {
        feasible_point(self.dim, &self.constraint_list())
    }

    pub fn is_empty(&self) -> bool {
        self.sample().is_none()
    }

    /// Dimension of the affine hull (equalities are independent after normalization).
    pub fn dimension(&self) -> usize {
        self.dim - self.equalities.len()
    }

    /// Conjunction with further `Eq`/`Lt` constraints, normalized; `None` if empty.
    pub fn meet(&self, extra: &[LinConstraint]) -> Option<Cell> {
        let mut cons = self.constraint_list();
        cons.extend(extra.iter().cloned());
        Self::from_constraints(self.dim, &cons)
    }

    pub fn intersect(&self, other: &Cell) -> Option<Cell> {
        self.meet(&other.constraint_list())
    }

    /// Equalities in reduced echelon form scaled to primitive integers; stricts
    /// reduced modulo equalities, primitive, irredundant and sorted.
    pub fn normalized(&self) -> Option<Cell> {
        let n = self.dim;
        let aug: Vec<Vector> = self
            .equalities
            .iter()
            .map(|c| {
                let mut v = c.coeffs.clone();
                v.push(c.rhs.clone());
                v
            })
            .collect();
        let (r, pivots) = rref(&aug, n + 1);
        if pivots.last() == Some(&n) {
            return None;
        }
        let eqs: Vec<LinConstraint> = r
            .iter()
            .map(|row| LinConstraint::eq(row[..n].to_vec(), row[n].clone()).normalized())
            .collect();
        let mut stricts: Vec<LinConstraint> = Vec::new();
        for c in &self.stricts {
            let mut v = c.coeffs.clone();
            v.push(c.rhs.clone());
            let red = reduce_by_rref(&r, &pivots, &v);
            let c = LinConstraint::lt(red[..n].to_vec(), red[n].clone());
            match c.constant_truth() {
                Some(true) => continue,
                Some(false) => return None,
                None => {}
            }
            let c = c.normalized();
            if !stricts.contains(&c) {
                stricts.push(c);
            }
        }
        stricts.sort();
        let mut cons = eqs.clone();
        cons.extend(stricts.iter().cloned());
        feasible_point(n, &cons)?;
        let mut keep = vec![true; stricts.len()];
        for i in 0..stricts.len() {
            let mut cl = eqs.clone();
            cl.extend(
                stricts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i && keep[j])
                    .map(|(_, c)| c.with_rel(Rel::Le)),
            );
            if let LpOutcome::Optimal { value, .. } = maximize(n, &cl, &stricts[i].coeffs) {
                if value <= stricts[i].rhs {
                    keep[i] = false;
                }
            }
        }
        let stricts = stricts.into_iter().zip(keep).filter_map(|(c, k)| k.then_some(c)).collect();
        Some(Cell { dim: n, equalities: eqs, stricts })
    }

    /// `{t : x0 + t w in cell}`, or `None` if the line misses the cell.
    pub fn line_interval(&self, x0: &[Rational], w: &[Rational]) -> Option<Interval> {
        let mut fixed: Option<Rational> = None;
        for c in &self.equalities {
            let alpha = dot(&c.coeffs, w);
            let beta = &c.rhs - dot(&c.coeffs, x0);
            if alpha.is_zero() {
                if !beta.is_zero() {
                    return None;
                }
            } else {
                let t = &beta / &alpha;
                match &fixed {
                    Some(f) if *f != t => return None,
                    _ => fixed = Some(t),
                }
            }
        }
        if let Some(t) = fixed {
            let p = add(x0, &scale(w, &t));
            return self.contains(&p).then(|| Interval::point(t));
        }
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for c in &self.stricts {
            let alpha = dot(&c.coeffs, w);
            let beta = &c.rhs - dot(&c.coeffs, x0);
            if alpha.is_zero() {
                if !beta.is_positive() {
                    return None;
                }
                continue;
            }
            let t = &beta / &alpha;
            if alpha.is_positive() {
                if hi.as_ref().is_none_or(|h| t < *h) {
                    hi = Some(t);
                }
            } else if lo.as_ref().is_none_or(|l| t > *l) {
                lo = Some(t);
            }
        }
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l >= h {
                return None;
            }
        }
        Some(Interval {
            lo: lo.map_or(Bound::Unbounded, Bound::Open),
            hi: hi.map_or(Bound::Unbounded, Bound::Open),
        })
    }

    /// Key used to order cells canonically.
    fn order_key(&self) -> (usize, &[LinConstraint], &[LinConstraint]) {
        (self.equalities.len(), &self.equalities, &self.stricts)
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.constraints().map(|c| c.to_string()).collect();
        if parts.is_empty() {
            write!(f, "{{R^{}}}", self.dim)
        } else {
            write!(f, "{{{}}}", parts.join(", "))
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

    #[test]
    fn normalization_drops_redundant_and_detects_empty() {
        let c = Cell::from_constraints(
            2,
            &[
                LinConstraint::lt(v(&[1, 0]), qi(1)),
                LinConstraint::lt(v(&[2, 0]), qi(5)),
                LinConstraint::gt(v(&[1, 0]), qi(0)),
                LinConstraint::eq(v(&[0, 2]), qi(1)),
            ],
        )
        .unwrap();
        assert_eq!(c.stricts().len(), 2);
        assert_eq!(c.equalities().len(), 1);
        assert!(c.contains(&[q(1, 2), q(1, 2)]));
        assert!(Cell::from_constraints(1, &[LinConstraint::lt(v(&[1]), qi(0)), LinConstraint::gt(v(&[1]), qi(0))]).is_none());
    }

    #[test]
    fn line_intervals() {
        let c = Cell::from_constraints(2, &[LinConstraint::gt(v(&[0, 1]), qi(0)), LinConstraint::lt(v(&[0, 1]), qi(1))]).unwrap();
        let i = c.line_interval(&v(&[0, 0]), &v(&[1, 1])).unwrap();
        assert_eq!(i, Interval { lo: Bound::Open(qi(0)), hi: Bound::Open(qi(1)) });
        assert!(c.line_interval(&v(&[0, 0]), &v(&[1, 0])).is_none());
        let p = Cell::from_constraints(2, &[LinConstraint::eq(v(&[1, 0]), qi(0)), LinConstraint::eq(v(&[0, 1]), qi(0))]).unwrap();
        assert_eq!(p.line_interval(&v(&[-1, -1]), &v(&[1, 1])), Some(Interval::point(qi(1))));
    }

    #[test]
    fn interval_hull_prefers_closed_ends() {
        let a = Interval { lo: Bound::Open(qi(0)), hi: Bound::Open(qi(1)) };
        let b = Interval::point(qi(0));
        let h = a.hull(&b);
        assert_eq!(h.lo, Bound::Closed(qi(0)));
        assert!(h.contains(&qi(0)) && !h.contains(&qi(1)));
    }
}
