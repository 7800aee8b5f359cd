//! Affine images of polyhedra by elimination on the graph of the map.
//!
//! Equalities are used first to substitute variables away (Gaussian
//! elimination); remaining variables go through Fourier–Motzkin, with LP-based
//! redundancy removal after every step.

use crate::affine::AffineMap;
use crate::constraint::{LinConstraint, Rel};
use crate::error::{check_dim, Result};
use crate::linalg::{add_scaled, scale, Vector};
use crate::lp::{maximize, LpOutcome};
use crate::polyhedron::{Generators, HPolyhedron};
use crate::rational::Rational;

/// Row `coeffs . z <= / = rhs` over the graph variables `z = (x, y)`.
#[derive(Clone)]
struct Row {
    a: Vector,
    b: Rational,
}

fn combine(p: &Row, sp: &Rational, q: &Row, sq: &Rational) -> Row {
    // sp * p + sq * q
    let a = add_scaled(&scale(&p.a, sp), sq, &q.a);
    Row { a, b: sp * &p.b + sq * &q.b }
}

fn remove_redundant(width: usize, eqs: &[Row], ineqs: Vec<Row>) -> Vec<Row> {
    let to_c = |r: &Row, rel| LinConstraint::new(r.a.clone(), rel, r.b.clone());
    let mut rows: Vec<Row> = Vec::new();
    for r in ineqs {
        let c = to_c(&r, Rel::Le);
        if let Some(t) = c.constant_truth() {
            if t {
                continue;
            }
        }
        let n = c.normalized();
        let r = Row { a: n.coeffs, b: n.rhs };
        if !rows.iter().any(|o| o.a == r.a && o.b == r.b) {
            rows.push(r);
        }
    }
    let mut keep = vec![true; rows.len()];
    for i in 0..rows.len() {
        if rows[i].a.iter().all(Rational::is_zero) {
            continue;
        }
        let mut cons: Vec<LinConstraint> = eqs.iter().map(|r| to_c(r, Rel::Eq)).collect();
        for (j, r) in rows.iter().enumerate() {
            if j != i && keep[j] {
                cons.push(to_c(r, Rel::Le));
            }
        }
        match maximize(width, &cons, &rows[i].a) {
            LpOutcome::Optimal { value, .. } if value <= rows[i].b => keep[i] = false,
            LpOutcome::Infeasible => return vec![Row { a: rows[0].a.iter().map(|_| Rational::zero()).collect(), b: -Rational::one() }],
            _ => {}
        }
    }
    rows.into_iter().zip(keep).filter_map(|(r, k)| k.then_some(r)).collect()
}

/// `f(H)` as a closed polyhedron in the codomain of `f`.
pub fn project(h: &HPolyhedron, f: &AffineMap) -> Result<HPolyhedron> {
    check_dim(h.dim(), f.input_dim())?;
    let n = h.dim();
    let m = f.output_dim();
    if h.is_empty() {
        return Ok(HPolyhedron::empty(m));
    }
    let width = n + m;
    let lift_x = |c: &LinConstraint| {
        let mut a = c.coeffs.clone();
        a.resize(width, Rational::zero());
        Row { a, b: c.rhs.clone() }
    };
    let mut eqs: Vec<Row> = h.equalities().iter().map(lift_x).collect();
    let mut ineqs: Vec<Row> = h.inequalities().iter().map(lift_x).collect();
    // y_i - M_i x = offset_i
    for (i, (row, o)) in f.matrix.iter().zip(&f.offset).enumerate() {
        let mut a: Vector = row.iter().map(|v| -v).collect();
        a.resize(width, Rational::zero());
        a[n + i] = Rational::one();
        eqs.push(Row { a, b: o.clone() });
    }
    let mut remaining: Vec<usize> = (0..n).collect();
    // Gaussian elimination of x variables through equalities.
    loop {
        let pick = eqs.iter().enumerate().find_map(|(ei, r)| {
            remaining.iter().position(|&j| !r.a[j].is_zero()).map(|pos| (ei, pos))
        });
        let Some((ei, pos)) = pick else { break };
        let j = remaining.remove(pos);
        let pivot = eqs.remove(ei);
        let pj = pivot.a[j].clone();
        let sub = |r: &Row| {
            if r.a[j].is_zero() {
                r.clone()
            } else {
                combine(r, &Rational::one(), &pivot, &-(&r.a[j] / &pj))
            }
        };
        eqs = eqs.iter().map(sub).collect();
        ineqs = ineqs.iter().map(sub).collect();
    }
    // Fourier-Motzkin on the rest, cheapest variable first.
    ineqs = remove_redundant(width, &eqs, ineqs);
    while !remaining.is_empty() {
        let (pos, _) = remaining
            .iter()
            .enumerate()
            .map(|(pos, &j)| {
                let p = ineqs.iter().filter(|r| r.a[j].is_positive()).count();
                let q = ineqs.iter().filter(|r| r.a[j].is_negative()).count();
                (pos, p * q)
            })
            .min_by_key(|&(pos, cost)| (cost, pos))
            .expect("nonempty");
        let j = remaining.remove(pos);
        let mut next = Vec::new();
        let (mut plus, mut minus) = (Vec::new(), Vec::new());
        for r in ineqs {
            if r.a[j].is_positive() {
                plus.push(r);
            } else if r.a[j].is_negative() {
                minus.push(r);
            } else {
                next.push(r);
            }
        }
        for p in &plus {
            for q in &minus {
                let c = combine(p, &-&q.a[j], q, &p.a[j]);
                next.push(c);
            }
        }
        ineqs = remove_redundant(width, &eqs, next);
    }
    let to_y = |r: &Row, rel| LinConstraint::new(r.a[n..].to_vec(), rel, r.b.clone());
    let mut cons: Vec<LinConstraint> = eqs.iter().map(|r| to_y(r, Rel::Eq)).collect();
    cons.extend(ineqs.iter().map(|r| to_y(r, Rel::Le)));
    Ok(HPolyhedron::new(m, cons)?.normalized())
}

/// Same image computed through generators; an independent route used to cross-check [`project`].
pub fn project_via_generators(h: &HPolyhedron, f: &AffineMap) -> Result<HPolyhedron> {
    check_dim(h.dim(), f.input_dim())?;
    let g = h.generators();
    if g.is_empty() {
        return Ok(HPolyhedron::empty(f.output_dim()));
    }
    let out = Generators {
        vertices: g.vertices.iter().map(|v| f.apply(v)).collect(),
        rays: g.rays.iter().map(|r| f.apply_linear(r)).collect(),
        lines: g.lines.iter().map(|l| f.apply_linear(l)).collect(),
    };
    HPolyhedron::from_generators(f.output_dim(), &out)
}
