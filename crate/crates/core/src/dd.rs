//! Double description for polyhedral cones `{y : E y = 0, A y <= 0}`.
//!
//! Constraints are inserted in the given order. The lineality space starts as
//! the whole space; a constraint that is not constant on some line consumes it
//! by projection, otherwise rays are split and adjacent pairs combined.
//! Adjacency is decided combinatorially on zero sets.

use crate::linalg::{add, dot, is_zero_vec, primitive, primitive_oriented, scale, unit, Vector};
use crate::rational::Rational;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConeGenerators {
    pub lines: Vec<Vector>,
    pub rays: Vec<Vector>,
}

#[derive(Clone)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(bits: usize) -> Self {
        BitSet(vec![0; bits.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: Vector,
    zeros: BitSet,
}

pub fn cone_generators(dim: usize, eqs: &[Vector], ineqs: &[Vector]) -> ConeGenerators {
    let total = ineqs.len();
    let mut lines: Vec<Vector> = (0..dim).map(|i| unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();
    let all = eqs.iter().map(|a| (a, None)).chain(ineqs.iter().enumerate().map(|(i, a)| (a, Some(i))));
    for (a, ineq_index) in all {
        if is_zero_vec(a) {
            continue;
        }
        if let Some(k) = lines.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lines.remove(k);
            let mut al0 = dot(a, &l0);
            if al0.is_positive() {
                l0 = l0.iter().map(|x| -x).collect();
                al0 = -al0;
            }
            let project = |v: &Vector| -> Vector {
                let av = dot(a, v);
                if av.is_zero() {
                    v.clone()
                } else {
                    add(v, &scale(&l0, &-(&av / &al0)))
                }
            };
            for l in lines.iter_mut() {
                *l = project(l);
            }
            for r in rays.iter_mut() {
                r.v = primitive(&project(&r.v));
                if let Some(i) = ineq_index {
                    r.zeros.set(i);
                }
            }
            if let Some(i) = ineq_index {
                // Every earlier inequality vanishes on a line.
                let mut z = BitSet::new(total);
                for j in 0..i {
                    z.set(j);
                }
                rays.push(Ray { v: primitive(&l0), zeros: z });
            }
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let negs: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if pos.is_empty() {
            if let Some(i) = ineq_index {
                for (r, v) in rays.iter_mut().zip(&vals) {
                    if v.is_zero() {
                        r.zeros.set(i);
                    }
                }
                continue;
            }
            if negs.is_empty() {
                continue;
            }
        }
        let mut next: Vec<Ray> = Vec::new();
        for &pi in &pos {
            for &ni in &negs {
                let common = rays[pi].zeros.and(&rays[ni].zeros);
                let adjacent = rays.iter().enumerate().all(|(k, r)| {
                    k == pi || k == ni || !common.subset_of(&r.zeros)
                });
                if !adjacent {
                    continue;
                }
                let v = add(
                    &scale(&rays[ni].v, &vals[pi]),
                    &scale(&rays[pi].v, &-&vals[ni]),
                );
                let mut zeros = common;
                if let Some(i) = ineq_index {
                    zeros.set(i);
                }
                next.push(Ray { v: primitive(&v), zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (r, v) in rays.into_iter().zip(&vals) {
            if v.is_zero() {
                let mut r = r;
                if let Some(i) = ineq_index {
                    r.zeros.set(i);
                }
                kept.push(r);
            } else if v.is_negative() && ineq_index.is_some() {
                kept.push(r);
            }
        }
        kept.extend(next);
        rays = kept;
    }
    let mut out_rays: Vec<Vector> = Vec::new();
    for r in rays {
        if !is_zero_vec(&r.v) && !out_rays.contains(&r.v) {
            out_rays.push(r.v);
        }
    }
    ConeGenerators {
        lines: lines.iter().map(|l| primitive_oriented(l)).collect(),
        rays: out_rays,
    }
}
