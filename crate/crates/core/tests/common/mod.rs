//! Seeded random corpora and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semiconvex::algebra::OpNode;
use semiconvex::linalg::{add, dot, norm_sq, scale, sub};
use semiconvex::{AffineMap, Bound, CellSet, Error, HPolyhedron, LinConstraint, PieceList, Rational, Rel, Vector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn qi(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn v(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| qi(x)).collect()
}

fn small_vec(rng: &mut ChaCha8Rng, dim: usize, range: i64) -> Vector {
    loop {
        let a: Vector = (0..dim).map(|_| qi(rng.gen_range(-range..=range))).collect();
        if a.iter().any(|x| !x.is_zero()) {
            return a;
        }
    }
}

fn random_hull(rng: &mut ChaCha8Rng, dim: usize) -> HPolyhedron {
    loop {
        let mut cons = Vec::new();
        if rng.gen_bool(0.5) {
            // a box, possibly open on some sides
            for i in 0..dim {
                let mut e = vec![qi(0); dim];
                e[i] = qi(1);
                if rng.gen_bool(0.85) {
                    cons.push(LinConstraint::le(e.clone(), qi(rng.gen_range(0..=2))));
                }
                if rng.gen_bool(0.85) {
                    cons.push(LinConstraint::ge(e, qi(-rng.gen_range(0..=2))));
                }
            }
        }
        for _ in 0..rng.gen_range(0..=dim + 1) {
            cons.push(LinConstraint::le(small_vec(rng, dim, 2), qi(rng.gen_range(0..=3))));
        }
        if dim > 1 && rng.gen_bool(0.15) {
            cons.push(LinConstraint::eq(small_vec(rng, dim, 1), qi(rng.gen_range(-1..=1))));
        }
        let h = HPolyhedron::new(dim, cons).expect("consistent dims");
        if !h.is_empty() && h.face_lattice().map(|f| f.len() <= 40).unwrap_or(false) {
            return h;
        }
    }
}

fn relint_piece(face: &HPolyhedron) -> Vec<LinConstraint> {
    let mut p: Vec<LinConstraint> = face.equalities().to_vec();
    p.extend(face.inequalities().iter().map(|c| c.with_rel(Rel::Lt)));
    p
}

/// A random convex semilinear set of the given dimension: the relative interior of a random
/// polyhedron plus an upward-closed family of face relints, some faces cut by a random hyperplane.
pub fn random_set(rng: &mut ChaCha8Rng, dim: usize) -> CellSet {
    loop {
        let hull = random_hull(rng, dim);
        let faces = hull.face_lattice().expect("nonempty hull");
        let chosen: Vec<usize> = (0..faces.len()).filter(|_| rng.gen_bool(0.3)).collect();
        let mut pieces = Vec::new();
        for f in &faces {
            let above = chosen.iter().any(|&j| f.tight.iter().all(|t| faces[j].tight.contains(t)));
            if f.tight.is_empty() || above {
                pieces.push(relint_piece(&f.polyhedron));
            } else if f.dim > 0 && rng.gen_bool(0.4) {
                let rel = *[Rel::Lt, Rel::Le, Rel::Eq].choose(rng).expect("nonempty");
                let mut p = relint_piece(&f.polyhedron);
                p.push(LinConstraint::new(small_vec(rng, dim, 1), rel, qi(rng.gen_range(-1..=1))));
                pieces.push(p);
            }
        }
        match CellSet::canonicalize(&PieceList::new(dim, pieces)) {
            Ok(s) if !s.is_empty() => return s,
            Ok(_) | Err(Error::NotConvex(_)) | Err(Error::ResourceCap { .. }) => continue,
            Err(e) => panic!("unexpected error {e}"),
        }
    }
}

pub fn random_dim(rng: &mut ChaCha8Rng, max: usize) -> usize {
    rng.gen_range(1..=max)
}

pub fn random_map(rng: &mut ChaCha8Rng, input: usize, output: usize) -> AffineMap {
    let matrix = (0..output).map(|_| (0..input).map(|_| qi(rng.gen_range(-2..=2))).collect()).collect();
    let offset = (0..output).map(|_| qi(rng.gen_range(-1..=1))).collect();
    AffineMap::new(matrix, offset, input).expect("consistent dims")
}

/// A random pipeline over representatives and random sets with ambient dimension at most 3.
pub fn random_pipeline(rng: &mut ChaCha8Rng, depth: usize, reps: &[CellSet]) -> Arc<OpNode> {
    let leaf = depth == 0 || rng.gen_bool(0.2);
    if leaf {
        let s = if rng.gen_bool(0.5) {
            reps.choose(rng).expect("representatives").clone()
        } else {
            let d = random_dim(rng, 3);
            random_set(rng, d)
        };
        return OpNode::source(s);
    }
    let child = random_pipeline(rng, depth - 1, reps);
    let d = child.dim();
    match rng.gen_range(0..5) {
        0 => {
            let m = random_dim(rng, 3);
            OpNode::image(child, random_map(rng, d, m)).expect("dims match")
        }
        1 => {
            let m = random_dim(rng, 3);
            OpNode::preimage(child, random_map(rng, m, d)).expect("dims match")
        }
        2 => {
            let other = random_pipeline(rng, depth - 1, reps);
            let od = other.dim();
            let other = OpNode::preimage(other, random_map(rng, d, od)).expect("dims match");
            OpNode::intersect(vec![child, other]).expect("dims match")
        }
        3 => OpNode::closure(child),
        _ => OpNode::directional_limit(child, small_vec(rng, d, 1)).expect("dims match"),
    }
}

/// Grid `{k / density}` over `[-window, window]^dim`.
pub fn grid(dim: usize, density: i64, window: i64) -> Vec<Vector> {
    let axis: Vec<Rational> = (-window * density..=window * density).map(|k| Rational::new(k, density)).collect();
    let mut out: Vec<Vector> = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| axis.iter().map(move |a| {
                let mut q = p.clone();
                q.push(a.clone());
                q
            }))
            .collect();
    }
    out
}

/// Brute-force semident search: grid points `a` of the closure outside `S`, grid points `s`
/// of `S` and `lambda` in {1/4, 1/2, 3/4}; `t` is solved for and tested against the closure.
pub fn semident_oracle(s: &CellSet, density: i64, window: i64, max_inner: usize) -> Option<(Vector, Vector, Vector)> {
    let pts = grid(s.dim(), density, window);
    let boundary: Vec<&Vector> = pts.iter().filter(|p| s.top().contains(p) && !s.contains(p)).collect();
    let inner: Vec<&Vector> = pts.iter().filter(|p| s.contains(p)).collect();
    let stride = inner.len().div_ceil(max_inner.max(1)).max(1);
    let lambdas = [Rational::new(1, 4), Rational::new(1, 2), Rational::new(3, 4)];
    for a in &boundary {
        for sp in inner.iter().step_by(stride) {
            for l in &lambdas {
                let t = scale(&sub(a, &scale(sp, l)), &(Rational::one() / (Rational::one() - l)));
                if s.top().contains(&t) {
                    return Some(((*a).clone(), (*sp).clone(), t));
                }
            }
        }
    }
    None
}

/// Brute-force ray search over lines through grid points with directions in `{-1,0,1}^n`.
pub fn ray_oracle(s: &CellSet, density: i64, window: i64) -> Option<(Vector, Vector)> {
    let n = s.dim();
    let pts = grid(n, density, window);
    let dirs: Vec<Vector> = grid(n, 1, 1)
        .into_iter()
        .filter(|d| d.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()))
        .collect();
    for d in &dirs {
        let dd = norm_sq(d);
        let mut seen = HashSet::new();
        for p in &pts {
            let key = sub(p, &scale(d, &(dot(p, d) / &dd)));
            if !seen.insert(key) {
                continue;
            }
            if let Some(iv) = s.line_membership(p, d) {
                let ray = |lo: &Bound, hi: &Bound| lo.value().is_some() && *hi == Bound::Unbounded;
                if ray(&iv.lo, &iv.hi) {
                    let l = iv.lo.value().expect("finite");
                    return Some((add(p, &scale(d, l)), d.clone()));
                }
                if ray(&iv.hi, &iv.lo) {
                    let h = iv.hi.value().expect("finite");
                    return Some((add(p, &scale(d, h)), scale(d, &qi(-1))));
                }
            }
        }
    }
    None
}
