//! Exact linear programming over free variables.
//!
//! Dense two-phase tableau simplex with Bland's rule. Each free variable is
//! split into a positive and a negative part; strict rows are handled by a
//! shared slack `delta` that is maximized (feasible iff the optimum is > 0).

use serde::Serialize;

use crate::constraint::{LinConstraint, Rel};
use crate::error::{check_dim, Result};
use crate::linalg::{dot, is_zero_vec, zeros, Vector};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vector, value: Rational },
    Unbounded,
    Infeasible,
}

/// Nonnegative multipliers (free for equalities) combining the constraints into
/// `0 <= -1` or, with positive weight on some strict row, `0 < 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FarkasCertificate {
    pub multipliers: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vector),
    Infeasible(FarkasCertificate),
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [Rational]) {
        let inv = self.rows[r][c].recip();
        if !inv.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let prow = self.rows[r].clone();
        let nz: Vec<usize> = (0..=self.ncols).filter(|&j| !prow[j].is_zero()).collect();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            let row = &mut self.rows[i];
            for &j in &nz {
                row[j] -= &f * &prow[j];
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for &j in &nz {
                obj[j] -= &f * &prow[j];
            }
        }
        self.basis[r] = c;
    }

    /// Maximize with reduced-cost row `obj` (entry `ncols` holds minus the
    /// objective value). Columns in `blocked` never enter. Returns false when unbounded.
    fn run(&mut self, obj: &mut [Rational], blocked: &[bool]) -> bool {
        loop {
            let Some(c) = (0..self.ncols).find(|&j| !blocked[j] && obj[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c, obj),
            }
        }
    }
}

/// Maximize `c . x` subject to `Eq`/`Le` constraints in `n` free variables.
fn simplex(n: usize, cons: &[(Vector, Rel, Rational)], c: &[Rational]) -> LpOutcome {
    let m = cons.len();
    let nstruct = 2 * n;
    let nslack = cons.iter().filter(|r| r.1 == Rel::Le).count();
    // Rows get an artificial unless a slack with coefficient +1 can start basic.
    let mut needs_art = Vec::with_capacity(m);
    for (_, rel, rhs) in cons {
        needs_art.push(!(*rel == Rel::Le && !rhs.is_negative()));
    }
    let nart = needs_art.iter().filter(|&&b| b).count();
    let ncols = nstruct + nslack + nart;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut si, mut ai) = (nstruct, nstruct + nslack);
    for (k, (a, rel, rhs)) in cons.iter().enumerate() {
        let mut row = zeros(ncols + 1);
        let flip = rhs.is_negative();
        let sgn = |v: &Rational| if flip { -v } else { v.clone() };
        for j in 0..n {
            if !a[j].is_zero() {
                row[2 * j] = sgn(&a[j]);
                row[2 * j + 1] = -sgn(&a[j]);
            }
        }
        row[ncols] = sgn(rhs);
        if *rel == Rel::Le {
            row[si] = sgn(&Rational::one());
            if !needs_art[k] {
                basis.push(si);
            }
            si += 1;
        }
        if needs_art[k] {
            row[ai] = Rational::one();
            basis.push(ai);
            ai += 1;
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, ncols };
    let is_art = |j: usize| j >= nstruct + nslack;

    if nart > 0 {
        // Phase 1: maximize minus the sum of artificials.
        let mut obj = zeros(ncols + 1);
        for (i, &b) in t.basis.iter().enumerate() {
            if is_art(b) {
                for j in 0..=ncols {
                    if (j == ncols || !is_art(j)) && !t.rows[i][j].is_zero() {
                        obj[j] += &t.rows[i][j];
                    }
                }
            }
        }
        // obj[ncols] currently holds the sum of artificial values; store minus objective.
        let blocked = vec![false; ncols];
        t.run(&mut obj, &blocked);
        if obj[ncols].is_positive() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining artificials out of the basis.
        let mut i = 0;
        while i < t.rows.len() {
            if is_art(t.basis[i]) {
                if let Some(j) = (0..nstruct + nslack).find(|&j| !t.rows[i][j].is_zero()) {
                    t.pivot(i, j, &mut obj);
                } else {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
    }

    // Phase 2 over structural and slack columns.
    let mut cost = zeros(ncols);
    for j in 0..n {
        cost[2 * j] = c[j].clone();
        cost[2 * j + 1] = -&c[j];
    }
    let mut obj = zeros(ncols + 1);
    obj[..ncols].clone_from_slice(&cost);
    for (i, &b) in t.basis.iter().enumerate() {
        if !cost[b].is_zero() {
            let f = cost[b].clone();
            for j in 0..=ncols {
                if !t.rows[i][j].is_zero() {
                    obj[j] -= &f * &t.rows[i][j];
                }
            }
        }
    }
    let blocked: Vec<bool> = (0..ncols).map(is_art).collect();
    if !t.run(&mut obj, &blocked) {
        return LpOutcome::Unbounded;
    }
    let mut vals = zeros(ncols);
    for (i, &b) in t.basis.iter().enumerate() {
        vals[b] = t.rhs(i).clone();
    }
    let x: Vector = (0..n).map(|j| &vals[2 * j] - &vals[2 * j + 1]).collect();
    let value = dot(c, &x);
    LpOutcome::Optimal { x, value }
}

/// Rows after dropping constant ones; `None` if a constant row is false.
fn prepare(cons: &[LinConstraint]) -> Option<(Vec<(Vector, Rel, Rational)>, Vec<usize>)> {
    let mut rows = Vec::new();
    let mut strict = Vec::new();
    for c in cons {
        if let Some(t) = c.constant_truth() {
            if !t {
                return None;
            }
            continue;
        }
        if c.rel == Rel::Lt {
            strict.push(rows.len());
        }
        rows.push((c.coeffs.clone(), c.rel, c.rhs.clone()));
    }
    Some((rows, strict))
}

/// Maximize `obj . x` over non-strict constraints. Strict rows are relaxed.
pub fn maximize(n: usize, cons: &[LinConstraint], obj: &[Rational]) -> LpOutcome {
    let Some((mut rows, _)) = prepare(cons) else {
        return LpOutcome::Infeasible;
    };
    for r in rows.iter_mut() {
        if r.1 == Rel::Lt {
            r.1 = Rel::Le;
        }
    }
    simplex(n, &rows, obj)
}

pub fn minimize(n: usize, cons: &[LinConstraint], obj: &[Rational]) -> LpOutcome {
    let negobj: Vector = obj.iter().map(|v| -v).collect();
    match maximize(n, cons, &negobj) {
        LpOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value: -value },
        other => other,
    }
}

/// A point satisfying every constraint (strict ones strictly), if any.
pub fn feasible_point(n: usize, cons: &[LinConstraint]) -> Option<Vector> {
    let (mut rows, strict) = prepare(cons)?;
    if strict.is_empty() {
        return match simplex(n, &rows, &zeros(n)) {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        };
    }
    for r in rows.iter_mut() {
        r.0.push(Rational::zero());
    }
    for &i in &strict {
        rows[i].1 = Rel::Le;
        rows[i].0[n] = Rational::one();
    }
    let mut cap = zeros(n + 1);
    cap[n] = Rational::one();
    rows.push((cap.clone(), Rel::Le, Rational::one()));
    match simplex(n + 1, &rows, &cap) {
        LpOutcome::Optimal { mut x, value } if value.is_positive() => {
            x.truncate(n);
            Some(x)
        }
        _ => None,
    }
}

pub fn is_feasible(n: usize, cons: &[LinConstraint]) -> bool {
    feasible_point(n, cons).is_some()
}

/// Feasibility with a checked Farkas/Motzkin certificate on infeasibility.
pub fn solve_feasibility(cons: &[LinConstraint], n: usize) -> Result<Feasibility> {
    for c in cons {
        check_dim(n, c.dim())?;
    }
    if let Some(x) = feasible_point(n, cons) {
        debug_assert!(cons.iter().all(|c| c.satisfied_by(&x)));
        return Ok(Feasibility::Feasible(x));
    }
    let cert = farkas_certificate(cons, n).expect("alternative system must be solvable");
    debug_assert!(check_farkas(cons, &cert));
    Ok(Feasibility::Infeasible(cert))
}

fn farkas_certificate(cons: &[LinConstraint], n: usize) -> Option<FarkasCertificate> {
    let m = cons.len();
    let mut base: Vec<LinConstraint> = Vec::new();
    for j in 0..n {
        let coeffs: Vector = cons.iter().map(|c| c.coeffs[j].clone()).collect();
        base.push(LinConstraint::eq(coeffs, Rational::zero()));
    }
    for (i, c) in cons.iter().enumerate() {
        if c.rel != Rel::Eq {
            let mut e = zeros(m);
            e[i] = -Rational::one();
            base.push(LinConstraint::le(e, Rational::zero()));
        }
    }
    let rhs_row: Vector = cons.iter().map(|c| c.rhs.clone()).collect();
    let mut first = base.clone();
    first.push(LinConstraint::le(rhs_row.clone(), -Rational::one()));
    if let Some(mu) = feasible_point(m, &first) {
        return Some(FarkasCertificate { multipliers: mu });
    }
    let strict_row: Vector = cons
        .iter()
        .map(|c| if c.rel == Rel::Lt { Rational::one() } else { Rational::zero() })
        .collect();
    if is_zero_vec(&strict_row) {
        return None;
    }
    let mut second = base;
    second.push(LinConstraint::le(rhs_row, Rational::zero()));
    second.push(LinConstraint::eq(strict_row, Rational::one()));
    feasible_point(m, &second).map(|mu| FarkasCertificate { multipliers: mu })
}

/// Re-derive the contradiction encoded by `cert`.
pub fn check_farkas(cons: &[LinConstraint], cert: &FarkasCertificate) -> bool {
    if cert.multipliers.len() != cons.len() {
        return false;
    }
    let n = cons.first().map_or(0, |c| c.dim());
    let mut comb = zeros(n);
    let mut rhs = Rational::zero();
    let mut strict_weight = false;
    for (c, mu) in cons.iter().zip(&cert.multipliers) {
        if c.rel != Rel::Eq && mu.is_negative() {
            return false;
        }
        if mu.is_zero() {
            continue;
        }
        for (acc, a) in comb.iter_mut().zip(&c.coeffs) {
            *acc += mu * a;
        }
        rhs += mu * &c.rhs;
        if c.rel == Rel::Lt {
            strict_weight = true;
        }
    }
    is_zero_vec(&comb) && (rhs.is_negative() || (rhs.is_zero() && strict_weight))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn c(coeffs: &[i64], rel: Rel, rhs: i64) -> LinConstraint {
        LinConstraint::new(coeffs.iter().map(|&v| qi(v)).collect(), rel, qi(rhs))
    }

    #[test]
    fn contradictory_strict_pair() {
        let cons = [c(&[1], Rel::Lt, 0), c(&[-1], Rel::Lt, 0)];
        match solve_feasibility(&cons, 1).unwrap() {
            Feasibility::Infeasible(cert) => assert!(check_farkas(&cons, &cert)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn open_interval_midpoint() {
        let cons = [c(&[-1], Rel::Lt, 0), c(&[1], Rel::Lt, 1)];
        assert_eq!(
            solve_feasibility(&cons, 1).unwrap(),
            Feasibility::Feasible(vec![q(1, 2)])
        );
    }

    #[test]
    fn strict_with_equality() {
        let cons = [
            c(&[1, 1], Rel::Eq, 1),
            c(&[1, 0], Rel::Lt, 1),
            c(&[0, 1], Rel::Lt, 1),
        ];
        assert_eq!(
            solve_feasibility(&cons, 2).unwrap(),
            Feasibility::Feasible(vec![q(1, 2), q(1, 2)])
        );
    }

    #[test]
    fn plain_infeasible_certificate() {
        let cons = [c(&[1, 1], Rel::Le, 0), c(&[-1, 0], Rel::Le, -1), c(&[0, -1], Rel::Le, 0)];
        match solve_feasibility(&cons, 2).unwrap() {
            Feasibility::Infeasible(cert) => assert!(check_farkas(&cons, &cert)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn optimum_and_unbounded() {
        let cons = [c(&[1, 2], Rel::Le, 4), c(&[-1, 0], Rel::Le, 0), c(&[0, -1], Rel::Le, 0)];
        match maximize(2, &cons, &[qi(1), qi(1)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, qi(4)),
            other => panic!("{other:?}"),
        }
        assert_eq!(maximize(2, &cons[1..], &[qi(1), qi(0)]), LpOutcome::Unbounded);
    }
}
