//! Dense exact linear algebra on rational vectors and row lists.

use num_bigint::BigInt;
use num_traits::One;

use crate::rational::{common_denominator, numerator_gcd, Rational};

pub type Vector = Vec<Rational>;

pub fn zeros(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Rational]) -> Vector {
    a.iter().map(|x| -x).collect()
}

/// `a + s * b`
pub fn add_scaled(a: &[Rational], s: &Rational, b: &[Rational]) -> Vector {
    a.iter()
        .zip(b)
        .map(|(x, y)| if y.is_zero() { x.clone() } else { x + s * y })
        .collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Rational::is_zero)
}

pub fn norm_sq(a: &[Rational]) -> Rational {
    dot(a, a)
}

/// Positive multiple of `v` with coprime integer entries. Zero maps to zero.
pub fn primitive(v: &[Rational]) -> Vector {
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let den = common_denominator(v);
    let scaled: Vec<Rational> = v
        .iter()
        .map(|x| x * &Rational::from(den.clone()))
        .collect();
    let g = numerator_gcd(&scaled);
    if g.is_one() {
        return scaled;
    }
    let g = Rational::from(g);
    scaled.iter().map(|x| x / &g).collect()
}

/// Like [`primitive`] but also flips the sign so the first nonzero entry is positive.
pub fn primitive_oriented(v: &[Rational]) -> Vector {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => neg(&p),
        _ => p,
    }
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vector], ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        if !inv.is_one() {
            m[r] = scale(&m[r], &inv);
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pr = m[r].clone();
                m[i] = add_scaled(&m[i], &-f, &pr);
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : row . x = 0 for every row}`.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = zeros(ncols);
        v[free] = Rational::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -&row[free];
        }
        basis.push(primitive(&v));
    }
    basis
}

/// Whether `v` lies in the row span of `rows`.
pub fn in_span(rows: &[Vector], v: &[Rational]) -> bool {
    let n = v.len();
    if is_zero_vec(v) {
        return true;
    }
    let (r, pivots) = rref(rows, n);
    reduce_by_rref(&r, &pivots, v).iter().all(Rational::is_zero)
}

/// Subtract multiples of RREF rows so that `v` vanishes on every pivot column.
pub fn reduce_by_rref(r: &[Vector], pivots: &[usize], v: &[Rational]) -> Vector {
    let mut out = v.to_vec();
    for (row, &pc) in r.iter().zip(pivots) {
        if !out[pc].is_zero() {
            let f = out[pc].clone();
            out = add_scaled(&out, &-f, row);
        }
    }
    out
}

/// Solve `A x = b` for one solution, or `None` if inconsistent.
pub fn solve(a: &[Vector], b: &[Rational], ncols: usize) -> Option<Vector> {
    let aug: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = zeros(ncols);
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Integer-scaled copy of a rational vector as big integers (for hashing/sorting keys).
pub fn to_int_key(v: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(v);
    v.iter()
        .map(|x| (x * &Rational::from(den.clone())).numer())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn nullspace_of_diagonal_constraint() {
        let ns = nullspace(&[vec![qi(1), qi(-1), qi(0)]], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(v, &[qi(1), qi(-1), qi(0)]).is_zero());
        }
        assert_eq!(rank(&ns, 3), 2);
    }

    #[test]
    fn primitive_scales_to_coprime_integers() {
        assert_eq!(primitive(&[q(1, 2), q(-3, 4)]), vec![qi(2), qi(-3)]);
        assert_eq!(primitive_oriented(&[q(-2, 3), qi(0)]), vec![qi(1), qi(0)]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = vec![vec![qi(1), qi(1)], vec![qi(2), qi(2)]];
        assert!(solve(&a, &[qi(1), qi(3)], 2).is_none());
        let x = solve(&a, &[qi(1), qi(2)], 2).unwrap();
        assert_eq!(&x[0] + &x[1], qi(1));
    }
}
