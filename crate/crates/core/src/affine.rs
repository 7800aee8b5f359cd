use serde::{Deserialize, Serialize};

use crate::constraint::LinConstraint;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot, zeros, Vector};
use crate::rational::Rational;

/// `x -> M x + offset` with `M` stored row-wise (`m` rows of length `n`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    pub matrix: Vec<Vector>,
    pub offset: Vector,
    input_dim: usize,
}

impl AffineMap {
    pub fn new(matrix: Vec<Vector>, offset: Vector, input_dim: usize) -> Result<Self> {
        check_dim(matrix.len(), offset.len())?;
        for row in &matrix {
            check_dim(input_dim, row.len())?;
        }
        Ok(AffineMap { matrix, offset, input_dim })
    }

    pub fn linear(matrix: Vec<Vector>, input_dim: usize) -> Result<Self> {
        let m = matrix.len();
        Self::new(matrix, zeros(m), input_dim)
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n).map(|i| crate::linalg::unit(n, i)).collect();
        AffineMap { matrix, offset: zeros(n), input_dim: n }
    }

    /// `x -> base + x * dir` from the line into `R^m`.
    pub fn line(base: &[Rational], dir: &[Rational]) -> Self {
        let matrix = dir.iter().map(|d| vec![d.clone()]).collect();
        AffineMap { matrix, offset: base.to_vec(), input_dim: 1 }
    }

    /// Projection onto the listed coordinates.
    pub fn coordinates(n: usize, coords: &[usize]) -> Result<Self> {
        if let Some(&bad) = coords.iter().find(|&&c| c >= n) {
            return Err(Error::InvalidArgument(format!("coordinate {bad} out of range for dimension {n}")));
        }
        let matrix = coords.iter().map(|&c| crate::linalg::unit(n, c)).collect();
        Ok(AffineMap { matrix, offset: zeros(coords.len()), input_dim: n })
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, x: &[Rational]) -> Vector {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, o)| dot(row, x) + o)
            .collect()
    }

    pub fn apply_linear(&self, x: &[Rational]) -> Vector {
        self.matrix.iter().map(|row| dot(row, x)).collect()
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap> {
        check_dim(self.input_dim, inner.output_dim())?;
        let n = inner.input_dim;
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                (0..n)
                    .map(|j| {
                        row.iter()
                            .zip(&inner.matrix)
                            .map(|(a, irow)| a * &irow[j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let offset = self.apply(&inner.offset);
        Ok(AffineMap { matrix, offset, input_dim: n })
    }

    /// `{x : c(self(x))}` as a constraint on the input.
    pub fn pull_back(&self, c: &LinConstraint) -> LinConstraint {
        let n = self.input_dim;
        let coeffs: Vector = (0..n)
            .map(|j| {
                c.coeffs
                    .iter()
                    .zip(&self.matrix)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, row)| a * &row[j])
                    .sum()
            })
            .collect();
        let rhs = &c.rhs - dot(&c.coeffs, &self.offset);
        LinConstraint::new(coeffs, c.rel, rhs)
    }
}

impl std::fmt::Display for AffineMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let row = |r: &[Rational]| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let rows: Vec<String> = self.matrix.iter().map(|r| format!("[{}]", row(r))).collect();
        write!(f, "[{}]+[{}]", rows.join(","), row(&self.offset))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn composition_is_associative() {
        let f = AffineMap::new(vec![v(&[1, 2]), v(&[0, 1])], v(&[1, -1]), 2).unwrap();
        let g = AffineMap::new(vec![v(&[3]), v(&[-1])], v(&[0, 2]), 1).unwrap();
        let h = AffineMap::new(vec![v(&[1, 1])], v(&[5]), 2).unwrap();
        let a = h.compose(&f).unwrap().compose(&g).unwrap();
        let b = h.compose(&f.compose(&g).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.apply(&v(&[2])), h.apply(&f.apply(&g.apply(&v(&[2])))));
    }

    #[test]
    fn pull_back_matches_evaluation() {
        let f = AffineMap::new(vec![v(&[1, 2]), v(&[0, 1])], v(&[1, -1]), 2).unwrap();
        let c = LinConstraint::le(v(&[2, -3]), qi(4));
        let p = f.pull_back(&c);
        for x in [v(&[0, 0]), v(&[3, -2]), v(&[-5, 7])] {
            assert_eq!(p.satisfied_by(&x), c.satisfied_by(&f.apply(&x)));
        }
    }
}
