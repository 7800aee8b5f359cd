//! Linear constraints `coeffs . x rel rhs`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{dot, is_zero_vec, neg, to_int_key, Vector};
use crate::rational::{common_denominator, numerator_gcd, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rel {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
}

impl Rel {
    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Le => "<=",
            Rel::Lt => "<",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinConstraint {
    pub coeffs: Vector,
    pub rel: Rel,
    pub rhs: Rational,
}

impl LinConstraint {
    pub fn new(coeffs: Vector, rel: Rel, rhs: Rational) -> Self {
        LinConstraint { coeffs, rel, rhs }
    }

    pub fn eq(coeffs: Vector, rhs: Rational) -> Self {
        Self::new(coeffs, Rel::Eq, rhs)
    }

    pub fn le(coeffs: Vector, rhs: Rational) -> Self {
        Self::new(coeffs, Rel::Le, rhs)
    }

    pub fn lt(coeffs: Vector, rhs: Rational) -> Self {
        Self::new(coeffs, Rel::Lt, rhs)
    }

    /// `coeffs . x >= rhs`, stored as `-coeffs . x <= -rhs`.
    pub fn ge(coeffs: Vector, rhs: Rational) -> Self {
        Self::new(neg(&coeffs), Rel::Le, -rhs)
    }

    /// `coeffs . x > rhs`, stored as `-coeffs . x < -rhs`.
    pub fn gt(coeffs: Vector, rhs: Rational) -> Self {
        Self::new(neg(&coeffs), Rel::Lt, -rhs)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// `coeffs . x - rhs`
    pub fn slack_value(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x) - &self.rhs
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let v = self.slack_value(x);
        match self.rel {
            Rel::Eq => v.is_zero(),
            Rel::Le => !v.is_positive(),
            Rel::Lt => v.is_negative(),
        }
    }

    /// Whether all coefficients vanish.
    pub fn is_constant(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    /// Truth value of a constant constraint.
    pub fn constant_truth(&self) -> Option<bool> {
        if !self.is_constant() {
            return None;
        }
        let z = Rational::zero();
        Some(match self.rel {
            Rel::Eq => self.rhs == z,
            Rel::Le => self.rhs >= z,
            Rel::Lt => self.rhs > z,
        })
    }

    pub fn with_rel(&self, rel: Rel) -> Self {
        Self::new(self.coeffs.clone(), rel, self.rhs.clone())
    }

    pub fn negated_coeffs(&self, rel: Rel) -> Self {
        Self::new(neg(&self.coeffs), rel, -&self.rhs)
    }

    /// Scale by a positive factor so that coefficients and rhs are coprime
    /// integers; equalities additionally get a positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let mut all = self.coeffs.clone();
        all.push(self.rhs.clone());
        if is_zero_vec(&all) {
            return self.clone();
        }
        let den = Rational::from(common_denominator(&all));
        let scaled: Vec<Rational> = all.iter().map(|x| x * &den).collect();
        let g = Rational::from(numerator_gcd(&scaled));
        let mut out: Vec<Rational> = scaled.iter().map(|x| x / &g).collect();
        if self.rel == Rel::Eq {
            if let Some(lead) = out.iter().find(|x| !x.is_zero()) {
                if lead.is_negative() {
                    out = neg(&out);
                }
            }
        }
        let rhs = out.pop().expect("nonempty");
        Self::new(out, self.rel, rhs)
    }

    /// Hyperplane `coeffs . x = rhs` in normalized form, or `None` if constant.
    pub fn hyperplane(&self) -> Option<LinConstraint> {
        if self.is_constant() {
            return None;
        }
        Some(self.with_rel(Rel::Eq).normalized())
    }

    pub fn sort_key(&self) -> (Rel, Vec<num_bigint::BigInt>) {
        let mut all = self.coeffs.clone();
        all.push(self.rhs.clone());
        (self.rel, to_int_key(&all))
    }
}

impl Ord for LinConstraint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rel
            .cmp(&other.rel)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
            .then_with(|| self.rhs.cmp(&other.rhs))
    }
}

impl PartialOrd for LinConstraint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LinConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "x{i}")?;
            } else {
                write!(f, "{c}*x{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " {} {}", self.rel.symbol(), self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn normalization_is_scale_invariant() {
        let a = LinConstraint::le(vec![q(1, 2), q(-1, 3)], q(1, 6));
        let b = LinConstraint::le(vec![qi(3), qi(-2)], qi(1));
        assert_eq!(a.normalized(), b.normalized());
        let e = LinConstraint::eq(vec![qi(-2), qi(4)], qi(2)).normalized();
        assert_eq!(e.coeffs, vec![qi(1), qi(-2)]);
        assert_eq!(e.rhs, qi(-1));
    }

    #[test]
    fn satisfaction() {
        let c = LinConstraint::gt(vec![qi(1)], qi(0));
        assert!(c.satisfied_by(&[q(1, 3)]));
        assert!(!c.satisfied_by(&[qi(0)]));
        assert_eq!(LinConstraint::lt(vec![qi(0)], qi(0)).constant_truth(), Some(false));
    }
}
