//! Dense univariate polynomials in `s`.

use std::fmt;

use super::ring::Ring;

/// Polynomial with coefficients listed from the constant term up.
/// Trailing zeros are never stored, so the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c * s^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `s^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.times(x).plus(c))
    }

    /// Coefficients of `p(1 + t)` in powers of `t`, truncated to `order + 1` terms.
    pub fn taylor_shift(&self, order: usize) -> Vec<R> {
        // Horner in the shifted variable: acc <- acc * (1 + t) + c
        let mut acc: Vec<R> = Vec::new();
        for c in self.coeffs.iter().rev() {
            let mut next = vec![R::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i] = next[i].plus(a);
                next[i + 1] = next[i + 1].plus(a);
            }
            next[0] = next[0].plus(c);
            acc = next;
        }
        acc.resize(order + 1, R::zero());
        acc
    }

    /// `(q, r)` with `self = q * d + r` and `deg r < deg d`, provided every
    /// leading-coefficient division is exact.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![R::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd];
            if c.is_zero() {
                continue;
            }
            let q = c.div_exact(lead)?;
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].minus(&q.times(dj));
            }
            quot[i] = q;
        }
        Some((Self::new(quot), Self::new(rem)))
    }
}

impl<R: Ring> Ring for UniPoly<R> {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    fn one() -> Self {
        Self::constant(R::one())
    }

    fn from_bigint(n: &num_bigint::BigInt) -> Self {
        Self::constant(R::from_bigint(n))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).plus(&other.coeff(i))).collect())
    }

    fn minus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).minus(&other.coeff(i))).collect())
    }

    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        Self::new(out)
    }

    fn negate(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(Ring::negate).collect(),
        }
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(other)?;
        r.is_zero().then_some(q)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*s")?,
                _ => write!(f, "({c})*s^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::binomial;
    use num_bigint::BigInt;

    fn p(v: &[i64]) -> UniPoly<BigInt> {
        UniPoly::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn shift_of_square() {
        assert_eq!(p(&[0, 0, 1]).taylor_shift(2), big(&[1, 2, 1]));
    }

    #[test]
    fn shift_of_cube_of_s_minus_one() {
        let q = p(&[-1, 1]).pow(3);
        assert_eq!(q.taylor_shift(3), big(&[0, 0, 0, 1]));
    }

    #[test]
    fn shift_of_one_minus_cube_matches_binomials() {
        // 1 - (1+t)^3 = -sum_{k>=1} C(3,k) t^k
        let expected: Vec<BigInt> = (0..4u64)
            .map(|k| if k == 0 { BigInt::from(0) } else { -binomial(3, k) })
            .collect();
        assert_eq!(p(&[1, 0, 0, -1]).taylor_shift(3), expected);
        assert_eq!(expected, big(&[0, -3, -3, -1]));
    }

    #[test]
    fn truncation_and_padding() {
        assert_eq!(p(&[1, 1]).taylor_shift(4), big(&[2, 1, 0, 0, 0]));
        assert_eq!(p(&[0, 0, 0, 1]).taylor_shift(1), big(&[1, 3]));
    }

    #[test]
    fn long_division() {
        let a = p(&[1, 0, 0, -1]);
        let b = p(&[1, -1]);
        assert_eq!(a.div_exact(&b), Some(p(&[1, 1, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&b), None);
        let (q, r) = p(&[3, 2, 1]).div_rem(&p(&[1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn trimming() {
        assert_eq!(p(&[1, 0, 0]).degree(), Some(0));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, 1]).minus(&p(&[0, 1])), p(&[1]));
    }
}
