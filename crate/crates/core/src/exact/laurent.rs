use std::fmt;

use super::{binomial, GradedVector, Rational};
use crate::{Error, Result};

/// Coefficient types a Laurent series can carry.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// `self += c * other`
    fn add_scaled(&mut self, other: &Self, c: &Rational);
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        self.add_mul(other, c);
    }
}

impl Coefficient for GradedVector {
    fn zero() -> Self {
        GradedVector::zero()
    }
    fn is_zero(&self) -> bool {
        GradedVector::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        GradedVector::add_scaled(self, other, c);
    }
}

/// `sum_{e >= lowest} a_e x^e`, known exactly for `e <= order`. When
/// `truncated` is false the series is a Laurent polynomial and every
/// coefficient above the stored ones is zero.
#[derive(Clone, PartialEq)]
pub struct TruncatedLaurent<C: Coefficient> {
    lowest: i64,
    coeffs: Vec<C>,
    order: i64,
    truncated: bool,
}

impl<C: Coefficient> TruncatedLaurent<C> {
    /// Series with coefficients `coeffs[i]` at `x^(lowest + i)`. If
    /// `truncated`, nothing is known above `order`.
    pub fn new(lowest: i64, coeffs: Vec<C>, order: i64, truncated: bool) -> Self {
        let mut s = TruncatedLaurent {
            lowest,
            coeffs,
            order,
            truncated,
        };
        if truncated {
            let keep = (order - lowest + 1).max(0) as usize;
            s.coeffs.truncate(keep);
        }
        s.trim();
        s
    }

    /// Exact Laurent polynomial.
    pub fn polynomial(lowest: i64, coeffs: Vec<C>) -> Self {
        let order = lowest + coeffs.len() as i64 - 1;
        Self::new(lowest, coeffs, order, false)
    }

    pub fn monomial(c: C, e: i64) -> Self {
        Self::polynomial(e, vec![c])
    }

    pub fn zero() -> Self {
        Self::polynomial(0, Vec::new())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lowest += lead as i64;
        }
        if self.coeffs.is_empty() && !self.truncated {
            self.lowest = 0;
        }
        if !self.truncated {
            self.order = self.lowest + self.coeffs.len() as i64 - 1;
        }
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    /// Highest exponent with a known coefficient (`i64::MAX` semantics are
    /// avoided: exact series report their top nonzero exponent).
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_zero(&self) -> bool {
        !self.truncated && self.coeffs.is_empty()
    }

    /// Coefficient of `x^e`.
    pub fn coeff(&self, e: i64) -> Result<C> {
        if self.truncated && e > self.order {
            return Err(Error::truncation("series coefficient", e, self.order));
        }
        if e < self.lowest {
            return Ok(C::zero());
        }
        Ok(self
            .coeffs
            .get((e - self.lowest) as usize)
            .cloned()
            .unwrap_or_else(C::zero))
    }

    /// Coefficient of `x^{-1}`.
    pub fn residue(&self) -> Result<C> {
        self.coeff(-1)
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lowest + i as i64, c))
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        TruncatedLaurent {
            lowest: self.lowest + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
            truncated: self.truncated,
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let mut z = C::zero();
            z.add_scaled(a, c);
            coeffs.push(z);
        }
        Self::new(self.lowest, coeffs, self.order, self.truncated)
    }

    /// `d/dx`.
    pub fn derivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            let e = self.lowest + i as i64;
            let mut z = C::zero();
            z.add_scaled(a, &Rational::from_int(e));
            coeffs.push(z);
        }
        Self::new(self.lowest - 1, coeffs, self.order - 1, self.truncated)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = match (self.truncated, other.truncated) {
            (true, true) => self.order.min(other.order),
            (true, false) => self.order,
            (false, true) => other.order,
            (false, false) => self.order.max(other.order),
        };
        let truncated = self.truncated || other.truncated;
        let lowest = self.lowest.min(other.lowest);
        let top = self
            .order
            .max(other.order)
            .max(self.lowest + self.coeffs.len() as i64 - 1)
            .max(other.lowest + other.coeffs.len() as i64 - 1);
        let len = (top - lowest + 1).max(0) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (s, sh) in [(self, self.lowest - lowest), (other, other.lowest - lowest)] {
            for (i, a) in s.coeffs.iter().enumerate() {
                coeffs[i + sh as usize].add_scaled(a, &Rational::ONE);
            }
        }
        Self::new(lowest, coeffs, order, truncated)
    }
}

impl TruncatedLaurent<Rational> {
    /// Product of a scalar series with a series of any coefficient type,
    /// kept up to the highest order both factors determine.
    pub fn truncated_multiply<C: Coefficient>(&self, b: &TruncatedLaurent<C>) -> TruncatedLaurent<C> {
        let a = self;
        let a_top = a.lowest + a.coeffs.len() as i64 - 1;
        let b_top = b.lowest + b.coeffs.len() as i64 - 1;
        let mut order = i64::MAX;
        if a.truncated {
            order = order.min(a.order + b.lowest);
        }
        if b.truncated {
            order = order.min(b.order + a.lowest);
        }
        let truncated = a.truncated || b.truncated;
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            let low = a.lowest + b.lowest;
            return TruncatedLaurent::new(low, Vec::new(), if truncated { order } else { low }, truncated);
        }
        let lowest = a.lowest + b.lowest;
        let top = if truncated {
            order.min(a_top + b_top)
        } else {
            a_top + b_top
        };
        let len = (top - lowest + 1).max(0) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= len {
                    break;
                }
                coeffs[k].add_scaled(y, x);
            }
        }
        TruncatedLaurent::new(lowest, coeffs, if truncated { order } else { top }, truncated)
    }
}

/// `(1 + x)^r` expanded in nonnegative powers of `x` up to `x^order`. Exact
/// (untruncated) for `r >= 0` once `order >= r`.
pub fn binom_expand(r: i64, order: i64) -> TruncatedLaurent<Rational> {
    binom_expand_at(&Rational::ONE, r, order)
}

/// `(a + x)^r = sum_j C(r, j) a^(r - j) x^j`, expanded in nonnegative powers
/// of the second summand `x`.
pub fn binom_expand_at(a: &Rational, r: i64, order: i64) -> TruncatedLaurent<Rational> {
    assert!(!a.is_zero(), "expansion point must be nonzero");
    let exact = r >= 0 && order >= r;
    let top = if exact { r } else { order };
    let coeffs: Vec<Rational> = (0..=top.max(-1)).map(|j| &binomial(r, j) * &a.pow(r - j)).collect();
    TruncatedLaurent::new(0, coeffs, top, !exact)
}

impl<C: Coefficient> fmt::Debug for TruncatedLaurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})x^{e}")?;
        }
        if first {
            write!(f, "0")?;
        }
        if self.truncated {
            write!(f, " + O(x^{})", self.order + 1)?;
        }
        Ok(())
    }
}

/// A series whose coefficient kind is only known at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum Series {
    Scalar(TruncatedLaurent<Rational>),
    Vector(TruncatedLaurent<GradedVector>),
}

impl Series {
    pub fn multiply(&self, other: &Series) -> Result<Series> {
        match (self, other) {
            (Series::Scalar(a), Series::Scalar(b)) => Ok(Series::Scalar(a.truncated_multiply(b))),
            (Series::Scalar(a), Series::Vector(b)) | (Series::Vector(b), Series::Scalar(a)) => {
                Ok(Series::Vector(a.truncated_multiply(b)))
            }
            (Series::Vector(_), Series::Vector(_)) => {
                Err(Error::Unsupported("product of two vector-valued series".into()))
            }
        }
    }

    pub fn is_truncated(&self) -> bool {
        match self {
            Series::Scalar(s) => s.is_truncated(),
            Series::Vector(s) => s.is_truncated(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn geometric_series() {
        let s = binom_expand(-1, 3);
        assert!(s.is_truncated());
        for (e, c) in [(0, 1), (1, -1), (2, 1), (3, -1)] {
            assert_eq!(s.coeff(e).unwrap(), q(c));
        }
        assert!(s.coeff(4).is_err());
    }

    #[test]
    fn square_is_exact() {
        let s = binom_expand(2, 5);
        assert!(!s.is_truncated());
        assert_eq!(s.coeff(1).unwrap(), q(2));
        assert_eq!(s.coeff(7).unwrap(), q(0));
    }

    #[test]
    fn second_summand_expansion() {
        // (-z + x)^{-1} = -z^{-1} - z^{-2} x - z^{-3} x^2 + ...
        for z in [2i64, 3, -5] {
            let s = binom_expand_at(&q(-z), -1, 2);
            let zr = q(z);
            assert_eq!(s.coeff(0).unwrap(), -zr.pow(-1));
            assert_eq!(s.coeff(1).unwrap(), -zr.pow(-2));
            assert_eq!(s.coeff(2).unwrap(), -zr.pow(-3));
        }
    }

    #[test]
    fn residue_picks_minus_one() {
        let s = TruncatedLaurent::polynomial(-2, vec![q(7), q(5), q(3)]);
        assert_eq!(s.residue().unwrap(), q(5));
        assert!(s.derivative().residue().unwrap().is_zero());
    }

    #[test]
    fn residue_above_order_is_an_error() {
        let s = TruncatedLaurent::new(-5, vec![q(1), q(2)], -4, true);
        assert!(matches!(s.residue(), Err(Error::Truncation { .. })));
    }

    #[test]
    fn products() {
        let p = binom_expand(1, 1).truncated_multiply(&binom_expand(-1, 3));
        assert_eq!(p.coeff(0).unwrap(), q(1));
        for e in 1..=3 {
            assert!(p.coeff(e).unwrap().is_zero());
        }
        assert!(p.is_truncated());
        let m = TruncatedLaurent::monomial(q(1), -2).truncated_multiply(&TruncatedLaurent::monomial(q(1), 3));
        assert_eq!(m, TruncatedLaurent::monomial(q(1), 1));
    }

    #[test]
    fn vector_times_vector_is_rejected() {
        let v = Series::Vector(TruncatedLaurent::zero());
        assert!(v.multiply(&v).is_err());
        let s = Series::Scalar(binom_expand(-1, 2));
        assert!(s.multiply(&v).unwrap().is_truncated());
    }

    proptest! {
        #[test]
        fn binomial_inverse_pairs(r in -6i64..=6, k in 0i64..=12) {
            let p = binom_expand(r, k).truncated_multiply(&binom_expand(-r, k));
            prop_assert_eq!(p.coeff(0).unwrap(), q(1));
            for e in 1..=k {
                prop_assert!(p.coeff(e).unwrap().is_zero());
            }
        }

        #[test]
        fn derivative_has_no_residue(low in -6i64..3, cs in prop::collection::vec(-9i64..=9, 0..8), trunc in any::<bool>()) {
            let n = cs.len() as i64;
            let s = TruncatedLaurent::new(low, cs.into_iter().map(q).collect(), (low + n + 2).max(0), trunc);
            prop_assert!(s.derivative().coeff(-1).unwrap().is_zero());
        }
    }
}
