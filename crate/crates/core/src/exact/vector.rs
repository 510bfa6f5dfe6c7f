use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::Rational;

/// Position of a PBW basis vector: its conformal weight and its index within
/// the weight piece. The derived order (weight first, then index) is the
/// canonical pivot order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct BasisKey {
    pub weight: u32,
    pub index: u32,
}

impl BasisKey {
    pub const VACUUM: BasisKey = BasisKey { weight: 0, index: 0 };

    pub fn new(weight: u32, index: u32) -> Self {
        BasisKey { weight, index }
    }
}

/// A finitely supported vector in a weight-graded space with a PBW basis.
///
/// Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedVector {
    terms: BTreeMap<BasisKey, Rational>,
}

impl GradedVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: BasisKey) -> Self {
        Self::term(key, Rational::ONE)
    }

    pub fn term(key: BasisKey, c: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(key, &c);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisKey, Rational)>>(terms: I) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &BasisKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&BasisKey, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl DoubleEndedIterator<Item = &BasisKey> + '_ {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: BasisKey, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &GradedVector, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(*k, &(v * c));
        }
    }

    pub fn scaled(&self, c: &Rational) -> GradedVector {
        if c.is_zero() {
            return Self::zero();
        }
        GradedVector {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|k| k.weight)
    }

    pub fn min_weight(&self) -> Option<u32> {
        self.terms.keys().next().map(|k| k.weight)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_weight() == self.max_weight()
    }

    /// Splits into homogeneous components, keyed by weight.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, GradedVector> {
        let mut out: BTreeMap<u32, GradedVector> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(k.weight).or_default().terms.insert(*k, c.clone());
        }
        out
    }

    pub fn component(&self, weight: u32) -> GradedVector {
        GradedVector {
            terms: self
                .terms
                .range(BasisKey::new(weight, 0)..=BasisKey::new(weight, u32::MAX))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Projection onto weights `<= cutoff`.
    pub fn project(&self, cutoff: u32) -> GradedVector {
        GradedVector {
            terms: self
                .terms
                .range(..=BasisKey::new(cutoff, u32::MAX))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Euclidean-style pairing of coordinates (used with dual bases).
    pub fn dot(&self, other: &GradedVector) -> Rational {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Rational::ZERO;
        for (k, c) in &small.terms {
            if let Some(d) = large.terms.get(k) {
                acc.add_mul(c, d);
            }
        }
        acc
    }
}

impl Add for &GradedVector {
    type Output = GradedVector;
    fn add(self, rhs: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::ONE);
        out
    }
}

impl Sub for &GradedVector {
    type Output = GradedVector;
    fn sub(self, rhs: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::ONE);
        out
    }
}

impl Neg for &GradedVector {
    type Output = GradedVector;
    fn neg(self) -> GradedVector {
        self.scaled(&-Rational::ONE)
    }
}

impl fmt::Debug for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})[{}:{}]", k.weight, k.index)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(w: u32, i: u32) -> BasisKey {
        BasisKey::new(w, i)
    }

    #[test]
    fn zero_terms_are_dropped() {
        let mut v = GradedVector::basis(k(1, 0));
        v.add_term(k(1, 0), &Rational::from_int(-1));
        assert!(v.is_zero());
    }

    #[test]
    fn parts_and_projection() {
        let v = GradedVector::from_terms([
            (k(0, 0), Rational::ONE),
            (k(2, 1), Rational::from_int(3)),
            (k(2, 0), Rational::from_int(2)),
            (k(5, 0), Rational::from_int(-1)),
        ]);
        assert_eq!(v.homogeneous_parts().len(), 3);
        assert_eq!(v.component(2).len(), 2);
        assert_eq!(v.project(2).max_weight(), Some(2));
        assert_eq!(v.max_weight(), Some(5));
    }
}
