use super::{GradedVector, Rational};
use crate::{Error, Result};

/// An element of the graded dual supported on weights `<= cutoff`, stored as
/// coordinates in the dual PBW basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualFunctional {
    cutoff: u32,
    coords: GradedVector,
}

impl DualFunctional {
    pub fn new(cutoff: u32, coords: GradedVector) -> Result<Self> {
        if let Some(w) = coords.max_weight() {
            if w > cutoff {
                return Err(Error::truncation("functional support", w as i64, cutoff as i64));
            }
        }
        Ok(DualFunctional { cutoff, coords })
    }

    pub(crate) fn from_coords(cutoff: u32, coords: GradedVector) -> Self {
        debug_assert!(coords.max_weight().is_none_or(|w| w <= cutoff));
        DualFunctional { cutoff, coords }
    }

    pub fn zero(cutoff: u32) -> Self {
        DualFunctional {
            cutoff,
            coords: GradedVector::zero(),
        }
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn coords(&self) -> &GradedVector {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    /// `<f, v>`. Fails when `v` has support above the cutoff: the value
    /// there is not known and is never assumed to be zero.
    pub fn pair(&self, v: &GradedVector) -> Result<Rational> {
        if let Some(w) = v.max_weight() {
            if w > self.cutoff {
                return Err(Error::truncation("pairing", w as i64, self.cutoff as i64));
            }
        }
        Ok(self.coords.dot(v))
    }

    /// `<f, v>` for `f` regarded as a graded-dual element vanishing on every
    /// weight above its cutoff. Use only where that vanishing is part of the
    /// model (vacuum spaces are sought among such functionals).
    pub fn pair_vanishing_above(&self, v: &GradedVector) -> Rational {
        self.coords.dot(v)
    }

    pub fn add_scaled(&mut self, other: &DualFunctional, c: &Rational) {
        self.cutoff = self.cutoff.max(other.cutoff);
        self.coords.add_scaled(&other.coords, c);
    }

    pub fn scaled(&self, c: &Rational) -> DualFunctional {
        DualFunctional {
            cutoff: self.cutoff,
            coords: self.coords.scaled(c),
        }
    }

    /// Restriction to weights `<= cutoff`.
    pub fn restrict(&self, cutoff: u32) -> DualFunctional {
        DualFunctional {
            cutoff: cutoff.min(self.cutoff),
            coords: self.coords.project(cutoff),
        }
    }
}
