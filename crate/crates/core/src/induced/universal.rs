//! The maps `F_{n,m}(v,u) = Res_x x^{m-n-1} Y(x^{L(0)} v, x) psi(u)` out of the
//! induced module, for `psi` a map from an `A_m(V)`-module into `Omega_m` of
//! the adjoint module.

use crate::exact::{GradedVector, Rational, SubspaceAtCutoff};
use crate::voa::Voa;
use crate::zhu::{bar_star_mn, bar_star_upper, bracket_star, dot_action, omega_n};
use crate::{Error, Result};

/// `F_{n,m}(v, x) = sum over homogeneous parts of v_{wt v + m - n - 1} x`.
pub fn f_nm(voa: &Voa, v: &GradedVector, x: &GradedVector, m: i64, n: i64) -> Result<GradedVector> {
    let mut out = GradedVector::zero();
    for (wt, part) in v.homogeneous_parts() {
        out.add_scaled(&voa.mode_apply(&part, wt as i64 + m - n - 1, x)?, &Rational::ONE);
    }
    Ok(out)
}

/// `psi` given by the images `psi(e_c)`, checked to lie in `Omega_m`.
pub struct UniversalMap<'a> {
    voa: &'a Voa,
    m: i64,
    images: Vec<GradedVector>,
}

impl<'a> UniversalMap<'a> {
    /// Fails with a precondition error when some image is not in the
    /// computed `Omega_m` at cutoff `d` (conditions from `v` of weight `<= bound`).
    pub fn new(voa: &'a Voa, m: i64, images: Vec<GradedVector>, d: u32, bound: u32) -> Result<Self> {
        let omega: SubspaceAtCutoff = omega_n(voa, m, d, bound)?;
        for x in &images {
            if !omega.contains(x)? {
                return Err(Error::Precondition(format!(
                    "{} is not in Omega_{m}",
                    voa.format_vector(x)
                )));
            }
        }
        Ok(UniversalMap { voa, m, images })
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn psi(&self, c: usize) -> &GradedVector {
        &self.images[c]
    }

    /// `F_{n,m}(v, e_c)`.
    pub fn f(&self, v: &GradedVector, c: usize, n: i64) -> Result<GradedVector> {
        f_nm(self.voa, v, &self.images[c], self.m, n)
    }

    /// `psi~` on the degree-`n` element `sum_c parts[c] ⊗ e_c`; zero in
    /// negative degree.
    pub fn psi_tilde(&self, n: i64, parts: &[GradedVector]) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        if n < 0 {
            return Ok(out);
        }
        for (c, a) in parts.iter().enumerate() {
            out.add_scaled(&self.f(a, c, n)?, &Rational::ONE);
        }
        Ok(out)
    }

    /// `u . F_{n,m}(v, e_c) - F_{n,m}(u *bar_m^n v, e_c)`.
    pub fn left_defect(&self, u: &GradedVector, v: &GradedVector, c: usize, n: i64) -> Result<GradedVector> {
        let lhs = dot_action(self.voa, u, &self.f(v, c, n)?)?;
        let rhs = self.f(&bar_star_upper(self.voa, u, v, self.m, n)?, c, n)?;
        Ok(&lhs - &rhs)
    }

    /// `F_{n,m}(s *bar_{m,n} v, e_c) - F_{n,m}(v, s . psi(e_c))`.
    pub fn balance_defect(&self, s: &GradedVector, v: &GradedVector, c: usize, n: i64) -> Result<GradedVector> {
        let lhs = self.f(&bar_star_mn(self.voa, s, v, self.m, n)?, c, n)?;
        let su = dot_action(self.voa, s, &self.images[c])?;
        let rhs = f_nm(self.voa, v, &su, self.m, n)?;
        Ok(&lhs - &rhs)
    }

    /// `u_k psi~(v ⊗ e_c) - psi~(u♦_k (v ⊗ e_c))` for `v ⊗ e_c` in degree `n`;
    /// `u` homogeneous.
    pub fn intertwining_defect(
        &self,
        u: &GradedVector,
        k: i64,
        v: &GradedVector,
        c: usize,
        n: i64,
    ) -> Result<GradedVector> {
        let lhs = self.voa.mode_apply(u, k, &self.f(v, c, n)?)?;
        let mut rhs = GradedVector::zero();
        for (wt, part) in u.homogeneous_parts() {
            let p = wt as i64 - k - 1;
            if n + p >= 0 {
                let moved = bracket_star(self.voa, &part, p, v, self.m, n)?;
                rhs.add_scaled(&self.f(&moved, c, n + p)?, &Rational::ONE);
            }
        }
        Ok(&lhs - &rhs)
    }
}
