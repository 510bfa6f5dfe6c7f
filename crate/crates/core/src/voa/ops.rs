use std::collections::BTreeMap;

use super::Voa;
use crate::exact::{binomial, inv_factorial, BasisKey, DualFunctional, GradedVector, Rational, TruncatedLaurent};
use crate::{Error, Result};

impl Voa {
    /// `Res_x x^e (1+x)^r Y(v,x) w = sum_j C(r,j) v_(e+j) w` for basis
    /// vectors. The sum is finite even for `r < 0`: `v_(k) w = 0` once
    /// `k >= wt v + wt w`.
    pub fn res_binom_basis(&self, v: BasisKey, w: BasisKey, r: i64, e: i64) -> Result<GradedVector> {
        self.res_binom_projected(v, w, r, e, None)
    }

    /// As [`Voa::res_binom_basis`], keeping only the components of weight
    /// `<= cutoff` (the others are never computed).
    pub fn res_binom_projected(
        &self,
        v: BasisKey,
        w: BasisKey,
        r: i64,
        e: i64,
        cutoff: Option<u32>,
    ) -> Result<GradedVector> {
        let top = v.weight as i64 + w.weight as i64 - 1 - e;
        let jmax = if r >= 0 { top.min(r) } else { top };
        // the term j has weight top - j
        let jmin = cutoff.map_or(0, |c| (top - c as i64).max(0));
        let mut out = GradedVector::zero();
        for j in jmin..=jmax {
            let b = binomial(r, j);
            if b.is_zero() {
                continue;
            }
            out.add_scaled(&*self.mode_basis(v, e + j, w)?, &b);
        }
        Ok(out)
    }

    /// Bilinear extension of a residue kernel depending on `wt v`: the sum
    /// over `(c, r, e)` in `kernel(wt v)` of `c Res_x x^e (1+x)^r Y(v,x) w`,
    /// taken on homogeneous components of `v`.
    pub fn kernel_product<F>(&self, v: &GradedVector, w: &GradedVector, kernel: F) -> Result<GradedVector>
    where
        F: Fn(i64) -> Vec<(Rational, i64, i64)>,
    {
        self.kernel_product_projected(v, w, kernel, None)
    }

    /// [`Voa::kernel_product`] projected to weights `<= cutoff`.
    pub fn kernel_product_projected<F>(
        &self,
        v: &GradedVector,
        w: &GradedVector,
        kernel: F,
        cutoff: Option<u32>,
    ) -> Result<GradedVector>
    where
        F: Fn(i64) -> Vec<(Rational, i64, i64)>,
    {
        let mut out = GradedVector::zero();
        let mut cache: BTreeMap<u32, Vec<(Rational, i64, i64)>> = BTreeMap::new();
        for (vk, vc) in v.terms() {
            let terms = cache.entry(vk.weight).or_insert_with(|| kernel(vk.weight as i64));
            for (wk, wc) in w.terms() {
                let s = vc * wc;
                for (c, r, e) in terms.iter() {
                    let piece = self.res_binom_projected(*vk, *wk, *r, *e, cutoff)?;
                    out.add_scaled(&piece, &(c * &s));
                }
            }
        }
        Ok(out)
    }

    /// `Y(v,x) w` with coefficients known up to `x^order`.
    pub fn vertex_series(
        &self,
        v: &GradedVector,
        w: &GradedVector,
        order: i64,
    ) -> Result<TruncatedLaurent<GradedVector>> {
        let lowest = -((v.max_weight().unwrap_or(0) + w.max_weight().unwrap_or(0)) as i64);
        let lowest = lowest.min(order);
        let mut coeffs = Vec::new();
        for e in lowest..=order {
            coeffs.push(self.mode_apply(v, -e - 1, w)?);
        }
        Ok(TruncatedLaurent::new(lowest, coeffs, order, true))
    }

    /// `L(k) w = omega_(k+1) w`.
    pub fn virasoro_mode(&self, k: i64, w: &GradedVector) -> Result<GradedVector> {
        self.mode_apply(&self.omega(), k + 1, w)
    }

    /// `L(1)^r v`.
    pub fn l1_power(&self, r: u32, v: &GradedVector) -> Result<GradedVector> {
        let mut x = v.clone();
        for _ in 0..r {
            if x.is_zero() {
                break;
            }
            x = self.virasoro_mode(1, &x)?;
        }
        Ok(x)
    }

    /// `[(r!)^{-1} L(1)^r v for r = 0, 1, ...]` up to the first zero term.
    /// Finite: `L(1)` lowers weight.
    pub fn l1_exponential_terms(&self, v: &GradedVector) -> Result<Vec<GradedVector>> {
        let mut out = Vec::new();
        let mut x = v.clone();
        let mut r = 0u32;
        while !x.is_zero() {
            out.push(x.scaled(&inv_factorial(r)));
            x = self.virasoro_mode(1, &x)?;
            r += 1;
        }
        Ok(out)
    }

    /// `e^{L(1)} (-1)^{L(0)} v`.
    pub fn theta(&self, v: &GradedVector) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (wt, part) in v.homogeneous_parts() {
            let signed = part.scaled(&Rational::sign_pow(wt as i64));
            for t in self.l1_exponential_terms(&signed)? {
                out.add_scaled(&t, &Rational::ONE);
            }
        }
        Ok(out)
    }

    /// The vector `X_e(v, w)` with `<Y*(v,x) f, w> = sum_e <f, X_e(v,w)> x^e`,
    /// namely `sum_i (-1)^{wt v} / i! (L(1)^i v)_(e - 1 - i + 2 wt v) w` for
    /// homogeneous `v` of weight `wt_v` given by its `L(1)`-exponential terms.
    /// It is homogeneous of weight `wt w - wt v - e`.
    pub fn dual_pairing_vector(
        &self,
        l1_terms: &[GradedVector],
        wt_v: i64,
        e: i64,
        w: BasisKey,
    ) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        let wv = GradedVector::basis(w);
        let sign = Rational::sign_pow(wt_v);
        for (i, t) in l1_terms.iter().enumerate() {
            let k = e - 1 - i as i64 + 2 * wt_v;
            out.add_scaled(&self.mode_apply(t, k, &wv)?, &sign);
        }
        Ok(out)
    }

    /// Coefficient of `x^e` in `Y*(v,x) f`, as a functional on weights
    /// `<= out_cutoff`. Every pairing must fall within the support of `f`.
    pub fn dual_vertex_coefficient(
        &self,
        v: &GradedVector,
        e: i64,
        f: &DualFunctional,
        out_cutoff: u32,
    ) -> Result<DualFunctional> {
        let mut coords = GradedVector::zero();
        let parts: Vec<(i64, Vec<GradedVector>)> = v
            .homogeneous_parts()
            .into_iter()
            .map(|(wt, p)| Ok((wt as i64, self.l1_exponential_terms(&p)?)))
            .collect::<Result<_>>()?;
        for w in self.keys_up_to(out_cutoff) {
            let mut val = Rational::ZERO;
            for (wt, terms) in &parts {
                if w.weight as i64 - wt - e < 0 {
                    continue;
                }
                let x = self.dual_pairing_vector(terms, *wt, e, w)?;
                val += &f.pair(&x)?;
            }
            coords.add_term(w, &val);
        }
        DualFunctional::new(out_cutoff, coords)
    }

    /// `Res_x x^m Y^{[z0]}(v,x)` for homogeneous `v`, through
    /// `sum_r (-z0)^r / r! Res_x x^m (1 - z0 x)^{2 wt v - m - 2 - r} Y_E(L(1)^r v, x)`.
    ///
    /// `coefficient(u, k)` returns `Res_x x^k Y_E(u, x)` applied to the target
    /// for homogeneous `u`, and `max_mode(wt u)` bounds the `k` with a possibly
    /// nonzero value.
    pub fn deformed_mode_with<T, F, B>(
        &self,
        v: &GradedVector,
        m: i64,
        z0: &Rational,
        max_mode: B,
        mut coefficient: F,
    ) -> Result<T>
    where
        T: crate::exact::Coefficient,
        F: FnMut(&GradedVector, i64) -> Result<T>,
        B: Fn(i64) -> i64,
    {
        let wt = match (v.min_weight(), v.max_weight()) {
            (Some(a), Some(b)) if a == b => a as i64,
            (None, None) => return Ok(T::zero()),
            _ => return Err(Error::Precondition("deformed modes need a homogeneous vector".into())),
        };
        let mut out = T::zero();
        let mz = -z0;
        for (r, u) in self.l1_exponential_terms(v)?.into_iter().enumerate() {
            let r = r as i64;
            let pr = mz.pow(r);
            if pr.is_zero() {
                continue;
            }
            let expo = 2 * wt - m - 2 - r;
            let wt_u = wt - r;
            let jtop = max_mode(wt_u) - m;
            let jtop = if expo >= 0 { jtop.min(expo) } else { jtop };
            for j in 0..=jtop.max(-1) {
                let c = &(&binomial(expo, j) * &mz.pow(j)) * &pr;
                if c.is_zero() {
                    continue;
                }
                let val = coefficient(&u, m + j)?;
                out.add_scaled(&val, &c);
            }
        }
        Ok(out)
    }

    /// `Res_x x^m Y^{[z0]}(v,x) w` on the adjoint module.
    pub fn deformed_mode_coefficient(
        &self,
        v: &GradedVector,
        m: i64,
        z0: &Rational,
        w: &GradedVector,
    ) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (_, part) in v.homogeneous_parts() {
            let ww = w.max_weight().unwrap_or(0) as i64;
            let r = self.deformed_mode_with(&part, m, z0, |wu| wu + ww - 1, |u, k| self.mode_apply(u, k, w))?;
            out.add_scaled(&r, &Rational::ONE);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn creation_property() {
        let v = Voa::free_boson(6);
        let h = v.h().unwrap();
        let s = v.vertex_series(&h, &v.vacuum(), 1).unwrap();
        assert_eq!(s.coeff(0).unwrap(), h);
        assert_eq!(s.coeff(1).unwrap(), v.monomial(&[2]).unwrap());
        assert!(s.coeff(-1).unwrap().is_zero());
        let one = v.vertex_series(&v.vacuum(), &h, 3).unwrap();
        assert_eq!(one.coeff(0).unwrap(), h);
        for e in [-2, -1, 1, 2, 3] {
            assert!(one.coeff(e).unwrap().is_zero());
        }
        let vir = Voa::virasoro(Rational::new(1, 2), 6);
        let om = vir.omega();
        let s = vir.vertex_series(&om, &vir.vacuum(), 0).unwrap();
        assert_eq!(s.coeff(0).unwrap(), om);
    }

    #[test]
    fn theta_values() {
        let v = Voa::free_boson(6);
        let h = v.h().unwrap();
        assert_eq!(v.theta(&h).unwrap(), -&h);
        assert_eq!(v.theta(&v.omega()).unwrap(), v.omega());
        assert_eq!(v.theta(&v.vacuum()).unwrap(), v.vacuum());
        let vir = Voa::virasoro(Rational::new(1, 2), 6);
        assert_eq!(vir.theta(&vir.omega()).unwrap(), vir.omega());
    }

    #[test]
    fn l1_kills_omega() {
        for v in [Voa::free_boson(5), Voa::virasoro(Rational::new(1, 2), 5)] {
            assert!(v.virasoro_mode(1, &v.omega()).unwrap().is_zero());
            let c = v.central_charge().clone();
            assert_eq!(
                v.virasoro_mode(2, &v.omega()).unwrap(),
                v.vacuum().scaled(&(&c / &q(2)))
            );
        }
    }

    #[test]
    fn dual_vertex_of_vacuum_is_constant() {
        let v = Voa::free_boson(6);
        let f = DualFunctional::new(
            3,
            GradedVector::from_terms(
                v.keys_up_to(3)
                    .into_iter()
                    .enumerate()
                    .map(|(i, k)| (k, q(i as i64 + 1))),
            ),
        )
        .unwrap();
        let c0 = v.dual_vertex_coefficient(&v.vacuum(), 0, &f, 3).unwrap();
        assert_eq!(c0, f);
        for e in [-2, -1, 1, 2] {
            assert!(v.dual_vertex_coefficient(&v.vacuum(), e, &f, 3).unwrap().is_zero());
        }
    }

    #[test]
    fn dual_vertex_of_omega_is_transpose_of_virasoro() {
        // <L*(k) f, u> = <f, L(-k) u> with L*(k) the coefficient of x^{-k-2}
        for v in [Voa::free_boson(8), Voa::virasoro(Rational::new(1, 2), 8)] {
            let f = DualFunctional::new(
                5,
                GradedVector::from_terms(
                    v.keys_up_to(5)
                        .into_iter()
                        .enumerate()
                        .map(|(i, k)| (k, q(2 * i as i64 - 3))),
                ),
            )
            .unwrap();
            for k in [-1i64, 0, 1, 2] {
                let out = (5 - k).clamp(0, 5) as u32;
                let g = v.dual_vertex_coefficient(&v.omega(), -k - 2, &f, out).unwrap();
                for u in v.keys_up_to(out) {
                    let lu = v.virasoro_mode(-k, &GradedVector::basis(u)).unwrap();
                    assert_eq!(g.pair(&GradedVector::basis(u)).unwrap(), f.pair(&lu).unwrap());
                }
            }
        }
    }

    #[test]
    fn dual_vertex_of_h_by_hand() {
        // e^{xL(1)} (-x^{-2})^{L(0)} h = -x^{-2} h, so <Y*(h,x)f, w> = -sum_k <f, h_k w> x^{k-1}
        let v = Voa::free_boson(6);
        let h = v.h().unwrap();
        let f = DualFunctional::new(
            4,
            GradedVector::from_terms(
                v.keys_up_to(4)
                    .into_iter()
                    .map(|k| (k, q(k.index as i64 + k.weight as i64))),
            ),
        )
        .unwrap();
        for e in -2..=2i64 {
            let out = (5 + e).clamp(0, 4) as u32;
            let g = v.dual_vertex_coefficient(&h, e, &f, out).unwrap();
            for w in v.keys_up_to(out) {
                let hw = v.mode_apply(&h, e + 1, &GradedVector::basis(w)).unwrap();
                assert_eq!(g.pair(&GradedVector::basis(w)).unwrap(), -&f.pair(&hw).unwrap());
            }
        }
    }

    #[test]
    fn deformation_with_zero_parameter_is_the_mode() {
        let v = Voa::free_boson(8);
        for vk in v.keys_up_to(3) {
            let vv = GradedVector::basis(vk);
            for wk in v.keys_up_to(2) {
                let w = GradedVector::basis(wk);
                for m in -3..=3 {
                    assert_eq!(
                        v.deformed_mode_coefficient(&vv, m, &Rational::ZERO, &w).unwrap(),
                        v.mode_apply(&vv, m, &w).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn deformation_by_substitution() {
        // Y^{[z0]}(h,x) = (1 + z0 x)^{-2} Y(h, x/(1 + z0 x)) since L(1) h = 0, so
        // Res_x x^m Y^{[z0]}(h,x) = sum_k h_k Res_x x^{m-k-1} (1 + z0 x)^{k-1}
        //                         = sum_k C(k-1, k-m) z0^{k-m} h_k.
        let v = Voa::free_boson(8);
        let h = v.h().unwrap();
        for z0 in [q(1), q(-1), Rational::new(2, 3)] {
            for w in [v.vacuum(), h.clone(), v.monomial(&[2, 1]).unwrap()] {
                for m in -2..=2i64 {
                    let mut expect = GradedVector::zero();
                    let ww = w.max_weight().unwrap() as i64;
                    for k in m..=ww {
                        let c = &binomial(k - 1, k - m) * &z0.pow(k - m);
                        expect.add_scaled(&v.mode_apply(&h, k, &w).unwrap(), &c);
                    }
                    assert_eq!(v.deformed_mode_coefficient(&h, m, &z0, &w).unwrap(), expect);
                }
            }
        }
    }
}
