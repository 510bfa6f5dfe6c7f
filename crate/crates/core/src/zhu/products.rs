//! Bilinear products on the adjoint module, each a finite combination of
//! residues `Res_x x^e (1+x)^r Y(v,x) w` with `r` depending on `wt v`.

use crate::exact::{binomial, GradedVector, Rational};
use crate::voa::Voa;
use crate::{Error, Result};

fn one() -> Rational {
    Rational::ONE
}

/// `v *_n w`.
pub fn star_n(voa: &Voa, v: &GradedVector, w: &GradedVector, n: i64) -> Result<GradedVector> {
    voa.kernel_product(v, w, |wt| {
        (0..=n).map(|i| (binomial(-n - 1, i), wt + n, -n - 1 - i)).collect()
    })
}

/// `v o_n w`.
pub fn circ_n(voa: &Voa, v: &GradedVector, w: &GradedVector, n: i64) -> Result<GradedVector> {
    voa.kernel_product(v, w, |wt| vec![(one(), wt + n, -2 * n - 2)])
}

/// `v . w = v_(wt v - 1) w`.
pub fn dot_action(voa: &Voa, v: &GradedVector, w: &GradedVector) -> Result<GradedVector> {
    voa.kernel_product(v, w, |wt| vec![(one(), 0, wt - 1)])
}

/// `v o_m^n w`.
pub fn circ_m_n(voa: &Voa, v: &GradedVector, w: &GradedVector, m: i64, n: i64) -> Result<GradedVector> {
    voa.kernel_product(v, w, |wt| vec![(one(), wt + m, -m - n - 2)])
}

/// The components of `v o_m^n w` of weight `<= cutoff`.
pub fn circ_m_n_projected(
    voa: &Voa,
    v: &GradedVector,
    w: &GradedVector,
    m: i64,
    n: i64,
    cutoff: u32,
) -> Result<GradedVector> {
    voa.kernel_product_projected(v, w, |wt| vec![(one(), wt + m, -m - n - 2)], Some(cutoff))
}

/// `Res_z (1+z)^{wt v + m + s} z^{-(m+n+2+k)} Y(v,z) w` for `s <= k`.
pub fn o_dagger_general(
    voa: &Voa,
    v: &GradedVector,
    w: &GradedVector,
    m: i64,
    n: i64,
    s: i64,
    k: i64,
) -> Result<GradedVector> {
    if s < 0 || k < 0 || s > k {
        return Err(Error::Parameter(format!("need 0 <= s <= k, got s={s} k={k}")));
    }
    voa.kernel_product(v, w, |wt| vec![(one(), wt + m + s, -(m + n + 2 + k))])
}

/// The left product `v *bar_{m,n} w`.
pub fn bar_star_mn(voa: &Voa, v: &GradedVector, w: &GradedVector, m: i64, n: i64) -> Result<GradedVector> {
    voa.kernel_product(v, w, |wt| {
        (0..=m)
            .map(|i| {
                let c = &binomial(-n - 1, i) * &Rational::sign_pow(n + i);
                (c, wt + i - 1, -n - i - 1)
            })
            .collect()
    })
}

/// The right product `v *bar_m^n w`.
pub fn bar_star_upper(voa: &Voa, v: &GradedVector, w: &GradedVector, m: i64, n: i64) -> Result<GradedVector> {
    voa.kernel_product(v, w, |wt| {
        (0..=n).map(|i| (binomial(-m - 1, i), wt + m, -m - i - 1)).collect()
    })
}

/// The shifted product `u[p] *bar_m^n w`.
pub fn bracket_star(voa: &Voa, u: &GradedVector, p: i64, w: &GradedVector, m: i64, n: i64) -> Result<GradedVector> {
    voa.kernel_product(u, w, |wt| {
        (0..=(n + p.abs()))
            .map(|i| (binomial(-m - p - 1, i), wt + m, -(p + m + i + 1)))
            .collect()
    })
}

/// `Res_x (1+x)^{wt v - 1} Y(v,x) w`, the difference between the right and
/// left products.
pub fn left_right_gap(voa: &Voa, v: &GradedVector, w: &GradedVector) -> Result<GradedVector> {
    voa.kernel_product(v, w, |wt| vec![(one(), wt - 1, 0)])
}

/// `v bullet_(z0) w = Res_x x^{wt v-1} (1-z0 x)^{wt v-1} Y(e^{-z0 (1-z0 x)^{-1} L(1)} v, x) w`.
pub fn bullet_z0(voa: &Voa, v: &GradedVector, w: &GradedVector, z0: &Rational) -> Result<GradedVector> {
    let mut out = GradedVector::zero();
    for (wt, part) in v.homogeneous_parts() {
        let r = voa.deformed_mode_coefficient(&part, wt as i64 - 1, z0, w)?;
        out.add_scaled(&r, &Rational::ONE);
    }
    Ok(out)
}

/// `(L(-1) + L(0) + s) w`.
pub fn shift_relation(voa: &Voa, w: &GradedVector, s: i64) -> Result<GradedVector> {
    let mut out = voa.virasoro_mode(-1, w)?;
    for (wt, part) in w.homogeneous_parts() {
        out.add_scaled(&part, &Rational::from_int(wt as i64 + s));
    }
    Ok(out)
}
