//! The dual side. Functionals `f` on `V_{<= D}` are elements of the graded
//! dual vanishing above `D`; every pairing below reads `f` only on weights
//! `<= D` and treats the rest as zero by that definition, never by accident.
//!
//! `Y*(v,x) f` is read through `<Y*(v,x) f, w> = sum_e <f, X_e(v,w)> x^e`.
//! With `P(x) = x^{wt v+n} (x+1)^{wt v+m} <Y*(v,x) f, w>`, the vacuum
//! condition says `P` has no negative powers, and then
//!
//! * `<Y^R(v,x) f, w> = x^{-wt v-n} (1+x)^{-wt v-m} P(x)`,
//! * `<Y^L(v,x) f, w> = (-1+x)^{-wt v-n} x^{-wt v-m} P(x-1)`,
//!
//! with negative binomial powers expanded in nonnegative powers of `x`.

use std::collections::BTreeMap;

use super::products::circ_m_n_projected;
use crate::exact::{
    binom_expand, binom_expand_at, binomial, BasisKey, DualFunctional, GradedVector, Provenance, Rational,
    SubspaceAtCutoff, TruncatedLaurent,
};
use crate::voa::Voa;
use crate::{Error, Result};

/// The vectors `X_e(v,w)` of weight `<= cutoff`, keyed by `e`. `v` is
/// homogeneous of weight `wt` with `L(1)`-exponential terms `l1`.
fn pairing_vectors(
    voa: &Voa,
    l1: &[GradedVector],
    wt: i64,
    w: BasisKey,
    cutoff: u32,
) -> Result<BTreeMap<i64, GradedVector>> {
    let mut out = BTreeMap::new();
    // X_e has weight wt w - wt - e
    let top = w.weight as i64 - wt;
    for e in (top - cutoff as i64)..=top {
        let x = voa.dual_pairing_vector(l1, wt, e, w)?;
        if !x.is_zero() {
            out.insert(e, x);
        }
    }
    Ok(out)
}

/// `Q_t(v,w) = sum_s C(wt v + m, s) X_{t - wt v - n - s}(v,w)`, the
/// coefficient vectors of `x^{wt v+n} (x+1)^{wt v+m} Y*(v,x)`, projected to
/// weights `<= cutoff`.
pub fn regular_vectors(
    voa: &Voa,
    v: &GradedVector,
    w: BasisKey,
    m: i64,
    n: i64,
    cutoff: u32,
) -> Result<BTreeMap<i64, GradedVector>> {
    let mut out: BTreeMap<i64, GradedVector> = BTreeMap::new();
    for (wt, part) in v.homogeneous_parts() {
        let wt = wt as i64;
        let l1 = voa.l1_exponential_terms(&part)?;
        let xs = pairing_vectors(voa, &l1, wt, w, cutoff)?;
        for (e, x) in &xs {
            for s in 0..=(wt + m) {
                let t = e + wt + n + s;
                out.entry(t)
                    .or_insert_with(GradedVector::zero)
                    .add_scaled(x, &binomial(wt + m, s));
            }
        }
    }
    out.retain(|_, x| !x.is_zero());
    Ok(out)
}

/// Both computations of the functionals on `V_{<= D}` vanishing above `D`
/// that satisfy the vacuum condition for `(m, n)`.
#[derive(Clone, Debug)]
pub struct VacuumSpace {
    pub m: i64,
    pub n: i64,
    pub cutoff: u32,
    pub v_bound: u32,
    /// Projections of the generators `v o_m^n w`.
    pub from_span: SubspaceAtCutoff,
    /// Projections of the vectors `Q_t(v,w)`, `t < 0`.
    pub from_criterion: SubspaceAtCutoff,
}

impl VacuumSpace {
    /// Both constraint spaces coincide, hence so do their annihilators.
    pub fn agree(&self) -> Result<bool> {
        self.from_span.same_span(&self.from_criterion)
    }

    /// A functional lying in one annihilator but not the other.
    pub fn disagreement(&self) -> Result<Option<DualFunctional>> {
        for (a, b) in [
            (&self.from_span, &self.from_criterion),
            (&self.from_criterion, &self.from_span),
        ] {
            let rows = b.rows();
            for f in a.annihilator() {
                if rows.iter().any(|r| !f.pair_vanishing_above(r).is_zero()) {
                    return Ok(Some(f));
                }
            }
        }
        Ok(None)
    }

    /// Basis of the space, read from the span side.
    pub fn basis(&self) -> Vec<DualFunctional> {
        self.from_span.annihilator()
    }

    pub fn criterion_basis(&self) -> Vec<DualFunctional> {
        self.from_criterion.annihilator()
    }

    pub fn dim(&self) -> usize {
        self.from_span.codim()
    }

    pub fn contains(&self, f: &DualFunctional) -> bool {
        self.from_span
            .rows()
            .iter()
            .all(|r| f.pair_vanishing_above(r).is_zero())
    }
}

/// Computes the vacuum space for `(m, n)` at cutoff `D` from basis vectors
/// `v` of weight `<= v_bound` and all `w` whose constraints reach weights
/// `<= D`, namely `wt w <= D - n - 1`.
pub fn vacuum_space_mn(voa: &Voa, m: i64, n: i64, d: u32, v_bound: u32) -> Result<VacuumSpace> {
    if m < 0 || n < 0 {
        return Err(Error::Parameter(format!("m, n must be nonnegative, got m={m} n={n}")));
    }
    let ambient = voa.ambient(d)?;
    let prov = |family: &str| Provenance {
        family: format!("{family}_{m},{n}"),
        cutoff: d,
        generator_bound: v_bound,
        margin: 0,
        generators: 0,
    };
    let mut from_span = SubspaceAtCutoff::new(ambient.clone(), prov("vacuum-span"));
    let mut from_criterion = SubspaceAtCutoff::new(ambient, prov("vacuum-criterion"));
    let w_top = d as i64 - n - 1;
    if w_top >= 0 {
        let ws = voa.keys_up_to(w_top as u32);
        for v in voa.keys_up_to(v_bound) {
            let vv = GradedVector::basis(v);
            for &w in &ws {
                let wv = GradedVector::basis(w);
                if v != BasisKey::VACUUM {
                    from_span.insert(&circ_m_n_projected(voa, &vv, &wv, m, n, d)?)?;
                }
                for (t, q) in regular_vectors(voa, &vv, w, m, n, d)? {
                    if t < 0 {
                        from_criterion.insert(&q)?;
                    }
                }
            }
        }
    }
    Ok(VacuumSpace {
        m,
        n,
        cutoff: d,
        v_bound,
        from_span,
        from_criterion,
    })
}

/// Raises the bound on `v` from `start` by `step` until both computations
/// agree or `ceiling` is passed; returns the last attempt.
pub fn vacuum_space_with_retry(
    voa: &Voa,
    m: i64,
    n: i64,
    d: u32,
    start: u32,
    step: u32,
    ceiling: u32,
) -> Result<VacuumSpace> {
    let mut bound = start;
    loop {
        let s = vacuum_space_mn(voa, m, n, d, bound)?;
        if s.agree()? || bound + step.max(1) > ceiling {
            return Ok(s);
        }
        bound += step.max(1);
    }
}

/// Which of the two vertex operators on the dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The operators `Y^R`, `Y^L` on vacuum functionals for fixed `(m, n)`,
/// built from `Y*` alone.
pub struct DualActions<'a> {
    voa: &'a Voa,
    m: i64,
    n: i64,
}

impl<'a> DualActions<'a> {
    pub fn new(voa: &'a Voa, m: i64, n: i64) -> Self {
        DualActions { voa, m, n }
    }

    /// `<Y*(v,x) f, w>` for homogeneous `v`, exact.
    pub fn ystar_pairing(
        &self,
        v: &GradedVector,
        f: &DualFunctional,
        w: BasisKey,
    ) -> Result<TruncatedLaurent<Rational>> {
        let wt = homogeneous_weight(v)?;
        let l1 = self.voa.l1_exponential_terms(v)?;
        let xs = pairing_vectors(self.voa, &l1, wt, w, f.cutoff())?;
        let Some((&lo, _)) = xs.first_key_value() else {
            return Ok(TruncatedLaurent::zero());
        };
        let hi = *xs.last_key_value().unwrap().0;
        let mut coeffs = vec![Rational::ZERO; (hi - lo + 1) as usize];
        for (e, x) in &xs {
            coeffs[(e - lo) as usize] = f.pair(x)?;
        }
        Ok(TruncatedLaurent::polynomial(lo, coeffs))
    }

    /// `P(x) = x^{wt v+n} (x+1)^{wt v+m} <Y*(v,x) f, w>`; a precondition
    /// error unless it is a polynomial.
    pub fn regular_part(
        &self,
        v: &GradedVector,
        f: &DualFunctional,
        w: BasisKey,
    ) -> Result<TruncatedLaurent<Rational>> {
        let wt = homogeneous_weight(v)?;
        let y = self.ystar_pairing(v, f, w)?;
        let p = binom_expand(wt + self.m, wt + self.m)
            .truncated_multiply(&y)
            .shift(wt + self.n);
        if let Some((t, _)) = p.terms().next() {
            if t < 0 {
                return Err(Error::Precondition(format!(
                    "functional is not a vacuum for (m,n)=({},{}): x^{t} survives against {}",
                    self.m,
                    self.n,
                    self.voa.label(w)
                )));
            }
        }
        Ok(p)
    }

    /// `<Y^R(v,x) f, w>` known up to `x^order`.
    pub fn yr_pairing(
        &self,
        v: &GradedVector,
        f: &DualFunctional,
        w: BasisKey,
        order: i64,
    ) -> Result<TruncatedLaurent<Rational>> {
        let wt = homogeneous_weight(v)?;
        let p = self.regular_part(v, f, w)?;
        let shift = -wt - self.n;
        let inv = binom_expand(-wt - self.m, (order - shift).max(0));
        let s = inv.truncated_multiply(&p).shift(shift);
        debug_assert!(s.terms().next().is_none_or(|(e, _)| e >= shift));
        Ok(s)
    }

    /// `<Y^L(v,x) f, w>` known up to `x^order`.
    pub fn yl_pairing(
        &self,
        v: &GradedVector,
        f: &DualFunctional,
        w: BasisKey,
        order: i64,
    ) -> Result<TruncatedLaurent<Rational>> {
        let wt = homogeneous_weight(v)?;
        let p = self.regular_part(v, f, w)?;
        // P(x - 1)
        let mut shifted = TruncatedLaurent::zero();
        for (t, c) in p.terms() {
            shifted = shifted.add(&binom_expand_at(&-Rational::ONE, t, t).scaled(c));
        }
        let shift = -wt - self.m;
        let inv = binom_expand_at(&-Rational::ONE, -wt - self.n, (order - shift).max(0));
        let s = inv.truncated_multiply(&shifted).shift(shift);
        debug_assert!(s.terms().next().is_none_or(|(e, _)| e >= shift));
        Ok(s)
    }

    fn series(
        &self,
        side: Side,
        v: &GradedVector,
        f: &DualFunctional,
        w: BasisKey,
        order: i64,
    ) -> Result<TruncatedLaurent<Rational>> {
        match side {
            Side::Right => self.yr_pairing(v, f, w, order),
            Side::Left => self.yl_pairing(v, f, w, order),
        }
    }

    /// `sum_r Res_x factor(r) <Y(u_r, x) f, w>` over the terms
    /// `u_r = L(1)^r v / r!` of each homogeneous part of `v`.
    fn residue_sum<F>(
        &self,
        side: Side,
        v: &GradedVector,
        f: &DualFunctional,
        w: BasisKey,
        factor: F,
    ) -> Result<Rational>
    where
        F: Fn(i64, i64) -> TruncatedLaurent<Rational>,
    {
        let mut total = Rational::ZERO;
        for (wt, part) in v.homogeneous_parts() {
            let wt = wt as i64;
            for (r, u) in self.voa.l1_exponential_terms(&part)?.iter().enumerate() {
                let fac = factor(wt, r as i64);
                // the series starts at x^{-wt u - n} or x^{-wt u - m}; read it
                // far enough to determine the residue
                let need = -1 - fac.lowest();
                let s = self.series(side, u, f, w, need)?;
                total += &fac.truncated_multiply(&s).residue()?;
            }
        }
        Ok(total)
    }

    fn functional<F>(&self, out_cutoff: u32, mut value: F) -> Result<DualFunctional>
    where
        F: FnMut(BasisKey) -> Result<Rational>,
    {
        let mut coords = GradedVector::zero();
        for w in self.voa.keys_up_to(out_cutoff) {
            coords.add_term(w, &value(w)?);
        }
        DualFunctional::new(out_cutoff, coords)
    }

    /// Series order used for the binomial factors.
    fn factor_order(&self, wt: i64) -> i64 {
        wt + self.m + self.n + 4
    }

    /// `v bullet_R f = Res_x x^{wt v-1} (1+x)^{wt v-1} Y^R(e^{(1+x)^{-1} L(1)} v, x) f`,
    /// evaluated on weights `<= out_cutoff`.
    pub fn bullet_right(&self, v: &GradedVector, f: &DualFunctional, out_cutoff: u32) -> Result<DualFunctional> {
        self.bullet_right_shifted(v, 0, f, out_cutoff)
    }

    /// `sum_r 1/r! Res_x x^{wt v-1+p} (1+x)^{wt v-1-p-r} Y^R(L(1)^r v, x) f`.
    pub fn bullet_right_shifted(
        &self,
        v: &GradedVector,
        p: i64,
        f: &DualFunctional,
        out_cutoff: u32,
    ) -> Result<DualFunctional> {
        self.functional(out_cutoff, |w| {
            self.residue_sum(Side::Right, v, f, w, |wt, r| {
                binom_expand(wt - 1 - p - r, self.factor_order(wt)).shift(wt - 1 + p)
            })
        })
    }

    /// `v bullet_L f = Res_x x^{wt v-1} (1-x)^{wt v-1} Y^L(e^{(-1+x)^{-1} L(1)} v, x) f`,
    /// evaluated on weights `<= out_cutoff`; its support may exceed that of `f`.
    pub fn bullet_left(&self, v: &GradedVector, f: &DualFunctional, out_cutoff: u32) -> Result<DualFunctional> {
        self.functional(out_cutoff, |w| {
            self.residue_sum(Side::Left, v, f, w, |wt, r| {
                // (1-x)^{wt-1} (-1+x)^{-r} = (-1)^{wt-1} (-1+x)^{wt-1-r}
                binom_expand_at(&-Rational::ONE, wt - 1 - r, self.factor_order(wt))
                    .scaled(&Rational::sign_pow(wt - 1))
                    .shift(wt - 1)
            })
        })
    }

    pub fn bullet(&self, side: Side, v: &GradedVector, f: &DualFunctional, out_cutoff: u32) -> Result<DualFunctional> {
        match side {
            Side::Right => self.bullet_right(v, f, out_cutoff),
            Side::Left => self.bullet_left(v, f, out_cutoff),
        }
    }

    /// `(Res_x x(1-x) Y^L(omega,x) f, Res_x x(1+x) Y^R(omega,x) f)`.
    pub fn zero_modes(&self, f: &DualFunctional, out_cutoff: u32) -> Result<(DualFunctional, DualFunctional)> {
        let om = self.voa.omega();
        let left = self.functional(out_cutoff, |w| {
            let s = self.yl_pairing(&om, f, w, -2)?;
            TruncatedLaurent::polynomial(1, vec![Rational::ONE, -Rational::ONE])
                .truncated_multiply(&s)
                .residue()
        })?;
        let right = self.functional(out_cutoff, |w| {
            let s = self.yr_pairing(&om, f, w, -2)?;
            TruncatedLaurent::polynomial(1, vec![Rational::ONE, Rational::ONE])
                .truncated_multiply(&s)
                .residue()
        })?;
        Ok((left, right))
    }

    /// Checks the vacuum condition of `f` against all basis `v` of weight
    /// `<= v_bound` and all `w` of weight `<= w_bound`.
    pub fn is_vacuum(&self, f: &DualFunctional, v_bound: u32, w_bound: u32) -> Result<bool> {
        for v in self.voa.keys_up_to(v_bound) {
            for w in self.voa.keys_up_to(w_bound) {
                match self.regular_part(&GradedVector::basis(v), f, w) {
                    Ok(_) => {}
                    Err(Error::Precondition(_)) => return Ok(false),
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(true)
    }
}

fn homogeneous_weight(v: &GradedVector) -> Result<i64> {
    match (v.min_weight(), v.max_weight()) {
        (Some(a), Some(b)) if a == b => Ok(a as i64),
        (None, None) => Ok(0),
        _ => Err(Error::Precondition("expected a homogeneous vector".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zhu::products::{bar_star_mn, bar_star_upper, bracket_star, shift_relation};

    fn dual_of(voa: &Voa, key: BasisKey, d: u32) -> DualFunctional {
        let _ = voa;
        DualFunctional::new(d, GradedVector::basis(key)).unwrap()
    }

    #[test]
    fn both_vacuum_computations_agree() {
        let voa = Voa::free_boson(14);
        for (m, n) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let s = vacuum_space_with_retry(&voa, m, n, 5, 5, 2, 7).unwrap();
            assert!(s.agree().unwrap(), "m={m} n={n}: {:?}", s.disagreement().unwrap());
            assert!(s.dim() > 0);
        }
    }

    #[test]
    fn dual_of_vacuum_is_a_vacuum() {
        let voa = Voa::free_boson(12);
        let f = dual_of(&voa, BasisKey::VACUUM, 4);
        let s = vacuum_space_mn(&voa, 0, 0, 4, 6).unwrap();
        assert!(s.contains(&f));
        let acts = DualActions::new(&voa, 0, 0);
        assert!(acts.is_vacuum(&f, 6, 4).unwrap());
    }

    #[test]
    fn monotone_in_n() {
        let voa = Voa::free_boson(12);
        let a = vacuum_space_mn(&voa, 0, 0, 5, 5).unwrap();
        let b = vacuum_space_mn(&voa, 0, 1, 5, 5).unwrap();
        for f in a.basis() {
            assert!(b.contains(&f));
        }
    }

    #[test]
    fn vacuum_vector_acts_trivially() {
        let voa = Voa::free_boson(12);
        let s = vacuum_space_mn(&voa, 1, 0, 4, 6).unwrap();
        let acts = DualActions::new(&voa, 1, 0);
        let one = voa.vacuum();
        for f in s.basis() {
            assert_eq!(acts.bullet_right(&one, &f, 4).unwrap(), f);
            assert_eq!(acts.bullet_left(&one, &f, 4).unwrap(), f);
            for w in voa.keys_up_to(4) {
                let r = acts.yr_pairing(&one, &f, w, 3).unwrap();
                assert_eq!(r.coeff(0).unwrap(), f.pair(&GradedVector::basis(w)).unwrap());
                for e in [-2, -1, 1, 2, 3] {
                    assert!(r.coeff(e).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn pairing_dualities_small() {
        let voa = Voa::free_boson(14);
        let mut nonzero = [0usize; 3];
        for (m, n) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let s = vacuum_space_mn(&voa, m, n, 5, 7).unwrap();
            let acts = DualActions::new(&voa, m, n);
            for f in s.basis() {
                for v in voa.keys_up_to(2) {
                    let v = GradedVector::basis(v);
                    let th = voa.theta(&v).unwrap();
                    let left = acts.bullet_left(&v, &f, 3).unwrap();
                    let right = acts.bullet_right(&v, &f, 3).unwrap();
                    for w in voa.keys_up_to(3) {
                        let wv = GradedVector::basis(w);
                        let l = f.pair_vanishing_above(&bar_star_mn(&voa, &v, &wv, m, n).unwrap());
                        assert_eq!(left.pair(&wv).unwrap(), l, "left m={m} n={n}");
                        nonzero[0] += !l.is_zero() as usize;
                        let r = f.pair_vanishing_above(&bar_star_upper(&voa, &th, &wv, m, n).unwrap());
                        assert_eq!(right.pair(&wv).unwrap(), r, "right m={m} n={n}");
                        nonzero[1] += !r.is_zero() as usize;
                        for p in -2..=2 {
                            let sh = acts.bullet_right_shifted(&v, p, &f, 3).unwrap();
                            let b = f.pair_vanishing_above(&bracket_star(&voa, &th, p, &wv, m, n).unwrap());
                            assert_eq!(sh.pair(&wv).unwrap(), b, "shift p={p} m={m} n={n}");
                            nonzero[2] += (!b.is_zero() && p != 0) as usize;
                        }
                    }
                }
            }
        }
        assert!(nonzero.iter().all(|&c| c > 3), "{nonzero:?}");
    }

    #[test]
    fn zero_mode_difference() {
        let voa = Voa::free_boson(12);
        for (m, n) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let s = vacuum_space_mn(&voa, m, n, 5, 7).unwrap();
            let acts = DualActions::new(&voa, m, n);
            for f in s.basis() {
                let (l, r) = acts.zero_modes(&f, 4).unwrap();
                for w in voa.keys_up_to(4) {
                    let wv = GradedVector::basis(w);
                    let lhs = &r.pair(&wv).unwrap() - &l.pair(&wv).unwrap();
                    let rhs = f.pair_vanishing_above(&shift_relation(&voa, &wv, 0).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
