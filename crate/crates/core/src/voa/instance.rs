use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;

use super::basis::{Partition, PbwBasis};
use crate::exact::{binomial, Ambient, BasisKey, GradedVector, Rational};
use crate::{Error, Result};

/// Which vertex operator algebra an instance realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum VoaKind {
    /// Rank-one Heisenberg vertex operator algebra M(1), central charge 1.
    FreeBoson,
    /// Vacuum Verma module of the Virasoro algebra at central charge `c`.
    Virasoro,
}

impl VoaKind {
    pub fn name(self) -> &'static str {
        match self {
            VoaKind::FreeBoson => "heisenberg",
            VoaKind::Virasoro => "virasoro",
        }
    }
}

impl std::str::FromStr for VoaKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heisenberg" | "free-boson" | "freeboson" => Ok(VoaKind::FreeBoson),
            "virasoro" => Ok(VoaKind::Virasoro),
            _ => Err(Error::Usage(format!("unknown vertex algebra `{s}`"))),
        }
    }
}

type ModeKey = (BasisKey, i32, BasisKey);

/// A concrete vertex operator algebra on its PBW basis, truncated at
/// `max_weight`, with exact memoized mode action `v_(k) w`.
///
/// The basis monomials are `a_(p_1) ... a_(p_k) |0>` for one strong generator
/// `a` (`h = a(-1)|0>` or `omega = L(-2)|0>`). Modes of a monomial act by the
/// iterate formula
/// `(a_(p) u)_(q) w = sum_j (-1)^j C(p,j) [a_(p-j) u_(q+j) w - (-1)^p u_(p+q-j) a_(j) w]`,
/// which recurses on the length of the monomial.
pub struct Voa {
    kind: VoaKind,
    c: Rational,
    basis: PbwBasis,
    generator_cache: DashMap<(i32, BasisKey), Arc<GradedVector>>,
    mode_cache: DashMap<ModeKey, Arc<GradedVector>>,
}

impl fmt::Debug for Voa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Voa")
            .field("kind", &self.kind)
            .field("c", &self.c)
            .field("max_weight", &self.max_weight())
            .finish()
    }
}

impl Voa {
    pub fn new(kind: VoaKind, c: Rational, max_weight: u32) -> Result<Self> {
        if kind == VoaKind::FreeBoson && !c.is_one() {
            return Err(Error::Parameter("the Heisenberg instance has central charge 1".into()));
        }
        let min_part = match kind {
            VoaKind::FreeBoson => 1,
            VoaKind::Virasoro => 2,
        };
        Ok(Voa {
            kind,
            c,
            basis: PbwBasis::new(min_part, max_weight),
            generator_cache: DashMap::new(),
            mode_cache: DashMap::new(),
        })
    }

    pub fn free_boson(max_weight: u32) -> Self {
        Self::new(VoaKind::FreeBoson, Rational::ONE, max_weight).expect("valid parameters")
    }

    pub fn virasoro(c: Rational, max_weight: u32) -> Self {
        Self::new(VoaKind::Virasoro, c, max_weight).expect("valid parameters")
    }

    pub fn kind(&self) -> VoaKind {
        self.kind
    }

    pub fn central_charge(&self) -> &Rational {
        &self.c
    }

    pub fn max_weight(&self) -> u32 {
        self.basis.max_weight()
    }

    pub fn basis(&self) -> &PbwBasis {
        &self.basis
    }

    pub fn dim(&self, weight: u32) -> u32 {
        self.basis.dim(weight)
    }

    pub fn ambient(&self, cutoff: u32) -> Result<Arc<Ambient>> {
        self.check_weight(cutoff as i64, "ambient")?;
        Ok(Arc::new(Ambient::new(self.basis.dims(cutoff))))
    }

    pub fn keys_up_to(&self, weight: u32) -> Vec<BasisKey> {
        self.basis.keys_up_to(weight).collect()
    }

    pub fn cache_len(&self) -> usize {
        self.mode_cache.len() + self.generator_cache.len()
    }

    pub fn clear_cache(&self) {
        self.mode_cache.clear();
        self.generator_cache.clear();
    }

    /// Weight of the strong generator `a`.
    pub fn generator_weight(&self) -> u32 {
        match self.kind {
            VoaKind::FreeBoson => 1,
            VoaKind::Virasoro => 2,
        }
    }

    /// Mode index `p` with `a_(p)` the creation operator for the part `n`.
    fn creation_index(&self, n: u8) -> i64 {
        match self.kind {
            VoaKind::FreeBoson => -(n as i64),
            VoaKind::Virasoro => 1 - n as i64,
        }
    }

    pub fn vacuum(&self) -> GradedVector {
        GradedVector::basis(BasisKey::VACUUM)
    }

    /// Basis vector for a partition (mode numbers of the creation operators).
    pub fn monomial(&self, parts: &[u8]) -> Result<GradedVector> {
        let mut p = parts.to_vec();
        p.sort_unstable_by(|a, b| b.cmp(a));
        if p.iter().any(|&x| x < self.basis.min_part()) {
            return Err(Error::Parameter(format!("{parts:?} is not a PBW monomial")));
        }
        let w: u32 = p.iter().map(|&x| x as u32).sum();
        self.check_weight(w as i64, "monomial")?;
        Ok(GradedVector::basis(self.basis.key(&p).expect("enumerated")))
    }

    /// The weight-one Heisenberg vector `h = a(-1)|0>`.
    pub fn h(&self) -> Result<GradedVector> {
        match self.kind {
            VoaKind::FreeBoson => self.monomial(&[1]),
            VoaKind::Virasoro => Err(Error::Parameter("no weight-one vector in this instance".into())),
        }
    }

    /// The conformal vector.
    pub fn omega(&self) -> GradedVector {
        match self.kind {
            VoaKind::FreeBoson => self
                .monomial(&[1, 1])
                .expect("weight 2 enumerated")
                .scaled(&Rational::new(1, 2)),
            VoaKind::Virasoro => self.monomial(&[2]).expect("weight 2 enumerated"),
        }
    }

    /// Human-readable name of a basis vector.
    pub fn label(&self, key: BasisKey) -> String {
        let p = self.basis.partition(key);
        if p.is_empty() {
            return "|0>".into();
        }
        let sym = match self.kind {
            VoaKind::FreeBoson => "a",
            VoaKind::Virasoro => "L",
        };
        let mut out = String::new();
        let mut i = 0;
        while i < p.len() {
            let mut j = i;
            while j < p.len() && p[j] == p[i] {
                j += 1;
            }
            out.push_str(&format!("{sym}(-{})", p[i]));
            if j - i > 1 {
                out.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        out.push_str("|0>");
        out
    }

    pub fn format_vector(&self, v: &GradedVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in v.terms() {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&format!("({c}) {}", self.label(*k)));
        }
        out
    }

    pub(crate) fn check_weight(&self, w: i64, what: &str) -> Result<()> {
        if w > self.max_weight() as i64 {
            return Err(Error::truncation(what, w, self.max_weight() as i64));
        }
        Ok(())
    }

    /// `a_(k) w` for the strong generator `a` (`a(k)` resp. `L(k-1)`).
    pub fn generator_mode(&self, k: i64, w: &GradedVector) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (key, c) in w.terms() {
            let r = self.generator_basis(k, *key)?;
            out.add_scaled(&r, c);
        }
        Ok(out)
    }

    fn generator_basis(&self, k: i64, w: BasisKey) -> Result<Arc<GradedVector>> {
        let target = w.weight as i64 + self.generator_weight() as i64 - k - 1;
        if target < 0 {
            return Ok(Arc::new(GradedVector::zero()));
        }
        self.check_weight(target, "generator mode")?;
        match self.kind {
            VoaKind::FreeBoson => Ok(Arc::new(self.heisenberg_basis(k, w))),
            VoaKind::Virasoro => self.virasoro_basis(k - 1, w),
        }
    }

    fn heisenberg_basis(&self, k: i64, w: BasisKey) -> GradedVector {
        let p = self.basis.partition(w);
        match k.cmp(&0) {
            std::cmp::Ordering::Less => {
                let mut q: Partition = p.clone();
                let pos = q.iter().position(|&x| (x as i64) < -k).unwrap_or(q.len());
                q.insert(pos, (-k) as u8);
                GradedVector::basis(self.basis.key(&q).expect("weight checked"))
            }
            std::cmp::Ordering::Equal => GradedVector::zero(),
            std::cmp::Ordering::Greater => {
                let mult = p.iter().filter(|&&x| x as i64 == k).count() as i64;
                if mult == 0 {
                    return GradedVector::zero();
                }
                let mut q = p.clone();
                let pos = q.iter().position(|&x| x as i64 == k).expect("present");
                q.remove(pos);
                GradedVector::term(self.basis.key(&q).expect("lower weight"), Rational::from_int(mult * k))
            }
        }
    }

    /// `L(k) w` by moving `L(k)` through the leading creation operator.
    fn virasoro_basis(&self, k: i64, w: BasisKey) -> Result<Arc<GradedVector>> {
        if let Some(hit) = self.generator_cache.get(&(k as i32, w)) {
            return Ok(hit.clone());
        }
        let p = self.basis.partition(w).clone();
        let result = if p.is_empty() {
            if k >= -1 {
                GradedVector::zero()
            } else {
                GradedVector::basis(self.basis.key(&[(-k) as u8]).expect("weight checked"))
            }
        } else if -k >= p[0] as i64 {
            let mut q = p.clone();
            q.insert(0, (-k) as u8);
            GradedVector::basis(self.basis.key(&q).expect("weight checked"))
        } else {
            let n1 = p[0] as i64;
            let rest = self.basis.key(&p[1..]).expect("suffix");
            // L(k) L(-n1) Y = L(-n1) L(k) Y + (k + n1) L(k - n1) Y + central term
            let inner = self.virasoro_basis_checked(k, rest)?;
            let mut out = GradedVector::zero();
            for (key, c) in inner.terms() {
                out.add_scaled(&*self.virasoro_basis_checked(-n1, *key)?, c);
            }
            let lowered = self.virasoro_basis_checked(k - n1, rest)?;
            out.add_scaled(&lowered, &Rational::from_int(k + n1));
            if k == n1 {
                let central = &self.c * &Rational::new(k * k * k - k, 12);
                out.add_term(rest, &central);
            }
            out
        };
        let result = Arc::new(result);
        Ok(self.generator_cache.entry((k as i32, w)).or_insert(result).clone())
    }

    fn virasoro_basis_checked(&self, k: i64, w: BasisKey) -> Result<Arc<GradedVector>> {
        let target = w.weight as i64 - k;
        if target < 0 {
            return Ok(Arc::new(GradedVector::zero()));
        }
        self.check_weight(target, "Virasoro mode")?;
        self.virasoro_basis(k, w)
    }

    /// `v_(q) w` for basis vectors, memoized.
    pub fn mode_basis(&self, v: BasisKey, q: i64, w: BasisKey) -> Result<Arc<GradedVector>> {
        let target = v.weight as i64 + w.weight as i64 - q - 1;
        if target < 0 {
            return Ok(Arc::new(GradedVector::zero()));
        }
        self.check_weight(target, "mode action")?;
        if v == BasisKey::VACUUM {
            return Ok(Arc::new(if q == -1 {
                GradedVector::basis(w)
            } else {
                GradedVector::zero()
            }));
        }
        let key = (v, q as i32, w);
        if let Some(hit) = self.mode_cache.get(&key) {
            return Ok(hit.clone());
        }
        let result = Arc::new(self.iterate(v, q, w)?);
        Ok(self.mode_cache.entry(key).or_insert(result).clone())
    }

    fn iterate(&self, v: BasisKey, q: i64, w: BasisKey) -> Result<GradedVector> {
        let parts = self.basis.partition(v);
        let p = self.creation_index(parts[0]);
        let u = self.basis.key(&parts[1..]).expect("suffix");
        let wa = self.generator_weight() as i64;
        let ww = w.weight as i64;
        let wu = u.weight as i64;
        let sign_p = Rational::sign_pow(p);
        let mut out = GradedVector::zero();
        let w_vec = GradedVector::basis(w);
        // a_(p-j) u_(q+j) w: nonzero only while q + j <= wt u + wt w - 1
        for j in 0..=(wu + ww - 1 - q).max(-1) {
            let inner = self.mode_basis(u, q + j, w)?;
            if inner.is_zero() {
                continue;
            }
            let coeff = &Rational::sign_pow(j) * &binomial(p, j);
            let t = self.generator_mode(p - j, &inner)?;
            out.add_scaled(&t, &coeff);
        }
        // u_(p+q-j) a_(j) w: nonzero only while j <= wt a + wt w - 1
        for j in 0..=(wa + ww - 1) {
            let aw = self.generator_mode(j, &w_vec)?;
            if aw.is_zero() {
                continue;
            }
            let coeff = -&(&(&Rational::sign_pow(j) * &binomial(p, j)) * &sign_p);
            for (k, c) in aw.terms() {
                let t = self.mode_basis(u, p + q - j, *k)?;
                out.add_scaled(&t, &(&coeff * c));
            }
        }
        Ok(out)
    }

    /// `v_(k) w`, bilinear in `v` and `w`.
    pub fn mode_apply(&self, v: &GradedVector, k: i64, w: &GradedVector) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (vk, vc) in v.terms() {
            for (wk, wc) in w.terms() {
                let r = self.mode_basis(*vk, k, *wk)?;
                out.add_scaled(&r, &(vc * wc));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_small_modes() {
        let v = Voa::free_boson(6);
        let h = v.h().unwrap();
        assert!(v.mode_apply(&h, 0, &h).unwrap().is_zero());
        // [a(1), a(-1)] = 1 on the vacuum
        assert_eq!(v.mode_apply(&h, 1, &h).unwrap(), v.vacuum());
        let om = v.omega();
        assert_eq!(v.mode_apply(&om, 1, &h).unwrap(), h);
    }

    #[test]
    fn virasoro_small_modes() {
        let c = Rational::new(1, 2);
        let v = Voa::virasoro(c.clone(), 8);
        let om = v.omega();
        // L(2) omega = c/2 |0>
        assert_eq!(
            v.mode_apply(&om, 3, &om).unwrap(),
            v.vacuum().scaled(&(&c / &Rational::from_int(2)))
        );
        assert!(v.mode_apply(&om, 2, &om).unwrap().is_zero());
        assert_eq!(v.mode_apply(&om, 1, &om).unwrap(), om.scaled(&Rational::from_int(2)));
    }

    #[test]
    fn truncation_is_reported() {
        let v = Voa::free_boson(3);
        let h = v.h().unwrap();
        let hh = v.monomial(&[1, 1]).unwrap();
        assert!(matches!(v.mode_apply(&hh, -2, &h), Err(Error::Truncation { .. })));
    }

    #[test]
    fn labels() {
        let v = Voa::free_boson(4);
        let k = v.basis().key(&[2, 1, 1]).unwrap();
        assert_eq!(v.label(k), "a(-2)a(-1)^2|0>");
        assert_eq!(v.label(BasisKey::VACUUM), "|0>");
    }
}
