//! `Ω♦_{m,n}`: vacuum functionals on which `L_r(0) - L_l(0)` acts by `n - m`,
//! computed as an eigenspace and, independently, as the annihilator of the
//! projected `O'_{n,m}` relations.

use crate::exact::{Ambient, BasisKey, DualFunctional, GradedVector, Provenance, Rational, SubspaceAtCutoff};
use crate::voa::Voa;
use crate::zhu::{shift_relation, vacuum_space_mn, DualActions, VacuumSpace};
use crate::Result;
use std::sync::Arc;

pub struct DiamondSpace {
    pub m: i64,
    pub n: i64,
    pub cutoff: u32,
    /// Coordinates of the eigenspace basis.
    pub eigen: SubspaceAtCutoff,
    /// Coordinates of the annihilator basis.
    pub annihilator: SubspaceAtCutoff,
}

impl DiamondSpace {
    pub fn agree(&self) -> Result<bool> {
        self.eigen.same_span(&self.annihilator)
    }

    pub fn dim(&self) -> usize {
        self.eigen.rank()
    }

    pub fn basis(&self) -> Result<Vec<DualFunctional>> {
        self.eigen
            .rows()
            .into_iter()
            .map(|c| DualFunctional::new(self.cutoff, c))
            .collect()
    }
}

/// Coefficient vectors `c` with `sum_i c_i g_i = 0` on weights `<= cutoff`.
fn null_combinations(voa: &Voa, g: &[DualFunctional], cutoff: u32) -> Result<Vec<Vec<Rational>>> {
    let k = g.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let ambient = Arc::new(Ambient::new(vec![k as u32]));
    let mut rows = Vec::new();
    for w in voa.keys_up_to(cutoff) {
        let wv = GradedVector::basis(w);
        let row = GradedVector::from_terms(
            g.iter()
                .enumerate()
                .map(|(i, f)| (BasisKey::new(0, i as u32), f.pair_vanishing_above(&wv))),
        );
        rows.push(row);
    }
    let s = SubspaceAtCutoff::echelonize(rows.iter(), ambient)?;
    Ok(s.annihilator()
        .into_iter()
        .map(|f| (0..k).map(|i| f.coords().coeff(&BasisKey::new(0, i as u32))).collect())
        .collect())
}

/// Both computations of `Ω♦_{m,n}` at cutoff `D`, with vacuum conditions
/// imposed for `v` of weight `<= v_bound`. The eigenvalue equation is read on
/// weights `< D`, where `(L(-1)+L(0))w` stays inside the truncation.
pub fn vacuum_diamond(voa: &Voa, m: i64, n: i64, d: u32, v_bound: u32) -> Result<DiamondSpace> {
    let vs: VacuumSpace = vacuum_space_mn(voa, m, n, d, v_bound)?;
    let ambient = voa.ambient(d)?;
    let prov = |family: &str| Provenance {
        family: format!("{family}_{m},{n}"),
        cutoff: d,
        generator_bound: v_bound,
        margin: 0,
        generators: 0,
    };
    let basis = vs.basis();
    let acts = DualActions::new(voa, m, n);
    let inner = d.saturating_sub(1);
    let mut gaps = Vec::with_capacity(basis.len());
    for f in &basis {
        let (l, r) = acts.zero_modes(f, inner)?;
        let mut g = r;
        g.add_scaled(&l, &-Rational::ONE);
        g.add_scaled(&f.restrict(inner), &Rational::from_int(m - n));
        gaps.push(g);
    }
    let mut eigen = SubspaceAtCutoff::new(ambient.clone(), prov("diamond-eigen"));
    if d > 0 {
        for c in null_combinations(voa, &gaps, inner)? {
            let mut f = DualFunctional::zero(d);
            for (fi, ci) in basis.iter().zip(&c) {
                f.add_scaled(fi, ci);
            }
            eigen.insert(f.coords())?;
        }
    } else {
        for f in &basis {
            eigen.insert(f.coords())?;
        }
    }
    let mut constraints = vs.from_span.clone();
    if d > 0 {
        for w in voa.keys_up_to(d - 1) {
            constraints.insert(&shift_relation(voa, &GradedVector::basis(w), m - n)?)?;
        }
    }
    let mut annihilator = SubspaceAtCutoff::new(ambient, prov("diamond-annihilator"));
    for f in constraints.annihilator() {
        annihilator.insert(f.coords())?;
    }
    Ok(DiamondSpace {
        m,
        n,
        cutoff: d,
        eigen,
        annihilator,
    })
}

/// Whether the pieces are linearly independent: the rank of their union is
/// the sum of their ranks.
pub fn pieces_are_independent(pieces: &[DiamondSpace]) -> Result<bool> {
    let Some(first) = pieces.first() else { return Ok(true) };
    let mut all = SubspaceAtCutoff::new(first.eigen.ambient().clone(), Provenance::default());
    let mut total = 0;
    for p in pieces {
        total += p.eigen.rank();
        for r in p.eigen.rows() {
            all.insert(&r)?;
        }
    }
    Ok(all.rank() == total)
}
