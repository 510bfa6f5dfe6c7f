//! Finite-dimensional `A_m(V)`-modules and the induced module
//! `A♦_{□,m}(V) ⊗_{A_m(V)} U`, cut at weight `D`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::family::GradedQuotientFamily;
use crate::exact::{Ambient, BasisKey, GradedVector, Provenance, Rational, SubspaceAtCutoff};
use crate::voa::Voa;
use crate::zhu::{bar_star_mn, dot_action, omega_n, span_generators, star_n, SpanKind};
use crate::{Error, Result};

/// Square matrices acting on column vectors.
pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(k: usize) -> Matrix {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { Rational::ONE } else { Rational::ZERO })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let k = a.len();
    let mut out = vec![vec![Rational::ZERO; k]; k];
    for i in 0..k {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..k {
                out[i][j].add_mul(&a[i][l], &b[l][j]);
            }
        }
    }
    out
}

fn mat_add_scaled(acc: &mut Matrix, b: &Matrix, c: &Rational) {
    for (ra, rb) in acc.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            x.add_mul(y, c);
        }
    }
}

/// A module for `A_m(V)` given by matrices for the basis vectors of `V` of
/// weight `<= corpus`. Optionally realized inside `V` (`vectors[i]` is the
/// image of the `i`-th basis vector).
#[derive(Clone, Debug)]
pub struct FiniteAmModule {
    pub m: i64,
    pub dim: usize,
    pub corpus: u32,
    actions: BTreeMap<BasisKey, Matrix>,
    pub vectors: Option<Vec<GradedVector>>,
}

impl FiniteAmModule {
    /// `Omega_m(V)` in weights `<= D` under `v . w = v_{wt v - 1} w`.
    pub fn from_omega(voa: &Voa, m: i64, d: u32, bound: u32, corpus: u32) -> Result<Self> {
        let omega = omega_n(voa, m, d, bound)?;
        let basis = omega.rows();
        // stored row order equals `basis` order, so coordinates line up
        let span = SubspaceAtCutoff::echelonize(basis.iter(), voa.ambient(d)?)?;
        let k = basis.len();
        let mut actions = BTreeMap::new();
        for s in voa.keys_up_to(corpus) {
            let sv = GradedVector::basis(s);
            let mut mat = vec![vec![Rational::ZERO; k]; k];
            for (j, b) in basis.iter().enumerate() {
                let img = dot_action(voa, &sv, b)?;
                let coords = span.member(&img)?.coords.ok_or_else(|| {
                    Error::Precondition(format!("{} . {} leaves Omega_{m}", voa.label(s), voa.format_vector(b)))
                })?;
                for (i, c) in coords.into_iter().enumerate() {
                    mat[i][j] = c;
                }
            }
            actions.insert(s, mat);
        }
        Ok(FiniteAmModule {
            m,
            dim: k,
            corpus,
            actions,
            vectors: Some(basis),
        })
    }

    /// The one-dimensional module of `A_0(V)` on which a vector acts by its
    /// vacuum coefficient; every vector of positive weight acts by zero.
    pub fn trivial(voa: &Voa, corpus: u32) -> Self {
        let actions = voa
            .keys_up_to(corpus)
            .into_iter()
            .map(|s| {
                let c = if s == BasisKey::VACUUM {
                    Rational::ONE
                } else {
                    Rational::ZERO
                };
                (s, vec![vec![c]])
            })
            .collect();
        FiniteAmModule {
            m: 0,
            dim: 1,
            corpus,
            actions,
            vectors: None,
        }
    }

    /// The matrix of `v`, which must be supported on corpus keys.
    pub fn action(&self, v: &GradedVector) -> Result<Matrix> {
        let mut out = vec![vec![Rational::ZERO; self.dim]; self.dim];
        for (k, c) in v.terms() {
            let mat = self
                .actions
                .get(k)
                .ok_or_else(|| Error::truncation("module corpus", k.weight as i64, self.corpus as i64))?;
            mat_add_scaled(&mut out, mat, c);
        }
        Ok(out)
    }

    /// Checks that `O_m` generators inside the corpus act by zero and that
    /// `(a *_m b)` acts as `a` after `b`. Returns the number of checks and
    /// the first failure.
    pub fn check_relations(&self, voa: &Voa) -> Result<(usize, Option<String>)> {
        let mut checked = 0;
        for g in span_generators(voa, SpanKind::On { n: self.m }, self.corpus)? {
            checked += 1;
            if self.action(&g.vector)?.iter().flatten().any(|x| !x.is_zero()) {
                return Ok((checked, Some(format!("{} does not act by zero", g.label))));
            }
        }
        let keys = voa.keys_up_to(self.corpus);
        for &a in &keys {
            for &b in &keys {
                let (av, bv) = (GradedVector::basis(a), GradedVector::basis(b));
                let prod = star_n(voa, &av, &bv, self.m)?;
                if prod.max_weight().is_some_and(|w| w > self.corpus) {
                    continue;
                }
                checked += 1;
                if self.action(&prod)? != mat_mul(&self.action(&av)?, &self.action(&bv)?) {
                    return Ok((
                        checked,
                        Some(format!("{} *_{} {} acts wrongly", voa.label(a), self.m, voa.label(b))),
                    ));
                }
            }
        }
        Ok((checked, None))
    }
}

/// `V ⊗ U` truncated at weight `N`: the key `(w, i)` of copy `c` becomes
/// `(w, i + c * dim V_w)`.
pub struct TensorAmbient {
    base: Arc<Ambient>,
    copies: usize,
    pub ambient: Arc<Ambient>,
}

impl TensorAmbient {
    pub fn new(base: Arc<Ambient>, copies: usize) -> Self {
        let dims = (0..=base.cutoff()).map(|w| base.dim_at(w) * copies as u32).collect();
        TensorAmbient {
            base,
            copies,
            ambient: Arc::new(Ambient::new(dims)),
        }
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    fn key(&self, k: BasisKey, c: usize) -> BasisKey {
        BasisKey::new(k.weight, k.index + c as u32 * self.base.dim_at(k.weight))
    }

    /// `v ⊗ e_c`.
    pub fn embed(&self, v: &GradedVector, c: usize) -> GradedVector {
        GradedVector::from_terms(v.terms().map(|(k, x)| (self.key(*k, c), x.clone())))
    }

    /// `sum_c v_c ⊗ e_c`.
    pub fn pack(&self, parts: &[GradedVector]) -> GradedVector {
        let mut out = GradedVector::zero();
        for (c, v) in parts.iter().enumerate() {
            out.add_scaled(&self.embed(v, c), &Rational::ONE);
        }
        out
    }

    /// Inverse of [`pack`](Self::pack).
    pub fn unpack(&self, x: &GradedVector) -> Vec<GradedVector> {
        let mut parts = vec![GradedVector::zero(); self.copies];
        for (k, v) in x.terms() {
            let d = self.base.dim_at(k.weight).max(1);
            let c = (k.index / d) as usize;
            parts[c].add_term(BasisKey::new(k.weight, k.index % d), v);
        }
        parts
    }
}

/// The degree pieces `A♦_{n,m}(V) ⊗ U` for `n = 0..=n_max`, each the
/// quotient of `V_{<= D+M} ⊗ U` by `O'_{n,m} ⊗ U` and the balancing
/// relations `(s *bar_{m,n} a) ⊗ u - a ⊗ (s . u)` for corpus `s`.
pub struct InducedModule<'f, 'a> {
    pub family: &'f GradedQuotientFamily<'a>,
    pub module: &'f FiniteAmModule,
    pub tensor: TensorAmbient,
    pieces: Vec<SubspaceAtCutoff>,
}

pub fn induce<'f, 'a>(
    family: &'f GradedQuotientFamily<'a>,
    module: &'f FiniteAmModule,
) -> Result<InducedModule<'f, 'a>> {
    let voa = family.voa();
    let m = family.m();
    if module.m != m {
        return Err(Error::Parameter(format!(
            "module is for A_{}, family has m = {m}",
            module.m
        )));
    }
    let top = family.cutoff() + family.margin();
    let tensor = TensorAmbient::new(voa.ambient(top)?, module.dim);
    let mut pieces = Vec::new();
    for n in 0..=family.n_max() {
        let span = family.piece(n)?.expect("nonnegative degree");
        let mut rel = SubspaceAtCutoff::new(
            tensor.ambient.clone(),
            Provenance {
                family: format!("induced_{n},{m}"),
                cutoff: family.cutoff(),
                generator_bound: top,
                margin: family.margin(),
                generators: 0,
            },
        );
        for r in span.rows() {
            for c in 0..module.dim {
                rel.insert(&tensor.embed(&r, c))?;
            }
        }
        // s *bar_{m,n} a has weight <= wt s + wt a + n + m
        let a_top = top as i64 - module.corpus as i64 - n - m;
        if a_top >= 0 {
            for s in voa.keys_up_to(module.corpus) {
                let sv = GradedVector::basis(s);
                let mat = module.action(&sv)?;
                for a in voa.keys_up_to(a_top as u32) {
                    let av = GradedVector::basis(a);
                    let left = bar_star_mn(voa, &sv, &av, m, n)?;
                    for c in 0..module.dim {
                        let mut x = tensor.embed(&left, c);
                        for (d, row) in mat.iter().enumerate() {
                            if !row[c].is_zero() {
                                x.add_scaled(&tensor.embed(&av, d), &-&row[c]);
                            }
                        }
                        rel.insert(&x)?;
                    }
                }
            }
        }
        pieces.push(rel);
    }
    Ok(InducedModule {
        family,
        module,
        tensor,
        pieces,
    })
}

impl InducedModule<'_, '_> {
    pub fn relations(&self, n: i64) -> Option<&SubspaceAtCutoff> {
        if n < 0 {
            None
        } else {
            self.pieces.get(n as usize)
        }
    }

    /// Upper bound for the dimension of the image of `V_{<= D} ⊗ U` in the
    /// degree-`n` piece.
    pub fn dim_upper_bound(&self, n: i64) -> Result<usize> {
        let Some(rel) = self.relations(n) else { return Ok(0) };
        let mut image = SubspaceAtCutoff::new(self.tensor.ambient.clone(), Provenance::default());
        let voa = self.family.voa();
        for k in voa.keys_up_to(self.family.cutoff()) {
            for c in 0..self.module.dim {
                image.insert(&rel.normal_form(&self.tensor.embed(&GradedVector::basis(k), c))?)?;
            }
        }
        Ok(image.rank())
    }

    /// Whether `x` (in `V ⊗ U`) vanishes in degree `n`; `false` only means
    /// not found at this margin.
    pub fn is_zero(&self, n: i64, x: &GradedVector) -> Result<bool> {
        match self.relations(n) {
            None => Ok(true),
            Some(rel) => rel.contains(x),
        }
    }

    /// `(s *bar_m^m 1) ⊗ e_c - 1 ⊗ (s . e_c)` vanishes in degree `m` for every
    /// corpus `s` and every `c`, and `1 ⊗ U` injects. Returns the first
    /// failure.
    pub fn check_degree_m(&self) -> Result<Option<String>> {
        let voa = self.family.voa();
        let m = self.family.m();
        let one = voa.vacuum();
        let mut image = SubspaceAtCutoff::new(self.tensor.ambient.clone(), Provenance::default());
        let rel = self
            .relations(m)
            .ok_or_else(|| Error::truncation("family degree", m, self.family.n_max()))?;
        for c in 0..self.module.dim {
            image.insert(&rel.normal_form(&self.tensor.embed(&one, c))?)?;
        }
        if image.rank() != self.module.dim {
            return Ok(Some(format!("1 ⊗ U has rank {} < {}", image.rank(), self.module.dim)));
        }
        for s in voa.keys_up_to(self.module.corpus) {
            let sv = GradedVector::basis(s);
            let left = crate::zhu::bar_star_upper(voa, &sv, &one, m, m)?;
            let mat = self.module.action(&sv)?;
            for c in 0..self.module.dim {
                let mut x = self.tensor.embed(&left, c);
                for (d, row) in mat.iter().enumerate() {
                    x.add_scaled(&self.tensor.embed(&one, d), &-&row[c]);
                }
                if !self.is_zero(m, &x)? {
                    return Ok(Some(format!("{} acts differently on 1 ⊗ e_{c}", voa.label(s))));
                }
            }
        }
        Ok(None)
    }
}
