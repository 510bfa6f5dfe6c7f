//! The graded family `A♦_{n,m}(V) = V / O'_{n,m}(V)`, `n = 0..=n_max`, with
//! every piece built at the same `(D, M)`. Pieces of negative degree are the
//! zero object.

use rayon::prelude::*;

use crate::exact::{GradedVector, SubspaceAtCutoff};
use crate::voa::{ModeModule, Voa, ZeroTest};
use crate::zhu::{bracket_star, build_span, SpanKind};
use crate::{Error, Result};

/// A homogeneous element of the family: a representative in degree `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Graded {
    pub degree: i64,
    pub rep: GradedVector,
}

pub struct GradedQuotientFamily<'a> {
    voa: &'a Voa,
    m: i64,
    d: u32,
    margin: u32,
    pieces: Vec<SubspaceAtCutoff>,
}

impl<'a> GradedQuotientFamily<'a> {
    pub fn new(voa: &'a Voa, m: i64, n_max: i64, d: u32, margin: u32) -> Result<Self> {
        if m < 0 || n_max < 0 {
            return Err(Error::Parameter(format!("need m, n_max >= 0, got m={m} n_max={n_max}")));
        }
        let pieces = (0..=n_max)
            .into_par_iter()
            .map(|n| build_span(voa, SpanKind::OPrime { n, m }, d, margin))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedQuotientFamily {
            voa,
            m,
            d,
            margin,
            pieces,
        })
    }

    pub fn voa(&self) -> &'a Voa {
        self.voa
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n_max(&self) -> i64 {
        self.pieces.len() as i64 - 1
    }

    pub fn cutoff(&self) -> u32 {
        self.d
    }

    pub fn margin(&self) -> u32 {
        self.margin
    }

    /// The `O'_{n,m}` span; `None` for negative `n`, where the piece is zero.
    pub fn piece(&self, n: i64) -> Result<Option<&SubspaceAtCutoff>> {
        if n < 0 {
            return Ok(None);
        }
        self.pieces
            .get(n as usize)
            .map(Some)
            .ok_or_else(|| Error::truncation("family degree", n, self.n_max()))
    }

    /// Whether `rep` represents zero in degree `n`. Non-membership is only
    /// `Unknown`: the span under-approximates `O'_{n,m}`.
    pub fn zero_test(&self, n: i64, rep: &GradedVector) -> Result<ZeroTest> {
        match self.piece(n)? {
            None => Ok(ZeroTest::Zero),
            Some(s) => Ok(if rep.is_zero() || s.contains(rep)? {
                ZeroTest::Zero
            } else {
                ZeroTest::Unknown
            }),
        }
    }

    /// `v[p] . (w + O'_{n,m}) = v[p] *bar_m^n w + O'_{n+p,m}` for homogeneous `v`;
    /// `None` when the target degree is negative.
    pub fn vp_action(&self, v: &GradedVector, p: i64, x: &Graded) -> Result<Option<Graded>> {
        let target = x.degree + p;
        if target < 0 || x.degree < 0 {
            return Ok(None);
        }
        let rep = bracket_star(self.voa, v, p, &x.rep, self.m, x.degree)?;
        Ok(Some(Graded { degree: target, rep }))
    }

    /// Applies `v[p]` to two representatives of one class and tests whether
    /// the images agree in the target piece.
    pub fn representative_independent(
        &self,
        v: &GradedVector,
        p: i64,
        a: &Graded,
        b: &GradedVector,
    ) -> Result<ZeroTest> {
        let other = Graded {
            degree: a.degree,
            rep: b.clone(),
        };
        match (self.vp_action(v, p, a)?, self.vp_action(v, p, &other)?) {
            (Some(x), Some(y)) => self.zero_test(x.degree, &(&x.rep - &y.rep)),
            _ => Ok(ZeroTest::Zero),
        }
    }
}

/// Elements of the direct sum: one representative per degree.
pub type FamilyElem = std::collections::BTreeMap<i64, GradedVector>;

/// `Y♦(u,x) = sum_p u[p] x^{p - wt u}` on the family, so `u_k` acts as
/// `u[wt u - k - 1]`.
pub struct YDiamond<'f, 'a> {
    pub family: &'f GradedQuotientFamily<'a>,
}

impl ModeModule for YDiamond<'_, '_> {
    type Elem = FamilyElem;

    fn mode(&self, u: &GradedVector, k: i64, x: &FamilyElem) -> Result<FamilyElem> {
        let mut out = FamilyElem::new();
        for (wt, part) in u.homogeneous_parts() {
            let p = wt as i64 - k - 1;
            for (&n, rep) in x {
                let g = Graded {
                    degree: n,
                    rep: rep.clone(),
                };
                if let Some(img) = self.family.vp_action(&part, p, &g)? {
                    out.entry(img.degree)
                        .or_insert_with(GradedVector::zero)
                        .add_scaled(&img.rep, &crate::exact::Rational::ONE);
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    fn combine(&self, terms: &[(crate::exact::Rational, FamilyElem)]) -> Result<FamilyElem> {
        let mut out = FamilyElem::new();
        for (c, x) in terms {
            for (&n, v) in x {
                out.entry(n).or_insert_with(GradedVector::zero).add_scaled(v, c);
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    fn zero_test(&self, x: &FamilyElem) -> Result<ZeroTest> {
        let mut verdict = ZeroTest::Zero;
        for (&n, v) in x {
            match self.family.zero_test(n, v) {
                Ok(ZeroTest::Zero) => {}
                Ok(t) => verdict = t,
                Err(Error::Truncation { .. }) => verdict = ZeroTest::Unknown,
                Err(e) => return Err(e),
            }
        }
        Ok(verdict)
    }

    fn describe(&self, x: &FamilyElem) -> String {
        let parts: Vec<String> = x
            .iter()
            .map(|(n, v)| format!("[{n}] {}", self.family.voa.format_vector(v)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn single(degree: i64, rep: GradedVector) -> FamilyElem {
    let mut x = FamilyElem::new();
    if !rep.is_zero() {
        x.insert(degree, rep);
    }
    x
}
