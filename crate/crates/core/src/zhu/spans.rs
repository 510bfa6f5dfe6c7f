//! Spans of the relation subspaces `O_n`, `O^dagger_{n,m}`, `O'_{n,m}` inside
//! the truncation `V_{<= D+M}`.

use rayon::prelude::*;

use super::products::{circ_m_n, shift_relation};
use crate::exact::{BasisKey, GradedVector, Provenance, SubspaceAtCutoff};
use crate::voa::Voa;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanKind {
    /// `O_n`: `(L(-1)+L(0)) w` and `v o_n w`.
    On { n: i64 },
    /// `O^dagger_{n,m}`: `v o_m^n w`.
    ODagger { n: i64, m: i64 },
    /// `O'_{n,m} = O^dagger_{n,m} + (L(-1)+L(0)+m-n) W`.
    OPrime { n: i64, m: i64 },
    /// `(L(-1)+L(0)+m-n) W` alone.
    ShiftOnly { n: i64, m: i64 },
}

impl SpanKind {
    pub fn label(&self) -> String {
        match self {
            SpanKind::On { n } => format!("O_{n}"),
            SpanKind::ODagger { n, m } => format!("Odagger_{n},{m}"),
            SpanKind::OPrime { n, m } => format!("Oprime_{n},{m}"),
            SpanKind::ShiftOnly { n, m } => format!("shift_{n},{m}"),
        }
    }

    /// `(m, n)` of the circle product, if any.
    fn circle(&self) -> Option<(i64, i64)> {
        match *self {
            SpanKind::On { n } => Some((n, n)),
            SpanKind::ODagger { n, m } | SpanKind::OPrime { n, m } => Some((m, n)),
            SpanKind::ShiftOnly { .. } => None,
        }
    }

    /// The constant `s` of the relation `(L(-1)+L(0)+s) w`, if present.
    fn shift(&self) -> Option<i64> {
        match *self {
            SpanKind::On { .. } => Some(0),
            SpanKind::OPrime { n, m } | SpanKind::ShiftOnly { n, m } => Some(m - n),
            SpanKind::ODagger { .. } => None,
        }
    }

    /// With negative `n` the quotient is zero by convention: the span is
    /// everything.
    fn is_everything(&self) -> bool {
        match *self {
            SpanKind::On { n } => n < 0,
            SpanKind::ODagger { n, .. } | SpanKind::OPrime { n, .. } => n < 0,
            SpanKind::ShiftOnly { .. } => false,
        }
    }
}

/// A spanning element together with the data that produced it.
#[derive(Clone, Debug)]
pub struct Generator {
    pub label: String,
    pub vector: GradedVector,
}

/// Every spanning element whose support is guaranteed to lie in weights
/// `<= top`: relation rows `(L(-1)+L(0)+s) w` with `wt w < top`, then
/// circle products of basis pairs `v != 1` with `wt v + wt w + m + n + 1 <= top`.
pub fn span_generators(voa: &Voa, kind: SpanKind, top: u32) -> Result<Vec<Generator>> {
    if top > voa.max_weight() {
        return Err(Error::truncation("span ambient", top as i64, voa.max_weight() as i64));
    }
    let mut out = Vec::new();
    if let Some(s) = kind.shift() {
        for w in voa.keys_up_to(top.saturating_sub(1)) {
            let v = shift_relation(voa, &GradedVector::basis(w), s)?;
            if !v.is_zero() {
                out.push(Generator {
                    label: format!("(L(-1)+L(0)+{s}) {}", voa.label(w)),
                    vector: v,
                });
            }
        }
    }
    if let Some((m, n)) = kind.circle() {
        let keys = voa.keys_up_to(top);
        let pairs: Vec<(BasisKey, BasisKey)> = keys
            .iter()
            .filter(|v| **v != BasisKey::VACUUM)
            .flat_map(|&v| keys.iter().map(move |&w| (v, w)))
            .filter(|(v, w)| (v.weight + w.weight) as i64 + m + n < top as i64)
            .collect();
        let vectors: Vec<Result<GradedVector>> = pairs
            .par_iter()
            .map(|(v, w)| circ_m_n(voa, &GradedVector::basis(*v), &GradedVector::basis(*w), m, n))
            .collect();
        for ((v, w), r) in pairs.into_iter().zip(vectors) {
            let x = r?;
            if x.max_weight().is_some_and(|t| t > top) {
                return Err(Error::Precondition(format!(
                    "generator {} o {} escapes weight {top}",
                    voa.label(v),
                    voa.label(w)
                )));
            }
            if !x.is_zero() {
                out.push(Generator {
                    label: format!("{} o_{m}^{n} {}", voa.label(v), voa.label(w)),
                    vector: x,
                });
            }
        }
    }
    Ok(out)
}

/// The span of `kind` in the ambient `V_{<= D+M}`, built from the complete
/// generator list of [`span_generators`].
pub fn build_span(voa: &Voa, kind: SpanKind, d: u32, margin: u32) -> Result<SubspaceAtCutoff> {
    let top = d + margin;
    let ambient = voa.ambient(top)?;
    let provenance = Provenance {
        family: kind.label(),
        cutoff: d,
        generator_bound: top,
        margin,
        generators: 0,
    };
    let mut span = SubspaceAtCutoff::new(ambient.clone(), provenance);
    if kind.is_everything() {
        for k in ambient.keys() {
            span.insert(&GradedVector::basis(k))?;
        }
        return Ok(span);
    }
    let mut gens = span_generators(voa, kind, top)?;
    // generators of low top weight first keeps the intermediate rows sparse
    gens.sort_by_key(|g| (g.vector.max_weight(), g.vector.len()));
    for g in &gens {
        span.insert(&g.vector)?;
    }
    span.provenance_mut().generators = gens.len();
    Ok(span)
}

/// Result of a one-sided membership test with margin escalation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipVerdict {
    Member {
        margin: u32,
    },
    /// Not a member at any margin up to the ceiling.
    NotFoundUpTo {
        margin: u32,
    },
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipVerdict::Member { .. })
    }
}

/// Spans of one kind at a fixed `D` and growing margins, built on demand.
pub struct SpanLadder<'a> {
    voa: &'a Voa,
    kind: SpanKind,
    d: u32,
    margins: Vec<u32>,
    spans: Vec<Option<SubspaceAtCutoff>>,
}

impl<'a> SpanLadder<'a> {
    /// Margins `start, start+step, ...` up to `ceiling`, clipped to the
    /// instance cutoff.
    pub fn new(voa: &'a Voa, kind: SpanKind, d: u32, start: u32, step: u32, ceiling: u32) -> Self {
        let mut margins = Vec::new();
        let mut m = start;
        while m <= ceiling && d + m <= voa.max_weight() {
            margins.push(m);
            if step == 0 {
                break;
            }
            m += step;
        }
        let spans = vec![None; margins.len()];
        SpanLadder {
            voa,
            kind,
            d,
            margins,
            spans,
        }
    }

    pub fn span(&mut self, level: usize) -> Result<&SubspaceAtCutoff> {
        if self.spans[level].is_none() {
            self.spans[level] = Some(build_span(self.voa, self.kind, self.d, self.margins[level])?);
        }
        Ok(self.spans[level].as_ref().unwrap())
    }

    pub fn first(&mut self) -> Result<&SubspaceAtCutoff> {
        if self.margins.is_empty() {
            return Err(Error::truncation(
                "span margin",
                self.d as i64,
                self.voa.max_weight() as i64,
            ));
        }
        self.span(0)
    }

    /// Tests membership at increasing margins until found or the ceiling.
    pub fn member(&mut self, v: &GradedVector) -> Result<MembershipVerdict> {
        let mut last = 0;
        for level in 0..self.margins.len() {
            last = self.margins[level];
            if self.span(level)?.contains(v)? {
                return Ok(MembershipVerdict::Member { margin: last });
            }
        }
        Ok(MembershipVerdict::NotFoundUpTo { margin: last })
    }
}

/// The quotient `V_{<= D+M} / span`, read in weights `<= D` through normal
/// forms: a basis is given by the non-pivot keys.
pub struct QuotientView<'a> {
    span: &'a SubspaceAtCutoff,
    d: u32,
}

impl<'a> QuotientView<'a> {
    pub fn new(span: &'a SubspaceAtCutoff, d: u32) -> Self {
        QuotientView { span, d }
    }

    pub fn span(&self) -> &SubspaceAtCutoff {
        self.span
    }

    pub fn cutoff(&self) -> u32 {
        self.d
    }

    /// `dim (V_{<= D} + S) / S` for the computed span `S`: an upper bound for
    /// the dimension of the image of `V_{<= D}` in the true quotient, since
    /// `S` under-approximates the relation space.
    pub fn dim_upper_bound(&self) -> Result<usize> {
        let ambient = self.span.ambient().clone();
        let mut image = SubspaceAtCutoff::new(ambient.clone(), Provenance::default());
        for k in ambient.keys().filter(|k| k.weight <= self.d) {
            image.insert(&self.span.normal_form(&GradedVector::basis(k))?)?;
        }
        Ok(image.rank())
    }

    pub fn reduce(&self, v: &GradedVector) -> Result<GradedVector> {
        self.span.normal_form(v)
    }

    pub fn is_zero(&self, v: &GradedVector) -> Result<bool> {
        self.span.contains(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    #[test]
    fn o0_contains_the_shift_of_omega() {
        let voa = Voa::free_boson(8);
        let span = build_span(&voa, SpanKind::On { n: 0 }, 4, 4).unwrap();
        let x = shift_relation(&voa, &voa.omega(), 0).unwrap();
        assert!(span.contains(&x).unwrap());
        let h = voa.h().unwrap();
        assert!(span
            .contains(&super::super::products::circ_n(&voa, &h, &h, 0).unwrap())
            .unwrap());
        assert!(!span.contains(&voa.vacuum()).unwrap());
    }

    #[test]
    fn inclusions_between_spans() {
        for voa in [Voa::free_boson(8), Voa::virasoro(Rational::new(1, 2), 8)] {
            for m in 0..=1 {
                let s0 = build_span(&voa, SpanKind::ODagger { n: 0, m }, 4, 4).unwrap();
                let s1 = build_span(&voa, SpanKind::ODagger { n: 1, m }, 4, 4).unwrap();
                let s2 = build_span(&voa, SpanKind::ODagger { n: 2, m }, 4, 4).unwrap();
                assert!(s0.contains_subspace(&s1).unwrap());
                assert!(s1.contains_subspace(&s2).unwrap());
            }
            for n in 0..=2 {
                let a = build_span(&voa, SpanKind::On { n }, 4, 4).unwrap();
                let b = build_span(&voa, SpanKind::OPrime { n, m: n }, 4, 4).unwrap();
                assert!(a.same_span(&b).unwrap());
            }
        }
    }

    #[test]
    fn negative_level_is_everything() {
        let voa = Voa::free_boson(6);
        let s = build_span(&voa, SpanKind::OPrime { n: -1, m: 0 }, 3, 2).unwrap();
        assert_eq!(s.codim(), 0);
    }

    #[test]
    fn a0_of_heisenberg_is_polynomial_in_h() {
        // A_0(M(1)) = C[h]: weights <= 4 reach the polynomials of degree <= 4
        let voa = Voa::free_boson(10);
        let span = build_span(&voa, SpanKind::On { n: 0 }, 4, 6).unwrap();
        let q = QuotientView::new(&span, 4);
        assert_eq!(q.dim_upper_bound().unwrap(), 5);
        let x = voa.monomial(&[2, 1]).unwrap();
        let r = q.reduce(&x).unwrap();
        assert_eq!(q.reduce(&r).unwrap(), r);
        assert!(q.is_zero(&(&x - &r)).unwrap());
    }

    #[test]
    fn ladder_finds_members() {
        let voa = Voa::free_boson(10);
        let mut ladder = SpanLadder::new(&voa, SpanKind::On { n: 0 }, 3, 1, 2, 7);
        let x = shift_relation(&voa, &voa.omega(), 0).unwrap();
        assert!(ladder.member(&x).unwrap().is_member());
        assert_eq!(
            ladder.member(&voa.vacuum()).unwrap(),
            MembershipVerdict::NotFoundUpTo { margin: 7 }
        );
    }
}
