use super::Voa;
use crate::exact::{binomial, GradedVector, Rational};
use crate::{Error, Result};

/// Outcome of asking whether an element vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTest {
    Zero,
    NonZero,
    /// Cannot be decided at the current cutoff.
    Unknown,
}

/// Anything carrying modes `u_k` for `u` in the vertex algebra.
pub trait ModeModule {
    type Elem: Clone;
    fn mode(&self, u: &GradedVector, k: i64, x: &Self::Elem) -> Result<Self::Elem>;
    /// `sum c_i x_i`; all `x_i` live in the same graded piece.
    fn combine(&self, terms: &[(Rational, Self::Elem)]) -> Result<Self::Elem>;
    fn zero_test(&self, x: &Self::Elem) -> Result<ZeroTest>;
    fn describe(&self, x: &Self::Elem) -> String;
}

/// The vertex algebra acting on itself.
pub struct AdjointModule<'a>(pub &'a Voa);

impl ModeModule for AdjointModule<'_> {
    type Elem = GradedVector;
    fn mode(&self, u: &GradedVector, k: i64, x: &GradedVector) -> Result<GradedVector> {
        self.0.mode_apply(u, k, x)
    }
    fn combine(&self, terms: &[(Rational, GradedVector)]) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (c, x) in terms {
            out.add_scaled(x, c);
        }
        Ok(out)
    }
    fn zero_test(&self, x: &GradedVector) -> Result<ZeroTest> {
        Ok(if x.is_zero() { ZeroTest::Zero } else { ZeroTest::NonZero })
    }
    fn describe(&self, x: &GradedVector) -> String {
        self.0.format_vector(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum AxiomVerdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct AxiomReport {
    pub verdict: AxiomVerdict,
    pub checked: usize,
    pub undecided: usize,
    /// First counterexample (or first undecided case).
    pub witness: Option<String>,
}

/// Checks `[u_p, v_q] x = sum_{i>=0} C(p,i) (u_i v)_{p+q-i} x` for all `p`,
/// `q` in the given ranges. `u`, `v` homogeneous; the sum over `i` stops at
/// `wt u + wt v - 1`, beyond which `u_i v = 0`.
pub fn weak_module_axiom_check<M: ModeModule>(
    module: &M,
    voa: &Voa,
    u: &GradedVector,
    v: &GradedVector,
    x: &M::Elem,
    p_range: std::ops::RangeInclusive<i64>,
    q_range: std::ops::RangeInclusive<i64>,
) -> AxiomReport {
    let mut checked = 0;
    let mut undecided = 0;
    let mut witness = None;
    let mut failed = false;
    let top = (u.max_weight().unwrap_or(0) + v.max_weight().unwrap_or(0)) as i64 - 1;
    for p in p_range {
        for q in q_range.clone() {
            let outcome = (|| -> Result<(ZeroTest, String)> {
                let a = module.mode(u, p, &module.mode(v, q, x)?)?;
                let b = module.mode(v, q, &module.mode(u, p, x)?)?;
                let mut terms = vec![(Rational::ONE, a), (-Rational::ONE, b)];
                for i in 0..=top.max(-1) {
                    let c = binomial(p, i);
                    if c.is_zero() {
                        continue;
                    }
                    let uv = voa.mode_apply(u, i, v)?;
                    if uv.is_zero() {
                        continue;
                    }
                    terms.push((-c, module.mode(&uv, p + q - i, x)?));
                }
                let d = module.combine(&terms)?;
                Ok((module.zero_test(&d)?, module.describe(&d)))
            })();
            checked += 1;
            match outcome {
                Ok((ZeroTest::Zero, _)) => {}
                Ok((ZeroTest::NonZero, d)) => {
                    if !failed {
                        witness = Some(format!("p={p} q={q}: difference {d}"));
                    }
                    failed = true;
                }
                Ok((ZeroTest::Unknown, d)) => {
                    undecided += 1;
                    if witness.is_none() {
                        witness = Some(format!("p={p} q={q}: undecided difference {d}"));
                    }
                }
                Err(Error::Truncation { .. }) | Err(Error::Precondition(_)) => {
                    undecided += 1;
                    if witness.is_none() {
                        witness = Some(format!("p={p} q={q}: outside the window"));
                    }
                }
                Err(e) => {
                    failed = true;
                    witness = Some(format!("p={p} q={q}: {e}"));
                }
            }
        }
    }
    let verdict = if failed {
        AxiomVerdict::Fail
    } else if undecided > 0 {
        AxiomVerdict::Inconclusive
    } else {
        AxiomVerdict::Pass
    };
    AxiomReport {
        verdict,
        checked,
        undecided,
        witness,
    }
}
