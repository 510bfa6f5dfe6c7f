//! The spaces `Omega_n(V) = { w : v_k w = 0 for homogeneous v, k >= wt v + n }`
//! on the adjoint module, cut at weight `D`, and the filtration they form.

use crate::exact::{GradedVector, Provenance, Rational, SubspaceAtCutoff};
use crate::voa::Voa;
use crate::{Error, Result};

/// Kernel of the linear conditions `w -> Res_x x^k Y'(v,x) w` for basis `v`
/// with `wt v <= bound` and `k >= wt v + n`, on `w` in `V_{<= D}`. `mode`
/// evaluates `Res_x x^k Y'(v,x) w`.
fn kernel_of_modes<F>(voa: &Voa, n: i64, d: u32, bound: u32, family: &str, mode: F) -> Result<SubspaceAtCutoff>
where
    F: Fn(&GradedVector, i64, &GradedVector) -> Result<GradedVector>,
{
    let ambient = voa.ambient(d)?;
    let w_keys = voa.keys_up_to(d);
    // rows[(v, k, output key)] = functional on w
    let mut rows: std::collections::BTreeMap<(usize, i64, crate::exact::BasisKey), GradedVector> = Default::default();
    let v_keys = voa.keys_up_to(bound);
    for (vi, &v) in v_keys.iter().enumerate() {
        let vv = GradedVector::basis(v);
        let lo = v.weight as i64 + n;
        // v_k w = 0 once k >= wt v + wt w, so k < wt v + D suffices
        for k in lo..(v.weight as i64 + d as i64) {
            for &w in &w_keys {
                let out = mode(&vv, k, &GradedVector::basis(w))?;
                for (o, c) in out.terms() {
                    rows.entry((vi, k, *o))
                        .or_insert_with(GradedVector::zero)
                        .add_term(w, c);
                }
            }
        }
    }
    let constraints = SubspaceAtCutoff::echelonize(rows.values(), ambient.clone())?;
    let provenance = Provenance {
        family: family.to_string(),
        cutoff: d,
        generator_bound: bound,
        margin: 0,
        generators: rows.len(),
    };
    let mut kernel = SubspaceAtCutoff::new(ambient, provenance);
    for f in constraints.annihilator() {
        kernel.insert(f.coords())?;
    }
    Ok(kernel)
}

/// `Omega_n(V)` in weights `<= D`, imposing the conditions for all basis `v`
/// of weight `<= bound`.
pub fn omega_n(voa: &Voa, n: i64, d: u32, bound: u32) -> Result<SubspaceAtCutoff> {
    check(voa, n, d, bound)?;
    kernel_of_modes(voa, n, d, bound, &format!("Omega_{n}"), |v, k, w| {
        voa.mode_apply(v, k, w)
    })
}

/// `Omega_n` computed from the deformed vertex operator `Y^{[z0]}`.
pub fn omega_n_deformed(voa: &Voa, n: i64, d: u32, bound: u32, z0: &Rational) -> Result<SubspaceAtCutoff> {
    check(voa, n, d, bound)?;
    kernel_of_modes(voa, n, d, bound, &format!("Omega_{n}[z0={z0}]"), |v, k, w| {
        voa.deformed_mode_coefficient(v, k, z0, w)
    })
}

fn check(voa: &Voa, n: i64, d: u32, bound: u32) -> Result<()> {
    if n < 0 {
        return Err(Error::Parameter(format!("n must be nonnegative, got {n}")));
    }
    voa.check_weight((d + bound) as i64, "Omega conditions")
}

/// The filtration `Omega_0 <= Omega_1 <= ... <= Omega_{n_max}` and its
/// associated graded pieces `Omega_n / Omega_{n-1}`.
pub struct OmegaFiltration {
    pub chain: Vec<SubspaceAtCutoff>,
    pub cutoff: u32,
}

impl OmegaFiltration {
    pub fn new(voa: &Voa, n_max: i64, d: u32, bound: u32) -> Result<Self> {
        let chain = (0..=n_max).map(|n| omega_n(voa, n, d, bound)).collect::<Result<_>>()?;
        Ok(OmegaFiltration { chain, cutoff: d })
    }

    /// `dim Omega_n - dim Omega_{n-1}`.
    pub fn piece_dims(&self) -> Vec<usize> {
        let mut prev = 0;
        self.chain
            .iter()
            .map(|s| {
                let d = s.rank() - prev;
                prev = s.rank();
                d
            })
            .collect()
    }

    pub fn is_increasing(&self) -> Result<bool> {
        for pair in self.chain.windows(2) {
            if !pair[1].contains_subspace(&pair[0])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks `u_k Omega_n <= Omega_{n + wt u - k - 1}` for homogeneous `u`
    /// on every chain level whose target lies in the chain. Returns the
    /// number of checked images and the first failure, skipping images
    /// above the cutoff.
    pub fn check_mode_shift(&self, voa: &Voa, u: &GradedVector, k: i64) -> Result<(usize, Option<String>)> {
        let wt = u.max_weight().unwrap_or(0) as i64;
        let mut checked = 0;
        for (n, level) in self.chain.iter().enumerate() {
            let target = n as i64 + wt - k - 1;
            let target_space = if target < 0 {
                None
            } else if target as usize >= self.chain.len() {
                continue;
            } else {
                Some(&self.chain[target as usize])
            };
            for w in level.rows() {
                let img = voa.mode_apply(u, k, &w)?;
                if img.max_weight().is_some_and(|t| t > self.cutoff) {
                    continue;
                }
                checked += 1;
                let ok = match target_space {
                    None => img.is_zero(),
                    Some(s) => s.contains(&img)?,
                };
                if !ok {
                    return Ok((
                        checked,
                        Some(format!(
                            "{} applied at mode {k} leaves level {target}",
                            voa.format_vector(&w)
                        )),
                    ));
                }
            }
        }
        Ok((checked, None))
    }
}
