//! Slow reference evaluation of `v_(q) w` that shares no code path with the
//! memoized engine: no cache, no iterate formula.
//!
//! Heisenberg: expand the normally ordered product of derivative fields,
//! `Y(a(-n_1)...a(-n_k)|0>, x) = :prod_i d^(n_i-1) a(x) / (n_i-1)!:`, and act
//! on occupation numbers directly.
//!
//! Virasoro: the normally ordered product
//! `(a_(-s) u)_(q) = sum_(k<0) C(-k-1,s-1) a_(k) u_(q-k-s) + sum_(k>=0) C(-k-1,s-1) u_(q-k-s) a_(k)`
//! with `L`-words reduced to PBW order by commutator pushing.

use std::collections::BTreeMap;

use super::{Voa, VoaKind};
use crate::exact::{binomial, BasisKey, GradedVector, Rational};
use crate::{Error, Result};

pub fn oracle_mode(voa: &Voa, v: BasisKey, q: i64, w: BasisKey) -> Result<GradedVector> {
    let target = v.weight as i64 + w.weight as i64 - q - 1;
    if target < 0 {
        return Ok(GradedVector::zero());
    }
    voa.check_weight(target, "oracle mode")?;
    let vp: Vec<i64> = voa.basis().partition(v).iter().map(|&x| x as i64).collect();
    let wp: Vec<i64> = voa.basis().partition(w).iter().map(|&x| x as i64).collect();
    let terms = match voa.kind() {
        VoaKind::FreeBoson => fock_field_mode(&vp, q, &wp),
        VoaKind::Virasoro => {
            let words = vir_normal_ordered(&vp, q, &word_of(&wp), voa.central_charge());
            let mut out = BTreeMap::new();
            for (word, c) in words {
                for (p, d) in vir_reduce(&word, voa.central_charge()) {
                    *out.entry(p).or_insert(Rational::ZERO) += &(&c * &d);
                }
            }
            out
        }
    };
    let mut out = GradedVector::zero();
    for (p, c) in terms {
        let bytes: Vec<u8> = p.iter().map(|&x| x as u8).collect();
        let key = voa
            .basis()
            .key(&bytes)
            .ok_or_else(|| Error::truncation("oracle mode", target, voa.max_weight() as i64))?;
        out.add_term(key, &c);
    }
    Ok(out)
}

/// Occupation numbers: `occ[k]` copies of `a(-k)`.
fn occupation(parts: &[i64]) -> Vec<i64> {
    let top = parts.iter().copied().max().unwrap_or(0) as usize;
    let mut occ = vec![0i64; top + 1];
    for &p in parts {
        occ[p as usize] += 1;
    }
    occ
}

fn partition_of(occ: &[i64]) -> Vec<i64> {
    let mut p = Vec::new();
    for k in (1..occ.len()).rev() {
        for _ in 0..occ[k] {
            p.push(k as i64);
        }
    }
    p
}

fn fock_field_mode(vp: &[i64], q: i64, wp: &[i64]) -> BTreeMap<Vec<i64>, Rational> {
    let mut out = BTreeMap::new();
    if vp.is_empty() {
        if q == -1 {
            out.insert(wp.to_vec(), Rational::ONE);
        }
        return out;
    }
    // coefficient of x^(-q-1): sum of the mode indices is q + 1 - sum n_i
    let total: i64 = q + 1 - vp.iter().sum::<i64>();
    let ww: i64 = wp.iter().sum();
    let r = vp.len() as i64;
    let lo = total - (r - 1) * ww;
    let mut ks = Vec::with_capacity(vp.len());
    enumerate_modes(vp, 0, total, lo, ww, &mut ks, &mut |ks| {
        let mut coeff = Rational::ONE;
        for (k, n) in ks.iter().zip(vp) {
            coeff *= &binomial(-k - 1, n - 1);
        }
        if coeff.is_zero() {
            return;
        }
        // annihilators first (they commute), then creators
        let mut occ = occupation(wp);
        for &k in ks.iter().filter(|&&k| k > 0) {
            let ku = k as usize;
            if ku >= occ.len() || occ[ku] == 0 {
                return;
            }
            coeff *= &Rational::from_int(k * occ[ku]);
            occ[ku] -= 1;
        }
        for &k in ks.iter().filter(|&&k| k < 0) {
            let ku = (-k) as usize;
            if ku >= occ.len() {
                occ.resize(ku + 1, 0);
            }
            occ[ku] += 1;
        }
        *out.entry(partition_of(&occ)).or_insert(Rational::ZERO) += &coeff;
    });
    out.retain(|_, c| !c.is_zero());
    out
}

fn enumerate_modes(vp: &[i64], i: usize, rest: i64, lo: i64, hi: i64, ks: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    if i == vp.len() {
        if rest == 0 {
            f(ks);
        }
        return;
    }
    let left = (vp.len() - i - 1) as i64;
    for k in lo..=hi {
        if k == 0 {
            continue;
        }
        // remaining modes each lie in [lo, hi]
        let r = rest - k;
        if r < left * lo || r > left * hi {
            continue;
        }
        ks.push(k);
        enumerate_modes(vp, i + 1, r, lo, hi, ks, f);
        ks.pop();
    }
}

/// A word `L(m_1) ... L(m_k) |0>` (leftmost applied last).
type Word = Vec<i64>;

fn word_of(parts: &[i64]) -> Word {
    parts.iter().map(|&n| -n).collect()
}

/// `v_(q)` applied to a word, as a combination of (unreduced) words.
fn vir_normal_ordered(vp: &[i64], q: i64, w: &Word, c: &Rational) -> Vec<(Word, Rational)> {
    if vp.is_empty() {
        return if q == -1 {
            vec![(w.clone(), Rational::ONE)]
        } else {
            Vec::new()
        };
    }
    let s = vp[0] - 1; // omega_(1 - n) = omega_(-s)
    let u = &vp[1..];
    let wu: i64 = u.iter().sum();
    let ww: i64 = -w.iter().sum::<i64>();
    let mut out = Vec::new();
    // k < 0: omega_(k) u_(q-k-s) w, with u_(j) w = 0 once j >= wt u + wt w
    let k_lo = q - s - wu - ww + 1;
    for k in k_lo.min(0)..0 {
        let b = binomial(-k - 1, s - 1);
        if b.is_zero() {
            continue;
        }
        for (word, x) in vir_normal_ordered(u, q - k - s, w, c) {
            let mut nw = vec![k - 1];
            nw.extend(word);
            out.push((nw, &x * &b));
        }
    }
    // k >= 0: u_(q-k-s) omega_(k) w; omega_(k) w = 0 once k > wt w + 1
    for k in 0..=(ww + 1) {
        let b = binomial(-k - 1, s - 1);
        if b.is_zero() {
            continue;
        }
        let mut aw = vec![k - 1];
        aw.extend(w.iter().copied());
        for (reduced, y) in vir_reduce(&aw, c) {
            let rw = word_of(&reduced);
            for (word, x) in vir_normal_ordered(u, q - k - s, &rw, c) {
                out.push((word, &(&x * &y) * &b));
            }
        }
    }
    out
}

/// Reduces a word to PBW monomials by repeatedly swapping the rightmost
/// out-of-order adjacent pair with `[L(m), L(n)] = (m-n) L(m+n) + c/12 (m^3-m) delta`.
fn vir_reduce(word: &Word, c: &Rational) -> BTreeMap<Vec<i64>, Rational> {
    let mut out: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    let mut work: Vec<(Word, Rational)> = vec![(word.clone(), Rational::ONE)];
    while let Some((w, x)) = work.pop() {
        if x.is_zero() {
            continue;
        }
        if w.last().is_some_and(|&m| m >= -1) {
            continue;
        }
        let bad = (0..w.len().saturating_sub(1)).rev().find(|&i| w[i] > w[i + 1]);
        match bad {
            None => {
                let p: Vec<i64> = w.iter().map(|&m| -m).collect();
                *out.entry(p).or_insert(Rational::ZERO) += &x;
            }
            Some(i) => {
                let (m, n) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                work.push((swapped, x.clone()));
                let mut merged = w[..i].to_vec();
                merged.push(m + n);
                merged.extend_from_slice(&w[i + 2..]);
                work.push((merged, &x * &Rational::from_int(m - n)));
                if m + n == 0 {
                    let mut dropped = w[..i].to_vec();
                    dropped.extend_from_slice(&w[i + 2..]);
                    let central = &(c * &Rational::new(m * m * m - m, 12)) * &x;
                    work.push((dropped, central));
                }
            }
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}
