use std::sync::Arc;

use super::{BasisKey, DualFunctional, GradedVector, Rational};
use crate::{Error, Result};

/// The weight-`<= cutoff` truncation of a graded space, described by the
/// dimension of each weight piece. Columns are numbered weight by weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    dims: Vec<u32>,
    offsets: Vec<usize>,
    total: usize,
}

impl Ambient {
    /// `dims[d]` is the dimension of the weight-`d` piece, for `d = 0..=cutoff`.
    pub fn new(dims: Vec<u32>) -> Self {
        assert!(!dims.is_empty(), "ambient needs at least weight 0");
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0usize;
        for &d in &dims {
            offsets.push(total);
            total += d as usize;
        }
        Ambient { dims, offsets, total }
    }

    pub fn cutoff(&self) -> u32 {
        (self.dims.len() - 1) as u32
    }

    pub fn dim(&self) -> usize {
        self.total
    }

    pub fn dim_at(&self, weight: u32) -> u32 {
        self.dims.get(weight as usize).copied().unwrap_or(0)
    }

    pub fn col(&self, key: &BasisKey) -> Option<usize> {
        let w = key.weight as usize;
        if w >= self.dims.len() || key.index >= self.dims[w] {
            return None;
        }
        Some(self.offsets[w] + key.index as usize)
    }

    pub fn key(&self, col: usize) -> BasisKey {
        let w = match self.offsets.binary_search(&col) {
            Ok(mut w) => {
                // skip empty weight pieces sharing the same offset
                while self.dims[w] == 0 {
                    w += 1;
                }
                w
            }
            Err(w) => w - 1,
        };
        BasisKey::new(w as u32, (col - self.offsets[w]) as u32)
    }

    pub fn keys(&self) -> impl Iterator<Item = BasisKey> + '_ {
        self.dims
            .iter()
            .enumerate()
            .flat_map(|(w, &d)| (0..d).map(move |i| BasisKey::new(w as u32, i)))
    }

    /// The same description cut down to weights `<= cutoff`.
    pub fn restrict(&self, cutoff: u32) -> Ambient {
        let n = (cutoff as usize + 1).min(self.dims.len());
        Ambient::new(self.dims[..n].to_vec())
    }

    fn sparse(&self, v: &GradedVector) -> Result<Vec<(u32, Rational)>> {
        v.terms()
            .map(|(k, c)| {
                self.col(k)
                    .map(|col| (col as u32, c.clone()))
                    .ok_or_else(|| Error::truncation("vector support", k.weight as i64, self.cutoff() as i64))
            })
            .collect()
    }
}

/// Where a computed span came from.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Provenance {
    pub family: String,
    pub cutoff: u32,
    pub generator_bound: u32,
    pub margin: u32,
    pub generators: usize,
}

/// Outcome of a membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub is_member: bool,
    /// Coefficients on the echelon rows, in row order, when a member.
    pub coords: Option<Vec<Rational>>,
}

type Row = Vec<(u32, Rational)>;

/// A subspace of a truncated graded space held in fully reduced row echelon
/// form. Pivot of a row is its first column (lowest weight, then index), its
/// pivot coefficient is 1, and no pivot column occurs in any other row.
#[derive(Clone, Debug)]
pub struct SubspaceAtCutoff {
    ambient: Arc<Ambient>,
    rows: Vec<Row>,
    pivot_row: Vec<Option<u32>>,
    provenance: Provenance,
}

impl SubspaceAtCutoff {
    pub fn new(ambient: Arc<Ambient>, provenance: Provenance) -> Self {
        let n = ambient.dim();
        SubspaceAtCutoff {
            ambient,
            rows: Vec::new(),
            pivot_row: vec![None; n],
            provenance,
        }
    }

    /// Span of `vectors` in reduced echelon form. Output depends only on the
    /// span, not on the input order.
    pub fn echelonize<'a, I>(vectors: I, ambient: Arc<Ambient>) -> Result<Self>
    where
        I: IntoIterator<Item = &'a GradedVector>,
    {
        let mut s = SubspaceAtCutoff::new(ambient, Provenance::default());
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn cutoff(&self) -> u32 {
        self.ambient.cutoff()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient.dim() - self.rows.len()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn provenance_mut(&mut self) -> &mut Provenance {
        &mut self.provenance
    }

    fn to_vector(&self, row: &Row) -> GradedVector {
        GradedVector::from_terms(row.iter().map(|(c, x)| (self.ambient.key(*c as usize), x.clone())))
    }

    /// Rows sorted by pivot.
    pub fn rows(&self) -> Vec<GradedVector> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i][0].0);
        order.iter().map(|&i| self.to_vector(&self.rows[i])).collect()
    }

    pub fn pivots(&self) -> Vec<BasisKey> {
        let mut p: Vec<u32> = self.rows.iter().map(|r| r[0].0).collect();
        p.sort_unstable();
        p.into_iter().map(|c| self.ambient.key(c as usize)).collect()
    }

    /// Subtracts from `v` the combination of rows matching its pivot
    /// coordinates. Returns the remainder and the coefficients used.
    fn reduce_sparse(&self, v: Row) -> (Row, Vec<(u32, Rational)>) {
        let mut used = Vec::new();
        let mut acc: std::collections::BTreeMap<u32, Rational> = v.into_iter().collect();
        let hits: Vec<(u32, Rational)> = acc
            .iter()
            .filter_map(|(c, x)| self.pivot_row[*c as usize].map(|r| (r, x.clone())))
            .collect();
        for (r, x) in hits {
            for (c, y) in &self.rows[r as usize] {
                let e = acc.entry(*c).or_insert(Rational::ZERO);
                *e -= &(&x * y);
                if e.is_zero() {
                    acc.remove(c);
                }
            }
            used.push((r, x));
        }
        (acc.into_iter().collect(), used)
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: &GradedVector) -> Result<bool> {
        let sparse = self.ambient.sparse(v)?;
        let (mut rem, _) = self.reduce_sparse(sparse);
        if rem.is_empty() {
            return Ok(false);
        }
        let lead = rem[0].1.recip();
        for (_, x) in rem.iter_mut() {
            *x *= &lead;
        }
        let pivot = rem[0].0;
        let new_idx = self.rows.len() as u32;
        for row in self.rows.iter_mut() {
            if let Ok(pos) = row.binary_search_by_key(&pivot, |e| e.0) {
                let x = row[pos].1.clone();
                *row = axpy_sparse(row, &rem, &-x);
            }
        }
        self.pivot_row[pivot as usize] = Some(new_idx);
        self.rows.push(rem);
        Ok(true)
    }

    pub fn extend<'a, I>(&mut self, vectors: I) -> Result<usize>
    where
        I: IntoIterator<Item = &'a GradedVector>,
    {
        let mut grown = 0;
        for v in vectors {
            if self.insert(v)? {
                grown += 1;
            }
        }
        Ok(grown)
    }

    pub fn member(&self, v: &GradedVector) -> Result<Membership> {
        let sparse = self.ambient.sparse(v)?;
        let (rem, used) = self.reduce_sparse(sparse);
        if !rem.is_empty() {
            return Ok(Membership {
                is_member: false,
                coords: None,
            });
        }
        let mut coords = vec![Rational::ZERO; self.rows.len()];
        for (r, x) in used {
            coords[r as usize] = x;
        }
        Ok(Membership {
            is_member: true,
            coords: Some(coords),
        })
    }

    pub fn contains(&self, v: &GradedVector) -> Result<bool> {
        Ok(self.member(v)?.is_member)
    }

    /// Reconstructs a vector from coordinates on the rows.
    pub fn combine(&self, coords: &[Rational]) -> GradedVector {
        let mut out = GradedVector::zero();
        for (row, c) in self.rows.iter().zip(coords) {
            out.add_scaled(&self.to_vector(row), c);
        }
        out
    }

    /// Canonical representative of `v` modulo the span: `v` with its pivot
    /// coordinates eliminated. Idempotent, with kernel equal to the span.
    pub fn normal_form(&self, v: &GradedVector) -> Result<GradedVector> {
        let sparse = self.ambient.sparse(v)?;
        let (rem, _) = self.reduce_sparse(sparse);
        Ok(self.to_vector(&rem))
    }

    pub fn contains_subspace(&self, other: &SubspaceAtCutoff) -> Result<bool> {
        for r in other.rows() {
            if !self.contains(&r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_span(&self, other: &SubspaceAtCutoff) -> Result<bool> {
        Ok(self.rank() == other.rank() && self.contains_subspace(other)?)
    }

    /// Basis of the functionals on the truncation vanishing on the span: one
    /// per non-pivot column `j`, namely `e_j^* - sum_i row_i[j] e_{p_i}^*`.
    pub fn annihilator(&self) -> Vec<DualFunctional> {
        let n = self.ambient.dim();
        let mut out = Vec::with_capacity(n - self.rows.len());
        let mut entries: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); n];
        for row in &self.rows {
            let p = row[0].0;
            for (c, x) in &row[1..] {
                entries[*c as usize].push((p, x.clone()));
            }
        }
        for j in 0..n {
            if self.pivot_row[j].is_some() {
                continue;
            }
            let mut coords = GradedVector::basis(self.ambient.key(j));
            for (p, x) in &entries[j] {
                coords.add_term(self.ambient.key(*p as usize), &-x);
            }
            out.push(DualFunctional::from_coords(self.cutoff(), coords));
        }
        out
    }
}

fn axpy_sparse(a: &Row, b: &Row, s: &Rational) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, &b[j].1 * s));
            j += 1;
        } else {
            let mut x = a[i].1.clone();
            x.add_mul(&b[j].1, s);
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn amb(dims: &[u32]) -> Arc<Ambient> {
        Arc::new(Ambient::new(dims.to_vec()))
    }

    fn vec_w0(xs: &[i64]) -> GradedVector {
        GradedVector::from_terms(
            xs.iter()
                .enumerate()
                .map(|(i, &x)| (BasisKey::new(0, i as u32), Rational::from_int(x))),
        )
    }

    #[test]
    fn dependent_triple_has_rank_two() {
        let a = amb(&[3]);
        let vs = [vec_w0(&[1, 1, 0]), vec_w0(&[0, 1, 1]), vec_w0(&[1, 2, 1])];
        let s = SubspaceAtCutoff::echelonize(vs.iter(), a).unwrap();
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn empty_input_has_rank_zero() {
        let s = SubspaceAtCutoff::echelonize(std::iter::empty(), amb(&[1, 1, 2])).unwrap();
        assert_eq!(s.rank(), 0);
        assert_eq!(s.annihilator().len(), 4);
    }

    #[test]
    fn membership_with_coordinates() {
        let a = amb(&[3]);
        let vs = [vec_w0(&[1, 1, 0]), vec_w0(&[0, 1, 1])];
        let s = SubspaceAtCutoff::echelonize(vs.iter(), a).unwrap();
        let target = vec_w0(&[1, 0, -1]);
        let m = s.member(&target).unwrap();
        assert!(m.is_member);
        assert_eq!(s.combine(m.coords.as_ref().unwrap()), target);
        // Solve a*(1,1,0) + b*(0,1,1) = (1,0,-1): a = 1, b = -1.
        let direct = &vs[0] - &vs[1];
        assert_eq!(direct, target);
        let zero = s.member(&GradedVector::zero()).unwrap();
        assert!(zero.is_member);
        assert!(zero.coords.unwrap().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn non_member() {
        let s = SubspaceAtCutoff::echelonize([vec_w0(&[1, 0, 0])].iter(), amb(&[3])).unwrap();
        assert!(!s.contains(&vec_w0(&[0, 0, 1])).unwrap());
    }

    #[test]
    fn annihilator_of_diagonal() {
        let s = SubspaceAtCutoff::echelonize([vec_w0(&[1, 1])].iter(), amb(&[2])).unwrap();
        let ann = s.annihilator();
        assert_eq!(ann.len(), 1);
        // Null space of the 1x2 system x + y = 0 is spanned by (1, -1).
        let f = &ann[0];
        let expected = vec_w0(&[-1, 1]);
        assert_eq!(f.coords(), &expected);
        assert!(f.pair(&vec_w0(&[1, 1])).unwrap().is_zero());
    }

    #[test]
    fn full_span_has_trivial_annihilator() {
        let a = amb(&[2]);
        let s = SubspaceAtCutoff::echelonize([vec_w0(&[1, 2]), vec_w0(&[3, 4])].iter(), a).unwrap();
        assert!(s.annihilator().is_empty());
    }

    #[test]
    fn out_of_cutoff_is_an_error() {
        let a = amb(&[1]);
        let v = GradedVector::basis(BasisKey::new(1, 0));
        assert!(matches!(
            SubspaceAtCutoff::echelonize([v].iter(), a),
            Err(Error::Truncation { .. })
        ));
    }

    #[test]
    fn ambient_keys_roundtrip_with_empty_pieces() {
        let a = Ambient::new(vec![1, 0, 1, 2]);
        for (i, k) in a.keys().enumerate() {
            assert_eq!(a.col(&k), Some(i));
            assert_eq!(a.key(i), k);
        }
    }

    fn det3(m: &[[i64; 3]; 3]) -> i64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    fn small_vectors(n: usize, len: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, len), 0..=n)
    }

    proptest! {
        #[test]
        fn full_rank_iff_nonzero_determinant(rows in prop::array::uniform3(prop::array::uniform3(-4i64..=4))) {
            let vs: Vec<GradedVector> = rows.iter().map(|r| vec_w0(r)).collect();
            let s = SubspaceAtCutoff::echelonize(vs.iter(), amb(&[3])).unwrap();
            prop_assert_eq!(s.rank() == 3, det3(&rows) != 0);
        }

        #[test]
        fn echelonize_is_idempotent(rows in small_vectors(6, 5)) {
            let a = amb(&[1, 2, 2]);
            let vs: Vec<GradedVector> = rows.iter().map(|r| {
                GradedVector::from_terms(a.keys().zip(r).map(|(k, &x)| (k, Rational::from_int(x))))
            }).collect();
            let s = SubspaceAtCutoff::echelonize(vs.iter(), a.clone()).unwrap();
            let again = SubspaceAtCutoff::echelonize(s.rows().iter(), a.clone()).unwrap();
            prop_assert_eq!(s.rows(), again.rows());
            // rank + annihilator dimension = ambient dimension
            prop_assert_eq!(s.rank() + s.annihilator().len(), a.dim());
            for f in s.annihilator() {
                for r in s.rows() {
                    prop_assert!(f.pair(&r).unwrap().is_zero());
                }
            }
            for v in &vs {
                let m = s.member(v).unwrap();
                prop_assert!(m.is_member);
                prop_assert_eq!(&s.combine(m.coords.as_ref().unwrap()), v);
                prop_assert!(s.normal_form(v).unwrap().is_zero());
            }
        }

        #[test]
        fn normal_form_is_idempotent(rows in small_vectors(4, 5), probe in prop::collection::vec(-3i64..=3, 5)) {
            let a = amb(&[1, 2, 2]);
            let mk = |r: &Vec<i64>| GradedVector::from_terms(a.keys().zip(r).map(|(k, &x)| (k, Rational::from_int(x))));
            let vs: Vec<GradedVector> = rows.iter().map(mk).collect();
            let s = SubspaceAtCutoff::echelonize(vs.iter(), a.clone()).unwrap();
            let p = mk(&probe);
            let once = s.normal_form(&p).unwrap();
            prop_assert_eq!(s.normal_form(&once).unwrap(), once.clone());
            prop_assert!(s.contains(&(&p - &once)).unwrap());
        }
    }
}
