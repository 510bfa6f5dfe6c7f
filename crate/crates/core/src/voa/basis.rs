use std::collections::HashMap;

use crate::exact::BasisKey;

/// Mode numbers `n_1 >= n_2 >= ... >= n_k` of a PBW monomial
/// `X(-n_1)...X(-n_k)|0>`.
pub type Partition = Vec<u8>;

/// PBW basis of a vacuum module, graded by weight. Parts are at least
/// `min_part`; within a weight, partitions are listed in decreasing
/// lexicographic order, so the monomial with the most small modes comes last.
#[derive(Clone, Debug)]
pub struct PbwBasis {
    min_part: u8,
    by_weight: Vec<Vec<Partition>>,
    index: HashMap<Partition, BasisKey>,
}

impl PbwBasis {
    pub fn new(min_part: u8, max_weight: u32) -> Self {
        assert!(min_part >= 1);
        assert!(max_weight < 256, "weights are stored in u8 parts");
        let mut by_weight = Vec::with_capacity(max_weight as usize + 1);
        let mut index = HashMap::new();
        for w in 0..=max_weight {
            let mut parts = Vec::new();
            partitions(w as u8, w as u8, min_part, &mut Vec::new(), &mut parts);
            for (i, p) in parts.iter().enumerate() {
                index.insert(p.clone(), BasisKey::new(w, i as u32));
            }
            by_weight.push(parts);
        }
        PbwBasis {
            min_part,
            by_weight,
            index,
        }
    }

    pub fn min_part(&self) -> u8 {
        self.min_part
    }

    pub fn max_weight(&self) -> u32 {
        (self.by_weight.len() - 1) as u32
    }

    pub fn dim(&self, weight: u32) -> u32 {
        self.by_weight.get(weight as usize).map_or(0, |v| v.len() as u32)
    }

    pub fn dims(&self, cutoff: u32) -> Vec<u32> {
        (0..=cutoff).map(|w| self.dim(w)).collect()
    }

    pub fn partition(&self, key: BasisKey) -> &Partition {
        &self.by_weight[key.weight as usize][key.index as usize]
    }

    pub fn key(&self, p: &[u8]) -> Option<BasisKey> {
        self.index.get(p).copied()
    }

    pub fn keys(&self, weight: u32) -> impl Iterator<Item = BasisKey> {
        (0..self.dim(weight)).map(move |i| BasisKey::new(weight, i))
    }

    pub fn keys_up_to(&self, weight: u32) -> impl Iterator<Item = BasisKey> + '_ {
        (0..=weight.min(self.max_weight())).flat_map(move |w| self.keys(w))
    }
}

fn partitions(rest: u8, max: u8, min: u8, cur: &mut Vec<u8>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    let top = rest.min(max);
    for part in (min..=top).rev() {
        cur.push(part);
        partitions(rest - part, part, min, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Partition counts by Euler's recurrence with parts restricted below.
    fn count(n: usize, min: usize) -> u64 {
        let mut t = vec![0u64; n + 1];
        t[0] = 1;
        for part in min..=n {
            for s in part..=n {
                t[s] += t[s - part];
            }
        }
        t[n]
    }

    #[test]
    fn dimensions_match_partition_counts() {
        let fb = PbwBasis::new(1, 20);
        let vir = PbwBasis::new(2, 20);
        for w in 0..=20u32 {
            assert_eq!(fb.dim(w) as u64, count(w as usize, 1));
            assert_eq!(vir.dim(w) as u64, count(w as usize, 2));
        }
        assert_eq!(fb.dim(10), 42);
        assert_eq!(vir.dim(1), 0);
        assert_eq!(vir.dim(2), 1);
    }

    #[test]
    fn ordering_and_lookup() {
        let fb = PbwBasis::new(1, 4);
        assert_eq!(fb.partition(BasisKey::new(2, 0)), &vec![2]);
        assert_eq!(fb.partition(BasisKey::new(2, 1)), &vec![1, 1]);
        assert_eq!(fb.key(&[3, 1]), Some(BasisKey::new(4, 1)));
        assert_eq!(fb.partition(BasisKey::VACUUM), &Vec::<u8>::new());
    }
}
