//! Bit vectors over GF(2) and an incremental basis with replay history.
//!
//! The basis remembers, for every stored row, which original vectors were
//! XORed together to produce it. That history is what lets `represent`
//! name a concrete subset of the inserted vectors summing to a query.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{invalid, Result};

/// Fixed-length bit vector backed by u64 limbs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    limbs: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, limbs: vec![0; len.div_ceil(64)] }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = BitVec::zeros(bits.len());
        for (i, b) in bits.iter().enumerate() {
            if *b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.limbs[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        if value {
            self.limbs[i >> 6] |= 1 << (i & 63);
        } else {
            self.limbs[i >> 6] &= !(1 << (i & 63));
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor of bit vectors with different lengths");
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (i, &l) in self.limbs.iter().enumerate() {
            if l != 0 {
                return Some(i * 64 + l.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(i, &limb)| {
            let mut l = limb;
            std::iter::from_fn(move || {
                if l == 0 {
                    return None;
                }
                let bit = l.trailing_zeros() as usize;
                l &= l - 1;
                Some(i * 64 + bit)
            })
        })
    }

    /// True when some position is set in both vectors.
    pub fn intersects(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len);
        self.limbs.iter().zip(&other.limbs).any(|(a, b)| a & b != 0)
    }

    /// True when every set position of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len);
        self.limbs.iter().zip(&other.limbs).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[{}]{{{}}}", self.len, self)
    }
}

struct Row {
    orig_index: usize,
    original: BitVec,
    reduced: BitVec,
    pivot: usize,
    /// Slots of this basis whose original vectors XOR to `reduced`.
    history: BTreeSet<usize>,
}

/// Incremental GF(2) basis. Vectors are offered one at a time and are
/// accepted exactly when independent of everything accepted before.
#[derive(Default)]
pub struct Basis {
    dim: Option<usize>,
    rows: Vec<Row>,
}

fn sym_diff(acc: &mut BTreeSet<usize>, other: &BTreeSet<usize>) {
    for &s in other {
        if !acc.remove(&s) {
            acc.insert(s);
        }
    }
}

impl Basis {
    pub fn new() -> Self {
        Basis::default()
    }

    /// Dimension is fixed by the first insertion.
    pub fn dimension(&self) -> Option<usize> {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Original indices of the accepted vectors, in insertion order.
    pub fn accepted(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.orig_index).collect()
    }

    /// Offers `v` under the caller's name `orig_index`. Returns whether it
    /// was accepted (independent). Rows are kept fully reduced so that
    /// `represent` is a single back-substitution pass.
    pub fn insert(&mut self, orig_index: usize, v: &BitVec) -> Result<bool> {
        match self.dim {
            None => self.dim = Some(v.len()),
            Some(d) if d != v.len() => {
                return Err(invalid(format!(
                    "vector length {} does not match basis dimension {d}",
                    v.len()
                )));
            }
            _ => {}
        }
        let mut reduced = v.clone();
        let mut history = BTreeSet::new();
        for row in &self.rows {
            if reduced.get(row.pivot) {
                reduced.xor_assign(&row.reduced);
                sym_diff(&mut history, &row.history);
            }
        }
        let Some(pivot) = reduced.first_one() else {
            return Ok(false);
        };
        let slot = self.rows.len();
        history.insert(slot);
        for row in &mut self.rows {
            if row.reduced.get(pivot) {
                row.reduced.xor_assign(&reduced);
                sym_diff(&mut row.history, &history);
            }
        }
        self.rows.push(Row { orig_index, original: v.clone(), reduced, pivot, history });
        Ok(true)
    }

    /// Finds the subset of accepted original vectors XORing to `w`, as
    /// sorted original indices. `None` when `w` is outside the span. The
    /// returned combination is re-checked against the stored originals.
    pub fn represent(&self, w: &BitVec) -> Result<Option<Vec<usize>>> {
        if let Some(d) = self.dim {
            if d != w.len() {
                return Err(invalid(format!(
                    "vector length {} does not match basis dimension {d}",
                    w.len()
                )));
            }
        }
        let mut rem = w.clone();
        let mut slots = BTreeSet::new();
        for row in &self.rows {
            if rem.get(row.pivot) {
                rem.xor_assign(&row.reduced);
                sym_diff(&mut slots, &row.history);
            }
        }
        if !rem.is_zero() {
            return Ok(None);
        }
        let mut check = BitVec::zeros(w.len());
        for &s in &slots {
            check.xor_assign(&self.rows[s].original);
        }
        assert_eq!(check, *w, "basis history failed to reproduce the query vector");
        let mut indices: Vec<usize> = slots.iter().map(|&s| self.rows[s].orig_index).collect();
        indices.sort_unstable();
        Ok(Some(indices))
    }

    #[cfg(test)]
    fn assert_invariants(&self) {
        let mut pivots = BTreeSet::new();
        for row in &self.rows {
            assert!(row.reduced.get(row.pivot));
            assert!(pivots.insert(row.pivot), "duplicate pivot column");
            let mut x = BitVec::zeros(self.dim.unwrap());
            for &s in &row.history {
                x.xor_assign(&self.rows[s].original);
            }
            assert_eq!(x, row.reduced, "history does not reproduce reduced row");
        }
        for row in &self.rows {
            for other in &self.rows {
                if row.pivot != other.pivot {
                    assert!(!other.reduced.get(row.pivot), "rows are not fully reduced");
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVec {
        BitVec::from_bits(s.chars().map(|c| c == '1'))
    }

    /// Plain Gaussian elimination over bool matrices, written independently
    /// of `Basis` so the two implementations can cross-check each other.
    fn oracle_rank(vectors: &[Vec<bool>]) -> usize {
        let mut mat: Vec<Vec<bool>> = vectors.to_vec();
        let mut rank = 0;
        let width = mat.first().map_or(0, Vec::len);
        for col in 0..width {
            let Some(pivot_row) = (rank..mat.len()).find(|&r| mat[r][col]) else {
                continue;
            };
            mat.swap(rank, pivot_row);
            for r in 0..mat.len() {
                if r != rank && mat[r][col] {
                    let (a, b) = if r < rank {
                        let (lo, hi) = mat.split_at_mut(rank);
                        (&mut lo[r], &hi[0])
                    } else {
                        let (lo, hi) = mat.split_at_mut(r);
                        (&mut hi[0], &lo[rank])
                    };
                    for c in 0..width {
                        a[c] ^= b[c];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn bitvec_basics() {
        let mut v = BitVec::zeros(130);
        assert!(v.is_zero());
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.first_one(), Some(0));
        v.set(0, false);
        assert_eq!(v.first_one(), Some(64));
        let w = v.clone();
        v.xor_assign(&w);
        assert!(v.is_zero());
    }

    #[test]
    fn subset_and_intersection() {
        let a = bv("0110");
        let b = bv("0111");
        let c = bv("1000");
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert!(a.intersects(&b));
        assert!(!a.intersects(&c));
        assert_eq!(format!("{a}"), "0110");
    }

    #[test]
    fn third_vector_in_span_is_rejected() {
        let mut basis = Basis::new();
        assert!(basis.insert(0, &bv("101")).unwrap());
        assert!(basis.insert(1, &bv("011")).unwrap());
        assert!(!basis.insert(2, &bv("110")).unwrap());
        assert_eq!(basis.rank(), 2);
        assert_eq!(basis.accepted(), vec![0, 1]);
        basis.assert_invariants();
    }

    #[test]
    fn represent_names_the_combination() {
        let mut basis = Basis::new();
        basis.insert(0, &bv("101")).unwrap();
        basis.insert(1, &bv("011")).unwrap();
        assert_eq!(basis.represent(&bv("110")).unwrap(), Some(vec![0, 1]));
        assert_eq!(basis.represent(&bv("101")).unwrap(), Some(vec![0]));
        assert_eq!(basis.represent(&bv("000")).unwrap(), Some(vec![]));
        assert_eq!(basis.represent(&bv("100")).unwrap(), None);
    }

    #[test]
    fn empty_basis_accepts_only_zero() {
        let basis = Basis::new();
        assert_eq!(basis.represent(&bv("0000")).unwrap(), Some(vec![]));
        assert_eq!(basis.represent(&bv("0100")).unwrap(), None);
        assert_eq!(basis.dimension(), None);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let mut basis = Basis::new();
        basis.insert(7, &bv("10")).unwrap();
        assert!(basis.insert(8, &bv("100")).is_err());
        assert!(basis.represent(&bv("1")).is_err());
        assert_eq!(basis.dimension(), Some(2));
    }

    #[test]
    fn zero_vector_is_never_accepted() {
        let mut basis = Basis::new();
        assert!(!basis.insert(0, &bv("0000")).unwrap());
        assert_eq!(basis.rank(), 0);
    }

    proptest! {
        #[test]
        fn rank_matches_gaussian_elimination(
            vectors in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 12), 0..20)
        ) {
            let mut basis = Basis::new();
            for (i, v) in vectors.iter().enumerate() {
                basis.insert(i, &BitVec::from_bits(v.iter().copied())).unwrap();
            }
            prop_assert_eq!(basis.rank(), oracle_rank(&vectors));
        }

        #[test]
        fn accepted_set_is_prefix_greedy(
            vectors in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 10), 0..16)
        ) {
            let mut basis = Basis::new();
            let mut accepted = Vec::new();
            for (i, v) in vectors.iter().enumerate() {
                if basis.insert(i, &BitVec::from_bits(v.iter().copied())).unwrap() {
                    accepted.push(v.clone());
                }
            }
            let mut rerun = Basis::new();
            for (i, v) in accepted.iter().enumerate() {
                prop_assert!(rerun.insert(i, &BitVec::from_bits(v.iter().copied())).unwrap());
            }
        }

        #[test]
        fn represent_recovers_unique_combination(
            vectors in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 10), 1..12),
            picks in proptest::collection::vec(any::<bool>(), 12)
        ) {
            let mut basis = Basis::new();
            for (i, v) in vectors.iter().enumerate() {
                basis.insert(i, &BitVec::from_bits(v.iter().copied())).unwrap();
            }
            let chosen: Vec<usize> = basis
                .accepted()
                .into_iter()
                .filter(|&i| picks[i % picks.len()])
                .collect();
            let mut w = BitVec::zeros(10);
            for &i in &chosen {
                w.xor_assign(&BitVec::from_bits(vectors[i].iter().copied()));
            }
            prop_assert_eq!(basis.represent(&w).unwrap(), Some(chosen));
        }
    }
}
