use std::cmp::Ordering;
use std::fmt;

/// A strictly increasing index set `I`, naming the basis covector
/// `dx_I = dx_{i_1} ∧ ... ∧ dx_{i_k}`.
///
/// Stored as a bitmask over 0-based indices. Ordered by size, then
/// lexicographically on the sorted indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct IndexSet(u32);

pub const MAX_INDICES: usize = 32;

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet(0)
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_INDICES);
        IndexSet(1 << i)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_INDICES);
        if n == MAX_INDICES {
            IndexSet(u32::MAX)
        } else {
            IndexSet((1u32 << n) - 1)
        }
    }

    /// Builds the set from distinct 0-based indices; `None` on repeats.
    pub fn from_indices(indices: &[usize]) -> Option<Self> {
        let mut bits = 0u32;
        for &i in indices {
            assert!(i < MAX_INDICES);
            if bits & (1 << i) != 0 {
                return None;
            }
            bits |= 1 << i;
        }
        Some(IndexSet(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_INDICES && self.0 & (1 << i) != 0
    }

    pub fn insert(self, i: usize) -> Self {
        IndexSet(self.0 | (1 << i))
    }

    pub fn remove(self, i: usize) -> Self {
        IndexSet(self.0 & !(1 << i))
    }

    pub fn is_disjoint(self, other: IndexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: IndexSet) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        IndexSet(IndexSet::full(n).0 & !self.0)
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Number of elements of the set strictly below `i`.
    pub fn rank_of(self, i: usize) -> usize {
        let below = if i >= MAX_INDICES { u32::MAX } else { (1u32 << i) - 1 };
        (self.0 & below).count_ones() as usize
    }

    /// `dx_self ∧ dx_other = sign · dx_{self ∪ other}`; `None` if the sets meet.
    pub fn wedge_sign(self, other: IndexSet) -> Option<i32> {
        if !self.is_disjoint(other) {
            return None;
        }
        // inversions: pairs (i in self, j in other) with i > j
        let inversions: usize = other.iter().map(|j| self.len() - self.rank_of(j + 1)).sum();
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }

    /// All subsets of `{0, .., n-1}` of size `k`, in increasing order.
    pub fn all_of_size(n: usize, k: usize) -> Vec<IndexSet> {
        let mut out: Vec<IndexSet> = (0u32..(1u32 << n))
            .map(IndexSet)
            .filter(|s| s.len() == k)
            .collect();
        out.sort();
        out
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexSet {
    /// 1-based, e.g. `{1,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::from_indices(v).unwrap()
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(set(&[0]).wedge_sign(set(&[1])), Some(1));
        assert_eq!(set(&[1]).wedge_sign(set(&[0])), Some(-1));
        assert_eq!(set(&[0]).wedge_sign(set(&[0])), None);
        // dz ∧ dx∧dy = dx∧dy∧dz
        assert_eq!(set(&[2]).wedge_sign(set(&[0, 1])), Some(1));
        // dy∧dz ∧ dx: two transpositions
        assert_eq!(set(&[1, 2]).wedge_sign(set(&[0])), Some(1));
        assert_eq!(set(&[1, 3]).wedge_sign(set(&[0, 2])), Some(-1));
    }

    #[test]
    fn ordering_and_enumeration() {
        let all = IndexSet::all_of_size(4, 2);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], set(&[0, 1]));
        assert_eq!(all[5], set(&[2, 3]));
        assert!(set(&[3]) < set(&[0, 1]));
        assert_eq!(set(&[0, 2]).complement(3), set(&[1]));
        assert_eq!(set(&[0, 2]).to_string(), "{1,3}");
    }
}
