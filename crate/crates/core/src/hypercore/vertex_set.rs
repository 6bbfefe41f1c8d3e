use std::cmp::Ordering;
use std::fmt;

/// Largest vertex count a [`VertexSet`] can address.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices stored as a 64-bit mask.
///
/// Ordering is lexicographic on the ascending vertex sequence, so
/// `{0,1} < {0,1,2} < {0,2} < {1}`. Use [`VertexSet::bits`] when the
/// numeric (colex) order is wanted instead.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    /// First `k` vertices `{0, .., k-1}`.
    pub fn prefix(k: usize) -> Self {
        if k >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << k) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Largest vertex, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image of the set under a vertex map given as a slice.
    pub fn map(self, f: &[usize]) -> VertexSet {
        let mut out = 0u64;
        for v in self.iter() {
            out |= 1u64 << f[v];
        }
        VertexSet(out)
    }

    /// All `k`-subsets of this set, in ascending numeric order.
    pub fn subsets_of_size(self, k: usize) -> Vec<VertexSet> {
        fn rec(elems: &[usize], k: usize, acc: u64, out: &mut Vec<VertexSet>) {
            if k == 0 {
                out.push(VertexSet(acc));
                return;
            }
            for i in (k - 1)..elems.len() {
                rec(&elems[..i], k - 1, acc | 1u64 << elems[i], out);
            }
        }
        let elems = self.to_vec();
        let mut out = Vec::new();
        if k <= elems.len() {
            rec(&elems, k, 0, &mut out);
        }
        out
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.0, other.0);
        if a == b {
            return Ordering::Equal;
        }
        let d = (a ^ b).trailing_zeros();
        // Below bit d the two sequences agree. Whichever set owns bit d
        // continues with d; the other either stops (shorter prefix) or
        // continues with something larger.
        let (owner, other_rest) = if a >> d & 1 == 1 { (Ordering::Less, b >> d) } else { (Ordering::Greater, a >> d) };
        if other_rest == 0 {
            owner.reverse()
        } else {
            owner
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `n choose k` without overflow for the sizes used in this crate.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn lexicographic_order_matches_sequences() {
        let mut sets = [set(&[1]), set(&[0, 2]), set(&[0, 1, 2]), set(&[0, 1]), set(&[1, 2]), set(&[0])];
        sets.sort();
        let seqs: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        let mut expected = seqs.clone();
        expected.sort();
        assert_eq!(seqs, expected);
        assert_eq!(seqs[0], vec![0]);
    }

    #[test]
    fn subsets_of_size_counts() {
        let s = VertexSet::prefix(6);
        for k in 0..=7 {
            let subs = s.subsets_of_size(k);
            assert_eq!(subs.len() as u64, binomial(6, k as u64));
            assert!(subs.iter().all(|x| x.len() == k && x.is_subset(s)));
            let mut dedup = subs.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), subs.len());
        }
        assert_eq!(set(&[1, 4, 6]).subsets_of_size(2), vec![set(&[1, 4]), set(&[1, 6]), set(&[4, 6])]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(20, 10), 184756);
    }
}
