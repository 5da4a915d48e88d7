//! Subsets of `[n]` (at most 64 elements) stored as bit masks.
//!
//! Ordering is lexicographic on the sorted element lists, which is the
//! canonical printing order for bases and necklaces.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// `{0, .., k-1}` in 0-indexed terms, i.e. `[k]`.
    pub fn initial(k: usize) -> Self {
        if k >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << k) - 1)
        }
    }

    /// Builds a subset from 0-indexed elements.
    pub fn from_zero_based(elems: impl IntoIterator<Item = usize>) -> Self {
        Subset(elems.into_iter().fold(0, |m, e| m | 1 << e))
    }

    /// Builds a subset from 1-indexed labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        Self::from_zero_based(labels.iter().map(|&l| l - 1))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Self {
        Subset(self.0 | 1 << e)
    }

    pub fn without(self, e: usize) -> Self {
        Subset(self.0 & !(1 << e))
    }

    pub fn union(self, o: Subset) -> Self {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Self {
        Subset(self.0 & o.0)
    }

    pub fn difference(self, o: Subset) -> Self {
        Subset(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    /// Complement inside `[n]`.
    pub fn complement(self, n: usize) -> Self {
        Subset(Self::initial(n).0 & !self.0)
    }

    /// Shifts every element up by `offset`.
    pub fn shifted(self, offset: usize) -> Self {
        Subset(self.0 << offset)
    }

    /// 0-indexed elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let t = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(t)
        })
    }

    /// 1-indexed labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.elements().map(|e| e + 1).collect()
    }

    /// Indicator vector in `{0,1}^n`.
    pub fn indicator(self, n: usize) -> Vec<i64> {
        (0..n).map(|i| i64::from(self.contains(i))).collect()
    }

    /// All `k`-subsets of `[n]` in lexicographic order.
    pub fn all_of_size(n: usize, k: usize) -> Vec<Subset> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Subset>) {
            if cur.len() == k {
                out.push(Subset::from_zero_based(cur.iter().copied()));
                return;
            }
            for e in start..n {
                if n - e < k - cur.len() {
                    break;
                }
                cur.push(e);
                rec(e + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.elements(), other.elements());
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.labels();
        if labels.iter().all(|&l| l < 10) {
            for l in labels {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(d)?;
        if labels.iter().any(|&l| l == 0 || l > 64) {
            return Err(serde::de::Error::custom("subset labels must lie in 1..=64"));
        }
        Ok(Subset::from_labels(&labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_on_sorted_lists() {
        let mut v = [Subset::from_labels(&[2, 4]),
            Subset::from_labels(&[1, 4]),
            Subset::from_labels(&[1, 3]),
            Subset::from_labels(&[2, 3])];
        v.sort();
        let shown: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["13", "14", "23", "24"]);
    }

    #[test]
    fn all_of_size_counts() {
        assert_eq!(Subset::all_of_size(6, 3).len(), 20);
        assert_eq!(Subset::all_of_size(4, 0), vec![Subset::EMPTY]);
        let v = Subset::all_of_size(5, 2);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn complement_and_json() {
        let s = Subset::from_labels(&[1, 3]);
        assert_eq!(s.complement(4), Subset::from_labels(&[2, 4]));
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, "[1,3]");
        assert_eq!(serde_json::from_str::<Subset>(&j).unwrap(), s);
    }
}
