//! Finite posets given by reflexive up-sets, and the lattice test.

use crate::bitset::BitSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    up: Vec<BitSet>,
    up_sizes: Vec<usize>,
}

/// Outcome of [`FinitePoset::is_lattice`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeCheck {
    pub is_lattice: bool,
    /// First pair (in index order) without a join, or `None`.
    pub failure: Option<(usize, usize)>,
}

impl FinitePoset {
    /// `up[x]` must contain `x` and every element above it.
    pub fn from_up_sets(up: Vec<BitSet>) -> Self {
        let up_sizes = up.iter().map(BitSet::count).collect();
        Self { up, up_sizes }
    }

    /// Builds the poset from a comparison oracle `leq(a, b)`.
    pub fn from_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let up = (0..n)
            .map(|a| BitSet::from_indices(n, (0..n).filter(|&b| leq(a, b))))
            .collect();
        Self::from_up_sets(up)
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.up_sizes[x] == self.len())
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.up_sizes[x] == 1 && (0..self.len()).all(|y| self.leq(y, x)))
    }

    /// Least upper bound of `a` and `b`, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let common = self.up[a].intersection(&self.up[b]);
        let size = common.count();
        let found = common.iter().find(|&j| self.up_sizes[j] == size);
        found
    }

    /// Greatest lower bound of `a` and `b`, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len())
            .filter(|&x| self.leq(x, a) && self.leq(x, b))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&x| self.leq(x, m)))
    }

    /// A finite poset with a bottom element is a lattice iff every pair has a
    /// join; pairs are scanned in index order so the witness is lex-minimal.
    pub fn is_lattice(&self) -> LatticeCheck {
        let n = self.len();
        if n == 0 {
            return LatticeCheck {
                is_lattice: false,
                failure: None,
            };
        }
        if self.bottom().is_none() {
            let minimal: Vec<usize> = (0..n)
                .filter(|&x| (0..n).all(|y| y == x || !self.leq(y, x)))
                .collect();
            return LatticeCheck {
                is_lattice: false,
                failure: Some((minimal[0], minimal[1])),
            };
        }
        for a in 0..n {
            for b in a + 1..n {
                if self.join(a, b).is_none() {
                    return LatticeCheck {
                        is_lattice: false,
                        failure: Some((a, b)),
                    };
                }
            }
        }
        LatticeCheck {
            is_lattice: true,
            failure: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{interval, Permutation};

    fn boolean_lattice(k: usize) -> FinitePoset {
        FinitePoset::from_relation(1 << k, |a, b| a & !b == 0)
    }

    /// Oracle: brute-force meet and join tables.
    fn lattice_by_tables(p: &FinitePoset) -> bool {
        let n = p.len();
        let lub = |a: usize, b: usize| {
            let ub: Vec<usize> = (0..n).filter(|&x| p.leq(a, x) && p.leq(b, x)).collect();
            ub.iter()
                .copied()
                .find(|&m| ub.iter().all(|&x| p.leq(m, x)))
        };
        (0..n).all(|a| (0..n).all(|b| lub(a, b).is_some() && p.meet(a, b).is_some()))
    }

    #[test]
    fn boolean_lattice_is_lattice() {
        let b4 = boolean_lattice(4);
        assert!(b4.is_lattice().is_lattice);
        assert!(lattice_by_tables(&b4));
    }

    #[test]
    fn s3_fails_at_the_atoms() {
        let s3 = interval(&Permutation::identity(3), &Permutation::longest(3)).unwrap();
        let check = s3.poset().is_lattice();
        assert!(!check.is_lattice);
        let (a, b) = check.failure.unwrap();
        assert_eq!(s3.rank_of(a), 1);
        assert_eq!(s3.rank_of(b), 1);
        assert!(!lattice_by_tables(&s3.poset()));
    }

    #[test]
    fn four_crown_is_lattice() {
        let v = Permutation::parse("2143").unwrap();
        let w = Permutation::parse("4231").unwrap();
        let iv = interval(&v, &w).unwrap();
        assert_eq!(iv.len(), 10);
        assert!(iv.poset().is_lattice().is_lattice);
        assert!(lattice_by_tables(&iv.poset()));
    }

    #[test]
    fn join_only_check_agrees_with_tables_on_s4_intervals() {
        let all = Permutation::all(4);
        for v in &all {
            for w in &all {
                if let Ok(iv) = interval(v, w) {
                    let p = iv.poset();
                    assert_eq!(
                        p.is_lattice().is_lattice,
                        lattice_by_tables(&p),
                        "[{v},{w}]"
                    );
                }
            }
        }
    }
}
