//! Constituent positroids `M_k(v,w) = {u[k] : u ∈ [v,w]}`, Grassmann
//! necklaces and positroid polytopes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::geometry::{hull, LatticePolytope};
use crate::perm::{BruhatInterval, Permutation};
use crate::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constituent {
    pub n: usize,
    pub k: usize,
    pub bases: BTreeSet<Subset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_interval: Option<(Permutation, Permutation)>,
}

impl Constituent {
    pub fn new(n: usize, k: usize, bases: impl IntoIterator<Item = Subset>) -> Self {
        Self {
            n,
            k,
            bases: bases.into_iter().collect(),
            source_interval: None,
        }
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.bases.contains(&s)
    }

    /// The matroid of complements, of rank `n - k`.
    pub fn dual(&self) -> Constituent {
        Constituent::new(
            self.n,
            self.n - self.k,
            self.bases.iter().map(|b| b.complement(self.n)),
        )
    }
}

pub fn constituent(iv: &BruhatInterval, k: usize) -> Constituent {
    assert!((1..=iv.n()).contains(&k), "k out of range");
    Constituent {
        n: iv.n(),
        k,
        bases: iv.elements().map(|u| u.prefix(k)).collect(),
        source_interval: Some((iv.v().clone(), iv.w().clone())),
    }
}

/// All constituents `M_1, .., M_{n-1}`.
pub fn constituents(iv: &BruhatInterval) -> Vec<Constituent> {
    (1..iv.n()).map(|k| constituent(iv, k)).collect()
}

/// Basis exchange: for bases `A, B` and `a ∈ A∖B` some `b ∈ B∖A` has
/// `A - a + b` a basis.
pub fn verify_matroid(c: &Constituent) -> bool {
    if c.bases.is_empty() || c.bases.iter().any(|b| b.len() != c.k) {
        return false;
    }
    c.bases.iter().all(|&a| {
        c.bases.iter().all(|&b| {
            a.difference(b).elements().all(|x| {
                b.difference(a)
                    .elements()
                    .any(|y| c.contains(a.without(x).with(y)))
            })
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassmannNecklace {
    pub entries: Vec<Subset>,
}

impl GrassmannNecklace {
    pub fn distinct_entries(&self) -> usize {
        self.entries.iter().collect::<BTreeSet<_>>().len()
    }
}

/// Sorted elements of `s` relative to the cyclic order starting at `start`.
fn shifted_key(s: Subset, start: usize, n: usize) -> Vec<usize> {
    let mut key: Vec<usize> = s.elements().map(|e| (e + n - start) % n).collect();
    key.sort_unstable();
    key
}

/// `I_a` is the lexicographically least basis in the order `a < a+1 < .. < a-1`.
pub fn grassmann_necklace(c: &Constituent) -> GrassmannNecklace {
    let entries = (0..c.n)
        .map(|a| {
            *c.bases
                .iter()
                .min_by_key(|b| shifted_key(**b, a, c.n))
                .expect("nonempty basis set")
        })
        .collect();
    GrassmannNecklace { entries }
}

/// `conv(e_I : I ∈ C)`.
pub fn positroid_polytope(c: &Constituent) -> LatticePolytope {
    let pts: Vec<Vec<i64>> = c.bases.iter().map(|b| b.indicator(c.n)).collect();
    hull(&pts)
}

/// Two intervals with the same constituent tuple, if any.
pub fn constituent_collision(
    intervals: &[BruhatInterval],
) -> Option<((Permutation, Permutation), (Permutation, Permutation))> {
    let mut seen: BTreeMap<Vec<BTreeSet<Subset>>, (Permutation, Permutation)> = BTreeMap::new();
    for iv in intervals {
        let key: Vec<BTreeSet<Subset>> = constituents(iv).into_iter().map(|c| c.bases).collect();
        let here = (iv.v().clone(), iv.w().clone());
        if let Some(prev) = seen.insert(key, here.clone()) {
            return Some((prev, here));
        }
    }
    None
}

/// Whether `[v,w] ↦ (M_1, .., M_{n-1})` is injective on all intervals of `S_n`.
pub fn constituents_determine_interval(n: usize) -> bool {
    let ivs: Vec<BruhatInterval> = crate::classify::all_intervals(n)
        .iter()
        .map(|(v, w)| crate::perm::interval(v, w).expect("comparable"))
        .collect();
    constituent_collision(&ivs).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{all_intervals, is_toric};
    use crate::mrgraph::{build_graph, default_reduced_word, flag_minor};
    use crate::perm::interval;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn labels(c: &Constituent) -> Vec<String> {
        c.bases.iter().map(|b| b.to_string()).collect()
    }

    /// Gale-minimum oracle: the basis dominated componentwise by every basis
    /// in the shifted order.
    fn gale_min(c: &Constituent, a: usize) -> Subset {
        let keyed: Vec<(Subset, Vec<usize>)> = c
            .bases
            .iter()
            .map(|&b| (b, shifted_key(b, a, c.n)))
            .collect();
        keyed
            .iter()
            .find(|(_, k)| {
                keyed
                    .iter()
                    .all(|(_, k2)| k.iter().zip(k2).all(|(x, y)| x <= y))
            })
            .map(|(b, _)| *b)
            .expect("matroids have a Gale minimum")
    }

    #[test]
    fn known_constituents() {
        let base = interval(&p("1324"), &p("4231")).unwrap();
        assert_eq!(labels(&constituent(&base, 2)), ["13", "14", "23", "24"]);
        assert_eq!(labels(&constituent(&base, 4)), ["1234"]);
        let crown = interval(&p("2143"), &p("4231")).unwrap();
        assert_eq!(
            labels(&constituent(&crown, 2)),
            ["12", "13", "14", "23", "24"]
        );
    }

    #[test]
    fn matroid_axiom() {
        assert!(!verify_matroid(&Constituent::new(
            4,
            2,
            [Subset::from_labels(&[1, 2]), Subset::from_labels(&[3, 4])]
        )));
        assert!(verify_matroid(&Constituent::new(
            4,
            2,
            [Subset::from_labels(&[1, 2])]
        )));
        for (v, w) in all_intervals(4) {
            let iv = interval(&v, &w).unwrap();
            for k in 1..=4 {
                assert!(verify_matroid(&constituent(&iv, k)), "[{v},{w}] k={k}");
            }
        }
    }

    #[test]
    fn necklace_matches_gale_minimum() {
        let uniform = Constituent::new(5, 1, (0..5).map(|i| Subset::from_zero_based([i])));
        assert_eq!(
            grassmann_necklace(&uniform).entries,
            (0..5)
                .map(|i| Subset::from_zero_based([i]))
                .collect::<Vec<_>>()
        );
        for (v, w) in all_intervals(4) {
            let iv = interval(&v, &w).unwrap();
            for k in 1..4 {
                let c = constituent(&iv, k);
                let neck = grassmann_necklace(&c);
                for (a, e) in neck.entries.iter().enumerate() {
                    assert!(c.contains(*e));
                    assert_eq!(*e, gale_min(&c, a));
                }
            }
        }
        let base = interval(&p("1324"), &p("4231")).unwrap();
        let neck: Vec<String> = grassmann_necklace(&constituent(&base, 2))
            .entries
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(neck, ["13", "23", "13", "14"]);
    }

    #[test]
    fn positroid_polytopes() {
        let base = interval(&p("1324"), &p("4231")).unwrap();
        let sq = positroid_polytope(&constituent(&base, 2));
        assert_eq!(sq.num_vertices(), 4);
        assert_eq!(sq.affine_dim(), 2);
        let point = positroid_polytope(&constituent(&base, 4));
        assert_eq!(point.vertices(), &[vec![1, 1, 1, 1]]);
    }

    #[test]
    fn polytope_dimension_from_necklace_on_toric_intervals() {
        for (v, w) in all_intervals(4) {
            if !is_toric(&v, &w).unwrap() {
                continue;
            }
            let iv = interval(&v, &w).unwrap();
            for k in 1..4 {
                let c = constituent(&iv, k);
                let dim = positroid_polytope(&c).affine_dim();
                assert_eq!(
                    dim + 1,
                    grassmann_necklace(&c).distinct_entries(),
                    "[{v},{w}] k={k}"
                );
            }
        }
    }

    #[test]
    fn support_of_flag_minors_is_the_constituent() {
        for (v, w) in all_intervals(4) {
            let iv = interval(&v, &w).unwrap();
            let g = build_graph(&v, &default_reduced_word(&w)).unwrap();
            for k in 1..4 {
                let support: BTreeSet<Subset> = Subset::all_of_size(4, k)
                    .into_iter()
                    .filter(|&s| !flag_minor(&g, s).is_empty())
                    .collect();
                assert_eq!(support, constituent(&iv, k).bases);
            }
        }
    }

    #[test]
    fn injectivity_of_constituent_tuples() {
        assert!(constituents_determine_interval(3));
        assert!(constituents_determine_interval(4));
        // a single constituent is not enough
        let ivs: Vec<BruhatInterval> = all_intervals(3)
            .iter()
            .map(|(v, w)| interval(v, w).unwrap())
            .collect();
        let mut by_m1: BTreeMap<BTreeSet<Subset>, usize> = BTreeMap::new();
        for iv in &ivs {
            *by_m1.entry(constituent(iv, 1).bases).or_default() += 1;
        }
        assert!(by_m1.values().any(|&c| c > 1));
    }

    #[test]
    fn json_shape() {
        let c = Constituent::new(
            4,
            2,
            [Subset::from_labels(&[1, 3]), Subset::from_labels(&[1, 4])],
        );
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"n":4,"k":2,"bases":[[1,3],[1,4]]}"#);
        assert_eq!(serde_json::from_str::<Constituent>(&s).unwrap(), c);
    }
}
