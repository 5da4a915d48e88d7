//! Toricity of Bruhat intervals.
//!
//! Four predicates are computed independently: absence of a 2-crown
//! subinterval, the lattice property of `[v,w]`, the lattice property of
//! `Int[v,w]`, and the `q^{d-1}` coefficient of the R-polynomial. They must
//! agree; a disagreement is reported as [`Error::DisagreementBug`].

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::perm::{
    bruhat_leq_unchecked, interval, interval_poset, BruhatInterval, Permutation, RPolynomialCache,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A length-3 subinterval isomorphic to the Bruhat order of `S_3`.
    TwoCrown {
        lower: Permutation,
        upper: Permutation,
    },
    /// Two elements of `[v,w]` without a join.
    NoJoin { a: Permutation, b: Permutation },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricVerdict {
    pub v: Permutation,
    pub w: Permutation,
    pub d: usize,
    pub is_toric: bool,
    pub by_two_crown: bool,
    pub by_lattice: bool,
    pub by_interval_poset_lattice: bool,
    pub by_r_poly: bool,
    /// `|I| = 2^d` with binomial rank sizes; informational only.
    pub is_hypercube: bool,
    pub witness: Option<Witness>,
}

/// Whether `I` is a 2-crown: rank 3, six elements, two atoms, two coatoms,
/// every atom below every coatom.
pub fn is_two_crown(iv: &BruhatInterval) -> bool {
    if iv.d() != 3 || iv.len() != 6 {
        return false;
    }
    let (atoms, coatoms) = (iv.atoms(), iv.coatoms());
    atoms.len() == 2
        && coatoms.len() == 2
        && atoms
            .iter()
            .all(|&a| coatoms.iter().all(|&c| iv.cover_pairs().contains(&(a, c))))
        && iv.covers().len() == 8
}

/// First 2-crown subinterval in lexicographic order of `(v', w')`.
pub fn has_two_crown_subinterval(iv: &BruhatInterval) -> Option<(Permutation, Permutation)> {
    let up = iv.up_sets();
    let mut candidates = Vec::new();
    for a in 0..iv.len() {
        for b in up[a].iter() {
            if iv.rank_of(b) != iv.rank_of(a) + 3 {
                continue;
            }
            let size = (0..iv.len())
                .filter(|&c| up[a].contains(c) && up[c].contains(b))
                .count();
            if size == 6 {
                candidates.push((iv.element(a).clone(), iv.element(b).clone()));
            }
        }
    }
    candidates.sort();
    candidates
        .into_iter()
        .find(|(a, b)| is_two_crown(&interval(a, b).expect("comparable")))
}

/// Coefficient test: the interval is a torus iff the `q^{d-1}` coefficient
/// of `R_{v,w}` equals `-d`. A point (`d = 0`) counts as a torus.
pub fn r_poly_says_toric(iv: &BruhatInterval, cache: &mut RPolynomialCache) -> Result<bool> {
    let d = iv.d();
    if d == 0 {
        return Ok(true);
    }
    let r = cache.get(iv.v(), iv.w())?;
    Ok(r.coeff(d - 1) == -(d as i64))
}

pub fn classify_interval(
    iv: &BruhatInterval,
    cache: &mut RPolynomialCache,
) -> Result<ToricVerdict> {
    let crown = has_two_crown_subinterval(iv);
    let lattice = iv.poset().is_lattice();
    let int_lattice = interval_poset(iv).poset.is_lattice();
    let by_r_poly = r_poly_says_toric(iv, cache)?;
    let flags = [
        crown.is_none(),
        lattice.is_lattice,
        int_lattice.is_lattice,
        by_r_poly,
    ];
    if flags.iter().any(|&f| f != flags[0]) {
        return Err(Error::DisagreementBug {
            v: iv.v().to_string(),
            w: iv.w().to_string(),
            detail: format!(
                "two_crown={} lattice={} interval_poset={} r_poly={}",
                flags[0], flags[1], flags[2], flags[3]
            ),
        });
    }
    let witness = match (crown, lattice.failure) {
        (Some((lower, upper)), _) => Some(Witness::TwoCrown { lower, upper }),
        (None, Some((a, b))) => Some(Witness::NoJoin {
            a: iv.element(a).clone(),
            b: iv.element(b).clone(),
        }),
        (None, None) => None,
    };
    Ok(ToricVerdict {
        v: iv.v().clone(),
        w: iv.w().clone(),
        d: iv.d(),
        is_toric: flags[0],
        by_two_crown: flags[0],
        by_lattice: flags[1],
        by_interval_poset_lattice: flags[2],
        by_r_poly,
        is_hypercube: iv.is_hypercube_shaped(),
        witness,
    })
}

pub fn classify_toric(v: &Permutation, w: &Permutation) -> Result<ToricVerdict> {
    let iv = interval(v, w)?;
    classify_interval(&iv, &mut RPolynomialCache::new())
}

/// Cheap toricity check (R-polynomial coefficient only).
pub fn is_toric(v: &Permutation, w: &Permutation) -> Result<bool> {
    let iv = interval(v, w)?;
    r_poly_says_toric(&iv, &mut RPolynomialCache::new())
}

/// Classifies a batch in parallel; the output order matches the input.
pub fn classify_batch(pairs: &[(Permutation, Permutation)]) -> Vec<Result<ToricVerdict>> {
    pairs
        .par_iter()
        .map_init(RPolynomialCache::new, |cache, (v, w)| {
            let iv = interval(v, w)?;
            classify_interval(&iv, cache)
        })
        .collect()
}

/// Every pair `v <= w` in `S_n`, lexicographic in `(v, w)`.
pub fn all_intervals(n: usize) -> Vec<(Permutation, Permutation)> {
    let all = Permutation::all(n);
    let mut out = Vec::new();
    for v in &all {
        for w in &all {
            if bruhat_leq_unchecked(v, w) {
                out.push((v.clone(), w.clone()));
            }
        }
    }
    out
}

/// `count` distinct comparable pairs of `S_n` drawn from a seeded generator,
/// sorted lexicographically.
pub fn sample_intervals(n: usize, count: usize, seed: u64) -> Vec<(Permutation, Permutation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = BTreeSet::new();
    while out.len() < count {
        let (a, b) = (
            Permutation::random(n, &mut rng),
            Permutation::random(n, &mut rng),
        );
        if bruhat_leq_unchecked(&a, &b) {
            out.insert((a, b));
        } else if bruhat_leq_unchecked(&b, &a) {
            out.insert((b, a));
        }
    }
    out.into_iter().collect()
}

/// `count` distinct toric intervals of `S_n` with `d >= min_d`, seeded.
pub fn sample_toric_intervals(
    n: usize,
    count: usize,
    min_d: usize,
    seed: u64,
) -> Vec<(Permutation, Permutation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = BTreeSet::new();
    let mut cache = RPolynomialCache::new();
    while out.len() < count {
        let v = Permutation::random(n, &mut rng);
        let mut w = v.clone();
        // random upward walk keeps the pair comparable
        let steps = rng.gen_range(min_d..=n * (n - 1) / 2);
        for _ in 0..steps {
            let ups = crate::perm::covers_above(&w, None);
            if ups.is_empty() {
                break;
            }
            w = ups[rng.gen_range(0..ups.len())].upper.clone();
        }
        if w.length() - v.length() < min_d {
            continue;
        }
        let iv = interval(&v, &w).expect("walk stays above v");
        if r_poly_says_toric(&iv, &mut cache).expect("comparable") {
            out.insert((v, w));
        }
    }
    out.into_iter().collect()
}
