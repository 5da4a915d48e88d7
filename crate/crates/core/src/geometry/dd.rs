//! Double description for pointed full-dimensional cones given by generators.
//!
//! Finds the facets of `cone(g_1, ..., g_m) ⊂ Q^D` as primitive integer
//! functionals `h` with `h·g >= 0` for every generator. Adjacency of rays is
//! decided combinatorially from zero sets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::linalg::{primitive, primitive_integer, rref};
use crate::bitset::BitSet;

/// A facet functional and the generators on which it vanishes.
pub struct ConeFacet {
    pub functional: Vec<BigInt>,
    pub zeros: BitSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Indices of a maximal independent subset, chosen greedily in index order.
fn greedy_basis(gens: &[Vec<BigInt>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let mut trial = rows.clone();
        trial.push(
            g.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        );
        let (_, pivots) = rref(trial.clone());
        if pivots.len() > rows.len() {
            rows = trial;
            chosen.push(i);
        }
    }
    chosen
}

/// Facets of the cone spanned by `gens`. The generators must span `Q^D`.
pub fn cone_facets(gens: &[Vec<BigInt>]) -> Vec<ConeFacet> {
    let m = gens.len();
    let dim = gens[0].len();
    let basis = greedy_basis(gens);
    assert_eq!(basis.len(), dim, "generators must span the ambient space");

    // Initial simplicial cone: rays are the columns of the inverse basis matrix.
    let aug: Vec<Vec<BigRational>> = basis
        .iter()
        .enumerate()
        .map(|(r, &b)| {
            let mut row: Vec<BigRational> = gens[b]
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            row.extend((0..dim).map(|c| BigRational::from_integer(BigInt::from(u8::from(c == r)))));
            row
        })
        .collect();
    let (inv, _) = rref(aug);
    let mut rays: Vec<Vec<BigInt>> = Vec::with_capacity(dim);
    let mut zeros: Vec<BitSet> = Vec::with_capacity(dim);
    for j in 0..dim {
        let col: Vec<BigRational> = inv.iter().map(|row| row[dim + j].clone()).collect();
        rays.push(primitive_integer(&col));
        zeros.push(BitSet::from_indices(
            m,
            basis
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != j)
                .map(|(_, &b)| b),
        ));
    }

    let in_basis = BitSet::from_indices(m, basis.iter().copied());
    for (g_idx, g) in gens.iter().enumerate() {
        if in_basis.contains(g_idx) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|h| dot(h, g)).collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&r| values[r].is_negative())
            .collect();
        if neg.is_empty() {
            for (r, value) in values.iter().enumerate() {
                if value.is_zero() {
                    zeros[r].insert(g_idx);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&r| values[r].is_positive())
            .collect();
        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = zeros[p].intersection(&zeros[q]);
                if common.count() + 2 < dim {
                    continue;
                }
                let blocked =
                    (0..rays.len()).any(|r| r != p && r != q && common.is_subset(&zeros[r]));
                if blocked {
                    continue;
                }
                let (sp, sq) = (&values[p], &values[q]);
                let ray: Vec<BigInt> = rays[q]
                    .iter()
                    .zip(&rays[p])
                    .map(|(hq, hp)| sp * hq - sq * hp)
                    .collect();
                let mut z = common;
                z.insert(g_idx);
                new_rays.push(primitive(ray));
                new_zeros.push(z);
            }
        }
        let mut kept_rays = Vec::new();
        let mut kept_zeros = Vec::new();
        for r in 0..rays.len() {
            if values[r].is_negative() {
                continue;
            }
            let mut z = zeros[r].clone();
            if values[r].is_zero() {
                z.insert(g_idx);
            }
            kept_rays.push(rays[r].clone());
            kept_zeros.push(z);
        }
        kept_rays.extend(new_rays);
        kept_zeros.extend(new_zeros);
        rays = kept_rays;
        zeros = kept_zeros;
    }
    rays.into_iter()
        .zip(zeros)
        .map(|(functional, zeros)| ConeFacet { functional, zeros })
        .collect()
}
