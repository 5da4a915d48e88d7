//! Exact linear algebra over `Q` and `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<BigRational>>) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn to_rational_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect()
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    rref(rows.to_vec()).1.len()
}

/// Affine dimension of a nonempty point set (`-1` for the empty set).
pub fn affine_dimension(points: &[&[i64]]) -> isize {
    let Some(first) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| q(a - b)).collect())
        .collect();
    if diffs.is_empty() {
        return 0;
    }
    rank(&diffs) as isize
}

/// Scales a rational vector to the primitive integer vector with the same
/// direction (positive multiple).
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    primitive(ints)
}

pub fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// Solves `A x = b` over the rationals, free variables set to zero.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let cols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            row.iter()
                .cloned()
                .chain(std::iter::once(bi.clone()))
                .collect()
        })
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &p) in red.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

/// Column-style Hermite reduction `A U = H` with `U` unimodular.
pub struct IntegerSolver {
    h: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    /// `pivots[i]` is the pivot column of row `i`, if any.
    pivots: Vec<Option<usize>>,
}

impl IntegerSolver {
    pub fn new(a: &[Vec<i64>]) -> Self {
        let m = a.len();
        let p = a.first().map_or(0, Vec::len);
        let mut h: Vec<Vec<BigInt>> = a
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut u: Vec<Vec<BigInt>> = (0..p)
            .map(|i| {
                (0..p)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut pivots = vec![None; m];
        let mut c = 0;
        for (i, pivot) in pivots.iter_mut().enumerate() {
            if c == p {
                break;
            }
            for c2 in c + 1..p {
                if h[i][c2].is_zero() {
                    continue;
                }
                let (a0, b0) = (h[i][c].clone(), h[i][c2].clone());
                let e = a0.extended_gcd(&b0);
                let (g, s, t) = (e.gcd, e.x, e.y);
                let (bg, ag) = (&b0 / &g, &a0 / &g);
                combine_columns(&mut h, c, c2, &s, &t, &bg, &ag);
                combine_columns(&mut u, c, c2, &s, &t, &bg, &ag);
            }
            if !h[i][c].is_zero() {
                if h[i][c].is_negative() {
                    for row in h.iter_mut().chain(u.iter_mut()) {
                        row[c] = -&row[c];
                    }
                }
                *pivot = Some(c);
                c += 1;
            }
        }
        Self { h, u, pivots }
    }

    /// An integer solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<BigInt>> {
        let p = self.u.len();
        let mut y = vec![BigInt::zero(); p];
        for (i, row) in self.h.iter().enumerate() {
            let mut rest = BigInt::from(b[i]);
            let upto = self.pivots[i].unwrap_or(p);
            for c in 0..upto.min(p) {
                rest -= &row[c] * &y[c];
            }
            match self.pivots[i] {
                Some(c) => {
                    let (quot, rem) = rest.div_rem(&row[c]);
                    if !rem.is_zero() {
                        return None;
                    }
                    y[c] = quot;
                }
                None => {
                    if !rest.is_zero() {
                        return None;
                    }
                }
            }
        }
        Some(
            (0..p)
                .map(|r| (0..p).map(|c| &self.u[r][c] * &y[c]).sum())
                .collect(),
        )
    }
}

/// `col c ← s·col c + t·col c2`, `col c2 ← -bg·col c + ag·col c2`.
fn combine_columns(
    m: &mut [Vec<BigInt>],
    c: usize,
    c2: usize,
    s: &BigInt,
    t: &BigInt,
    bg: &BigInt,
    ag: &BigInt,
) {
    for row in m.iter_mut() {
        let (x, y) = (row[c].clone(), row[c2].clone());
        row[c] = s * &x + t * &y;
        row[c2] = ag * &y - bg * &x;
    }
}
