//! Two infinite families of toric intervals.
//!
//! The even family `[s_2 s_4 ⋯ s_{n-2}, (1 n)]` for even `n` comes with closed
//! forms for every flag minor in the word `s_1 s_2 ⋯ s_{n-1} ⋯ s_2 s_1`. The
//! hypercube family `[v_n, w_n] ⊂ S_{2^n}` has membership decided by dyadic
//! well-distribution and constituents cut out by floor/ceiling bounds on
//! dyadic blocks.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::face_lattice;
use crate::mrgraph::{
    build_graph, flag_minor_toric, symbolic_matrix, MrMonomial, ReducedWord, WiringGraph,
};
use crate::perm::{interval, BruhatInterval, Permutation};
use crate::positroid::{constituent, positroid_polytope, Constituent};
use crate::subset::Subset;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Even family
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenFamily {
    pub n: usize,
    pub v: Permutation,
    pub w: Permutation,
    /// `s_1 s_2 ⋯ s_{n-1} ⋯ s_2 s_1`.
    pub word: ReducedWord,
}

impl EvenFamily {
    /// `3n/2 - 2`.
    pub fn d(&self) -> usize {
        3 * self.n / 2 - 2
    }

    pub fn interval(&self) -> BruhatInterval {
        interval(&self.v, &self.w).expect("v <= w by construction")
    }

    pub fn graph(&self) -> WiringGraph {
        build_graph(&self.v, &self.word).expect("v <= w by construction")
    }

    /// `v[k]`: `[k]` for odd `k`, `[k-1] ∪ {k+1}` for even `k`.
    pub fn bottom_basis(&self, k: usize) -> Subset {
        self.v.prefix(k)
    }
}

pub fn even_family(n: usize) -> Result<EvenFamily> {
    if n < 4 || !n.is_multiple_of(2) || n > 64 {
        return Err(Error::InvalidParameter(format!(
            "even family needs an even n >= 4, got {n}"
        )));
    }
    let v = (1..n / 2).fold(Permutation::identity(n), |u, q| u.times_simple(2 * q));
    let w = Permutation::identity(n).swap_positions(0, n - 1);
    let letters: Vec<usize> = (1..n).chain((1..n - 1).rev()).collect();
    let word = ReducedWord::for_permutation(&w, letters)?;
    Ok(EvenFamily { n, v, w, word })
}

/// Exponents of a word-position monomial `∏ t_p^{e_p}`, indexed by `p - 1`.
type PositionExponents = Vec<i64>;

fn position_unit(n: usize, p: usize) -> PositionExponents {
    let mut e = vec![0; 2 * n - 3];
    if p > 0 {
        e[p - 1] = 1;
    }
    e
}

fn add_into(acc: &mut PositionExponents, other: &[i64], sign: i64) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a += sign * b;
    }
}

/// The single-row minor `Δ_{{m}}`: `1` for `m = 1`, otherwise
/// `t_{2q-1} ∏_{j<q-1} t_{2n-3-2j}` for `m = 2q` and the product alone for
/// `m = 2q - 1`.
fn single_row_exponents(n: usize, m: usize) -> PositionExponents {
    let mut e = vec![0; 2 * n - 3];
    let q = m.div_ceil(2);
    for j in 0..q.saturating_sub(1) {
        e[2 * n - 4 - 2 * j] += 1;
    }
    if m.is_multiple_of(2) {
        e[2 * q - 2] += 1;
    }
    e
}

/// `Δ_{[k]∖i∪j}` as word-position exponents, before checking monomiality.
fn exchange_exponents(n: usize, k: usize, i: usize, j: usize) -> PositionExponents {
    let mut e = vec![0; 2 * n - 3];
    for q in i + 1..=k {
        add_into(&mut e, &position_unit(n, q - 1), 1);
    }
    add_into(&mut e, &single_row_exponents(n, j), 1);
    let denominator = if k % 2 == 1 { k } else { k + 1 };
    add_into(&mut e, &single_row_exponents(n, denominator), -1);
    e
}

fn to_bridge_monomial(graph: &WiringGraph, e: &[i64], what: &str) -> Result<MrMonomial> {
    if e.iter().any(|&x| x < 0) {
        return Err(Error::InvalidParameter(format!(
            "{what}: closed form is not a monomial ({e:?})"
        )));
    }
    let mut exponents = vec![0u8; graph.d()];
    for (idx, &x) in e.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let slot = graph.bridge_coordinate(idx + 1).ok_or_else(|| {
            Error::InvalidParameter(format!("{what}: t_{} is not a bridge", idx + 1))
        })?;
        exponents[slot] = x as u8;
    }
    Ok(MrMonomial { exponents, sign: 1 })
}

/// Closed form of `Δ_{[k]∖i∪j}` for `1 <= i <= k < j <= n` (1-indexed).
pub fn even_family_minor(n: usize, k: usize, i: usize, j: usize) -> Result<MrMonomial> {
    let fam = even_family(n)?;
    if !(1..n).contains(&k) || !(1..=k).contains(&i) || !(k + 1..=n).contains(&j) {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= i <= k < j <= n, got n={n} k={k} i={i} j={j}"
        )));
    }
    to_bridge_monomial(
        &fam.graph(),
        &exchange_exponents(n, k, i, j),
        &format!("Δ_[{k}]∖{i}∪{j}"),
    )
}

/// Closed form of `Δ_I` for any `I` in `M_k`: `1` on `v[k]`, otherwise the
/// exchange formula.
pub fn even_family_basis_minor(fam: &EvenFamily, basis: Subset) -> Result<MrMonomial> {
    let n = fam.n;
    let k = basis.len();
    let graph = fam.graph();
    if basis == fam.bottom_basis(k) {
        return Ok(MrMonomial {
            exponents: vec![0; graph.d()],
            sign: 1,
        });
    }
    let top = Subset::initial(k);
    let missing: Vec<usize> = top.difference(basis).elements().collect();
    let extra: Vec<usize> = basis.difference(top).elements().collect();
    match (missing.as_slice(), extra.as_slice()) {
        ([i], [j]) => to_bridge_monomial(
            &graph,
            &exchange_exponents(n, k, i + 1, j + 1),
            &basis.to_string(),
        ),
        _ => Err(Error::InvalidParameter(format!(
            "{basis} is not a basis of the even family constituent"
        ))),
    }
}

/// The coefficient data `(A^{(k)}, b^{(k)})` of the even family in
/// word-position coordinates: column `m` of `A` is `a_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenAffineData {
    pub k: usize,
    pub columns: Vec<Vec<i64>>,
    pub offset: Vec<i64>,
}

impl EvenAffineData {
    pub fn apply(&self, basis: Subset) -> Vec<i64> {
        let mut out = self.offset.clone();
        for m in basis.elements() {
            add_into(&mut out, &self.columns[m], 1);
        }
        out
    }
}

/// `Σ_{l ∈ range} coeff(l) e_l`, with `e_0 = 0`.
fn weighted_units(
    n: usize,
    range: impl Iterator<Item = usize>,
    coeff: impl Fn(usize) -> i64,
) -> Vec<i64> {
    let mut e = vec![0; 2 * n - 3];
    for l in range {
        if l > 0 {
            e[l - 1] += coeff(l);
        }
    }
    e
}

/// Explicit `a_m^{(k)}` and `b^{(k)}` for the even family.
pub fn even_affine_data(n: usize, k: usize) -> EvenAffineData {
    let base = |m: usize| single_row_exponents(n, m);
    let diff = |a: Vec<i64>, b: &[i64], c: &[i64]| {
        let mut out = a;
        add_into(&mut out, b, -1);
        add_into(&mut out, c, 1);
        out
    };
    if k.is_multiple_of(2) {
        let tail = weighted_units(n, 1..k, |l| l as i64);
        let columns = (1..=n)
            .map(|m| match m {
                _ if m < k => weighted_units(n, m..k, |_| -1),
                _ if m == k => vec![0; 2 * n - 3],
                _ => diff(base(m), &base(k + 1), &tail),
            })
            .collect();
        EvenAffineData {
            k,
            columns,
            offset: vec![0; 2 * n - 3],
        }
    } else {
        let tail = weighted_units(n, 0..k, |_| 1);
        let columns = (1..=n)
            .map(|m| {
                if m <= k {
                    weighted_units(n, 0..m, |_| 1)
                } else {
                    diff(base(m), &base(k), &tail)
                }
            })
            .collect();
        let offset = weighted_units(n, 1..=k, |j| -((k - j) as i64));
        EvenAffineData { k, columns, offset }
    }
}

/// Per-`k` structural data for the even family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenStructure {
    pub k: usize,
    /// `"product"` for even `k`, `"cone"` for odd `k`.
    pub shape: String,
    pub expected_f_vector: Vec<usize>,
    pub positroid_f_vector: Vec<usize>,
    pub summand_f_vector: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenFamilyReport {
    pub n: usize,
    pub v: Permutation,
    pub w: Permutation,
    pub d: usize,
    pub minors_checked: usize,
    pub structures: Vec<EvenStructure>,
    pub z_points: usize,
    pub failures: Vec<String>,
}

impl EvenFamilyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// f-vector `(f_0, .., f_dim)` of `Δ^a × Δ^b`.
pub fn simplex_product_f_vector(a: usize, b: usize) -> Vec<usize> {
    (0..=a + b)
        .map(|j| {
            (0..=j)
                .filter(|&p| p <= a && j - p <= b)
                .map(|p| binomial(a + 1, p + 1) * binomial(b + 1, j - p + 1))
                .sum()
        })
        .collect()
}

/// f-vector of the pyramid over a polytope with f-vector `f`.
pub fn cone_f_vector(f: &[usize]) -> Vec<usize> {
    (0..=f.len())
        .map(|j| f.get(j).copied().unwrap_or(0) + if j == 0 { 1 } else { f[j - 1] })
        .collect()
}

/// Closed-form minors against LGV for every basis of every constituent.
pub fn even_family_minor_check(fam: &EvenFamily) -> Result<(usize, Vec<String>)> {
    let graph = fam.graph();
    let iv = fam.interval();
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 1..fam.n {
        let data = even_affine_data(fam.n, k);
        for basis in constituent(&iv, k).bases {
            let closed = even_family_basis_minor(fam, basis)?;
            let lgv = flag_minor_toric(&graph, basis)?;
            if lgv.as_ref() != Some(&closed) {
                failures.push(format!(
                    "k={k} Δ_{basis}: closed form {closed:?}, LGV {lgv:?}"
                ));
            }
            let predicted = to_bridge_monomial(&graph, &data.apply(basis), "a-vector")?;
            if predicted != closed {
                failures.push(format!("k={k} Δ_{basis}: A e_I + b gives {predicted:?}"));
            }
            checked += 1;
        }
    }
    Ok((checked, failures))
}

/// Positroid and summand polytopes against the analytic f-vectors.
pub fn even_family_structures(fam: &EvenFamily) -> Result<Vec<EvenStructure>> {
    let iv = fam.interval();
    let graph = fam.graph();
    let n = fam.n;
    let mut out = Vec::new();
    for k in 1..n {
        let product = simplex_product_f_vector(k - 1, n - k - 1);
        let (shape, expected) = if k % 2 == 0 {
            ("product", product)
        } else {
            ("cone", cone_f_vector(&product))
        };
        let positroid = positroid_polytope(&constituent(&iv, k));
        let summand = crate::moment::summand_data(&iv, &graph, k)?.polytope;
        out.push(EvenStructure {
            k,
            shape: shape.to_string(),
            expected_f_vector: expected,
            positroid_f_vector: face_lattice(&positroid)?.f_vector(),
            summand_f_vector: face_lattice(&summand)?.f_vector(),
        });
    }
    Ok(out)
}

/// Column-reduces `g` by upper-triangular operations to the Schubert-cell
/// normal form for `w`: column `c` has its lowest nonzero entry at row
/// `w(c)` and vanishes on the pivot rows of earlier columns. Pivots are
/// scaled to `pivot_values[c]`.
pub fn schubert_normal_form(
    g: &[Vec<BigRational>],
    w: &Permutation,
    pivot_values: &[BigRational],
) -> Option<Vec<Vec<BigRational>>> {
    let n = g.len();
    let mut cols: Vec<Vec<BigRational>> = (0..n)
        .map(|c| (0..n).map(|r| g[r][c].clone()).collect())
        .collect();
    for c in 0..n {
        for earlier in 0..c {
            let r = w.at(earlier);
            if cols[c][r].is_zero() {
                continue;
            }
            let factor = &cols[c][r] / &cols[earlier][r];
            let prev = cols[earlier].clone();
            for (x, y) in cols[c].iter_mut().zip(&prev) {
                *x -= &factor * y;
            }
        }
        let pivot = w.at(c);
        if cols[c][pivot].is_zero() || cols[c][pivot + 1..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let scale = &pivot_values[c] / &cols[c][pivot];
        for x in cols[c].iter_mut() {
            *x *= &scale;
        }
    }
    Some(
        (0..n)
            .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
            .collect(),
    )
}

/// The coordinates `z_1, .., z_{2n-3}` of the Schubert-cell matrix for
/// `(1 n)`: the first column reads `z_{n-1}, .., z_1, 1` downwards and the
/// first row reads `z_{n-1}, -z_n, z_{n+1}, -z_{n+2}, .., z_{2n-3}, -1` with
/// alternating signs. Index 0 is unused.
pub fn schubert_coordinates(normal: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = normal.len();
    let mut z = vec![BigRational::zero(); 2 * n - 2];
    for r in 0..n - 1 {
        z[n - 1 - r] = normal[r][0].clone();
    }
    for c in 1..n - 1 {
        let x = normal[0][c].clone();
        z[n + c - 1] = if c % 2 == 1 { -x } else { x };
    }
    z
}

/// Shape of the normal form apart from the coordinates: `-1` on the
/// diagonal of rows `2..n-1`, zeros elsewhere outside the first row and
/// column.
fn has_expected_shape(normal: &[Vec<BigRational>]) -> bool {
    let n = normal.len();
    let minus_one = -BigRational::one();
    (1..n).all(|r| {
        (1..n).all(|c| {
            let x = &normal[r][c];
            if r == c && r < n - 1 {
                *x == minus_one
            } else {
                x.is_zero()
            }
        })
    }) && normal[n - 1][0].is_one()
        && normal[0][n - 1] == minus_one
}

fn random_nonzero_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = loop {
        let x = rng.gen_range(-9..=9);
        if x != 0 {
            break x;
        }
    };
    BigRational::new(BigInt::from(num), BigInt::from(rng.gen_range(1..=9)))
}

/// Evaluates the MR matrix at seeded random bridge values, reduces it to the
/// Schubert normal form and checks that every `z_i` is invertible,
/// `z_{n-1} = z_{n-2} z_n` and `z_i z_{2n-2-i} = z_{i+1} z_{2n-3-i}` for even
/// `2 <= i < n-2`.
pub fn even_family_z_relations(fam: &EvenFamily, points: usize, seed: u64) -> Vec<String> {
    let n = fam.n;
    let graph = fam.graph();
    let sym = symbolic_matrix(&graph);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = BigRational::one();
    let mut pivots = vec![-one.clone(); n];
    pivots[0] = one;
    let mut failures = Vec::new();
    for point in 0..points {
        let values: BTreeMap<usize, BigRational> = graph
            .pds
            .jcirc
            .iter()
            .map(|&p| (p, random_nonzero_rational(&mut rng)))
            .collect();
        let at = |p: usize| values.get(&p).cloned().unwrap_or_else(BigRational::zero);
        let g: Vec<Vec<BigRational>> = sym
            .iter()
            .map(|row| row.iter().map(|e| e.eval(&at)).collect())
            .collect();
        let Some(normal) = schubert_normal_form(&g, &fam.w, &pivots) else {
            failures.push(format!(
                "point {point}: matrix is not in the Schubert cell of {}",
                fam.w
            ));
            continue;
        };
        if !has_expected_shape(&normal) {
            failures.push(format!(
                "point {point}: normal form has an unexpected shape"
            ));
            continue;
        }
        let z = schubert_coordinates(&normal);
        if let Some(i) = (1..=2 * n - 3).find(|&i| z[i].is_zero()) {
            failures.push(format!("point {point}: z_{i} vanishes"));
        }
        if z[n - 1] != &z[n - 2] * &z[n] {
            failures.push(format!("point {point}: z_{} != z_{} z_{}", n - 1, n - 2, n));
        }
        for i in (2..n.saturating_sub(2)).step_by(2) {
            if &z[i] * &z[2 * n - 2 - i] != &z[i + 1] * &z[2 * n - 3 - i] {
                failures.push(format!(
                    "point {point}: z_{i} z_{} != z_{} z_{}",
                    2 * n - 2 - i,
                    i + 1,
                    2 * n - 3 - i
                ));
            }
        }
    }
    failures
}

/// Every even-family check: toricity, closed-form minors and a-vectors
/// against LGV, star plabic graphs, polytope types and the z relations.
pub fn verify_even_family(n: usize, z_points: usize, seed: u64) -> Result<EvenFamilyReport> {
    let fam = even_family(n)?;
    let iv = fam.interval();
    let mut failures = Vec::new();
    if !crate::classify::is_toric(&fam.v, &fam.w)? {
        failures.push("interval is not toric".to_string());
    }
    if iv.d() != fam.d() || fam.v.length() != n / 2 - 1 || fam.w.length() != 2 * n - 3 {
        failures.push(format!(
            "lengths: d={} ℓ(v)={} ℓ(w)={}",
            iv.d(),
            fam.v.length(),
            fam.w.length()
        ));
    }
    let (minors_checked, minor_failures) = even_family_minor_check(&fam)?;
    failures.extend(minor_failures);
    for k in 1..n {
        let star = crate::plabic::positroid_from_graph(&crate::plabic::family_star_graph(n, k)?)?;
        if star != constituent(&iv, k).bases {
            failures.push(format!(
                "k={k}: star graph positroid differs from the constituent"
            ));
        }
    }
    let structures = even_family_structures(&fam)?;
    for s in &structures {
        if s.positroid_f_vector != s.expected_f_vector || s.summand_f_vector != s.expected_f_vector
        {
            failures.push(format!(
                "k={}: f-vectors {:?} / {:?}, expected {:?}",
                s.k, s.positroid_f_vector, s.summand_f_vector, s.expected_f_vector
            ));
        }
    }
    failures.extend(even_family_z_relations(&fam, z_points, seed));
    Ok(EvenFamilyReport {
        n,
        v: fam.v.clone(),
        w: fam.w.clone(),
        d: fam.d(),
        minors_checked,
        structures,
        z_points,
        failures,
    })
}

// ---------------------------------------------------------------------------
// Hypercube family
// ---------------------------------------------------------------------------

/// Largest `n` whose ground set `[2^n]` fits in a [`Subset`].
pub const MAX_HYPERCUBE_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypercubeFamily {
    pub n: usize,
    pub v: Permutation,
    pub w: Permutation,
}

impl HypercubeFamily {
    pub fn size(&self) -> usize {
        1 << self.n
    }

    /// `n · 2^{n-1}`.
    pub fn rank(&self) -> usize {
        self.n << (self.n - 1)
    }

    pub fn interval(&self) -> BruhatInterval {
        interval(&self.v, &self.w).expect("v_n <= w_n")
    }
}

pub fn hypercube_perms(n: usize) -> Result<HypercubeFamily> {
    if !(1..=MAX_HYPERCUBE_N).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "hypercube family needs 1 <= n <= {MAX_HYPERCUBE_N}, got {n}"
        )));
    }
    let mut v = vec![1usize, 2];
    for m in 1..n {
        v = v.iter().flat_map(|&x| [x, x + (1 << m)]).collect();
    }
    let w: Vec<usize> = v.iter().rev().copied().collect();
    Ok(HypercubeFamily {
        n,
        v: Permutation::from_one_line(&v)?,
        w: Permutation::from_one_line(&w)?,
    })
}

/// Basic `j`-intervals of `[2^n]`: blocks `[c 2^j + 1, (c+1) 2^j]`.
pub fn basic_intervals(n: usize, j: usize) -> Vec<Subset> {
    let len = 1usize << j;
    (0..1usize << (n - j))
        .map(|c| Subset::from_zero_based(c * len..(c + 1) * len))
        .collect()
}

/// For every `j`, every basic `j`-interval `S` and basic `(n-j)`-interval
/// `T`, exactly one `a ∈ S` has `u(a) ∈ T`.
pub fn is_dyadic(u: &Permutation, n: usize) -> bool {
    if u.n() != 1 << n {
        return false;
    }
    (0..=n).all(|j| {
        let mut counts = vec![0u32; 1 << n];
        let (s_len, t_len) = (1usize << j, 1usize << (n - j));
        let t_blocks = 1usize << j;
        for a in 0..u.n() {
            counts[(a / s_len) * t_blocks + u.at(a) / t_len] += 1;
        }
        counts.iter().all(|&c| c == 1)
    })
}

/// `⌊k/2^j⌋ <= |I ∩ T| <= ⌈k/2^j⌉` for all `j` and basic `(n-j)`-intervals.
pub fn satisfies_block_bounds(n: usize, k: usize, basis: Subset) -> bool {
    (0..=n).all(|j| {
        let lo = k >> j;
        let hi = k.div_ceil(1 << j);
        basic_intervals(n, n - j)
            .into_iter()
            .all(|t| (lo..=hi).contains(&basis.intersection(t).len()))
    })
}

/// `M_k(n)` by filtering all `k`-subsets through the block bounds.
pub fn hypercube_constituent_by_filter(n: usize, k: usize) -> Constituent {
    let size = 1 << n;
    Constituent::new(
        size,
        k,
        Subset::all_of_size(size, k)
            .into_iter()
            .filter(|&s| satisfies_block_bounds(n, k, s)),
    )
}

/// `M_k(n)` by recursion: a product over blocks when `2 | k`, complements
/// when `k > 2^{n-1}`, and one element per block of a smaller constituent
/// otherwise.
pub fn hypercube_constituent(n: usize, k: usize) -> Result<Constituent> {
    if !(1..=MAX_HYPERCUBE_N).contains(&n) || !(1..1usize << n).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "hypercube constituent needs 1 <= k < 2^n, got n={n} k={k}"
        )));
    }
    Ok(Constituent::new(1 << n, k, hypercube_bases(n, k)))
}

fn hypercube_bases(n: usize, k: usize) -> BTreeSet<Subset> {
    let size = 1usize << n;
    let l = k.trailing_zeros() as usize;
    if l > 0 {
        let part = hypercube_bases(n - l, k >> l);
        let block = 1usize << (n - l);
        let mut acc: BTreeSet<Subset> = BTreeSet::from([Subset::EMPTY]);
        for c in 0..1usize << l {
            acc = acc
                .iter()
                .flat_map(|a| part.iter().map(move |p| a.union(p.shifted(c * block))))
                .collect();
        }
        return acc;
    }
    if k == 1 {
        return (0..size).map(|i| Subset::from_zero_based([i])).collect();
    }
    let big_l = usize::BITS as usize - k.leading_zeros() as usize;
    if big_l == n {
        return hypercube_bases(n, size - k)
            .into_iter()
            .map(|s| s.complement(size))
            .collect();
    }
    let legs = 1usize << (n - big_l);
    let mut out = BTreeSet::new();
    for coarse in hypercube_bases(big_l, k) {
        let mut acc: BTreeSet<Subset> = BTreeSet::from([Subset::EMPTY]);
        for c in coarse.elements() {
            acc = acc
                .iter()
                .flat_map(|a| (0..legs).map(move |t| a.with(c * legs + t)))
                .collect();
        }
        out.extend(acc);
    }
    out
}

/// Whether the interval is a Boolean lattice: `u ↦ {atoms below u}` is a
/// bijection onto all subsets of atoms and an order isomorphism.
pub fn is_boolean_lattice(iv: &BruhatInterval) -> bool {
    let atoms = iv.atoms();
    if atoms.len() > 20 || iv.len() != 1 << atoms.len() {
        return false;
    }
    let up = iv.up_sets();
    let code: Vec<u32> = (0..iv.len())
        .map(|u| {
            atoms
                .iter()
                .enumerate()
                .filter(|&(_, &a)| up[a].contains(u))
                .map(|(b, _)| 1 << b)
                .sum()
        })
        .collect();
    if code.iter().collect::<BTreeSet<_>>().len() != iv.len() {
        return false;
    }
    (0..iv.len()).all(|a| (0..iv.len()).all(|b| iv.leq(a, b) == (code[a] & !code[b] == 0)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypercubeReport {
    pub n: usize,
    pub k: Option<usize>,
    pub v: Permutation,
    pub w: Permutation,
    pub interval_size: Option<usize>,
    pub rank_sizes: Option<Vec<usize>>,
    pub bases_checked: usize,
    pub failures: Vec<String>,
}

impl HypercubeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Hypercube checks for one `n` and either one `k` or all of them. The
/// interval is enumerated only for `n <= 3`; larger `n` compare the
/// recursion, the block bounds and plabic graphs.
pub fn verify_hypercube(
    n: usize,
    k: Option<usize>,
    non_members: usize,
    seed: u64,
) -> Result<HypercubeReport> {
    let fam = hypercube_perms(n)?;
    let size = fam.size();
    let ks: Vec<usize> = match k {
        Some(k) if (1..size).contains(&k) => vec![k],
        Some(k) => return Err(Error::InvalidParameter(format!("k={k} outside 1..{size}"))),
        None => (1..size).collect(),
    };
    let mut failures = Vec::new();
    let mut report = HypercubeReport {
        n,
        k,
        v: fam.v.clone(),
        w: fam.w.clone(),
        interval_size: None,
        rank_sizes: None,
        bases_checked: 0,
        failures: Vec::new(),
    };
    let iv = (n <= 3).then(|| fam.interval());
    if let Some(iv) = &iv {
        report.interval_size = Some(iv.len());
        report.rank_sizes = Some(iv.rank_sizes());
        if iv.d() != fam.rank() || !iv.is_hypercube_shaped() {
            failures.push(format!(
                "rank sizes {:?} are not binomial of rank {}",
                iv.rank_sizes(),
                fam.rank()
            ));
        }
        if n <= 2 && !is_boolean_lattice(iv) {
            failures.push("interval is not a Boolean lattice".to_string());
        }
        if let Some(u) = iv.elements().find(|u| !is_dyadic(u, n)) {
            failures.push(format!("member {u} is not dyadic"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen = 0;
        while seen < non_members && iv.len() < (1..=size).product::<usize>() {
            let u = Permutation::random(size, &mut rng);
            if iv.contains(&u) {
                continue;
            }
            seen += 1;
            if is_dyadic(&u, n) {
                failures.push(format!("non-member {u} is dyadic"));
            }
        }
    }
    for &k in &ks {
        let recursive = hypercube_constituent(n, k)?;
        if n <= 4 && recursive.bases != hypercube_constituent_by_filter(n, k).bases {
            failures.push(format!("k={k}: recursion differs from the block bounds"));
        }
        if let Some(iv) = &iv {
            if recursive.bases != constituent(iv, k).bases {
                failures.push(format!(
                    "k={k}: block bounds differ from the enumerated constituent"
                ));
            }
        }
        if recursive
            .bases
            .iter()
            .any(|b| !satisfies_block_bounds(n, k, *b))
        {
            failures.push(format!(
                "k={k}: recursion produced a basis violating the bounds"
            ));
        }
        let dual = hypercube_constituent(n, size - k)?;
        if dual.bases != recursive.dual().bases {
            failures.push(format!("k={k}: complement law fails"));
        }
        if n <= 4 {
            let graph = crate::plabic::hypercube_graph(n, k)?;
            if !graph.is_planar_forest() {
                failures.push(format!("k={k}: plabic graph is not a planar forest"));
            }
            if crate::plabic::positroid_from_graph(&graph)? != recursive.bases {
                failures.push(format!("k={k}: plabic graph positroid differs"));
            }
        }
        report.bases_checked += recursive.len();
    }
    report.failures = failures;
    Ok(report)
}
