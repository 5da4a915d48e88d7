//! Moment polytopes of toric intervals in Marsh-Rietsch coordinates.
//!
//! For each `k`, the summand polytope is the hull of the exponent vectors
//! `m_I` of the toric flag minors `Δ_I`, `I ∈ M_k`. The moment polytope is
//! their Minkowski sum, with vertex `X_u = Σ_k m_{u[k]}` for `u ∈ [v,w]`.
//! The checks in this module verify the combinatorial structure of that
//! polytope against the interval and report the first violation found.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::classify::r_poly_says_toric;
use crate::geometry::linalg::{q, solve_rational};
use crate::geometry::{
    face_lattice, hull, minkowski_sum, solve_affine_map, AffineMap, LatticePolytope, RationalVector,
};
use crate::mrgraph::{build_graph, flag_minor_toric, ReducedWord, WiringGraph};
use crate::perm::{interval, BruhatInterval, Permutation, RPolynomialCache};
use crate::positroid::{constituent, positroid_polytope};
use crate::{Error, Result, Subset};

/// A failed structural check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

impl std::error::Error for Violation {}

fn violation(check: &'static str, detail: impl Into<String>) -> Violation {
    Violation {
        check,
        detail: detail.into(),
    }
}

/// Exponent vectors `m_I` for `I ∈ M_k` and their hull.
#[derive(Debug, Clone)]
pub struct SummandData {
    pub k: usize,
    pub labels: BTreeMap<Subset, Vec<i64>>,
    pub polytope: LatticePolytope,
}

fn not_toric(v: &Permutation, w: &Permutation) -> Error {
    Error::NotToric {
        v: v.to_string(),
        w: w.to_string(),
    }
}

/// Summand data from the unique path collections of the toric graph.
pub fn summand_data(iv: &BruhatInterval, graph: &WiringGraph, k: usize) -> Result<SummandData> {
    let mut labels = BTreeMap::new();
    for basis in constituent(iv, k).bases {
        let mono = flag_minor_toric(graph, basis)
            .map_err(|_| not_toric(iv.v(), iv.w()))?
            .ok_or_else(|| Error::DisagreementBug {
                v: iv.v().to_string(),
                w: iv.w().to_string(),
                detail: format!("constituent basis {basis} has no path collection"),
            })?;
        labels.insert(basis, mono.as_vector());
    }
    let pts: Vec<Vec<i64>> = labels.values().cloned().collect();
    Ok(SummandData {
        k,
        labels,
        polytope: hull(&pts),
    })
}

pub fn summand_polytope(
    v: &Permutation,
    w: &Permutation,
    word: &ReducedWord,
    k: usize,
) -> Result<LatticePolytope> {
    let iv = interval(v, w)?;
    require_toric(&iv)?;
    let graph = build_graph(v, word)?;
    Ok(summand_data(&iv, &graph, k)?.polytope)
}

fn require_toric(iv: &BruhatInterval) -> Result<()> {
    if r_poly_says_toric(iv, &mut RPolynomialCache::new())? {
        Ok(())
    } else {
        Err(not_toric(iv.v(), iv.w()))
    }
}

#[derive(Debug, Clone)]
pub struct MomentPolytope {
    pub interval: BruhatInterval,
    pub graph: WiringGraph,
    /// Summands for `k = 1, .., n-1`.
    pub summands: Vec<SummandData>,
    /// `X_u` indexed like the interval's elements.
    pub points: Vec<Vec<i64>>,
    pub polytope: LatticePolytope,
}

pub fn moment_polytope(
    v: &Permutation,
    w: &Permutation,
    word: &ReducedWord,
) -> Result<MomentPolytope> {
    let iv = interval(v, w)?;
    require_toric(&iv)?;
    let graph = build_graph(v, word)?;
    let summands = (1..iv.n())
        .map(|k| summand_data(&iv, &graph, k))
        .collect::<Result<Vec<_>>>()?;
    let d = graph.d();
    let points: Vec<Vec<i64>> = iv
        .elements()
        .map(|u| {
            let mut x = vec![0i64; d];
            for s in &summands {
                for (c, m) in x.iter_mut().zip(&s.labels[&u.prefix(s.k)]) {
                    *c += m;
                }
            }
            x
        })
        .collect();
    let polytope = hull(&points);
    Ok(MomentPolytope {
        interval: iv,
        graph,
        summands,
        points,
        polytope,
    })
}

impl MomentPolytope {
    /// Vertex index of `X_u` for every interval element, if it is a vertex.
    pub fn vertex_of_element(&self) -> Vec<Option<usize>> {
        self.points
            .iter()
            .map(|x| self.polytope.vertex_index(x))
            .collect()
    }

    /// Interval element for every vertex, when the labelling is bijective.
    pub fn element_of_vertex(&self) -> Option<Vec<usize>> {
        if self.polytope.num_vertices() != self.points.len() {
            return None;
        }
        let mut out = vec![usize::MAX; self.points.len()];
        for (e, v) in self.vertex_of_element().into_iter().enumerate() {
            out[v?] = e;
        }
        Some(out)
    }

    pub fn point(&self, u: &Permutation) -> Option<&[i64]> {
        self.interval.index_of(u).map(|i| self.points[i].as_slice())
    }
}

/// Outcome of [`face_lattice_vs_interval`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceCheck {
    pub subintervals_checked: usize,
    /// Present when the full face lattice was within the size gate.
    pub f_vector: Option<Vec<usize>>,
    pub edges: usize,
}

/// Checks that subintervals map to faces of the right dimension, that face
/// counts match subinterval counts and that the 1-skeleton is the Hasse
/// diagram.
pub fn face_lattice_vs_interval(
    iv: &BruhatInterval,
    points: &[Vec<i64>],
    polytope: &LatticePolytope,
) -> std::result::Result<FaceCheck, Violation> {
    let nv = polytope.num_vertices();
    let mut vertex = Vec::with_capacity(points.len());
    for (e, x) in points.iter().enumerate() {
        let Some(idx) = polytope.vertex_index(x) else {
            return Err(violation(
                "face (i)",
                format!("X_{} = {x:?} is not a vertex", iv.element(e)),
            ));
        };
        vertex.push(idx);
    }
    let up = iv.up_sets();
    let mut counts = vec![0usize; iv.d() + 1];
    let mut checked = 0;
    for a in 0..iv.len() {
        for b in up[a].iter() {
            let set = BitSet::from_indices(
                nv,
                (0..iv.len())
                    .filter(|&c| up[a].contains(c) && up[c].contains(b))
                    .map(|c| vertex[c]),
            );
            let length = iv.rank_of(b) - iv.rank_of(a);
            if !polytope.is_face(&set) {
                return Err(violation(
                    "face (i)",
                    format!("[{}, {}] is not a face", iv.element(a), iv.element(b)),
                ));
            }
            if polytope.dimension_of(&set) != length as isize {
                return Err(violation(
                    "face (i)",
                    format!(
                        "[{}, {}] spans dimension {} not {length}",
                        iv.element(a),
                        iv.element(b),
                        polytope.dimension_of(&set)
                    ),
                ));
            }
            counts[length] += 1;
            checked += 1;
        }
    }
    if vertex
        .iter()
        .collect::<std::collections::BTreeSet<_>>()
        .len()
        != nv
        || nv != iv.len()
    {
        return Err(violation(
            "face (ii)",
            format!("{nv} vertices for {} interval elements", iv.len()),
        ));
    }
    let f_vector = match face_lattice(polytope) {
        Ok(fl) => {
            let f = fl.f_vector();
            if f != counts {
                return Err(violation(
                    "face (ii)",
                    format!("f-vector {f:?} but subinterval counts {counts:?}"),
                ));
            }
            Some(f)
        }
        Err(_) => None,
    };
    let mut hasse: Vec<(usize, usize)> = iv
        .cover_pairs()
        .iter()
        .map(|&(a, b)| (vertex[a].min(vertex[b]), vertex[a].max(vertex[b])))
        .collect();
    hasse.sort_unstable();
    let edges = polytope.edges();
    if edges != hasse {
        return Err(violation(
            "face (iii)",
            format!(
                "{} polytope edges, {} cover relations",
                edges.len(),
                hasse.len()
            ),
        ));
    }
    Ok(FaceCheck {
        subintervals_checked: checked,
        f_vector,
        edges: edges.len(),
    })
}

/// Forward map `A e_I + b = m_I` and left inverse `C m_I + d = e_I` for one `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineEquivalence {
    pub k: usize,
    pub forward: AffineMap,
    pub backward: AffineMap,
}

/// Solves and verifies the affine equivalence between the positroid polytope
/// `P_k` and the summand polytope.
pub fn affine_equivalence(n: usize, summand: &SummandData) -> Result<AffineEquivalence> {
    let inputs: Vec<Vec<i64>> = summand.labels.keys().map(|b| b.indicator(n)).collect();
    let outputs: Vec<Vec<i64>> = summand.labels.values().cloned().collect();
    let forward = solve_affine_map(&inputs, &outputs)?;
    let backward = solve_affine_map(&outputs, &inputs)?;
    for (x, y) in inputs.iter().zip(&outputs) {
        if forward.apply(x) != *y || backward.apply(y) != *x {
            return Err(Error::NoSolution(format!(
                "k={}: map fails on a vertex",
                summand.k
            )));
        }
    }
    Ok(AffineEquivalence {
        k: summand.k,
        forward,
        backward,
    })
}

pub fn affine_equivalences(mp: &MomentPolytope) -> Result<Vec<AffineEquivalence>> {
    mp.summands
        .iter()
        .map(|s| affine_equivalence(mp.interval.n(), s))
        .collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(c: i64, a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| c * x).collect()
}

/// 1-indexed positions `(i, j)`, `i < j`, where two permutations differ by a
/// transposition.
fn transposition(a: &Permutation, b: &Permutation) -> Option<(usize, usize)> {
    let diff: Vec<usize> = (0..a.n()).filter(|&p| a.at(p) != b.at(p)).collect();
    match diff.as_slice() {
        &[i, j] => Some((i + 1, j + 1)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeReport {
    pub edges: usize,
    /// Edges with `j - i > 1`, whose vectors are proper multiples.
    pub scaled_edges: usize,
}

/// Checks `m_{u'[k]} - m_{u[k]}` is constant for `i <= k < j` and zero
/// otherwise, `X_{u'} - X_u = (j-i)(a^{(i)}_{u(j)} - a^{(i)}_{u(i)})`, and
/// divisibility of every edge vector by `j - i`.
pub fn edge_vector_check(
    mp: &MomentPolytope,
    maps: &[AffineEquivalence],
) -> std::result::Result<EdgeReport, Violation> {
    let iv = &mp.interval;
    let mut scaled = 0;
    for (cover, &(a, b)) in iv.covers().iter().zip(iv.cover_pairs()) {
        let (i, j) = (cover.i, cover.j);
        let (u, up) = (&cover.lower, &cover.upper);
        let step = |k: usize| -> Vec<i64> {
            let s = &mp.summands[k - 1];
            sub(&s.labels[&up.prefix(k)], &s.labels[&u.prefix(k)])
        };
        let base = step(i);
        for k in 1..iv.n() {
            let expected = if (i..j).contains(&k) {
                base.clone()
            } else {
                vec![0; base.len()]
            };
            if step(k) != expected {
                return Err(violation(
                    "edge vectors",
                    format!("{u} ⋖ {up}: summand {k} moves differently"),
                ));
            }
        }
        let edge = sub(&mp.points[b], &mp.points[a]);
        let len = (j - i) as i64;
        if edge != scale(len, &base) {
            return Err(violation(
                "edge vectors",
                format!("{u} ⋖ {up}: X difference is not (j-i) times the step"),
            ));
        }
        if edge.iter().any(|x| x % len != 0) {
            return Err(violation("edge divisibility", format!("{u} ⋖ {up}")));
        }
        if let Some(map) = maps.iter().find(|m| m.k == i) {
            let (lo, hi) = (u.at(i - 1), u.at(j - 1));
            let predicted = sub(&map.forward.column(hi), &map.forward.column(lo));
            if predicted != base {
                return Err(violation(
                    "edge vectors",
                    format!("{u} ⋖ {up}: affine columns disagree"),
                ));
            }
        }
        if j - i > 1 {
            scaled += 1;
        }
    }
    Ok(EdgeReport {
        edges: iv.covers().len(),
        scaled_edges: scaled,
    })
}

/// The shape of a rank-2 subinterval `[u, u3]` with middle elements `u1, u2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TwoFaceKind {
    /// `u1 = u(i j)`, `u2 = u(k l)` with disjoint transpositions.
    Parallelogram,
    /// `u1 = u(i j)`, `u2 = u(j k)`, `i < j < k`; carries `(i, j, k)` and
    /// whether the middle elements were swapped to fit.
    Trapezoid {
        i: usize,
        j: usize,
        k: usize,
        swapped: bool,
    },
    /// Any other rank-2 interval (the transpositions share an index but not
    /// in the pattern above).
    Other,
}

/// Classifies `[u, u3]` from the transpositions at the bottom.
pub fn two_face_kind(
    u: &Permutation,
    u1: &Permutation,
    u2: &Permutation,
    u3: &Permutation,
) -> TwoFaceKind {
    let (Some(t1), Some(t2)) = (transposition(u, u1), transposition(u, u2)) else {
        return TwoFaceKind::Other;
    };
    if t1.0 != t2.0 && t1.0 != t2.1 && t1.1 != t2.0 && t1.1 != t2.1 {
        return TwoFaceKind::Parallelogram;
    }
    for (swapped, (a, b)) in [(false, (t1, t2)), (true, (t2, t1))] {
        if a.1 == b.0 {
            let (i, j, k) = (a.0, a.1, b.1);
            let target = u.swap_positions(i - 1, j - 1).swap_positions(j - 1, k - 1);
            if &target == u3 {
                return TwoFaceKind::Trapezoid { i, j, k, swapped };
            }
        }
    }
    TwoFaceKind::Other
}

/// Coefficients `(c1, c2)` with `x_{u3} - x_u = c1 (x_{u1} - x_u) + c2 (x_{u2} - x_u)`
/// in the Bruhat interval polytope.
pub fn bip_coefficients(
    u: &Permutation,
    u1: &Permutation,
    u2: &Permutation,
    u3: &Permutation,
) -> (BigRational, BigRational) {
    let x0 = u.weight_vector();
    let cols = [sub(&u1.weight_vector(), &x0), sub(&u2.weight_vector(), &x0)];
    let target = sub(&u3.weight_vector(), &x0);
    let a: Vec<Vec<BigRational>> = (0..x0.len())
        .map(|r| vec![q(cols[0][r]), q(cols[1][r])])
        .collect();
    let b: Vec<BigRational> = target.iter().map(|&x| q(x)).collect();
    let sol = solve_rational(&a, &b).expect("rank-2 faces of Bruhat interval polytopes are planar");
    (sol[0].clone(), sol[1].clone())
}

/// Coefficients for propagating to the top of a rank-2 face, taken from the
/// explicit parallelogram and trapezoid relations when they apply.
fn propagation_coefficients(
    u: &Permutation,
    u1: &Permutation,
    u2: &Permutation,
    u3: &Permutation,
) -> (BigRational, BigRational) {
    match two_face_kind(u, u1, u2, u3) {
        TwoFaceKind::Parallelogram => (q(1), q(1)),
        TwoFaceKind::Trapezoid { i, j, k, swapped } => {
            let c = BigRational::new(BigInt::from(k - i), BigInt::from(j - i));
            if swapped {
                (q(1), c)
            } else {
                (c, q(1))
            }
        }
        TwoFaceKind::Other => bip_coefficients(u, u1, u2, u3),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct TwoFaceReport {
    pub parallelograms: usize,
    pub trapezoids: usize,
    pub other: usize,
}

/// Verifies every rank-2 subinterval against the parallelogram or trapezoid
/// relations, and against the coefficients of the Bruhat interval polytope.
pub fn two_face_check(mp: &MomentPolytope) -> std::result::Result<TwoFaceReport, Violation> {
    let iv = &mp.interval;
    let up = iv.up_sets();
    let mut report = TwoFaceReport::default();
    for a in 0..iv.len() {
        for b in up[a].iter().filter(|&b| iv.rank_of(b) == iv.rank_of(a) + 2) {
            let mid: Vec<usize> = (0..iv.len())
                .filter(|&c| c != a && c != b && up[a].contains(c) && up[c].contains(b))
                .collect();
            let [m1, m2] = mid[..] else {
                return Err(violation(
                    "two-faces",
                    format!("rank-2 interval with {} middle elements", mid.len()),
                ));
            };
            let (u, u1, u2, u3) = (iv.element(a), iv.element(m1), iv.element(m2), iv.element(b));
            let x = |i: usize| mp.points[i].as_slice();
            let (e1, e2, top) = (sub(x(m1), x(a)), sub(x(m2), x(a)), sub(x(b), x(a)));
            let kind = two_face_kind(u, u1, u2, u3);
            let ok = match kind {
                TwoFaceKind::Parallelogram => {
                    report.parallelograms += 1;
                    sub(x(b), x(m2)) == e1 && sub(x(b), x(m1)) == e2
                }
                TwoFaceKind::Trapezoid { i, j, k, swapped } => {
                    report.trapezoids += 1;
                    let (first, second, f1, f2) = if swapped {
                        (e2.clone(), e1.clone(), m2, m1)
                    } else {
                        (e1.clone(), e2.clone(), m1, m2)
                    };
                    let (ji, kj, ki) = ((j - i) as i64, (k - j) as i64, (k - i) as i64);
                    let lhs1 = scale(ji, &sub(x(b), x(f1)));
                    let rhs1: Vec<i64> = scale(kj, &first)
                        .iter()
                        .zip(scale(ji, &second))
                        .map(|(p, q)| p + q)
                        .collect();
                    let lhs2 = scale(ji, &sub(x(b), x(f2)));
                    lhs1 == rhs1 && lhs2 == scale(ki, &first)
                }
                TwoFaceKind::Other => {
                    report.other += 1;
                    true
                }
            };
            let (c1, c2) = bip_coefficients(u, u1, u2, u3);
            let predicted = &RationalVector::from_ints(&e1).scale(&c1)
                + &RationalVector::from_ints(&e2).scale(&c2);
            if !ok || predicted != RationalVector::from_ints(&top) {
                return Err(violation(
                    "two-faces",
                    format!("[{u}, {u3}] ({kind:?}) violates its relation"),
                ));
            }
        }
    }
    Ok(report)
}

/// Rebuilds every `X_u` from `X_v` and the atoms by propagating through
/// rank-2 faces; all available faces must agree.
pub fn reconstruct_from_atoms(
    iv: &BruhatInterval,
    bottom: &[i64],
    atoms: &BTreeMap<Permutation, Vec<i64>>,
) -> Result<Vec<Vec<i64>>> {
    let mut known: Vec<Option<RationalVector>> = vec![None; iv.len()];
    known[0] = Some(RationalVector::from_ints(bottom));
    for a in iv.atoms() {
        let x = atoms
            .get(iv.element(a))
            .ok_or_else(|| Error::InvalidParameter(format!("missing atom {}", iv.element(a))))?;
        known[a] = Some(RationalVector::from_ints(x));
    }
    let up = iv.up_sets();
    for r in 2..=iv.d() {
        for top in iv.rank_indices(r) {
            let mut value: Option<RationalVector> = None;
            for low in iv.rank_indices(r - 2).filter(|&l| up[l].contains(top)) {
                let mid: Vec<usize> = iv
                    .rank_indices(r - 1)
                    .filter(|&m| up[low].contains(m) && up[m].contains(top))
                    .collect();
                let (u, u1, u2, u3) = (
                    iv.element(low),
                    iv.element(mid[0]),
                    iv.element(mid[1]),
                    iv.element(top),
                );
                let (c1, c2) = propagation_coefficients(u, u1, u2, u3);
                let x0 = known[low].as_ref().expect("lower ranks are known");
                let d1 = known[mid[0]].as_ref().expect("lower ranks are known") - x0;
                let d2 = known[mid[1]].as_ref().expect("lower ranks are known") - x0;
                let guess = &(x0 + &d1.scale(&c1)) + &d2.scale(&c2);
                match &value {
                    None => value = Some(guess),
                    Some(prev) if *prev != guess => {
                        return Err(Error::InconsistentFace(format!(
                            "faces below {u3} disagree"
                        )));
                    }
                    Some(_) => {}
                }
            }
            known[top] = value;
        }
    }
    known
        .into_iter()
        .enumerate()
        .map(|(e, x)| {
            x.and_then(|x| x.to_ints()).ok_or_else(|| {
                Error::InconsistentFace(format!("no integral value for {}", iv.element(e)))
            })
        })
        .collect()
}

/// Minkowski sum of a nonempty list of polytopes.
pub fn minkowski_sum_all<'a>(
    polytopes: impl IntoIterator<Item = &'a LatticePolytope>,
) -> Option<LatticePolytope> {
    polytopes.into_iter().fold(None, |acc, p| {
        Some(match acc {
            None => p.clone(),
            Some(s) => minkowski_sum(&s, p),
        })
    })
}

/// Checks that the moment polytope is both `Σ_k P̂_k` and
/// `Σ_k (A^{(k)} P_k + b^{(k)})`.
pub fn minkowski_identity(
    mp: &MomentPolytope,
    maps: &[AffineEquivalence],
) -> std::result::Result<(), Violation> {
    let d = mp.graph.d();
    let point = hull(&[vec![0; d]]);
    let summed =
        minkowski_sum_all(mp.summands.iter().map(|s| &s.polytope)).unwrap_or_else(|| point.clone());
    if summed.vertices() != mp.polytope.vertices() {
        return Err(violation(
            "minkowski",
            "sum of summand polytopes differs from conv(X_u)",
        ));
    }
    let transformed: Vec<LatticePolytope> = mp
        .summands
        .iter()
        .map(|s| {
            let map = &maps
                .iter()
                .find(|m| m.k == s.k)
                .expect("one map per summand")
                .forward;
            let pk = positroid_polytope(&constituent(&mp.interval, s.k));
            hull(
                &pk.vertices()
                    .iter()
                    .map(|x| map.apply(x))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let summed = minkowski_sum_all(transformed.iter()).unwrap_or(point);
    if summed.vertices() != mp.polytope.vertices() {
        return Err(violation(
            "minkowski",
            "sum of transformed positroid polytopes differs from conv(X_u)",
        ));
    }
    Ok(())
}

/// `conv(u·(n-1, .., 1, 0) : u ∈ [v,w])`.
pub fn bruhat_interval_polytope(iv: &BruhatInterval) -> LatticePolytope {
    let pts: Vec<Vec<i64>> = iv.elements().map(Permutation::weight_vector).collect();
    hull(&pts)
}

/// `P(v,w) = Σ_{k<n} P_k(v,w)`.
pub fn bip_is_sum_of_positroid_polytopes(iv: &BruhatInterval) -> bool {
    let parts: Vec<LatticePolytope> = (1..iv.n())
        .map(|k| positroid_polytope(&constituent(iv, k)))
        .collect();
    let sum = minkowski_sum_all(parts.iter()).unwrap_or_else(|| hull(&[vec![0; iv.n()]]));
    sum.vertices() == bruhat_interval_polytope(iv).vertices()
}

/// Whether two moment polytopes of the same interval have the same faces
/// once vertices are labelled by interval elements.
pub fn same_combinatorial_type(a: &MomentPolytope, b: &MomentPolytope) -> Result<bool> {
    let (Some(la), Some(lb)) = (a.element_of_vertex(), b.element_of_vertex()) else {
        return Ok(false);
    };
    let fa = face_lattice(&a.polytope)?;
    let fb = face_lattice(&b.polytope)?;
    Ok(fa.relabeled(&la) == fb.relabeled(&lb))
}

/// All structural checks on one moment polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub faces: FaceCheck,
    pub edges: EdgeReport,
    pub two_faces: TwoFaceReport,
    pub maps: Vec<AffineEquivalence>,
}

pub fn structure_report(mp: &MomentPolytope) -> std::result::Result<StructureReport, Violation> {
    let maps =
        affine_equivalences(mp).map_err(|e| violation("affine equivalence", e.to_string()))?;
    for s in &mp.summands {
        if s.labels
            .values()
            .any(|m| m.iter().any(|&c| !(0..=1).contains(&c)))
            || s.polytope.vertex_index(&vec![0; mp.graph.d()]).is_none()
        {
            return Err(violation(
                "summand shape",
                format!("k={} leaves the unit cube or misses the origin", s.k),
            ));
        }
    }
    let faces = face_lattice_vs_interval(&mp.interval, &mp.points, &mp.polytope)?;
    let edges = edge_vector_check(mp, &maps)?;
    let two_faces = two_face_check(mp)?;
    let atoms: BTreeMap<Permutation, Vec<i64>> = mp
        .interval
        .atoms()
        .into_iter()
        .map(|a| (mp.interval.element(a).clone(), mp.points[a].clone()))
        .collect();
    let rebuilt = reconstruct_from_atoms(&mp.interval, &mp.points[0], &atoms)
        .map_err(|e| violation("atoms", e.to_string()))?;
    if rebuilt != mp.points {
        return Err(violation("atoms", "reconstruction differs from X_u"));
    }
    minkowski_identity(mp, &maps)?;
    Ok(StructureReport {
        faces,
        edges,
        two_faces,
        maps,
    })
}

/// `m_{v[k]} = 0` for every summand: the normalization used throughout.
pub fn is_normalized(mp: &MomentPolytope) -> bool {
    mp.summands.iter().all(|s| {
        s.labels[&mp.interval.v().prefix(s.k)]
            .iter()
            .all(Zero::is_zero)
    })
}
