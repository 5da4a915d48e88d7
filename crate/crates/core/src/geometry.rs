//! Exact lattice polytopes: convex hulls, facets, face lattices, Minkowski
//! sums and integral affine maps.

pub mod dd;
pub mod linalg;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::{Error, Result};
use linalg::{primitive_integer, q, rref, solve_rational, to_rational_rows, IntegerSolver};

/// Environment variable overriding the face-lattice gate, as `dim,vertices`.
pub const FACE_LATTICE_LIMIT_VAR: &str = "TORICH_FACE_LATTICE_LIMIT";
const DEFAULT_GATE: (usize, usize) = (8, 64);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn zero(dim: usize) -> Self {
        Self(vec![BigRational::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| q(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    /// The integer coordinates, if every coordinate is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| {
                if x.is_integer() {
                    x.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// `normal · x <= offset` for facets, `normal · x = offset` for equations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Hyperplane {
    pub fn value(&self, x: &[i64]) -> i64 {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    ambient_dim: usize,
    vertices: Vec<Vec<i64>>,
    affine_dim: usize,
    equations: Vec<Hyperplane>,
    facets: Vec<Hyperplane>,
    /// `incidence[f]` holds the vertices tight on facet `f`.
    incidence: Vec<BitSet>,
}

fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("coordinate fits in i64")
}

/// Convex hull of a nonempty set of integer points.
pub fn hull(points: &[Vec<i64>]) -> LatticePolytope {
    assert!(!points.is_empty(), "hull of an empty point set");
    let ambient_dim = points[0].len();
    let pts: Vec<Vec<i64>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let base = &pts[0];

    let diffs: Vec<Vec<BigRational>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| q(a - b)).collect())
        .collect();
    let (red, pivots) = if diffs.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        rref(diffs)
    };
    let affine_dim = pivots.len();

    let mut equations = Vec::new();
    for free in (0..ambient_dim).filter(|c| !pivots.contains(c)) {
        let mut normal = vec![BigRational::zero(); ambient_dim];
        normal[free] = q(1);
        for (row, &p) in red.iter().zip(&pivots) {
            normal[p] = -row[free].clone();
        }
        let normal: Vec<i64> = primitive_integer(&normal).iter().map(to_i64).collect();
        let offset = normal.iter().zip(base).map(|(a, b)| a * b).sum();
        equations.push(Hyperplane { normal, offset });
    }

    if affine_dim == 0 {
        return LatticePolytope {
            ambient_dim,
            vertices: pts,
            affine_dim,
            equations,
            facets: Vec::new(),
            incidence: Vec::new(),
        };
    }

    // Homogenize in pivot coordinates, where the projection is injective.
    let gens: Vec<Vec<BigInt>> = pts
        .iter()
        .map(|p| {
            std::iter::once(BigInt::from(1))
                .chain(pivots.iter().map(|&c| BigInt::from(p[c])))
                .collect()
        })
        .collect();
    let cone = dd::cone_facets(&gens);

    // A point is a vertex iff no other point is tight on all of its facets.
    let tight: Vec<BitSet> = (0..pts.len())
        .map(|i| {
            BitSet::from_indices(
                cone.len(),
                (0..cone.len()).filter(|&f| cone[f].zeros.contains(i)),
            )
        })
        .collect();
    let is_vertex: Vec<bool> = (0..pts.len())
        .map(|i| (0..pts.len()).all(|j| j == i || !tight[i].is_subset(&tight[j])))
        .collect();
    let vertices: Vec<Vec<i64>> = pts
        .iter()
        .zip(&is_vertex)
        .filter(|(_, &v)| v)
        .map(|(p, _)| p.clone())
        .collect();

    let mut facets: Vec<Hyperplane> = cone
        .iter()
        .map(|f| {
            let mut normal = vec![0i64; ambient_dim];
            for (c, &p) in pivots.iter().enumerate() {
                normal[p] = -to_i64(&f.functional[c + 1]);
            }
            Hyperplane {
                normal,
                offset: to_i64(&f.functional[0]),
            }
        })
        .collect();
    facets.sort();
    let incidence = facets
        .iter()
        .map(|h| {
            BitSet::from_indices(
                vertices.len(),
                (0..vertices.len()).filter(|&v| h.value(&vertices[v]) == h.offset),
            )
        })
        .collect();
    LatticePolytope {
        ambient_dim,
        vertices,
        affine_dim,
        equations,
        facets,
        incidence,
    }
}

impl LatticePolytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn equations(&self) -> &[Hyperplane] {
        &self.equations
    }

    pub fn facets(&self) -> &[Hyperplane] {
        &self.facets
    }

    pub fn incidence(&self) -> &[BitSet] {
        &self.incidence
    }

    pub fn vertex_index(&self, x: &[i64]) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_slice().cmp(x)).ok()
    }

    pub fn contains_point(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|h| h.value(x) == h.offset)
            && self.facets.iter().all(|h| h.value(x) <= h.offset)
    }

    /// Smallest face containing the given vertices.
    pub fn face_closure(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.vertices.len());
        for inc in &self.incidence {
            if set.is_subset(inc) {
                out = out.intersection(inc);
            }
        }
        out
    }

    pub fn is_face(&self, set: &BitSet) -> bool {
        set.is_empty() || self.face_closure(set) == *set
    }

    /// Affine dimension of a set of vertices (`-1` for the empty set).
    pub fn dimension_of(&self, set: &BitSet) -> isize {
        let pts: Vec<&[i64]> = set.iter().map(|v| self.vertices[v].as_slice()).collect();
        linalg::affine_dimension(&pts)
    }

    /// Vertex pairs spanning edges.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let pair = BitSet::from_indices(n, [a, b]);
                if self.face_closure(&pair) == pair {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn translate(&self, t: &[i64]) -> LatticePolytope {
        let pts: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
            .collect();
        hull(&pts)
    }
}

pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> LatticePolytope {
    let mut pts = Vec::with_capacity(p.num_vertices() * q.num_vertices());
    for a in p.vertices() {
        for b in q.vertices() {
            pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    hull(&pts)
}

/// Faces as vertex sets, graded by dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLattice {
    faces: Vec<BitSet>,
    dims: Vec<isize>,
    index: HashMap<Vec<usize>, usize>,
}

fn parse_gate() -> (usize, usize) {
    std::env::var(FACE_LATTICE_LIMIT_VAR)
        .ok()
        .and_then(|s| {
            let (a, b) = s.split_once(',')?;
            Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
        })
        .unwrap_or(DEFAULT_GATE)
}

/// Full face lattice, refused above the size gate.
pub fn face_lattice(p: &LatticePolytope) -> Result<FaceLattice> {
    let (max_dim, max_vertices) = parse_gate();
    if p.affine_dim() > max_dim || p.num_vertices() > max_vertices {
        return Err(Error::FaceLatticeGate {
            dim: p.affine_dim(),
            vertices: p.num_vertices(),
        });
    }
    Ok(face_lattice_unchecked(p))
}

/// Closure of facet vertex-sets under intersection, plus the empty face.
pub fn face_lattice_unchecked(p: &LatticePolytope) -> FaceLattice {
    let n = p.num_vertices();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let top = BitSet::full(n);
    seen.insert(top.iter().collect());
    queue.push_back(top);
    seen.insert(Vec::new());
    while let Some(face) = queue.pop_front() {
        for inc in p.incidence() {
            let sub = face.intersection(inc);
            if seen.insert(sub.iter().collect()) {
                queue.push_back(sub);
            }
        }
    }
    let mut graded: Vec<(isize, Vec<usize>)> = seen
        .into_iter()
        .map(|f| {
            let dim = p.dimension_of(&BitSet::from_indices(n, f.iter().copied()));
            (dim, f)
        })
        .collect();
    graded.sort();
    let index = graded
        .iter()
        .enumerate()
        .map(|(i, (_, f))| (f.clone(), i))
        .collect();
    FaceLattice {
        faces: graded
            .iter()
            .map(|(_, f)| BitSet::from_indices(n, f.iter().copied()))
            .collect(),
        dims: graded.iter().map(|&(d, _)| d).collect(),
        index,
    }
}

impl FaceLattice {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Faces sorted by dimension, then by vertex list; index 0 is the empty face.
    pub fn faces(&self) -> &[BitSet] {
        &self.faces
    }

    pub fn dim(&self, face: usize) -> isize {
        self.dims[face]
    }

    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    pub fn contains(&self, smaller: usize, larger: usize) -> bool {
        self.faces[smaller].is_subset(&self.faces[larger])
    }

    pub fn faces_of_dim(&self, d: isize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.dims[i] == d)
    }

    /// Face counts for dimensions `0..=dim P`.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.dims.iter().copied().max().unwrap_or(-1);
        (0..=top).map(|d| self.faces_of_dim(d).count()).collect()
    }

    /// Faces as sorted lists of external labels, for comparison across polytopes.
    pub fn relabeled(&self, labels: &[usize]) -> BTreeSet<Vec<usize>> {
        self.faces
            .iter()
            .map(|f| {
                let mut l: Vec<usize> = f.iter().map(|v| labels[v]).collect();
                l.sort_unstable();
                l
            })
            .collect()
    }
}

/// Integer affine map `x ↦ A x + b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    pub matrix: Vec<Vec<i64>>,
    pub offset: Vec<i64>,
}

impl AffineMap {
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, b)| row.iter().zip(x).map(|(a, c)| a * c).sum::<i64>() + b)
            .collect()
    }

    /// Column `i` of the linear part.
    pub fn column(&self, i: usize) -> Vec<i64> {
        self.matrix.iter().map(|row| row[i]).collect()
    }
}

/// Solves for an integral affine map sending `inputs[i]` to `outputs[i]`.
pub fn solve_affine_map(inputs: &[Vec<i64>], outputs: &[Vec<i64>]) -> Result<AffineMap> {
    let in_dim = inputs.first().map_or(0, Vec::len);
    let out_dim = outputs.first().map_or(0, Vec::len);
    let system: Vec<Vec<i64>> = inputs
        .iter()
        .map(|x| x.iter().copied().chain(std::iter::once(1)).collect())
        .collect();
    let solver = IntegerSolver::new(&system);
    let mut matrix = Vec::with_capacity(out_dim);
    let mut offset = Vec::with_capacity(out_dim);
    for c in 0..out_dim {
        let rhs: Vec<i64> = outputs.iter().map(|y| y[c]).collect();
        let Some(sol) = solver.solve(&rhs) else {
            let rational = solve_rational(
                &to_rational_rows(&system),
                &rhs.iter().map(|&x| q(x)).collect::<Vec<_>>(),
            );
            let why = if rational.is_some() {
                "rational solution only"
            } else {
                "inconsistent system"
            };
            return Err(Error::NoSolution(format!("output coordinate {c}: {why}")));
        };
        matrix.push(sol[..in_dim].iter().map(to_i64).collect());
        offset.push(to_i64(&sol[in_dim]));
    }
    let map = AffineMap { matrix, offset };
    debug_assert!(inputs.iter().zip(outputs).all(|(x, y)| map.apply(x) == *y));
    Ok(map)
}
