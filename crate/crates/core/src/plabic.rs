//! Plabic graphs in a disk: perfect orientations, their source-set
//! positroids, forest and non-crossing checks, and the constructors for the
//! star graphs of the even family and the hypercube family.
//!
//! Nodes `0..boundary` are the boundary leaves (label `i + 1`), internal
//! vertices follow. The rotation at a node is the order in which its edges
//! were added; constructors add edges clockwise.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn swapped(self) -> Self {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlabicGraph {
    pub boundary: usize,
    /// Colors of the internal vertices `boundary, boundary + 1, ..`.
    pub colors: Vec<Color>,
    pub edges: Vec<(usize, usize)>,
}

/// `toward_second[e]` says edge `e = (a, b)` is directed `a → b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectOrientation {
    pub toward_second: Vec<bool>,
    pub sources: Subset,
}

impl PlabicGraph {
    pub fn new(boundary: usize) -> Self {
        Self {
            boundary,
            colors: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// A star with one internal vertex joined to every boundary leaf.
    pub fn star(boundary: usize, center: Color) -> Self {
        let mut g = Self::new(boundary);
        let c = g.add_internal(center);
        for b in 0..boundary {
            g.add_edge(c, b);
        }
        g
    }

    pub fn add_internal(&mut self, color: Color) -> usize {
        self.colors.push(color);
        self.boundary + self.colors.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> usize {
        self.edges.push((a, b));
        self.edges.len() - 1
    }

    pub fn num_nodes(&self) -> usize {
        self.boundary + self.colors.len()
    }

    pub fn color(&self, node: usize) -> Option<Color> {
        node.checked_sub(self.boundary).map(|i| self.colors[i])
    }

    /// Incident edge indices of a node in rotation order.
    pub fn rotation(&self, node: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].0 == node || self.edges[e].1 == node)
            .collect()
    }

    fn other_end(&self, e: usize, node: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == node {
            b
        } else {
            a
        }
    }

    pub fn color_swapped(&self) -> Self {
        Self {
            colors: self.colors.iter().map(|c| c.swapped()).collect(),
            ..self.clone()
        }
    }

    /// Connected components as sorted node lists (isolated nodes included).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.num_nodes();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                for e in self.rotation(x) {
                    let y = self.other_end(e, x);
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.components().len() == self.num_nodes()
    }

    /// Non-crossing check for forests: every edge cut separates the boundary
    /// into a cyclic interval and its complement, components do not
    /// interleave, and boundary leaves have degree one.
    pub fn is_planar_forest(&self) -> bool {
        if !self.is_forest() || (0..self.boundary).any(|b| self.rotation(b).len() > 1) {
            return false;
        }
        let n = self.boundary;
        let comps = self.components();
        let comp_of: Vec<usize> = {
            let mut c = vec![0; self.num_nodes()];
            for (i, comp) in comps.iter().enumerate() {
                for &x in comp {
                    c[x] = i;
                }
            }
            c
        };
        for e in 0..self.edges.len() {
            let side = self.boundary_side(e);
            let comp_leaves: Subset =
                Subset::from_zero_based((0..n).filter(|&b| comp_of[b] == comp_of[self.edges[e].0]));
            if !is_cyclic_interval_within(side, comp_leaves, n) {
                return false;
            }
        }
        let leaf_sets: Vec<Subset> = comps
            .iter()
            .map(|c| Subset::from_zero_based(c.iter().copied().filter(|&x| x < n)))
            .filter(|s| !s.is_empty())
            .collect();
        leaf_sets
            .iter()
            .enumerate()
            .all(|(i, &a)| leaf_sets[i + 1..].iter().all(|&b| !crossing(a, b)))
    }

    /// Boundary leaves on the second endpoint's side of edge `e`.
    fn boundary_side(&self, e: usize) -> Subset {
        let (a, b) = self.edges[e];
        let mut stack = vec![b];
        let mut seen = BTreeSet::from([a, b]);
        let mut out = Subset::EMPTY;
        while let Some(x) = stack.pop() {
            if x < self.boundary {
                out = out.with(x);
            }
            for f in self.rotation(x) {
                let y = self.other_end(f, x);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        out
    }

    /// Every perfect orientation, in a deterministic order.
    pub fn perfect_orientations(&self) -> Vec<PerfectOrientation> {
        let mut partial = vec![vec![false; self.edges.len()]];
        for comp in self.components() {
            let edges: Vec<usize> = {
                let nodes: BTreeSet<usize> = comp.iter().copied().collect();
                (0..self.edges.len())
                    .filter(|&e| nodes.contains(&self.edges[e].0))
                    .collect()
            };
            if edges.is_empty() {
                continue;
            }
            let local = self.orient_component(&edges);
            let mut next = Vec::with_capacity(partial.len() * local.len());
            for p in &partial {
                for l in &local {
                    let mut q = p.clone();
                    for (&e, &dir) in edges.iter().zip(l) {
                        q[e] = dir;
                    }
                    next.push(q);
                }
            }
            partial = next;
        }
        partial
            .into_iter()
            .map(|toward_second| {
                let sources = self.sources_of(&toward_second);
                PerfectOrientation {
                    toward_second,
                    sources,
                }
            })
            .collect()
    }

    fn sources_of(&self, toward_second: &[bool]) -> Subset {
        let mut s = Subset::EMPTY;
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let tail = if toward_second[e] { a } else { b };
            if tail < self.boundary {
                s = s.with(tail);
            }
        }
        s
    }

    /// Backtracking over the edges of one component with per-vertex
    /// in/out-degree pruning.
    fn orient_component(&self, edges: &[usize]) -> Vec<Vec<bool>> {
        let n = self.num_nodes();
        let mut remaining = vec![0usize; n];
        for &e in edges {
            remaining[self.edges[e].0] += 1;
            remaining[self.edges[e].1] += 1;
        }
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        let mut current = Vec::with_capacity(edges.len());
        let mut out = Vec::new();
        self.orient_rec(
            edges,
            0,
            &mut remaining,
            &mut indeg,
            &mut outdeg,
            &mut current,
            &mut out,
        );
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn orient_rec(
        &self,
        edges: &[usize],
        idx: usize,
        remaining: &mut [usize],
        indeg: &mut [usize],
        outdeg: &mut [usize],
        current: &mut Vec<bool>,
        out: &mut Vec<Vec<bool>>,
    ) {
        if idx == edges.len() {
            out.push(current.clone());
            return;
        }
        let (a, b) = self.edges[edges[idx]];
        for dir in [true, false] {
            let (tail, head) = if dir { (a, b) } else { (b, a) };
            outdeg[tail] += 1;
            indeg[head] += 1;
            remaining[a] -= 1;
            remaining[b] -= 1;
            if self.feasible(tail, indeg, outdeg, remaining)
                && self.feasible(head, indeg, outdeg, remaining)
            {
                current.push(dir);
                self.orient_rec(edges, idx + 1, remaining, indeg, outdeg, current, out);
                current.pop();
            }
            outdeg[tail] -= 1;
            indeg[head] -= 1;
            remaining[a] += 1;
            remaining[b] += 1;
        }
    }

    fn feasible(&self, x: usize, indeg: &[usize], outdeg: &[usize], remaining: &[usize]) -> bool {
        match self.color(x) {
            None => true,
            Some(Color::White) => indeg[x] <= 1 && indeg[x] + remaining[x] >= 1,
            Some(Color::Black) => outdeg[x] <= 1 && outdeg[x] + remaining[x] >= 1,
        }
    }
}

/// The set of source sets of perfect orientations.
pub fn positroid_from_graph(g: &PlabicGraph) -> Result<BTreeSet<Subset>> {
    let sets: BTreeSet<Subset> = g
        .perfect_orientations()
        .into_iter()
        .map(|o| o.sources)
        .collect();
    let sizes: BTreeSet<usize> = sets.iter().map(|s| s.len()).collect();
    if sizes.len() > 1 {
        let v: Vec<usize> = sizes.into_iter().collect();
        return Err(Error::MixedRank(v[0], v[1]));
    }
    Ok(sets)
}

/// Whether `s` is a cyclic interval of the leaves `within`, read in the
/// boundary order of `[n]`.
fn is_cyclic_interval_within(s: Subset, within: Subset, n: usize) -> bool {
    let order: Vec<bool> = (0..n)
        .filter(|&i| within.contains(i))
        .map(|i| s.contains(i))
        .collect();
    let changes = (0..order.len())
        .filter(|&i| order[i] != order[(i + 1) % order.len()])
        .count();
    changes <= 2
}

/// `a` and `b` interleave as `x < y < z < t` with `x, z` in one and `y, t` in the other.
fn crossing(a: Subset, b: Subset) -> bool {
    let mut seq: Vec<bool> = Vec::new();
    for i in 0..64 {
        let tag = match (a.contains(i), b.contains(i)) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        };
        if let Some(t) = tag {
            if seq.last() != Some(&t) {
                seq.push(t);
            }
        }
    }
    let mut changes = seq.len().saturating_sub(1);
    if seq.len() > 1 && seq.first() == seq.last() {
        changes += 1;
    }
    changes > 2
}

/// Places copies of graphs side by side; copy `c` takes the next
/// `g.boundary` labels.
pub fn disjoint_union(parts: &[PlabicGraph]) -> PlabicGraph {
    let boundary: usize = parts.iter().map(|g| g.boundary).sum();
    let mut out = PlabicGraph::new(boundary);
    let mut offset = 0;
    for g in parts {
        let base = out.boundary + out.colors.len();
        out.colors.extend(&g.colors);
        let map = |x: usize| {
            if x < g.boundary {
                offset + x
            } else {
                base + x - g.boundary
            }
        };
        for &(a, b) in &g.edges {
            out.edges.push((map(a), map(b)));
        }
        offset += g.boundary;
    }
    out
}

/// Star graphs of the even family: a black vertex joined to `1..k`, a white
/// vertex joined to `k+1..n`, and a connecting edge when `k` is odd.
pub fn family_star_graph(n: usize, k: usize) -> Result<PlabicGraph> {
    if !n.is_multiple_of(2) || n < 4 || !(1..n).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "family star graph needs even n >= 4 and 1 <= k < n, got n={n} k={k}"
        )));
    }
    let mut g = PlabicGraph::new(n);
    let black = g.add_internal(Color::Black);
    let white = g.add_internal(Color::White);
    for b in 0..k {
        g.add_edge(black, b);
    }
    if k % 2 == 1 {
        g.add_edge(black, white);
    }
    for b in k..n {
        g.add_edge(white, b);
    }
    Ok(g)
}

/// The forest `G_k(n)` on `[2^n]` for the hypercube family.
pub fn hypercube_graph(n: usize, k: usize) -> Result<PlabicGraph> {
    let size = 1usize << n;
    if n == 0 || n > 6 || !(1..size).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "hypercube graph needs 1 <= n <= 6 and 1 <= k < 2^n, got n={n} k={k}"
        )));
    }
    let l = k.trailing_zeros() as usize;
    if l > 0 {
        let part = hypercube_graph(n - l, k >> l)?;
        return Ok(disjoint_union(&vec![part; 1 << l]));
    }
    if k == 1 {
        return Ok(PlabicGraph::star(size, Color::White));
    }
    // 2^{L-1} < k < 2^L
    let big_l = usize::BITS as usize - k.leading_zeros() as usize;
    if big_l == n {
        return Ok(hypercube_graph(n, size - k)?.color_swapped());
    }
    let inner = hypercube_graph(big_l, k)?;
    let legs = 1usize << (n - big_l);
    let mut g = PlabicGraph::new(size);
    // old boundary vertices become white internal vertices, then old internals
    let old_boundary = inner.boundary;
    for _ in 0..old_boundary {
        g.add_internal(Color::White);
    }
    g.colors.extend(&inner.colors);
    let map = |x: usize| size + x;
    for &(a, b) in &inner.edges {
        g.add_edge(map(a), map(b));
    }
    for c in 0..old_boundary {
        for t in 0..legs {
            g.add_edge(map(c), c * legs + t);
        }
    }
    Ok(g)
}
