//! JSON, DOT and OFF writers.
//!
//! Everything written here is deterministic for a fixed input: maps are
//! ordered, vertices are lexicographic and faces follow the face-lattice
//! order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::geometry::{face_lattice, hull, linalg, Hyperplane, LatticePolytope};
use crate::mrgraph::{Chip, MrMonomial, WiringGraph};
use crate::perm::BruhatInterval;
use crate::plabic::{Color, PlabicGraph};
use crate::subset::Subset;
use crate::{Error, Result};

/// `{"vertices": [[..]], "facets": [{"normal": [..], "offset": q}], "faces": [[..]]}`.
///
/// `faces` lists every nonempty face as sorted vertex indices, ordered by
/// dimension and then lexicographically. Equations of the affine hull are
/// included when the polytope is not full-dimensional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<Hyperplane>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equations: Vec<Hyperplane>,
    #[serde(default)]
    pub faces: Vec<Vec<usize>>,
}

impl PolytopeJson {
    /// `faces` needs the face lattice and is subject to its size gate.
    pub fn new(p: &LatticePolytope) -> Result<Self> {
        let lattice = face_lattice(p)?;
        let faces = lattice
            .faces()
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| f.iter().collect())
            .collect();
        Ok(Self::without_faces(p).with_faces(faces))
    }

    pub fn without_faces(p: &LatticePolytope) -> Self {
        Self {
            vertices: p.vertices().to_vec(),
            facets: p.facets().to_vec(),
            equations: p.equations().to_vec(),
            faces: Vec::new(),
        }
    }

    fn with_faces(mut self, faces: Vec<Vec<usize>>) -> Self {
        self.faces = faces;
        self
    }

    pub fn to_polytope(&self) -> LatticePolytope {
        hull(&self.vertices)
    }
}

pub fn polytope_to_json(p: &LatticePolytope) -> Result<String> {
    Ok(serde_json::to_string_pretty(&PolytopeJson::new(p)?).expect("plain data serializes"))
}

pub fn polytope_from_json(text: &str) -> Result<LatticePolytope> {
    let parsed: PolytopeJson = serde_json::from_str(text)
        .map_err(|e| Error::InvalidParameter(format!("polytope JSON: {e}")))?;
    if parsed.vertices.is_empty() {
        return Err(Error::InvalidParameter(
            "polytope JSON has no vertices".into(),
        ));
    }
    Ok(parsed.to_polytope())
}

/// One term `sign · ∏ t_p^{e}` of a flag minor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorTerm {
    pub sign: i8,
    /// Keys `"t<word position>"`.
    pub exp: BTreeMap<String, u32>,
}

/// `{"I": [..], "terms": [{"sign": 1, "exp": {"t1": 1, ..}}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorJson {
    #[serde(rename = "I")]
    pub rows: Subset,
    pub terms: Vec<MinorTerm>,
}

impl MinorJson {
    pub fn new(graph: &WiringGraph, rows: Subset, monomials: &[MrMonomial]) -> Self {
        let terms = monomials
            .iter()
            .map(|m| MinorTerm {
                sign: m.sign,
                exp: m
                    .exponents
                    .iter()
                    .zip(&graph.pds.jcirc)
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, &pos)| (format!("t{pos}"), u32::from(e)))
                    .collect(),
            })
            .collect();
        Self { rows, terms }
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram drawn bottom to top with one rank per row.
pub fn hasse_dot(iv: &BruhatInterval) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph interval {{");
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
    for r in 0..=iv.d() {
        let ids: Vec<String> = iv.rank_indices(r).map(|i| format!("u{i}")).collect();
        let _ = writeln!(out, "  {{ rank=same; {} }}", ids.join("; "));
    }
    for (i, u) in iv.elements().enumerate() {
        let _ = writeln!(out, "  u{i} [label=\"{}\"];", dot_escape(&u.to_string()));
    }
    for (c, &(a, b)) in iv.covers().iter().zip(iv.cover_pairs()) {
        let _ = writeln!(out, "  u{a} -> u{b} [label=\"({} {})\"];", c.i, c.j);
    }
    out.push_str("}\n");
    out
}

/// Wiring diagram: wire `i` is the row of nodes `w<i>_<c>` for layers
/// `c = 0..ℓ`. Bridges are labelled `t<position>`, crossings `s<wire>`.
pub fn wiring_dot(graph: &WiringGraph) -> String {
    let n = graph.n;
    let len = graph.chips.len();
    let mut out = String::new();
    let _ = writeln!(out, "digraph wiring {{");
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=point];");
    for c in 0..=len {
        let ids: Vec<String> = (1..=n).map(|i| format!("w{i}_{c}")).collect();
        let _ = writeln!(out, "  {{ rank=same; {} }}", ids.join("; "));
    }
    for i in 1..=n {
        let _ = writeln!(out, "  src{i} [shape=plaintext, label=\"{i}\"];");
        let _ = writeln!(out, "  src{i} -> w{i}_0 [arrowhead=none];");
    }
    for chip in &graph.chips {
        let p = chip.position();
        let (a, b) = (chip.wire(), chip.wire() + 1);
        for i in (1..=n).filter(|&i| i != a && i != b) {
            let _ = writeln!(out, "  w{i}_{} -> w{i}_{p} [arrowhead=none];", p - 1);
        }
        match chip {
            Chip::Bridge { .. } => {
                let _ = writeln!(out, "  w{a}_{} -> w{a}_{p} [arrowhead=none];", p - 1);
                let _ = writeln!(out, "  w{b}_{} -> w{b}_{p} [arrowhead=none];", p - 1);
                let _ = writeln!(out, "  w{b}_{p} -> w{a}_{p} [label=\"t{p}\", color=red];");
            }
            Chip::Crossing { .. } => {
                let _ = writeln!(
                    out,
                    "  w{a}_{} -> w{b}_{p} [label=\"s{a}\", arrowhead=none];",
                    p - 1
                );
                let _ = writeln!(out, "  w{b}_{} -> w{a}_{p} [arrowhead=none];", p - 1);
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Plabic graph for `neato`: boundary leaves pinned on a circle, internal
/// vertices filled by color.
pub fn plabic_dot(g: &PlabicGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph plabic {{");
    let _ = writeln!(out, "  layout=neato;");
    let _ = writeln!(
        out,
        "  node [shape=circle, style=filled, label=\"\", width=0.2];"
    );
    let radius = 2.0 + g.boundary as f64 / 4.0;
    for b in 0..g.boundary {
        // clockwise from the top
        let angle =
            std::f64::consts::FRAC_PI_2 - std::f64::consts::TAU * b as f64 / g.boundary as f64;
        let _ = writeln!(
            out,
            "  b{} [shape=plaintext, style=\"\", label=\"{}\", pos=\"{:.3},{:.3}!\"];",
            b,
            b + 1,
            radius * angle.cos(),
            radius * angle.sin()
        );
    }
    for (i, color) in g.colors.iter().enumerate() {
        let fill = match color {
            Color::Black => "black",
            Color::White => "white",
        };
        let _ = writeln!(out, "  v{} [fillcolor={fill}];", g.boundary + i);
    }
    let name = |x: usize| {
        if x < g.boundary {
            format!("b{x}")
        } else {
            format!("v{x}")
        }
    };
    for &(a, b) in &g.edges {
        let _ = writeln!(out, "  {} -- {};", name(a), name(b));
    }
    out.push_str("}\n");
    out
}

/// Leftmost coordinates on which the projection keeps the affine dimension.
fn spanning_coordinates(p: &LatticePolytope) -> Vec<usize> {
    let base = &p.vertices()[0];
    let diffs: Vec<Vec<i64>> = p.vertices()[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        return Vec::new();
    }
    linalg::rref(linalg::to_rational_rows(&diffs)).1
}

fn cross(a: &[i64], b: &[i64]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Vertices of a polygonal facet in boundary order, counterclockwise seen
/// from outside.
fn facet_cycle(
    coords: &[Vec<i64>],
    facet: &BitSet,
    normal: &[i64],
    edges: &[(usize, usize)],
) -> Vec<usize> {
    let inside: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|&(a, b)| facet.contains(a) && facet.contains(b))
        .collect();
    let start = facet.iter().next().expect("facets are nonempty");
    let mut cycle = vec![start];
    let mut prev = usize::MAX;
    loop {
        let cur = *cycle.last().expect("nonempty");
        let next = inside
            .iter()
            .filter_map(|&(a, b)| {
                if a == cur {
                    Some(b)
                } else if b == cur {
                    Some(a)
                } else {
                    None
                }
            })
            .find(|&x| x != prev && (cycle.len() < 2 || x != cycle[cycle.len() - 2]));
        match next {
            Some(x) if x != start => {
                prev = cur;
                cycle.push(x);
            }
            _ => break,
        }
    }
    if cycle.len() >= 3 {
        let d = |i: usize| -> Vec<i64> {
            coords[cycle[i]]
                .iter()
                .zip(&coords[cycle[0]])
                .map(|(a, b)| a - b)
                .collect()
        };
        let c = cross(&d(1), &d(2));
        let orient: i64 = c.iter().zip(normal).map(|(x, y)| x * y).sum();
        if orient < 0 {
            cycle[1..].reverse();
        }
    }
    cycle
}

/// OFF file for a polytope of affine dimension 3. Higher ambient dimensions
/// are projected onto the leftmost coordinates that span the affine hull.
pub fn polytope_to_off(p: &LatticePolytope) -> Result<String> {
    if p.affine_dim() != 3 {
        return Err(Error::InvalidParameter(format!(
            "OFF export needs a 3-polytope, got dimension {}",
            p.affine_dim()
        )));
    }
    let axes = spanning_coordinates(p);
    let coords: Vec<Vec<i64>> = p
        .vertices()
        .iter()
        .map(|v| axes.iter().map(|&c| v[c]).collect())
        .collect();
    let edges = p.edges();
    let mut out = String::new();
    let _ = writeln!(out, "OFF");
    let _ = writeln!(
        out,
        "{} {} {}",
        p.num_vertices(),
        p.facets().len(),
        edges.len()
    );
    for c in &coords {
        let _ = writeln!(out, "{} {} {}", c[0], c[1], c[2]);
    }
    for (facet, inc) in p.facets().iter().zip(p.incidence()) {
        let normal: Vec<i64> = axes.iter().map(|&c| facet.normal[c]).collect();
        let cycle = facet_cycle(&coords, inc, &normal, &edges);
        let list: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{} {}", cycle.len(), list.join(" "));
    }
    Ok(out)
}

/// Parses the vertex block of an OFF file.
pub fn off_vertices(text: &str) -> Result<Vec<Vec<i64>>> {
    let bad = |what: &str| Error::InvalidParameter(format!("OFF: {what}"));
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    if lines.next() != Some("OFF") {
        return Err(bad("missing header"));
    }
    let counts: Vec<usize> = lines
        .next()
        .ok_or_else(|| bad("missing counts"))?
        .split_whitespace()
        .map(|s| s.parse().map_err(|_| bad("bad count")))
        .collect::<Result<_>>()?;
    let nv = *counts.first().ok_or_else(|| bad("missing counts"))?;
    (0..nv)
        .map(|_| {
            lines
                .next()
                .ok_or_else(|| bad("truncated vertex list"))?
                .split_whitespace()
                .map(|s| s.parse().map_err(|_| bad("bad coordinate")))
                .collect()
        })
        .collect()
}
