//! Reduced words, positive distinguished subexpressions and the wiring graph
//! of the Marsh-Rietsch parametrization.
//!
//! The matrix `g = g_1 ⋯ g_ℓ` has one factor per letter `s_{i_j}` of a reduced
//! word: `y_i(t_j) = 1 + t_j E_{i+1,i}` when `j` is a bridge position and the
//! signed permutation matrix `ṡ_i` (entry `-1` at `(i,i+1)`, `+1` at `(i+1,i)`)
//! when `j` is a crossing. Paths run left to right: row indices are sources
//! on the left boundary, column indices are sinks on the right boundary, and
//! the factor `g_j` contributes an edge `a → b` of weight `(g_j)_{ab}` between
//! consecutive layers.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::perm::{bruhat_leq, Permutation};
use crate::poly::{Monomial, Poly};
use crate::subset::Subset;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedWord {
    /// Simple reflection indices `i_1, .., i_ℓ`, each in `1..n`.
    pub letters: Vec<usize>,
}

impl ReducedWord {
    /// Validates that `letters` is a reduced word for `w`.
    pub fn for_permutation(w: &Permutation, letters: Vec<usize>) -> Result<Self> {
        let n = w.n();
        if letters.iter().any(|&i| i == 0 || i >= n) {
            return Err(Error::InvalidWord(format!(
                "{letters:?} has letters outside 1..{n}"
            )));
        }
        let word = Self { letters };
        let product = word.product(n);
        if &product != w || word.len() != w.length() {
            return Err(Error::InvalidWord(format!(
                "{:?} is not a reduced word for {w}",
                word.letters
            )));
        }
        Ok(word)
    }

    /// Parses `"1,2,3,2,1"`.
    pub fn parse(w: &Permutation, text: &str) -> Result<Self> {
        let letters = text
            .split([',', ' '])
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidWord(format!("cannot parse {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::for_permutation(w, letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `s_{i_1} ⋯ s_{i_ℓ}` in `S_n`.
    pub fn product(&self, n: usize) -> Permutation {
        self.letters
            .iter()
            .fold(Permutation::identity(n), |u, &i| u.times_simple(i))
    }
}

/// Staircase word: repeatedly move the largest misplaced value one step to
/// the right, then read the recorded letters backwards.
pub fn default_reduced_word(w: &Permutation) -> ReducedWord {
    let n = w.n();
    let mut u = w.clone();
    let mut record = Vec::new();
    loop {
        let inv = u.inverse();
        let Some(largest) = (0..n).rev().find(|&val| inv.at(val) != val) else {
            break;
        };
        let pos = inv.at(largest);
        record.push(pos + 1);
        u = u.times_simple(pos + 1);
    }
    record.reverse();
    ReducedWord { letters: record }
}

/// A second deterministic reduced word: peel off the last right descent
/// instead of following the largest misplaced value.
pub fn last_descent_reduced_word(w: &Permutation) -> ReducedWord {
    let mut u = w.clone();
    let mut record = Vec::new();
    while let Some(i) = (1..w.n()).rev().find(|&i| u.has_descent(i)) {
        record.push(i);
        u = u.times_simple(i);
    }
    record.reverse();
    ReducedWord { letters: record }
}

/// Positive distinguished subexpression: `J^+` (crossings) and `J^∘`
/// (bridges), as 1-indexed word positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pds {
    pub jplus: Vec<usize>,
    pub jcirc: Vec<usize>,
}

/// Rightmost reduced subword for `v`: scan from the right, taking a letter
/// whenever it shortens the remaining permutation.
pub fn pds(v: &Permutation, word: &ReducedWord) -> Result<Pds> {
    let mut u = v.clone();
    let mut jplus = Vec::new();
    let mut jcirc = Vec::new();
    for (idx, &i) in word.letters.iter().enumerate().rev() {
        if u.has_descent(i) {
            jplus.push(idx + 1);
            u = u.times_simple(i);
        } else {
            jcirc.push(idx + 1);
        }
    }
    if !u.is_identity() {
        return Err(Error::NonemptyIntervalRequired {
            v: v.to_string(),
            w: word.product(v.n()).to_string(),
        });
    }
    jplus.reverse();
    jcirc.reverse();
    Ok(Pds { jplus, jcirc })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Chip {
    /// Edge from wire `wire + 1` down to wire `wire` with weight `t_position`.
    Bridge { position: usize, wire: usize },
    /// Edges `wire → wire + 1` (weight `-1`) and `wire + 1 → wire` (weight `1`).
    Crossing { position: usize, wire: usize },
}

impl Chip {
    pub fn position(&self) -> usize {
        match *self {
            Chip::Bridge { position, .. } | Chip::Crossing { position, .. } => position,
        }
    }

    pub fn wire(&self) -> usize {
        match *self {
            Chip::Bridge { wire, .. } | Chip::Crossing { wire, .. } => wire,
        }
    }
}

/// The wiring graph `G_{v,w}` of a reduced word with its PDS.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WiringGraph {
    pub n: usize,
    pub v: Permutation,
    pub w: Permutation,
    pub word: ReducedWord,
    pub pds: Pds,
    pub chips: Vec<Chip>,
}

pub fn build_graph(v: &Permutation, word: &ReducedWord) -> Result<WiringGraph> {
    let n = v.n();
    let w = word.product(n);
    if !bruhat_leq(v, &w)? {
        return Err(Error::NonemptyIntervalRequired {
            v: v.to_string(),
            w: w.to_string(),
        });
    }
    let pds = pds(v, word)?;
    let chips = word
        .letters
        .iter()
        .enumerate()
        .map(|(idx, &i)| {
            let position = idx + 1;
            if pds.jplus.binary_search(&position).is_ok() {
                Chip::Crossing { position, wire: i }
            } else {
                Chip::Bridge { position, wire: i }
            }
        })
        .collect();
    Ok(WiringGraph {
        n,
        v: v.clone(),
        w,
        word: word.clone(),
        pds,
        chips,
    })
}

impl WiringGraph {
    /// Number of bridges, `d = ℓ(w) - ℓ(v)`.
    pub fn d(&self) -> usize {
        self.pds.jcirc.len()
    }

    /// Coordinate index of the bridge at a word position.
    pub fn bridge_coordinate(&self, position: usize) -> Option<usize> {
        self.pds.jcirc.binary_search(&position).ok()
    }
}

/// `k` vertex-disjoint paths from sources `I` (left) to sinks `[k]` (right).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCollection {
    /// `paths[t][c]` is the 1-indexed wire of the path starting at the `t`-th
    /// smallest source after `c` chips.
    pub paths: Vec<Vec<usize>>,
    pub sources: Subset,
    /// Bridge positions used, increasing.
    pub bridges_used: Vec<usize>,
    /// Sign of the source-to-sink matching.
    pub sign: i8,
    /// Product of the crossing weights along the paths.
    pub crossing_sign: i8,
}

/// A signed monomial in the bridge parameters. `exponents` is indexed by the
/// bridge positions `J^∘` in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MrMonomial {
    pub exponents: Vec<u8>,
    pub sign: i8,
}

impl MrMonomial {
    pub fn is_squarefree_monic(&self) -> bool {
        self.sign == 1 && self.exponents.iter().all(|&e| e <= 1)
    }

    pub fn to_poly(&self, graph: &WiringGraph) -> Poly {
        let m = Monomial::from_pairs(
            self.exponents
                .iter()
                .zip(&graph.pds.jcirc)
                .map(|(&e, &pos)| (pos, u32::from(e))),
        );
        Poly::term(m, self.sign.into())
    }

    pub fn as_vector(&self) -> Vec<i64> {
        self.exponents.iter().map(|&e| i64::from(e)).collect()
    }
}

/// Depth-first enumeration over occupancy masks with memoized reachability.
struct PathSearch<'a> {
    graph: &'a WiringGraph,
    target: u64,
    reach: HashMap<(usize, u64), bool>,
}

impl<'a> PathSearch<'a> {
    /// Occupancy masks reachable from `mask` across chip `c` (0-indexed), with
    /// the wire moves made: `(new mask, moves)`, where a move `(from, to)`
    /// records a token changing wire.
    fn steps(&self, c: usize, mask: u64) -> Vec<(u64, Option<usize>, Vec<(usize, usize)>)> {
        let chip = self.graph.chips[c];
        let r = chip.wire() - 1;
        let lo = mask >> r & 1 == 1;
        let hi = mask >> (r + 1) & 1 == 1;
        match chip {
            Chip::Bridge { position, .. } => {
                let mut out = vec![(mask, None, Vec::new())];
                if hi && !lo {
                    out.push((
                        mask & !(1 << (r + 1)) | 1 << r,
                        Some(position),
                        vec![(r + 1, r)],
                    ));
                }
                out
            }
            Chip::Crossing { .. } => {
                let mut moved = mask & !(1 << r) & !(1 << (r + 1));
                let mut moves = Vec::new();
                if lo {
                    moved |= 1 << (r + 1);
                    moves.push((r, r + 1));
                }
                if hi {
                    moved |= 1 << r;
                    moves.push((r + 1, r));
                }
                vec![(moved, None, moves)]
            }
        }
    }

    fn can_reach(&mut self, c: usize, mask: u64) -> bool {
        if c == self.graph.chips.len() {
            return mask == self.target;
        }
        if let Some(&r) = self.reach.get(&(c, mask)) {
            return r;
        }
        let steps = self.steps(c, mask);
        let r = steps.into_iter().any(|(m, _, _)| self.can_reach(c + 1, m));
        self.reach.insert((c, mask), r);
        r
    }

    fn enumerate(
        &mut self,
        c: usize,
        wires: &mut Vec<usize>,
        trail: &mut Vec<Vec<usize>>,
        bridges: &mut Vec<usize>,
        crossing_sign: i8,
        out: &mut Vec<PathCollection>,
        sources: Subset,
    ) {
        let mask = wires.iter().fold(0u64, |m, &w| m | 1 << w);
        if !self.can_reach(c, mask) {
            return;
        }
        if c == self.graph.chips.len() {
            let k = wires.len();
            // sign of the matching source rank t ↦ sink wires[t]
            let mut inversions = 0;
            for a in 0..k {
                for b in a + 1..k {
                    if wires[a] > wires[b] {
                        inversions += 1;
                    }
                }
            }
            let paths = (0..k)
                .map(|t| trail.iter().map(|layer| layer[t] + 1).collect())
                .collect();
            out.push(PathCollection {
                paths,
                sources,
                bridges_used: bridges.clone(),
                sign: if inversions % 2 == 0 { 1 } else { -1 },
                crossing_sign,
            });
            return;
        }
        let chip = self.graph.chips[c];
        for (_, bridge, moves) in self.steps(c, mask) {
            let saved = wires.clone();
            let mut sign = crossing_sign;
            for &(from, to) in &moves {
                let t = saved
                    .iter()
                    .position(|&w| w == from)
                    .expect("token on wire");
                wires[t] = to;
                if matches!(chip, Chip::Crossing { .. }) && to > from {
                    sign = -sign;
                }
            }
            if let Some(b) = bridge {
                bridges.push(b);
            }
            trail.push(wires.clone());
            self.enumerate(c + 1, wires, trail, bridges, sign, out, sources);
            trail.pop();
            if bridge.is_some() {
                bridges.pop();
            }
            *wires = saved;
        }
    }
}

/// All non-intersecting path collections from sources `I` to sinks `[|I|]`,
/// in depth-first order (bridge-free choice first at every chip).
pub fn ni_path_collections(graph: &WiringGraph, sources: Subset) -> Vec<PathCollection> {
    let k = sources.len();
    let mut search = PathSearch {
        graph,
        target: Subset::initial(k).0,
        reach: HashMap::new(),
    };
    let mut wires: Vec<usize> = sources.elements().collect();
    let mut trail = vec![wires.clone()];
    let mut out = Vec::new();
    search.enumerate(
        0,
        &mut wires,
        &mut trail,
        &mut Vec::new(),
        1,
        &mut out,
        sources,
    );
    out
}

/// LGV expansion of `Δ_I(g)`: one signed monomial per collection.
pub fn flag_minor(graph: &WiringGraph, sources: Subset) -> Vec<MrMonomial> {
    ni_path_collections(graph, sources)
        .into_iter()
        .map(|p| {
            let mut exponents = vec![0u8; graph.d()];
            for b in &p.bridges_used {
                exponents[graph.bridge_coordinate(*b).expect("bridge position")] += 1;
            }
            MrMonomial {
                exponents,
                sign: p.sign * p.crossing_sign,
            }
        })
        .collect()
}

/// The flag minor as a polynomial in the bridge parameters.
pub fn flag_minor_poly(graph: &WiringGraph, sources: Subset) -> Poly {
    flag_minor(graph, sources)
        .iter()
        .fold(Poly::zero(), |acc, m| &acc + &m.to_poly(graph))
}

/// The unique collection's monomial, for toric intervals.
pub fn flag_minor_toric(graph: &WiringGraph, sources: Subset) -> Result<Option<MrMonomial>> {
    let mut terms = flag_minor(graph, sources);
    match terms.len() {
        0 => Ok(None),
        1 => Ok(terms.pop()),
        _ => Err(Error::MultipleCollections(sources.to_string())),
    }
}

pub type PolyMatrix = Vec<Vec<Poly>>;

/// The product `g_1 ⋯ g_ℓ` with bridge parameters as variables `t_j`.
pub fn symbolic_matrix(graph: &WiringGraph) -> PolyMatrix {
    let n = graph.n;
    let mut g: PolyMatrix = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| if a == b { Poly::one() } else { Poly::zero() })
                .collect()
        })
        .collect();
    for chip in &graph.chips {
        let r = chip.wire() - 1;
        // right-multiplying by a factor only mixes columns r and r+1
        for row in g.iter_mut() {
            let (a, b) = (row[r].clone(), row[r + 1].clone());
            match *chip {
                Chip::Bridge { position, .. } => {
                    // column r += t * column r+1
                    row[r] = &a + &(&b * &Poly::var(position));
                }
                Chip::Crossing { .. } => {
                    // new col r = col r+1, new col r+1 = -col r
                    row[r] = b;
                    row[r + 1] = -&a;
                }
            }
        }
    }
    g
}

/// Every flag minor `Δ_I` (rows `I`, columns `[|I|]`) by Laplace expansion
/// along the last column; `Δ_∅ = 1`.
pub fn all_flag_minors(g: &PolyMatrix) -> BTreeMap<Subset, Poly> {
    let n = g.len();
    let mut minors: BTreeMap<Subset, Poly> = BTreeMap::new();
    minors.insert(Subset::EMPTY, Poly::one());
    for k in 1..=n {
        for rows in Subset::all_of_size(n, k) {
            let mut total = Poly::zero();
            for (p, r) in rows.elements().enumerate() {
                let entry = &g[r][k - 1];
                if entry.is_zero() {
                    continue;
                }
                let sub = &minors[&rows.without(r)];
                let term = entry * sub;
                // cofactor sign (-1)^{p+k} with 1-indexed p+1 and k
                total = if (p + 1 + k) % 2 == 0 {
                    &total + &term
                } else {
                    &total - &term
                };
            }
            minors.insert(rows, total);
        }
    }
    minors
}

/// Incidence Plücker relations `E_{I,J}` that do not vanish. `I` ranges
/// over `(r-1)`-subsets and `J` over `(s+1)`-subsets with `1 <= r <= s < n`.
pub fn incidence_plucker_failures(
    minors: &BTreeMap<Subset, Poly>,
    n: usize,
) -> Vec<(Subset, Subset, Poly)> {
    let mut failures = Vec::new();
    for r in 1..=n {
        for s in r..n {
            for small in Subset::all_of_size(n, r - 1) {
                for big in Subset::all_of_size(n, s + 1) {
                    let e = incidence_plucker(minors, small, big);
                    if !e.is_zero() {
                        failures.push((small, big, e));
                    }
                }
            }
        }
    }
    failures
}

/// `E_{I,J} = Σ_{j ∈ J∖I} (-1)^{#{k∈J : k<j} + #{i∈I : i>j}} Δ_{I∪j} Δ_{J∖j}`.
pub fn incidence_plucker(minors: &BTreeMap<Subset, Poly>, small: Subset, big: Subset) -> Poly {
    let mut total = Poly::zero();
    for j in big.difference(small).elements() {
        let below = big.elements().filter(|&k| k < j).count();
        let above = small.elements().filter(|&i| i > j).count();
        let term = &minors[&small.with(j)] * &minors[&big.without(j)];
        total = if (below + above) % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    total
}
