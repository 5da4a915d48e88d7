//! Permutations in one-line notation, Bruhat order, intervals and R-polynomials.
//!
//! Values and positions are 0-indexed internally; everything that crosses the
//! API boundary as plain integers (parsing, display, serialization, cover
//! transpositions) is 1-indexed.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::BitSet;
use crate::poset::FinitePoset;
use crate::subset::Subset;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    window: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            window: (0..n as u8).collect(),
        }
    }

    /// Longest element `n, n-1, .., 1`.
    pub fn longest(n: usize) -> Self {
        Self {
            window: (0..n as u8).rev().collect(),
        }
    }

    /// Parses 1-indexed one-line notation.
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        let n = values.len();
        if n == 0 || n > 64 {
            return Err(Error::InvalidPermutation(format!(
                "size {n} outside 1..=64"
            )));
        }
        let mut seen = vec![false; n];
        for &x in values {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{values:?} is not a permutation of 1..{n}"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Self {
            window: values.iter().map(|&x| (x - 1) as u8).collect(),
        })
    }

    /// Parses `"1,3,2,4"`, `"1 3 2 4"` or, for n < 10, `"1324"`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::InvalidPermutation(format!("cannot parse {text:?}"));
        let values: Vec<usize> = if t.contains(',') || t.contains(' ') {
            t.split([',', ' '])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Self::from_one_line(&values)
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    /// 1-indexed one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.window.iter().map(|&x| x as usize + 1).collect()
    }

    /// Value at 0-indexed position `i`, 0-indexed.
    pub fn at(&self, i: usize) -> usize {
        self.window[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// Right multiplication by the transposition of 0-indexed positions `i`, `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut window = self.window.clone();
        window.swap(i, j);
        Self { window }
    }

    /// Right multiplication by the simple reflection `s_i` (1-indexed, `1 <= i < n`).
    pub fn times_simple(&self, i: usize) -> Self {
        self.swap_positions(i - 1, i)
    }

    /// Whether `s_i` (1-indexed) is a right descent: `u s_i < u`.
    pub fn has_descent(&self, i: usize) -> bool {
        self.window[i - 1] > self.window[i]
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            window: other
                .window
                .iter()
                .map(|&x| self.window[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut window = vec![0u8; self.n()];
        for (i, &x) in self.window.iter().enumerate() {
            window[x as usize] = i as u8;
        }
        Self { window }
    }

    /// The one-line notation read backwards.
    pub fn reversed(&self) -> Self {
        Self {
            window: self.window.iter().rev().copied().collect(),
        }
    }

    /// `u[k] = {u(1), .., u(k)}` as a subset of 0-indexed values.
    pub fn prefix(&self, k: usize) -> Subset {
        Subset::from_zero_based(self.window[..k].iter().map(|&x| x as usize))
    }

    /// `u·(n-1, .., 1, 0)`: the vertex of the Bruhat interval polytope.
    pub fn weight_vector(&self) -> Vec<i64> {
        let n = self.n();
        let mut x = vec![0i64; n];
        for (pos, &val) in self.window.iter().enumerate() {
            x[val as usize] = (n - 1 - pos) as i64;
        }
        x
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut window: Vec<u8> = (0..n as u8).collect();
        window.shuffle(rng);
        Self { window }
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Self {
                window: cur.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| cur[i] < cur[i + 1])
            else {
                return out;
            };
            let j = (i + 1..n)
                .rev()
                .find(|&j| cur[j] > cur[i])
                .expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() < 10 {
            for x in self.one_line() {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_line(&values).map_err(serde::de::Error::custom)
    }
}

pub fn length(p: &Permutation) -> usize {
    p.length()
}

/// Bruhat comparison `u <= w` by the tableau criterion: for every `k` the
/// sorted prefix `u[k]` is entrywise at most the sorted prefix `w[k]`.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool> {
    u.check_same_n(w)?;
    Ok(bruhat_leq_unchecked(u, w))
}

pub(crate) fn bruhat_leq_unchecked(u: &Permutation, w: &Permutation) -> bool {
    let n = u.n();
    let mut su: Vec<u8> = Vec::with_capacity(n);
    let mut sw: Vec<u8> = Vec::with_capacity(n);
    for k in 0..n {
        let a = u.window[k];
        let b = w.window[k];
        su.insert(su.partition_point(|&x| x < a), a);
        sw.insert(sw.partition_point(|&x| x < b), b);
        if su.iter().zip(&sw).any(|(x, y)| x > y) {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEdge {
    pub lower: Permutation,
    pub upper: Permutation,
    /// 1-indexed positions with `i < j` and `upper = lower·(i j)`.
    pub i: usize,
    pub j: usize,
}

/// All covers `u ⋖ u·(i j)` (optionally below `ceiling`), sorted by `(i, j)`.
pub fn covers_above(u: &Permutation, ceiling: Option<&Permutation>) -> Vec<CoverEdge> {
    let n = u.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (u.window[i], u.window[j]);
            if a > b {
                continue;
            }
            if (i + 1..j).any(|m| a < u.window[m] && u.window[m] < b) {
                continue;
            }
            let upper = u.swap_positions(i, j);
            if let Some(c) = ceiling {
                if !bruhat_leq_unchecked(&upper, c) {
                    continue;
                }
            }
            out.push(CoverEdge {
                lower: u.clone(),
                upper,
                i: i + 1,
                j: j + 1,
            });
        }
    }
    out
}

/// The Bruhat interval `[v, w]` stratified by rank.
#[derive(Debug, Clone)]
pub struct BruhatInterval {
    v: Permutation,
    w: Permutation,
    ranks: Vec<Vec<Permutation>>,
    covers: Vec<CoverEdge>,
    index: HashMap<Permutation, usize>,
    rank_start: Vec<usize>,
    cover_pairs: Vec<(usize, usize)>,
    up: OnceLock<Vec<BitSet>>,
}

impl PartialEq for BruhatInterval {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
            && self.w == other.w
            && self.ranks == other.ranks
            && self.covers == other.covers
    }
}

impl Eq for BruhatInterval {}

/// Breadth-first upward closure of `v` inside `{u : u <= w}`.
pub fn interval(v: &Permutation, w: &Permutation) -> Result<BruhatInterval> {
    if !bruhat_leq(v, w)? {
        return Err(Error::NonemptyIntervalRequired {
            v: v.to_string(),
            w: w.to_string(),
        });
    }
    let d = w.length() - v.length();
    let mut ranks = vec![vec![v.clone()]];
    let mut covers = Vec::new();
    for _ in 0..d {
        let mut next = BTreeSet::new();
        let mut layer_covers = Vec::new();
        for u in ranks.last().expect("nonempty") {
            for c in covers_above(u, Some(w)) {
                next.insert(c.upper.clone());
                layer_covers.push(c);
            }
        }
        covers.extend(layer_covers);
        ranks.push(next.into_iter().collect());
    }
    Ok(BruhatInterval::from_parts(
        v.clone(),
        w.clone(),
        ranks,
        covers,
    ))
}

impl BruhatInterval {
    fn from_parts(
        v: Permutation,
        w: Permutation,
        ranks: Vec<Vec<Permutation>>,
        covers: Vec<CoverEdge>,
    ) -> Self {
        let mut index = HashMap::new();
        let mut rank_start = Vec::with_capacity(ranks.len() + 1);
        for layer in &ranks {
            rank_start.push(index.len());
            for u in layer {
                let next = index.len();
                index.insert(u.clone(), next);
            }
        }
        rank_start.push(index.len());
        let cover_pairs = covers
            .iter()
            .map(|c| (index[&c.lower], index[&c.upper]))
            .collect();
        Self {
            v,
            w,
            ranks,
            covers,
            index,
            rank_start,
            cover_pairs,
            up: OnceLock::new(),
        }
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    pub fn w(&self) -> &Permutation {
        &self.w
    }

    pub fn n(&self) -> usize {
        self.v.n()
    }

    /// `ℓ(w) - ℓ(v)`.
    pub fn d(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn ranks(&self) -> &[Vec<Permutation>] {
        &self.ranks
    }

    pub fn rank_sizes(&self) -> Vec<usize> {
        self.ranks.iter().map(Vec::len).collect()
    }

    pub fn covers(&self) -> &[CoverEdge] {
        &self.covers
    }

    /// Cover relations as `(lower index, upper index)`.
    pub fn cover_pairs(&self) -> &[(usize, usize)] {
        &self.cover_pairs
    }

    /// Elements in rank order, lexicographic within a rank. Indices used
    /// throughout refer to this order.
    pub fn elements(&self) -> impl Iterator<Item = &Permutation> {
        self.ranks.iter().flatten()
    }

    pub fn element(&self, idx: usize) -> &Permutation {
        let r = self.rank_of(idx);
        &self.ranks[r][idx - self.rank_start[r]]
    }

    pub fn rank_of(&self, idx: usize) -> usize {
        self.rank_start.partition_point(|&s| s <= idx) - 1
    }

    pub fn index_of(&self, u: &Permutation) -> Option<usize> {
        self.index.get(u).copied()
    }

    pub fn contains(&self, u: &Permutation) -> bool {
        self.index.contains_key(u)
    }

    /// Indices of the elements of rank `r`.
    pub fn rank_indices(&self, r: usize) -> std::ops::Range<usize> {
        self.rank_start[r]..self.rank_start[r + 1]
    }

    /// Up-set of every element (reflexive), as bit sets over element indices.
    pub fn up_sets(&self) -> &[BitSet] {
        self.up.get_or_init(|| {
            let n = self.len();
            let mut up: Vec<BitSet> = (0..n).map(|i| BitSet::from_indices(n, [i])).collect();
            let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
            for &(a, b) in &self.cover_pairs {
                above[a].push(b);
            }
            for x in (0..n).rev() {
                for &y in &above[x] {
                    let uy = up[y].clone();
                    up[x].union_with(&uy);
                }
            }
            up
        })
    }

    /// Bruhat comparison between two elements of the interval, by index.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up_sets()[a].contains(b)
    }

    /// The interval as an abstract poset on element indices.
    pub fn poset(&self) -> FinitePoset {
        FinitePoset::from_up_sets(self.up_sets().to_vec())
    }

    /// The subinterval between two elements given by index.
    pub fn subinterval(&self, a: usize, b: usize) -> Result<BruhatInterval> {
        interval(self.element(a), self.element(b))
    }

    /// Indices of the elements covering `v`.
    pub fn atoms(&self) -> Vec<usize> {
        if self.d() == 0 {
            return Vec::new();
        }
        self.rank_indices(1).collect()
    }

    /// Indices of the elements covered by `w`.
    pub fn coatoms(&self) -> Vec<usize> {
        if self.d() == 0 {
            return Vec::new();
        }
        self.rank_indices(self.d() - 1).collect()
    }

    /// `|I| = 2^d` with binomial rank sizes; reported only as information.
    pub fn is_hypercube_shaped(&self) -> bool {
        let d = self.d();
        let mut binom = 1usize;
        for (r, &s) in self.rank_sizes().iter().enumerate() {
            if s != binom {
                return false;
            }
            binom = binom * (d - r) / (r + 1);
        }
        true
    }
}

impl Serialize for BruhatInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            v: &'a Permutation,
            w: &'a Permutation,
            ranks: &'a [Vec<Permutation>],
            covers: &'a [CoverEdge],
        }
        Repr {
            v: &self.v,
            w: &self.w,
            ranks: &self.ranks,
            covers: &self.covers,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BruhatInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            v: Permutation,
            w: Permutation,
            ranks: Vec<Vec<Permutation>>,
            covers: Vec<CoverEdge>,
        }
        let r = Repr::deserialize(d)?;
        let known: std::collections::HashSet<&Permutation> = r.ranks.iter().flatten().collect();
        if r.covers
            .iter()
            .any(|c| !known.contains(&c.lower) || !known.contains(&c.upper))
        {
            return Err(serde::de::Error::custom(
                "cover edge endpoint outside the interval",
            ));
        }
        Ok(BruhatInterval::from_parts(r.v, r.w, r.ranks, r.covers))
    }
}

/// Integer polynomial in `q`, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RPolynomial {
    pub coeffs: Vec<i64>,
}

impl RPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// `(q - 1)^d`.
    pub fn torus(d: usize) -> Self {
        let mut p = Self::one();
        for _ in 0..d {
            p = p.times_q_minus_one();
        }
        p
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    fn times_q(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut c = vec![0];
        c.extend_from_slice(&self.coeffs);
        Self { coeffs: c }
    }

    fn times_q_minus_one(&self) -> Self {
        self.times_q().add(&self.negated())
    }

    fn negated(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self {
            coeffs: (0..len).map(|k| self.coeff(k) + other.coeff(k)).collect(),
        }
        .trim()
    }
}

impl fmt::Display for RPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Memo table for R-polynomials. Not shared between threads; each worker
/// owns its own cache.
#[derive(Debug, Default)]
pub struct RPolynomialCache {
    memo: HashMap<(Permutation, Permutation), RPolynomial>,
}

impl RPolynomialCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `R_{v,w}` by the descent recursion on the first right descent of `w`.
    pub fn get(&mut self, v: &Permutation, w: &Permutation) -> Result<RPolynomial> {
        if !bruhat_leq(v, w)? {
            return Err(Error::NonemptyIntervalRequired {
                v: v.to_string(),
                w: w.to_string(),
            });
        }
        Ok(self.rec(v, w))
    }

    fn rec(&mut self, v: &Permutation, w: &Permutation) -> RPolynomial {
        if v == w {
            return RPolynomial::one();
        }
        if !bruhat_leq_unchecked(v, w) {
            return RPolynomial::zero();
        }
        let key = (v.clone(), w.clone());
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let s = (1..w.n())
            .find(|&i| w.has_descent(i))
            .expect("w is not the identity");
        let ws = w.times_simple(s);
        let vs = v.times_simple(s);
        let result = if v.has_descent(s) {
            self.rec(&vs, &ws)
        } else {
            let a = self.rec(v, &ws).times_q_minus_one();
            let b = self.rec(&vs, &ws).times_q();
            a.add(&b)
        };
        self.memo.insert(key, result.clone());
        result
    }
}

pub fn r_polynomial(v: &Permutation, w: &Permutation) -> Result<RPolynomial> {
    RPolynomialCache::new().get(v, w)
}

/// The poset `Int[v,w]` of subintervals ordered by containment, with an
/// adjoined bottom element standing for the empty face.
#[derive(Debug, Clone)]
pub struct IntervalPoset {
    /// Element 0 is the empty interval; the others are `(lower, upper)`
    /// indices into the source interval, sorted by length then index.
    pub members: Vec<Option<(usize, usize)>>,
    pub poset: FinitePoset,
}

impl IntervalPoset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn interval_poset(iv: &BruhatInterval) -> IntervalPoset {
    let n = iv.len();
    let up = iv.up_sets();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..n {
        for b in up[a].iter() {
            pairs.push((a, b));
        }
    }
    pairs.sort_by_key(|&(a, b)| (iv.rank_of(b) - iv.rank_of(a), a, b));
    let mut members: Vec<Option<(usize, usize)>> = vec![None];
    members.extend(pairs.iter().map(|&p| Some(p)));
    let m = members.len();
    // [a,b] ⊆ [c,d] iff c <= a and b <= d
    let mut ups: Vec<BitSet> = Vec::with_capacity(m);
    ups.push(BitSet::full(m));
    for &(a, b) in &pairs {
        let mut s = BitSet::new(m);
        for (idx, &(c, d)) in pairs.iter().enumerate() {
            if up[c].contains(a) && up[b].contains(d) {
                s.insert(idx + 1);
            }
        }
        ups.push(s);
    }
    IntervalPoset {
        members,
        poset: FinitePoset::from_up_sets(ups),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    /// Oracle: Bruhat order by the rank-matrix criterion
    /// `#{a <= i : u(a) >= j} <= #{a <= i : w(a) >= j}`.
    fn leq_rank_matrix(u: &Permutation, w: &Permutation) -> bool {
        let n = u.n();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let cu = (0..=i).filter(|&a| u.at(a) >= j).count();
                let cw = (0..=i).filter(|&a| w.at(a) >= j).count();
                cu <= cw
            })
        })
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(p("4231").length(), 5);
        assert_eq!(p("1324").length(), 1);
    }

    #[test]
    fn bruhat_examples() {
        let e = Permutation::identity(4);
        assert!(bruhat_leq(&e, &p("3412")).unwrap());
        assert!(bruhat_leq(&p("1324"), &p("4231")).unwrap());
        assert!(!bruhat_leq(&p("2143"), &p("1324")).unwrap());
        assert!(matches!(
            bruhat_leq(&p("123"), &p("1234")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn bruhat_matches_rank_matrix_oracle_on_s4() {
        let all = Permutation::all(4);
        for u in &all {
            for w in &all {
                assert_eq!(bruhat_leq(u, w).unwrap(), leq_rank_matrix(u, w), "{u} {w}");
            }
        }
    }

    #[test]
    fn cover_examples() {
        assert!(covers_above(&Permutation::longest(3), None).is_empty());
        assert_eq!(covers_above(&p("1324"), Some(&p("4231"))).len(), 4);
        let atoms: Vec<(usize, usize)> = covers_above(&Permutation::identity(3), None)
            .iter()
            .map(|c| (c.i, c.j))
            .collect();
        assert_eq!(atoms, vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn interval_examples() {
        let v = p("1324");
        assert_eq!(interval(&v, &v).unwrap().d(), 0);
        let base = interval(&v, &p("4231")).unwrap();
        assert_eq!(base.rank_sizes(), vec![1, 4, 6, 4, 1]);
        assert_eq!(base.len(), 16);
        let remark = interval(&p("32154"), &p("53241")).unwrap();
        // Exhaustive filtering of S_5 gives (1,6,9,5,1); the published list
        // (1,5,9,6,1) is the same sequence read from the top rank down.
        let mut sizes = remark.rank_sizes();
        assert_eq!(sizes, vec![1, 6, 9, 5, 1]);
        sizes.reverse();
        assert_eq!(sizes, vec![1, 5, 9, 6, 1]);
        assert!(matches!(
            interval(&p("2143"), &p("1324")),
            Err(Error::NonemptyIntervalRequired { .. })
        ));
    }

    #[test]
    fn interval_matches_exhaustive_filter() {
        for n in 1..=5usize {
            let all = Permutation::all(n);
            let step = if n == 5 { 7 } else { 1 };
            for (a, v) in all.iter().enumerate().step_by(step) {
                for w in all.iter().skip(a % 3).step_by(step) {
                    if !leq_rank_matrix(v, w) {
                        continue;
                    }
                    let iv = interval(v, w).unwrap();
                    let filtered: Vec<&Permutation> = all
                        .iter()
                        .filter(|u| leq_rank_matrix(v, u) && leq_rank_matrix(u, w))
                        .collect();
                    assert_eq!(iv.len(), filtered.len(), "[{v},{w}]");
                    for u in filtered {
                        assert!(iv.contains(u));
                    }
                }
            }
        }
    }

    #[test]
    fn covers_are_hasse_edges_in_s4() {
        let iv = interval(&Permutation::identity(4), &Permutation::longest(4)).unwrap();
        for c in iv.covers() {
            assert_eq!(c.upper.length(), c.lower.length() + 1);
            assert_eq!(c.lower.swap_positions(c.i - 1, c.j - 1), c.upper);
        }
        // Hasse edges of S_4 by brute force: comparable pairs with length gap one.
        let all = Permutation::all(4);
        let mut brute = 0;
        for u in &all {
            for w in &all {
                if w.length() == u.length() + 1 && leq_rank_matrix(u, w) {
                    brute += 1;
                }
            }
        }
        assert_eq!(iv.covers().len(), brute);
    }

    #[test]
    fn r_polynomial_examples() {
        let v = p("1324");
        assert_eq!(r_polynomial(&v, &v).unwrap(), RPolynomial::one());
        assert_eq!(
            r_polynomial(&p("12"), &p("21")).unwrap().coeffs,
            vec![-1, 1]
        );
        let r = r_polynomial(&v, &p("4231")).unwrap();
        assert_eq!(r.coeff(3), -4);
        assert_eq!(r.eval(1), 0);
        assert_eq!(r, RPolynomial::torus(4));
        // S_3 crown: R_{e,w0} = (q-1)^3 + q(q-1) counted by the recursion
        let crown = r_polynomial(&Permutation::identity(3), &Permutation::longest(3)).unwrap();
        assert_eq!(crown.coeffs, vec![-1, 2, -2, 1]);
        assert_eq!(crown.to_string(), "q^3 - 2q^2 + 2q - 1");
    }

    #[test]
    fn r_polynomial_degree_monic_and_value_at_one() {
        let all = Permutation::all(4);
        let mut cache = RPolynomialCache::new();
        for v in &all {
            for w in &all {
                if !bruhat_leq(v, w).unwrap() {
                    continue;
                }
                let r = cache.get(v, w).unwrap();
                let d = w.length() - v.length();
                assert_eq!(r.degree(), Some(d));
                assert!(r.is_monic());
                if d > 0 {
                    assert_eq!(r.eval(1), 0);
                    assert!((-(d as i64)..=0).contains(&r.coeff(d - 1)));
                }
            }
        }
    }

    #[test]
    fn interval_poset_counts() {
        let v = p("1324");
        let single = interval(&v, &v).unwrap();
        assert_eq!(interval_poset(&single).len(), 2);
        // Oracle: brute-force count of comparable pairs in S_3.
        let all = Permutation::all(3);
        let brute = all
            .iter()
            .flat_map(|a| all.iter().map(move |b| (a, b)))
            .filter(|(a, b)| leq_rank_matrix(a, b))
            .count();
        let s3 = interval(&Permutation::identity(3), &Permutation::longest(3)).unwrap();
        let ip = interval_poset(&s3);
        assert_eq!(brute, 19);
        assert_eq!(ip.len(), brute + 1);
        // Maximum is the whole interval.
        let top = ip.poset.top().unwrap();
        assert_eq!(ip.members[top], Some((0, s3.len() - 1)));
    }

    #[test]
    fn json_round_trip() {
        let iv = interval(&p("1324"), &p("4231")).unwrap();
        let text = serde_json::to_string(&iv).unwrap();
        let back: BruhatInterval = serde_json::from_str(&text).unwrap();
        assert_eq!(back, iv);
        assert!(text.starts_with("{\"v\":[1,3,2,4],\"w\":[4,2,3,1],\"ranks\":"));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("1,3,2,4"), p("1324"));
        assert_eq!(Permutation::parse("1 3 2 4").unwrap(), p("1324"));
        assert!(Permutation::parse("1,1,2").is_err());
        assert!(Permutation::parse("abc").is_err());
    }
}
