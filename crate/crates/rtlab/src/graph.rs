//! Dense undirected graphs with exact clique counting and independence
//! number computation.
//!
//! Adjacency is stored as one bit-row per vertex, which makes clique
//! extension an intersection of rows. Every graph this project cares about
//! has quadratically many edges, so there is no sparse representation.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use rayon::prelude::*;

/// Hard cap on vertex count for the dense representation.
pub const MAX_VERTICES: usize = 4096;

/// Default cap for exact independence-number computation.
pub const EXACT_ALPHA_CAP: usize = 60;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph too large ({n} > {MAX_VERTICES})");
        Graph {
            n,
            rows: vec![VertexSet::new(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            let mut row = VertexSet::full(n);
            row.remove(v);
            g.rows[v] = row;
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for v in 0..n {
                g.add_edge(v, (v + 1) % n);
            }
        } else if n == 2 {
            g.add_edge(0, 1);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Assemble from precomputed adjacency rows; rows must be symmetric.
    pub fn from_rows(n: usize, rows: Vec<VertexSet>) -> Self {
        assert_eq!(rows.len(), n);
        let g = Graph { n, rows };
        debug_assert!((0..n).all(|u| !g.rows[u].contains(u)
            && g.rows[u].iter().all(|v| g.rows[v].contains(u))));
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "no self-loops");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// Edges as (u, v) with u < v, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.rows[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for v in 0..self.n {
            let mut row = VertexSet::full(self.n);
            row.remove(v);
            row.subtract(&self.rows[v]);
            g.rows[v] = row;
        }
        g
    }

    /// Induced subgraph on `within`; returns the subgraph and the map from
    /// new indices back to original vertices.
    pub fn induced(&self, within: &VertexSet) -> (Graph, Vec<usize>) {
        let verts = within.to_vec();
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        (g, verts)
    }

    /// Exact number of s-vertex complete subgraphs, by ordered bit-row
    /// intersection. `s > n` returns 0.
    pub fn count_cliques(&self, s: usize) -> u128 {
        assert!(s >= 1, "clique size must be at least 1");
        if s > self.n {
            return 0;
        }
        if s == 1 {
            return self.n as u128;
        }
        if s == 2 {
            return self.edge_count() as u128;
        }
        (0..self.n)
            .into_par_iter()
            .map(|v| {
                let mut cands = self.rows[v].clone();
                restrict_above(&mut cands, v);
                self.count_extensions(&cands, s - 1)
            })
            .sum()
    }

    fn count_extensions(&self, cands: &VertexSet, remaining: usize) -> u128 {
        if remaining == 1 {
            return cands.len() as u128;
        }
        if cands.len() < remaining {
            return 0;
        }
        let mut total = 0u128;
        for v in cands.iter() {
            let mut next = cands.intersection(&self.rows[v]);
            restrict_above(&mut next, v);
            total += self.count_extensions(&next, remaining - 1);
        }
        total
    }

    /// First k-clique found, or None. Short-circuits on the witness.
    pub fn find_clique(&self, k: usize) -> Option<VertexSet> {
        assert!(k >= 1);
        if k > self.n {
            return None;
        }
        if k == 1 {
            return Some(VertexSet::from_iter(self.n, [0]));
        }
        let mut current = Vec::with_capacity(k);
        let cands = VertexSet::full(self.n);
        self.extend_clique(&cands, k, &mut current)
    }

    fn extend_clique(
        &self,
        cands: &VertexSet,
        k: usize,
        current: &mut Vec<usize>,
    ) -> Option<VertexSet> {
        if current.len() == k {
            return Some(VertexSet::from_iter(self.n, current.iter().copied()));
        }
        if cands.len() + current.len() < k {
            return None;
        }
        // greedy coloring of the candidates: a clique takes at most one
        // vertex per color class, so color counts bound the extension
        let mut color_classes: Vec<VertexSet> = Vec::new();
        let mut order: Vec<(usize, usize)> = Vec::with_capacity(cands.len());
        for v in cands.iter() {
            let c = color_classes
                .iter()
                .position(|cls| cls.is_disjoint_from(&self.rows[v]))
                .unwrap_or_else(|| {
                    color_classes.push(VertexSet::new(self.n));
                    color_classes.len() - 1
                });
            color_classes[c].insert(v);
            order.push((v, c + 1));
        }
        if current.len() + color_classes.len() < k {
            return None;
        }
        order.sort_by_key(|&(_, c)| c);
        let mut remaining = cands.clone();
        for &(v, color) in order.iter().rev() {
            // descending colors: everything left bounds at `color`
            if current.len() + color < k {
                return None;
            }
            let next = remaining.intersection(&self.rows[v]);
            current.push(v);
            if let Some(w) = self.extend_clique(&next, k, current) {
                return Some(w);
            }
            current.pop();
            remaining.remove(v);
        }
        None
    }

    /// True iff the graph has no K_k; on false, a witness clique.
    pub fn is_clique_free(&self, k: usize) -> (bool, Option<VertexSet>) {
        assert!(k >= 2);
        match self.find_clique(k) {
            Some(w) => (false, Some(w)),
            None => (true, None),
        }
    }

    /// Largest clique size (exact), for graphs up to the alpha cap.
    pub fn clique_number(&self) -> Result<usize> {
        if self.n > EXACT_ALPHA_CAP {
            return Err(Error::ExactCapExceeded {
                n: self.n,
                cap: EXACT_ALPHA_CAP,
            });
        }
        let m = Mask64Graph::from_graph(self);
        Ok(m.max_clique().0)
    }

    pub fn independence_number(&self, mode: IndependenceMode) -> Result<AlphaResult> {
        match mode {
            IndependenceMode::Exact => {
                if self.n > EXACT_ALPHA_CAP {
                    return Err(Error::ExactCapExceeded {
                        n: self.n,
                        cap: EXACT_ALPHA_CAP,
                    });
                }
                let comp = Mask64Graph::from_graph(&self.complement());
                let (size, mask) = comp.max_clique();
                Ok(AlphaResult {
                    lower: size,
                    upper: size,
                    witness: Some(VertexSet::from_mask(self.n, mask)),
                })
            }
            IndependenceMode::GreedyLower => {
                let w = self.greedy_independent_set();
                Ok(AlphaResult {
                    lower: w.len(),
                    upper: self.n,
                    witness: Some(w),
                })
            }
            IndependenceMode::CliqueCoverUpper => {
                let upper = self.clique_cover_bound();
                Ok(AlphaResult {
                    lower: 0,
                    upper,
                    witness: None,
                })
            }
        }
    }

    /// Greedy independent set: repeatedly take the minimum-degree vertex of
    /// the remaining graph. Deterministic lower-bound witness.
    pub fn greedy_independent_set(&self) -> VertexSet {
        let mut alive = VertexSet::full(self.n);
        let mut chosen = VertexSet::new(self.n);
        while let Some(_) = alive.first() {
            let v = alive
                .iter()
                .min_by_key(|&v| (self.rows[v].intersection_len(&alive), v))
                .unwrap();
            chosen.insert(v);
            alive.remove(v);
            alive.subtract(&self.rows[v]);
        }
        chosen
    }

    /// Certified upper bound on alpha: a greedy partition of V into cliques
    /// (any independent set meets each clique at most once).
    pub fn clique_cover_bound(&self) -> usize {
        let mut alive = VertexSet::full(self.n);
        let mut cliques = 0;
        while let Some(v) = alive.first() {
            // grow a clique greedily from v
            let mut clique = VertexSet::from_iter(self.n, [v]);
            let mut cands = self.rows[v].intersection(&alive);
            while let Some(u) = cands.first() {
                clique.insert(u);
                cands.intersect_with(&self.rows[u]);
            }
            alive.subtract(&clique);
            cliques += 1;
        }
        cliques
    }

    /// One maximum independent set of the subgraph induced on `within`,
    /// deterministic: the lexicographically smallest bitmask (bit v worth
    /// 2^v) among all maxima.
    pub fn max_independent_set(&self, within: &VertexSet) -> Result<VertexSet> {
        let (sub, map) = self.induced(within);
        if sub.n() > EXACT_ALPHA_CAP {
            return Err(Error::ExactCapExceeded {
                n: sub.n(),
                cap: EXACT_ALPHA_CAP,
            });
        }
        let comp = Mask64Graph::from_graph(&sub.complement());
        let target = comp.max_clique().0;
        // Decide vertices from the highest index down: excluding a high
        // vertex whenever a maximum set still exists minimizes the mask.
        let full: u64 = if sub.n() == 64 {
            u64::MAX
        } else {
            (1u64 << sub.n()) - 1
        };
        let mut allowed = full;
        for v in (0..sub.n()).rev() {
            let try_without = allowed & !(1u64 << v);
            if comp.max_clique_within(try_without) == target {
                allowed = try_without;
            } else {
                // v is forced into the set: drop its complement-non-neighbors
                // (i.e. its graph-neighbors) from the allowed pool.
                allowed &= comp.adj[v] | (1u64 << v);
            }
        }
        debug_assert_eq!(allowed.count_ones() as usize, target);
        let mut out = VertexSet::new(self.n);
        for i in 0..sub.n() {
            if allowed >> i & 1 == 1 {
                out.insert(map[i]);
            }
        }
        Ok(out)
    }

    /// Exact alpha restricted to `within` (exact cap applies).
    pub fn alpha_within(&self, within: &VertexSet) -> Result<usize> {
        let (sub, _) = self.induced(within);
        Ok(sub.independence_number(IndependenceMode::Exact)?.lower)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

#[inline]
fn restrict_above(set: &mut VertexSet, v: usize) {
    set.remove_through(v);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndependenceMode {
    Exact,
    GreedyLower,
    CliqueCoverUpper,
}

#[derive(Clone, Debug)]
pub struct AlphaResult {
    pub lower: usize,
    pub upper: usize,
    pub witness: Option<VertexSet>,
}

impl AlphaResult {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

// ============================================================================
// Branch-and-bound max clique on <= 64 vertices
// ============================================================================

/// Compact adjacency for the exact solver.
pub(crate) struct Mask64Graph {
    pub n: usize,
    pub adj: Vec<u64>,
}

impl Mask64Graph {
    pub fn from_graph(g: &Graph) -> Self {
        assert!(g.n() <= 64);
        Mask64Graph {
            n: g.n(),
            adj: (0..g.n()).map(|v| g.neighbors(v).low_mask()).collect(),
        }
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// (size, witness mask) of a maximum clique.
    pub fn max_clique(&self) -> (usize, u64) {
        self.max_clique_in(self.full())
    }

    pub fn max_clique_within(&self, allowed: u64) -> usize {
        self.max_clique_in(allowed).0
    }

    pub fn max_clique_in(&self, allowed: u64) -> (usize, u64) {
        let mut best = (0usize, 0u64);
        self.expand(allowed, 0, 0, &mut best);
        best
    }

    /// Greedy coloring bound: colors candidates, returns the color count.
    fn coloring_bound(&self, mut cands: u64) -> usize {
        let mut colors = 0;
        while cands != 0 {
            colors += 1;
            let mut avail = cands;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= !(1u64 << v);
                avail &= !self.adj[v];
                cands &= !(1u64 << v);
            }
        }
        colors
    }

    fn expand(&self, cands: u64, current: u64, size: usize, best: &mut (usize, u64)) {
        if cands == 0 {
            if size > best.0 {
                *best = (size, current);
            }
            return;
        }
        if size + self.coloring_bound(cands) <= best.0 {
            return;
        }
        let mut rest = cands;
        while rest != 0 {
            if size + rest.count_ones() as usize <= best.0 {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            let bit = 1u64 << v;
            rest &= !bit;
            self.expand(rest & self.adj[v], current | bit, size + 1, best);
        }
    }
}
