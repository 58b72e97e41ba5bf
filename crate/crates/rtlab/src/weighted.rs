//! Weighted graphs with edge weights in {0, 1/2, 1}.
//!
//! Weights are stored in halves (0, 1, 2) so that every edge sum is exact
//! in integers and every triangle product is exact in eighths. A weighted
//! (|X|,|Y|)-clique is a nested pair X ⊆ Y with all X-pairs at weight 1
//! and all Y-pairs at weight ≥ 1/2; its size is |X|+|Y|. Note that a
//! singleton X vacuously satisfies the pair condition, so a half-weight
//! triangle already carries a weighted clique of size 4.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::formulas::Rational;
use crate::graph::Mask64Graph;
use num_rational::Ratio;

/// Cap for the weighted-clique search (mask-based).
pub const WEIGHTED_CAP: usize = 64;

/// Edge weight in halves: 0, 1 (= 1/2), or 2 (= 1).
pub type Halves = u8;

#[derive(Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    w: Vec<Halves>, // n*n matrix, symmetric, zero diagonal
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph { n, w: vec![0; n * n] }
    }

    /// Complete graph with every edge at the given weight.
    pub fn constant(n: usize, halves: Halves) -> Self {
        assert!(halves <= 2);
        let mut g = Self::new(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    g.w[u * n + v] = halves;
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Halves {
        self.w[u * self.n + v]
    }

    #[inline]
    pub fn set(&mut self, u: usize, v: usize, halves: Halves) {
        assert!(u != v && halves <= 2);
        self.w[u * self.n + v] = halves;
        self.w[v * self.n + u] = halves;
    }

    /// e(G) = sum of edge weights, exact.
    pub fn edge_weight_sum(&self) -> Rational {
        Ratio::new(self.edge_weight_halves(), 2)
    }

    pub fn edge_weight_halves(&self) -> i64 {
        let mut s = 0i64;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                s += self.get(u, v) as i64;
            }
        }
        s
    }

    /// T(G) in eighths: sum over triples of the product of the three
    /// half-weights.
    pub fn triangle_sum_eighths(&self) -> i64 {
        let mut s = 0i64;
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                let wab = self.get(a, b);
                if wab == 0 {
                    continue;
                }
                for c in (b + 1)..self.n {
                    s += (wab * self.get(a, c) * self.get(b, c)) as i64;
                }
            }
        }
        s
    }

    pub fn triangle_sum(&self) -> Rational {
        Ratio::new(self.triangle_sum_eighths(), 8)
    }

    /// T_v(G) in eighths: weighted triangles through v.
    pub fn t_vertex_eighths(&self, v: usize) -> i64 {
        let mut s = 0i64;
        for a in 0..self.n {
            if a == v {
                continue;
            }
            let wva = self.get(v, a);
            if wva == 0 {
                continue;
            }
            for b in (a + 1)..self.n {
                if b == v {
                    continue;
                }
                s += (wva * self.get(v, b) * self.get(a, b)) as i64;
            }
        }
        s
    }

    /// T_uv(G) in eighths: weighted triangles through the pair u,v.
    pub fn t_pair_eighths(&self, u: usize, v: usize) -> i64 {
        let wuv = self.get(u, v) as i64;
        if wuv == 0 {
            return 0;
        }
        let mut s = 0i64;
        for k in 0..self.n {
            if k != u && k != v {
                s += wuv * (self.get(u, k) * self.get(v, k)) as i64;
            }
        }
        s
    }

    /// Pointwise minimum of two weighted graphs on the same vertex set.
    pub fn intersect(&self, other: &WeightedGraph) -> Result<WeightedGraph> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut g = WeightedGraph::new(self.n);
        for i in 0..self.w.len() {
            g.w[i] = self.w[i].min(other.w[i]);
        }
        Ok(g)
    }

    /// Adjacency masks of G_{1/2} (weight >= 1/2) and G_1 (weight = 1).
    fn level_masks(&self) -> Result<(Vec<u64>, Vec<u64>)> {
        if self.n > WEIGHTED_CAP {
            return Err(Error::SizeCapExceeded {
                n: self.n,
                cap: WEIGHTED_CAP,
            });
        }
        let mut half = vec![0u64; self.n];
        let mut one = vec![0u64; self.n];
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v {
                    let w = self.get(u, v);
                    if w >= 1 {
                        half[u] |= 1 << v;
                    }
                    if w == 2 {
                        one[u] |= 1 << v;
                    }
                }
            }
        }
        Ok((half, one))
    }

    /// Size of the largest weighted complete subgraph, with a witness.
    pub fn weighted_clique_number_with_witness(&self) -> Result<(usize, Option<WeightedClique>)> {
        if self.n == 0 {
            return Ok((0, None));
        }
        let (half, one) = self.level_masks()?;
        let one_graph = Mask64Graph {
            n: self.n,
            adj: one,
        };
        let mut best = (0usize, 0u64, 0u64);
        // The objective |Y| + omega(G_1[Y]) is monotone in Y, so it is
        // attained on a maximal clique of G_{1/2}.
        let full: u64 = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        bron_kerbosch(&half, 0, full, 0, &mut |y_mask: u64| {
            let ysize = y_mask.count_ones() as usize;
            if ysize + ysize <= best.0 {
                return;
            }
            let (omega, x_mask) = one_graph.max_clique_in(y_mask);
            let (omega, x_mask) = if omega == 0 {
                // singleton X is always available in a nonempty Y
                (1, 1u64 << y_mask.trailing_zeros())
            } else {
                (omega, x_mask)
            };
            if ysize + omega > best.0 {
                best = (ysize + omega, x_mask, y_mask);
            }
        });
        let (size, x_mask, y_mask) = best;
        let witness = (size > 0).then(|| WeightedClique {
            x_set: VertexSet::from_mask(self.n, x_mask),
            y_set: VertexSet::from_mask(self.n, y_mask),
        });
        Ok((size, witness))
    }

    pub fn weighted_clique_number(&self) -> Result<usize> {
        Ok(self.weighted_clique_number_with_witness()?.0)
    }

    /// A weighted clique of size exactly `l`, if one exists. Trims a
    /// maximum witness, so presence is equivalent to l <= wcn.
    pub fn find_weighted_clique(&self, l: usize) -> Result<Option<WeightedClique>> {
        assert!(l >= 1);
        let (size, witness) = self.weighted_clique_number_with_witness()?;
        if size < l {
            return Ok(None);
        }
        let mut wc = witness.unwrap();
        let mut excess = size - l;
        // drop Y-only vertices first, then shrink X (keeping X ⊆ Y).
        while excess > 0 {
            let y_only = wc.y_set.difference(&wc.x_set);
            if let Some(v) = y_only.first() {
                wc.y_set.remove(v);
            } else {
                let v = wc.x_set.first().expect("nonempty X");
                wc.x_set.remove(v);
                wc.y_set.remove(v);
                // removing from both drops size by 2
                if excess == 1 {
                    // re-add to Y only
                    wc.y_set.insert(v);
                }
                excess = excess.saturating_sub(2);
                continue;
            }
            excess -= 1;
        }
        debug_assert_eq!(wc.size(), l);
        debug_assert!(self.is_weighted_clique(&wc));
        Ok(Some(wc))
    }

    /// Check the defining conditions of a weighted clique.
    pub fn is_weighted_clique(&self, wc: &WeightedClique) -> bool {
        if !wc.x_set.is_subset_of(&wc.y_set) {
            return false;
        }
        let xs = wc.x_set.to_vec();
        for (i, &u) in xs.iter().enumerate() {
            for &v in &xs[i + 1..] {
                if self.get(u, v) != 2 {
                    return false;
                }
            }
        }
        let ys = wc.y_set.to_vec();
        for (i, &u) in ys.iter().enumerate() {
            for &v in &ys[i + 1..] {
                if self.get(u, v) < 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Serialize: "n" then one "u v w" line per nonzero pair, w in
    /// {0.5, 1}; omitted pairs are weight 0.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                match self.get(u, v) {
                    1 => s.push_str(&format!("{u} {v} 0.5\n")),
                    2 => s.push_str(&format!("{u} {v} 1\n")),
                    _ => {}
                }
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<WeightedGraph> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty weighted-graph file".into()))?
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?;
        let mut g = WeightedGraph::new(n);
        for line in lines {
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad line: {line}")))?;
            let v: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad line: {line}")))?;
            let w = it
                .next()
                .ok_or_else(|| Error::Parse(format!("missing weight: {line}")))?;
            let halves = match w {
                "0" => 0,
                "0.5" => 1,
                "1" => 2,
                other => return Err(Error::Parse(format!("bad weight {other}"))),
            };
            if u >= n || v >= n || u == v {
                return Err(Error::Parse(format!("bad pair {u} {v}")));
            }
            g.set(u, v, halves);
        }
        Ok(g)
    }
}

impl std::fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WeightedGraph(n={}, e={})", self.n, self.edge_weight_sum())
    }
}

/// Witness pair (X, Y) with X ⊆ Y; size = |X| + |Y|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedClique {
    pub x_set: VertexSet,
    pub y_set: VertexSet,
}

impl WeightedClique {
    pub fn size(&self) -> usize {
        self.x_set.len() + self.y_set.len()
    }
}

/// Bron–Kerbosch with pivoting over u64 masks; calls `f` on every maximal
/// clique.
fn bron_kerbosch(adj: &[u64], r: u64, p: u64, x: u64, f: &mut impl FnMut(u64)) {
    if p == 0 && x == 0 {
        if r != 0 {
            f(r);
        }
        return;
    }
    // pivot: vertex of P ∪ X with most neighbors in P
    let mut pivot = None;
    let mut best = usize::MAX;
    let mut px = p | x;
    while px != 0 {
        let v = px.trailing_zeros() as usize;
        px &= px - 1;
        let missing = (p & !adj[v]).count_ones() as usize;
        if missing < best {
            best = missing;
            pivot = Some(v);
        }
    }
    let mut cands = match pivot {
        Some(v) => p & !adj[v],
        None => p,
    };
    let mut p = p;
    let mut x = x;
    while cands != 0 {
        let v = cands.trailing_zeros() as usize;
        let bit = 1u64 << v;
        cands &= !bit;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], f);
        p &= !bit;
        x |= bit;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_weighted(n: usize, rng: &mut impl Rng) -> WeightedGraph {
        let mut g = WeightedGraph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.set(u, v, rng.gen_range(0..=2));
            }
        }
        g
    }

    /// Definition-level brute force over all (X, Y) pairs.
    fn brute_wcn(g: &WeightedGraph) -> usize {
        let n = g.n();
        let mut best = 0;
        for y in 0u64..(1 << n) {
            let ys: Vec<usize> = (0..n).filter(|&v| y >> v & 1 == 1).collect();
            let ok_y = ys
                .iter()
                .enumerate()
                .all(|(i, &u)| ys[i + 1..].iter().all(|&v| g.get(u, v) >= 1));
            if !ok_y {
                continue;
            }
            for x in 0u64..(1 << n) {
                if x & !y != 0 {
                    continue;
                }
                let xs: Vec<usize> = (0..n).filter(|&v| x >> v & 1 == 1).collect();
                let ok_x = xs
                    .iter()
                    .enumerate()
                    .all(|(i, &u)| xs[i + 1..].iter().all(|&v| g.get(u, v) == 2));
                if ok_x {
                    best = best.max(xs.len() + ys.len());
                }
            }
        }
        best
    }

    #[test]
    fn edge_sums() {
        assert_eq!(
            WeightedGraph::constant(4, 1).edge_weight_sum(),
            Ratio::new(3, 1)
        );
        assert_eq!(WeightedGraph::new(5).edge_weight_sum(), Ratio::new(0, 1));
        assert_eq!(
            WeightedGraph::constant(5, 2).edge_weight_sum(),
            Ratio::new(10, 1)
        );
    }

    #[test]
    fn triangle_sums() {
        let t = WeightedGraph::constant(3, 1);
        assert_eq!(t.triangle_sum(), Ratio::new(1, 8));
        let k5 = WeightedGraph::constant(5, 2);
        assert_eq!(k5.triangle_sum(), Ratio::new(10, 1)); // C(5,3)
        // complete 3-partite blow-up: parts 2,3,4, cross weight 1, inner 0
        let sizes = [2usize, 3, 4];
        let n: usize = sizes.iter().sum();
        let part = |v: usize| {
            if v < 2 {
                0
            } else if v < 5 {
                1
            } else {
                2
            }
        };
        let mut g = WeightedGraph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if part(u) != part(v) {
                    g.set(u, v, 2);
                }
            }
        }
        assert_eq!(g.triangle_sum(), Ratio::new(2 * 3 * 4, 1));
    }

    #[test]
    fn t_vertex_and_pair_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let n = rng.gen_range(3..=8);
            let g = random_weighted(n, &mut rng);
            let total = g.triangle_sum_eighths();
            let by_vertex: i64 = (0..n).map(|v| g.t_vertex_eighths(v)).sum();
            assert_eq!(by_vertex, 3 * total);
            let by_pair: i64 = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .map(|(u, v)| g.t_pair_eighths(u, v))
                .sum();
            assert_eq!(by_pair, 3 * total);
        }
    }

    #[test]
    fn clique_number_extremes() {
        // all-1 K_m: X = Y = V, size 2m
        for m in 1..=6 {
            let g = WeightedGraph::constant(m, 2);
            assert_eq!(g.weighted_clique_number().unwrap(), 2 * m);
        }
        // all-1/2 K_m: Y = V plus a singleton X, size m+1
        for m in 1..=6 {
            let g = WeightedGraph::constant(m, 1);
            assert_eq!(g.weighted_clique_number().unwrap(), m + 1);
        }
        // all-0: X = Y = {v}, size 2
        let g = WeightedGraph::new(3);
        assert_eq!(g.weighted_clique_number().unwrap(), 2);
        assert_eq!(WeightedGraph::new(0).weighted_clique_number().unwrap(), 0);
    }

    #[test]
    fn clique_number_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=7);
            let g = random_weighted(n, &mut rng);
            assert_eq!(g.weighted_clique_number().unwrap(), brute_wcn(&g));
        }
    }

    #[test]
    fn find_clique_five_vertex_example() {
        // weights 1 within {0,1}, 1/2 elsewhere: X={0,1}, Y=all five, size 7.
        let mut g = WeightedGraph::constant(5, 1);
        g.set(0, 1, 2);
        let wc = g.find_weighted_clique(7).unwrap().unwrap();
        assert_eq!(wc.size(), 7);
        assert_eq!(wc.x_set.to_vec(), vec![0, 1]);
        assert_eq!(wc.y_set.len(), 5);
        assert!(g.find_weighted_clique(8).unwrap().is_none());
    }

    #[test]
    fn find_clique_all_levels() {
        let g = WeightedGraph::constant(4, 2);
        for l in 1..=8 {
            let wc = g.find_weighted_clique(l).unwrap().unwrap();
            assert_eq!(wc.size(), l);
            assert!(g.is_weighted_clique(&wc));
        }
        assert!(g.find_weighted_clique(9).unwrap().is_none());
    }

    #[test]
    fn intersect_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_weighted(6, &mut rng);
        let zero = WeightedGraph::new(6);
        assert_eq!(g.intersect(&g).unwrap(), g);
        assert_eq!(g.intersect(&zero).unwrap(), zero);
        let ones = WeightedGraph::constant(6, 2);
        let halves = WeightedGraph::constant(6, 1);
        assert_eq!(ones.intersect(&halves).unwrap(), halves);
        assert!(g.intersect(&WeightedGraph::new(5)).is_err());
    }

    #[test]
    fn intersect_triangle_monotonicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let n = rng.gen_range(3..=7);
            let g = random_weighted(n, &mut rng);
            let h = random_weighted(n, &mut rng);
            let i = g.intersect(&h).unwrap();
            assert!(i.triangle_sum() <= g.triangle_sum().min(h.triangle_sum()));
        }
    }

    #[test]
    fn raising_weight_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.gen_range(2..=7);
            let g = random_weighted(n, &mut rng);
            let u = rng.gen_range(0..n);
            let v = (u + rng.gen_range(1..n)) % n;
            let old = g.get(u, v);
            if old == 2 {
                continue;
            }
            let mut h = g.clone();
            h.set(u, v, old + 1);
            assert!(h.triangle_sum() >= g.triangle_sum());
            assert!(h.edge_weight_sum() >= g.edge_weight_sum());
            assert!(
                h.weighted_clique_number().unwrap() >= g.weighted_clique_number().unwrap()
            );
        }
    }

    #[test]
    fn text_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let n = rng.gen_range(1..=8);
            let g = random_weighted(n, &mut rng);
            let back = WeightedGraph::from_text(&g.to_text()).unwrap();
            assert_eq!(g, back);
        }
    }
}
