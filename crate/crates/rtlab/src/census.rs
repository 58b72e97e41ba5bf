//! Brute-force oracles: exact counts of edge-colorings avoiding
//! monochromatic cliques, the constructive color-partition algorithm,
//! lower-bound coloring families with sampling validators, and
//! exhaustive weighted-graph bound checks.

use crate::bitset::VertexSet;
use crate::constructions::PartitionedGraph;
use crate::error::{Error, Result};
use crate::formulas::Rational;
use crate::graph::{Graph, IndependenceMode};
use crate::weighted::WeightedGraph;
use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Exhaustive enumeration budget: r^{e(G)} may not exceed 2^40.
pub const CENSUS_BUDGET_LOG2: f64 = 40.0;

/// An edge coloring, aligned with `Graph::edges()` order; colors 0..r.
#[derive(Debug, Clone)]
pub struct EdgeColoring {
    pub r: usize,
    pub assignment: Vec<u8>,
}

impl EdgeColoring {
    pub fn monochromatic(g: &Graph, r: usize, color: u8) -> Self {
        assert!((color as usize) < r);
        EdgeColoring {
            r,
            assignment: vec![color; g.edge_count()],
        }
    }

    /// The subgraph carrying one color.
    pub fn color_subgraph(&self, g: &Graph, color: u8) -> Graph {
        let edges: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .zip(&self.assignment)
            .filter(|&(_, &c)| c == color)
            .map(|(e, _)| e)
            .collect();
        Graph::from_edges(g.n(), &edges)
    }
}

// ===========================================================================
// Coloring census
// ===========================================================================

/// All k-cliques of g, each as a sorted list of edge-index positions
/// into `edge_index`.
fn clique_edge_lists(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let edges = g.edges();
    let idx: std::collections::HashMap<(usize, usize), usize> = edges
        .iter()
        .copied()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let mut cliques = Vec::new();
    let mut chosen = Vec::new();
    collect_cliques(g, 0, k, &mut chosen, &mut cliques);
    cliques
        .into_iter()
        .map(|c| {
            let mut es: Vec<usize> = c
                .iter()
                .enumerate()
                .flat_map(|(i, &u)| {
                    let idx = &idx;
                    c[i + 1..].iter().map(move |&v| idx[&(u, v)])
                })
                .collect();
            es.sort_unstable();
            es
        })
        .collect()
}

fn collect_cliques(
    g: &Graph,
    start: usize,
    left: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if left == 0 {
        out.push(chosen.clone());
        return;
    }
    for v in start..g.n() {
        if chosen.iter().all(|&u| g.has_edge(u, v)) {
            chosen.push(v);
            collect_cliques(g, v + 1, left - 1, chosen, out);
            chosen.pop();
        }
    }
}

/// Exact number of r-edge-colorings of g with no monochromatic K_k.
///
/// Edges that lie in many k-cliques are assigned first; a branch dies
/// as soon as the edge completing some clique leaves it monochromatic.
/// Edges in no clique contribute a free factor of r.
pub fn count_valid_colorings(g: &Graph, r: usize, k: usize) -> Result<BigUint> {
    assert!(r >= 2 && k >= 2);
    let e = g.edge_count();
    if (e as f64) * (r as f64).log2() > CENSUS_BUDGET_LOG2 {
        return Err(Error::BudgetExceeded(format!(
            "{r}^{e} colorings exceed the 2^40 budget"
        )));
    }
    let cliques = clique_edge_lists(g, k);
    if cliques.is_empty() {
        return Ok(BigUint::from(r).pow(e as u32));
    }

    // order: constrained edges by descending clique membership, then
    // the clique-free tail
    let mut load = vec![0usize; e];
    for c in &cliques {
        for &ei in c {
            load[ei] += 1;
        }
    }
    let mut order: Vec<usize> = (0..e).collect();
    order.sort_by_key(|&ei| (std::cmp::Reverse(load[ei]), ei));
    let constrained = load.iter().filter(|&&l| l > 0).count();
    let mut pos = vec![usize::MAX; e];
    for (p, &ei) in order.iter().enumerate() {
        pos[ei] = p;
    }
    // cliques re-indexed by position; a clique completes at its max pos
    let mut complete_at: Vec<Vec<Vec<usize>>> = vec![Vec::new(); constrained];
    for c in &cliques {
        let ps: Vec<usize> = c.iter().map(|&ei| pos[ei]).collect();
        let last = *ps.iter().max().unwrap();
        complete_at[last].push(ps);
    }
    let free_factor = BigUint::from(r).pow((e - constrained) as u32);

    // parallelize over assignments of a short prefix
    let prefix = prefix_len(constrained, r);
    let tasks: Vec<Vec<u8>> = prefix_assignments(prefix, r);
    let total: BigUint = tasks
        .par_iter()
        .map(|pre| {
            let mut colors = vec![0u8; constrained];
            colors[..prefix].copy_from_slice(pre);
            // reject prefixes already completing a clique
            for p in 0..prefix {
                if completes_mono(&complete_at[p], &colors, p) {
                    return BigUint::zero();
                }
            }
            let mut count = BigUint::zero();
            census_dfs(prefix, constrained, r, &complete_at, &mut colors, &mut count);
            count
        })
        .sum();
    Ok(total * free_factor)
}

fn prefix_len(constrained: usize, r: usize) -> usize {
    let mut p = 0;
    let mut tasks = 1usize;
    while p < constrained && tasks * r <= 512 {
        tasks *= r;
        p += 1;
    }
    p
}

fn prefix_assignments(prefix: usize, r: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..prefix {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..r as u8).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Does assigning position p complete a monochromatic clique?
fn completes_mono(cliques: &[Vec<usize>], colors: &[u8], p: usize) -> bool {
    cliques.iter().any(|c| {
        let col = colors[p];
        c.iter().all(|&q| colors[q] == col)
    })
}

fn census_dfs(
    depth: usize,
    constrained: usize,
    r: usize,
    complete_at: &[Vec<Vec<usize>>],
    colors: &mut [u8],
    count: &mut BigUint,
) {
    if depth == constrained {
        *count += BigUint::one();
        return;
    }
    for c in 0..r as u8 {
        colors[depth] = c;
        if !completes_mono(&complete_at[depth], colors, depth) {
            census_dfs(depth + 1, constrained, r, complete_at, colors, count);
        }
    }
}

/// Independent oracle: inclusion–exclusion over clique subsets. A
/// subset forces each overlap-component monochromatic, giving
/// r^{components + e - |covered edges|}. Exponential in the clique
/// count; for cross-checks only.
pub fn count_valid_colorings_ie(g: &Graph, r: usize, k: usize) -> BigUint {
    let e = g.edge_count() as u32;
    let cliques = clique_edge_lists(g, k);
    let nc = cliques.len();
    assert!(nc <= 24, "inclusion-exclusion oracle capped at 24 cliques");
    let mut total = BigUint::zero();
    let mut negative = BigUint::zero();
    for mask in 0u32..(1 << nc) {
        let chosen: Vec<&Vec<usize>> = (0..nc)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| &cliques[i])
            .collect();
        let mut covered: std::collections::BTreeSet<usize> = Default::default();
        for c in &chosen {
            covered.extend(c.iter().copied());
        }
        // overlap components among the chosen cliques
        let m = chosen.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for i in 0..m {
            for j in (i + 1)..m {
                if chosen[i].iter().any(|e| chosen[j].contains(e)) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let comps = (0..m).filter(|&i| find(&mut parent, i) == i).count() as u32;
        let term = BigUint::from(r).pow(comps + e - covered.len() as u32);
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            negative += term;
        }
    }
    total - negative
}

/// Maximize the census over all n-vertex graphs (canonical labellings
/// only), optionally restricted to independence number <= alpha_max.
pub fn max_census_over_graphs(
    n: usize,
    r: usize,
    k: usize,
    alpha_max: Option<usize>,
) -> Result<(Graph, BigUint)> {
    if n > 7 {
        return Err(Error::BudgetExceeded(format!(
            "graph scan capped at 7 vertices, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let np = pairs.len();
    let perms = permutations(n);
    let masks: Vec<u64> = (0u64..(1 << np))
        .filter(|&mask| is_canonical(mask, &pairs, &perms, n))
        .collect();
    let best = masks
        .par_iter()
        .filter_map(|&mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges);
            if let Some(am) = alpha_max {
                let alpha = g
                    .independence_number(IndependenceMode::Exact)
                    .ok()?
                    .exact()?;
                if alpha > am {
                    return None;
                }
            }
            let count = count_valid_colorings(&g, r, k).ok()?;
            Some((mask, count))
        })
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)));
    let (mask, count) = best.ok_or_else(|| {
        Error::BadFamily("no graph satisfies the alpha restriction".into())
    })?;
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Ok((Graph::from_edges(n, &edges), count))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..n).filter_map(move |v| {
                    if p.contains(&v) {
                        None
                    } else {
                        let mut q = p.clone();
                        q.push(v);
                        Some(q)
                    }
                })
            })
            .collect();
    }
    out
}

/// A mask is canonical when no vertex permutation yields a smaller one.
fn is_canonical(mask: u64, pairs: &[(usize, usize)], perms: &[Vec<usize>], _n: usize) -> bool {
    let idx: std::collections::HashMap<(usize, usize), usize> = pairs
        .iter()
        .copied()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    for perm in perms {
        let mut image = 0u64;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
                image |= 1 << idx[&(a, b)];
            }
        }
        if image < mask {
            return false;
        }
    }
    true
}

// ===========================================================================
// Color-partition algorithm
// ===========================================================================

/// Sufficient precondition constant: a_r(c) = c^{3 * 2^{r-2} - 1}.
pub fn partition_precondition(r: usize, c: f64) -> f64 {
    assert!(r >= 2);
    c.powi(3 * (1 << (r - 2)) - 1)
}

/// Partition V into C_1..C_r with alpha(G_{c_i}[C_i]) <= c n for each
/// color, by repeatedly stripping maximum independent sets of the
/// first color and recursing on the rest. Requires
/// alpha(G) <= a_r(c) n; uses at most 1/c stripping rounds per level.
pub fn partition_by_colors(
    g: &Graph,
    coloring: &EdgeColoring,
    c: f64,
) -> Result<Vec<VertexSet>> {
    partition_by_colors_audited(g, coloring, c).map(|(parts, _)| parts)
}

/// As `partition_by_colors`, also reporting the maximum number of
/// stripping rounds used at any recursion level.
pub fn partition_by_colors_audited(
    g: &Graph,
    coloring: &EdgeColoring,
    c: f64,
) -> Result<(Vec<VertexSet>, usize)> {
    let r = coloring.r;
    assert!(r >= 2 && c > 0.0 && c < 1.0);
    let n = g.n();
    let alpha = g
        .independence_number(IndependenceMode::Exact)?
        .exact()
        .expect("exact mode");
    let bound = partition_precondition(r, c) * n as f64;
    if alpha as f64 > bound {
        return Err(Error::PreconditionViolated(format!(
            "alpha(G) = {alpha} exceeds a_r(c) n = {bound:.3}"
        )));
    }
    let subgraphs: Vec<Graph> = (0..r as u8).map(|col| coloring.color_subgraph(g, col)).collect();
    let full = VertexSet::full(n);
    let mut parts = vec![VertexSet::new(n); r];
    let mut max_rounds = 0usize;
    partition_rec(&subgraphs, 0, &full, c, n, &mut parts, &mut max_rounds)?;
    Ok((parts, max_rounds))
}

fn partition_rec(
    subgraphs: &[Graph],
    first: usize,
    within: &VertexSet,
    c: f64,
    n_global: usize,
    parts: &mut [VertexSet],
    max_rounds_used: &mut usize,
) -> Result<()> {
    let r = subgraphs.len();
    let cn = c * n_global as f64;
    if first == r - 1 {
        parts[first].union_with(within);
        return Ok(());
    }
    let mut x = within.clone();
    let mut rounds = 0usize;
    // each stripped set has more than cn vertices, so this terminates
    // in fewer than 1/c rounds
    let max_rounds = (1.0 / c).ceil() as usize;
    while subgraphs[first].alpha_within(&x)? as f64 > cn {
        rounds += 1;
        if rounds > max_rounds {
            return Err(Error::PreconditionViolated(format!(
                "stripping exceeded 1/c = {max_rounds} rounds"
            )));
        }
        let i = subgraphs[first].max_independent_set(&x)?;
        partition_rec(subgraphs, first + 1, &i, c, n_global, parts, max_rounds_used)?;
        x.subtract(&i);
    }
    *max_rounds_used = (*max_rounds_used).max(rounds);
    parts[first].union_with(&x);
    Ok(())
}

// ===========================================================================
// Lower-bound coloring families
// ===========================================================================

pub const RED: u8 = 0;
pub const BLUE: u8 = 1;
pub const GREEN: u8 = 2;

/// A family of colorings: some edges fixed, the rest free over a color
/// menu; every member must avoid a monochromatic forbidden clique.
pub struct ColoringFamily {
    pub n: usize,
    pub r: usize,
    pub forbidden_k: usize,
    /// (u, v, color) with u < v.
    pub fixed: Vec<(usize, usize, u8)>,
    /// Free edges, each colored from `free_colors`.
    pub free: Vec<(usize, usize)>,
    pub free_colors: Vec<u8>,
}

impl ColoringFamily {
    /// log2 of the family size.
    pub fn log2_size(&self) -> f64 {
        self.free.len() as f64 * (self.free_colors.len() as f64).log2()
    }

    /// Color `samples` random completions; any monochromatic forbidden
    /// clique is a hard error carrying the witness.
    pub fn validate_samples(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for s in 0..samples {
            let mut per_color: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.r];
            for &(u, v, c) in &self.fixed {
                per_color[c as usize].push((u, v));
            }
            let mut chosen = Vec::with_capacity(self.free.len());
            for &(u, v) in &self.free {
                let c = self.free_colors[rng.gen_range(0..self.free_colors.len())];
                per_color[c as usize].push((u, v));
                chosen.push((u, v, c));
            }
            for (c, edges) in per_color.iter().enumerate() {
                let sub = Graph::from_edges(self.n, edges);
                if let Some(w) = sub.find_clique(self.forbidden_k) {
                    return Err(Error::BadFamily(format!(
                        "sample {s}: monochromatic K_{} in color {c} on {:?} (free edges: {:?})",
                        self.forbidden_k,
                        w.to_vec(),
                        chosen
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The two-coloring families on H(n, 4t+i): the first group of parts is
/// red inside, the second blue inside, and every cross edge is free.
/// Members avoid monochromatic K_{3t+i}.
pub fn generate_lower_bound_family(
    t: usize,
    i: usize,
    g: &PartitionedGraph,
) -> Result<ColoringFamily> {
    assert!(t >= 1);
    if !(1..=3).contains(&i) {
        return Err(Error::BadFamily(format!("i = {i} not in {{1,2,3}}")));
    }
    let parts_needed = if i == 1 { 2 * t } else { 2 * t + 1 };
    if g.parts.len() != parts_needed {
        return Err(Error::BadFamily(format!(
            "H(n,{}) needs {parts_needed} parts, got {}",
            4 * t + i,
            g.parts.len()
        )));
    }
    let red_parts = if i == 2 { t + 1 } else { t };
    split_family(g, red_parts, 2, vec![RED, BLUE], 3 * t + i)
}

/// The three-color family on H(n,5): both inner parts red, cross edges
/// free over green/blue; members avoid monochromatic K_3.
pub fn generate_rf33_family(g: &PartitionedGraph) -> Result<ColoringFamily> {
    if g.parts.len() != 2 {
        return Err(Error::BadFamily(format!(
            "H(n,5) has 2 parts, got {}",
            g.parts.len()
        )));
    }
    if g.parts[0].len() != g.parts[1].len() {
        return Err(Error::BadFamily("parts must have equal sizes".into()));
    }
    let mut fam = split_family(g, 2, 3, vec![GREEN, BLUE], 3)?;
    // both inner parts red
    for e in &mut fam.fixed {
        e.2 = RED;
    }
    Ok(fam)
}

fn split_family(
    g: &PartitionedGraph,
    red_parts: usize,
    r: usize,
    free_colors: Vec<u8>,
    forbidden_k: usize,
) -> Result<ColoringFamily> {
    let n = g.graph.n();
    let part_of = |v: usize| g.parts.iter().position(|p| p.contains(v)).unwrap();
    let mut fixed = Vec::new();
    let mut free = Vec::new();
    for (u, v) in g.graph.edges() {
        let (pu, pv) = (part_of(u), part_of(v));
        if pu == pv {
            let color = if pu < red_parts { RED } else { BLUE };
            fixed.push((u, v, color));
        } else {
            free.push((u, v));
        }
    }
    Ok(ColoringFamily {
        n,
        r,
        forbidden_k,
        fixed,
        free,
        free_colors,
    })
}

// ===========================================================================
// Exhaustive weighted bound oracle
// ===========================================================================

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundQuantity {
    Edges,
    Triangles,
}

/// Exhaustive maximum of e(G) or T(G) over every weighted graph on n
/// vertices whose weighted clique number stays below k, with a witness.
pub fn weighted_bound_oracle(
    n: usize,
    k: usize,
    quantity: BoundQuantity,
) -> Result<(Rational, WeightedGraph)> {
    if n > 6 {
        return Err(Error::BudgetExceeded(format!(
            "3^{} weight vectors exceed the oracle budget",
            n * (n - 1) / 2
        )));
    }
    // colex order completes one vertex at a time, enabling prefix
    // pruning: unassigned pairs weigh 0 and weights only ever grow, so
    // the partial weighted clique number is a lower bound on the final
    // one and a prefix already at >= k kills its whole subtree
    let pairs: Vec<(usize, usize)> = (1..n)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .collect();
    let np = pairs.len();
    // parallelize over the first few trits
    let prefix = np.min(6);
    let tail = np - prefix;
    let prefix_count = 3usize.pow(prefix as u32);
    let best = (0..prefix_count)
        .into_par_iter()
        .filter_map(|pc| {
            let mut g = WeightedGraph::new(n);
            let mut x = pc;
            for &(u, v) in pairs.iter().take(prefix) {
                g.set(u, v, (x % 3) as u8);
                x /= 3;
            }
            if g.weighted_clique_number().expect("within cap") >= k {
                return None;
            }
            let mut best: Option<(i64, WeightedGraph)> = None;
            enumerate_tail(&mut g, &pairs[prefix..], tail, k, quantity, &mut best);
            best
        })
        .max_by(|a, b| a.0.cmp(&b.0))
        .ok_or_else(|| Error::OutOfRange("empty search".into()))?;
    let value = match quantity {
        BoundQuantity::Edges => Ratio::new(best.0, 2),
        BoundQuantity::Triangles => Ratio::new(best.0, 8),
    };
    Ok((value, best.1))
}

fn enumerate_tail(
    g: &mut WeightedGraph,
    rest: &[(usize, usize)],
    left: usize,
    k: usize,
    quantity: BoundQuantity,
    best: &mut Option<(i64, WeightedGraph)>,
) {
    if left == 0 {
        if g.weighted_clique_number().expect("within cap") >= k {
            return;
        }
        let v = match quantity {
            BoundQuantity::Edges => g.edge_weight_halves(),
            BoundQuantity::Triangles => g.triangle_sum_eighths(),
        };
        if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
            *best = Some((v, g.clone()));
        }
        return;
    }
    let (u, v) = rest[rest.len() - left];
    // (v-1, v) closes vertex v in colex order: a good point to prune
    let closes_vertex = u + 1 == v;
    for w in 0..=2u8 {
        g.set(u, v, w);
        if closes_vertex && g.weighted_clique_number().expect("within cap") >= k {
            continue;
        }
        enumerate_tail(g, rest, left - 1, k, quantity, best);
    }
    g.set(u, v, 0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_h_n_k, optimize_plan, Objective};

    #[test]
    fn census_triangle() {
        let k3 = Graph::complete(3);
        assert_eq!(count_valid_colorings(&k3, 2, 3).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn census_k4_r2_k3() {
        let k4 = Graph::complete(4);
        assert_eq!(
            count_valid_colorings(&k4, 2, 3).unwrap(),
            BigUint::from(18u32)
        );
        assert_eq!(count_valid_colorings_ie(&k4, 2, 3), BigUint::from(18u32));
    }

    #[test]
    fn census_clique_free_graphs_are_free() {
        let c5 = Graph::cycle(5);
        assert_eq!(
            count_valid_colorings(&c5, 3, 3).unwrap(),
            BigUint::from(3u32).pow(5)
        );
    }

    #[test]
    fn census_matches_inclusion_exclusion() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut tried = 0;
        while tried < 40 {
            let n = rng.gen_range(4..=6);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.6) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges);
            let k = rng.gen_range(3..=4);
            if clique_edge_lists(&g, k).len() > 18 {
                continue;
            }
            let r = rng.gen_range(2..=3);
            assert_eq!(
                count_valid_colorings(&g, r, k).unwrap(),
                count_valid_colorings_ie(&g, r, k),
                "n={n}, r={r}, k={k}, edges={edges:?}"
            );
            tried += 1;
        }
    }

    #[test]
    fn census_full_iff_clique_free() {
        // over all graphs on 5 vertices: count == r^e iff K_k-free
        for mask in 0u64..(1 << 10) {
            let pairs: Vec<(usize, usize)> = (0..5)
                .flat_map(|u| ((u + 1)..5).map(move |v| (u, v)))
                .collect();
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(5, &edges);
            let count = count_valid_colorings(&g, 2, 3).unwrap();
            let full = BigUint::from(2u32).pow(g.edge_count() as u32);
            assert_eq!(count == full, g.is_clique_free(3).0);
        }
    }

    #[test]
    fn census_budget_enforced() {
        let g = Graph::complete(10); // 2^45 > 2^40
        assert!(matches!(
            count_valid_colorings(&g, 2, 3),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn max_census_small() {
        // n=4, r=2, k=3: C4 already gives 2^4
        let (_, count) = max_census_over_graphs(4, 2, 3, None).unwrap();
        assert!(count >= BigUint::from(16u32));

        // n=5: Turan bound 2^6
        let (g, count) = max_census_over_graphs(5, 2, 3, None).unwrap();
        assert!(count >= BigUint::from(64u32));
        // report whether the Turan graph is optimal at this small n
        let turan_count =
            count_valid_colorings(&crate::constructions::build_turan(5, 2), 2, 3).unwrap();
        println!(
            "n=5 max census {count} on {g:?}; Turan value {turan_count}; equality: {}",
            count == turan_count
        );

        // restriction monotonicity
        let (_, restricted) = max_census_over_graphs(5, 2, 3, Some(2)).unwrap();
        assert!(restricted <= count);
    }

    #[test]
    fn partition_monochromatic_coloring() {
        // alpha(K_20) = 1 <= c^2 n = 1.8, so the precondition holds
        let g = Graph::complete(20);
        let coloring = EdgeColoring::monochromatic(&g, 2, 0);
        let parts = partition_by_colors(&g, &coloring, 0.3).unwrap();
        assert_eq!(parts[0].len(), 20);
        assert!(parts[1].is_empty());
    }

    #[test]
    fn partition_precondition_enforced() {
        // empty graph: alpha = n, far above a_r(c) n
        let g = Graph::empty(10);
        let coloring = EdgeColoring::monochromatic(&g, 2, 0);
        assert!(matches!(
            partition_by_colors(&g, &coloring, 0.3),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn partition_random_colorings_of_complete_graph() {
        use rand::{Rng, SeedableRng};
        // r = 2 only: a_3(c) = c^5 would need n >= c^-5 vertices before
        // the precondition can hold on any graph
        let n = 40;
        let c = 0.2;
        let g = Graph::complete(n);
        let r = 2usize;
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let coloring = EdgeColoring {
                r,
                assignment: (0..g.edge_count())
                    .map(|_| rng.gen_range(0..r as u8))
                    .collect(),
            };
            let parts = partition_by_colors(&g, &coloring, c).unwrap();
            // disjoint cover
            let mut seen = VertexSet::new(n);
            for p in &parts {
                assert!(seen.is_disjoint_from(p));
                seen.union_with(p);
            }
            assert_eq!(seen.len(), n);
            // per-color alpha bound, recomputed independently
            for (col, part) in parts.iter().enumerate() {
                if part.is_empty() {
                    continue;
                }
                let sub = coloring.color_subgraph(&g, col as u8);
                let (ind, _) = sub.induced(part);
                let alpha = ind
                    .independence_number(IndependenceMode::Exact)
                    .unwrap()
                    .exact()
                    .unwrap();
                assert!(
                    (alpha as f64) <= c * n as f64,
                    "seed {seed}: color {col} alpha {alpha}"
                );
            }
        }
    }

    #[test]
    fn family_t1_i1_on_h_n_5() {
        let n = 20;
        let plan = optimize_plan(n, 5, Objective::Edges);
        let pg = build_h_n_k(n, 5, &plan, 3).unwrap();
        let fam = generate_lower_bound_family(1, 1, &pg).unwrap();
        assert_eq!(fam.forbidden_k, 4);
        assert_eq!(
            fam.free.len() + fam.fixed.len(),
            pg.graph.edge_count()
        );
        fam.validate_samples(1000, 7).unwrap();
    }

    #[test]
    fn family_t1_i2_on_h_n_6() {
        let n = 30;
        let plan = optimize_plan(n, 6, Objective::Triangles);
        let pg = build_h_n_k(n, 6, &plan, 3).unwrap();
        let fam = generate_lower_bound_family(1, 2, &pg).unwrap();
        assert_eq!(fam.forbidden_k, 5);
        fam.validate_samples(500, 7).unwrap();
    }

    #[test]
    fn family_t1_i3_on_h_n_7() {
        let n = 30;
        let plan = optimize_plan(n, 7, Objective::Triangles);
        let pg = build_h_n_k(n, 7, &plan, 3).unwrap();
        let fam = generate_lower_bound_family(1, 3, &pg).unwrap();
        assert_eq!(fam.forbidden_k, 6);
        fam.validate_samples(500, 7).unwrap();
    }

    #[test]
    fn family_part_count_mismatch() {
        let n = 30;
        let plan = optimize_plan(n, 7, Objective::Triangles);
        let pg = build_h_n_k(n, 7, &plan, 3).unwrap();
        assert!(matches!(
            generate_lower_bound_family(2, 1, &pg),
            Err(Error::BadFamily(_))
        ));
    }

    #[test]
    fn rf33_family() {
        let n = 20;
        let plan = optimize_plan(n, 5, Objective::Edges);
        let pg = build_h_n_k(n, 5, &plan, 5).unwrap();
        let fam = generate_rf33_family(&pg).unwrap();
        assert_eq!(fam.r, 3);
        assert_eq!(fam.free_colors, vec![GREEN, BLUE]);
        fam.validate_samples(1000, 11).unwrap();
    }

    #[test]
    fn weighted_oracle_small_cases() {
        // k=11 on 5 vertices: constraint vacuous, all-1 K5 wins
        let (v, g) = weighted_bound_oracle(5, 11, BoundQuantity::Edges).unwrap();
        assert_eq!(v, Ratio::new(10, 1));
        assert_eq!(g.weighted_clique_number().unwrap(), 10);

        // n=4, k=4 edges: a single 1-edge is already a (2,2)-clique of
        // size 4 and a half-triangle a (1,3)-clique of size 4, so the
        // optimum is a half-weighted C4
        let (v, g) = weighted_bound_oracle(4, 4, BoundQuantity::Edges).unwrap();
        assert!(g.weighted_clique_number().unwrap() < 4);
        assert_eq!(v, Ratio::new(2, 1));
    }

    #[test]
    fn weighted_oracle_matches_layered_max() {
        for (n, t) in [(4, 4), (4, 5), (5, 6), (5, 7)] {
            let (v, _) = weighted_bound_oracle(n, t, BoundQuantity::Triangles).unwrap();
            let (_, lv) = crate::symmetrize::maximize_weighted_triangles(n, t).unwrap();
            assert_eq!(v, lv, "n={n}, t={t}");
        }
    }

    #[test]
    fn weighted_oracle_budget() {
        assert!(matches!(
            weighted_bound_oracle(7, 5, BoundQuantity::Edges),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
