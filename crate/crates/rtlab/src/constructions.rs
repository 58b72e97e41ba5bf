//! Extremal families: Turán graphs, greedy maximal triangle-free graphs,
//! the layered construction H(n,k), and the shared-domain construction
//! H(n,s,t) driven by an auxiliary graph.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::formulas;
use crate::graph::Graph;
use crate::sphere::{build_be_graph, SphereConfig};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Sphere parameters used for embedded Bollobás–Erdős blocks.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BeParams {
    pub d: usize,
    pub epsilon: f64,
}

impl Default for BeParams {
    fn default() -> Self {
        BeParams { d: 9, epsilon: 0.3 }
    }
}

/// Default sphere slack for H(n,s,t); smaller than the H(n,k) default so
/// cross-blocks sit nearer density 1/2.
pub const CONSTRUCT2_DEFAULT_BE: BeParams = BeParams { d: 9, epsilon: 0.1 };

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Objective {
    Edges,
    Triangles,
}

/// Part sizes for H(n,k), plus the fraction x = |V1 ∪ V2|/n used by the
/// even-k optimization and the sphere parameters of any embedded block.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartSizePlan {
    pub sizes: Vec<usize>,
    pub x: f64,
    pub be: BeParams,
}

impl PartSizePlan {
    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }
}

/// A graph together with its part structure.
pub struct PartitionedGraph {
    pub graph: Graph,
    pub parts: Vec<VertexSet>,
    /// Part-index pairs carrying a Bollobás–Erdős block.
    pub be_blocks: Vec<(usize, usize)>,
    /// Part indices carrying a triangle-free graph.
    pub gamma_parts: Vec<usize>,
}

/// Balanced sizes for r parts: the first n mod r parts get the extra one.
fn balanced_sizes(n: usize, r: usize) -> Vec<usize> {
    (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
}

fn part_sets(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut parts = Vec::with_capacity(sizes.len());
    let mut next = 0;
    for &s in sizes {
        parts.push((next..next + s).collect());
        next += s;
    }
    parts
}

/// Complete r-partite graph with part sizes differing by at most one.
pub fn build_turan(n: usize, r: usize) -> Graph {
    assert!(r >= 1);
    let parts = part_sets(&balanced_sizes(n, r));
    let mut g = Graph::empty(n);
    for (i, p) in parts.iter().enumerate() {
        for q in &parts[i + 1..] {
            for &u in p {
                for &v in q {
                    g.add_edge(u, v);
                }
            }
        }
    }
    g
}

/// Random greedy triangle-free process: visit all pairs in a seeded
/// random order, inserting each edge that closes no triangle. One pass
/// suffices for maximality since blockers are never removed.
pub fn build_gamma(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    let mut g = Graph::empty(n);
    for (u, v) in pairs {
        if g.neighbors(u).is_disjoint_from(g.neighbors(v)) {
            g.add_edge(u, v);
        }
    }
    g
}

/// Derive an independent stream seed for sub-construction `i`.
fn sub_seed(seed: u64, i: u64) -> u64 {
    // splitmix64 step
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(i.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Part sizes maximizing the chosen density objective for H(n,k).
///
/// Odd k: balanced parts for both objectives. Even k = 2ℓ: a fraction x
/// of the vertices goes to the two block parts (x/2 each) and the rest is
/// split evenly; x maximizes either the edge density
/// x²/8 + x(1−x) + (1−x)²(ℓ−3)/(2(ℓ−2)) or the triangle density of the
/// layered cubic.
pub fn optimize_plan(n: usize, k: usize, objective: Objective) -> PartSizePlan {
    assert!(k >= 3);
    let l = k / 2;
    // k = 4 puts every vertex in the block, whose two sides must be
    // equal, so the vertex count must be even
    assert!(
        !(k == 4 && n % 2 == 1),
        "k = 4 requires an even vertex count"
    );
    let be = BeParams::default();
    if k % 2 == 1 {
        return PartSizePlan {
            sizes: balanced_sizes(n, l),
            x: 0.0,
            be,
        };
    }
    let x = if l == 2 {
        1.0 // both parts are the block
    } else {
        match objective {
            Objective::Edges => {
                let lf = l as f64;
                let f = move |x: f64| {
                    x * x / 8.0
                        + x * (1.0 - x)
                        + (1.0 - x) * (1.0 - x) * (lf - 3.0) / (2.0 * (lf - 2.0))
                };
                formulas::grid_then_ternary(f, 0.0, 1.0, 1e-4).0
            }
            Objective::Triangles => formulas::a(k)
                .expect("even k >= 4 handled above for l == 2")
                .argmax_x
                .unwrap_or(1.0),
        }
    };
    // integer sizes: equal block halves near xn/2, remainder balanced
    let mut half = ((x * n as f64) / 2.0).round() as usize;
    half = half.min(n / 2);
    let mut sizes = vec![half, half];
    sizes.extend(balanced_sizes(n - 2 * half, l - 2));
    PartSizePlan {
        sizes,
        x: 2.0 * half as f64 / n as f64,
        be,
    }
}

/// The layered construction H(n,k) with ℓ = ⌊k/2⌋ parts.
///
/// Odd k: complete ℓ-partite with a maximal triangle-free graph inside
/// each part. Even k: a Bollobás–Erdős block on V1 ∪ V2, complete
/// bipartite between every other pair of parts, triangle-free graphs
/// inside V3..Vℓ. The output is K_k-free: a clique meets the block in at
/// most 3 vertices and every other part in at most 2.
pub fn build_h_n_k(n: usize, k: usize, plan: &PartSizePlan, seed: u64) -> Result<PartitionedGraph> {
    if k < 3 {
        return Err(Error::BadPlan(format!("k = {k} < 3")));
    }
    let l = k / 2;
    if plan.sizes.len() != l {
        return Err(Error::BadPlan(format!(
            "{} part sizes for l = {l}",
            plan.sizes.len()
        )));
    }
    if plan.n() != n {
        return Err(Error::BadPlan(format!("sizes sum to {}, not {n}", plan.n())));
    }
    let even = k % 2 == 0;
    if even && plan.sizes[0] != plan.sizes[1] {
        return Err(Error::BadPlan(format!(
            "block parts must be equal, got {} and {}",
            plan.sizes[0], plan.sizes[1]
        )));
    }
    let parts = part_sets(&plan.sizes);
    let mut g = Graph::empty(n);
    let mut be_blocks = Vec::new();
    let mut gamma_parts = Vec::new();

    // complete bipartite between all part pairs except the block pair
    for i in 0..l {
        for j in (i + 1)..l {
            if even && i == 0 && j == 1 {
                continue;
            }
            for &u in &parts[i] {
                for &v in &parts[j] {
                    g.add_edge(u, v);
                }
            }
        }
    }

    if even {
        let m = plan.sizes[0];
        if m > 0 {
            let cfg = SphereConfig::new(plan.be.d, plan.be.epsilon, 2 * m, sub_seed(seed, 0))?;
            let be = build_be_graph(cfg)?;
            for (u, v) in be.graph.edges() {
                // X side maps into V1, Y side into V2
                let map = |w: usize| if w < m { parts[0][w] } else { parts[1][w - m] };
                g.add_edge(map(u), map(v));
            }
        }
        be_blocks.push((0, 1));
    }

    let gamma_from = if even { 2 } else { 0 };
    for i in gamma_from..l {
        let gam = build_gamma(plan.sizes[i], sub_seed(seed, 1 + i as u64));
        for (u, v) in gam.edges() {
            g.add_edge(parts[i][u], parts[i][v]);
        }
        gamma_parts.push(i);
    }

    Ok(PartitionedGraph {
        graph: g,
        parts: parts
            .iter()
            .map(|p| VertexSet::from_iter(n, p.iter().copied()))
            .collect(),
        be_blocks,
        gamma_parts,
    })
}

/// The shared-domain construction H(n,s,t), 3 ≤ s < t ≤ 2s−1.
///
/// The sphere is covered by n/s domains; part V_i holds one point per
/// domain. Pairs that are edges of the auxiliary graph `h` become
/// complete bipartite; non-edges carry a Bollobás–Erdős block over the
/// shared points. Parts of full degree in `h` receive a triangle-free
/// graph instead of the near-antipodal side edges. `h` must be
/// K_{t−s}-free, which caps cliques at t−1 vertices.
pub fn build_h_n_s_t(
    n: usize,
    s: usize,
    t: usize,
    h: &Graph,
    be: BeParams,
    seed: u64,
) -> Result<PartitionedGraph> {
    if !(3 <= s && s < t && t <= 2 * s - 1) {
        return Err(Error::BadPlan(format!(
            "need 3 <= s < t <= 2s-1, got s={s}, t={t}"
        )));
    }
    if h.n() != s {
        return Err(Error::BadAuxGraph(format!(
            "auxiliary graph has {} vertices, expected {s}",
            h.n()
        )));
    }
    if let Some(w) = h.find_clique(t - s) {
        return Err(Error::BadAuxGraph(format!(
            "auxiliary graph contains K_{} on {:?}",
            t - s,
            w.to_vec()
        )));
    }
    if n % s != 0 {
        return Err(Error::BadPlan(format!("{n} not divisible by s = {s}")));
    }
    let m = n / s;

    // shared domains: one center per domain, one nearby point per part
    let cfg = SphereConfig::new(be.d, be.epsilon, 2 * m.max(1), sub_seed(seed, 0))?;
    let mu = cfg.mu();
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 0));
    let mut points: Vec<Vec<Vec<f64>>> = vec![Vec::with_capacity(m); s];
    for _ in 0..m {
        let c = crate::sphere::sample_unit_point(be.d, &mut rng);
        for side in points.iter_mut() {
            side.push(crate::sphere::perturb_within(&c, mu / 4.0, &mut rng));
        }
    }

    let cross_sq = (std::f64::consts::SQRT_2 - mu) * (std::f64::consts::SQRT_2 - mu);
    let side_sq = (2.0 - mu) * (2.0 - mu);
    let d2 = |a: &[f64], b: &[f64]| -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
    };

    let vid = |part: usize, dom: usize| part * m + dom;
    let mut g = Graph::empty(n);
    let mut be_blocks = Vec::new();
    let mut gamma_parts = Vec::new();

    for i in 0..s {
        for j in (i + 1)..s {
            if h.has_edge(i, j) {
                for a in 0..m {
                    for b in 0..m {
                        g.add_edge(vid(i, a), vid(j, b));
                    }
                }
            } else {
                be_blocks.push((i, j));
                for a in 0..m {
                    for b in 0..m {
                        if d2(&points[i][a], &points[j][b]) < cross_sq {
                            g.add_edge(vid(i, a), vid(j, b));
                        }
                    }
                }
            }
        }
    }

    for i in 0..s {
        if h.degree(i) == s - 1 {
            let gam = build_gamma(m, sub_seed(seed, 1 + i as u64));
            for (a, b) in gam.edges() {
                g.add_edge(vid(i, a), vid(i, b));
            }
            gamma_parts.push(i);
        } else {
            for a in 0..m {
                for b in (a + 1)..m {
                    if d2(&points[i][a], &points[i][b]) > side_sq {
                        g.add_edge(vid(i, a), vid(i, b));
                    }
                }
            }
        }
    }

    Ok(PartitionedGraph {
        graph: g,
        parts: (0..s)
            .map(|i| VertexSet::from_iter(n, (0..m).map(|a| vid(i, a))))
            .collect(),
        be_blocks,
        gamma_parts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_examples() {
        let t93 = build_turan(9, 3);
        assert_eq!(t93.edge_count(), 27);
        assert!(t93.is_clique_free(4).0);
        let c4 = build_turan(4, 2);
        assert_eq!(c4.edge_count(), 4);
        assert!((0..4).all(|v| c4.degree(v) == 2));
        assert_eq!(build_turan(10, 4).edge_count(), 37);
    }

    #[test]
    fn gamma_is_maximal_triangle_free() {
        for seed in [0, 7] {
            let g = build_gamma(60, seed);
            assert_eq!(g.count_cliques(3), 0);
            for u in 0..60 {
                for v in (u + 1)..60 {
                    if !g.has_edge(u, v) {
                        assert!(
                            !g.neighbors(u).is_disjoint_from(g.neighbors(v)),
                            "non-edge ({u},{v}) closes no triangle"
                        );
                    }
                }
            }
        }
        // determinism
        assert_eq!(build_gamma(50, 3).edges(), build_gamma(50, 3).edges());
    }

    #[test]
    fn gamma_has_small_independence() {
        let n = 400;
        for seed in 0..10 {
            let g = build_gamma(n, seed);
            let alpha_lower = g.greedy_independent_set().len();
            assert!(
                (alpha_lower as f64) <= 0.35 * n as f64,
                "greedy alpha {alpha_lower} too large"
            );
        }
    }

    #[test]
    fn optimize_plan_examples() {
        let p = optimize_plan(210, 6, Objective::Triangles);
        assert!((p.x - 2.0 / 3.0).abs() < 0.02);
        assert_eq!(p.n(), 210);
        assert_eq!(p.sizes[0], p.sizes[1]);

        let p = optimize_plan(90, 7, Objective::Triangles);
        assert_eq!(p.sizes, vec![30, 30, 30]);

        let p = optimize_plan(100, 5, Objective::Edges);
        assert_eq!(p.sizes, vec![50, 50]);

        let p = optimize_plan(210, 6, Objective::Edges);
        assert!((p.x - 4.0 / 7.0).abs() < 0.02);

        // sizes always sum to n (k = 4 needs even n: the whole graph is
        // the two-sided block)
        for k in 3..=9 {
            for n in [47, 100, 211] {
                if k == 4 && n % 2 == 1 {
                    continue;
                }
                assert_eq!(optimize_plan(n, k, Objective::Edges).n(), n);
                assert_eq!(optimize_plan(n, k, Objective::Triangles).n(), n);
            }
        }
    }

    #[test]
    fn h_n_k_is_clique_free() {
        for k in 3..=9 {
            let n = 84;
            let plan = optimize_plan(n, k, Objective::Triangles);
            let pg = build_h_n_k(n, k, &plan, 1).unwrap();
            let (free, witness) = pg.graph.is_clique_free(k);
            assert!(free, "K_{k} found: {witness:?}");
        }
    }

    #[test]
    fn h_n_k_odd_edges_dominate_turan() {
        for k in [5, 7, 9] {
            let n = 90;
            let plan = optimize_plan(n, k, Objective::Edges);
            let pg = build_h_n_k(n, k, &plan, 2).unwrap();
            assert!(pg.graph.edge_count() >= build_turan(n, k / 2).edge_count());
        }
    }

    #[test]
    fn h_n_k_even_edge_density_near_coefficient() {
        let n = 210;
        let plan = optimize_plan(n, 6, Objective::Edges);
        let pg = build_h_n_k(n, 6, &plan, 1).unwrap();
        let density = pg.graph.edge_count() as f64 / (n * n) as f64;
        assert!((density - 2.0 / 7.0).abs() < 0.03, "density {density}");
    }

    #[test]
    fn h_n_k_bad_plans_rejected() {
        let mut plan = optimize_plan(60, 6, Objective::Edges);
        assert!(build_h_n_k(61, 6, &plan, 1).is_err());
        assert!(build_h_n_k(60, 8, &plan, 1).is_err());
        plan.sizes[0] += 1;
        plan.sizes[2] -= 1;
        assert!(build_h_n_k(60, 6, &plan, 1).is_err());
    }

    #[test]
    fn h_n_s_t_basic() {
        // s=3, t=5: empty auxiliary graph, three pairwise blocks
        let h = Graph::empty(3);
        let pg = build_h_n_s_t(90, 3, 5, &h, CONSTRUCT2_DEFAULT_BE, 1).unwrap();
        assert!(pg.graph.is_clique_free(5).0);
        assert_eq!(pg.be_blocks.len(), 3);
        assert!(pg.gamma_parts.is_empty());

        // any edge in H is a K_2 = K_{t-s}: rejected
        let mut h1 = Graph::empty(3);
        h1.add_edge(0, 1);
        assert!(matches!(
            build_h_n_s_t(90, 3, 5, &h1, CONSTRUCT2_DEFAULT_BE, 1),
            Err(Error::BadAuxGraph(_))
        ));
    }

    #[test]
    fn h_n_s_t_with_aux_edges() {
        // s=4, t=7: auxiliary graph must be K_3-free; C_4 qualifies
        let h = Graph::cycle(4);
        let pg = build_h_n_s_t(80, 4, 7, &h, CONSTRUCT2_DEFAULT_BE, 3).unwrap();
        assert!(pg.graph.is_clique_free(7).0);
        assert_eq!(pg.be_blocks.len(), 2); // the two diagonals
        assert!(pg.gamma_parts.is_empty()); // no vertex of C_4 has degree 3

        // star K_{1,3} gives one full-degree vertex -> one gamma part
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let pg = build_h_n_s_t(80, 4, 7, &star, CONSTRUCT2_DEFAULT_BE, 3).unwrap();
        assert_eq!(pg.gamma_parts, vec![0]);
        assert!(pg.graph.is_clique_free(7).0);
    }

    #[test]
    fn h_n_s_t_parameter_checks() {
        let h = Graph::empty(3);
        assert!(build_h_n_s_t(91, 3, 5, &h, CONSTRUCT2_DEFAULT_BE, 1).is_err()); // 91 % 3 != 0
        assert!(build_h_n_s_t(90, 3, 6, &h, CONSTRUCT2_DEFAULT_BE, 1).is_err()); // t > 2s-1
        assert!(build_h_n_s_t(90, 2, 3, &Graph::empty(2), CONSTRUCT2_DEFAULT_BE, 1).is_err());
        assert!(build_h_n_s_t(90, 3, 5, &Graph::empty(4), CONSTRUCT2_DEFAULT_BE, 1).is_err());
    }

    #[test]
    fn transversal_triangle_density() {
        // s=3, t=5, shared domains: triangle count scales like
        // 2^{-3} (n/3)^3; wide band for finite-n noise.
        let n = 150;
        let pg = build_h_n_s_t(n, 3, 5, &Graph::empty(3), CONSTRUCT2_DEFAULT_BE, 1).unwrap();
        let ratio = pg.graph.count_cliques(3) as f64 / ((n / 3) as f64).powi(3);
        assert!((0.06..0.19).contains(&ratio), "ratio {ratio}");
    }
}
