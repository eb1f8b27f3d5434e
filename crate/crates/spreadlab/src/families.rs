//! Deterministic generators for the named claw-free cubic families — the
//! diamond-necklaces, triangle-necklaces and triangle-diamond-necklaces —
//! plus a seeded random generator for property testing.
//!
//! Each generator returns a [`LabeledGraph`] whose label table maps the
//! construction's vertex names (`a1`, `b1`, .., `x1`, `y1`, `z1`, ..) to
//! indices, so tests and fixtures can address vertices by name.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default number of stub-matching attempts before the random generator
/// gives up.
pub const DEFAULT_RETRY_CAP: usize = 10_000;

/// A graph together with a bijective name-to-index label table.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: BTreeMap<String, usize>,
}

impl LabeledGraph {
    fn new(graph: Graph, labels: Vec<(String, usize)>) -> Self {
        let labels: BTreeMap<String, usize> = labels.into_iter().collect();
        debug_assert_eq!(labels.len(), graph.n(), "labels must be a bijection");
        LabeledGraph { graph, labels }
    }

    /// Index of a named vertex; panics on unknown names.
    pub fn index(&self, name: &str) -> usize {
        *self
            .labels
            .get(name)
            .unwrap_or_else(|| panic!("no vertex labeled {name:?}"))
    }

    /// The set of vertices with the given names.
    pub fn set(&self, names: &[&str]) -> VertexSet {
        names.iter().map(|name| self.index(name)).collect()
    }

    /// The name of a vertex index, if any.
    pub fn label_of(&self, v: usize) -> Option<&str> {
        self.labels
            .iter()
            .find(|&(_, &idx)| idx == v)
            .map(|(name, _)| name.as_str())
    }
}

/// The diamond-necklace on `4k` vertices: `k` diamonds `{a_i, b_i, c_i, d_i}`
/// (edge `a_i b_i` missing) joined in a cycle by the edges `a_i b_{i+1}` and
/// `a_k b_1`.
pub fn diamond_necklace(k: usize) -> Result<LabeledGraph> {
    if k < 2 {
        return Err(Error::Infeasible(format!(
            "diamond necklace needs at least 2 diamonds, got {k}"
        )));
    }
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let idx = |i: usize, off: usize| 4 * (i - 1) + off;
    for i in 1..=k {
        let (a, b, c, d) = (idx(i, 0), idx(i, 1), idx(i, 2), idx(i, 3));
        labels.push((format!("a{i}"), a));
        labels.push((format!("b{i}"), b));
        labels.push((format!("c{i}"), c));
        labels.push((format!("d{i}"), d));
        edges.extend_from_slice(&[(a, c), (a, d), (b, c), (b, d), (c, d)]);
    }
    for i in 1..k {
        edges.push((idx(i, 0), idx(i + 1, 1)));
    }
    edges.push((idx(k, 0), idx(1, 1)));
    Ok(LabeledGraph::new(Graph::new(4 * k, &edges)?, labels))
}

/// The triangle-necklace on `6k` vertices: `2k` triangles `{x_i, y_i, z_i}`
/// joined by `x_{2i-1} x_{2i}`, `y_{2i-1} y_{2i}` and `z_{2i} z_{2i+1}`
/// (indices modulo `2k`).
pub fn triangle_necklace(k: usize) -> Result<LabeledGraph> {
    if k < 1 {
        return Err(Error::Infeasible(
            "triangle necklace needs at least one triangle pair".into(),
        ));
    }
    let t = 2 * k;
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let x = |i: usize| 3 * (i - 1);
    let y = |i: usize| 3 * (i - 1) + 1;
    let z = |i: usize| 3 * (i - 1) + 2;
    for i in 1..=t {
        labels.push((format!("x{i}"), x(i)));
        labels.push((format!("y{i}"), y(i)));
        labels.push((format!("z{i}"), z(i)));
        edges.extend_from_slice(&[(x(i), y(i)), (x(i), z(i)), (y(i), z(i))]);
    }
    for i in 1..=k {
        edges.push((x(2 * i - 1), x(2 * i)));
        edges.push((y(2 * i - 1), y(2 * i)));
        let next = if 2 * i + 1 > t {
            2 * i + 1 - t
        } else {
            2 * i + 1
        };
        edges.push((z(2 * i), z(next)));
    }
    Ok(LabeledGraph::new(Graph::new(6 * k, &edges)?, labels))
}

/// The triangle-diamond-necklace on `10k` vertices: `2k` triangles and `k`
/// diamonds with `x_{2i-1} a_i`, `x_{2i} b_i`, `y_{2i-1} z_{2i+1}` and
/// `y_{2i} z_{2i+2}` (wrapping to `y_{2k-1} z_1` and `y_{2k} z_2`).
pub fn triangle_diamond_necklace(k: usize) -> Result<LabeledGraph> {
    if k < 2 {
        return Err(Error::Infeasible(format!(
            "triangle-diamond necklace needs at least 2 diamonds, got {k}"
        )));
    }
    let t = 2 * k;
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let x = |i: usize| 3 * (i - 1);
    let y = |i: usize| 3 * (i - 1) + 1;
    let z = |i: usize| 3 * (i - 1) + 2;
    let dia = |j: usize, off: usize| 6 * k + 4 * (j - 1) + off;
    for i in 1..=t {
        labels.push((format!("x{i}"), x(i)));
        labels.push((format!("y{i}"), y(i)));
        labels.push((format!("z{i}"), z(i)));
        edges.extend_from_slice(&[(x(i), y(i)), (x(i), z(i)), (y(i), z(i))]);
    }
    for j in 1..=k {
        let (a, b, c, d) = (dia(j, 0), dia(j, 1), dia(j, 2), dia(j, 3));
        labels.push((format!("a{j}"), a));
        labels.push((format!("b{j}"), b));
        labels.push((format!("c{j}"), c));
        labels.push((format!("d{j}"), d));
        edges.extend_from_slice(&[(a, c), (a, d), (b, c), (b, d), (c, d)]);
    }
    for i in 1..=k {
        edges.push((x(2 * i - 1), dia(i, 0)));
        edges.push((x(2 * i), dia(i, 1)));
    }
    for i in 1..k {
        edges.push((y(2 * i - 1), z(2 * i + 1)));
        edges.push((y(2 * i), z(2 * i + 2)));
    }
    edges.push((y(2 * k - 1), z(1)));
    edges.push((y(2 * k), z(2)));
    Ok(LabeledGraph::new(Graph::new(10 * k, &edges)?, labels))
}

/// The 18-vertex theta graph: three diamonds in a row, with an upper
/// triangle `{u1, u2, u3}` sending one edge to each `b_j` and a lower
/// triangle `{w1, w2, w3}` sending one edge to each `a_j`. Connected,
/// cubic, claw-free, with five units.
pub fn theta_graph() -> LabeledGraph {
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let dia = |j: usize, off: usize| 4 * (j - 1) + off;
    for j in 1..=3 {
        let (a, b, c, d) = (dia(j, 0), dia(j, 1), dia(j, 2), dia(j, 3));
        labels.push((format!("a{j}"), a));
        labels.push((format!("b{j}"), b));
        labels.push((format!("c{j}"), c));
        labels.push((format!("d{j}"), d));
        edges.extend_from_slice(&[(a, c), (a, d), (b, c), (b, d), (c, d)]);
    }
    let (u1, u2, u3) = (12, 13, 14);
    let (w1, w2, w3) = (15, 16, 17);
    labels.extend_from_slice(&[
        ("u1".into(), u1),
        ("u2".into(), u2),
        ("u3".into(), u3),
        ("w1".into(), w1),
        ("w2".into(), w2),
        ("w3".into(), w3),
    ]);
    edges.extend_from_slice(&[(u1, u2), (u1, u3), (u2, u3)]);
    edges.extend_from_slice(&[(w1, w2), (w1, w3), (w2, w3)]);
    for j in 1..=3 {
        edges.push(([u1, u2, u3][j - 1], dia(j, 1)));
        edges.push(([w1, w2, w3][j - 1], dia(j, 0)));
    }
    LabeledGraph::new(
        Graph::new(18, &edges).expect("theta graph is simple"),
        labels,
    )
}

/// Generates a connected claw-free cubic graph whose triangle-diamond
/// partition has exactly `num_triangles` triangle-units and `num_diamonds`
/// diamond-units, by sampling a perfect matching on unit stubs. Each
/// triangle exposes one stub per vertex and each diamond exposes a stub on
/// its two degree-2 vertices; a matching is rejected when it pairs stubs of
/// the same unit (parallel edge, or a diamond closing into `K_4`) or leaves
/// the graph disconnected. Deterministic for a fixed seed.
pub fn random_claw_free_cubic(
    num_triangles: usize,
    num_diamonds: usize,
    seed: u64,
) -> Result<LabeledGraph> {
    random_claw_free_cubic_with_cap(num_triangles, num_diamonds, seed, DEFAULT_RETRY_CAP)
}

pub fn random_claw_free_cubic_with_cap(
    num_triangles: usize,
    num_diamonds: usize,
    seed: u64,
    retry_cap: usize,
) -> Result<LabeledGraph> {
    if num_triangles % 2 != 0 {
        return Err(Error::Infeasible(format!(
            "number of triangle-units must be even, got {num_triangles}"
        )));
    }
    if num_triangles + num_diamonds < 2 {
        return Err(Error::Infeasible("need at least two units in total".into()));
    }
    if (3 * num_triangles + 2 * num_diamonds) % 2 != 0 {
        return Err(Error::Infeasible("total stub count must be even".into()));
    }

    let n = 3 * num_triangles + 4 * num_diamonds;
    let mut base_edges = Vec::new();
    let mut labels = Vec::new();
    let mut stubs: Vec<(usize, usize)> = Vec::new(); // (vertex, unit id)
    for i in 0..num_triangles {
        let (x, y, z) = (3 * i, 3 * i + 1, 3 * i + 2);
        labels.push((format!("x{}", i + 1), x));
        labels.push((format!("y{}", i + 1), y));
        labels.push((format!("z{}", i + 1), z));
        base_edges.extend_from_slice(&[(x, y), (x, z), (y, z)]);
        stubs.extend_from_slice(&[(x, i), (y, i), (z, i)]);
    }
    for j in 0..num_diamonds {
        let base = 3 * num_triangles + 4 * j;
        let (a, b, c, d) = (base, base + 1, base + 2, base + 3);
        labels.push((format!("a{}", j + 1), a));
        labels.push((format!("b{}", j + 1), b));
        labels.push((format!("c{}", j + 1), c));
        labels.push((format!("d{}", j + 1), d));
        base_edges.extend_from_slice(&[(a, c), (a, d), (b, c), (b, d), (c, d)]);
        let unit = num_triangles + j;
        stubs.push((a, unit));
        stubs.push((b, unit));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retry_cap {
        let mut shuffled = stubs.clone();
        shuffled.shuffle(&mut rng);
        if shuffled.chunks_exact(2).any(|pair| pair[0].1 == pair[1].1) {
            continue;
        }
        let mut edges = base_edges.clone();
        edges.extend(shuffled.chunks_exact(2).map(|pair| (pair[0].0, pair[1].0)));
        let graph = Graph::new(n, &edges)?;
        if !graph.is_connected() {
            continue;
        }
        debug_assert!(graph.is_cubic() && graph.is_claw_free());
        return Ok(LabeledGraph::new(graph, labels));
    }
    Err(Error::RetriesExhausted {
        attempts: retry_cap,
        diagnostic: format!(
            "no connected stub matching found for {num_triangles} triangles and {num_diamonds} diamonds"
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_valid_family_member(g: &Graph) {
        assert!(g.is_cubic(), "not cubic");
        assert!(g.is_claw_free(), "not claw-free");
        assert!(g.is_connected(), "not connected");
    }

    #[test]
    fn diamond_necklace_counts() {
        let n4 = diamond_necklace(4).unwrap();
        assert_eq!(n4.graph.n(), 16);
        assert_eq!(n4.graph.m(), 24);
        is_valid_family_member(&n4.graph);

        let n3 = diamond_necklace(3).unwrap();
        assert_eq!(n3.graph.n(), 12);
        is_valid_family_member(&n3.graph);

        assert!(diamond_necklace(1).is_err());
    }

    #[test]
    fn diamond_necklace_wiring() {
        let n4 = diamond_necklace(4).unwrap();
        // a_i b_i missing, cycle edges a_i b_{i+1} and a_4 b_1 present
        assert!(!n4.graph.has_edge(n4.index("a1"), n4.index("b1")));
        assert!(n4.graph.has_edge(n4.index("a1"), n4.index("b2")));
        assert!(n4.graph.has_edge(n4.index("a4"), n4.index("b1")));
        assert!(n4.graph.has_edge(n4.index("c2"), n4.index("d2")));
    }

    #[test]
    fn triangle_necklace_counts_and_wrap() {
        let f6 = triangle_necklace(3).unwrap();
        assert_eq!(f6.graph.n(), 18);
        assert_eq!(f6.graph.m(), 27);
        is_valid_family_member(&f6.graph);
        assert!(f6.graph.has_edge(f6.index("x1"), f6.index("x2")));
        assert!(f6.graph.has_edge(f6.index("y3"), f6.index("y4")));
        assert!(f6.graph.has_edge(f6.index("z6"), f6.index("z1")));
        assert!(!f6.graph.has_edge(f6.index("z1"), f6.index("z2")));

        // F_2 is the prism: two triangles joined by a perfect matching.
        let f2 = triangle_necklace(1).unwrap();
        assert_eq!(f2.graph.n(), 6);
        is_valid_family_member(&f2.graph);
        assert!(f2.graph.has_edge(f2.index("z2"), f2.index("z1")));

        assert!(triangle_necklace(0).is_err());
    }

    #[test]
    fn triangle_diamond_necklace_counts_and_wrap() {
        let h6 = triangle_diamond_necklace(3).unwrap();
        assert_eq!(h6.graph.n(), 30);
        assert_eq!(h6.graph.m(), 45);
        is_valid_family_member(&h6.graph);
        assert!(h6.graph.has_edge(h6.index("x1"), h6.index("a1")));
        assert!(h6.graph.has_edge(h6.index("x2"), h6.index("b1")));
        assert!(h6.graph.has_edge(h6.index("y1"), h6.index("z3")));
        assert!(h6.graph.has_edge(h6.index("y5"), h6.index("z1")));
        assert!(h6.graph.has_edge(h6.index("y6"), h6.index("z2")));
        assert!(!h6.graph.has_edge(h6.index("a1"), h6.index("b1")));

        let h4 = triangle_diamond_necklace(2).unwrap();
        assert_eq!(h4.graph.n(), 20);
        is_valid_family_member(&h4.graph);

        assert!(triangle_diamond_necklace(1).is_err());
    }

    #[test]
    fn theta_graph_shape() {
        let g = theta_graph();
        assert_eq!(g.graph.n(), 18);
        assert_eq!(g.graph.m(), 27);
        is_valid_family_member(&g.graph);
        for j in 1..=3usize {
            assert!(g
                .graph
                .has_edge(g.index(&format!("u{j}")), g.index(&format!("b{j}"))));
            assert!(g
                .graph
                .has_edge(g.index(&format!("w{j}")), g.index(&format!("a{j}"))));
        }
    }

    #[test]
    fn random_generator_produces_class_members() {
        for seed in 0..10u64 {
            let g = random_claw_free_cubic(4, 2, seed).unwrap();
            assert_eq!(g.graph.n(), 20);
            is_valid_family_member(&g.graph);
        }
    }

    #[test]
    fn random_generator_is_seed_deterministic() {
        let a = random_claw_free_cubic(4, 2, 7).unwrap();
        let b = random_claw_free_cubic(4, 2, 7).unwrap();
        assert_eq!(a.graph, b.graph);
    }

    #[test]
    fn random_generator_two_triangles_is_prism_sized() {
        let g = random_claw_free_cubic(2, 0, 1).unwrap();
        assert_eq!(g.graph.n(), 6);
        is_valid_family_member(&g.graph);
    }

    #[test]
    fn random_generator_rejects_infeasible_parameters() {
        assert!(random_claw_free_cubic(3, 1, 0).is_err());
        assert!(random_claw_free_cubic(0, 1, 0).is_err());
    }

    #[test]
    fn random_generator_reports_exhausted_retries() {
        let err = random_claw_free_cubic_with_cap(2, 0, 0, 0).unwrap_err();
        assert!(matches!(
            err,
            crate::error::Error::RetriesExhausted { attempts: 0, .. }
        ));
    }
}
