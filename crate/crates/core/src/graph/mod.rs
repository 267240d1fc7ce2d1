//! Undirected simple graphs with dense 0-based ids and bitset adjacency,
//! vertex-cover certificates, and deletion instances.

pub mod io;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::gf2::BitVec;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BitVec>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph { adj: (0..n).map(|_| BitVec::zeros(n)).collect(), edge_count: 0 }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`. Re-adding an existing edge is a no-op; loops are
    /// rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(invalid(format!("edge ({u}, {v}) exceeds vertex count {n}")));
        }
        if u == v {
            return Err(invalid(format!("self-loop at vertex {u}")));
        }
        if !self.adj[u].get(v) {
            self.adj[u].set(v, true);
            self.adj[v].set(u, true);
            self.edge_count += 1;
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].get(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones()
    }

    pub fn neighbors(&self, v: usize) -> &BitVec {
        &self.adj[v]
    }

    pub fn neighbor_ids(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter_ones()
    }

    /// Edges in ascending lexicographic order, each as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count())
            .flat_map(move |u| self.adj[u].iter_ones().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// Induced subgraph on `verts` (deduplicated). New ids are assigned in
    /// ascending order of the old ids.
    pub fn induced(&self, verts: &[usize]) -> Result<InducedSubgraph> {
        let n = self.vertex_count();
        let mut old_ids: Vec<usize> = verts.to_vec();
        old_ids.sort_unstable();
        old_ids.dedup();
        if let Some(&bad) = old_ids.iter().find(|&&v| v >= n) {
            return Err(invalid(format!("vertex {bad} exceeds vertex count {n}")));
        }
        let mut graph = Graph::empty(old_ids.len());
        for (new_u, &old_u) in old_ids.iter().enumerate() {
            for (new_v, &old_v) in old_ids.iter().enumerate().skip(new_u + 1) {
                if self.has_edge(old_u, old_v) {
                    graph.add_edge(new_u, new_v).unwrap();
                }
            }
        }
        Ok(InducedSubgraph { graph, old_ids })
    }

    /// Induced subgraph on everything except `removed`.
    pub fn without(&self, removed: &[usize]) -> Result<InducedSubgraph> {
        let mut gone = vec![false; self.vertex_count()];
        for &v in removed {
            if v >= self.vertex_count() {
                return Err(invalid(format!(
                    "vertex {v} exceeds vertex count {}",
                    self.vertex_count()
                )));
            }
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&v| !gone[v]).collect();
        self.induced(&keep)
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(invalid(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Wheel with rim `0..n` and hub `n`.
    pub fn wheel(n: usize) -> Result<Graph> {
        let mut g = Graph::cycle(n)?;
        let mut adj = std::mem::take(&mut g.adj);
        for row in &mut adj {
            let mut wide = BitVec::zeros(n + 1);
            for i in row.iter_ones() {
                wide.set(i, true);
            }
            *row = wide;
        }
        let mut g = Graph { adj, edge_count: g.edge_count };
        g.adj.push(BitVec::zeros(n + 1));
        for v in 0..n {
            g.add_edge(v, n).unwrap();
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))).unwrap()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.vertex_count(), self.edge_count, self.edges().collect::<Vec<_>>())
    }
}

/// Result of taking an induced subgraph: the new graph plus the id
/// translation in both directions.
pub struct InducedSubgraph {
    pub graph: Graph,
    old_ids: Vec<usize>,
}

impl InducedSubgraph {
    pub fn old_id(&self, new: usize) -> usize {
        self.old_ids[new]
    }

    pub fn new_id(&self, old: usize) -> Option<usize> {
        self.old_ids.binary_search(&old).ok()
    }

    pub fn old_ids(&self) -> &[usize] {
        &self.old_ids
    }

    pub fn map_to_old(&self, new_ids: &[usize]) -> Vec<usize> {
        new_ids.iter().map(|&v| self.old_ids[v]).collect()
    }
}

/// True when every edge of `g` has an endpoint in `cover`.
pub fn is_vertex_cover(g: &Graph, cover: &BitVec) -> bool {
    assert_eq!(cover.len(), g.vertex_count());
    (0..g.vertex_count())
        .filter(|&u| !cover.get(u))
        .all(|u| g.neighbors(u).is_subset_of(cover))
}

/// A vertex set checked to cover all edges of the graph it was built
/// against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCoverCert {
    ids: Vec<usize>,
    mask: BitVec,
}

impl VertexCoverCert {
    pub fn new<I: IntoIterator<Item = usize>>(g: &Graph, verts: I) -> Result<Self> {
        let n = g.vertex_count();
        let mut ids: Vec<usize> = verts.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        let mut mask = BitVec::zeros(n);
        for &v in &ids {
            if v >= n {
                return Err(invalid(format!("cover vertex {v} exceeds vertex count {n}")));
            }
            mask.set(v, true);
        }
        if !is_vertex_cover(g, &mask) {
            let uncovered = g
                .edges()
                .find(|&(u, v)| !mask.get(u) && !mask.get(v))
                .expect("cover check failed yet every edge is covered");
            return Err(invalid(format!(
                "set is not a vertex cover: edge ({}, {}) is uncovered",
                uncovered.0, uncovered.1
            )));
        }
        Ok(VertexCoverCert { ids, mask })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.mask.len() && self.mask.get(v)
    }

    /// Cover vertex ids in ascending order.
    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn mask(&self) -> &BitVec {
        &self.mask
    }
}

/// 2-approximate vertex cover: both endpoints of a maximal matching built
/// greedily over edges in ascending lexicographic order.
pub fn approx_vertex_cover(g: &Graph) -> VertexCoverCert {
    let mut matched = vec![false; g.vertex_count()];
    let mut cover = Vec::new();
    for (u, v) in g.edges() {
        if !matched[u] && !matched[v] {
            matched[u] = true;
            matched[v] = true;
            cover.push(u);
            cover.push(v);
        }
    }
    VertexCoverCert::new(g, cover).expect("matching endpoints always cover")
}

/// A deletion question: can at most `budget` vertex deletions make the
/// graph obstruction-free? The cover certificate is the parameter the
/// kernel size is measured against.
#[derive(Clone, Debug)]
pub struct DeletionInstance {
    pub graph: Graph,
    pub cover: VertexCoverCert,
    pub budget: usize,
}

impl DeletionInstance {
    pub fn new<I: IntoIterator<Item = usize>>(graph: Graph, cover: I, budget: usize) -> Result<Self> {
        if budget > graph.vertex_count() {
            return Err(invalid(format!(
                "budget {budget} exceeds vertex count {}",
                graph.vertex_count()
            )));
        }
        let cover = VertexCoverCert::new(&graph, cover)?;
        Ok(DeletionInstance { graph, cover, budget })
    }
}

/// Edge probabilities for the planted-cover generator.
#[derive(Clone, Copy, Debug)]
pub struct EdgeProbs {
    pub within_cover: f64,
    pub cover_to_independent: f64,
}

impl EdgeProbs {
    pub fn uniform(p: f64) -> Self {
        EdgeProbs { within_cover: p, cover_to_independent: p }
    }
}

/// Random instance whose first `cover_size` ids form a vertex cover; the
/// remaining `independent_size` ids stay pairwise non-adjacent. Budgets
/// larger than the vertex count are clamped. Fully determined by `seed`.
pub fn random_planted_instance(
    cover_size: usize,
    independent_size: usize,
    probs: EdgeProbs,
    budget: usize,
    seed: u64,
) -> DeletionInstance {
    let n = cover_size + independent_size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..cover_size {
        for v in (u + 1)..cover_size {
            if rng.gen_bool(probs.within_cover) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    for u in 0..cover_size {
        for v in cover_size..n {
            if rng.gen_bool(probs.cover_to_independent) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    DeletionInstance::new(g, 0..cover_size, budget.min(n))
        .expect("planted construction always yields a valid cover")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_degrees() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 1)]).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(1), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn loops_and_out_of_range_are_rejected() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn complement_of_p4_is_p4() {
        // P4 is self-complementary: 0-1-2-3 maps to 2-0-3-1.
        let g = Graph::path(4);
        let c = g.complement();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 2), (0, 3), (1, 3)]);
        assert_eq!(c.complement(), g);
    }

    #[test]
    fn complement_is_an_involution_on_random_graphs() {
        let inst = random_planted_instance(5, 5, EdgeProbs::uniform(0.4), 0, 99);
        let g = inst.graph;
        assert_eq!(g.complement().complement(), g);
        let n = g.vertex_count();
        let m = g.edge_count();
        assert_eq!(g.complement().edge_count(), n * (n - 1) / 2 - m);
    }

    #[test]
    fn induced_subgraph_renumbers_in_ascending_order() {
        let g = Graph::cycle(5).unwrap();
        let sub = g.induced(&[4, 0, 2]).unwrap();
        assert_eq!(sub.old_ids(), &[0, 2, 4]);
        assert_eq!(sub.graph.vertex_count(), 3);
        // Edges kept: (0,4) only; (0,2) and (2,4) are non-adjacent in C5.
        assert_eq!(sub.graph.edges().collect::<Vec<_>>(), vec![(0, 2)]);
        assert_eq!(sub.new_id(4), Some(2));
        assert_eq!(sub.new_id(1), None);
        assert_eq!(sub.map_to_old(&[0, 2]), vec![0, 4]);
    }

    #[test]
    fn without_drops_the_listed_vertices() {
        let g = Graph::cycle(5).unwrap();
        let sub = g.without(&[0]).unwrap();
        assert_eq!(sub.graph.vertex_count(), 4);
        assert_eq!(sub.graph.edge_count(), 3);
        assert!(g.without(&[9]).is_err());
    }

    #[test]
    fn named_families() {
        assert_eq!(Graph::path(1).edge_count(), 0);
        assert_eq!(Graph::path(4).edge_count(), 3);
        assert!(Graph::cycle(2).is_err());
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
        let w3 = Graph::wheel(3).unwrap();
        assert_eq!(w3, Graph::complete(4));
        let w5 = Graph::wheel(5).unwrap();
        assert_eq!(w5.vertex_count(), 6);
        assert_eq!(w5.degree(5), 5);
        assert!((0..5).all(|v| w5.degree(v) == 3));
    }

    #[test]
    fn cover_certificate_checks_edges() {
        let g = Graph::cycle(4).unwrap();
        assert!(VertexCoverCert::new(&g, [0, 2]).is_ok());
        let err = VertexCoverCert::new(&g, [0, 1]).unwrap_err();
        assert!(err.to_string().contains("(2, 3)"), "got: {err}");
        assert!(VertexCoverCert::new(&g, [0, 9]).is_err());
        let cert = VertexCoverCert::new(&g, [2, 0, 2]).unwrap();
        assert_eq!(cert.ids(), &[0, 2]);
        assert!(cert.contains(0) && !cert.contains(1));
    }

    #[test]
    fn greedy_matching_cover_on_c4_takes_all_four() {
        // Matching picks (0,1) then (2,3).
        let g = Graph::cycle(4).unwrap();
        let cover = approx_vertex_cover(&g);
        assert_eq!(cover.ids(), &[0, 1, 2, 3]);
    }

    #[test]
    fn greedy_matching_cover_is_at_most_twice_optimal_on_stars() {
        // A star's optimum cover is 1; the matching picks one edge.
        let g = Graph::from_edges(6, (1..6).map(|v| (0, v))).unwrap();
        let cover = approx_vertex_cover(&g);
        assert_eq!(cover.len(), 2);
        assert_eq!(cover.ids(), &[0, 1]);
    }

    #[test]
    fn instance_validation() {
        let g = Graph::cycle(4).unwrap();
        assert!(DeletionInstance::new(g.clone(), [0, 2], 5).is_err());
        assert!(DeletionInstance::new(g.clone(), [0, 1], 1).is_err());
        let inst = DeletionInstance::new(g, [0, 2], 2).unwrap();
        assert_eq!(inst.cover.ids(), &[0, 2]);
    }

    #[test]
    fn planted_instance_is_reproducible_and_split() {
        let a = random_planted_instance(3, 4, EdgeProbs::uniform(1.0), 2, 7);
        let b = random_planted_instance(3, 4, EdgeProbs::uniform(1.0), 2, 7);
        assert_eq!(a.graph, b.graph);
        // p = 1 gives complete cover joined completely to the independent set.
        assert_eq!(a.graph.edge_count(), 3 + 3 * 4);
        for u in 3..7 {
            for v in (u + 1)..7 {
                assert!(!a.graph.has_edge(u, v));
            }
        }
        let empty_cover = random_planted_instance(0, 5, EdgeProbs::uniform(0.9), 0, 3);
        assert_eq!(empty_cover.graph.edge_count(), 0);
        assert!(empty_cover.cover.is_empty());
        // Budget clamps to the vertex count.
        let clamped = random_planted_instance(2, 2, EdgeProbs::uniform(0.5), 99, 3);
        assert_eq!(clamped.budget, 4);
    }

    #[test]
    fn different_seeds_differ_somewhere() {
        let a = random_planted_instance(6, 6, EdgeProbs::uniform(0.5), 0, 1);
        let b = random_planted_instance(6, 6, EdgeProbs::uniform(0.5), 0, 2);
        assert_ne!(a.graph, b.graph);
    }
}
