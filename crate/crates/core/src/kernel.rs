//! The reduction algorithm and its per-problem wrapper. Round after round,
//! a GF(2) basis of incidence vectors is extracted from the vertices
//! outside the cover; basis vertices stay, and after the final round
//! everything never chosen is dropped. With enough rounds the deletion
//! answer is preserved, and the survivor count is bounded by the cover
//! size and the coordinate count alone.
//!
//! This module never runs obstruction detectors; presets name their
//! detector by id and callers who want to verify answers resolve it.

use crate::caps::Caps;
use crate::error::{invalid, Result};
use crate::gf2::Basis;
use crate::graph::{is_vertex_cover, DeletionInstance, Graph, InducedSubgraph, VertexCoverCert};
use crate::incidence::{self, CoordinateIndex};
use serde::Serialize;

/// What one reduction round kept.
#[derive(Clone, Debug, Serialize)]
pub struct RoundTrace {
    pub round: usize,
    /// Vertices whose vectors entered this round's basis, ascending.
    pub kept: Vec<usize>,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReduceTrace {
    pub rounds: Vec<RoundTrace>,
    /// Vertices left over after the last round, i.e. deleted.
    pub removed: Vec<usize>,
}

impl ReduceTrace {
    /// All kept non-cover vertices across rounds, ascending.
    pub fn kept(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.rounds.iter().flat_map(|r| r.kept.iter().copied()).collect();
        all.sort_unstable();
        all
    }
}

/// Runs `rounds` rounds of basis extraction at the given rank bound and
/// returns the induced subgraph on the cover plus all kept vertices,
/// together with the per-round trace.
///
/// Vertices are fed into each round's basis in ascending id order, and a
/// vertex is kept exactly when its vector is independent of the vectors
/// of lower-id vertices still present. This makes the output canonical:
/// reruns, and runs with more rounds, keep prefix-compatible sets.
pub fn reduce(
    g: &Graph,
    cover: &VertexCoverCert,
    rounds: usize,
    rank_bound: usize,
    caps: &Caps,
) -> Result<(InducedSubgraph, ReduceTrace)> {
    if rounds == 0 {
        return Err(invalid("reduction needs at least one round"));
    }
    if rank_bound == 0 {
        return Err(invalid("rank bound must be at least 1"));
    }
    if cover.mask().len() != g.vertex_count() || !is_vertex_cover(g, cover.mask()) {
        return Err(invalid("cover certificate does not match the graph"));
    }
    let idx = CoordinateIndex::enumerate(cover.ids(), rank_bound, caps)?;
    let outside: Vec<usize> = (0..g.vertex_count()).filter(|&v| !cover.contains(v)).collect();
    let vectors = outside
        .iter()
        .map(|&u| incidence::inc_vector(g, &idx, u))
        .collect::<Result<Vec<_>>>()?;

    let mut active: Vec<usize> = (0..outside.len()).collect();
    let mut trace = ReduceTrace { rounds: Vec::new(), removed: Vec::new() };
    let mut keep: Vec<usize> = cover.ids().to_vec();
    for round in 1..=rounds {
        let mut basis = Basis::new();
        let mut kept = Vec::new();
        let mut rest = Vec::new();
        for &i in &active {
            if basis.insert(outside[i], vectors[i].bits())? {
                kept.push(outside[i]);
            } else {
                rest.push(i);
            }
        }
        assert_eq!(kept.len(), basis.rank());
        assert!(kept.len() <= idx.len());
        trace.rounds.push(RoundTrace { round, rank: kept.len(), kept: kept.clone() });
        keep.extend(kept);
        active = rest;
    }
    trace.removed = active.into_iter().map(|i| outside[i]).collect();
    let sub = g.induced(&keep)?;
    assert!(sub.graph.vertex_count() <= cover.len() + rounds * idx.len());
    Ok((sub, trace))
}

/// Per-problem constants driving `kernelize`: the rank bound, the round
/// polynomial, and the id of the obstruction family the guarantee is
/// about. The detector itself is deliberately not referenced here.
#[derive(Clone, Debug, Serialize)]
pub struct ProblemPreset {
    pub name: &'static str,
    pub rank: usize,
    /// Coefficients of the round polynomial, constant term first.
    pub poly: Vec<usize>,
    pub detector_id: &'static str,
    pub singleton_replacements: bool,
}

impl ProblemPreset {
    pub const NAMES: [&'static str; 5] =
        ["perfect", "even-hole-free", "at-free", "interval", "wheel-free"];

    pub fn by_name(name: &str) -> Result<ProblemPreset> {
        let (rank, poly, detector_id, singleton) = match name {
            "perfect" => (4, vec![0, 2], "perfect", true),
            "even-hole-free" => (3, vec![0, 2], "even-hole", true),
            "at-free" => (8, vec![7, 4], "asteroidal-triple", true),
            "interval" => (8, vec![7, 4], "interval", false),
            "wheel-free" => (4, vec![0, 2], "wheel", false),
            _ => {
                return Err(invalid(format!(
                    "unknown preset {name:?}; expected one of: {}",
                    ProblemPreset::NAMES.join(", ")
                )))
            }
        };
        let name = ProblemPreset::NAMES.iter().find(|n| **n == name).unwrap();
        Ok(ProblemPreset { name, rank, poly, detector_id, singleton_replacements: singleton })
    }

    pub fn all() -> Vec<ProblemPreset> {
        ProblemPreset::NAMES.iter().map(|n| ProblemPreset::by_name(n).unwrap()).collect()
    }

    /// Evaluates the round polynomial at the cover size.
    pub fn poly_at(&self, x: usize) -> usize {
        self.poly.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    /// Rounds used for a budget-k instance with cover size x.
    pub fn rounds_for(&self, k: usize, x: usize) -> usize {
        k + 1 + self.poly_at(x)
    }
}

/// How `kernelize` arrived at its output.
#[derive(Clone, Debug, Serialize)]
pub enum KernelReduction {
    /// The budget covers the whole vertex cover, so the answer is yes and
    /// a fixed tiny yes-instance is returned.
    TrivialYes,
    Reduced(ReduceTrace),
}

#[derive(Clone, Debug)]
pub struct KernelOutput {
    pub instance: DeletionInstance,
    /// Old id of each kernel vertex, aligned with the kernel's ids;
    /// empty for the trivial yes-instance.
    pub vertex_origin: Vec<usize>,
    pub reduction: KernelReduction,
}

/// Shrinks an instance while preserving its yes/no answer for the
/// preset's obstruction family. A budget at least the cover size is
/// always feasible (deleting the cover leaves an edgeless graph, and
/// every obstruction has an edge), so such instances collapse to a
/// constant yes-instance; anything else goes through `reduce` with the
/// preset's rank bound and round count.
pub fn kernelize(inst: &DeletionInstance, preset: &ProblemPreset, caps: &Caps) -> Result<KernelOutput> {
    if inst.budget >= inst.cover.len() {
        return Ok(KernelOutput {
            instance: DeletionInstance::new(Graph::empty(0), [], 0)?,
            vertex_origin: Vec::new(),
            reduction: KernelReduction::TrivialYes,
        });
    }
    let rounds = preset.rounds_for(inst.budget, inst.cover.len());
    let (sub, trace) = reduce(&inst.graph, &inst.cover, rounds, preset.rank, caps)?;
    let new_cover: Vec<usize> = inst
        .cover
        .ids()
        .iter()
        .map(|&old| sub.new_id(old).expect("cover vertices always survive reduction"))
        .collect();
    let instance = DeletionInstance::new(sub.graph.clone(), new_cover, inst.budget)?;
    Ok(KernelOutput {
        instance,
        vertex_origin: sub.old_ids().to_vec(),
        reduction: KernelReduction::Reduced(trace),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{random_planted_instance, EdgeProbs};
    use crate::obstructions::{PropertyId, PropertySpec};
    use crate::solver::brute_force_decide;
    use proptest::prelude::*;

    fn cert(g: &Graph, ids: impl IntoIterator<Item = usize>) -> VertexCoverCert {
        VertexCoverCert::new(g, ids).unwrap()
    }

    #[test]
    fn duplicate_vector_is_dropped_and_returns_with_an_extra_round() {
        // x=0 covers both y's; their rank-1 vectors coincide.
        let g = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let caps = Caps::default();
        let (sub, trace) = reduce(&g, &cert(&g, [0]), 1, 1, &caps).unwrap();
        assert_eq!(sub.old_ids(), &[0, 1]);
        assert_eq!(trace.rounds.len(), 1);
        assert_eq!(trace.rounds[0].kept, vec![1]);
        assert_eq!(trace.rounds[0].rank, 1);
        assert_eq!(trace.removed, vec![2]);

        let (sub, trace) = reduce(&g, &cert(&g, [0]), 2, 1, &caps).unwrap();
        assert_eq!(sub.old_ids(), &[0, 1, 2]);
        assert_eq!(trace.rounds[1].kept, vec![2]);
        assert!(trace.removed.is_empty());
    }

    #[test]
    fn independent_vectors_all_survive_one_round() {
        // y-neighborhoods ∅, {0}, {0,1} give independent rank-2 vectors.
        let g = Graph::from_edges(5, [(0, 1), (2, 0), (3, 0), (3, 1)]).unwrap();
        let caps = Caps::default();
        let idx = CoordinateIndex::enumerate(&[0, 1], 2, &caps).unwrap();
        let mut basis = Basis::new();
        for y in [2, 3, 4] {
            let vec = incidence::inc_vector(&g, &idx, y).unwrap();
            assert!(basis.insert(y, vec.bits()).unwrap());
        }
        let (sub, trace) = reduce(&g, &cert(&g, [0, 1]), 1, 2, &caps).unwrap();
        assert_eq!(sub.old_ids(), &[0, 1, 2, 3, 4]);
        assert!(trace.removed.is_empty());
        assert_eq!(sub.graph.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn mismatched_cover_certificate_is_rejected() {
        let g = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let other = Graph::from_edges(3, [(1, 2)]).unwrap();
        let caps = Caps::default();
        let bad = cert(&other, [1]);
        assert!(reduce(&g, &bad, 1, 1, &caps).is_err());
        assert!(reduce(&g, &cert(&g, [0]), 0, 1, &caps).is_err());
        assert!(reduce(&g, &cert(&g, [0]), 1, 0, &caps).is_err());
    }

    #[test]
    fn preset_table_matches_the_declared_constants() {
        let names: Vec<&str> = ProblemPreset::all().iter().map(|p| p.name).collect();
        assert_eq!(names, ProblemPreset::NAMES);
        assert!(ProblemPreset::by_name("chordal-free").is_err());

        let perfect = ProblemPreset::by_name("perfect").unwrap();
        assert_eq!((perfect.rank, perfect.poly_at(6)), (4, 12));
        assert!(perfect.singleton_replacements);
        let at = ProblemPreset::by_name("at-free").unwrap();
        assert_eq!((at.rank, at.poly_at(5)), (8, 27));
        let interval = ProblemPreset::by_name("interval").unwrap();
        assert!(!interval.singleton_replacements);
        assert_eq!(interval.rounds_for(2, 3), 2 + 1 + 19);

        // Every preset's detector id resolves to a property spec whose
        // declared rank matches the preset.
        for preset in ProblemPreset::all() {
            let id: PropertyId = preset.detector_id.parse().unwrap();
            let spec = PropertySpec::by_id(id);
            assert_eq!(spec.rank, Some(preset.rank), "{}", preset.name);
            assert_eq!(spec.singleton, preset.singleton_replacements, "{}", preset.name);
        }
    }

    #[test]
    fn generous_budget_collapses_to_the_tiny_yes_instance() {
        let inst = random_planted_instance(4, 6, EdgeProbs::uniform(0.5), 4, 11);
        let caps = Caps::default();
        let out = kernelize(&inst, &ProblemPreset::by_name("perfect").unwrap(), &caps).unwrap();
        assert!(matches!(out.reduction, KernelReduction::TrivialYes));
        assert_eq!(out.instance.graph.vertex_count(), 0);
        assert_eq!(out.instance.budget, 0);
        let spec = PropertySpec::by_id(PropertyId::Perfect);
        let res = brute_force_decide(&out.instance, &spec, &caps).unwrap();
        assert!(res.feasible);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn size_bound_holds_on_every_run(seed in 0u64..1000, rounds in 1usize..4, c in 1usize..3) {
            let caps = Caps::default();
            let inst = random_planted_instance(4, 8, EdgeProbs::uniform(0.4), 2, seed);
            let (sub, trace) = reduce(&inst.graph, &inst.cover, rounds, c, &caps).unwrap();
            let coords = CoordinateIndex::enumerate(inst.cover.ids(), c, &caps).unwrap().len();
            prop_assert!(sub.graph.vertex_count() <= inst.cover.len() + rounds * coords);
            let mut seen = inst.cover.ids().to_vec();
            for r in &trace.rounds {
                prop_assert_eq!(r.kept.len(), r.rank);
                for &v in &r.kept {
                    prop_assert!(!seen.contains(&v));
                    seen.push(v);
                }
            }
            let mut expected: Vec<usize> = seen.clone();
            expected.sort_unstable();
            prop_assert_eq!(sub.old_ids(), &expected[..]);
        }

        #[test]
        fn reducing_the_output_again_removes_nothing(seed in 0u64..1000) {
            let caps = Caps::default();
            let inst = random_planted_instance(4, 8, EdgeProbs::uniform(0.4), 2, seed);
            let (sub, _) = reduce(&inst.graph, &inst.cover, 2, 2, &caps).unwrap();
            let new_cover: Vec<usize> =
                inst.cover.ids().iter().map(|&v| sub.new_id(v).unwrap()).collect();
            let cover2 = cert(&sub.graph, new_cover);
            let (sub2, trace2) = reduce(&sub.graph, &cover2, 2, 2, &caps).unwrap();
            prop_assert_eq!(sub2.graph.vertex_count(), sub.graph.vertex_count());
            prop_assert!(trace2.removed.is_empty());
        }

        #[test]
        fn extra_rounds_only_add_vertices(seed in 0u64..1000, rounds in 1usize..4) {
            let caps = Caps::default();
            let inst = random_planted_instance(4, 8, EdgeProbs::uniform(0.4), 2, seed);
            let (small, small_trace) = reduce(&inst.graph, &inst.cover, rounds, 2, &caps).unwrap();
            let (large, large_trace) = reduce(&inst.graph, &inst.cover, rounds + 1, 2, &caps).unwrap();
            for v in small.old_ids() {
                prop_assert!(large.old_ids().contains(v));
            }
            for (a, b) in small_trace.rounds.iter().zip(&large_trace.rounds) {
                prop_assert_eq!(&a.kept, &b.kept);
            }
        }

        #[test]
        fn kernel_preserves_the_answer(seed in 0u64..300) {
            let caps = Caps::default();
            let inst = random_planted_instance(4, 7, EdgeProbs::uniform(0.45), 1, seed);
            let preset = ProblemPreset::by_name("even-hole-free").unwrap();
            let out = kernelize(&inst, &preset, &caps).unwrap();
            let spec = PropertySpec::by_id(PropertyId::EvenHole);
            let before = brute_force_decide(&inst, &spec, &caps).unwrap();
            let after = brute_force_decide(&out.instance, &spec, &caps).unwrap();
            prop_assert_eq!(before.feasible, after.feasible);
        }
    }
}
