//! Exhaustive deletion solver and minimal-witness extraction. Both walk
//! candidate vertex sets in a fixed order (size, then lexicographic), so
//! answers are deterministic and first hits are optimal respectively
//! minimal. Exponential by nature; hard caps keep runs at desk scale.

use crate::caps::Caps;
use crate::error::{resource, Result};
use crate::graph::{DeletionInstance, Graph};
use crate::obstructions::PropertySpec;
use itertools::Itertools;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SolveResult {
    pub feasible: bool,
    /// Lexicographically first deletion set of minimum size, when feasible.
    pub solution: Option<Vec<usize>>,
    /// Minimum number of deletions, when feasible within the budget.
    pub optimum: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Skip candidate sets that miss an obstruction found earlier in the
    /// run; survivors are still confirmed by a full detector pass, so
    /// pruning affects speed only.
    WitnessPruned,
    /// Try every candidate set, for audits of the pruned path.
    FullEnumeration,
}

/// Decides whether deleting at most `inst.budget` vertices can destroy
/// every obstruction. Scans deletion sets by increasing size, so the first
/// feasible set found has minimum size.
pub fn brute_force_decide(
    inst: &DeletionInstance,
    p: &PropertySpec,
    caps: &Caps,
) -> Result<SolveResult> {
    brute_force_decide_with(inst, p, caps, SearchMode::WitnessPruned)
}

pub fn brute_force_decide_with(
    inst: &DeletionInstance,
    p: &PropertySpec,
    caps: &Caps,
    mode: SearchMode,
) -> Result<SolveResult> {
    let n = inst.graph.vertex_count();
    if n > caps.solver_vertices {
        return Err(resource(format!(
            "instance has {n} vertices, solver cap is {}",
            caps.solver_vertices
        )));
    }
    if inst.budget > caps.solver_budget {
        return Err(resource(format!(
            "budget {} exceeds solver cap {}",
            inst.budget,
            caps.solver_budget
        )));
    }
    let mut known_witnesses: Vec<Vec<usize>> = Vec::new();
    for size in 0..=inst.budget.min(n) {
        for s in (0..n).combinations(size) {
            if mode == SearchMode::WitnessPruned
                && known_witnesses.iter().any(|w| w.iter().all(|v| !s.contains(v)))
            {
                continue;
            }
            let rest = inst.graph.without(&s)?;
            match p.witness(&rest.graph) {
                None => {
                    return Ok(SolveResult {
                        feasible: true,
                        optimum: Some(s.len()),
                        solution: Some(s),
                    });
                }
                Some(w) => known_witnesses.push(rest.map_to_old(&w)),
            }
        }
    }
    Ok(SolveResult { feasible: false, solution: None, optimum: None })
}

/// Vertex-minimal set P with g[P] containing an obstruction, or `None`
/// for obstruction-free graphs. Among all such P the result minimizes
/// |P \ prefer_inside| first, then |P|, then compares lexicographically.
/// Minimality is inherent in the scan order: every proper subset of a
/// candidate sorts strictly earlier and was already rejected. Graphs with
/// more than `caps.subset` vertices are refused.
pub fn min_witness(
    g: &Graph,
    p: &PropertySpec,
    prefer_inside: &[usize],
    caps: &Caps,
) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    if n > caps.subset {
        return Err(resource(format!(
            "minimal witness search over {n} vertices exceeds cap {}",
            caps.subset
        )));
    }
    if !p.contains(g) {
        return Ok(None);
    }
    let outside: Vec<usize> = (0..n).filter(|v| !prefer_inside.contains(v)).collect();
    for out_count in 0..=outside.len() {
        for size in out_count..=out_count + (n - outside.len()) {
            for s in (0..n).combinations(size) {
                if s.iter().filter(|v| outside.contains(v)).count() != out_count {
                    continue;
                }
                if p.contains(&g.induced(&s)?.graph) {
                    debug_assert!(is_vertex_minimal(g, p, &s));
                    return Ok(Some(s));
                }
            }
        }
    }
    unreachable!("the full vertex set contains an obstruction");
}

fn is_vertex_minimal(g: &Graph, p: &PropertySpec, s: &[usize]) -> bool {
    (0..s.len()).all(|i| {
        let mut smaller = s.to_vec();
        smaller.remove(i);
        !p.contains(&g.induced(&smaller).unwrap().graph)
    })
}
