//! Two executable negative results for almost-wheel-free deletion: a
//! CNF-SAT transformation whose output keeps a small vertex cover, and a
//! cycle-plus-subset-vertices family on which no bounded-rank replacement
//! rule can be sound. Both come with verifiers that re-check the claimed
//! facts from scratch.

use crate::caps::Caps;
use crate::error::{invalid, parse_err, resource, Result};
use crate::graph::{DeletionInstance, Graph};
use crate::incidence::{self, CoordinateIndex};
use crate::obstructions::{PropertyId, PropertySpec};
use crate::solver::{brute_force_decide_with, SearchMode};
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

/// A CNF formula over variables `1..=variables`. Positive literal `q`
/// means the variable, negative means its negation. Construction
/// normalizes every clause: duplicate literals collapse and clauses
/// holding a variable together with its negation are dropped as always
/// satisfied. Empty clauses survive and make the formula unsatisfiable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CnfFormula {
    variables: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(variables: usize, clauses: impl IntoIterator<Item = Vec<i32>>) -> Result<CnfFormula> {
        let mut kept = Vec::new();
        for mut clause in clauses {
            for &lit in &clause {
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > variables {
                    return Err(invalid(format!(
                        "literal {lit} is outside the variable range 1..={variables}"
                    )));
                }
            }
            clause.sort_unstable_by_key(|l| (l.unsigned_abs(), l.is_negative()));
            clause.dedup();
            if clause.windows(2).any(|w| w[0] == -w[1]) {
                continue;
            }
            kept.push(clause);
        }
        Ok(CnfFormula { variables, clauses: kept })
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Evaluates under the assignment where bit `i` of `mask` gives the
    /// value of variable `i+1`.
    pub fn evaluate(&self, mask: u64) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let set = mask >> (lit.unsigned_abs() - 1) & 1 == 1;
                (lit > 0) == set
            })
        })
    }

    /// Exhaustive search over all 2^n assignments; the caller is expected
    /// to keep `variables` small.
    pub fn satisfying_assignment(&self) -> Option<Vec<bool>> {
        assert!(self.variables < 64);
        (0..1u64 << self.variables)
            .find(|&mask| self.evaluate(mask))
            .map(|mask| (0..self.variables).map(|i| mask >> i & 1 == 1).collect())
    }
}

/// Parses DIMACS CNF: comment lines start with `c`, a `p cnf <vars>
/// <clauses>` header precedes the clause tokens, and every clause is a
/// zero-terminated run of literals. The declared clause count must match.
/// A nonempty trailing clause without its zero is accepted.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(parse_err(line_no, "second `p` header"));
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let ["p", "cnf", vars, count] = tokens.as_slice() else {
                return Err(parse_err(line_no, "header must be `p cnf <vars> <clauses>`"));
            };
            let vars = vars
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad variable count `{vars}`")))?;
            let count = count
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad clause count `{count}`")))?;
            header = Some((vars, count));
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(parse_err(line_no, "clause data before `p cnf` header"));
        };
        for token in line.split_whitespace() {
            let lit: i32 = token
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad literal `{token}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(parse_err(
                    line_no,
                    format!("literal {lit} exceeds the declared {vars} variables"),
                ));
            } else {
                current.push(lit);
            }
        }
    }
    let Some((vars, count)) = header else {
        return Err(parse_err(0, "missing `p cnf` header"));
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(parse_err(
            0,
            format!("header declares {count} clauses but {} were read", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses)
}

/// The deletion instance produced from a formula, with the gadget layout
/// exposed so verifiers can address vertices by role. Formulas with at
/// most 4 variables are decided outright and collapse to a constant
/// instance whose role maps are all empty.
#[derive(Clone, Debug)]
pub struct HardnessInstance {
    pub instance: DeletionInstance,
    /// Per variable, the ids of the vertex pair standing for the positive
    /// and the negative literal.
    pub literal_pairs: Vec<(usize, usize)>,
    /// Per variable, the n+1 pairs completing its triangle gadgets.
    pub triangle_pairs: Vec<Vec<(usize, usize)>>,
    /// Per clause, the id of its vertex.
    pub clause_vertices: Vec<usize>,
}

impl HardnessInstance {
    pub fn is_constant_branch(&self) -> bool {
        self.literal_pairs.is_empty()
    }

    /// The deletion set corresponding to a truth assignment: the positive
    /// literal vertex of every variable set in `mask`, the negative one of
    /// every other variable.
    pub fn assignment_deletion(&self, mask: u64) -> Vec<usize> {
        self.literal_pairs
            .iter()
            .enumerate()
            .map(|(i, &(pos, neg))| if mask >> i & 1 == 1 { pos } else { neg })
            .collect()
    }
}

/// Transforms a formula into an equivalent almost-wheel-free deletion
/// instance with budget n. Formulas on more than 4 variables get the full
/// gadget graph: literal pairs joined level to level in a thickened
/// cycle, n+1 triangle gadgets per variable so no budget can clear a
/// variable's gadgets without deleting a literal vertex, and one vertex
/// per clause adjacent to the literal vertices that falsify it. Small
/// formulas are decided directly and map to a fixed yes or no instance.
pub fn cnf_to_awfd(f: &CnfFormula, caps: &Caps) -> Result<HardnessInstance> {
    let n = f.variables();
    let m = f.clauses().len();
    let empty_maps = |instance| HardnessInstance {
        instance,
        literal_pairs: Vec::new(),
        triangle_pairs: Vec::new(),
        clause_vertices: Vec::new(),
    };
    if n <= 4 {
        return Ok(if f.satisfying_assignment().is_some() {
            empty_maps(DeletionInstance::new(Graph::empty(0), [], 0)?)
        } else {
            let w3 = Graph::wheel(3)?;
            let all = 0..w3.vertex_count();
            empty_maps(DeletionInstance::new(w3, all, 0)?)
        });
    }
    let cover_size = 2 * n + 2 * n * (n + 1);
    let total = cover_size + m;
    if total > caps.construction_vertices {
        return Err(resource(format!(
            "transformed instance needs {total} vertices, cap is {}",
            caps.construction_vertices
        )));
    }
    let pos = |i: usize| 2 * i;
    let neg = |i: usize| 2 * i + 1;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut triangle_pairs = vec![Vec::with_capacity(n + 1); n];
    for (i, pairs) in triangle_pairs.iter_mut().enumerate() {
        edges.push((pos(i), neg(i)));
        let next = (i + 1) % n;
        edges.push((pos(i), pos(next)));
        edges.push((pos(i), neg(next)));
        edges.push((neg(i), pos(next)));
        edges.push((neg(i), neg(next)));
        for j in 0..=n {
            let u = 2 * n + 2 * (i * (n + 1) + j);
            let w = u + 1;
            pairs.push((u, w));
            edges.push((u, w));
            edges.push((u, pos(i)));
            edges.push((u, neg(i)));
            edges.push((w, pos(i)));
            edges.push((w, neg(i)));
        }
    }
    let mut clause_vertices = Vec::with_capacity(m);
    for (t, clause) in f.clauses().iter().enumerate() {
        let c = cover_size + t;
        clause_vertices.push(c);
        let mut present = vec![false; n];
        for &lit in clause {
            let i = lit.unsigned_abs() as usize - 1;
            present[i] = true;
            edges.push((c, if lit > 0 { pos(i) } else { neg(i) }));
        }
        for (i, covered) in present.into_iter().enumerate() {
            if !covered {
                edges.push((c, pos(i)));
                edges.push((c, neg(i)));
            }
        }
    }
    let graph = Graph::from_edges(total, edges)?;
    debug_assert!(clause_vertices
        .iter()
        .all(|&c| graph.neighbor_ids(c).into_iter().all(|v| v < 2 * n)));
    let instance = DeletionInstance::new(graph, 0..cover_size, n)?;
    Ok(HardnessInstance {
        instance,
        literal_pairs: (0..n).map(|i| (pos(i), neg(i))).collect(),
        triangle_pairs,
        clause_vertices,
    })
}

/// Outcome of checking a formula against its transformed instance.
#[derive(Clone, Debug, Serialize)]
pub struct PptReport {
    pub variables: usize,
    pub clauses: usize,
    pub constant_branch: bool,
    pub assignments: u64,
    pub satisfiable: bool,
    pub deletion_feasible: bool,
    /// The transformation is answer-preserving on this formula.
    pub agree: bool,
    pub satisfying_assignment: Option<Vec<bool>>,
    pub deletion_set: Option<Vec<usize>>,
}

pub fn verify_ppt(f: &CnfFormula, caps: &Caps) -> Result<PptReport> {
    verify_ppt_with(f, caps, false)
}

/// Compares exhaustive satisfiability of `f` with feasibility of the
/// transformed instance. Feasibility is decided by scanning the 2^n
/// assignment-shaped deletion sets; any feasible set must have that shape
/// because each variable carries more triangle gadgets than the budget.
/// With `audit` set, the instance is additionally solved by plain
/// enumeration over all vertex subsets, which only tiny instances (the
/// constant branch) fit through; a disagreement is an error.
pub fn verify_ppt_with(f: &CnfFormula, caps: &Caps, audit: bool) -> Result<PptReport> {
    let n = f.variables();
    if n >= 64 || n > caps.subset {
        return Err(resource(format!(
            "verification enumerates 2^{n} assignments, cap is 2^{}",
            caps.subset
        )));
    }
    let hi = cnf_to_awfd(f, caps)?;
    let masks = 1u64 << n;
    let sat_mask = (0..masks).into_par_iter().find_first(|&mask| f.evaluate(mask));
    let spec = PropertySpec::by_id(PropertyId::AlmostWheel);
    let (feasible_mask, deletion_set) = if hi.is_constant_branch() {
        let res = brute_force_decide_with(&hi.instance, &spec, caps, SearchMode::WitnessPruned)?;
        (res.feasible.then_some(0), res.solution)
    } else {
        let hit = (0..masks).into_par_iter().find_first(|&mask| {
            let removed = hi.assignment_deletion(mask);
            let rest = hi.instance.graph.without(&removed).expect("ids are in range");
            !spec.contains(&rest.graph)
        });
        (hit, hit.map(|mask| hi.assignment_deletion(mask)))
    };
    if audit {
        let full =
            brute_force_decide_with(&hi.instance, &spec, caps, SearchMode::FullEnumeration)?;
        if full.feasible != feasible_mask.is_some() {
            return Err(invalid(
                "assignment-shaped search and full enumeration disagree on feasibility",
            ));
        }
    }
    let report = PptReport {
        variables: n,
        clauses: f.clauses().len(),
        constant_branch: hi.is_constant_branch(),
        assignments: masks,
        satisfiable: sat_mask.is_some(),
        deletion_feasible: feasible_mask.is_some(),
        agree: sat_mask.is_some() == feasible_mask.is_some(),
        satisfying_assignment: sat_mask
            .map(|mask| (0..n).map(|i| mask >> i & 1 == 1).collect()),
        deletion_set,
    };
    Ok(report)
}

/// A graph on which deleting everything outside a target vertex cannot be
/// justified by any rank-`rank` replacement: the incidence sum premise
/// holds, removing all of `dependents` leaves a big wheel, yet removing
/// the apex alone leaves a graph where no vertex can ever center a
/// forbidden wheel, so no replacement subset works.
#[derive(Clone, Debug)]
pub struct RankCounterexample {
    pub rank: usize,
    /// Exponent giving the sizes: the cycle has 2^index - 1 vertices and
    /// dependent neighborhoods have 2^(index-1) - 1.
    pub index: u32,
    pub cycle_len: usize,
    pub subset_size: usize,
    pub graph: Graph,
    pub cycle: Vec<usize>,
    pub apex: usize,
    pub dependents: Vec<usize>,
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    acc
}

/// Builds the counterexample for the given rank: an odd cycle of length
/// 2^i - 1 (smallest i making the neighborhood size 2^(i-1) - 1 exceed
/// the rank), an apex adjacent to the whole cycle, and one independent
/// vertex per subset of that size. The all-ones binary shape of both
/// numbers makes every coordinate count odd exactly when its avoided set
/// is empty, which is what the sum identity needs.
pub fn rank_counterexample(rank: usize, caps: &Caps) -> Result<RankCounterexample> {
    if rank == 0 {
        return Err(invalid("rank must be at least 1"));
    }
    let index = (1u32..)
        .find(|i| {
            (1u128 << (i - 1)) - 1 > rank as u128
        })
        .unwrap();
    let cycle_len = (1usize << index) - 1;
    let subset_size = (1usize << (index - 1)) - 1;
    let d_count = binomial(cycle_len, subset_size);
    let total = cycle_len as u128 + 1 + d_count;
    if total > caps.construction_vertices as u128 {
        return Err(resource(format!(
            "counterexample for rank {rank} needs {total} vertices, cap is {}",
            caps.construction_vertices
        )));
    }
    let total = total as usize;
    let apex = cycle_len;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for j in 0..cycle_len {
        edges.push((j, (j + 1) % cycle_len));
        edges.push((j, apex));
    }
    let mut dependents = Vec::with_capacity(d_count as usize);
    for (t, subset) in (0..cycle_len).combinations(subset_size).enumerate() {
        let d = apex + 1 + t;
        dependents.push(d);
        for j in subset {
            edges.push((d, j));
        }
    }
    Ok(RankCounterexample {
        rank,
        index,
        cycle_len,
        subset_size,
        graph: Graph::from_edges(total, edges)?,
        cycle: (0..cycle_len).collect(),
        apex,
        dependents,
    })
}

/// The three facts that make a `RankCounterexample` verdict stick.
#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub rank: usize,
    pub cycle_len: usize,
    /// The apex vector equals the sum of the dependent vectors.
    pub sum_identity: bool,
    /// Removing every dependent leaves a forbidden wheel.
    pub removal_in_property: bool,
    /// Removing the apex leaves no forbidden wheel; together with
    /// heredity this rules out every replacement subset at once.
    pub apexless_clean: bool,
    pub confirmed: bool,
}

pub fn verify_counterexample(ce: &RankCounterexample, caps: &Caps) -> Result<CounterexampleReport> {
    let idx = CoordinateIndex::enumerate(&ce.cycle, ce.rank, caps)?;
    let sum_identity = incidence::check_sum(&ce.graph, &idx, ce.apex, &ce.dependents)?;
    let spec = PropertySpec::by_id(PropertyId::AlmostWheel);
    let removal = ce.graph.without(&ce.dependents)?;
    let removal_in_property = spec.contains(&removal.graph);
    let apexless = ce.graph.without(&[ce.apex])?;
    let apexless_clean = !spec.contains(&apexless.graph);
    Ok(CounterexampleReport {
        rank: ce.rank,
        cycle_len: ce.cycle_len,
        sum_identity,
        removal_in_property,
        apexless_clean,
        confirmed: sum_identity && removal_in_property && apexless_clean,
    })
}
