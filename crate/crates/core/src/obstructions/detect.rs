//! Exhaustive obstruction detectors: holes, anti-holes, wheels, and
//! asteroidal triples. Hole and wheel searches backtrack over induced
//! paths; asteroidal triples are found in polynomial time via component
//! labelling. All searches scan candidates in ascending id order, so the
//! first witness found is deterministic.

use crate::gf2::BitVec;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
    Any,
}

impl Parity {
    fn admits(self, len: usize) -> bool {
        match self {
            Parity::Odd => len % 2 == 1,
            Parity::Even => len.is_multiple_of(2),
            Parity::Any => true,
        }
    }
}

/// Backtracking search for a chordless cycle whose length satisfies
/// `allowed`, restricted to `scope` when given. The cycle is returned in
/// cyclic order starting at its minimum vertex.
pub(crate) fn find_chordless_cycle(
    g: &Graph,
    scope: Option<&BitVec>,
    allowed: &dyn Fn(usize) -> bool,
    max_len: usize,
) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let in_scope = |v: usize| scope.is_none_or(|s| s.get(v));
    let mut path = Vec::new();
    let mut in_path = BitVec::zeros(n);
    for start in (0..n).filter(|&v| in_scope(v)) {
        path.push(start);
        in_path.set(start, true);
        let banned = BitVec::zeros(n);
        if let Some(cycle) = extend(g, scope, allowed, max_len, &mut path, &mut in_path, &banned) {
            return Some(cycle);
        }
        in_path.set(start, false);
        path.pop();
    }
    None
}

/// `banned` holds the union of neighborhoods of the internal path vertices
/// path[1..k]; a candidate adjacent to any of them would create a chord.
/// Adjacency to path[0] is allowed only when it closes the cycle.
fn extend(
    g: &Graph,
    scope: Option<&BitVec>,
    allowed: &dyn Fn(usize) -> bool,
    max_len: usize,
    path: &mut Vec<usize>,
    in_path: &mut BitVec,
    banned: &BitVec,
) -> Option<Vec<usize>> {
    let start = path[0];
    let last = *path.last().unwrap();
    let k = path.len() - 1;
    for w in g.neighbor_ids(last) {
        if w <= start || in_path.get(w) || !scope.is_none_or(|s| s.get(w)) || banned.get(w) {
            continue;
        }
        if g.has_edge(w, start) {
            if k >= 1 && path[1] < w && allowed(k + 2) {
                let mut cycle = path.clone();
                cycle.push(w);
                return Some(cycle);
            }
            if k >= 1 {
                continue;
            }
        }
        if path.len() + 2 > max_len {
            continue;
        }
        let mut next_banned = banned.clone();
        if k >= 1 {
            for u in g.neighbor_ids(last) {
                next_banned.set(u, true);
            }
        }
        path.push(w);
        in_path.set(w, true);
        let found = extend(g, scope, allowed, max_len, path, in_path, &next_banned);
        in_path.set(w, false);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// First induced cycle of length at least `min_len` (which must be at
/// least 4) and the requested parity, in cyclic order.
pub fn has_hole(g: &Graph, parity: Parity, min_len: usize) -> Option<Vec<usize>> {
    assert!(min_len >= 4, "holes have at least 4 vertices");
    let allowed = move |len: usize| len >= min_len && parity.admits(len);
    find_chordless_cycle(g, None, &allowed, g.vertex_count())
}

/// Vertices inducing an odd anti-hole: their complement adjacency forms an
/// odd hole of length at least 5.
pub fn has_odd_antihole(g: &Graph) -> Option<Vec<usize>> {
    has_hole(&g.complement(), Parity::Odd, 5)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelWitness {
    pub hub: usize,
    pub rim: Vec<usize>,
}

impl WheelWitness {
    /// Hub plus rim as one vertex set.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v = vec![self.hub];
        v.extend_from_slice(&self.rim);
        v.sort_unstable();
        v
    }

    /// Size of the wheel, i.e. the rim length.
    pub fn size(&self) -> usize {
        self.rim.len()
    }
}

/// First induced wheel whose rim length satisfies `allowed_size`. The rim
/// is an induced cycle inside the hub's neighborhood.
pub fn has_wheel(g: &Graph, allowed_size: impl Fn(usize) -> bool) -> Option<WheelWitness> {
    for hub in 0..g.vertex_count() {
        let scope = g.neighbors(hub);
        let deg = scope.count_ones();
        if deg < 3 {
            continue;
        }
        let allowed = |len: usize| allowed_size(len);
        if let Some(rim) = find_chordless_cycle(g, Some(scope), &allowed, deg) {
            return Some(WheelWitness { hub, rim });
        }
    }
    None
}

/// Component label of every vertex in g - N[w]; vertices of N[w] get
/// `usize::MAX`.
fn components_without_closed_neighborhood(g: &Graph, w: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let removed = |v: usize| v == w || g.has_edge(v, w);
    let mut next = 0;
    for root in 0..n {
        if removed(root) || label[root] != usize::MAX {
            continue;
        }
        let mut stack = vec![root];
        label[root] = next;
        while let Some(u) = stack.pop() {
            for x in g.neighbor_ids(u) {
                if !removed(x) && label[x] == usize::MAX {
                    label[x] = next;
                    stack.push(x);
                }
            }
        }
        next += 1;
    }
    label
}

/// First asteroidal triple in ascending lexicographic order: three pairwise
/// non-adjacent vertices such that each pair is connected by a path
/// avoiding the closed neighborhood of the third.
pub fn has_at(g: &Graph) -> Option<[usize; 3]> {
    let n = g.vertex_count();
    let labels: Vec<Vec<usize>> = (0..n).map(|w| components_without_closed_neighborhood(g, w)).collect();
    let linked = |a: usize, b: usize, avoid: usize| {
        labels[avoid][a] != usize::MAX && labels[avoid][a] == labels[avoid][b]
    };
    for a in 0..n {
        for b in (a + 1)..n {
            if g.has_edge(a, b) {
                continue;
            }
            for c in (b + 1)..n {
                if g.has_edge(a, c) || g.has_edge(b, c) {
                    continue;
                }
                if linked(a, b, c) && linked(a, c, b) && linked(b, c, a) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Definitional re-check of a cycle witness: all vertices distinct,
/// consecutive pairs adjacent, all other pairs non-adjacent.
pub fn verify_chordless_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = cycle.len();
    if n < 3 {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != n || sorted.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let consecutive = j == i + 1 || (i == 0 && j == n - 1);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

pub fn verify_hole(g: &Graph, cycle: &[usize], parity: Parity, min_len: usize) -> bool {
    cycle.len() >= min_len && parity.admits(cycle.len()) && verify_chordless_cycle(g, cycle)
}

pub fn verify_wheel(g: &Graph, w: &WheelWitness, allowed_size: impl Fn(usize) -> bool) -> bool {
    allowed_size(w.rim.len())
        && w.hub < g.vertex_count()
        && !w.rim.contains(&w.hub)
        && verify_chordless_cycle(g, &w.rim)
        && w.rim.iter().all(|&v| g.has_edge(w.hub, v))
}

/// Definitional re-check of an asteroidal triple, via breadth-first path
/// search rather than the detector's component labels.
pub fn verify_at(g: &Graph, triple: &[usize; 3]) -> bool {
    let [a, b, c] = *triple;
    let n = g.vertex_count();
    if a >= n || b >= n || c >= n || a == b || a == c || b == c {
        return false;
    }
    if g.has_edge(a, b) || g.has_edge(a, c) || g.has_edge(b, c) {
        return false;
    }
    let reachable = |from: usize, to: usize, avoid: usize| {
        if from == avoid || g.has_edge(from, avoid) || g.has_edge(to, avoid) {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::from([from]);
        seen[from] = true;
        while let Some(u) = queue.pop_front() {
            if u == to {
                return true;
            }
            for x in g.neighbor_ids(u) {
                if !seen[x] && x != avoid && !g.has_edge(x, avoid) {
                    seen[x] = true;
                    queue.push_back(x);
                }
            }
        }
        false
    };
    reachable(a, b, c) && reachable(a, c, b) && reachable(b, c, a)
}
