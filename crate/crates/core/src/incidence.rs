//! Incidence vectors over GF(2).
//!
//! For a vertex u outside a cover X, the incidence vector has one entry per
//! pair (Q, R) of disjoint subsets of X with |Q| + |R| <= c; the entry is 1
//! exactly when u has no neighbor in Q and all of R among its neighbors.
//! Coordinates are enumerated once per (X, c) and shared by reference.

use itertools::Itertools;

use crate::caps::Caps;
use crate::error::{invalid, resource, Result};
use crate::gf2::BitVec;
use crate::graph::Graph;

/// One coordinate: sorted cover positions of Q and of R.
#[derive(Debug)]
struct Coord {
    q: Box<[u16]>,
    r: Box<[u16]>,
}

/// The ordered coordinate list for a cover and rank bound. Order is
/// ascending |Q| + |R|, then lexicographic on the sorted union, then the
/// mask sending union elements to R; coordinate 0 is always (empty, empty).
#[derive(Debug)]
pub struct CoordinateIndex {
    cover_ids: Vec<usize>,
    rank_bound: usize,
    coords: Vec<Coord>,
}

/// Closed-form coordinate count: sum over s of C(x, s) * 2^s. `None` when
/// the value overflows u128.
pub fn coordinate_count(cover_size: usize, rank_bound: usize) -> Option<u128> {
    let mut total: u128 = 0;
    for s in 0..=rank_bound.min(cover_size) {
        let mut binom: u128 = 1;
        for i in 0..s {
            binom = binom.checked_mul((cover_size - i) as u128)? / (i as u128 + 1);
        }
        total = total.checked_add(binom.checked_mul(1u128.checked_shl(s as u32)?)?)?;
    }
    Some(total)
}

impl CoordinateIndex {
    pub fn enumerate(cover: &[usize], rank_bound: usize, caps: &Caps) -> Result<Self> {
        let mut cover_ids = cover.to_vec();
        cover_ids.sort_unstable();
        cover_ids.dedup();
        if cover_ids.len() > u16::MAX as usize {
            return Err(resource(format!("cover of {} vertices is too large", cover_ids.len())));
        }
        let expected = coordinate_count(cover_ids.len(), rank_bound)
            .filter(|&n| n <= caps.coords as u128)
            .ok_or_else(|| {
                resource(format!(
                    "coordinate count for cover size {} at rank bound {rank_bound} exceeds cap {}",
                    cover_ids.len(),
                    caps.coords
                ))
            })?;
        let x = cover_ids.len() as u16;
        let mut coords = Vec::with_capacity(expected as usize);
        for s in 0..=rank_bound.min(cover_ids.len()) {
            for union in (0..x).combinations(s) {
                for mask in 0u64..(1 << s) {
                    let (mut q, mut r) = (Vec::new(), Vec::new());
                    for (bit, &pos) in union.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            r.push(pos);
                        } else {
                            q.push(pos);
                        }
                    }
                    coords.push(Coord { q: q.into(), r: r.into() });
                }
            }
        }
        debug_assert_eq!(coords.len() as u128, expected);
        Ok(CoordinateIndex { cover_ids, rank_bound, coords })
    }

    /// Cover vertex ids in ascending order.
    pub fn cover_ids(&self) -> &[usize] {
        &self.cover_ids
    }

    pub fn rank_bound(&self) -> usize {
        self.rank_bound
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// The (Q, R) pair of coordinate `i`, as vertex ids.
    pub fn coord_sets(&self, i: usize) -> (Vec<usize>, Vec<usize>) {
        let c = &self.coords[i];
        (
            c.q.iter().map(|&p| self.cover_ids[p as usize]).collect(),
            c.r.iter().map(|&p| self.cover_ids[p as usize]).collect(),
        )
    }

    fn positions_of(&self, ids: &[usize], what: &str) -> Result<Vec<u16>> {
        let mut out = Vec::with_capacity(ids.len());
        for &v in ids {
            let p = self
                .cover_ids
                .binary_search(&v)
                .map_err(|_| invalid(format!("{what} vertex {v} is not in the cover")))?;
            out.push(p as u16);
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid(format!("{what} set has duplicate vertices")));
        }
        Ok(out)
    }

    /// Position of (q, r) in canonical order, or `None` if it is not a
    /// coordinate of this index.
    pub fn position(&self, q: &[usize], r: &[usize]) -> Option<usize> {
        let qp = self.positions_of(q, "Q").ok()?;
        let rp = self.positions_of(r, "R").ok()?;
        if qp.iter().any(|p| rp.contains(p)) {
            return None;
        }
        let key = canonical_key(&qp, &rp);
        self.coords
            .binary_search_by(|c| canonical_key(&c.q, &c.r).cmp(&key))
            .ok()
    }

    fn cover_mask(&self, n: usize) -> Result<BitVec> {
        let mut mask = BitVec::zeros(n);
        for &v in &self.cover_ids {
            if v >= n {
                return Err(invalid(format!("cover vertex {v} exceeds vertex count {n}")));
            }
            mask.set(v, true);
        }
        Ok(mask)
    }
}

fn canonical_key(q: &[u16], r: &[u16]) -> (usize, Vec<u16>, u64) {
    let mut union: Vec<u16> = q.iter().chain(r.iter()).copied().collect();
    union.sort_unstable();
    let mask = union
        .iter()
        .enumerate()
        .filter(|(_, p)| r.contains(p))
        .fold(0u64, |m, (bit, _)| m | 1 << bit);
    (union.len(), union, mask)
}

/// Scope of a projected vector: the (Q', R') it was restricted to, as
/// sorted vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionScope {
    pub q: Vec<usize>,
    pub r: Vec<usize>,
}

/// An incidence vector, either over the full coordinate list or projected
/// onto the coordinates extending some (Q', R').
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IncVector {
    bits: BitVec,
    scope: Option<ProjectionScope>,
}

impl IncVector {
    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn scope(&self) -> Option<&ProjectionScope> {
        self.scope.as_ref()
    }

    /// XOR with a vector over the same coordinates.
    pub fn xor_assign(&mut self, other: &IncVector) -> Result<()> {
        if self.scope != other.scope || self.bits.len() != other.bits.len() {
            return Err(invalid("cannot combine vectors over different coordinate scopes"));
        }
        self.bits.xor_assign(&other.bits);
        Ok(())
    }
}

impl std::fmt::Display for IncVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.bits)
    }
}

/// The incidence vector of `u`, which must lie outside the cover and have
/// all its neighbors inside it.
pub fn inc_vector(g: &Graph, idx: &CoordinateIndex, u: usize) -> Result<IncVector> {
    let n = g.vertex_count();
    if u >= n {
        return Err(invalid(format!("vertex {u} exceeds vertex count {n}")));
    }
    let mask = idx.cover_mask(n)?;
    if mask.get(u) {
        return Err(invalid(format!("vertex {u} is in the cover; incidence vectors are defined only outside it")));
    }
    let nb = g.neighbors(u);
    if !nb.is_subset_of(&mask) {
        return Err(invalid(format!("vertex {u} has a neighbor outside the cover")));
    }
    let mut bits = BitVec::zeros(idx.coords.len());
    for (i, coord) in idx.coords.iter().enumerate() {
        let hit = coord.q.iter().all(|&p| !nb.get(idx.cover_ids[p as usize]))
            && coord.r.iter().all(|&p| nb.get(idx.cover_ids[p as usize]));
        if hit {
            bits.set(i, true);
        }
    }
    Ok(IncVector { bits, scope: None })
}

/// Restriction of a full vector to the coordinates (Q, R) with `q` a subset
/// of Q and `r` a subset of R, in canonical order.
pub fn project(idx: &CoordinateIndex, vec: &IncVector, q: &[usize], r: &[usize]) -> Result<IncVector> {
    if vec.scope.is_some() {
        return Err(invalid("cannot project an already-projected vector"));
    }
    if vec.bits.len() != idx.coords.len() {
        return Err(invalid("vector does not belong to this coordinate index"));
    }
    let qp = idx.positions_of(q, "Q")?;
    let rp = idx.positions_of(r, "R")?;
    if qp.iter().any(|p| rp.contains(p)) {
        return Err(invalid("projection sets Q and R intersect"));
    }
    if qp.len() + rp.len() > idx.rank_bound {
        return Err(invalid(format!(
            "projection size {} exceeds rank bound {}",
            qp.len() + rp.len(),
            idx.rank_bound
        )));
    }
    let is_subset = |small: &[u16], big: &[u16]| small.iter().all(|p| big.contains(p));
    let kept: Vec<usize> = (0..idx.coords.len())
        .filter(|&i| is_subset(&qp, &idx.coords[i].q) && is_subset(&rp, &idx.coords[i].r))
        .collect();
    let mut bits = BitVec::zeros(kept.len());
    for (new, &old) in kept.iter().enumerate() {
        if vec.bits.get(old) {
            bits.set(new, true);
        }
    }
    let scope = ProjectionScope {
        q: qp.iter().map(|&p| idx.cover_ids[p as usize]).collect(),
        r: rp.iter().map(|&p| idx.cover_ids[p as usize]).collect(),
    };
    Ok(IncVector { bits, scope: Some(scope) })
}

fn checked_outside_set(idx: &CoordinateIndex, target: usize, d: &[usize]) -> Result<Vec<usize>> {
    let mut set = d.to_vec();
    set.sort_unstable();
    if set.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid("deletion set has duplicate vertices"));
    }
    if set.binary_search(&target).is_ok() {
        return Err(invalid(format!("target vertex {target} is in the set")));
    }
    if idx.cover_ids.binary_search(&target).is_ok() {
        return Err(invalid(format!("target vertex {target} is in the cover")));
    }
    if let Some(&v) = set.iter().find(|&&v| idx.cover_ids.binary_search(&v).is_ok()) {
        return Err(invalid(format!("set vertex {v} is in the cover")));
    }
    Ok(set)
}

/// Whether the incidence vectors of `d` XOR to the incidence vector of
/// `target`. The sum is accumulated one vector at a time.
pub fn check_sum(g: &Graph, idx: &CoordinateIndex, target: usize, d: &[usize]) -> Result<bool> {
    let set = checked_outside_set(idx, target, d)?;
    let mut acc = BitVec::zeros(idx.coords.len());
    for &u in &set {
        acc.xor_assign(&inc_vector(g, idx, u)?.bits);
    }
    Ok(acc == inc_vector(g, idx, target)?.bits)
}

/// The members of `d` whose adjacency into `s` matches the target's
/// exactly. Requires the incidence sum premise to hold.
pub fn adjacency_share_subset(
    g: &Graph,
    idx: &CoordinateIndex,
    target: usize,
    d: &[usize],
    s: &[usize],
) -> Result<Vec<usize>> {
    if s.len() > idx.rank_bound {
        return Err(invalid(format!(
            "share set of size {} exceeds rank bound {}",
            s.len(),
            idx.rank_bound
        )));
    }
    let n = g.vertex_count();
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&v) = s.iter().find(|&&v| v >= n) {
        return Err(invalid(format!("share vertex {v} exceeds vertex count {n}")));
    }
    if !check_sum(g, idx, target, d)? {
        return Err(invalid("incidence sum premise does not hold"));
    }
    let matches = |u: usize| s.iter().all(|&x| g.has_edge(u, x) == g.has_edge(target, x));
    let mut share: Vec<usize> = d.iter().copied().filter(|&u| matches(u)).collect();
    share.sort_unstable();
    Ok(share)
}
