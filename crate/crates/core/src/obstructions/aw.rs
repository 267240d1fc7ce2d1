//! Asteroidal witness constructors: three gadget families built around an
//! induced path b_0..b_{z+1} whose outer vertices, together with a top
//! vertex riding on the center(s), form an asteroidal triple.

use super::detect::verify_at;
use crate::error::{invalid, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AwKind {
    /// Single center adjacent to the inner path vertices, top pendant on it.
    Dagger,
    /// Two adjacent centers, both adjacent to the inner path and the top.
    DoubleDagger,
    /// Like the double dagger but without the edge between the centers.
    Diamond,
}

impl AwKind {
    pub const ALL: [AwKind; 3] = [AwKind::Dagger, AwKind::DoubleDagger, AwKind::Diamond];

    pub fn id(self) -> &'static str {
        match self {
            AwKind::Dagger => "dagger",
            AwKind::DoubleDagger => "double-dagger",
            AwKind::Diamond => "diamond",
        }
    }
}

impl std::str::FromStr for AwKind {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<AwKind> {
        AwKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| invalid(format!("unknown asteroidal witness kind {s:?}; expected dagger, double-dagger, or diamond")))
    }
}

impl std::fmt::Display for AwKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// Vertex roles inside a constructed asteroidal witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AwLabels {
    pub kind: AwKind,
    pub z: usize,
    /// Left end of the base path (b_0).
    pub terminal_left: usize,
    /// Right end of the base path (b_{z+1}).
    pub terminal_right: usize,
    /// Top vertex.
    pub terminal_top: usize,
    /// One center for dagger, two otherwise.
    pub centers: Vec<usize>,
    /// Inner path vertices b_1..b_z.
    pub base: Vec<usize>,
}

impl AwLabels {
    pub fn terminals(&self) -> [usize; 3] {
        [self.terminal_left, self.terminal_right, self.terminal_top]
    }
}

/// Builds the asteroidal witness of the given kind.
///
/// Vertices are numbered b_0 = 0, b_1..b_z = 1..z, b_{z+1} = z+1, top
/// = z+2, centers from z+3. Requires z at least 2: for smaller z the outer
/// path vertices have their single neighbor inside the closed neighborhood
/// of the opposite terminal, so no asteroidal triple exists.
pub fn make_aw(kind: AwKind, z: usize) -> Result<(Graph, AwLabels)> {
    if z < 2 {
        return Err(invalid(format!("{kind} witness needs z at least 2, got {z}")));
    }
    let t_l = 0;
    let t_r = z + 1;
    let t = z + 2;
    let centers: Vec<usize> = match kind {
        AwKind::Dagger => vec![z + 3],
        AwKind::DoubleDagger | AwKind::Diamond => vec![z + 3, z + 4],
    };
    let mut g = Graph::empty(z + 3 + centers.len());
    for i in 1..=z + 1 {
        g.add_edge(i - 1, i)?;
    }
    for &c in &centers {
        g.add_edge(t, c)?;
        for b in 1..=z {
            g.add_edge(c, b)?;
        }
    }
    if kind == AwKind::DoubleDagger {
        g.add_edge(centers[0], centers[1])?;
    }
    let labels = AwLabels {
        kind,
        z,
        terminal_left: t_l,
        terminal_right: t_r,
        terminal_top: t,
        centers,
        base: (1..=z).collect(),
    };
    debug_assert!(verify_at(&g, &labels.terminals()));
    Ok((g, labels))
}

/// Union of the terminals and shortest pairwise connecting paths of an
/// asteroidal triple, each path avoiding the closed neighborhood of the
/// remaining terminal. The induced subgraph on the result still contains
/// the triple.
pub fn at_connecting_set(g: &Graph, triple: &[usize; 3]) -> Option<Vec<usize>> {
    let path = |from: usize, to: usize, avoid: usize| -> Option<Vec<usize>> {
        let n = g.vertex_count();
        let blocked = |v: usize| v == avoid || g.has_edge(v, avoid);
        if blocked(from) || blocked(to) {
            return None;
        }
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::from([from]);
        parent[from] = from;
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut out = vec![to];
                let mut v = to;
                while v != from {
                    v = parent[v];
                    out.push(v);
                }
                return Some(out);
            }
            for x in g.neighbor_ids(u) {
                if parent[x] == usize::MAX && !blocked(x) {
                    parent[x] = u;
                    queue.push_back(x);
                }
            }
        }
        None
    };
    let [a, b, c] = *triple;
    let mut set = path(a, b, c)?;
    set.extend(path(a, c, b)?);
    set.extend(path(b, c, a)?);
    set.sort_unstable();
    set.dedup();
    Some(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstructions::detect::has_at;

    #[test]
    fn witnesses_have_the_advertised_shape() {
        for z in 2..=5 {
            let (g, l) = make_aw(AwKind::Dagger, z).unwrap();
            assert_eq!(g.vertex_count(), z + 4);
            assert_eq!(g.edge_count(), 2 * z + 2);
            assert!(verify_at(&g, &l.terminals()));

            let (g, l) = make_aw(AwKind::DoubleDagger, z).unwrap();
            assert_eq!(g.vertex_count(), z + 5);
            assert_eq!(g.edge_count(), 3 * z + 4);
            assert!(verify_at(&g, &l.terminals()));

            let (g, l) = make_aw(AwKind::Diamond, z).unwrap();
            assert_eq!(g.vertex_count(), z + 5);
            assert_eq!(g.edge_count(), 3 * z + 3);
            assert!(verify_at(&g, &l.terminals()));
            assert!(!g.has_edge(l.centers[0], l.centers[1]));
        }
    }

    #[test]
    fn detector_finds_a_triple_in_every_witness() {
        for kind in AwKind::ALL {
            for z in 2..=4 {
                let (g, _) = make_aw(kind, z).unwrap();
                let t = has_at(&g).unwrap();
                assert!(verify_at(&g, &t));
            }
        }
    }

    #[test]
    fn too_short_bases_are_rejected() {
        for kind in AwKind::ALL {
            assert!(make_aw(kind, 0).is_err());
            assert!(make_aw(kind, 1).is_err());
        }
    }

    #[test]
    fn top_vertex_touching_the_base_kills_the_triple() {
        let (mut g, l) = make_aw(AwKind::Dagger, 3).unwrap();
        g.add_edge(l.terminal_top, l.base[1]).unwrap();
        assert!(has_at(&g).is_none());
    }

    #[test]
    fn connecting_set_induces_a_triple() {
        let (g, l) = make_aw(AwKind::Diamond, 4).unwrap();
        let set = at_connecting_set(&g, &l.terminals()).unwrap();
        let sub = g.induced(&set).unwrap();
        assert!(has_at(&sub.graph).is_some());
        assert!(l.terminals().iter().all(|t| set.contains(t)));
    }

    #[test]
    fn kind_ids_round_trip() {
        for kind in AwKind::ALL {
            assert_eq!(kind.id().parse::<AwKind>().unwrap(), kind);
        }
        assert!("triangle".parse::<AwKind>().is_err());
    }
}
