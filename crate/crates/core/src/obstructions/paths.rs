//! Constructive hole extraction. Given an induced path plus one vertex
//! adjacent to both endpoints, a parity condition on what that vertex sees
//! guarantees a hole inside the union, and the recursion below finds one.

use super::detect::verify_chordless_cycle;
use crate::error::{invalid, Result};
use crate::graph::Graph;

fn validate_common(g: &Graph, path: &[usize], y: usize) -> Result<()> {
    let n = g.vertex_count();
    if let Some(&bad) = path.iter().find(|&&u| u >= n) {
        return Err(invalid(format!("path vertex {bad} exceeds vertex count {n}")));
    }
    if y >= n {
        return Err(invalid(format!("vertex {y} exceeds vertex count {n}")));
    }
    if path.contains(&y) {
        return Err(invalid(format!("vertex {y} lies on the path")));
    }
    for i in 0..path.len() {
        for j in (i + 1)..path.len() {
            let consecutive = j == i + 1;
            if g.has_edge(path[i], path[j]) != consecutive {
                return Err(invalid(format!(
                    "path is not induced: vertices {} and {} are {}adjacent",
                    path[i],
                    path[j],
                    if consecutive { "not " } else { "" },
                )));
            }
        }
    }
    let first = *path.first().unwrap();
    let last = *path.last().unwrap();
    if !g.has_edge(y, first) || !g.has_edge(y, last) {
        return Err(invalid(format!("vertex {y} must be adjacent to both path endpoints")));
    }
    Ok(())
}

/// Number of path edges whose endpoints are both adjacent to `y`.
fn edges_seen(g: &Graph, path: &[usize], y: usize) -> usize {
    (0..path.len() - 1)
        .filter(|&i| g.has_edge(y, path[i]) && g.has_edge(y, path[i + 1]))
        .count()
}

/// Odd hole inside V(path) ∪ {y}, returned in cyclic order.
///
/// Requires an induced path of even order at least 4 and a vertex `y` off
/// the path, adjacent to both endpoints, seeing an even number of path
/// edges. Works by induction on the order: either both end edges are seen
/// and the path shrinks by its endpoints, or the segment from the last
/// neighbor of `y` closes an odd cycle directly, or the prefix up to that
/// neighbor inherits the preconditions.
pub fn odd_hole_from_path(g: &Graph, path: &[usize], y: usize) -> Result<Vec<usize>> {
    validate_common(g, path, y)?;
    if path.len() < 4 || !path.len().is_multiple_of(2) {
        return Err(invalid(format!("path order {} is not even and at least 4", path.len())));
    }
    if !edges_seen(g, path, y).is_multiple_of(2) {
        return Err(invalid(format!("vertex {y} sees an odd number of path edges")));
    }
    let hole = odd_rec(g, path, y);
    assert!(hole.len() % 2 == 1 && verify_chordless_cycle(g, &hole));
    Ok(hole)
}

fn odd_rec(g: &Graph, path: &[usize], y: usize) -> Vec<usize> {
    let n = path.len();
    debug_assert!(n >= 4 && n.is_multiple_of(2));
    debug_assert!(edges_seen(g, path, y).is_multiple_of(2));
    let adj = |u: usize| g.has_edge(y, u);
    if n == 4 {
        debug_assert!(!adj(path[1]) && !adj(path[2]));
        let mut hole = path.to_vec();
        hole.push(y);
        return hole;
    }
    let sees_first = adj(path[0]) && adj(path[1]);
    let sees_last = adj(path[n - 2]) && adj(path[n - 1]);
    if sees_first && sees_last {
        return odd_rec(g, &path[1..n - 1], y);
    }
    if sees_last {
        let reversed: Vec<usize> = path.iter().rev().copied().collect();
        return odd_rec(g, &reversed, y);
    }
    debug_assert!(!adj(path[n - 2]));
    let j = (0..n - 2).rev().find(|&i| adj(path[i])).unwrap();
    if (j + 1) % 2 == 1 {
        let mut hole = path[j..].to_vec();
        hole.push(y);
        hole
    } else {
        odd_rec(g, &path[..=j], y)
    }
}

/// Even hole inside V(path) ∪ {y}, returned in cyclic order.
///
/// Requires an induced path of odd order at least 3 and a vertex `y` off
/// the path, adjacent to both endpoints, adjacent to an even number of
/// path vertices in total. If `y` has no internal neighbor the whole path
/// closes into an even cycle; otherwise the segment up to the first
/// internal neighbor, the segment from the last one, or the span between
/// them yields the hole.
pub fn even_hole_from_path(g: &Graph, path: &[usize], y: usize) -> Result<Vec<usize>> {
    validate_common(g, path, y)?;
    if path.len() % 2 != 1 {
        return Err(invalid(format!("path order {} is not odd", path.len())));
    }
    let seen = path.iter().filter(|&&u| g.has_edge(y, u)).count();
    if seen % 2 != 0 {
        return Err(invalid(format!("vertex {y} is adjacent to an odd number of path vertices")));
    }
    let hole = even_rec(g, path, y);
    assert!(hole.len().is_multiple_of(2) && hole.len() >= 4 && verify_chordless_cycle(g, &hole));
    Ok(hole)
}

fn even_rec(g: &Graph, path: &[usize], y: usize) -> Vec<usize> {
    let n = path.len();
    debug_assert!(n >= 3 && n % 2 == 1);
    debug_assert!(path.iter().filter(|&&u| g.has_edge(y, u)).count() % 2 == 0);
    let adj = |u: usize| g.has_edge(y, u);
    if n == 3 {
        debug_assert!(!adj(path[1]));
        return vec![path[0], path[1], path[2], y];
    }
    let first_inner = (1..n - 1).find(|&i| adj(path[i]));
    let Some(j) = first_inner else {
        let mut hole = path.to_vec();
        hole.push(y);
        return hole;
    };
    let jp = (1..n - 1).rev().find(|&i| adj(path[i])).unwrap();
    if (j + 1) % 2 == 1 {
        let mut hole = path[..=j].to_vec();
        hole.push(y);
        return hole;
    }
    if (jp + 1) % 2 == 1 {
        let mut hole = path[jp..].to_vec();
        hole.push(y);
        return hole;
    }
    even_rec(g, &path[j..=jp], y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstructions::detect::{verify_hole, Parity};

    /// Path 0..n-1 plus vertex n adjacent to both endpoints and to the
    /// internal vertices selected by `mask` (bit i selects vertex i+1).
    fn path_plus_y(n: usize, mask: u32) -> (Graph, Vec<usize>, usize) {
        let mut g = Graph::from_edges(n + 1, (1..n).map(|i| (i - 1, i))).unwrap();
        g.add_edge(0, n).unwrap();
        g.add_edge(n - 1, n).unwrap();
        for i in 1..n - 1 {
            if mask >> (i - 1) & 1 == 1 {
                g.add_edge(i, n).unwrap();
            }
        }
        (g, (0..n).collect(), n)
    }

    #[test]
    fn plain_even_path_closes_into_odd_hole() {
        let (g, path, y) = path_plus_y(4, 0);
        let hole = odd_hole_from_path(&g, &path, y).unwrap();
        assert_eq!(hole, vec![0, 1, 2, 3, 4]);
        assert!(verify_hole(&g, &hole, Parity::Odd, 5));
    }

    #[test]
    fn seen_end_edges_shrink_to_the_middle() {
        // Path (p, v1..v4, q) with y adjacent to p, v1, v4, q.
        let (g, path, y) = path_plus_y(6, 0b1001);
        let hole = odd_hole_from_path(&g, &path, y).unwrap();
        assert_eq!(hole, vec![1, 2, 3, 4, 6]);
    }

    #[test]
    fn plain_odd_path_closes_into_even_hole() {
        let (g, path, y) = path_plus_y(3, 0);
        let hole = even_hole_from_path(&g, &path, y).unwrap();
        assert_eq!(hole, vec![0, 1, 2, 3]);
        assert!(verify_hole(&g, &hole, Parity::Even, 4));
    }

    #[test]
    fn preconditions_are_rejected() {
        let (g, path, y) = path_plus_y(4, 0);
        assert!(odd_hole_from_path(&g, &path[..3], y).is_err());
        assert!(even_hole_from_path(&g, &path, y).is_err());
        assert!(odd_hole_from_path(&g, &[0, 1, 2, 4], 3).is_err());
        assert!(odd_hole_from_path(&g, &path, 2).is_err());

        // y seeing one edge breaks the parity requirement.
        let (g, path, y) = path_plus_y(4, 0b01);
        assert!(odd_hole_from_path(&g, &path, y).is_err());
        // y adjacent to three vertices in total breaks the even-seen rule.
        let (g, path, y) = path_plus_y(5, 0b001);
        assert!(even_hole_from_path(&g, &path, y).is_err());

        let mut g = Graph::path(5);
        g.add_edge(0, 4).unwrap();
        assert!(odd_hole_from_path(&g, &[0, 1, 2, 3], 4).is_ok());
        g.add_edge(1, 3).unwrap();
        assert!(odd_hole_from_path(&g, &[0, 1, 2, 3], 4).is_err());
    }

    #[test]
    fn every_even_pattern_yields_an_odd_hole() {
        for n in [4usize, 6] {
            for mask in 0..1u32 << (n - 2) {
                let (g, path, y) = path_plus_y(n, mask);
                let result = odd_hole_from_path(&g, &path, y);
                if edges_seen(&g, &path, y).is_multiple_of(2) {
                    let hole = result.unwrap();
                    assert!(verify_hole(&g, &hole, Parity::Odd, 5), "n={n} mask={mask:b}");
                    assert!(hole.iter().all(|&v| v == y || path.contains(&v)));
                } else {
                    assert!(result.is_err());
                }
            }
        }
    }

    #[test]
    fn every_even_adjacency_count_yields_an_even_hole() {
        for n in [3usize, 5, 7] {
            for mask in 0..1u32 << (n - 2) {
                let (g, path, y) = path_plus_y(n, mask);
                let result = even_hole_from_path(&g, &path, y);
                if (2 + mask.count_ones()) % 2 == 0 {
                    let hole = result.unwrap();
                    assert!(verify_hole(&g, &hole, Parity::Even, 4), "n={n} mask={mask:b}");
                } else {
                    assert!(result.is_err());
                }
            }
        }
    }
}
