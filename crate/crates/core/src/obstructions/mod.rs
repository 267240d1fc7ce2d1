//! Forbidden-family detectors and the machinery around them: named
//! property specs, closure combinators, constructive hole lemmas,
//! asteroidal witness gadgets, and a tester for whether a vertex whose
//! incidence vector equals a GF(2) sum of others can replace one of them.
//!
//! Everything here runs exhaustive searches and serves validation only;
//! the kernelization pipeline never calls into this module.

mod aw;
mod detect;
mod paths;

pub use aw::{at_connecting_set, make_aw, AwKind, AwLabels};
pub use detect::{
    has_at, has_hole, has_odd_antihole, has_wheel, verify_at, verify_chordless_cycle, verify_hole,
    verify_wheel, Parity, WheelWitness,
};
pub use paths::{even_hole_from_path, odd_hole_from_path};

use crate::caps::Caps;
use crate::error::{invalid, resource, Result};
use crate::graph::{Graph, VertexCoverCert};
use crate::incidence::{self, CoordinateIndex};
use itertools::Itertools;

/// The built-in obstruction families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PropertyId {
    OddHole,
    EvenHole,
    OddAntiHole,
    Perfect,
    HoleAtLeast4,
    HoleAtLeast6,
    Wheel,
    AlmostWheel,
    AsteroidalTriple,
    Interval,
}

impl PropertyId {
    pub const ALL: [PropertyId; 10] = [
        PropertyId::OddHole,
        PropertyId::EvenHole,
        PropertyId::OddAntiHole,
        PropertyId::Perfect,
        PropertyId::HoleAtLeast4,
        PropertyId::HoleAtLeast6,
        PropertyId::Wheel,
        PropertyId::AlmostWheel,
        PropertyId::AsteroidalTriple,
        PropertyId::Interval,
    ];

    pub fn id(self) -> &'static str {
        match self {
            PropertyId::OddHole => "odd-hole",
            PropertyId::EvenHole => "even-hole",
            PropertyId::OddAntiHole => "odd-anti-hole",
            PropertyId::Perfect => "perfect",
            PropertyId::HoleAtLeast4 => "hole-ge-4",
            PropertyId::HoleAtLeast6 => "hole-ge-6",
            PropertyId::Wheel => "wheel",
            PropertyId::AlmostWheel => "almost-wheel",
            PropertyId::AsteroidalTriple => "asteroidal-triple",
            PropertyId::Interval => "interval",
        }
    }
}

impl std::str::FromStr for PropertyId {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<PropertyId> {
        PropertyId::ALL.into_iter().find(|p| p.id() == s).ok_or_else(|| {
            let known = PropertyId::ALL.iter().map(|p| p.id()).join(", ");
            invalid(format!("unknown property {s:?}; expected one of: {known}"))
        })
    }
}

impl std::fmt::Display for PropertyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// Decision procedure for membership in an obstruction family's upward
/// closure: does the graph contain a family member as induced subgraph?
#[derive(Clone, Debug)]
pub enum Detector {
    Hole { parity: Parity, min_len: usize },
    Wheel { min_size: usize, forbidden_size: Option<usize> },
    AsteroidalTriple,
    Complement(Box<Detector>),
    Union(Box<Detector>, Box<Detector>),
}

impl Detector {
    pub fn contains(&self, g: &Graph) -> bool {
        match self {
            Detector::Hole { parity, min_len } => has_hole(g, *parity, *min_len).is_some(),
            Detector::Wheel { min_size, forbidden_size } => {
                has_wheel(g, |s| s >= *min_size && Some(s) != *forbidden_size).is_some()
            }
            Detector::AsteroidalTriple => has_at(g).is_some(),
            Detector::Complement(inner) => inner.contains(&g.complement()),
            Detector::Union(a, b) => a.contains(g) || b.contains(g),
        }
    }

    /// A vertex set whose induced subgraph still contains an obstruction;
    /// present exactly when `contains` holds. First found under the
    /// deterministic search order, not minimized.
    pub fn witness(&self, g: &Graph) -> Option<Vec<usize>> {
        match self {
            Detector::Hole { parity, min_len } => {
                has_hole(g, *parity, *min_len).map(|mut c| {
                    c.sort_unstable();
                    c
                })
            }
            Detector::Wheel { min_size, forbidden_size } => {
                has_wheel(g, |s| s >= *min_size && Some(s) != *forbidden_size).map(|w| w.vertices())
            }
            Detector::AsteroidalTriple => {
                let triple = has_at(g)?;
                let set = at_connecting_set(g, &triple);
                debug_assert!(set.is_some());
                set
            }
            Detector::Complement(inner) => inner.witness(&g.complement()),
            Detector::Union(a, b) => a.witness(g).or_else(|| b.witness(g)),
        }
    }
}

/// An obstruction family with its declared kernelization constants.
#[derive(Clone, Debug)]
pub struct PropertySpec {
    pub id: String,
    pub detector: Detector,
    /// Smallest c for which the family is known to have rank-c adjacencies,
    /// if any.
    pub rank: Option<usize>,
    /// Whether rank-c replacements are known to work with |D'| = 1.
    pub singleton: bool,
}

impl PropertySpec {
    pub fn by_id(id: PropertyId) -> PropertySpec {
        let odd_hole = Detector::Hole { parity: Parity::Odd, min_len: 5 };
        let (detector, rank, singleton) = match id {
            PropertyId::OddHole => (odd_hole, Some(4), true),
            PropertyId::EvenHole => (Detector::Hole { parity: Parity::Even, min_len: 4 }, Some(3), true),
            PropertyId::OddAntiHole => (Detector::Complement(Box::new(odd_hole)), Some(4), true),
            PropertyId::Perfect => (
                Detector::Union(
                    Box::new(odd_hole.clone()),
                    Box::new(Detector::Complement(Box::new(odd_hole))),
                ),
                Some(4),
                true,
            ),
            PropertyId::HoleAtLeast4 => (Detector::Hole { parity: Parity::Any, min_len: 4 }, Some(3), true),
            PropertyId::HoleAtLeast6 => (Detector::Hole { parity: Parity::Any, min_len: 6 }, Some(5), true),
            PropertyId::Wheel => (Detector::Wheel { min_size: 3, forbidden_size: None }, Some(4), false),
            PropertyId::AlmostWheel => (Detector::Wheel { min_size: 3, forbidden_size: Some(4) }, None, false),
            PropertyId::AsteroidalTriple => (Detector::AsteroidalTriple, Some(8), true),
            PropertyId::Interval => (
                Detector::Union(
                    Box::new(Detector::AsteroidalTriple),
                    Box::new(Detector::Hole { parity: Parity::Any, min_len: 4 }),
                ),
                Some(8),
                false,
            ),
        };
        PropertySpec { id: id.id().to_string(), detector, rank, singleton }
    }

    pub fn contains(&self, g: &Graph) -> bool {
        self.detector.contains(g)
    }

    pub fn witness(&self, g: &Graph) -> Option<Vec<usize>> {
        self.detector.witness(g)
    }
}

/// Family of graphs containing a member of either input family. Declared
/// rank is the maximum of the parts; singleton replacements survive only
/// if both parts have them.
pub fn union_property(a: &PropertySpec, b: &PropertySpec) -> PropertySpec {
    PropertySpec {
        id: format!("{}|{}", a.id, b.id),
        detector: Detector::Union(Box::new(a.detector.clone()), Box::new(b.detector.clone())),
        rank: a.rank.zip(b.rank).map(|(x, y)| x.max(y)),
        singleton: a.singleton && b.singleton,
    }
}

/// Family of edge complements of the input family's members. Rank and
/// singleton flag carry over unchanged.
pub fn complement_property(p: &PropertySpec) -> PropertySpec {
    PropertySpec {
        id: format!("co-{}", p.id),
        detector: Detector::Complement(Box::new(p.detector.clone())),
        rank: p.rank,
        singleton: p.singleton,
    }
}

/// Why a rank-c replacement check did not get past its hypotheses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PremiseFailure {
    /// h - d contains no obstruction.
    ResidualNotInProperty,
    /// The incidence vector of v differs from the GF(2) sum over d.
    SumMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankVerdict {
    PremiseFailed(PremiseFailure),
    /// Keeping exactly these vertices of d (deleting v and the rest)
    /// preserves an obstruction.
    Replaced(Vec<usize>),
    /// No subset of d restores an obstruction once v is gone: the family
    /// is not characterized by rank-c adjacencies at this c.
    Counterexample,
}

/// Tests the defining implication of rank-c adjacencies on one instance:
/// if h - d contains an obstruction and inc(v) equals the sum over d, then
/// some D' ⊆ d must keep an obstruction alive in h - v - (d \ D').
///
/// Candidates are scanned in increasing size, lexicographic within a size,
/// so the singleton-only mode inspects a prefix (∅, then single vertices)
/// of the full subset mode. Subset mode refuses |d| beyond `caps.subset`.
#[allow(clippy::too_many_arguments)]
pub fn check_rank_c(
    p: &PropertySpec,
    c: usize,
    h: &Graph,
    x: &[usize],
    d: &[usize],
    v: usize,
    singleton_only: bool,
    caps: &Caps,
) -> Result<RankVerdict> {
    let cover = VertexCoverCert::new(h, x.iter().copied())?;
    let idx = CoordinateIndex::enumerate(cover.ids(), c, caps)?;
    let mut d_sorted = d.to_vec();
    d_sorted.sort_unstable();
    if !singleton_only && d_sorted.len() > caps.subset {
        return Err(resource(format!(
            "subset search over {} vertices exceeds cap {}",
            d_sorted.len(),
            caps.subset
        )));
    }
    // Validates d and v against the cover as a side effect.
    let sum_matches = incidence::check_sum(h, &idx, v, &d_sorted)?;
    if !p.contains(&h.without(&d_sorted)?.graph) {
        return Ok(RankVerdict::PremiseFailed(PremiseFailure::ResidualNotInProperty));
    }
    if !sum_matches {
        return Ok(RankVerdict::PremiseFailed(PremiseFailure::SumMismatch));
    }
    let max_size = if singleton_only { 1.min(d_sorted.len()) } else { d_sorted.len() };
    for size in 0..=max_size {
        for keep in d_sorted.iter().copied().combinations(size) {
            let removed: Vec<usize> = std::iter::once(v)
                .chain(d_sorted.iter().copied().filter(|u| !keep.contains(u)))
                .collect();
            if p.contains(&h.without(&removed)?.graph) {
                return Ok(RankVerdict::Replaced(keep));
            }
        }
    }
    Ok(RankVerdict::Counterexample)
}
