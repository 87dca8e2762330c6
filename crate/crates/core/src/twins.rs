//! Twin vertices and the bounds and constraints they induce.
//!
//! `u` and `v` are twins when `N(u) = N(v)` (non-adjacent) or
//! `N[u] = N[v]` (adjacent). Every landmark other than `u`, `v` sees them at
//! the same distance, so any generator must keep all but one vertex of each
//! twin set, and a fault-tolerant one must keep all of them.

use std::collections::HashMap;

use crate::error::Result;
use crate::graph::Graph;
use crate::metric::Variant;
use crate::sierpinski::SierpinskiGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwinKind {
    Adjacent,
    NonAdjacent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinSet {
    /// Sorted, at least two members.
    pub members: Vec<usize>,
    pub kind: TwinKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    /// Maximal twin sets ordered by smallest member.
    pub sets: Vec<TwinSet>,
    /// Vertices that would be an open twin of one vertex and a closed twin of
    /// another. Cannot occur in a simple graph; reported, never grouped.
    pub anomalies: Vec<usize>,
}

/// Twin-based lower bounds for the four dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowerBounds {
    pub dim: usize,
    pub ftdim: usize,
    pub dim_e: usize,
    pub ftdim_e: usize,
}

impl LowerBounds {
    pub fn get(&self, variant: Variant) -> usize {
        match variant {
            Variant::Mg => self.dim,
            Variant::Ftmg => self.ftdim,
            Variant::Emg => self.dim_e,
            Variant::Ftemg => self.ftdim_e,
        }
    }
}

/// "Pick at least `min` of `members`" for every group.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ForcedInclusion {
    pub groups: Vec<(Vec<usize>, usize)>,
}

impl ForcedInclusion {
    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn is_satisfied_by(&self, set: &[usize]) -> bool {
        self.groups
            .iter()
            .all(|(members, min)| members.iter().filter(|m| set.contains(m)).count() >= *min)
    }

    /// Sum of all group minimums.
    pub fn mandatory_count(&self) -> usize {
        self.groups.iter().map(|(_, min)| min).sum()
    }
}

fn group_by_signature<F>(g: &Graph, signature: F) -> Vec<Vec<usize>>
where
    F: Fn(usize) -> Vec<usize>,
{
    // Keys are the full sorted neighbourhoods, so equal hashes are always
    // confirmed by exact comparison inside the map.
    let mut groups: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for u in 0..g.vertex_count() {
        groups.entry(signature(u)).or_default().push(u);
    }
    groups.into_values().filter(|m| m.len() >= 2).collect()
}

/// Partitions all twin vertices of `g` into maximal twin sets.
pub fn find_twins(g: &Graph) -> TwinPartition {
    let open = group_by_signature(g, |u| g.neighbors(u).to_vec());
    let closed = group_by_signature(g, |u| {
        let mut s = g.neighbors(u).to_vec();
        let pos = s.binary_search(&u).unwrap_err();
        s.insert(pos, u);
        s
    });

    let mut in_open = vec![false; g.vertex_count()];
    for set in &open {
        for &u in set {
            in_open[u] = true;
        }
    }
    let mut anomalies: Vec<usize> = closed
        .iter()
        .flatten()
        .copied()
        .filter(|&u| in_open[u])
        .collect();
    anomalies.sort_unstable();

    let mut sets: Vec<TwinSet> = open
        .into_iter()
        .map(|m| (m, TwinKind::NonAdjacent))
        .chain(closed.into_iter().map(|m| (m, TwinKind::Adjacent)))
        .filter_map(|(mut members, kind)| {
            members.retain(|u| anomalies.binary_search(u).is_err());
            members.sort_unstable();
            (members.len() >= 2).then_some(TwinSet { members, kind })
        })
        .collect();
    sets.sort_by_key(|s| s.members[0]);
    TwinPartition { sets, anomalies }
}

impl TwinPartition {
    /// Number of twin vertices, `|T|`.
    pub fn twin_count(&self) -> usize {
        self.sets.iter().map(|s| s.members.len()).sum()
    }

    /// Number of twin sets, `k`.
    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    /// All twin vertices, sorted.
    pub fn twin_vertices(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self
            .sets
            .iter()
            .flat_map(|s| s.members.iter().copied())
            .collect();
        t.sort_unstable();
        t
    }

    pub fn set_of(&self, u: usize) -> Option<&TwinSet> {
        self.sets.iter().find(|s| s.members.contains(&u))
    }

    /// The other member of `u`'s twin set when that set is a pair.
    pub fn partner(&self, u: usize) -> Option<usize> {
        let set = self.set_of(u)?;
        match set.members.as_slice() {
            [a, b] if *a == u => Some(*b),
            [a, b] if *b == u => Some(*a),
            _ => None,
        }
    }

    /// Whether every twin set has exactly `size` members.
    pub fn all_sets_have_size(&self, size: usize) -> bool {
        self.sets.iter().all(|s| s.members.len() == size)
    }

    /// Whether the pair-doubling rule applies: every twin set is a pair and
    /// `dim` equals the number of sets. When it does, the fault-tolerant
    /// dimension is exactly `2 * dim`. The converse is not assumed.
    pub fn doubling_applies(&self, dim: usize) -> bool {
        !self.sets.is_empty() && self.all_sets_have_size(2) && dim == self.set_count()
    }

    pub fn lower_bounds(&self) -> LowerBounds {
        let t = self.twin_count();
        let k = self.set_count();
        LowerBounds {
            dim: t - k,
            ftdim: t,
            dim_e: t - k,
            ftdim_e: t,
        }
    }

    /// Membership constraints every generator of `variant` must satisfy.
    ///
    /// Edge variants rely on a common neighbour of the twins; a twin set
    /// without one (only `K2`) contributes nothing for them.
    pub fn forced_inclusion(&self, g: &Graph, variant: Variant) -> ForcedInclusion {
        let groups = self
            .sets
            .iter()
            .filter(|s| {
                !variant.is_edge()
                    || g.neighbors(s.members[0])
                        .iter()
                        .any(|x| !s.members.contains(x))
            })
            .map(|s| {
                let min = if variant.is_fault_tolerant() {
                    s.members.len()
                } else {
                    s.members.len() - 1
                };
                (s.members.clone(), min)
            })
            .collect();
        ForcedInclusion { groups }
    }
}

/// Vertices of degree 2 lying on a 4-cycle that contains another degree-2
/// vertex opposite them.
pub fn degree_two_square_vertices(g: &Graph) -> Vec<usize> {
    (0..g.vertex_count())
        .filter(|&u| {
            let [a, b] = g.neighbors(u) else {
                return false;
            };
            g.neighbors(*a)
                .iter()
                .any(|&w| w != u && g.degree(w) == 2 && g.has_edge(w, *b))
        })
        .collect()
}

/// Outcome of comparing detected twins of `S_{C4}^r` with the structural
/// degree-2 / 4-cycle description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinCharacterization {
    pub r: usize,
    pub twin_count: usize,
    pub set_count: usize,
    pub all_pairs: bool,
    pub matches_structure: bool,
}

impl TwinCharacterization {
    pub fn holds(&self) -> bool {
        self.all_pairs && self.matches_structure
    }
}

/// Checks that the twins of `S_{C4}^r` are exactly the degree-2 vertices on
/// a 4-cycle with a second degree-2 vertex, and that every twin set is a pair.
pub fn check_twin_characterization_c4(r: usize) -> Result<TwinCharacterization> {
    if r < 2 {
        return Err(crate::Error::LevelTooSmall { r, min: 2 });
    }
    let s = SierpinskiGraph::build(&Graph::cycle(4)?, r)?;
    let g = s.graph();
    let tp = find_twins(g);
    Ok(TwinCharacterization {
        r,
        twin_count: tp.twin_count(),
        set_count: tp.set_count(),
        all_pairs: tp.all_sets_have_size(2) && tp.anomalies.is_empty(),
        matches_structure: tp.twin_vertices() == degree_two_square_vertices(g),
    })
}
