//! Distance vectors and the four generator predicates.
//!
//! A landmark `w` resolves two items (vertices or edges) when their distances
//! to `w` differ. Plain generators need one resolver per pair, fault-tolerant
//! ones need two. Pairs are scanned in lexicographic order of item index and
//! the first failing pair is returned as the witness.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    /// Metric generator.
    Mg,
    /// Fault-tolerant metric generator.
    Ftmg,
    /// Edge metric generator.
    Emg,
    /// Fault-tolerant edge metric generator.
    Ftemg,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Mg, Variant::Emg, Variant::Ftmg, Variant::Ftemg];

    pub fn is_edge(self) -> bool {
        matches!(self, Variant::Emg | Variant::Ftemg)
    }

    pub fn is_fault_tolerant(self) -> bool {
        matches!(self, Variant::Ftmg | Variant::Ftemg)
    }

    /// The non-fault-tolerant variant over the same items.
    pub fn plain(self) -> Variant {
        match self {
            Variant::Mg | Variant::Ftmg => Variant::Mg,
            Variant::Emg | Variant::Ftemg => Variant::Emg,
        }
    }

    pub fn resolvers_needed(self) -> usize {
        if self.is_fault_tolerant() {
            2
        } else {
            1
        }
    }

    /// Name of the matching dimension as printed by the CLI.
    pub fn dim_name(self) -> &'static str {
        match self {
            Variant::Mg => "dim",
            Variant::Emg => "dimE",
            Variant::Ftmg => "ftdim",
            Variant::Ftemg => "ftdimE",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Mg => "mg",
            Variant::Ftmg => "ftmg",
            Variant::Emg => "emg",
            Variant::Ftemg => "ftemg",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mg" => Ok(Variant::Mg),
            "ftmg" => Ok(Variant::Ftmg),
            "emg" => Ok(Variant::Emg),
            "ftemg" => Ok(Variant::Ftemg),
            other => Err(Error::Unsupported(format!("unknown variant {other:?}"))),
        }
    }
}

/// A pair of items that the candidate set fails to resolve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnresolvedPair {
    Vertices(usize, usize),
    Edges((usize, usize), (usize, usize)),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub pair: UnresolvedPair,
    /// Landmarks that do resolve the pair: always empty for plain variants,
    /// at most one for fault-tolerant ones.
    pub resolvers: Vec<usize>,
}

/// Verdict of a generator check. `witness` is `Some` iff `accepted` is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorCertificate {
    pub variant: Variant,
    pub accepted: bool,
    pub witness: Option<Witness>,
}

/// A connected graph with its distance matrix, ready for generator checks.
#[derive(Debug, Clone)]
pub struct Metric<'g> {
    graph: &'g Graph,
    dist: DistanceMatrix,
}

impl<'g> Metric<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        let dist = DistanceMatrix::new(graph);
        if !dist.all_finite() {
            return Err(Error::Disconnected);
        }
        Ok(Metric { graph, dist })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.dist.row(u)[v]
    }

    /// `(d(x, u_1), …, d(x, u_l))` for the ordered landmarks.
    pub fn distance_vector(&self, x: usize, landmarks: &[usize]) -> Result<Vec<u32>> {
        if landmarks.is_empty() {
            return Err(Error::EmptyLandmarks);
        }
        self.check_vertex(x)?;
        landmarks
            .iter()
            .map(|&u| self.check_vertex(u).map(|_| self.distance(x, u)))
            .collect()
    }

    /// `min(d(u, a), d(u, b))` for the edge `e = ab`.
    pub fn vertex_edge_distance(&self, u: usize, e: (usize, usize)) -> Result<u32> {
        self.check_vertex(u)?;
        if !self.graph.has_edge(e.0, e.1) {
            return Err(Error::NotAnEdge(e.0, e.1));
        }
        Ok(self.distance(u, e.0).min(self.distance(u, e.1)))
    }

    /// Distances from `w` to every item of the variant's kind, in item order.
    pub(crate) fn profile(&self, w: usize, edge: bool) -> Vec<u32> {
        let row = self.dist.row(w);
        if edge {
            self.graph
                .edges()
                .iter()
                .map(|&(a, b)| row[a].min(row[b]))
                .collect()
        } else {
            row.to_vec()
        }
    }

    pub(crate) fn item_count(&self, edge: bool) -> usize {
        if edge {
            self.graph.edge_count()
        } else {
            self.graph.vertex_count()
        }
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        let n = self.graph.vertex_count();
        if u >= n {
            return Err(Error::VertexOutOfRange { vertex: u, n });
        }
        Ok(())
    }

    fn normalize(&self, set: &[usize]) -> Result<Vec<usize>> {
        for &u in set {
            self.check_vertex(u)?;
        }
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        Ok(s)
    }

    /// Checks `set` against `variant`.
    pub fn check(&self, variant: Variant, set: &[usize]) -> Result<GeneratorCertificate> {
        let set = self.normalize(set)?;
        if variant.is_fault_tolerant() {
            if set.len() < 2 {
                return Err(Error::TooFewLandmarks(set.len()));
            }
        } else if set.is_empty() {
            return Err(Error::EmptyLandmarks);
        }
        Ok(self.check_normalized(variant, &set))
    }

    fn check_normalized(&self, variant: Variant, set: &[usize]) -> GeneratorCertificate {
        let edge = variant.is_edge();
        let need = variant.resolvers_needed();
        let profiles: Vec<Vec<u32>> = set.iter().map(|&w| self.profile(w, edge)).collect();
        let m = self.item_count(edge);

        let failure = (0..m).into_par_iter().find_map_first(|i| {
            (i + 1..m).find_map(|j| {
                let resolved = profiles.iter().filter(|p| p[i] != p[j]).take(need).count();
                (resolved < need).then(|| {
                    let resolvers: Vec<usize> = set
                        .iter()
                        .zip(&profiles)
                        .filter(|(_, p)| p[i] != p[j])
                        .map(|(&w, _)| w)
                        .collect();
                    (i, j, resolvers)
                })
            })
        });

        let witness = failure.map(|(i, j, resolvers)| Witness {
            pair: if edge {
                let e = self.graph.edges();
                UnresolvedPair::Edges(e[i], e[j])
            } else {
                UnresolvedPair::Vertices(i, j)
            },
            resolvers,
        });
        GeneratorCertificate {
            variant,
            accepted: witness.is_none(),
            witness,
        }
    }

    pub fn is_metric_generator(&self, set: &[usize]) -> Result<GeneratorCertificate> {
        self.check(Variant::Mg, set)
    }

    pub fn is_ft_metric_generator(&self, set: &[usize]) -> Result<GeneratorCertificate> {
        self.check(Variant::Ftmg, set)
    }

    pub fn is_edge_metric_generator(&self, set: &[usize]) -> Result<GeneratorCertificate> {
        self.check(Variant::Emg, set)
    }

    pub fn is_ft_edge_metric_generator(&self, set: &[usize]) -> Result<GeneratorCertificate> {
        self.check(Variant::Ftemg, set)
    }

    /// Reference form of the fault-tolerant check: `set \ {u}` must be a plain
    /// generator for every `u ∈ set`. Independent of the resolver-counting path.
    pub fn leave_one_out(&self, variant: Variant, set: &[usize]) -> Result<bool> {
        let set = self.normalize(set)?;
        if set.len() < 2 {
            return Err(Error::TooFewLandmarks(set.len()));
        }
        let plain = variant.plain();
        Ok((0..set.len()).all(|skip| {
            let rest: Vec<usize> = set
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, &w)| w)
                .collect();
            self.check_normalized(plain, &rest).accepted
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::cycle(4).unwrap()
    }

    #[test]
    fn distance_vectors() {
        let g = c4();
        let m = Metric::new(&g).unwrap();
        assert_eq!(m.distance_vector(2, &[0, 1]).unwrap(), vec![2, 1]);
        assert_eq!(m.distance_vector(0, &[0, 1]).unwrap(), vec![0, 1]);
        assert_eq!(m.distance_vector(0, &[]), Err(Error::EmptyLandmarks));
    }

    #[test]
    fn vertex_edge_distances() {
        let g = c4();
        let m = Metric::new(&g).unwrap();
        assert_eq!(m.vertex_edge_distance(0, (1, 2)).unwrap(), 1);
        assert_eq!(m.vertex_edge_distance(0, (2, 3)).unwrap(), 1);
        assert_eq!(m.vertex_edge_distance(1, (2, 1)).unwrap(), 0);
        assert_eq!(
            m.vertex_edge_distance(0, (0, 2)),
            Err(Error::NotAnEdge(0, 2))
        );
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(Metric::new(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn c4_metric_generators() {
        let g = c4();
        let m = Metric::new(&g).unwrap();
        assert!(m.is_metric_generator(&[0, 1]).unwrap().accepted);
        assert!(m.is_metric_generator(&[0, 1, 2, 3]).unwrap().accepted);
        let cert = m.is_metric_generator(&[0, 2]).unwrap();
        assert!(!cert.accepted);
        assert_eq!(
            cert.witness.unwrap(),
            Witness {
                pair: UnresolvedPair::Vertices(1, 3),
                resolvers: vec![]
            }
        );
    }

    #[test]
    fn c4_ft_metric_generators() {
        let g = c4();
        let m = Metric::new(&g).unwrap();
        assert!(m.is_ft_metric_generator(&[0, 1, 2, 3]).unwrap().accepted);
        assert!(m.leave_one_out(Variant::Ftmg, &[0, 1, 2, 3]).unwrap());
        let cert = m.is_ft_metric_generator(&[0, 1]).unwrap();
        assert!(!cert.accepted);
        let w = cert.witness.unwrap();
        assert!(w.resolvers.len() <= 1);
        assert!(!m.leave_one_out(Variant::Ftmg, &[0, 1]).unwrap());
        assert_eq!(
            m.is_ft_metric_generator(&[2]),
            Err(Error::TooFewLandmarks(1))
        );
    }

    #[test]
    fn c4_edge_generators() {
        let g = c4();
        let m = Metric::new(&g).unwrap();
        assert!(m.is_edge_metric_generator(&[0, 1]).unwrap().accepted);
        let cert = m.is_edge_metric_generator(&[0]).unwrap();
        assert!(!cert.accepted);
        assert_eq!(
            cert.witness.unwrap().pair,
            UnresolvedPair::Edges((0, 1), (0, 3))
        );
        assert_eq!(
            m.vertex_edge_distance(0, (1, 2)).unwrap(),
            m.vertex_edge_distance(0, (2, 3)).unwrap()
        );
        assert!(
            m.is_ft_edge_metric_generator(&[0, 1, 2, 3])
                .unwrap()
                .accepted
        );
        assert!(!m.is_ft_edge_metric_generator(&[0, 1]).unwrap().accepted);
    }

    #[test]
    fn star_center_is_not_an_edge_generator() {
        let g = Graph::star(3).unwrap();
        let m = Metric::new(&g).unwrap();
        assert!(!m.is_edge_metric_generator(&[0]).unwrap().accepted);
    }

    #[test]
    fn witness_is_really_unresolved() {
        let g = Graph::path(5).unwrap();
        let m = Metric::new(&g).unwrap();
        let cert = m.is_metric_generator(&[2]).unwrap();
        let Some(Witness {
            pair: UnresolvedPair::Vertices(a, b),
            ..
        }) = cert.witness
        else {
            panic!("middle of P5 cannot resolve P5");
        };
        assert_eq!((a, b), (0, 4));
        assert_eq!(m.distance(2, a), m.distance(2, b));
    }

    #[test]
    fn variant_parsing() {
        for v in Variant::ALL {
            assert_eq!(v.to_string().parse::<Variant>().unwrap(), v);
        }
        assert!("xyz".parse::<Variant>().is_err());
    }
}
