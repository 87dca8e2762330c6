//! Undirected simple graphs on dense vertex indices, plus BFS distances and
//! a few structural predicates.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are stored once as `(min, max)` pairs in sorted order; adjacency
/// lists are sorted. Optional labels are display strings only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate and reversed pairs collapse
    /// into one edge.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_sorted_edges(n, set.into_iter().collect()))
    }

    // `edges` must be sorted, deduplicated, normalized and in range.
    pub(crate) fn from_sorted_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adj,
            labels: None,
        }
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::new(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Unsupported(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
        Self::new(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|u| (u - 1, u)).collect();
        Self::new(n, &edges)
    }

    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|u| (0, u)).collect();
        Self::new(leaves + 1, &edges)
    }

    /// Attaches per-vertex labels. Panics if the length does not match.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n, "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Rank of the edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `u`, falling back to its index.
    pub fn label(&self, u: usize) -> String {
        match &self.labels {
            Some(l) => l[u].clone(),
            None => u.to_string(),
        }
    }

    /// Induced subgraph on `vertices` (in the given order); labels follow.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            pos[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                edges.push((pos[u], pos[v]));
            }
        }
        let mut g = Graph::new(vertices.len(), &edges)?;
        if let Some(labels) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(g)
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(Option::is_some)
    }

    /// Two-colours the graph, or returns an odd cycle.
    pub fn bipartition(&self) -> Bipartition {
        let mut color: Vec<Option<u8>> = vec![None; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![0usize; self.n];
        for root in 0..self.n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(0);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &self.adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(1 - cu);
                            parent[v] = u;
                            depth[v] = depth[u] + 1;
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => {
                            return Bipartition::OddCycle(odd_cycle(u, v, &parent));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartition::Bipartite(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartition::Bipartite(_))
    }

    /// Plain-text adjacency format: `n m` followed by one `u v` line per edge.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn from_adjacency_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let (n, m) = parse_pair(line, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            edges.push(parse_pair(line, l)?);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, &edges)
    }

    /// Graphviz DOT rendering with vertex labels when present.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for u in 0..self.n {
            match &self.labels {
                Some(l) => writeln!(out, "  {u} [label=\"{}\"];", l[u]).unwrap(),
                None => writeln!(out, "  {u};").unwrap(),
            }
        }
        for &(u, v) in &self.edges {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize)> {
    let err = |msg: String| Error::Parse { line, msg };
    let mut it = s.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| err("expected two integers".into()))?;
        tok.parse()
            .map_err(|_| err(format!("not an integer: {tok:?}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(err("trailing tokens".into()));
    }
    Ok((a, b))
}

fn odd_cycle(u: usize, v: usize, parent: &[usize]) -> Vec<usize> {
    // u and v have equal BFS depth; climb in lockstep to the common ancestor.
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Result of a bipartiteness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// Colour (0 or 1) per vertex.
    Bipartite(Vec<u8>),
    /// Vertices of an odd cycle, in cycle order.
    OddCycle(Vec<usize>),
}

/// All-pairs hop distances. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    // UNREACHABLE never leaves this type; `get` maps it to `None`.
    d: Vec<u32>,
}

const UNREACHABLE: u32 = u32::MAX;

impl DistanceMatrix {
    /// One BFS per source, run in parallel.
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|s| {
                g.bfs(s)
                    .into_iter()
                    .map(|d| d.unwrap_or(UNREACHABLE))
                    .collect()
            })
            .collect();
        DistanceMatrix {
            n,
            d: rows.concat(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        match self.d[u * self.n + v] {
            UNREACHABLE => None,
            x => Some(x),
        }
    }

    pub fn all_finite(&self) -> bool {
        !self.d.contains(&UNREACHABLE)
    }

    /// Row of finite distances from `u`. Only valid on connected graphs.
    pub(crate) fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }
}
