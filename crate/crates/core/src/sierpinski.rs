//! Generalized Sierpiński graphs `S_G^r`.
//!
//! Vertices are words `x_r … x_1` over the base vertex set. A word maps to a
//! dense index by reading it as a base-`n` numeral with `x_r` most
//! significant, so block `i` (words starting with `i`) is the contiguous
//! index range `i·n^(r-1) .. (i+1)·n^(r-1)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

/// Largest vertex count we are willing to materialize.
pub const MAX_VERTICES: usize = 1 << 22;

/// A Sierpiński vertex name, most significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexWord(Vec<usize>);

impl VertexWord {
    pub fn new(digits: Vec<usize>) -> Self {
        VertexWord(digits)
    }

    pub fn digits(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `prefix` followed by `run` repeated `count` times, then `last`.
    pub fn from_run(prefix: usize, run: usize, count: usize, last: usize) -> Self {
        let mut d = Vec::with_capacity(count + 2);
        d.push(prefix);
        d.extend(std::iter::repeat_n(run, count));
        d.push(last);
        VertexWord(d)
    }

    /// The word with `digit` prepended.
    pub fn prefixed(&self, digit: usize) -> Self {
        let mut d = Vec::with_capacity(self.0.len() + 1);
        d.push(digit);
        d.extend_from_slice(&self.0);
        VertexWord(d)
    }
}

impl fmt::Display for VertexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&d| d < 10) {
            for d in &self.0 {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
            f.write_str(&parts.join("."))
        }
    }
}

impl FromStr for VertexWord {
    type Err = Error;

    /// Accepts `"203"` (single decimal digits) or `"2.10.3"` (dot separated).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidWord {
            word: s.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(bad("empty"));
        }
        let digits = if s.contains('.') {
            s.split('.')
                .map(|p| p.parse::<usize>().map_err(|_| bad("non-numeric part")))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| bad("non-digit"))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(VertexWord(digits))
    }
}

fn checked_pow(n: usize, r: usize) -> Result<usize> {
    u32::try_from(r)
        .ok()
        .and_then(|r| n.checked_pow(r))
        .filter(|&v| v <= MAX_VERTICES)
        .ok_or(Error::TooLarge { base: n, r })
}

/// Word of length `r` over `{0..n}` whose positional value is `index`.
pub fn word_of(index: usize, n: usize, r: usize) -> Result<VertexWord> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidWord {
            word: index.to_string(),
            reason: "alphabet and length must be positive".into(),
        });
    }
    let total = checked_pow(n, r)?;
    if index >= total {
        return Err(Error::VertexOutOfRange {
            vertex: index,
            n: total,
        });
    }
    let mut digits = vec![0; r];
    let mut rest = index;
    for slot in digits.iter_mut().rev() {
        *slot = rest % n;
        rest /= n;
    }
    Ok(VertexWord(digits))
}

/// Positional value of `word` in base `n`.
pub fn index_of(word: &VertexWord, n: usize) -> Result<usize> {
    if word.is_empty() {
        return Err(Error::InvalidWord {
            word: String::new(),
            reason: "empty".into(),
        });
    }
    checked_pow(n, word.len())?;
    let mut index = 0;
    for &d in word.digits() {
        if d >= n {
            return Err(Error::InvalidWord {
                word: word.to_string(),
                reason: format!("digit {d} not below {n}"),
            });
        }
        index = index * n + d;
    }
    Ok(index)
}

/// `S_G^r` together with the base graph and level it was built from.
#[derive(Debug, Clone)]
pub struct SierpinskiGraph {
    base: Graph,
    level: usize,
    graph: Graph,
}

/// Induced subgraph on one block, labelled by the suffix words.
///
/// Local vertex `j` is global vertex `members[j]` and corresponds to vertex
/// `j` of `S_G^(r-1)`.
#[derive(Debug, Clone)]
pub struct PrefixBlock {
    pub graph: Graph,
    pub members: Vec<usize>,
}

impl SierpinskiGraph {
    /// Builds `S_G^r` from `n` relabelled copies of `S_G^(r-1)` plus one
    /// linking edge between `i j…j` and `j i…i` per base edge `ij`.
    pub fn build(base: &Graph, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::LevelTooSmall { r, min: 1 });
        }
        let n = base.vertex_count();
        let total = checked_pow(n, r)?;

        let mut edges: Vec<(usize, usize)> = base.edges().to_vec();
        let mut block = n;
        for _ in 2..=r {
            // `block` is the vertex count of the previous level.
            let repunit = if n > 1 { (block - 1) / (n - 1) } else { 0 };
            let prev = &edges;
            let mut next: Vec<(usize, usize)> = (0..n)
                .into_par_iter()
                .flat_map_iter(|i| {
                    let off = i * block;
                    prev.iter().map(move |&(u, v)| (off + u, off + v))
                })
                .collect();
            for &(i, j) in base.edges() {
                let a = i * block + j * repunit;
                let b = j * block + i * repunit;
                next.push((a.min(b), a.max(b)));
            }
            next.sort_unstable();
            edges = next;
            block *= n;
        }
        debug_assert_eq!(block, total);

        let labels = (0..total)
            .map(|i| word_of(i, n, r).map(|w| w.to_string()))
            .collect::<Result<Vec<_>>>()?;
        let graph = Graph::from_sorted_edges(total, edges).with_labels(labels);
        Ok(SierpinskiGraph {
            base: base.clone(),
            level: r,
            graph,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn alphabet(&self) -> usize {
        self.base.vertex_count()
    }

    pub fn word(&self, index: usize) -> Result<VertexWord> {
        word_of(index, self.alphabet(), self.level)
    }

    pub fn index(&self, word: &VertexWord) -> Result<usize> {
        if word.len() != self.level {
            return Err(Error::InvalidWord {
                word: word.to_string(),
                reason: format!("expected length {}", self.level),
            });
        }
        index_of(word, self.alphabet())
    }

    fn block_size(&self) -> usize {
        self.graph.vertex_count() / self.alphabet()
    }

    /// Block of words starting with base vertex `i`.
    pub fn prefix_block(&self, i: usize) -> Result<PrefixBlock> {
        if self.level < 2 {
            return Err(Error::LevelTooSmall {
                r: self.level,
                min: 2,
            });
        }
        let n = self.alphabet();
        if i >= n {
            return Err(Error::VertexOutOfRange { vertex: i, n });
        }
        let size = self.block_size();
        let members: Vec<usize> = (i * size..(i + 1) * size).collect();
        let sub = self.graph.induced_subgraph(&members)?;
        let labels = (0..size)
            .map(|j| word_of(j, n, self.level - 1).map(|w| w.to_string()))
            .collect::<Result<Vec<_>>>()?;
        Ok(PrefixBlock {
            graph: sub.with_labels(labels),
            members,
        })
    }

    /// True iff every block is an isometric subgraph whose distances match
    /// those of `S_G^(r-1)` on the suffix words.
    pub fn blocks_are_isometric(&self) -> Result<bool> {
        if self.level < 2 {
            return Err(Error::LevelTooSmall {
                r: self.level,
                min: 2,
            });
        }
        let prev = SierpinskiGraph::build(&self.base, self.level - 1)?;
        let big = DistanceMatrix::new(&self.graph);
        let small = DistanceMatrix::new(&prev.graph);
        let size = self.block_size();
        let ok = (0..self.alphabet()).into_par_iter().all(|i| {
            let off = i * size;
            (0..size).all(|u| (0..size).all(|v| big.get(off + u, off + v) == small.get(u, v)))
        });
        Ok(ok)
    }
}
