//! Simple undirected graphs on `0..n` stored as rows of adjacency bits.
//!
//! A [`Graph`] is immutable once built. Row `v` holds the neighbourhood of
//! `v` as a bitset of width `n`, so neighbourhood intersections with a
//! [`VertexSet`] are word-wise ANDs.

use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] may have.
pub const MAX_VERTICES: usize = 65_536;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A subset of `0..universe`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for v in 0..universe {
            s.words[v / 64] |= 1 << (v % 64);
        }
        s
    }

    /// Builds a set from vertex indices, rejecting anything `>= universe`.
    pub fn from_vertices<I>(universe: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Self::new(universe);
        for v in vertices {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) -> Result<()> {
        if v >= self.universe {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.universe,
            });
        }
        self.words[v / 64] |= 1 << (v % 64);
        Ok(())
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        iter_bits(&self.words)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterates the set bits of a word slice in increasing order.
pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
    edges: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        let stride = words_for(n);
        Ok(Graph {
            n,
            stride,
            rows: vec![0; n * stride],
            edges: 0,
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge_unchecked(u, v);
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(crate::error::out_of_range("cycle length", n, ">= 3"));
        }
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// The star K_{1,leaves} with centre 0.
    pub fn star(leaves: usize) -> Result<Self> {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    /// K_{a,b} with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        Self::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
    }

    /// Adds an edge during construction. Duplicate edges are ignored.
    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !self.has_edge(u, v) {
            self.set_edge_unchecked(u, v);
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn set_edge_unchecked(&mut self, u: usize, v: usize) {
        self.rows[u * self.stride + v / 64] |= 1 << (v % 64);
        self.rows[v * self.stride + u / 64] |= 1 << (u % 64);
        self.edges += 1;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Number of 64-bit words per adjacency row.
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adjacency row of `v` as bitset words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Subgraph induced by `set`, relabelled in increasing order of the
    /// original vertex index.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<Graph> {
        if set.universe() > self.n {
            if let Some(v) = set.iter().find(|&v| v >= self.n) {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let members: Vec<usize> = set.iter().collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in members.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(members.len())?;
        for (i, &u) in members.iter().enumerate() {
            for v in self.neighbors(u) {
                let j = index[v];
                if j != usize::MAX && j > i {
                    g.set_edge_unchecked(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Number of connected components (0 for the empty graph).
    pub fn component_count(&self) -> usize {
        let mut seen = vec![0u64; self.stride];
        let mut frontier = vec![0u64; self.stride];
        let mut next = vec![0u64; self.stride];
        let mut components = 0;
        for s in 0..self.n {
            if seen[s / 64] >> (s % 64) & 1 == 1 {
                continue;
            }
            components += 1;
            frontier.fill(0);
            frontier[s / 64] |= 1 << (s % 64);
            seen[s / 64] |= 1 << (s % 64);
            loop {
                next.fill(0);
                for v in iter_bits(&frontier) {
                    for (w, r) in next.iter_mut().zip(self.row(v)) {
                        *w |= r;
                    }
                }
                let mut grew = false;
                for ((nw, sw), fw) in next.iter().zip(seen.iter_mut()).zip(frontier.iter_mut()) {
                    *fw = nw & !*sw;
                    *sw |= *fw;
                    grew |= *fw != 0;
                }
                if !grew {
                    break;
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Connected with exactly `n - 1` edges. The one-vertex graph is a tree,
    /// the empty graph is not.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges == self.n - 1 && self.is_connected()
    }

    /// Acyclic: every component is a tree.
    pub fn is_forest(&self) -> bool {
        self.edges + self.component_count() == self.n
    }

    /// Writes the text format: a `n m` header followed by one `u v` line per
    /// edge with `u < v`.
    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{} {}", self.n, self.edges)?;
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("text format is ASCII")
    }

    /// Parses the text format written by [`Graph::write_text`].
    pub fn read_text<R: BufRead>(input: R) -> Result<Graph> {
        let mut lines = input.lines().enumerate();
        let (n, m) = loop {
            match lines.next() {
                None => {
                    return Err(Error::Parse {
                        line: 1,
                        message: "missing header".into(),
                    })
                }
                Some((i, line)) => {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    let nums = parse_pair(&line, i + 1)?;
                    break nums;
                }
            }
        };
        let mut g = Graph::empty(n)?;
        let mut seen = 0;
        for (i, line) in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let (u, v) = parse_pair(&line, i + 1)?;
            if !(u < v && v < n) {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("edge ({u}, {v}) violates 0 <= u < v < {n}"),
                });
            }
            if g.has_edge(u, v) {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("duplicate edge ({u}, {v})"),
                });
            }
            g.set_edge_unchecked(u, v);
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse {
                line: 1,
                message: format!("header declares {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }

    pub fn from_text(text: &str) -> Result<Graph> {
        Self::read_text(text.as_bytes())
    }
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_ascii_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line: lineno,
            message: "expected two integers".into(),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("not a nonnegative integer: {tok:?}"),
        })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line: lineno,
            message: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn induced_edge_of_k4() {
        let k4 = Graph::complete(4).unwrap();
        let sub = k4.induced_subgraph(&set(4, &[0, 1])).unwrap();
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn induced_empty_set() {
        let g = Graph::cycle(5).unwrap();
        let sub = g.induced_subgraph(&VertexSet::new(5)).unwrap();
        assert_eq!(sub.n(), 0);
        assert_eq!(sub.edge_count(), 0);
    }

    #[test]
    fn cycle_minus_vertex_is_path() {
        let c5 = Graph::cycle(5).unwrap();
        let sub = c5.induced_subgraph(&set(5, &[0, 1, 2, 3])).unwrap();
        assert_eq!(sub, Graph::path(4).unwrap());
    }

    #[test]
    fn induced_relabels_in_order() {
        let g = Graph::from_edges(6, [(1, 5), (3, 5), (0, 2)]).unwrap();
        let sub = g.induced_subgraph(&set(6, &[1, 3, 5])).unwrap();
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn induced_rejects_out_of_range() {
        let g = Graph::path(3).unwrap();
        let s = set(5, &[0, 4]);
        assert!(matches!(
            g.induced_subgraph(&s),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        ));
    }

    #[test]
    fn tree_and_forest_predicates() {
        assert!(Graph::path(5).unwrap().is_tree());
        let c5 = Graph::cycle(5).unwrap();
        assert!(!c5.is_tree());
        assert!(!c5.is_forest());
        let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_tree());
        assert!(two_edges.is_forest());
    }

    #[test]
    fn boundary_conventions() {
        assert!(Graph::empty(1).unwrap().is_tree());
        assert!(!Graph::empty(0).unwrap().is_tree());
        assert!(Graph::empty(0).unwrap().is_forest());
        assert!(!Graph::empty(2).unwrap().is_tree());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        assert!(Graph::empty(MAX_VERTICES + 1).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::from_edges(5, [(3, 4), (0, 2), (1, 2)]).unwrap();
        let text = g.to_text();
        assert_eq!(text, "5 3\n0 2\n1 2\n3 4\n");
        assert_eq!(Graph::from_text(&text).unwrap(), g);
    }

    #[test]
    fn text_rejects_malformed() {
        assert!(Graph::from_text("").is_err());
        assert!(Graph::from_text("3 1\n2 1\n").is_err());
        assert!(Graph::from_text("3 2\n0 1\n").is_err());
        assert!(Graph::from_text("3 2\n0 1\n0 1\n").is_err());
        assert!(Graph::from_text("3 1\n0 x\n").is_err());
        assert!(Graph::from_text("3 1\n0 1 2\n").is_err());
    }

    #[test]
    fn wide_rows() {
        let g = Graph::from_edges(200, [(0, 199), (64, 130), (63, 64)]).unwrap();
        assert_eq!(g.stride(), 4);
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![63, 130]);
        assert_eq!(g.component_count(), 197);
        assert!(g.is_forest());
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::new(70);
        s.insert(69).unwrap();
        s.insert(3).unwrap();
        assert!(s.insert(70).is_err());
        assert_eq!(s.to_vec(), vec![3, 69]);
        assert_eq!(s.len(), 2);
        s.remove(3);
        assert!(!s.contains(3));
        assert_eq!(VertexSet::full(70).len(), 70);
    }
}
