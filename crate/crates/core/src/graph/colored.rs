use serde::{Deserialize, Serialize};

use super::GraphError;
use crate::label::{Label, LabelMap};

/// Vertices joined by edges coloured with side labels. Each vertex has at
/// most one edge of each colour, so `nbr[v][c]` is the whole adjacency.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    nbr: Vec<[Option<u32>; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub color: Label,
}

impl ColoredGraph {
    pub fn new(n: usize) -> Self {
        ColoredGraph { nbr: vec![[None; 3]; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, Label)]) -> Result<Self, GraphError> {
        let mut g = ColoredGraph::new(n);
        for &(u, v, c) in edges {
            g.add_edge(u, v, c)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, c: Label) -> Result<(), GraphError> {
        let n = self.nbr.len();
        if u >= n || v >= n {
            return Err(GraphError::VertexOutOfRange(u.max(v)));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        for x in [u, v] {
            if self.nbr[x][c.index()].is_some() {
                return Err(GraphError::ColorConflict { vertex: x, color: c });
            }
        }
        self.nbr[u][c.index()] = Some(v as u32);
        self.nbr[v][c.index()] = Some(u as u32);
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.nbr.len()
    }

    pub fn neighbor(&self, v: usize, c: Label) -> Option<usize> {
        self.nbr[v][c.index()].map(|x| x as usize)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbr[v].iter().filter(|x| x.is_some()).count()
    }

    /// Edges with `u < v`, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (u, row) in self.nbr.iter().enumerate() {
            for c in Label::ALL {
                if let Some(v) = row[c.index()] {
                    if u < v as usize {
                        out.push(Edge { u, v: v as usize, color: c });
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn n_edges(&self) -> usize {
        self.nbr.iter().map(|r| r.iter().filter(|x| x.is_some()).count()).sum::<usize>() / 2
    }

    /// Colours with no edge at `v` (the boundary sides of that copy).
    pub fn boundary(&self, v: usize) -> Vec<Label> {
        Label::ALL.into_iter().filter(|c| self.nbr[v][c.index()].is_none()).collect()
    }

    pub fn color_counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for e in self.edges() {
            c[e.color.index()] += 1;
        }
        c
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n_vertices();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut k = 0;
            while k < comp.len() {
                for w in self.nbr[comp[k]].iter().flatten() {
                    let w = *w as usize;
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> ColoredGraph {
        let mut nbr = vec![[None; 3]; self.n_vertices()];
        for (v, row) in self.nbr.iter().enumerate() {
            for c in 0..3 {
                nbr[perm[v]][c] = row[c].map(|w| perm[w as usize] as u32);
            }
        }
        ColoredGraph { nbr }
    }

    /// Graph with every edge colour `c` replaced by `map(c)`.
    pub fn recolored(&self, map: &LabelMap) -> ColoredGraph {
        let mut nbr = vec![[None; 3]; self.n_vertices()];
        for (v, row) in self.nbr.iter().enumerate() {
            for c in Label::ALL {
                nbr[v][map.apply(c).index()] = row[c.index()];
            }
        }
        ColoredGraph { nbr }
    }

    pub(crate) fn raw(&self, v: usize) -> &[Option<u32>; 3] {
        &self.nbr[v]
    }
}
