//! Walk notation for volume graphs, 1-based: `1-c-2-b-3`. A vertex with
//! several onward walks lists them as `<(a-7|b-3-a-4)`; an edge back to an
//! already written vertex is `~a-5`.

use super::colored::ColoredGraph;
use super::GraphError;
use crate::label::Label;

pub fn walk_notation(g: &ColoredGraph) -> String {
    let n = g.n_vertices();
    if n == 0 {
        return String::new();
    }
    let mut seen = vec![false; n];
    let mut done_edges = std::collections::HashSet::new();
    let mut parts = Vec::new();
    loop {
        // start each component at its lowest-numbered leaf, if any
        let unvisited: Vec<usize> = (0..n).filter(|&v| !seen[v]).collect();
        let Some(&first) = unvisited.first() else { break };
        let comp = component_of(g, first);
        let start = comp.iter().copied().find(|&v| g.degree(v) <= 1).unwrap_or(comp[0]);
        let mut out = String::new();
        write_from(g, start, &mut seen, &mut done_edges, &mut out);
        parts.push(out);
    }
    parts.join(" ")
}

fn component_of(g: &ColoredGraph, s: usize) -> Vec<usize> {
    g.components().into_iter().find(|c| c.contains(&s)).unwrap_or_else(|| vec![s])
}

fn write_from(
    g: &ColoredGraph,
    v: usize,
    seen: &mut [bool],
    done: &mut std::collections::HashSet<(usize, usize, Label)>,
    out: &mut String,
) {
    seen[v] = true;
    out.push_str(&(v + 1).to_string());
    let mut forward = Vec::new();
    for c in Label::ALL {
        if let Some(w) = g.neighbor(v, c) {
            let key = (v.min(w), v.max(w), c);
            if done.contains(&key) {
                continue;
            }
            done.insert(key);
            if seen[w] {
                out.push_str(&format!("~{}-{}", c.letter(), w + 1));
            } else {
                forward.push((c, w));
            }
        }
    }
    // a neighbour may be reached through an earlier branch; re-check at emission
    match forward.len() {
        0 => {}
        1 => {
            let (c, w) = forward[0];
            out.push_str(&format!("-{}-", c.letter()));
            write_from(g, w, seen, done, out);
        }
        _ => {
            out.push_str("<(");
            for (k, &(c, w)) in forward.iter().enumerate() {
                if k > 0 {
                    out.push('|');
                }
                if seen[w] {
                    out.push_str(&format!("~{}-{}", c.letter(), w + 1));
                    continue;
                }
                out.push_str(&format!("{}-", c.letter()));
                write_from(g, w, seen, done, out);
            }
            out.push(')');
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    edges: Vec<(usize, usize, Label)>,
    max_vertex: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> GraphError {
        GraphError::Parse(format!("{what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), GraphError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize, GraphError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let v: usize = std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .filter(|&v| v >= 1)
            .ok_or_else(|| self.err("expected a vertex number"))?;
        self.max_vertex = self.max_vertex.max(v);
        Ok(v - 1)
    }

    fn color(&mut self) -> Result<Label, GraphError> {
        self.skip_ws();
        let c = self.s.get(self.pos).copied().ok_or_else(|| self.err("expected a colour"))?;
        self.pos += 1;
        // primed colours as in a' are accepted
        if self.s.get(self.pos) == Some(&b'\'') {
            self.pos += 1;
        }
        (c as char).to_string().parse::<Label>().map_err(|_| self.err("unknown colour"))
    }

    fn node(&mut self) -> Result<(), GraphError> {
        let v = self.number()?;
        self.rest(v)
    }

    fn rest(&mut self, v: usize) -> Result<(), GraphError> {
        loop {
            match self.peek() {
                Some(b'~') => {
                    self.pos += 1;
                    let c = self.color()?;
                    self.expect(b'-')?;
                    let w = self.number()?;
                    self.edges.push((v, w, c));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let c = self.color()?;
                    self.expect(b'-')?;
                    let w = self.number()?;
                    self.edges.push((v, w, c));
                    return self.rest(w);
                }
                Some(b'<') => {
                    self.pos += 1;
                    self.expect(b'(')?;
                    loop {
                        if self.peek() == Some(b'~') {
                            self.pos += 1;
                        }
                        let c = self.color()?;
                        self.expect(b'-')?;
                        let w = self.number()?;
                        self.edges.push((v, w, c));
                        self.rest(w)?;
                        match self.peek() {
                            Some(b'|') => self.pos += 1,
                            Some(b')') => {
                                self.pos += 1;
                                return Ok(());
                            }
                            _ => return Err(self.err("expected '|' or ')'")),
                        }
                    }
                }
                _ => return Ok(()),
            }
        }
    }
}

/// Parses walk notation. `n` fixes the vertex count; by default it is the
/// largest vertex number mentioned.
pub fn parse_walk(s: &str, n: Option<usize>) -> Result<ColoredGraph, GraphError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, edges: Vec::new(), max_vertex: 0 };
    while p.peek().is_some() {
        p.node()?;
    }
    let n = n.unwrap_or(p.max_vertex);
    ColoredGraph::from_edges(n, &p.edges)
}
