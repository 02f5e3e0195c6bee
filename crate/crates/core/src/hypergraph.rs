//! Graphs and hypergraphs over labeled vertices, and their qubit states.
//!
//! Text format: `n; e1; e2; …` where each edge is a whitespace-separated list
//! of 1-based vertex labels. Newlines may stand in for `;`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::statevec::{plus_state, QubitState};

/// Vertex set `{1..n}` plus a set of hyperedges, each of size ≥ 2.
///
/// Edges are kept as sorted vertex lists in a sorted set, so equality and
/// serialization are canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n_vertices: usize,
    edges: BTreeSet<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n_vertices: usize) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::InvalidSize {
                n: 0,
                min: 1,
                max: crate::statevec::max_qubits(),
            });
        }
        Ok(Self {
            n_vertices,
            edges: BTreeSet::new(),
        })
    }

    /// Builds a hypergraph from an edge list, rejecting loops, repeated
    /// vertices, out-of-range labels and duplicate edges.
    pub fn from_edges<I, E>(n_vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut h = Self::new(n_vertices)?;
        for e in edges {
            h.add_edge(e.as_ref()).map_err(|msg| Error::Parse {
                line: 1,
                column: 1,
                message: msg,
            })?;
        }
        Ok(h)
    }

    /// The complete graph on `n` vertices.
    pub fn complete_graph(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                edges.push(vec![a, b]);
            }
        }
        Self::from_edges(n, edges)
    }

    fn add_edge(&mut self, vertices: &[usize]) -> std::result::Result<(), String> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        if let Some(&v) = sorted.iter().find(|&&v| v == 0 || v > self.n_vertices) {
            return Err(format!("vertex {v} outside 1..={}", self.n_vertices));
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(format!("edge {vertices:?} repeats a vertex (loops are not allowed)"));
        }
        if sorted.len() < 2 {
            return Err(format!("edge {vertices:?} has fewer than two vertices"));
        }
        if !self.edges.insert(sorted) {
            return Err(format!("duplicate edge {vertices:?}"));
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = &[usize]> {
        self.edges.iter().map(Vec::as_slice)
    }

    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    /// `∏_e C^{|e|-1}Z_e |+⟩^{⊗n}`. All the gates are diagonal and commute, so
    /// edge order does not matter.
    pub fn build_state(&self) -> Result<QubitState> {
        self.edges
            .iter()
            .try_fold(plus_state(self.n_vertices)?, |s, e| s.apply_cz(e))
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n_vertices)?;
        for e in &self.edges {
            f.write_str(";")?;
            for v in e {
                write!(f, " {v}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_hypergraph(s)
    }
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Splits `text` into groups at `;` or newline, keeping token positions.
fn tokenize<'a>(text: &'a str) -> Vec<Vec<Token<'a>>> {
    let mut groups: Vec<Vec<Token<'a>>> = vec![Vec::new()];
    for (line_no, line) in text.lines().enumerate() {
        if line_no > 0 && !groups.last().is_none_or(Vec::is_empty) {
            groups.push(Vec::new());
        }
        let mut start: Option<usize> = None;
        let flush = |groups: &mut Vec<Vec<Token<'a>>>, from: usize, to: usize| {
            groups.last_mut().unwrap().push(Token {
                text: &line[from..to],
                line: line_no + 1,
                column: line[..from].chars().count() + 1,
            });
        };
        for (i, ch) in line.char_indices() {
            if ch == ';' || ch.is_whitespace() {
                if let Some(s) = start.take() {
                    flush(&mut groups, s, i);
                }
                if ch == ';' {
                    groups.push(Vec::new());
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            flush(&mut groups, s, line.len());
        }
    }
    groups
}

/// Parses the `n; e1; e2; …` edge-list format.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let err = |line, column, message: String| Error::Parse { line, column, message };
    let mut groups = tokenize(text).into_iter();
    let header = loop {
        match groups.next() {
            Some(g) if g.is_empty() => continue,
            Some(g) => break g,
            None => return Err(err(1, 1, "empty input: expected vertex count".into())),
        }
    };
    if header.len() != 1 {
        let t = &header[1];
        return Err(err(
            t.line,
            t.column,
            "expected a single vertex count before the first ';'".into(),
        ));
    }
    let n: usize = header[0].text.parse().map_err(|_| {
        err(
            header[0].line,
            header[0].column,
            format!("malformed vertex count {:?}", header[0].text),
        )
    })?;
    let mut h = Hypergraph::new(n)
        .map_err(|_| err(header[0].line, header[0].column, "vertex count must be positive".into()))?;
    for group in groups {
        if group.is_empty() {
            continue;
        }
        let mut edge = Vec::with_capacity(group.len());
        for t in &group {
            let v: usize = t
                .text
                .parse()
                .map_err(|_| err(t.line, t.column, format!("malformed vertex label {:?}", t.text)))?;
            if v == 0 || v > n {
                return Err(err(t.line, t.column, format!("vertex {v} outside 1..={n}")));
            }
            edge.push(v);
        }
        h.add_edge(&edge).map_err(|m| err(group[0].line, group[0].column, m))?;
    }
    Ok(h)
}

/// Parses the CLI form `--edges "1 2,2 3,3 1" --vertices 3`.
pub fn parse_edge_flags(edges: &str, n_vertices: usize) -> Result<Hypergraph> {
    let text = format!("{n_vertices};{}", edges.replace(',', ";"));
    parse_hypergraph(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const S8: f64 = 0.353_553_390_593_273_8;

    fn reals(s: &QubitState) -> Vec<f64> {
        s.amplitudes().iter().map(|a| a.re).collect()
    }

    #[test]
    fn triangle_state() {
        let g = parse_hypergraph("3; 1 2; 2 3; 3 1").unwrap();
        assert!(g.is_graph());
        let want = [1.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0, -1.0].map(|x| x * S8);
        assert_eq!(reals(&g.build_state().unwrap()), want);
        assert_eq!(g, Hypergraph::complete_graph(3).unwrap());
    }

    #[test]
    fn three_uniform_hyperedge_state() {
        let h = parse_hypergraph("3; 1 2 3").unwrap();
        assert!(!h.is_graph());
        let want = [1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -1.0].map(|x| x * S8);
        assert_eq!(reals(&h.build_state().unwrap()), want);
    }

    #[test]
    fn empty_edge_set_gives_plus_state() {
        let h = parse_hypergraph("3").unwrap();
        assert_eq!(h.build_state().unwrap(), plus_state(3).unwrap());
    }

    #[test]
    fn canonical_round_trip() {
        let h = parse_hypergraph("4; 3 1; 4 2 1\n2 3").unwrap();
        assert_eq!(h.to_string(), "4; 1 2 4; 1 3; 2 3");
        assert_eq!(parse_hypergraph(&h.to_string()).unwrap(), h);
    }

    #[test]
    fn rejects_loops_with_position() {
        match parse_hypergraph("3; 1 1") {
            Err(Error::Parse {
                line: 1,
                column: 4,
                message,
            }) => assert!(message.contains("loop")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_vertices_and_duplicates() {
        match parse_hypergraph("3; 1 2;\n 0 3") {
            Err(Error::Parse { line: 2, column: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_hypergraph("3; 1 4") {
            Err(Error::Parse { line: 1, column: 6, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_hypergraph("3; 1 2; 2 1") {
            Err(Error::Parse { message, .. }) => assert!(message.contains("duplicate")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_hypergraph("3; 2").is_err());
        assert!(parse_hypergraph("3; 1 x").is_err());
        assert!(parse_hypergraph("three; 1 2").is_err());
        assert!(parse_hypergraph("0").is_err());
        assert!(parse_hypergraph("").is_err());
        assert!(parse_hypergraph("3 1; 1 2").is_err());
    }

    #[test]
    fn cli_edge_flags() {
        let h = parse_edge_flags("1 2,2 3,3 1", 3).unwrap();
        assert_eq!(h, Hypergraph::complete_graph(3).unwrap());
    }
}
