//! Coupling graphs: LNN chains, 2D grids and arbitrary bounded-degree graphs.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Wires;

/// Default number of node expansions for the Hamiltonian-path search.
pub const DEFAULT_CHAIN_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArchKind {
    Lnn,
    /// Row-major sites: site `r * cols + c`.
    Grid {
        rows: usize,
        cols: usize,
    },
    Graph,
}

/// An undirected coupling graph over `n_sites` physical sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Architecture {
    kind: ArchKind,
    adj: Vec<BTreeSet<usize>>,
}

impl Architecture {
    pub fn lnn(n: usize) -> Architecture {
        let edges = (1..n).map(|i| (i - 1, i));
        Architecture::build(ArchKind::Lnn, n, edges)
    }

    pub fn grid(rows: usize, cols: usize) -> Architecture {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let s = r * cols + c;
                if c + 1 < cols {
                    edges.push((s, s + 1));
                }
                if r + 1 < rows {
                    edges.push((s, s + cols));
                }
            }
        }
        Architecture::build(ArchKind::Grid { rows, cols }, rows * cols, edges)
    }

    /// A connected graph given by its edge list.
    pub fn graph(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Architecture> {
        if n == 0 {
            return Err(Error::Invalid("architecture needs at least one site".into()));
        }
        let edges: Vec<_> = edges.into_iter().collect();
        for &(a, b) in &edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Invalid(format!("bad edge ({a}, {b}) for {n} sites")));
            }
        }
        let arch = Architecture::build(ArchKind::Graph, n, edges);
        if !arch.is_connected() {
            return Err(Error::Invalid("coupling graph is not connected".into()));
        }
        Ok(arch)
    }

    fn build(kind: ArchKind, n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Architecture {
        let mut adj = vec![BTreeSet::new(); n];
        for (a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Architecture { kind, adj }
    }

    pub fn kind(&self) -> ArchKind {
        self.kind
    }

    pub fn n_sites(&self) -> usize {
        self.adj.len()
    }

    pub fn is_lnn(&self) -> bool {
        self.kind == ArchKind::Lnn
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        self.adj.get(a).is_some_and(|s| s.contains(&b))
    }

    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[a].iter().copied()
    }

    /// Every edge once, smaller site first, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, s)| s.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    fn is_connected(&self) -> bool {
        let n = self.n_sites();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Checks that every two-qubit gate of `c` acts on an edge.
    pub fn validate(&self, c: &Circuit) -> Result<()> {
        if c.n_wires() != self.n_sites() {
            return Err(Error::WireCountMismatch {
                circuit: c.n_wires(),
                arch: self.n_sites(),
            });
        }
        for (index, g) in c.gates().iter().enumerate() {
            if let Wires::Two(a, b) = g.wires() {
                if !self.are_adjacent(a, b) {
                    return Err(Error::NotAdjacent { index, a, b });
                }
            }
        }
        Ok(())
    }

    /// A Hamiltonian path through all sites, as an ordered list of sites.
    pub fn embed_chain(&self) -> Result<Vec<usize>> {
        self.embed_chain_with_budget(DEFAULT_CHAIN_BUDGET)
    }

    pub fn embed_chain_with_budget(&self, budget: u64) -> Result<Vec<usize>> {
        match self.kind {
            ArchKind::Lnn => Ok((0..self.n_sites()).collect()),
            ArchKind::Grid { rows, cols } => Ok((0..rows)
                .flat_map(|r| {
                    let row: Vec<usize> = (0..cols).map(|c| r * cols + c).collect();
                    if r % 2 == 0 {
                        row
                    } else {
                        row.into_iter().rev().collect()
                    }
                })
                .collect()),
            ArchKind::Graph => HamiltonSearch::new(self, budget).run(),
        }
    }

    /// Text form: `lnn N`, `grid R C`, or `graph N` followed by `edge a b` lines.
    pub fn parse(text: &str) -> Result<Architecture> {
        let mut lines = crate::text::directives(text);
        let (line, head) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            reason: "empty architecture file".into(),
        })?;
        let perr = |line: usize, reason: &str| Error::Parse {
            line,
            reason: reason.to_string(),
        };
        let arch = match head.as_slice() {
            ["lnn", n] => {
                let n = crate::text::parse_num(n, line)?;
                if n == 0 {
                    return Err(perr(line, "lnn needs at least one site"));
                }
                Architecture::lnn(n)
            }
            ["grid", r, c] => {
                let (r, c) = (crate::text::parse_num(r, line)?, crate::text::parse_num(c, line)?);
                if r == 0 || c == 0 {
                    return Err(perr(line, "grid dimensions must be positive"));
                }
                Architecture::grid(r, c)
            }
            ["graph", n] => {
                let n = crate::text::parse_num(n, line)?;
                let mut edges = Vec::new();
                for (line, toks) in lines.by_ref() {
                    match toks.as_slice() {
                        ["edge", a, b] => {
                            let a = crate::text::parse_num(a, line)?;
                            let b = crate::text::parse_num(b, line)?;
                            if a >= n || b >= n || a == b {
                                return Err(perr(line, "edge endpoints out of range"));
                            }
                            edges.push((a, b));
                        }
                        _ => return Err(perr(line, "expected `edge a b`")),
                    }
                }
                return Architecture::graph(n, edges).map_err(|e| perr(line, &e.to_string()));
            }
            _ => return Err(perr(line, "expected `lnn N`, `grid R C` or `graph N`")),
        };
        if let Some((line, _)) = lines.next() {
            return Err(perr(line, "unexpected content after architecture header"));
        }
        Ok(arch)
    }

    pub fn emit(&self) -> String {
        match self.kind {
            ArchKind::Lnn => format!("lnn {}\n", self.n_sites()),
            ArchKind::Grid { rows, cols } => format!("grid {rows} {cols}\n"),
            ArchKind::Graph => {
                let mut out = format!("graph {}\n", self.n_sites());
                for (a, b) in self.edges() {
                    let _ = writeln!(out, "edge {a} {b}");
                }
                out
            }
        }
    }
}

/// Free-function form of [`Architecture::validate`].
pub fn validate_on(c: &Circuit, arch: &Architecture) -> Result<()> {
    arch.validate(c)
}

struct HamiltonSearch<'a> {
    arch: &'a Architecture,
    budget: u64,
    spent: u64,
    visited: Vec<bool>,
    path: Vec<usize>,
}

impl<'a> HamiltonSearch<'a> {
    fn new(arch: &'a Architecture, budget: u64) -> Self {
        HamiltonSearch {
            arch,
            budget,
            spent: 0,
            visited: vec![false; arch.n_sites()],
            path: Vec::new(),
        }
    }

    fn run(mut self) -> Result<Vec<usize>> {
        let n = self.arch.n_sites();
        // Low-degree sites first: a degree-1 site must be an endpoint.
        let mut starts: Vec<usize> = (0..n).collect();
        starts.sort_by_key(|&v| self.arch.adj[v].len());
        for s in starts {
            self.visited[s] = true;
            self.path.push(s);
            match self.extend() {
                Some(true) => return Ok(self.path),
                Some(false) => {}
                None => {
                    return Err(Error::ChainNotFound(format!(
                        "search budget of {} expansions exhausted",
                        self.budget
                    )))
                }
            }
            self.path.pop();
            self.visited[s] = false;
        }
        Err(Error::ChainNotFound("graph has no Hamiltonian path".into()))
    }

    /// `Some(true)` when the path is complete, `Some(false)` on a dead end,
    /// `None` when the budget ran out.
    fn extend(&mut self) -> Option<bool> {
        if self.path.len() == self.arch.n_sites() {
            return Some(true);
        }
        self.spent += 1;
        if self.spent > self.budget {
            return None;
        }
        let last = *self.path.last().unwrap();
        let free_degree = |v: usize, visited: &[bool]| self.arch.adj[v].iter().filter(|&&w| !visited[w]).count();
        let mut next: Vec<usize> = self.arch.adj[last]
            .iter()
            .copied()
            .filter(|&w| !self.visited[w])
            .collect();
        next.sort_by_key(|&w| free_degree(w, &self.visited));
        for w in next {
            self.visited[w] = true;
            self.path.push(w);
            match self.extend() {
                Some(false) => {}
                other => return other,
            }
            self.path.pop();
            self.visited[w] = false;
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::Gate;

    #[test]
    fn lnn_and_grid_edges() {
        assert_eq!(Architecture::lnn(4).edges(), vec![(0, 1), (1, 2), (2, 3)]);
        let g = Architecture::grid(2, 2);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(g.n_sites(), 4);
    }

    #[test]
    fn validate_examples() {
        let lnn3 = Architecture::lnn(3);
        let bad = Circuit::from_gates(3, [Gate::cnot(0, 2)]).unwrap();
        assert_eq!(lnn3.validate(&bad), Err(Error::NotAdjacent { index: 0, a: 0, b: 2 }));
        let ok = Circuit::from_gates(3, [Gate::cnot(0, 1)]).unwrap();
        assert!(lnn3.validate(&ok).is_ok());
        let diag = Circuit::from_gates(4, [Gate::cnot(0, 3)]).unwrap();
        assert!(Architecture::grid(2, 2).validate(&diag).is_err());
        assert!(matches!(
            lnn3.validate(&Circuit::new(4)),
            Err(Error::WireCountMismatch { .. })
        ));
    }

    #[test]
    fn chain_embedding() {
        assert_eq!(Architecture::lnn(5).embed_chain().unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(Architecture::grid(2, 3).embed_chain().unwrap(), vec![0, 1, 2, 5, 4, 3]);
        let star = Architecture::graph(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(matches!(star.embed_chain(), Err(Error::ChainNotFound(_))));
    }

    #[test]
    fn graph_chain_is_a_real_path() {
        // Petersen graph: has a Hamiltonian path but no Hamiltonian cycle.
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = Architecture::graph(10, outer.chain(spokes).chain(inner)).unwrap();
        let chain = g.embed_chain().unwrap();
        let mut sorted = chain.clone();
        sorted.sort();
        assert_eq!(sorted, (0..10).collect::<Vec<_>>());
        assert!(chain.windows(2).all(|w| g.are_adjacent(w[0], w[1])));
    }

    #[test]
    fn tiny_budget_reports_exhaustion() {
        let g = Architecture::graph(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let err = g.embed_chain_with_budget(1).unwrap_err();
        assert!(err.to_string().contains("budget"));
    }

    #[test]
    fn disconnected_graph_rejected() {
        assert!(Architecture::graph(4, [(0, 1), (2, 3)]).is_err());
    }

    #[test]
    fn text_round_trip() {
        for text in ["lnn 5\n", "grid 2 3\n", "graph 3\nedge 0 1\nedge 1 2\n"] {
            let a = Architecture::parse(text).unwrap();
            assert_eq!(a.emit(), text);
        }
        assert!(Architecture::parse("ring 4\n").is_err());
        assert!(Architecture::parse("graph 3\nedge 0 7\n").is_err());
    }
}
