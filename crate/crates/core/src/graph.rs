//! Graphs with a fixed vertex order, vertex colorings, and the restrictions
//! that reconstructed secrets are checked against.
//!
//! Vertices are addressed by 0-based index `0..n`, so vertex `i` is the
//! one-based `v_{i+1}`. The order is part of the value: two graphs are equal
//! iff they have the same vertex count and the same edge bits.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Number of lower-triangle positions for `n` vertices.
pub fn triangle_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the unordered pair `{i, j}` in the lower triangle, row-major:
/// `(1,0), (2,0), (2,1), (3,0), ...`.
pub fn triangle_index(i: usize, j: usize) -> usize {
    debug_assert_ne!(i, j);
    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
    hi * (hi - 1) / 2 + lo
}

/// Inverse of [`triangle_index`]: the `(row, column)` pair with `row > column`.
pub fn triangle_pair(pos: usize) -> (usize, usize) {
    let mut row = 1;
    while triangle_len(row + 1) <= pos {
        row += 1;
    }
    (row, pos - triangle_len(row))
}

/// An undirected simple graph stored as its lower-triangle adjacency bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    bits: Vec<bool>,
}

impl Graph {
    pub fn new(n: usize, bits: Vec<bool>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph(
                "a graph needs at least one vertex".into(),
            ));
        }
        if bits.len() != triangle_len(n) {
            return Err(Error::InvalidGraph(format!(
                "{} vertices need {} triangle bits, got {}",
                n,
                triangle_len(n),
                bits.len()
            )));
        }
        Ok(Graph { n, bits })
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, vec![false; triangle_len(n)])
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, vec![true; triangle_len(n)])
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(
                "a cycle needs at least 3 vertices".into(),
            ));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::from_edges(n, &edges)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            g.bits[triangle_index(a, b)] = true;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Lower-triangle bits in canonical order.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && a < self.n && b < self.n && self.bits[triangle_index(a, b)]
    }

    /// Edges as `(row, column)` pairs with `row > column`, in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(pos, _)| triangle_pair(pos))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(u, v))
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (a, b) in self.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Every vertex is reachable from vertex 0. A single vertex is connected.
    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        reached == self.n
    }

    /// A proper 2-coloring found by BFS, if one exists.
    pub fn two_coloring(&self) -> Option<Coloring> {
        let adj = self.adjacency();
        let mut side: Vec<Option<u32>> = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for &u in &adj[v] {
                    match side[u] {
                        None => {
                            side[u] = Some(1 - sv);
                            queue.push_back(u);
                        }
                        Some(su) if su == sv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let colors = side.into_iter().map(|s| s.unwrap()).collect();
        Some(Coloring { k: 2, colors })
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// The graph as an ASCII `0`/`1` string in canonical triangle order.
    pub fn bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

/// A vertex coloring with palette `0..k`. Not necessarily proper.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    k: u32,
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(k: u32, colors: Vec<u32>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidColoring(
                "palette size must be at least 1".into(),
            ));
        }
        if colors.is_empty() {
            return Err(Error::InvalidColoring(
                "a coloring needs at least one vertex".into(),
            ));
        }
        if let Some((v, &c)) = colors.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(Error::InvalidColoring(format!(
                "vertex {v} has color {c}, palette size is {k}"
            )));
        }
        Ok(Coloring { k, colors })
    }

    /// All vertices colored 0 with a single-color palette ("no coloring").
    pub fn uncolored(n: usize) -> Result<Self> {
        Self::new(1, vec![0; n])
    }

    pub fn palette(&self) -> u32 {
        self.k
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Adds `c` to every color modulo the palette size.
    pub fn rotate(&self, c: u32) -> Coloring {
        let shift = c % self.k;
        Coloring {
            k: self.k,
            colors: self.colors.iter().map(|&x| (x + shift) % self.k).collect(),
        }
    }

    pub fn partition(&self) -> Partition {
        partition_of(self)
    }
}

/// A graph together with a (possibly improper) coloring of its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    graph: Graph,
    coloring: Coloring,
}

impl ColoredGraph {
    pub fn new(graph: Graph, coloring: Coloring) -> Result<Self> {
        if graph.vertex_count() != coloring.len() {
            return Err(Error::ParameterMismatch(format!(
                "coloring has {} entries for a graph on {} vertices",
                coloring.len(),
                graph.vertex_count()
            )));
        }
        Ok(ColoredGraph { graph, coloring })
    }

    /// Structure only, palette size 1.
    pub fn uncolored(graph: Graph) -> Self {
        let coloring = Coloring::uncolored(graph.vertex_count()).expect("graph has a vertex");
        ColoredGraph { graph, coloring }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn palette(&self) -> u32 {
        self.coloring.palette()
    }

    pub fn into_parts(self) -> (Graph, Coloring) {
        (self.graph, self.coloring)
    }

    pub fn is_proper(&self) -> bool {
        is_proper_coloring(self)
    }
}

pub fn is_connected(g: &Graph) -> bool {
    g.is_connected()
}

pub fn is_bipartite(g: &Graph) -> bool {
    g.is_bipartite()
}

/// No edge joins two vertices of the same color.
pub fn is_proper_coloring(cg: &ColoredGraph) -> bool {
    proper_for(&cg.graph, &cg.coloring)
}

fn proper_for(g: &Graph, c: &Coloring) -> bool {
    g.edges().all(|(a, b)| c.colors[a] != c.colors[b])
}

/// Color classes of a coloring, each sorted, classes ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<Vec<usize>>);

impl Partition {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, class) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, v) in class.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "v{}", v + 1)?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

pub fn partition_of(coloring: &Coloring) -> Partition {
    let mut classes: Vec<(u32, Vec<usize>)> = Vec::new();
    for (v, &c) in coloring.colors.iter().enumerate() {
        match classes.iter_mut().find(|(color, _)| *color == c) {
            Some((_, class)) => class.push(v),
            None => classes.push((c, vec![v])),
        }
    }
    // Vertices are visited in order, so classes are already sorted by first member.
    Partition(classes.into_iter().map(|(_, class)| class).collect())
}

/// A decidable restriction on reconstructed graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Predicate {
    Any,
    Connected,
    Bipartite,
    /// The coloring is proper for `reference` when given (structure known to
    /// everyone), otherwise for the graph it accompanies.
    ProperColoring {
        reference: Option<Graph>,
    },
}

impl Predicate {
    pub fn proper_coloring() -> Self {
        Predicate::ProperColoring { reference: None }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Predicate::Any => "any",
            Predicate::Connected => "connected",
            Predicate::Bipartite => "bipartite",
            Predicate::ProperColoring { .. } => "proper_coloring",
        }
    }

    pub fn evaluate(&self, cg: &ColoredGraph) -> Result<bool> {
        evaluate_predicate(self, cg)
    }

    /// Whether the predicate only looks at graph structure.
    pub fn is_structural(&self) -> bool {
        !matches!(self, Predicate::ProperColoring { .. })
    }
}

pub fn evaluate_predicate(p: &Predicate, cg: &ColoredGraph) -> Result<bool> {
    Ok(match p {
        Predicate::Any => true,
        Predicate::Connected => cg.graph.is_connected(),
        Predicate::Bipartite => cg.graph.is_bipartite(),
        Predicate::ProperColoring { reference: None } => is_proper_coloring(cg),
        Predicate::ProperColoring {
            reference: Some(reference),
        } => {
            if reference.vertex_count() != cg.vertex_count() {
                return Err(Error::ParameterMismatch(format!(
                    "reference graph has {} vertices, secret has {}",
                    reference.vertex_count(),
                    cg.vertex_count()
                )));
            }
            proper_for(reference, &cg.coloring)
        }
    })
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::ProperColoring { reference: Some(g) } => {
                write!(f, "proper_coloring@{}:{}", g.vertex_count(), g.bit_string())
            }
            p => f.write_str(p.name()),
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "any" => Ok(Predicate::Any),
            "connected" => Ok(Predicate::Connected),
            "bipartite" => Ok(Predicate::Bipartite),
            "proper_coloring" => Ok(Predicate::proper_coloring()),
            _ => {
                let rest = s
                    .strip_prefix("proper_coloring@")
                    .ok_or_else(|| Error::InvalidParams(format!("unknown predicate `{s}`")))?;
                let (n, bits) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::InvalidParams(format!("bad reference graph in `{s}`")))?;
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::InvalidParams(format!("bad vertex count in `{s}`")))?;
                let bits = parse_bit_string(bits)?;
                Ok(Predicate::ProperColoring {
                    reference: Some(Graph::new(n, bits)?),
                })
            }
        }
    }
}

/// Parses an ASCII `0`/`1` string.
pub fn parse_bit_string(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .enumerate()
        .map(|(i, ch)| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::MalformedDigits(format!(
                "character {:?} at offset {} is not a bit",
                ch, i
            ))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> ColoredGraph {
        let g = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (2, 3)]).unwrap();
        ColoredGraph::new(g, Coloring::new(3, vec![0, 0, 2, 1]).unwrap()).unwrap()
    }

    #[test]
    fn triangle_positions_follow_row_major_order() {
        let order: Vec<_> = (0..6).map(triangle_pair).collect();
        assert_eq!(order, vec![(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)]);
        for pos in 0..500 {
            let (i, j) = triangle_pair(pos);
            assert_eq!(triangle_index(i, j), pos);
            assert_eq!(triangle_index(j, i), pos);
        }
    }

    #[test]
    fn graph_rejects_wrong_bit_length() {
        assert!(Graph::new(3, vec![true; 2]).is_err());
        assert!(Graph::new(0, vec![]).is_err());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(Graph::path(3).unwrap().is_connected());
        assert!(!Graph::empty(2).unwrap().is_connected());
        assert!(Graph::complete(4).unwrap().is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
    }

    #[test]
    fn proper_coloring() {
        assert!(is_proper_coloring(&example1()));
        let tri = Graph::complete(3).unwrap();
        let bad = ColoredGraph::new(tri, Coloring::new(3, vec![0, 1, 1]).unwrap()).unwrap();
        assert!(!is_proper_coloring(&bad));
        let edgeless = ColoredGraph::uncolored(Graph::empty(5).unwrap());
        assert!(is_proper_coloring(&edgeless));
    }

    #[test]
    fn bipartite() {
        assert!(Graph::cycle(4).unwrap().is_bipartite());
        assert!(!Graph::complete(3).unwrap().is_bipartite());
        assert!(Graph::empty(3).unwrap().is_bipartite());
        assert!(!Graph::cycle(5).unwrap().is_bipartite());
    }

    #[test]
    fn predicate_dispatch() {
        let path = ColoredGraph::uncolored(Graph::path(3).unwrap());
        assert!(evaluate_predicate(&Predicate::Connected, &path).unwrap());
        assert!(evaluate_predicate(&Predicate::proper_coloring(), &example1()).unwrap());
        let disconnected = ColoredGraph::uncolored(Graph::empty(4).unwrap());
        assert!(evaluate_predicate(&Predicate::Any, &disconnected).unwrap());
        assert!(!evaluate_predicate(&Predicate::Connected, &disconnected).unwrap());
    }

    #[test]
    fn reference_graph_size_must_match() {
        let p = Predicate::ProperColoring {
            reference: Some(Graph::complete(3).unwrap()),
        };
        assert!(matches!(
            evaluate_predicate(&p, &example1()),
            Err(Error::ParameterMismatch(_))
        ));
        let p = Predicate::ProperColoring {
            reference: Some(example1().graph().clone()),
        };
        let recolored =
            ColoredGraph::new(Graph::empty(4).unwrap(), example1().coloring().clone()).unwrap();
        assert!(evaluate_predicate(&p, &recolored).unwrap());
    }

    #[test]
    fn partitions() {
        let expect = vec![vec![0, 1], vec![2], vec![3]];
        let p = partition_of(&Coloring::new(3, vec![0, 0, 2, 1]).unwrap());
        assert_eq!(p.classes(), expect.as_slice());
        assert_eq!(p.to_string(), "{{v1,v2},{v3},{v4}}");
        let q = partition_of(&Coloring::new(3, vec![1, 1, 0, 2]).unwrap());
        assert_eq!(p, q);
        let single = partition_of(&Coloring::new(1, vec![0]).unwrap());
        assert_eq!(single.classes(), &[vec![0]]);
    }

    #[test]
    fn predicate_text_form() {
        for p in [
            Predicate::Any,
            Predicate::Connected,
            Predicate::Bipartite,
            Predicate::proper_coloring(),
            Predicate::ProperColoring {
                reference: Some(Graph::path(4).unwrap()),
            },
        ] {
            assert_eq!(p.to_string().parse::<Predicate>().unwrap(), p);
        }
        assert!("planar".parse::<Predicate>().is_err());
    }

    #[test]
    fn coloring_validation() {
        assert!(Coloring::new(3, vec![0, 3]).is_err());
        assert!(Coloring::new(0, vec![]).is_err());
        assert!(
            ColoredGraph::new(Graph::empty(3).unwrap(), Coloring::uncolored(2).unwrap()).is_err()
        );
        assert_eq!(
            Coloring::new(3, vec![0, 0, 2, 1])
                .unwrap()
                .rotate(1)
                .colors(),
            &[1, 1, 0, 2]
        );
    }
}
