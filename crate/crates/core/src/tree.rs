//! Undirected simple graphs, validated trees, hop distances and Wiener index.
//!
//! Adjacency lists are kept sorted so that every traversal, and every random
//! walk that indexes into a neighbour list, is deterministic.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::io::{BufRead, Write};
use std::ops::Deref;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Dense vertex index in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Marker for unreachable vertices in [`bfs_distances`] output.
pub const UNREACHABLE: usize = usize::MAX;

/// Simple undirected graph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a simple graph, rejecting out-of-range ids, self-loops and
    /// repeated edges. Connectivity is not required.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::IdOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge { u, v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            adj,
            edges: edges.to_vec(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in construction order, with the orientation they were given in.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbour list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// First vertex not reachable from vertex 0, if any.
    pub fn first_unreachable(&self) -> Option<usize> {
        if self.adj.is_empty() {
            return None;
        }
        let dist = bfs_from(self, 0);
        dist.iter().position(|&d| d == UNREACHABLE)
    }

    pub fn is_connected(&self) -> bool {
        self.first_unreachable().is_none()
    }

    pub fn is_tree(&self) -> bool {
        !self.adj.is_empty() && self.edges.len() + 1 == self.adj.len() && self.is_connected()
    }

    fn check_vertex(&self, v: VertexId) -> Result<usize> {
        if v.0 >= self.vertex_count() {
            Err(Error::IdOutOfRange {
                id: v.0,
                n: self.vertex_count(),
            })
        } else {
            Ok(v.0)
        }
    }

    fn require_connected(&self) -> Result<()> {
        match self.first_unreachable() {
            Some(vertex) => Err(Error::NotConnected { vertex }),
            None => Ok(()),
        }
    }
}

/// A graph known to be a tree (connected, acyclic, `n >= 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedTree(Graph);

impl SeedTree {
    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    /// Wraps a graph already known to be a tree. Only for constructions that
    /// preserve the tree property by design.
    pub(crate) fn from_graph_unchecked(g: Graph) -> Self {
        debug_assert!(g.is_tree());
        SeedTree(g)
    }
}

impl Deref for SeedTree {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl AsRef<Graph> for SeedTree {
    fn as_ref(&self) -> &Graph {
        &self.0
    }
}

impl TryFrom<Graph> for SeedTree {
    type Error = Error;

    fn try_from(g: Graph) -> Result<Self> {
        let n = g.vertex_count();
        validate_tree(n, g.edges())
    }
}

/// Checks that `(n, edges)` describes a tree and returns it with degrees
/// available. Errors name the first offending id, edge or vertex, checked in
/// edge order: range, self-loop, duplicate, cycle, then connectivity.
pub fn validate_tree(n: usize, edges: &[(usize, usize)]) -> Result<SeedTree> {
    if n == 0 {
        return Err(Error::BadParameter("a tree needs n >= 1".into()));
    }
    let g = Graph::new(n, edges)?;

    let mut dsu = Dsu::new(n);
    for &(u, v) in edges {
        if !dsu.union(u, v) {
            return Err(Error::HasCycle { u, v });
        }
    }
    g.require_connected()?;
    Ok(SeedTree(g))
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

fn bfs_from(g: &Graph, source: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHABLE; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Hop distances from `source`; unreachable vertices get [`UNREACHABLE`].
pub fn bfs_distances(g: &Graph, source: VertexId) -> Result<Vec<usize>> {
    let s = g.check_vertex(source)?;
    Ok(bfs_from(g, s))
}

/// All-pairs hop distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<usize>,
}

impl DistanceMatrix {
    pub fn new(g: &Graph) -> Result<Self> {
        g.require_connected()?;
        let n = g.vertex_count();
        let rows: Vec<Vec<usize>> = (0..n).into_par_iter().map(|u| bfs_from(g, u)).collect();
        Ok(DistanceMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> usize {
        self.data[u * self.n + v]
    }
}

/// Wiener index by BFS from every vertex: the sum of hop distances over
/// unordered vertex pairs.
pub fn wiener_brute(g: &Graph) -> Result<BigInt> {
    g.require_connected()?;
    let n = g.vertex_count();
    let double: u128 = (0..n)
        .into_par_iter()
        .map(|u| bfs_from(g, u).iter().map(|&d| d as u128).sum::<u128>())
        .sum();
    Ok(BigInt::from(double / 2))
}

/// Linear-time Wiener index of a tree: every edge is crossed by
/// `cnt * (n - cnt)` shortest paths, `cnt` being the size of one side.
pub fn wiener_fast_tree(tree: &SeedTree) -> BigInt {
    let n = tree.vertex_count();
    let sizes = subtree_sizes(tree, 0);
    let total: u128 = (1..n)
        .map(|v| {
            let c = sizes.size[v] as u128;
            c * (n as u128 - c)
        })
        .sum();
    BigInt::from(total)
}

/// Rooted view of a tree: parent pointers, subtree sizes and a DFS preorder.
pub(crate) struct Rooted {
    pub parent: Vec<usize>,
    pub size: Vec<usize>,
    pub order: Vec<usize>,
}

/// Iterative DFS rooted at `root`; `parent[root] == root`.
pub(crate) fn subtree_sizes(g: &Graph, root: usize) -> Rooted {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &u in order.iter().rev() {
        if u != root {
            size[parent[u]] += size[u];
        }
    }
    Rooted {
        parent,
        size,
        order,
    }
}

/// Mean hop distance over unordered pairs, `W / (n(n-1)/2)`.
pub fn average_path_length(g: &Graph) -> Result<BigRational> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::DegenerateSize { n });
    }
    let w = wiener_brute(g)?;
    let pairs = BigInt::from(n) * BigInt::from(n - 1) / 2;
    Ok(BigRational::new(w, pairs))
}

/// Reads the edge-list format: a header `n m`, then `m` lines `u v`.
/// Lines starting with `#` and blank lines are skipped.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let nums = parse_pair(trimmed, lineno)?;
        match header {
            None => header = Some(nums),
            Some((_, m)) => {
                if edges.len() == m {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("more than the declared {m} edges"),
                    });
                }
                edges.push(nums);
            }
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing `n m` header".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("declared {m} edges, found {}", edges.len()),
        });
    }
    Ok((n, edges))
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or(Error::Parse {
            line: lineno,
            msg: "expected two integers".into(),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: format!("not a non-negative integer: {tok:?}"),
        })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line: lineno,
            msg: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count())?;
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// Reads and validates a tree from the edge-list format.
pub fn read_tree<R: BufRead>(reader: R) -> Result<SeedTree> {
    let (n, edges) = read_edge_list(reader)?;
    validate_tree(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> SeedTree {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        validate_tree(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> SeedTree {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        validate_tree(leaves + 1, &edges).unwrap()
    }

    fn spider() -> SeedTree {
        validate_tree(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn single_vertex_is_a_tree() {
        let t = validate_tree(1, &[]).unwrap();
        assert_eq!(t.degrees(), vec![0]);
        assert_eq!(wiener_brute(&t).unwrap(), BigInt::from(0));
        assert_eq!(wiener_fast_tree(&t), BigInt::from(0));
    }

    #[test]
    fn p3_degrees() {
        let t = validate_tree(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(t.degrees(), vec![2, 1, 1]);
    }

    #[test]
    fn validation_errors_name_the_offender() {
        assert!(matches!(
            validate_tree(3, &[(0, 1), (1, 2), (2, 0)]),
            Err(Error::HasCycle { u: 2, v: 0 })
        ));
        assert!(matches!(
            validate_tree(3, &[(0, 1), (1, 3)]),
            Err(Error::IdOutOfRange { id: 3, n: 3 })
        ));
        assert!(matches!(
            validate_tree(3, &[(0, 1), (1, 1)]),
            Err(Error::SelfLoop { vertex: 1 })
        ));
        assert!(matches!(
            validate_tree(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge { u: 1, v: 0 })
        ));
        assert!(matches!(
            validate_tree(4, &[(0, 1), (2, 3)]),
            Err(Error::NotConnected { vertex: 2 })
        ));
        assert!(matches!(validate_tree(0, &[]), Err(Error::BadParameter(_))));
    }

    #[test]
    fn bfs_examples() {
        assert_eq!(bfs_distances(&path(3), VertexId(0)).unwrap(), vec![0, 1, 2]);
        assert_eq!(
            bfs_distances(&star(4), VertexId(0)).unwrap(),
            vec![0, 1, 1, 1, 1]
        );
        assert_eq!(
            bfs_distances(&path(9), VertexId(0)).unwrap(),
            (0..9).collect::<Vec<_>>()
        );
        assert!(matches!(
            bfs_distances(&path(3), VertexId(3)),
            Err(Error::IdOutOfRange { .. })
        ));
    }

    #[test]
    fn wiener_examples() {
        assert_eq!(wiener_brute(&star(4)).unwrap(), BigInt::from(16));
        assert_eq!(wiener_brute(&path(9)).unwrap(), BigInt::from(120));
        assert_eq!(wiener_brute(&spider()).unwrap(), BigInt::from(18));
        assert_eq!(wiener_fast_tree(&path(9)), BigInt::from(120));
        assert_eq!(wiener_fast_tree(&spider()), BigInt::from(18));
        for s in 1..12 {
            assert_eq!(wiener_fast_tree(&star(s)), BigInt::from(s * s));
        }
    }

    #[test]
    fn wiener_brute_rejects_disconnected() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            wiener_brute(&g),
            Err(Error::NotConnected { vertex: 2 })
        ));
    }

    #[test]
    fn average_path_length_examples() {
        assert_eq!(
            average_path_length(&path(3)).unwrap(),
            BigRational::new(4.into(), 3.into())
        );
        assert_eq!(
            average_path_length(&star(4)).unwrap(),
            BigRational::new(16.into(), 10.into())
        );
        assert_eq!(
            average_path_length(&path(2)).unwrap(),
            BigRational::from_integer(1.into())
        );
        assert!(matches!(
            average_path_length(&path(1)),
            Err(Error::DegenerateSize { n: 1 })
        ));
    }

    #[test]
    fn edge_list_round_trip_and_comments() {
        let text = "# spider\n5 4\n0 1\n0 2\n# arm\n0 3\n3 4\n";
        let t = read_tree(text.as_bytes()).unwrap();
        assert_eq!(t, spider());
        let mut buf = Vec::new();
        write_edge_list(&t, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "5 4\n0 1\n0 2\n0 3\n3 4\n");
    }

    #[test]
    fn edge_list_parse_errors() {
        assert!(matches!(
            read_edge_list("3 2\n0 1\n".as_bytes()),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            read_edge_list("3 1\n0 x\n".as_bytes()),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_edge_list("".as_bytes()),
            Err(Error::Parse { .. })
        ));
    }
}
