//! Spiders, trees and small simple graphs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};

/// `S(λ_1, …, λ_d)`: `d` paths of `λ_i` vertices joined to one center.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spider {
    legs: Partition,
}

impl Spider {
    pub fn new(legs: Partition) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::InvalidGraph("a spider needs at least one leg".into()));
        }
        Ok(Self { legs })
    }

    pub fn from_legs(legs: &[u64]) -> Result<Self> {
        Self::new(Partition::new(legs.to_vec())?)
    }

    pub fn legs(&self) -> &Partition {
        &self.legs
    }

    pub fn leg(&self, i: usize) -> u64 {
        self.legs.parts()[i]
    }

    /// Number of legs `d`.
    pub fn leg_count(&self) -> usize {
        self.legs.len()
    }

    /// `n = 1 + Σ λ_i`.
    pub fn vertex_count(&self) -> u64 {
        1 + self.legs.weight()
    }

    /// Spider obtained by merging legs `i` and `j` into one leg.
    pub fn combine_legs(&self, i: usize, j: usize) -> Result<Spider> {
        Spider::new(self.legs.combine_parts(i, j)?)
    }

    pub fn to_tree(&self) -> Tree {
        spider_to_tree(self)
    }
}

impl fmt::Display for Spider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", self.legs)
    }
}

impl fmt::Debug for Spider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `S[l1,l2,...]` (also `S(l1,...)`).
impl FromStr for Spider {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s
            .strip_prefix('S')
            .ok_or_else(|| Error::Parse(format!("spider must look like S[l1,l2,...], got {s:?}")))?;
        let body = body.trim();
        let normalised = match (body.strip_prefix('('), body.strip_suffix(')')) {
            (Some(_), Some(_)) => format!("[{}]", &body[1..body.len() - 1]),
            _ => body.to_string(),
        };
        if !normalised.starts_with('[') {
            return Err(Error::Parse(format!("spider must look like S[l1,l2,...], got {s:?}")));
        }
        Spider::new(normalised.parse()?)
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u},{v})")));
            }
        }
        Ok(Self { n, edges: set.into_iter().collect() })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn component_count(&self) -> usize {
        let mut uf: Vec<usize> = (0..self.n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let mut comps = self.n;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut uf, u), find(&mut uf, v));
            if a != b {
                uf[a] = b;
                comps -= 1;
            }
        }
        comps
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.component_count() == self.n
    }

    /// Disjoint union, relabelling `other` after `self`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let shift = self.n;
        let edges = self.edges.iter().copied().chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        SimpleGraph::new(self.n + other.n, edges).expect("union of simple graphs is simple")
    }

    pub fn with_edges(&self, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        SimpleGraph::new(self.n, edges)
    }
}

/// Unrooted tree on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tree {
    graph: SimpleGraph,
}

impl Tree {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let graph = SimpleGraph::new(n, edges)?;
        if n > 0 && (graph.edges.len() != n - 1 || graph.component_count() != 1) {
            return Err(Error::InvalidGraph(format!(
                "not a tree: {} vertices, {} edges, {} components",
                n,
                graph.edges.len(),
                graph.component_count()
            )));
        }
        if n == 0 && !graph.edges.is_empty() {
            return Err(Error::InvalidGraph("empty tree with edges".into()));
        }
        Ok(Self { graph })
    }

    /// Path on `n ≥ 1` vertices.
    pub fn path(n: usize) -> Tree {
        Tree::new(n, (1..n).map(|i| (i - 1, i))).expect("paths are trees")
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.graph.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        self.graph.adjacency()
    }

    pub fn as_graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.graph.n];
        for &(u, v) in &self.graph.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// The spider this tree is isomorphic to, if it has at most one vertex of
    /// degree ≥ 3 (paths are reported as one-legged spiders).
    pub fn as_spider(&self) -> Option<Spider> {
        let n = self.graph.n;
        if n < 2 {
            return None;
        }
        let deg = self.degrees();
        let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
        match branch.as_slice() {
            [] => Some(Spider::from_legs(&[n as u64 - 1]).expect("nonempty leg")),
            [v] => reduce_to_spider(self, *v).ok(),
            _ => None,
        }
    }

    /// One-line label, e.g. `T4{0-1 1-2 1-3}`.
    pub fn label(&self) -> String {
        let edges: Vec<String> = self.graph.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("T{}{{{}}}", self.graph.n, edges.join(" "))
    }

    /// Text form: `n` on the first line, then one `u v` per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.graph.n);
        for &(u, v) in &self.graph.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Tree> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty tree file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the vertex count".into()))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize> {
                tok.ok_or_else(|| Error::Parse(format!("bad edge line {line:?}")))?
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad edge line {line:?}")))
            };
            let (u, v) = (parse(it.next())?, parse(it.next())?);
            if it.next().is_some() {
                return Err(Error::Parse(format!("bad edge line {line:?}")));
            }
            edges.push((u, v));
        }
        Tree::new(n, edges)
    }
}

/// Center is vertex 0; leg `i` occupies a consecutive index range, its first
/// vertex adjacent to the center.
pub fn spider_to_tree(s: &Spider) -> Tree {
    let mut edges = Vec::new();
    let mut next = 1usize;
    for &leg in s.legs().parts() {
        let mut prev = 0usize;
        for _ in 0..leg {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Tree::new(next, edges).expect("spiders are trees")
}

/// Sizes of the branches at `v` (one per neighbour) as a spider.
pub fn reduce_to_spider(t: &Tree, v: usize) -> Result<Spider> {
    let adj = t.adjacency();
    if v >= adj.len() || adj[v].len() < 3 {
        return Err(Error::Precondition(format!("vertex {v} must have degree at least 3 to reduce to a spider")));
    }
    let legs = adj[v].iter().map(|&u| branch_size(&adj, u, v) as u64).collect();
    Spider::new(Partition::new(legs)?)
}

fn branch_size(adj: &[Vec<usize>], start: usize, avoid: usize) -> usize {
    let mut stack = vec![(start, avoid)];
    let mut count = 0;
    while let Some((x, parent)) = stack.pop() {
        count += 1;
        for &y in &adj[x] {
            if y != parent {
                stack.push((y, x));
            }
        }
    }
    count
}

/// One vertex per edge of `g`, adjacent when the edges share an endpoint.
pub fn line_graph(g: &SimpleGraph) -> SimpleGraph {
    let edges = g.edges();
    let mut out = Vec::new();
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            let (x, y) = (edges[a], edges[b]);
            if x.0 == y.0 || x.0 == y.1 || x.1 == y.0 || x.1 == y.1 {
                out.push((a, b));
            }
        }
    }
    SimpleGraph::new(edges.len(), out).expect("line graphs are simple")
}

/// `M_n`: a path on `2n+1` vertices with one pendant vertex on each of the
/// `n`-th and `(n+1)`-th path vertices (1-indexed).
///
/// Path vertex `k` (1-indexed) has index `k - 1`; the pendants are `2n+1`
/// (on position `n`) and `2n+2` (on position `n+1`).
pub fn mn_tree(n: usize) -> Result<Tree> {
    if n == 0 {
        return Err(Error::Precondition("M_n needs n >= 1".into()));
    }
    let len = 2 * n + 1;
    let mut edges: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, len));
    edges.push((n, len + 1));
    Tree::new(len + 2, edges)
}

/// One spider per partition of `n - 1`, in reverse-lexicographic leg order.
pub fn enumerate_spiders(n: u64) -> impl Iterator<Item = Spider> {
    let legs = if n >= 2 { Some(partitions_of(n - 1)) } else { None };
    legs.into_iter().flatten().map(|p| Spider::new(p).expect("n >= 2 gives a leg"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spider(legs: &[u64]) -> Spider {
        Spider::from_legs(legs).unwrap()
    }

    #[test]
    fn spider_layout() {
        let t = spider(&[1]).to_tree();
        assert_eq!(t.vertex_count(), 2);
        assert_eq!(t.edges(), &[(0, 1)]);

        let t = spider(&[2, 1, 1]).to_tree();
        assert_eq!(t.vertex_count(), 5);
        assert_eq!(t.degrees()[0], 3);
        assert_eq!(t.edges(), &[(0, 1), (0, 3), (0, 4), (1, 2)]);

        let t = spider(&[3, 2, 1]).to_tree();
        assert_eq!(t.vertex_count(), 7);
        assert_eq!(t.edges().len(), 6);
        assert_eq!(t.degrees()[0], 3);
    }

    #[test]
    fn spider_parsing() {
        assert_eq!("S[6,4,1,1]".parse::<Spider>().unwrap(), spider(&[6, 4, 1, 1]));
        assert_eq!("S(1,4,1,6)".parse::<Spider>().unwrap(), spider(&[6, 4, 1, 1]));
        assert_eq!(spider(&[3, 2]).to_string(), "S[3,2]");
        assert!("S[]".parse::<Spider>().is_err());
        assert!("T[1]".parse::<Spider>().is_err());
        assert!("S[1,0]".parse::<Spider>().is_err());
    }

    #[test]
    fn reduction_to_spider() {
        let s = spider(&[4, 2, 1, 1]);
        assert_eq!(reduce_to_spider(&s.to_tree(), 0).unwrap(), s);
        let m2 = mn_tree(2).unwrap();
        // 1-indexed position 2 is index 1
        assert_eq!(reduce_to_spider(&m2, 1).unwrap(), spider(&[4, 1, 1]));
        let m4 = mn_tree(4).unwrap();
        assert_eq!(reduce_to_spider(&m4, 3).unwrap(), spider(&[6, 3, 1]));
        assert!(reduce_to_spider(&Tree::path(5), 2).is_err());
    }

    #[test]
    fn mn_shapes() {
        let m1 = mn_tree(1).unwrap();
        assert_eq!(m1.vertex_count(), 5);
        assert_eq!(m1.degrees().iter().filter(|&&d| d == 3).count(), 1);
        for n in 2..8 {
            let t = mn_tree(n).unwrap();
            assert_eq!(t.vertex_count(), 2 * n + 3);
            let deg = t.degrees();
            let threes: Vec<usize> = (0..deg.len()).filter(|&v| deg[v] == 3).collect();
            assert_eq!(threes, vec![n - 1, n]);
        }
        assert!(mn_tree(0).is_err());
    }

    #[test]
    fn line_graphs() {
        let p3 = line_graph(Tree::path(4).as_graph());
        assert_eq!(p3, Tree::path(3).as_graph().clone());

        let tri = line_graph(spider(&[1, 1, 1]).to_tree().as_graph());
        assert_eq!(tri.vertex_count(), 3);
        assert_eq!(tri.edges().len(), 3);

        // net: triangle with a pendant at each corner
        let net = line_graph(spider(&[2, 2, 2]).to_tree().as_graph());
        assert_eq!(net.vertex_count(), 6);
        assert_eq!(net.edges().len(), 6);
        let mut deg = vec![0; 6];
        for &(u, v) in net.edges() {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg.sort_unstable();
        assert_eq!(deg, vec![1, 1, 1, 3, 3, 3]);
    }

    #[test]
    fn spider_enumeration() {
        let four: Vec<Spider> = enumerate_spiders(4).collect();
        assert_eq!(four, vec![spider(&[3]), spider(&[2, 1]), spider(&[1, 1, 1])]);
        assert_eq!(enumerate_spiders(5).count(), 5);
        assert_eq!(enumerate_spiders(2).collect::<Vec<_>>(), vec![spider(&[1])]);
        assert_eq!(enumerate_spiders(1).count(), 0);
    }

    #[test]
    fn tree_validation_and_text() {
        assert!(Tree::new(3, [(0, 1)]).is_err());
        assert!(Tree::new(3, [(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(Tree::new(2, [(0, 0)]).is_err());
        let t = Tree::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let text = t.to_text();
        assert_eq!(text, "4\n0 1\n1 2\n1 3\n");
        assert_eq!(Tree::parse_text(&text).unwrap(), t);
        assert!(Tree::parse_text("3\n0 1\n").is_err());
        assert!(Tree::parse_text("x").is_err());
    }

    #[test]
    fn spider_recognition() {
        assert_eq!(Tree::path(5).as_spider(), Some(spider(&[4])));
        assert_eq!(spider(&[3, 2, 1]).to_tree().as_spider(), Some(spider(&[3, 2, 1])));
        assert_eq!(mn_tree(2).unwrap().as_spider(), None);
        assert_eq!(Tree::path(1).as_spider(), None);
    }
}
