//! Simplicial lattices, sub-simplices, distances and the adjacency graph.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};

/// Lattice node: non-negative entries of length n+1 summing to the degree.
pub type Node = Vec<u32>;

pub fn degree(alpha: &[u32]) -> u32 {
    alpha.iter().sum()
}

/// All nodes of T^n_k in canonical order (lexicographically descending, so
/// the first node is k·ε_0).
pub fn enumerate(n: usize, k: u32) -> Vec<Node> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n + 1];
    fill(&mut current, 0, k, &mut out);
    out
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Node>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for value in (0..=remaining).rev() {
        current[pos] = value;
        fill(current, pos + 1, remaining - value, out);
    }
}

/// Indexed view of T^n_k.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub n: usize,
    pub k: u32,
    nodes: Vec<Node>,
    index: HashMap<Node, usize>,
}

impl Lattice {
    pub fn new(n: usize, k: u32) -> Self {
        let nodes = enumerate(n, k);
        let index = nodes.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        Self { n, k, nodes, index }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, alpha: &[u32]) -> Option<usize> {
        self.index.get(alpha).copied()
    }
}

/// Sorted vertex subset of an n-simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubSimplex {
    indices: Vec<usize>,
    ambient: usize,
}

impl SubSimplex {
    pub fn new(mut indices: Vec<usize>, ambient: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.is_empty() || indices.iter().any(|&i| i > ambient) {
            return Err(Error::InvalidSubSimplex(format!("{indices:?} in dimension {ambient}")));
        }
        Ok(Self { indices, ambient })
    }

    pub fn full(ambient: usize) -> Self {
        Self { indices: (0..=ambient).collect(), ambient }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Geometric dimension |f| − 1.
    pub fn dim(&self) -> usize {
        self.indices.len() - 1
    }

    /// Complementary index set f*; empty for the full simplex.
    pub fn complement(&self) -> Vec<usize> {
        (0..=self.ambient).filter(|i| !self.indices.contains(i)).collect()
    }

    pub fn contains(&self, other: &SubSimplex) -> bool {
        other.indices.iter().all(|i| self.indices.contains(i))
    }

    /// Sub-simplices of f with the given dimension, in lexicographic order.
    pub fn faces(&self, dim: usize) -> Vec<SubSimplex> {
        combinations(&self.indices, dim + 1)
            .into_iter()
            .map(|indices| SubSimplex { indices, ambient: self.ambient })
            .collect()
    }
}

/// All ℓ-dimensional sub-simplices of the n-simplex in lexicographic order.
pub fn subsimplices(n: usize, dim: usize) -> Vec<SubSimplex> {
    SubSimplex::full(n).faces(dim)
}

pub fn combinations(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    combine(items, size, 0, &mut current, &mut out);
    out
}

fn combine(items: &[usize], size: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() == size {
        out.push(current.clone());
        return;
    }
    for i in start..items.len() {
        current.push(items[i]);
        combine(items, size, i + 1, current, out);
        current.pop();
    }
}

/// Places α_f at the positions of f and zeros elsewhere.
pub fn extend(alpha_f: &[u32], f: &SubSimplex) -> Result<Node> {
    if alpha_f.len() != f.indices.len() {
        return Err(Error::InvalidSubSimplex(format!(
            "node of length {} on sub-simplex {:?}",
            alpha_f.len(),
            f.indices
        )));
    }
    let mut out = vec![0; f.ambient + 1];
    for (&i, &a) in f.indices.iter().zip(alpha_f) {
        out[i] = a;
    }
    Ok(out)
}

/// The entries α_f of α on f.
pub fn restrict(alpha: &[u32], f: &SubSimplex) -> Node {
    f.indices.iter().map(|&i| alpha[i]).collect()
}

/// dist(α, f) = |α_{f*}|.
pub fn dist(alpha: &[u32], f: &SubSimplex) -> u32 {
    degree(alpha) - f.indices.iter().map(|&i| alpha[i]).sum::<u32>()
}

/// D(f, r): nodes of T^n_k within distance r of f; empty for r < 0.
pub fn tube(f: &SubSimplex, r: i32, k: u32) -> Vec<Node> {
    if r < 0 {
        return Vec::new();
    }
    enumerate(f.ambient, k).into_iter().filter(|a| dist(a, f) as i32 <= r).collect()
}

/// L(f, s): nodes at exact distance s from f.
pub fn plane(f: &SubSimplex, s: u32, k: u32) -> Vec<Node> {
    enumerate(f.ambient, k).into_iter().filter(|a| dist(a, f) == s).collect()
}

/// Adjacency: β = α + ε_i − ε_j for some i ≠ j.
pub fn adjacent(a: &[u32], b: &[u32]) -> bool {
    a.len() == b.len()
        && degree(a) == degree(b)
        && a.iter().zip(b).map(|(&x, &y)| x.abs_diff(y)).sum::<u32>() == 2
}

/// For adjacent nodes returns (i, j) with β = α + ε_i − ε_j.
pub fn adjacency_direction(a: &[u32], b: &[u32]) -> Option<(usize, usize)> {
    if !adjacent(a, b) {
        return None;
    }
    let i = (0..a.len()).find(|&i| b[i] > a[i])?;
    let j = (0..a.len()).find(|&j| b[j] < a[j])?;
    Some((i, j))
}

/// Induced sub-graph of the lattice graph on a node set.
#[derive(Clone, Debug)]
pub struct LatticeGraph {
    pub nodes: Vec<Node>,
    /// Index pairs (a, b) with a < b.
    pub edges: Vec<(usize, usize)>,
}

impl LatticeGraph {
    pub fn new(mut nodes: Vec<Node>) -> Self {
        nodes.sort_by(|a, b| b.cmp(a));
        nodes.dedup();
        let index: HashMap<&Node, usize> = nodes.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut edges = Vec::new();
        for (ia, a) in nodes.iter().enumerate() {
            for i in 0..a.len() {
                for j in 0..a.len() {
                    if i == j || a[j] == 0 {
                        continue;
                    }
                    let mut b = a.clone();
                    b[i] += 1;
                    b[j] -= 1;
                    if let Some(&ib) = index.get(&b) {
                        if ia < ib {
                            edges.push((ia, ib));
                        }
                    }
                }
            }
        }
        edges.sort_unstable();
        Self { nodes, edges }
    }

    pub fn full(n: usize, k: u32) -> Self {
        Self::new(enumerate(n, k))
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Connected components, each listed by node index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbours();
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for start in self.bfs_order_roots() {
            if seen[start] {
                continue;
            }
            let mut component = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                component.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(component);
        }
        out
    }

    /// Node indices ordered from the lexicographically smallest node upwards.
    fn bfs_order_roots(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by(|&a, &b| self.nodes[a].cmp(&self.nodes[b]));
        order
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Breadth-first spanning forest rooted at the lexicographically smallest
    /// node of each component. Edges are (parent, child) node pairs.
    pub fn spanning_tree(&self) -> Vec<(Node, Node)> {
        let adj = self.neighbours();
        let mut seen = vec![false; self.nodes.len()];
        let mut tree = Vec::new();
        for root in self.bfs_order_roots() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        tree.push((self.nodes[v].clone(), self.nodes[w].clone()));
                        queue.push_back(w);
                    }
                }
            }
        }
        tree
    }
}

/// Set helper used across modules.
pub fn node_set(nodes: &[Node]) -> HashSet<Node> {
    nodes.iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_in_canonical_order() {
        assert_eq!(enumerate(1, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(enumerate(3, 3).len(), 20);
        assert_eq!(enumerate(0, 5), vec![vec![5]]);
        assert_eq!(enumerate(2, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn complement_and_extend() {
        let f = SubSimplex::new(vec![1, 3, 4], 4).unwrap();
        assert_eq!(f.complement(), vec![0, 2]);
        assert!(SubSimplex::full(3).complement().is_empty());
        let g = SubSimplex::new(vec![1, 3, 4], 5).unwrap();
        assert_eq!(extend(&[7, 8, 9], &g).unwrap(), vec![0, 7, 0, 8, 9, 0]);
        assert!(extend(&[1, 2], &g).is_err());
        assert!(SubSimplex::new(vec![5], 3).is_err());
    }

    #[test]
    fn distances_and_tubes() {
        let e = SubSimplex::new(vec![0, 1], 3).unwrap();
        assert_eq!(dist(&[2, 1, 1, 1], &e), 2);
        assert!(tube(&e, -1, 4).is_empty());
        let v = SubSimplex::new(vec![2], 3).unwrap();
        assert_eq!(tube(&v, 2, 5).len(), 10);
        assert_eq!(plane(&v, 5, 5).len(), enumerate(2, 5).len());
    }

    #[test]
    fn graph_edges_and_tree() {
        let g = LatticeGraph::full(1, 2);
        assert_eq!(g.edges.len(), 2);
        assert_eq!(g.spanning_tree().len(), 2);
        assert!(adjacent(&[1, 1, 0, 0], &[0, 2, 0, 0]));
        assert_eq!(adjacency_direction(&[1, 1, 0, 0], &[0, 2, 0, 0]), Some((1, 0)));
        assert!(LatticeGraph::full(3, 4).is_connected());
    }
}
