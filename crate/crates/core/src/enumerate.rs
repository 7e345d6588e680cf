//! Free-tree enumeration and canonical forms.
//!
//! Trees are generated as level sequences rooted at a center using the
//! Wright–Richmond–Odlyzko–McKay successor, which visits every isomorphism
//! class of free trees exactly once.

use crate::error::{Error, Result};
use crate::graph::Tree;

/// Largest order accepted by [`enumerate_trees`] (there are ~2.4e8 trees on 30 vertices).
pub const MAX_ENUMERATION_ORDER: usize = 30;

/// One representative per isomorphism class of free trees on `n` vertices.
pub fn enumerate_trees(n: usize) -> Result<FreeTrees> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::BoundExceeded { what: "tree enumeration", n, bound: MAX_ENUMERATION_ORDER });
    }
    let state = match n {
        0 | 1 => State::Single(n),
        _ => {
            let mut layout: Vec<usize> = (0..=n / 2).collect();
            layout.extend(1..n.div_ceil(2));
            State::Layout(Some(layout))
        }
    };
    Ok(FreeTrees { state })
}

#[derive(Debug, Clone)]
enum State {
    Single(usize),
    Done,
    Layout(Option<Vec<usize>>),
}

/// Iterator returned by [`enumerate_trees`].
#[derive(Debug, Clone)]
pub struct FreeTrees {
    state: State,
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        match &mut self.state {
            State::Done => None,
            State::Single(n) => {
                let n = *n;
                self.state = State::Done;
                Some(Tree::new(n, []).expect("trivial tree"))
            }
            State::Layout(slot) => {
                let layout = next_valid_tree(slot.take()?)?;
                let tree = layout_to_tree(&layout);
                *slot = next_rooted_tree(&layout, None);
                Some(tree)
            }
        }
    }
}

/// Beyer–Hedetniemi successor of a rooted level sequence.
fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Splits off the first subtree of the root: `(left, rest)`.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout.iter().enumerate().filter(|&(_, &l)| l == 1).nth(1).map(|(i, _)| i).unwrap_or(layout.len());
    let left = layout[1..m].iter().map(|&l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

fn next_valid_tree(mut candidate: Vec<usize>) -> Option<Vec<usize>> {
    loop {
        let (left, rest) = split_tree(&candidate);
        let left_height = *left.iter().max().unwrap_or(&0);
        let rest_height = *rest.iter().max().unwrap_or(&0);
        let mut valid = rest_height >= left_height;
        if valid && rest_height == left_height && (left.len() > rest.len() || (left.len() == rest.len() && left > rest))
        {
            valid = false;
        }
        if valid {
            return Some(candidate);
        }
        let p = left.len();
        let mut next = next_rooted_tree(&candidate, Some(p))?;
        if candidate[p] > 2 {
            let (new_left, _) = split_tree(&next);
            let h = *new_left.iter().max().unwrap_or(&0);
            let len = next.len();
            for (k, slot) in next[len - (h + 1)..].iter_mut().enumerate() {
                *slot = k + 1;
            }
        }
        candidate = next;
    }
}

fn layout_to_tree(layout: &[usize]) -> Tree {
    let mut stack: Vec<usize> = Vec::new();
    let mut edges = Vec::with_capacity(layout.len().saturating_sub(1));
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&j) = stack.last() {
            if layout[j] >= level {
                stack.pop();
            } else {
                edges.push((j, i));
                break;
            }
        }
        stack.push(i);
    }
    Tree::new(layout.len(), edges).expect("level sequences describe trees")
}

/// Center(s) of a tree: one vertex, or the two ends of the central edge.
pub fn centers(t: &Tree) -> Vec<usize> {
    let n = t.vertex_count();
    if n <= 2 {
        return (0..n).collect();
    }
    let adj = t.adjacency();
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &u in &adj[leaf] {
                deg[u] -= 1;
                if deg[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Canonical level sequence of `t` rooted at `root`: children ordered so the
/// sequence is lexicographically largest.
pub fn rooted_level_sequence(t: &Tree, root: usize) -> Vec<u32> {
    fn encode(adj: &[Vec<usize>], v: usize, parent: usize, depth: u32) -> Vec<u32> {
        let mut children: Vec<Vec<u32>> =
            adj[v].iter().filter(|&&u| u != parent).map(|&u| encode(adj, u, v, depth + 1)).collect();
        children.sort_unstable_by(|a, b| b.cmp(a));
        let mut out = vec![depth];
        for c in children {
            out.extend(c);
        }
        out
    }
    encode(&t.adjacency(), root, usize::MAX, 0)
}

/// Isomorphism invariant: level sequence from the center, minimised over
/// both centers when the tree is bicentral.
pub fn canonical_form(t: &Tree) -> Vec<u32> {
    centers(t).into_iter().map(|c| rooted_level_sequence(t, c)).min().unwrap_or_default()
}
