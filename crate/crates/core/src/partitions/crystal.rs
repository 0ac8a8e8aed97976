use std::fmt;

use super::{Node, Partition};

/// Residue of the node `(row, col)`: `col - row` mod `p`.
pub fn residue(node: Node, p: u32) -> u32 {
    (node.col as i64 - node.row as i64).rem_euclid(p as i64) as u32
}

/// Number of nodes of each residue.
pub fn content(l: &Partition, p: u32) -> Vec<usize> {
    let mut c = vec![0; p as usize];
    for node in l.nodes() {
        c[residue(node, p) as usize] += 1;
    }
    c
}

/// Addable nodes, top row first.
pub fn addable_nodes(l: &Partition) -> Vec<Node> {
    (1..=l.height() + 1)
        .filter(|&r| r == 1 || l.part(r - 1) > l.part(r))
        .map(|r| Node::new(r, l.part(r) + 1))
        .collect()
}

/// Removable nodes, top row first.
pub fn removable_nodes(l: &Partition) -> Vec<Node> {
    (1..=l.height()).filter(|&r| l.part(r) > l.part(r + 1)).map(|r| Node::new(r, l.part(r))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    /// addable
    Plus,
    /// removable
    Minus,
}

/// The `i`-signature, read from bottom-left to top-right, and its reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub residue: u32,
    pub entries: Vec<(Node, Sign)>,
    pub reduced: Vec<(Node, Sign)>,
}

impl Signature {
    pub fn epsilon(&self) -> usize {
        self.reduced.iter().filter(|e| e.1 == Sign::Minus).count()
    }

    pub fn phi(&self) -> usize {
        self.reduced.iter().filter(|e| e.1 == Sign::Plus).count()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (_, s) in &self.entries {
            write!(f, "{}", if *s == Sign::Plus { '+' } else { '-' })?;
        }
        Ok(())
    }
}

pub fn signature(l: &Partition, i: u32, p: u32) -> Signature {
    let i = i % p;
    let mut entries: Vec<(Node, Sign)> = addable_nodes(l)
        .into_iter()
        .map(|n| (n, Sign::Plus))
        .chain(removable_nodes(l).into_iter().map(|n| (n, Sign::Minus)))
        .filter(|(n, _)| residue(*n, p) == i)
        .collect();
    // bottom-left to top-right; one row never holds two nodes of the same residue
    entries.sort_by(|a, b| b.0.row.cmp(&a.0.row));
    let mut reduced: Vec<(Node, Sign)> = Vec::new();
    for &e in &entries {
        if e.1 == Sign::Plus && reduced.last().is_some_and(|t| t.1 == Sign::Minus) {
            reduced.pop();
        } else {
            reduced.push(e);
        }
    }
    Signature { residue: i, entries, reduced }
}

/// i-normal nodes, bottom first.
pub fn normal_nodes(l: &Partition, i: u32, p: u32) -> Vec<Node> {
    signature(l, i, p).reduced.iter().filter(|e| e.1 == Sign::Minus).map(|e| e.0).collect()
}

/// i-conormal nodes, bottom first.
pub fn conormal_nodes(l: &Partition, i: u32, p: u32) -> Vec<Node> {
    signature(l, i, p).reduced.iter().filter(|e| e.1 == Sign::Plus).map(|e| e.0).collect()
}

/// The leftmost i-normal node.
pub fn good_node(l: &Partition, i: u32, p: u32) -> Option<Node> {
    normal_nodes(l, i, p).first().copied()
}

/// The rightmost i-conormal node.
pub fn cogood_node(l: &Partition, i: u32, p: u32) -> Option<Node> {
    conormal_nodes(l, i, p).last().copied()
}

pub fn epsilon(l: &Partition, i: u32, p: u32) -> usize {
    signature(l, i, p).epsilon()
}

pub fn phi(l: &Partition, i: u32, p: u32) -> usize {
    signature(l, i, p).phi()
}

pub fn e_tilde(l: &Partition, i: u32, p: u32) -> Option<Partition> {
    good_node(l, i, p).map(|n| l.remove_node(n).expect("good nodes are removable"))
}

pub fn f_tilde(l: &Partition, i: u32, p: u32) -> Option<Partition> {
    cogood_node(l, i, p).map(|n| l.add_node(n).expect("cogood nodes are addable"))
}

/// Exactly one normal node over all residues.
pub fn is_js(l: &Partition, p: u32) -> bool {
    (0..p).map(|i| epsilon(l, i, p)).sum::<usize>() == 1
}
