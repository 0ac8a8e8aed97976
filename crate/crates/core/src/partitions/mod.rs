//! Partitions, residues, crystal operators and the Mullineux map.

mod crystal;
mod mullineux;
mod special;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use crystal::{
    addable_nodes, content, e_tilde, epsilon, f_tilde, good_node, cogood_node, is_js, normal_nodes,
    conormal_nodes, phi, removable_nodes, residue, signature, Sign, Signature,
};
pub use mullineux::{mullineux, mullineux_symbol, p_rim, symbol_to_partition};
pub use special::{alpha, beta, parity_chain_index, singular_removal_case, SingularCase};

/// A box of a Young diagram, 1-based `(row, col)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub row: usize,
    pub col: usize,
}

impl Node {
    pub fn new(row: usize, col: usize) -> Self {
        Node { row, col }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A partition: nonincreasing positive parts.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates the parts; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not nonincreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has an interior zero")));
        }
        Ok(Partition(parts))
    }

    pub fn from_parts(parts: &[usize]) -> Self {
        Self::new(parts.to_vec()).expect("valid partition")
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts, h(λ).
    pub fn height(&self) -> usize {
        self.0.len()
    }

    /// The `r`-th part (1-based), zero past the end.
    pub fn part(&self, r: usize) -> usize {
        if r == 0 {
            return usize::MAX;
        }
        self.0.get(r - 1).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// No part repeated `p` or more times.
    pub fn is_p_regular(&self, p: u32) -> bool {
        let p = p as usize;
        let mut i = 0;
        while i < self.0.len() {
            let j = self.0[i..].iter().take_while(|&&x| x == self.0[i]).count();
            if j >= p {
                return false;
            }
            i += j;
        }
        true
    }

    pub fn require_p_regular(&self, p: u32) -> Result<()> {
        if self.is_p_regular(p) {
            Ok(())
        } else {
            Err(Error::NotRegular { partition: self.to_string(), p })
        }
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.0.first().copied().unwrap_or(0);
        Partition((1..=w).map(|c| self.0.iter().filter(|&&x| x >= c).count()).collect())
    }

    /// Dominance order: every partial sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        let len = self.0.len().max(other.0.len());
        for i in 1..=len {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.0.iter().enumerate().flat_map(|(r, &len)| (1..=len).map(move |c| Node::new(r + 1, c)))
    }

    pub fn contains_node(&self, n: Node) -> bool {
        n.row >= 1 && n.col >= 1 && self.part(n.row) >= n.col
    }

    /// Removes a removable node.
    pub fn remove_node(&self, n: Node) -> Result<Partition> {
        if self.part(n.row) != n.col || self.part(n.row + 1) >= n.col {
            return Err(Error::Precondition(format!("{n} is not removable from {self}")));
        }
        let mut parts = self.0.clone();
        parts[n.row - 1] -= 1;
        Partition::new(parts)
    }

    /// Adds an addable node.
    pub fn add_node(&self, n: Node) -> Result<Partition> {
        if self.part(n.row) + 1 != n.col || (n.row > 1 && self.part(n.row - 1) < n.col) {
            return Err(Error::Precondition(format!("{n} is not addable to {self}")));
        }
        let mut parts = self.0.clone();
        if n.row > parts.len() {
            parts.push(1);
        } else {
            parts[n.row - 1] += 1;
        }
        Partition::new(parts)
    }

    /// Hook length formula for the number of standard tableaux.
    pub fn standard_tableaux_count(&self) -> u128 {
        let n = self.size() as u128;
        let conj = self.conjugate();
        let mut num: u128 = (1..=n).product();
        let mut hooks: u128 = 1;
        for node in self.nodes() {
            let hook = (self.part(node.row) - node.col) + (conj.part(node.col) - node.row) + 1;
            hooks *= hook as u128;
            let g = gcd(num, hooks);
            num /= g;
            hooks /= g;
        }
        num / hooks
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(6,4,1)`, `6,4,1` and `()`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t).trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part {x:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{s:?} has a zero part")));
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n`, in lexicographically decreasing order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for x in (1..=rem.min(max)).rev() {
            cur.push(x);
            go(rem - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// p-regular partitions of `n`, in lexicographically decreasing order.
pub fn enumerate_p_regular(n: usize, p: u32) -> Vec<Partition> {
    partitions_of(n).into_iter().filter(|l| l.is_p_regular(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let l: Partition = "(6,4,1)".parse().unwrap();
        assert_eq!(l.parts(), &[6, 4, 1]);
        assert_eq!(l.to_string(), "(6,4,1)");
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("(1,2)".parse::<Partition>().is_err());
        assert!("(3,x)".parse::<Partition>().is_err());
        assert!(matches!("(3,0,1)".parse::<Partition>(), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn regularity() {
        assert!(!Partition::from_parts(&[3, 3]).is_p_regular(2));
        assert!(Partition::from_parts(&[3, 3]).is_p_regular(3));
        assert!(!Partition::from_parts(&[2, 1, 1, 1]).is_p_regular(3));
    }

    #[test]
    fn two_regular_count_matches_odd_parts() {
        // partitions into distinct parts are equinumerous with partitions into odd parts
        for n in 1..=20 {
            let odd = partitions_of(n).iter().filter(|l| l.parts().iter().all(|x| x % 2 == 1)).count();
            assert_eq!(enumerate_p_regular(n, 2).len(), odd, "n = {n}");
        }
    }

    #[test]
    fn enumeration_is_lex_descending() {
        let ps = enumerate_p_regular(6, 2);
        let shown: Vec<String> = ps.iter().map(|l| l.to_string()).collect();
        assert_eq!(shown, ["(6)", "(5,1)", "(4,2)", "(3,2,1)"]);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn hook_formula() {
        assert_eq!(Partition::from_parts(&[3, 2, 1]).standard_tableaux_count(), 16);
        assert_eq!(Partition::from_parts(&[7, 5]).standard_tableaux_count(), 297);
        assert_eq!(Partition::from_parts(&[4, 3, 2, 1]).standard_tableaux_count(), 768);
    }

    #[test]
    fn dominance_and_conjugate() {
        let a = Partition::from_parts(&[3, 1]);
        let b = Partition::from_parts(&[2, 2]);
        assert!(a.dominates(&b));
        assert!(!b.dominates(&a));
        assert_eq!(Partition::from_parts(&[3, 1]).conjugate().parts(), &[2, 1, 1]);
    }

    #[test]
    fn add_remove_nodes() {
        let l = Partition::from_parts(&[4, 1]);
        assert_eq!(l.add_node(Node::new(2, 2)).unwrap().parts(), &[4, 2]);
        assert_eq!(l.add_node(Node::new(3, 1)).unwrap().parts(), &[4, 1, 1]);
        assert!(l.add_node(Node::new(2, 3)).is_err());
        assert_eq!(l.remove_node(Node::new(1, 4)).unwrap().parts(), &[3, 1]);
        assert!(l.remove_node(Node::new(1, 3)).is_err());
    }
}
