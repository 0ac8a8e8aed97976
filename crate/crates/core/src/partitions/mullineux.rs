use crate::error::{Error, Result};

use super::{Node, Partition};

/// The p-rim: p-segments of the rim read from the top right, each new segment
/// starting in the row below the end of the previous one.
pub fn p_rim(l: &Partition, p: u32) -> Vec<Node> {
    let p = p as usize;
    let h = l.height();
    let mut rim = Vec::new();
    let mut row_start = vec![0; h + 2];
    for r in 1..=h {
        row_start[r] = rim.len();
        let low = l.part(r + 1).max(1);
        for c in (low..=l.part(r)).rev() {
            rim.push(Node::new(r, c));
        }
    }
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < rim.len() {
        let end = (pos + p).min(rim.len());
        out.extend_from_slice(&rim[pos..end]);
        let last_row = rim[end - 1].row;
        if end == rim.len() || last_row == h {
            break;
        }
        pos = row_start[last_row + 1];
    }
    out
}

fn remove_nodes(l: &Partition, nodes: &[Node]) -> Partition {
    let mut parts = l.parts().to_vec();
    for n in nodes {
        parts[n.row - 1] -= 1;
    }
    Partition::new(parts).expect("removing a rim subset leaves a partition")
}

/// Columns `(a_t, r_t)`: size of the p-rim and number of rows at each stage.
pub fn mullineux_symbol(l: &Partition, p: u32) -> Result<Vec<(usize, usize)>> {
    l.require_p_regular(p)?;
    let mut cur = l.clone();
    let mut sym = Vec::new();
    while !cur.is_empty() {
        let rim = p_rim(&cur, p);
        sym.push((rim.len(), cur.height()));
        cur = remove_nodes(&cur, &rim);
    }
    Ok(sym)
}

/// Rebuilds the p-regular partition with the given symbol, working outward from
/// the innermost layer.
pub fn symbol_to_partition(sym: &[(usize, usize)], p: u32) -> Result<Partition> {
    let mut inner = Partition::empty();
    for &(a, r) in sym.iter().rev() {
        let mut found = Vec::new();
        let mut cur = Vec::with_capacity(r);
        extend(&inner, a, r, p, &mut cur, inner.size() + a, &mut found);
        match found.len() {
            1 => inner = found.pop().unwrap(),
            0 => return Err(Error::Precondition(format!("no partition realises the symbol {sym:?}"))),
            _ => return Err(Error::Precondition(format!("symbol {sym:?} is ambiguous"))),
        }
    }
    Ok(inner)
}

/// Depth-first search over rows for `nu` with `inner` = `nu` minus its p-rim.
fn extend(
    inner: &Partition,
    a: usize,
    r: usize,
    p: u32,
    cur: &mut Vec<usize>,
    target: usize,
    found: &mut Vec<Partition>,
) {
    if found.len() > 1 {
        return;
    }
    let i = cur.len() + 1;
    let used: usize = cur.iter().sum();
    if i > r {
        if used == target {
            let nu = Partition::new(cur.clone()).expect("rows are nonincreasing");
            if nu.is_p_regular(p) {
                let rim = p_rim(&nu, p);
                if rim.len() == a && remove_nodes(&nu, &rim) == *inner {
                    found.push(nu);
                }
            }
        }
        return;
    }
    let rows_left = r - i;
    let lo = inner.part(i).max(1);
    let mut hi = target.saturating_sub(used + rows_left);
    if i > 1 {
        hi = hi.min(cur[i - 2]).min(inner.part(i - 1) + 1);
    }
    for x in lo..=hi {
        // later rows each need at least one node and at least their inner part
        let rest_min: usize = (i + 1..=r).map(|j| inner.part(j).max(1)).sum();
        if used + x + rest_min > target {
            break;
        }
        cur.push(x);
        extend(inner, a, r, p, cur, target, found);
        cur.pop();
    }
}

/// The Mullineux map: `D^λ ⊗ sgn ≅ D^{m(λ)}`.
pub fn mullineux(l: &Partition, p: u32) -> Result<Partition> {
    let sym = mullineux_symbol(l, p)?;
    let image: Vec<(usize, usize)> = sym
        .iter()
        .map(|&(a, r)| {
            let x = usize::from(a % p as usize != 0);
            (a, a + x - r)
        })
        .collect();
    symbol_to_partition(&image, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_p_regular;

    fn part(x: &[usize]) -> Partition {
        Partition::from_parts(x)
    }

    #[test]
    fn rim_of_small_shapes() {
        // (3,2,2) at p = 3: rim (1,3),(1,2),(2,2) | (3,2),(3,1)
        let rim = p_rim(&part(&[3, 2, 2]), 3);
        let expect = [(1, 3), (1, 2), (2, 2), (3, 2), (3, 1)];
        assert_eq!(rim, expect.iter().map(|&(r, c)| Node::new(r, c)).collect::<Vec<_>>());
    }

    #[test]
    fn known_images() {
        assert_eq!(mullineux(&part(&[3, 2, 2]), 3).unwrap(), part(&[5, 1, 1]));
        assert_eq!(mullineux(&part(&[5, 4, 2]), 2).unwrap(), part(&[5, 4, 2]));
        assert_eq!(mullineux(&part(&[3]), 5).unwrap(), part(&[1, 1, 1]));
        assert!(matches!(mullineux(&part(&[2, 2]), 2), Err(Error::NotRegular { .. })));
    }

    #[test]
    fn identity_in_characteristic_two() {
        for n in 1..=16 {
            for l in enumerate_p_regular(n, 2) {
                assert_eq!(mullineux(&l, 2).unwrap(), l);
            }
        }
    }

    #[test]
    fn symbol_roundtrip() {
        for p in [3, 5] {
            for n in 1..=14 {
                for l in enumerate_p_regular(n, p) {
                    let s = mullineux_symbol(&l, p).unwrap();
                    assert_eq!(symbol_to_partition(&s, p).unwrap(), l);
                }
            }
        }
    }
}
