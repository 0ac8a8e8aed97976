use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::MatFp;

use super::{Acting, Rep};

/// Row words of the composition `mu`: `w[x]` is the row holding the number `x + 1`.
/// Listed in descending lexicographic order, so for two rows this is the
/// lexicographic order of the second-row subsets.
pub fn perm_module_words(mu: &[usize]) -> Vec<Vec<u8>> {
    let n: usize = mu.iter().sum();
    let mut out = Vec::new();
    let mut left = mu.to_vec();
    let mut cur = Vec::with_capacity(n);
    fn rec(left: &mut [usize], cur: &mut Vec<u8>, n: usize, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for r in 0..left.len() {
            if left[r] > 0 {
                left[r] -= 1;
                cur.push(r as u8);
                rec(left, cur, n, out);
                cur.pop();
                left[r] += 1;
            }
        }
    }
    rec(&mut left, &mut cur, n, &mut out);
    out.reverse();
    out
}

/// The k-subsets of `{1..n}` (1-based), lexicographically; the basis of `M_k`.
pub fn subsets_lex(n: usize, k: usize) -> Vec<Vec<usize>> {
    perm_module_words(&[n - k, k])
        .into_iter()
        .map(|w| (0..n).filter(|&x| w[x] == 1).map(|x| x + 1).collect())
        .collect()
}

/// The permutation module `M^μ` on row words, `μ` a composition of `n`.
pub fn perm_module(n: usize, p: u32, mu: &[usize]) -> Result<Rep> {
    crate::linalg::check_modulus(p as u64)?;
    if mu.iter().sum::<usize>() != n {
        return Err(Error::InvalidPartition(format!("{mu:?} is not a composition of {n}")));
    }
    let words = perm_module_words(mu);
    let index: HashMap<&[u8], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let d = words.len();
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let mut m = MatFp::zeros(d, d, p);
        let mut w2 = vec![0u8; n];
        for (c, w) in words.iter().enumerate() {
            w2.copy_from_slice(w);
            w2.swap(i, i + 1);
            m.set(index[w2.as_slice()], c, 1);
        }
        gens.push(m);
    }
    let label: Vec<String> = mu.iter().map(|x| x.to_string()).collect();
    Rep::new(p, d, Acting::Symmetric(n), gens, format!("M^({})", label.join(",")))
}

/// `M_k`, the permutation module on `k`-subsets.
pub fn subset_module(n: usize, p: u32, k: usize) -> Result<Rep> {
    if k > n {
        return Err(Error::Precondition(format!("M_{k} needs k <= n = {n}")));
    }
    Ok(perm_module(n, p, &[n - k, k])?.renamed(format!("M_{k}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm_groups::Permutation;

    #[test]
    fn dimensions() {
        assert_eq!(subset_module(6, 2, 1).unwrap().dim(), 6);
        assert_eq!(subset_module(6, 2, 2).unwrap().dim(), 15);
        assert_eq!(perm_module(6, 3, &[4, 1, 1]).unwrap().dim(), 30);
        assert!(perm_module(5, 2, &[3, 1]).is_err());
    }

    #[test]
    fn subsets_in_lex_order() {
        assert_eq!(subsets_lex(4, 2), vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        assert_eq!(subsets_lex(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn action_moves_subsets() {
        // ρ(g) e_X = e_{g(X)}
        let m = subset_module(5, 3, 2).unwrap();
        let subs = subsets_lex(5, 2);
        let g = Permutation::parse("(1,3,5)(2,4)", 5).unwrap();
        let a = m.eval(&g).unwrap();
        for (c, x) in subs.iter().enumerate() {
            let mut y: Vec<usize> = x.iter().map(|&v| g.apply(v - 1) + 1).collect();
            y.sort();
            let r = subs.iter().position(|s| *s == y).unwrap();
            assert_eq!(a.column(c).iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i).collect::<Vec<_>>(), vec![r]);
        }
    }
}
