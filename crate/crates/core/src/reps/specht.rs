use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::MatFp;
use crate::partitions::Partition;
use crate::perm_groups::Permutation;

use super::{Acting, Rep};

/// Tabloids are packed into a `u128`: four bits per number give its row, the
/// number `x` occupying bits `4(x-1)..4x`. Comparing keys compares the rows of
/// `n, n-1, …, 1` lexicographically, which refines the dominance order, so the
/// tabloid `{t}` is the largest one in the polytabloid `e_t` of a standard `t`.
type Key = u128;

/// Standard polytabloid basis of a Specht module.
#[derive(Clone, Debug)]
pub struct SpechtBasis {
    shape: Partition,
    n: usize,
    /// Standard tableaux as rows of entries (1-based), sorted by row reading word.
    tableaux: Vec<Vec<Vec<usize>>>,
    /// `e_t` as `(tabloid, negative?)` terms.
    expansions: Vec<Vec<(Key, bool)>>,
    index: HashMap<Key, usize>,
}

fn key_of_rows(rows: &[Vec<usize>]) -> Key {
    let mut k: Key = 0;
    for (r, row) in rows.iter().enumerate() {
        for &x in row {
            k |= (r as Key) << (4 * (x - 1));
        }
    }
    k
}

fn row_of(k: Key, x: usize) -> Key {
    (k >> (4 * (x - 1))) & 0xf
}

/// All permutations of `0..m` with their signs.
fn signed_perms(m: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = vec![(Vec::new(), false)];
    for len in 1..=m {
        let mut next = Vec::with_capacity(out.len() * len);
        for (perm, neg) in &out {
            // insert `len - 1` at each position; moving it left by `len - 1 - pos` flips the sign that many times
            for pos in 0..len {
                let mut q = perm.clone();
                q.insert(pos, len - 1);
                next.push((q, neg ^ ((len - 1 - pos) % 2 == 1)));
            }
        }
        out = next;
    }
    out
}

fn standard_tableaux(shape: &Partition) -> Vec<Vec<Vec<usize>>> {
    let n = shape.size();
    let h = shape.height();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); h];
    fn rec(shape: &Partition, rows: &mut Vec<Vec<usize>>, next: usize, n: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if next > n {
            out.push(rows.clone());
            return;
        }
        for r in 0..rows.len() {
            let len = rows[r].len();
            if len < shape.part(r + 1) && (r == 0 || rows[r - 1].len() > len) {
                rows[r].push(next);
                rec(shape, rows, next + 1, n, out);
                rows[r].pop();
            }
        }
    }
    rec(shape, &mut rows, 1, n, &mut out);
    out.sort_by(|a, b| a.concat().cmp(&b.concat()));
    out
}

impl SpechtBasis {
    pub fn new(shape: &Partition) -> Result<SpechtBasis> {
        let n = shape.size();
        if n > 32 || shape.height() > 16 {
            return Err(Error::Unsupported(format!("Specht modules for {shape} exceed the packed tabloid format")));
        }
        let tableaux = standard_tableaux(shape);
        let mut expansions = Vec::with_capacity(tableaux.len());
        let conj = shape.conjugate();
        let perms: Vec<Vec<(Vec<usize>, bool)>> = (0..=shape.height()).map(signed_perms).collect();
        for t in &tableaux {
            let base = key_of_rows(t);
            let mut terms: Vec<(Key, bool)> = vec![(base, false)];
            for c in 0..conj.height() {
                let col: Vec<usize> = (0..conj.part(c + 1)).map(|r| t[r][c]).collect();
                if col.len() < 2 {
                    continue;
                }
                let mut next = Vec::with_capacity(terms.len() * perms[col.len()].len());
                for &(k, neg) in &terms {
                    let mut cleared = k;
                    for &x in &col {
                        cleared &= !((0xf as Key) << (4 * (x - 1)));
                    }
                    for (perm, pneg) in &perms[col.len()] {
                        let mut k2 = cleared;
                        for (r, &j) in perm.iter().enumerate() {
                            k2 |= (r as Key) << (4 * (col[j] - 1));
                        }
                        next.push((k2, neg ^ pneg));
                    }
                }
                terms = next;
            }
            expansions.push(terms);
        }
        let index = tableaux.iter().enumerate().map(|(i, t)| (key_of_rows(t), i)).collect();
        Ok(SpechtBasis { shape: shape.clone(), n, tableaux, expansions, index })
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn tableaux(&self) -> &[Vec<Vec<usize>>] {
        &self.tableaux
    }

    fn act_key(&self, g: &Permutation, k: Key) -> Key {
        let mut out: Key = 0;
        for x in 1..=self.n {
            out |= row_of(k, x) << (4 * g.apply(x - 1));
        }
        out
    }

    /// Writes a combination of tabloids lying in the Specht module in the
    /// standard basis; fails when it does not lie in the Specht module.
    fn straighten(&self, mut terms: BTreeMap<Key, u32>, p: u32) -> Result<Vec<u32>> {
        let mut out = vec![0u32; self.dim()];
        let p64 = p as u64;
        while let Some((k, c)) = terms.pop_last() {
            if c == 0 {
                continue;
            }
            let &i = self
                .index
                .get(&k)
                .ok_or_else(|| Error::Precondition(format!("vector is not in the Specht module {}", self.shape)))?;
            out[i] = ((out[i] as u64 + c as u64) % p64) as u32;
            for &(k2, neg) in &self.expansions[i] {
                if k2 == k {
                    continue;
                }
                let delta = if neg { c } else { p - c };
                let e = terms.entry(k2).or_insert(0);
                *e = ((*e as u64 + delta as u64) % p64) as u32;
                if *e == 0 {
                    terms.remove(&k2);
                }
            }
        }
        Ok(out)
    }

    /// `g · e_t` in the standard basis.
    pub fn act(&self, g: &Permutation, t: usize, p: u32) -> Vec<u32> {
        let mut terms = BTreeMap::new();
        for &(k, neg) in &self.expansions[t] {
            terms.insert(self.act_key(g, k), if neg { p - 1 } else { 1 % p });
        }
        self.straighten(terms, p).expect("the Specht module is a submodule")
    }

    pub fn matrix(&self, g: &Permutation, p: u32) -> MatFp {
        let d = self.dim();
        let mut m = MatFp::zeros(d, d, p);
        for t in 0..d {
            for (r, v) in self.act(g, t, p).into_iter().enumerate() {
                if v != 0 {
                    m.set(r, t, v);
                }
            }
        }
        m
    }

    /// Image of `s_i = (i, i+1)`, 1-based `i`, using the cheap cases where possible.
    fn adjacent_matrix(&self, i: usize, p: u32) -> MatFp {
        let d = self.dim();
        let g = Permutation::adjacent(self.n, i);
        let mut m = MatFp::zeros(d, d, p);
        for (c, t) in self.tableaux.iter().enumerate() {
            let pos = |x: usize| {
                t.iter().enumerate().find_map(|(r, row)| row.iter().position(|&y| y == x).map(|s| (r, s))).expect("entry")
            };
            let (ra, ca) = pos(i);
            let (rb, cb) = pos(i + 1);
            if ca == cb {
                m.set(c, c, p - 1);
            } else if ra != rb {
                let k = self.act_key(&g, key_of_rows(t));
                m.set(self.index[&k], c, 1);
            } else {
                for (r, v) in self.act(&g, c, p).into_iter().enumerate() {
                    if v != 0 {
                        m.set(r, c, v);
                    }
                }
            }
        }
        m
    }

    /// Matrix of the standard symmetric bilinear form on the polytabloids.
    pub fn gram(&self, p: u32) -> MatFp {
        let d = self.dim();
        let mut by_tabloid: HashMap<Key, Vec<(usize, bool)>> = HashMap::new();
        for (i, terms) in self.expansions.iter().enumerate() {
            for &(k, neg) in terms {
                by_tabloid.entry(k).or_default().push((i, neg));
            }
        }
        let mut acc = vec![0i64; d * d];
        for list in by_tabloid.values() {
            for &(a, na) in list {
                for &(b, nb) in list {
                    acc[a * d + b] += if na == nb { 1 } else { -1 };
                }
            }
        }
        let data = acc.into_iter().map(|x| x.rem_euclid(p as i64) as u32).collect();
        MatFp::new(d, d, p, data).expect("square")
    }

    /// The tabloid coefficients of `e_t` as a map from row words to ±1.
    pub fn polytabloid_terms(&self, t: usize) -> Vec<(Vec<usize>, i64)> {
        self.expansions[t]
            .iter()
            .map(|&(k, neg)| ((1..=self.n).map(|x| row_of(k, x) as usize).collect(), if neg { -1 } else { 1 }))
            .collect()
    }
}

/// The Specht module `S^λ` in the standard polytabloid basis.
pub fn specht(shape: &Partition, p: u32) -> Result<Rep> {
    crate::linalg::check_modulus(p as u64)?;
    let basis = SpechtBasis::new(shape)?;
    let n = shape.size();
    let gens = (1..n).map(|i| basis.adjacent_matrix(i, p)).collect();
    Rep::new(p, basis.dim(), Acting::Symmetric(n), gens, format!("S^{shape}"))
}

/// Gram matrix of the bilinear form on `S^λ`.
pub fn gram(shape: &Partition, p: u32) -> Result<MatFp> {
    crate::linalg::check_modulus(p as u64)?;
    Ok(SpechtBasis::new(shape)?.gram(p))
}

/// `D^λ = S^λ / rad`, realised as the image of `S^λ` under the rows of the
/// reduced echelon form of the Gram matrix.
pub fn irreducible(shape: &Partition, p: u32) -> Result<Rep> {
    crate::linalg::check_modulus(p as u64)?;
    shape.require_p_regular(p)?;
    let basis = SpechtBasis::new(shape)?;
    let r = basis.gram(p).rref();
    let keep: Vec<usize> = (0..r.rank).collect();
    let rows = r.matrix.select_rows(&keep);
    let n = shape.size();
    let gens = (1..n).map(|i| rows.mul(&basis.adjacent_matrix(i, p).select_cols(&r.pivots))).collect();
    Rep::new(p, r.rank, Acting::Symmetric(n), gens, format!("D^{shape}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{alpha, beta, enumerate_p_regular, partitions_of};

    fn part(x: &[usize]) -> Partition {
        Partition::from_parts(x)
    }

    #[test]
    fn dimensions_follow_hook_formula() {
        for n in 1..=7 {
            for l in partitions_of(n) {
                let b = SpechtBasis::new(&l).unwrap();
                assert_eq!(b.dim() as u128, l.standard_tableaux_count(), "{l}");
            }
        }
        assert_eq!(SpechtBasis::new(&part(&[3, 2, 1])).unwrap().dim(), 16);
    }

    #[test]
    fn signed_perms_have_correct_parity() {
        for (perm, neg) in signed_perms(4) {
            let g = Permutation::from_images(perm).unwrap();
            assert_eq!(neg, !g.is_even());
        }
        assert_eq!(signed_perms(4).len(), 24);
    }

    #[test]
    fn specht_matrices_satisfy_relations() {
        for l in partitions_of(6) {
            let s = specht(&l, 3).unwrap();
            assert!(s.satisfies_coxeter_relations(true).unwrap(), "{l}");
        }
    }

    #[test]
    fn generic_action_matches_adjacent_images() {
        let b = SpechtBasis::new(&part(&[3, 2, 1])).unwrap();
        for i in 1..6 {
            assert_eq!(b.matrix(&Permutation::adjacent(6, i), 5), b.adjacent_matrix(i, 5));
        }
        let s = specht(&part(&[3, 2, 1]), 5).unwrap();
        let g = Permutation::parse("(1,6,2)(3,4)", 6).unwrap();
        assert_eq!(b.matrix(&g, 5), s.eval(&g).unwrap());
    }

    #[test]
    fn gram_is_symmetric_and_invariant() {
        let l = part(&[4, 2]);
        let b = SpechtBasis::new(&l).unwrap();
        let g = b.gram(2);
        assert_eq!(g, g.transpose());
        for i in 1..6 {
            let a = b.matrix(&Permutation::adjacent(6, i), 2);
            assert_eq!(a.transpose().mul(&g).mul(&a), g);
        }
    }

    #[test]
    fn small_irreducible_dimensions() {
        for n in 4..=8 {
            for p in [2u32, 3] {
                let d = irreducible(&alpha(n).unwrap(), p).unwrap().dim();
                assert_eq!(d, n - 1 - usize::from(n % p as usize == 0), "n={n} p={p}");
            }
        }
        for n in 5..=9 {
            assert_eq!(irreducible(&beta(n).unwrap(), 2).unwrap().dim(), 1 << ((n - 1) / 2));
        }
        assert_eq!(irreducible(&part(&[5]), 2).unwrap().dim(), 1);
        assert!(irreducible(&part(&[2, 2]), 2).is_err());
    }

    #[test]
    fn irreducibles_satisfy_relations() {
        for l in enumerate_p_regular(6, 2) {
            assert!(irreducible(&l, 2).unwrap().satisfies_coxeter_relations(true).unwrap());
        }
    }
}
