use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};

use super::Permutation;

/// A permutation group given by generators. The stabilizer chain is built on
/// first use, with base points `0, 1, 2, …` in order.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup { degree: self.degree, gens: self.gens.clone(), chain }
    }
}

impl PartialEq for PermGroup {
    /// Same degree and the same generator list: the notion of "same group"
    /// used when comparing representations.
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.gens == other.gens
    }
}

impl Eq for PermGroup {}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup").field("degree", &self.degree).field("gens", &self.gens).finish()
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    n: usize,
    /// `transversals[i][β]` maps base point `i` to `β` inside the stabilizer of `0..i`.
    transversals: Vec<Vec<Option<Permutation>>>,
}

impl StabChain {
    fn build(n: usize, gens: &[Permutation]) -> StabChain {
        let mut strong: Vec<Permutation> = Vec::new();
        let mut chain = StabChain { n, transversals: vec![Vec::new(); n] };
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        if n == 0 {
            return chain;
        }
        let level_of = |g: &Permutation| (0..n).find(|&i| g.apply(i) != i).unwrap_or(n);
        for i in 0..n {
            chain.transversals[i] = orbit_transversal(n, i, strong.iter().filter(|g| level_of(g) >= i));
        }
        let mut i = n as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let sgens: Vec<Permutation> = strong.iter().filter(|g| level_of(g) >= lvl).cloned().collect();
            chain.transversals[lvl] = orbit_transversal(n, lvl, sgens.iter());
            let mut restart = None;
            'outer: for beta in 0..n {
                let Some(u_beta) = chain.transversals[lvl][beta].clone() else { continue };
                for x in &sgens {
                    let gamma = x.apply(beta);
                    let u_gamma = chain.transversals[lvl][gamma].as_ref().expect("orbit closed");
                    let h = u_gamma.inverse().compose(x).compose(&u_beta);
                    if h.is_identity() {
                        continue;
                    }
                    let (res, j) = chain.sift_from(&h, lvl + 1);
                    if !res.is_identity() {
                        strong.push(res);
                        restart = Some(j);
                        break 'outer;
                    }
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        chain
    }

    /// Sifts `h` through levels `from..`; returns the residue and the level
    /// where it stopped (`n` if it passed every level).
    fn sift_from(&self, h: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = h.clone();
        for lvl in from..self.n {
            let beta = h.apply(lvl);
            match &self.transversals[lvl][beta] {
                Some(u) => h = u.inverse().compose(&h),
                None => return (h, lvl),
            }
        }
        (h, self.n)
    }

    fn orbit_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.transversals.iter().map(|t| t.iter().filter(|x| x.is_some()).count())
    }
}

fn orbit_transversal<'a>(
    n: usize,
    base: usize,
    gens: impl Iterator<Item = &'a Permutation>,
) -> Vec<Option<Permutation>> {
    let gens: Vec<&Permutation> = gens.collect();
    let mut t: Vec<Option<Permutation>> = vec![None; n];
    t[base] = Some(Permutation::identity(n));
    let mut queue = VecDeque::from([base]);
    while let Some(b) = queue.pop_front() {
        let ub = t[b].clone().expect("queued points have transversal elements");
        for g in &gens {
            let c = g.apply(b);
            if t[c].is_none() {
                t[c] = Some(g.compose(&ub));
                queue.push_back(c);
            }
        }
    }
    t
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!("{g} does not act on {degree} points")));
        }
        Ok(PermGroup { degree, gens, chain: OnceLock::new() })
    }

    /// Parses one generator per line in cycle notation; `#` starts a comment.
    pub fn parse_generators(text: &str, degree: usize) -> Result<Self> {
        let gens = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| Permutation::parse(l, degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::build(self.degree, &self.gens))
    }

    pub fn order(&self) -> u128 {
        self.chain().orbit_sizes().map(|s| s as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain().sift_from(g, 0).0.is_identity()
    }

    /// Every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    /// All elements; only sensible for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for t in self.chain().transversals.iter().rev() {
            let reps: Vec<&Permutation> = t.iter().flatten().collect();
            if reps.len() <= 1 {
                continue;
            }
            out = reps.iter().flat_map(|u| out.iter().map(move |g| u.compose(g))).collect();
        }
        out
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for s in 0..self.degree {
            if seen[s] {
                continue;
            }
            let mut orb = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < orb.len() {
                let x = orb[k];
                for g in &self.gens {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orb.push(y);
                    }
                }
                k += 1;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// Some point is fixed by the whole group, i.e. the group lies in a point stabilizer.
    pub fn has_fixed_point(&self) -> bool {
        (0..self.degree).any(|x| self.gens.iter().all(|g| g.apply(x) == x))
    }

    /// Number of orbits on `k`-subsets of the points.
    pub fn orbit_count_k_subsets(&self, k: usize) -> usize {
        assert!(self.degree <= 64, "subset encoding needs at most 64 points");
        if k > self.degree {
            return 0;
        }
        let img = |g: &Permutation, s: u64| {
            let mut t = 0u64;
            let mut bits = s;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                t |= 1 << g.apply(i);
            }
            t
        };
        let all = k_subsets(self.degree, k);
        let mut seen: HashSet<u64> = HashSet::with_capacity(all.len());
        let mut count = 0;
        for &s in &all {
            if !seen.insert(s) {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for g in &self.gens {
                    let y = img(g, x);
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    pub fn is_k_homogeneous(&self, k: usize) -> bool {
        self.orbit_count_k_subsets(k) == 1
    }

    /// Transitive on ordered `k`-tuples of distinct points.
    pub fn is_k_transitive(&self, k: usize) -> bool {
        let n = self.degree;
        if k == 0 {
            return true;
        }
        if k > n {
            return false;
        }
        let start: Vec<usize> = (0..k).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for g in &self.gens {
                let u: Vec<usize> = t.iter().map(|&x| g.apply(x)).collect();
                if seen.insert(u.clone()) {
                    stack.push(u);
                }
            }
        }
        let total: usize = (0..k).map(|i| n - i).product();
        seen.len() == total
    }

    /// Smallest block containing `0` and `x` (union-find closure).
    fn minimal_block(&self, x: usize) -> Vec<usize> {
        let n = self.degree;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], a: usize) -> usize {
            let mut r = a;
            while p[r] != r {
                r = p[r];
            }
            let mut a = a;
            while p[a] != r {
                let next = p[a];
                p[a] = r;
                a = next;
            }
            r
        }
        let mut queue = vec![(0usize, x)];
        while let Some((a, b)) = queue.pop() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                continue;
            }
            parent[rb] = ra;
            for g in &self.gens {
                queue.push((g.apply(a), g.apply(b)));
            }
        }
        let r0 = find(&mut parent, 0);
        (0..n).filter(|&i| find(&mut parent, i) == r0).collect()
    }

    pub fn is_primitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        (1..self.degree).all(|x| self.minimal_block(x).len() == self.degree)
    }

    /// A 2-block system of two halves preserved by the group, if any, as the
    /// block containing point 0.
    pub fn half_block_system(&self) -> Option<Vec<usize>> {
        let n = self.degree;
        if n < 2 || n % 2 == 1 || n > 64 {
            return None;
        }
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let img = |g: &Permutation, s: u64| {
            (0..n).filter(|&i| s >> i & 1 == 1).fold(0u64, |t, i| t | 1 << g.apply(i))
        };
        for s in k_subsets(n, n / 2) {
            if s & 1 == 0 {
                continue;
            }
            let ok = self.gens.iter().all(|g| {
                let t = img(g, s);
                t == s || t == full & !s
            });
            if ok {
                return Some((0..n).filter(|&i| s >> i & 1 == 1).collect());
            }
        }
        None
    }

    /// Canonical representative of the left coset `g H` (lexicographically least images).
    pub fn coset_canonical(&self, g: &Permutation) -> Permutation {
        let chain = self.chain();
        let mut g = g.clone();
        for t in &chain.transversals {
            let best = t
                .iter()
                .enumerate()
                .filter_map(|(beta, u)| u.as_ref().map(|u| (g.apply(beta), u)))
                .min_by_key(|(img, _)| *img);
            if let Some((_, u)) = best {
                if !u.is_identity() {
                    g = g.compose(u);
                }
            }
        }
        g
    }

    /// Representatives of the left cosets of `sub` in `self`, starting with the identity.
    pub fn coset_reps(&self, sub: &PermGroup, cap: usize) -> Result<Vec<Permutation>> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::Precondition("not a subgroup".into()));
        }
        let index = self.order() / sub.order();
        if index > cap as u128 {
            return Err(Error::ResourceCap(format!("index {index} exceeds the cap {cap}")));
        }
        let id = Permutation::identity(self.degree);
        let mut reps = vec![id.clone()];
        let mut seen: HashMap<Permutation, usize> = HashMap::from([(sub.coset_canonical(&id), 0)]);
        let mut k = 0;
        while k < reps.len() {
            for s in &self.gens {
                let x = s.compose(&reps[k]);
                let c = sub.coset_canonical(&x);
                if !seen.contains_key(&c) {
                    seen.insert(c, reps.len());
                    reps.push(x);
                }
            }
            k += 1;
        }
        debug_assert_eq!(reps.len() as u128, index);
        Ok(reps)
    }

    /// Generators of the subgroup of elements preserving each of the two blocks
    /// `block` and its complement.
    pub fn block_kernel(&self, block: &[usize]) -> PermGroup {
        let inb: Vec<bool> = (0..self.degree).map(|i| block.contains(&i)).collect();
        let swaps = |g: &Permutation| inb[g.apply(block[0])] != inb[block[0]];
        let t = self.gens.iter().find(|g| swaps(g)).cloned();
        let mut kernel_gens = Vec::new();
        let id = Permutation::identity(self.degree);
        let reps: Vec<Permutation> = match &t {
            Some(t) => vec![id.clone(), t.clone()],
            None => vec![id.clone()],
        };
        for s in &self.gens {
            for x in &reps {
                let sx = s.compose(x);
                let r = if swaps(&sx) { t.as_ref().expect("swapping element exists") } else { &id };
                let h = r.inverse().compose(&sx);
                if !h.is_identity() && !kernel_gens.contains(&h) {
                    kernel_gens.push(h);
                }
            }
        }
        PermGroup::new(self.degree, kernel_gens).expect("same degree")
    }

    /// Restriction of a block-preserving group to the block, relabelled `0..|block|`.
    pub fn project(&self, block: &[usize]) -> Result<PermGroup> {
        let pos: HashMap<usize, usize> = block.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let imgs = block
                    .iter()
                    .map(|&b| pos.get(&g.apply(b)).copied().ok_or_else(|| Error::Precondition("block not preserved".into())))
                    .collect::<Result<Vec<_>>>()?;
                Permutation::from_images(imgs)
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(block.len(), gens)
    }

    /// Every subgroup, each given by an element list; only for small groups.
    pub fn all_subgroups(&self) -> Vec<PermGroup> {
        let elems = self.elements();
        let index: HashMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let close = |seed: &[usize]| -> Vec<bool> {
            let mut mem = vec![false; elems.len()];
            let id = index[&Permutation::identity(self.degree)];
            mem[id] = true;
            let mut list = vec![id];
            let mut k = 0;
            while k < list.len() {
                for &s in seed {
                    let x = index[&elems[s].compose(&elems[list[k]])];
                    if !mem[x] {
                        mem[x] = true;
                        list.push(x);
                    }
                }
                k += 1;
            }
            mem
        };
        let key = |m: &[bool]| -> Vec<u64> {
            m.chunks(64).map(|c| c.iter().enumerate().fold(0u64, |a, (i, &b)| a | (b as u64) << i)).collect()
        };
        let trivial = close(&[]);
        let mut found: HashMap<Vec<u64>, Vec<usize>> = HashMap::from([(key(&trivial), Vec::new())]);
        let mut frontier: Vec<(Vec<usize>, Vec<bool>)> = vec![(Vec::new(), trivial)];
        while let Some((gens, mem)) = frontier.pop() {
            for g in 0..elems.len() {
                if mem[g] {
                    continue;
                }
                let mut ng = gens.clone();
                ng.push(g);
                let m = close(&ng);
                let k = key(&m);
                if !found.contains_key(&k) {
                    found.insert(k, ng.clone());
                    frontier.push((ng, m));
                }
            }
        }
        let mut groups: Vec<(Vec<u64>, Vec<usize>)> = found.into_iter().collect();
        groups.sort();
        groups
            .into_iter()
            .map(|(_, g)| {
                PermGroup::new(self.degree, g.iter().map(|&i| elems[i].clone()).collect()).expect("same degree")
            })
            .collect()
    }
}

/// All `k`-subsets of `{0..n}` as bitmasks, in increasing numeric order.
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        return vec![0];
    }
    let mut s: u64 = (1u64 << k) - 1;
    let limit: u64 = if n == 64 { u64::MAX } else { 1u64 << n };
    while s < limit {
        out.push(s);
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s + c;
        if r >= limit || r == 0 {
            break;
        }
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn orders_of_small_groups() {
        let s5 = PermGroup::new(5, vec![perm("(1,2)", 5), perm("(1,2,3,4,5)", 5)]).unwrap();
        assert_eq!(s5.order(), 120);
        let c5c4 = PermGroup::new(5, vec![perm("(1,2,3,4,5)", 5), perm("(2,3,5,4)", 5)]).unwrap();
        assert_eq!(c5c4.order(), 20);
        assert!(c5c4.is_primitive());
        assert!(c5c4.is_k_transitive(2));
        assert!(c5c4.is_k_homogeneous(3));
        assert!(!c5c4.is_k_transitive(3));
        let trivial = PermGroup::new(4, vec![]).unwrap();
        assert_eq!(trivial.order(), 1);
    }

    #[test]
    fn membership() {
        let g = PermGroup::new(4, vec![perm("(1,2,3,4)", 4)]).unwrap();
        assert!(g.contains(&perm("(1,3)(2,4)", 4)));
        assert!(!g.contains(&perm("(1,2)", 4)));
        assert_eq!(g.elements().len(), 4);
    }

    #[test]
    fn orbit_count_matches_burnside() {
        // Burnside: average number of fixed 2-subsets over the group
        let g = PermGroup::new(6, vec![perm("(1,2,3)", 6), perm("(4,5)", 6)]).unwrap();
        let elems = g.elements();
        let subsets = k_subsets(6, 2);
        let fixed: usize = elems
            .iter()
            .map(|e| {
                subsets
                    .iter()
                    .filter(|&&s| (0..6).filter(|&i| s >> i & 1 == 1).fold(0u64, |t, i| t | 1 << e.apply(i)) == s)
                    .count()
            })
            .sum();
        assert_eq!(fixed % elems.len(), 0);
        assert_eq!(g.orbit_count_k_subsets(2), fixed / elems.len());
    }

    #[test]
    fn cosets_and_blocks() {
        let s4 = PermGroup::new(4, vec![perm("(1,2)", 4), perm("(1,2,3,4)", 4)]).unwrap();
        let d8 = PermGroup::new(4, vec![perm("(1,2,3,4)", 4), perm("(1,3)", 4)]).unwrap();
        let reps = s4.coset_reps(&d8, 100).unwrap();
        assert_eq!(reps.len(), 3);
        assert!(d8.half_block_system().is_some());
        assert!(!d8.is_primitive());
        assert!(s4.is_primitive());
        assert!(matches!(s4.coset_reps(&d8, 2), Err(Error::ResourceCap(_))));
        assert!(d8.coset_reps(&s4, 100).is_err());
    }

    #[test]
    fn gosper_enumeration() {
        assert_eq!(k_subsets(5, 2).len(), 10);
        assert_eq!(k_subsets(4, 0), vec![0]);
        assert_eq!(k_subsets(3, 3), vec![7]);
    }
}
