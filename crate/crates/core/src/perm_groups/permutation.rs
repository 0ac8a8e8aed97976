use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, …, n-1}`; displayed and parsed 1-based in cycle notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u16).collect() }
    }

    /// `images[i]` is the image of `i` (0-based).
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u16).collect() })
    }

    /// Product of the given 1-based cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cyc in cycles {
            for (k, &x) in cyc.iter().enumerate() {
                if x == 0 || x > n || seen[x - 1] {
                    return Err(Error::InvalidPermutation(format!("bad cycle {cyc:?} on {n} points")));
                }
                seen[x - 1] = true;
                images[x - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        Self::from_images(images)
    }

    /// Transposition of the 1-based points `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        Self::from_cycles(n, &[&[i, j]]).expect("valid transposition")
    }

    /// The adjacent transposition `s_i = (i, i+1)`, 1-based.
    pub fn adjacent(n: usize, i: usize) -> Self {
        Self::transposition(n, i, i + 1)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Extends to a permutation of `n >= degree` points fixing the new ones.
    pub fn extend(&self, n: usize) -> Permutation {
        assert!(n >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u16..n as u16);
        Permutation { images }
    }

    /// Shifts the support by `offset` inside `n` points.
    pub fn shifted(&self, offset: usize, n: usize) -> Permutation {
        let mut images: Vec<u16> = (0..n as u16).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u16;
        }
        Permutation { images }
    }

    /// Cycles of length at least 2, 1-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![s + 1];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.apply(x);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// +1 or -1.
    pub fn sign(&self) -> i64 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) == i).collect()
    }

    /// Indices `i` (0-based, standing for `s_{i+1}`) with `self = s_{i_1} s_{i_2} ⋯`.
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut a = self.images.clone();
        let mut swaps = Vec::new();
        // right multiplication by s_j swaps positions j and j+1
        let n = a.len();
        for end in (1..n).rev() {
            for j in 0..end {
                if a[j] > a[j + 1] {
                    a.swap(j, j + 1);
                    swaps.push(j);
                }
            }
        }
        swaps.reverse();
        swaps
    }

    /// Parses 1-based cycle notation such as `(1,2)(3,4,5)`; `()` is the identity.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "()" {
            return Ok(Self::identity(n));
        }
        let mut result = Self::identity(n);
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')').map(|e| (&r[..e], &r[e + 1..])))
                .ok_or_else(|| Error::Parse(format!("malformed cycle notation {s:?}")))?;
            let pts = body
                .0
                .split(',')
                .map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {x:?} in {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let cyc = Self::from_cycles(n, &[&pts])?;
            result = result.compose(&cyc);
            rest = body.1;
        }
        Ok(result)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_display_roundtrip() {
        let g = Permutation::parse("(1,2)(3,4,5)", 5).unwrap();
        assert_eq!(g.to_string(), "(1,2)(3,4,5)");
        assert_eq!(g.apply(2), 3);
        assert_eq!(g.order(), 6);
        assert!(!g.is_even());
        assert!(Permutation::parse("(1,1)", 3).is_err());
        assert!(Permutation::parse("(1,4)", 3).is_err());
        assert!(Permutation::parse("(1,2", 3).is_err());
    }

    #[test]
    fn composition_convention() {
        // (1,2,3) maps 1 -> 2; composing with (1,2) on the right sends 1 -> 2 -> 3
        let c = Permutation::parse("(1,2,3)", 3).unwrap();
        let t = Permutation::parse("(1,2)", 3).unwrap();
        assert_eq!(c.compose(&t).apply(0), 2);
        assert!(c.compose(&c.inverse()).is_identity());
    }

    #[test]
    fn adjacent_word_multiplies_back() {
        let g = Permutation::parse("(1,5,2)(3,6)", 6).unwrap();
        let w = g.adjacent_word();
        let prod = w.iter().fold(Permutation::identity(6), |acc, &i| acc.compose(&Permutation::adjacent(6, i + 1)));
        assert_eq!(prod, g);
        assert!(Permutation::identity(4).adjacent_word().is_empty());
    }
}
