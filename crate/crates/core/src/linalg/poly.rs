//! Small polynomial helpers over GF(p): just enough to pick factors of
//! characteristic polynomials for the MeatAxe.

use super::echelon::{Echelon, Rows};
use super::kernel::{with_kernel, Kernel};
use super::matrix::MatFp;

/// Coefficients from the constant term upwards, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(p: u32, mut coeffs: Vec<u32>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { p, coeffs }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial given degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn rem(&self, m: &Poly) -> Poly {
        assert!(!m.is_zero(), "division by zero polynomial");
        let p = self.p as u64;
        let mut r = self.coeffs.clone();
        let dm = m.degree();
        let lead_inv = super::kernel::pow_mod(*m.coeffs.last().unwrap(), self.p - 2, self.p) as u64;
        while r.len() > dm && !r.is_empty() {
            let top = *r.last().unwrap() as u64;
            if top != 0 {
                let q = top * lead_inv % p;
                let shift = r.len() - 1 - dm;
                for (i, &c) in m.coeffs.iter().enumerate() {
                    let x = &mut r[shift + i];
                    *x = ((*x as u64 + (p - q) * c as u64 % p) % p) as u32;
                }
            }
            r.pop();
        }
        Poly::new(self.p, r)
    }

    /// Exact quotient by a monic divisor.
    pub fn div_exact(&self, m: &Poly) -> Poly {
        let p = self.p as u64;
        let mut r: Vec<u64> = self.coeffs.iter().map(|&c| c as u64).collect();
        let dm = m.degree();
        if self.degree() < dm {
            return Poly::new(self.p, vec![]);
        }
        let mut q = vec![0u32; self.degree() + 1 - dm];
        for i in (0..q.len()).rev() {
            let c = r[i + dm] % p;
            q[i] = c as u32;
            if c != 0 {
                for (j, &mc) in m.coeffs.iter().enumerate() {
                    r[i + j] = (r[i + j] + (p - c) * mc as u64) % p;
                }
            }
        }
        Poly::new(self.p, q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &MatFp) -> MatFp {
        let n = m.nrows();
        let mut acc = MatFp::zeros(n, n, self.p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let x = (acc.get(i, i) + c) % self.p;
                acc.set(i, i, x);
            }
        }
        acc
    }
}

/// Monic irreducible polynomials of degree `1..=max_deg`, in increasing degree,
/// stopping once `cap` polynomials have been produced.
pub fn irreducibles(p: u32, max_deg: usize, cap: usize) -> Vec<Poly> {
    let mut found: Vec<Poly> = Vec::new();
    for d in 1..=max_deg {
        let count = (p as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
        if count > 4 * cap as u64 {
            break;
        }
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                coeffs.push((x % p as u64) as u32);
                x /= p as u64;
            }
            coeffs.push(1);
            let f = Poly::new(p, coeffs);
            if found.iter().take_while(|g| 2 * g.degree() <= d).all(|g| !g.divides(&f)) {
                found.push(f);
                if found.len() >= cap {
                    return found;
                }
            }
        }
    }
    found
}

/// Minimal polynomial of `v` under the column action of `m`: the monic `f` of
/// least degree with `f(m) v = 0`.
pub fn vector_minpoly(m: &MatFp, v: &[u32]) -> Poly {
    let p = m.modulus();
    let n = m.nrows();
    with_kernel!(p, k => {
        let mt = m.transpose().pack(k);
        let mut ech: Echelon<_, Rows<_>> = Echelon::new(k, n);
        let mut cur = k.pack(v);
        for deg in 0..=n {
            let mut tag = k.zero_row(n + 1);
            k.set(&mut tag, deg, 1);
            let next = k.vec_mat(&cur, &mt, n);
            if let Some(res) = ech.insert(cur, Rows(vec![tag])) {
                return Poly::new(p, k.unpack(&res.0[0], deg + 1));
            }
            cur = next;
        }
        unreachable!("Krylov sequence longer than the dimension")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree d over GF(2): 2, 1, 2, 3, 6
        let irr = irreducibles(2, 5, 1000);
        let counts: Vec<usize> = (1..=5).map(|d| irr.iter().filter(|f| f.degree() == d).count()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6]);
        let irr3 = irreducibles(3, 3, 1000);
        let counts3: Vec<usize> = (1..=3).map(|d| irr3.iter().filter(|f| f.degree() == d).count()).collect();
        assert_eq!(counts3, vec![3, 3, 8]);
    }

    #[test]
    fn minpoly_of_rotation() {
        // order-3 permutation matrix, v = e_1: minpoly x^3 - 1
        let m = MatFp::from_i64_rows(2, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        let f = vector_minpoly(&m, &[1, 0, 0]);
        assert_eq!(f.coeffs(), &[1, 0, 0, 1]);
        assert!(f.eval_matrix(&m).is_zero());
        // all-ones vector is fixed: minpoly x - 1 = x + 1 over GF(2)
        assert_eq!(vector_minpoly(&m, &[1, 1, 1]).coeffs(), &[1, 1]);
    }

    #[test]
    fn rem_gf3() {
        // x^2 + 1 = (x + 1)(x + 2) + 2 over GF(3)
        let a = Poly::new(3, vec![1, 0, 1]);
        let b = Poly::new(3, vec![1, 1]);
        assert_eq!(a.rem(&b).coeffs(), &[2]);
    }
}
