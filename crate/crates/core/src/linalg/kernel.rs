//! Row kernels shared by every dense routine.
//!
//! Rows over GF(2) are bit-packed into `u64` words; all other primes store one
//! `u32` per entry. Algorithms are written once against [`Kernel`] and
//! dispatched with [`with_kernel!`].

use std::fmt::Debug;

pub(crate) trait Kernel: Copy + Send + Sync + Debug + 'static {
    type Row: Clone + Send + Sync + Debug + PartialEq;

    fn modulus(self) -> u32;
    fn zero_row(self, len: usize) -> Self::Row;
    fn pack(self, v: &[u32]) -> Self::Row;
    fn unpack_into(self, r: &Self::Row, out: &mut [u32]);
    fn get(self, r: &Self::Row, i: usize) -> u32;
    fn set(self, r: &mut Self::Row, i: usize, v: u32);
    /// `dst += c * src`
    fn axpy(self, dst: &mut Self::Row, c: u32, src: &Self::Row);
    fn scale(self, r: &mut Self::Row, c: u32);
    /// First nonzero position among the first `len` entries.
    fn leading(self, r: &Self::Row, len: usize) -> Option<usize>;
    fn is_zero(self, r: &Self::Row) -> bool;

    #[cfg(test)]
    fn add(self, a: u32, b: u32) -> u32;
    #[cfg(test)]
    fn mul(self, a: u32, b: u32) -> u32;
    fn neg(self, a: u32) -> u32;
    fn inv(self, a: u32) -> u32;

    #[cfg(test)]
    fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn unpack(self, r: &Self::Row, len: usize) -> Vec<u32> {
        let mut out = vec![0; len];
        self.unpack_into(r, &mut out);
        out
    }

    /// Row vector times matrix: `sum_i v[i] * m[i]`.
    fn vec_mat(self, v: &Self::Row, m: &[Self::Row], out_len: usize) -> Self::Row {
        let mut acc = self.zero_row(out_len);
        for (i, row) in m.iter().enumerate() {
            let c = self.get(v, i);
            if c != 0 {
                self.axpy(&mut acc, c, row);
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Gf2;

impl Kernel for Gf2 {
    type Row = Vec<u64>;

    fn modulus(self) -> u32 {
        2
    }

    fn zero_row(self, len: usize) -> Vec<u64> {
        vec![0; len.div_ceil(64)]
    }

    fn pack(self, v: &[u32]) -> Vec<u64> {
        let mut r = self.zero_row(v.len());
        for (i, &x) in v.iter().enumerate() {
            if x & 1 == 1 {
                r[i >> 6] |= 1 << (i & 63);
            }
        }
        r
    }

    fn unpack_into(self, r: &Vec<u64>, out: &mut [u32]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = ((r[i >> 6] >> (i & 63)) & 1) as u32;
        }
    }

    #[inline]
    fn get(self, r: &Vec<u64>, i: usize) -> u32 {
        ((r[i >> 6] >> (i & 63)) & 1) as u32
    }

    #[inline]
    fn set(self, r: &mut Vec<u64>, i: usize, v: u32) {
        let bit = 1u64 << (i & 63);
        if v & 1 == 1 {
            r[i >> 6] |= bit;
        } else {
            r[i >> 6] &= !bit;
        }
    }

    #[inline]
    fn axpy(self, dst: &mut Vec<u64>, c: u32, src: &Vec<u64>) {
        if c & 1 == 1 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= s;
            }
        }
    }

    fn scale(self, r: &mut Vec<u64>, c: u32) {
        if c & 1 == 0 {
            r.iter_mut().for_each(|w| *w = 0);
        }
    }

    fn leading(self, r: &Vec<u64>, len: usize) -> Option<usize> {
        for (w, &word) in r.iter().enumerate() {
            if word != 0 {
                let i = w * 64 + word.trailing_zeros() as usize;
                return (i < len).then_some(i);
            }
            if (w + 1) * 64 >= len {
                break;
            }
        }
        None
    }

    fn is_zero(self, r: &Vec<u64>) -> bool {
        r.iter().all(|&w| w == 0)
    }

    #[cfg(test)]
    fn add(self, a: u32, b: u32) -> u32 {
        (a ^ b) & 1
    }
    #[cfg(test)]
    fn mul(self, a: u32, b: u32) -> u32 {
        a & b & 1
    }
    fn neg(self, a: u32) -> u32 {
        a
    }
    fn inv(self, a: u32) -> u32 {
        assert!(a & 1 == 1, "inverse of zero");
        1
    }

    fn vec_mat(self, v: &Vec<u64>, m: &[Vec<u64>], out_len: usize) -> Vec<u64> {
        let mut acc = self.zero_row(out_len);
        for (w, &word) in v.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let i = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for (a, s) in acc.iter_mut().zip(&m[i]) {
                    *a ^= s;
                }
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct GfP {
    p: u32,
}

impl GfP {
    pub(crate) fn new(p: u32) -> Self {
        GfP { p }
    }
}

impl Kernel for GfP {
    type Row = Vec<u32>;

    fn modulus(self) -> u32 {
        self.p
    }

    fn zero_row(self, len: usize) -> Vec<u32> {
        vec![0; len]
    }

    fn pack(self, v: &[u32]) -> Vec<u32> {
        v.to_vec()
    }

    fn unpack_into(self, r: &Vec<u32>, out: &mut [u32]) {
        out.copy_from_slice(&r[..out.len()]);
    }

    #[inline]
    fn get(self, r: &Vec<u32>, i: usize) -> u32 {
        r[i]
    }

    #[inline]
    fn set(self, r: &mut Vec<u32>, i: usize, v: u32) {
        r[i] = v;
    }

    #[inline]
    fn axpy(self, dst: &mut Vec<u32>, c: u32, src: &Vec<u32>) {
        if c == 0 {
            return;
        }
        let p = self.p as u64;
        let c = c as u64;
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = ((*d as u64 + c * s as u64) % p) as u32;
            }
        }
    }

    fn scale(self, r: &mut Vec<u32>, c: u32) {
        let p = self.p as u64;
        for x in r.iter_mut() {
            *x = ((*x as u64 * c as u64) % p) as u32;
        }
    }

    fn leading(self, r: &Vec<u32>, len: usize) -> Option<usize> {
        r[..len].iter().position(|&x| x != 0)
    }

    fn is_zero(self, r: &Vec<u32>) -> bool {
        r.iter().all(|&x| x == 0)
    }

    #[cfg(test)]
    fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }
    #[cfg(test)]
    fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero");
        pow_mod(a, self.p - 2, self.p)
    }
}

pub(crate) fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut base = a as u64 % p64;
    let mut acc = 1u64 % p64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        e >>= 1;
    }
    acc as u32
}

/// Run `$body` with `$k` bound to the kernel for modulus `$p`.
macro_rules! with_kernel {
    ($p:expr, $k:ident => $body:expr) => {{
        let __p: u32 = $p;
        if __p == 2 {
            let $k = $crate::linalg::kernel::Gf2;
            $body
        } else {
            let $k = $crate::linalg::kernel::GfP::new(__p);
            $body
        }
    }};
}
pub(crate) use with_kernel;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_pack_roundtrip_crosses_word_boundary() {
        let v: Vec<u32> = (0..130).map(|i| (i % 3 == 0) as u32).collect();
        let r = Gf2.pack(&v);
        assert_eq!(r.len(), 3);
        assert_eq!(Gf2.unpack(&r, 130), v);
        assert_eq!(Gf2.leading(&r, 130), Some(0));
        let mut z = Gf2.zero_row(130);
        Gf2.set(&mut z, 129, 1);
        assert_eq!(Gf2.leading(&z, 130), Some(129));
        assert_eq!(Gf2.leading(&z, 100), None);
    }

    #[test]
    fn gfp_inverse_table() {
        let k = GfP::new(7);
        for a in 1..7 {
            assert_eq!(k.mul(a, k.inv(a)), 1);
        }
        assert_eq!(k.sub(2, 5), 4);
    }

    #[test]
    fn vec_mat_agrees_between_kernels() {
        let m: Vec<Vec<u32>> = vec![vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1]];
        let v = [1, 1, 0];
        let g2: Vec<_> = m.iter().map(|r| Gf2.pack(r)).collect();
        let out2 = Gf2.unpack(&Gf2.vec_mat(&Gf2.pack(&v), &g2, 3), 3);
        let gp = GfP::new(2);
        let outp = gp.unpack(&gp.vec_mat(&gp.pack(&v), &m, 3), 3);
        assert_eq!(out2, vec![0, 1, 1]);
        assert_eq!(outp, out2);
    }
}
