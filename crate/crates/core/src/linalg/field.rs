use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use super::kernel::pow_mod;

/// Checks that `p` is a prime below 2^31.
pub fn check_modulus(p: u64) -> Result<u32> {
    if p < 2 || p >= 1 << 31 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p as u32)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of GF(p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Self {
        let m = modulus as i64;
        Fp { value: value.rem_euclid(m) as u32, modulus }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Fp> {
        (self.value != 0).then(|| Fp {
            value: pow_mod(self.value, self.modulus - 2, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn pow(self, e: u32) -> Fp {
        Fp { value: pow_mod(self.value, e, self.modulus), modulus: self.modulus }
    }

    fn same(self, other: Fp) -> u64 {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
        self.modulus as u64
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        let m = self.same(o);
        Fp { value: ((self.value as u64 + o.value as u64) % m) as u32, modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        self + (-o)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        let value = if self.value == 0 { 0 } else { self.modulus - self.value };
        Fp { value, modulus: self.modulus }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        let m = self.same(o);
        Fp { value: ((self.value as u64 * o.value as u64) % m) as u32, modulus: self.modulus }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_validation() {
        assert_eq!(check_modulus(3).unwrap(), 3);
        assert!(matches!(check_modulus(4), Err(Error::NotPrime(4))));
        assert!(check_modulus(1).is_err());
        assert!(check_modulus(2_147_483_647).is_ok());
        assert!(check_modulus(1 << 31).is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Fp::new(-1, 5);
        assert_eq!(a.value(), 4);
        assert_eq!((a * a).value(), 1);
        assert_eq!(a.inv().unwrap(), a);
        assert_eq!((a + Fp::new(3, 5)).value(), 2);
        assert!(Fp::new(10, 5).inv().is_none());
    }
}
