use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::Ring;

/// Residues modulo `modulus` (typically a prime power `p^s`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZMod {
    modulus: u64,
}

impl ZMod {
    /// Panics if `modulus` is zero or does not fit the 32-bit product range.
    pub fn new(modulus: u64) -> Self {
        assert!(
            modulus >= 1 && modulus <= u32::MAX as u64,
            "modulus out of range"
        );
        Self { modulus }
    }

    /// The ring `Z / p^s`.
    pub fn prime_power(p: u64, s: u32) -> Self {
        Self::new(p.checked_pow(s).expect("p^s overflows"))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        n.mod_floor(&m).to_u64().expect("residue below modulus")
    }
}

impl Ring for ZMod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.modulus
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.reduce(n)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        let (mut old_r, mut r) = (*a as i64, self.modulus as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        if old_r != 1 {
            return None;
        }
        Some(old_s.rem_euclid(self.modulus as i64) as u64)
    }
}
