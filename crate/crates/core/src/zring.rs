//! Arithmetic in the residue ring `Z/p^n`.
//!
//! Residues are plain `u64` values kept in canonical form `0 <= a < q`.
//! Every operation here takes canonical inputs and returns canonical outputs.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus accepted. Keeps every product of two residues inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

/// Residue of `Z/q`, always in `[0, q)` for the ring it came from.
pub type Residue = u64;

/// Parameters of the ring `Z/p^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RingCtx {
    p: u64,
    n: u32,
    q: u64,
    phi: u64,
    mu: u64,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl RingCtx {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("p = {p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidRing("n must be positive".into()));
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q <= MAX_MODULUS)
            .ok_or_else(|| Error::InvalidRing(format!("{p}^{n} exceeds {MAX_MODULUS}")))?;
        let phi = q - q / p;
        let mu = crate::oracle::smallest_factorial_multiple(p, n);
        Ok(RingCtx { p, n, q, phi, mu })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Euler's totient of `q`, i.e. `p^n - p^(n-1)`.
    #[inline]
    pub fn phi(&self) -> u64 {
        self.phi
    }

    /// Smallest `mu` with `p^n | mu!`.
    #[inline]
    pub fn mu(&self) -> u64 {
        self.mu
    }

    /// `p^e` as an integer, for `e <= n`.
    #[inline]
    pub fn p_pow(&self, e: u32) -> u64 {
        debug_assert!(e <= self.n);
        self.p.pow(e)
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> Residue {
        if self.p == 2 {
            a & (self.q - 1)
        } else {
            a % self.q
        }
    }

    /// Canonical residue of an arbitrary signed integer.
    #[inline]
    pub fn reduce_signed(&self, a: i128) -> Residue {
        a.rem_euclid(self.q as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: Residue, b: Residue) -> Residue {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Residue, b: Residue) -> Residue {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Residue) -> Residue {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Residue, b: Residue) -> Residue {
        self.reduce(a * b)
    }

    pub fn pow(&self, base: Residue, mut exp: u64) -> Residue {
        let mut result = 1 % self.q;
        let mut b = base % self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        result
    }

    /// p-adic valuation, capped at `n`; `val_p(0) = n`.
    #[inline]
    pub fn val_p(&self, a: Residue) -> u32 {
        if a == 0 {
            return self.n;
        }
        if self.p == 2 {
            return a.trailing_zeros().min(self.n);
        }
        let mut v = 0;
        let mut a = a;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    /// Splits a nonzero residue as `p^v * u` with `u` a unit.
    pub fn split_unit(&self, a: Residue) -> (u32, Residue) {
        let v = self.val_p(a);
        if a == 0 {
            return (v, 0);
        }
        (v, a / self.p.pow(v))
    }

    #[inline]
    pub fn is_unit(&self, a: Residue) -> bool {
        !a.is_multiple_of(self.p)
    }

    pub fn inv_unit(&self, a: Residue) -> Result<Residue> {
        let a = a % self.q;
        if !self.is_unit(a) {
            return Err(Error::NotAUnit { value: a, modulus: self.q });
        }
        let (mut old_r, mut r) = (a as i128, self.q as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let quot = old_r / r;
            (old_r, r) = (r, old_r - quot * r);
            (old_s, s) = (s, old_s - quot * s);
        }
        debug_assert_eq!(old_r, 1);
        Ok(self.reduce_signed(old_s))
    }

    pub fn totient(&self) -> u64 {
        self.phi
    }
}
