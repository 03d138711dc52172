//! Sparse polynomials over `Z/q` in one or more variables.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::zring::{Residue, RingCtx};

/// Exponent tuple of a monomial, one entry per variable.
pub type Exponents = Vec<u64>;

/// A polynomial in `arity` variables with coefficients in `Z/q`.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: RingCtx,
    arity: usize,
    terms: BTreeMap<Exponents, Residue>,
}

impl Polynomial {
    pub fn zero(ctx: RingCtx, arity: usize) -> Self {
        Polynomial { ctx, arity, terms: BTreeMap::new() }
    }

    pub fn constant(ctx: RingCtx, arity: usize, c: u64) -> Self {
        Self::monomial(ctx, vec![0; arity], c)
    }

    pub fn monomial(ctx: RingCtx, exponents: Exponents, c: u64) -> Self {
        let mut p = Self::zero(ctx, exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// The variable `x_i` (zero-based).
    pub fn variable(ctx: RingCtx, arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Self::monomial(ctx, e, 1)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, collecting like terms.
    pub fn from_terms(ctx: RingCtx, arity: usize, terms: impl IntoIterator<Item = (Exponents, u64)>) -> Self {
        let mut p = Self::zero(ctx, arity);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Dense univariate constructor, `coeffs[i]` multiplying `x^i`.
    pub fn univariate(ctx: RingCtx, coeffs: &[u64]) -> Self {
        Self::from_terms(ctx, 1, coeffs.iter().enumerate().map(|(i, &c)| (vec![i as u64], c)))
    }

    #[inline]
    pub fn ctx(&self) -> RingCtx {
        self.ctx
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Residue> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[u64]) -> Residue {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exponents: Exponents, c: u64) {
        assert_eq!(exponents.len(), self.arity, "exponent tuple length must equal arity");
        let c = self.ctx.reduce(c);
        if c == 0 {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.ctx.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: Residue, other: &Polynomial) {
        assert_eq!((self.ctx, self.arity), (other.ctx, other.arity));
        for (e, &v) in &other.terms {
            self.add_term(e.clone(), self.ctx.mul(c, v));
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        r.add_scaled(1, other);
        r
    }

    pub fn scale(&self, c: Residue) -> Polynomial {
        let mut r = Self::zero(self.ctx, self.arity);
        r.add_scaled(c, self);
        r
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!((self.ctx, self.arity), (other.ctx, other.arity));
        let mut r = Self::zero(self.ctx, self.arity);
        for (ea, &a) in &self.terms {
            for (eb, &b) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                r.add_term(e, self.ctx.mul(a, b));
            }
        }
        r
    }

    /// Value at a single argument tuple.
    pub fn evaluate(&self, args: &[u64]) -> Residue {
        assert_eq!(args.len(), self.arity);
        let ctx = self.ctx;
        self.terms.iter().fold(0, |acc, (e, &c)| {
            let m = e.iter().zip(args).fold(c, |m, (&k, &x)| ctx.mul(m, ctx.pow(x, k)));
            ctx.add(acc, m)
        })
    }

    /// Exponent map with keys `"e1,e2,..."`, ordered by exponent tuple.
    pub fn exponent_map(&self) -> BTreeMap<String, u64> {
        self.terms
            .iter()
            .map(|(e, &c)| (e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","), c))
            .collect()
    }
}

/// Row of binomial coefficients `C(e, i) mod q` for `i = 0..=e`.
///
/// Uses `C(e, i) = C(e, i-1) * (e-i+1) / i`, tracking the p-adic valuation
/// separately so that only units are ever inverted.
pub fn binomial_row(ctx: RingCtx, e: u64) -> Vec<Residue> {
    let mut row = Vec::with_capacity(e as usize + 1);
    let mut val: i64 = 0;
    let mut unit: Residue = 1 % ctx.q();
    row.push(unit);
    for i in 1..=e {
        let (a, w) = split_int(ctx.p(), e - i + 1);
        let (b, z) = split_int(ctx.p(), i);
        val += a as i64 - b as i64;
        let z_inv = ctx.inv_unit(ctx.reduce(z)).expect("unit part is invertible");
        unit = ctx.mul(ctx.mul(unit, ctx.reduce(w)), z_inv);
        row.push(if val >= ctx.n() as i64 { 0 } else { ctx.mul(ctx.p_pow(val as u32), unit) });
    }
    row
}

fn split_int(p: u64, mut a: u64) -> (u32, u64) {
    let mut v = 0;
    while a.is_multiple_of(p) {
        a /= p;
        v += 1;
    }
    (v, a)
}

/// Terms of `(x + j)^e` as `(exponent, coefficient)` pairs with nonzero coefficients.
pub fn shifted_power(ctx: RingCtx, j: u64, e: u64) -> Vec<(u64, Residue)> {
    let j = ctx.reduce(j);
    if j == 0 {
        return vec![(e, 1 % ctx.q())];
    }
    let row = binomial_row(ctx, e);
    // j^(e-i), built from the top exponent down.
    let mut out = Vec::new();
    let mut jp = 1 % ctx.q();
    for i in (0..=e).rev() {
        let c = ctx.mul(row[i as usize], jp);
        if c != 0 {
            out.push((i, c));
        }
        jp = ctx.mul(jp, j);
    }
    out.reverse();
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let var = |i: usize| if self.arity == 1 { "x".to_string() } else { format!("x{}", i + 1) };
        let mut first = true;
        // ascending total degree, then by exponent tuple
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (e.iter().sum::<u64>(), std::cmp::Reverse((*e).clone())));
        for (e, &c) in terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { var(i) } else { format!("{}^{}", var(i), k) })
                .collect();
            match (c, mono.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", mono.join("*"))?,
                _ => write!(f, "{}*{}", c, mono.join("*"))?,
            }
        }
        Ok(())
    }
}
