//! Coefficients of a function in the shifted generator basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::funcspace::{table_len, FuncTable};
use crate::gens::degree_tuples;
use crate::zring::{Residue, RingCtx};

/// Generator index: degree tuple `k` and shift tuple `j`.
pub type GenKey = (Vec<u32>, Vec<u64>);

/// Coefficients `alpha_{k,j}` with `f = sum alpha_{k,j} u_k^<j>`, over every
/// degree tuple `|k| < n` and shift `j in [0, p)^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    ctx: RingCtx,
    arity: usize,
    degrees: Arc<Vec<Vec<u32>>>,
    /// `alpha[shift_index * degrees.len() + degree_index]`
    alpha: Vec<Residue>,
}

impl Witness {
    pub fn new(ctx: RingCtx, arity: usize) -> Self {
        Self::with_degrees(ctx, arity, Arc::new(degree_tuples(arity, ctx.n())))
    }

    pub(crate) fn with_degrees(ctx: RingCtx, arity: usize, degrees: Arc<Vec<Vec<u32>>>) -> Self {
        let shifts = (ctx.p() as usize).pow(arity as u32);
        let alpha = vec![0; shifts * degrees.len()];
        Witness { ctx, arity, degrees, alpha }
    }

    pub fn ctx(&self) -> RingCtx {
        self.ctx
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Degree tuples in graded order.
    pub fn degrees(&self) -> &[Vec<u32>] {
        &self.degrees
    }

    fn degree_index(&self, k: &[u32]) -> Option<usize> {
        self.degrees.iter().position(|d| d.as_slice() == k)
    }

    fn shift_index(&self, j: &[u64]) -> Option<usize> {
        if j.len() != self.arity || j.iter().any(|&ji| ji >= self.ctx.p()) {
            return None;
        }
        Some(j.iter().fold(0usize, |acc, &ji| acc * self.ctx.p() as usize + ji as usize))
    }

    fn shift_tuple(&self, mut index: usize) -> Vec<u64> {
        let p = self.ctx.p() as usize;
        let mut j = vec![0u64; self.arity];
        for ji in j.iter_mut().rev() {
            *ji = (index % p) as u64;
            index /= p;
        }
        j
    }

    pub fn get(&self, k: &[u32], j: &[u64]) -> Residue {
        match (self.degree_index(k), self.shift_index(j)) {
            (Some(d), Some(s)) => self.alpha[s * self.degrees.len() + d],
            _ => 0,
        }
    }

    /// Adds `c` to `alpha_{k,j}`.
    pub fn add(&mut self, k: &[u32], j: &[u64], c: Residue) -> Result<()> {
        match (self.degree_index(k), self.shift_index(j)) {
            (Some(d), Some(s)) => {
                self.add_at(s, d, c);
                Ok(())
            }
            _ => Err(Error::UnknownGenerator(Self::key_string(&(k.to_vec(), j.to_vec())))),
        }
    }

    #[inline]
    pub(crate) fn add_at(&mut self, shift_index: usize, degree_index: usize, c: Residue) {
        let slot = &mut self.alpha[shift_index * self.degrees.len() + degree_index];
        *slot = self.ctx.add(*slot, self.ctx.reduce(c));
    }

    /// Nonzero coefficients ordered by `(k, j)`.
    pub fn terms(&self) -> Vec<(GenKey, Residue)> {
        let kd = self.degrees.len();
        let mut out: Vec<(GenKey, Residue)> = self
            .alpha
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| ((self.degrees[i % kd].clone(), self.shift_tuple(i / kd)), a))
            .collect();
        out.sort();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().all(|&a| a == 0)
    }

    pub fn sum(&self, other: &Witness) -> Witness {
        assert_eq!((self.ctx, self.arity), (other.ctx, other.arity));
        let mut out = self.clone();
        for (a, &b) in out.alpha.iter_mut().zip(&other.alpha) {
            *a = self.ctx.add(*a, b);
        }
        out
    }

    /// Keys rendered as `"(k_1,...,k_m,j_1,...,j_m)"`.
    pub fn key_string(key: &GenKey) -> String {
        let parts: Vec<String> =
            key.0.iter().map(|&k| u64::from(k)).chain(key.1.iter().copied()).map(|v| v.to_string()).collect();
        format!("({})", parts.join(","))
    }

    pub fn string_map(&self) -> BTreeMap<String, u64> {
        self.terms().iter().map(|(k, c)| (Self::key_string(k), *c)).collect()
    }

    /// Value table of `sum alpha_{k,j} u_k^<j>`, computed pointwise.
    pub fn to_table(&self) -> Result<FuncTable> {
        let mut values = vec![0; table_len(self.ctx, self.arity)?];
        self.evaluate_all(|i, v| values[i] = v);
        FuncTable::new(self.ctx, self.arity, values)
    }

    /// Smallest table index where the witness disagrees with `f`, checking
    /// every argument.
    pub fn first_mismatch(&self, f: &FuncTable) -> Result<Option<usize>> {
        if (f.ctx(), f.arity()) != (self.ctx, self.arity) {
            return Err(Error::DimensionMismatch(format!(
                "table over Z/{} with arity {} checked against a witness over Z/{} with arity {}",
                f.ctx().q(),
                f.arity(),
                self.ctx.q(),
                self.arity
            )));
        }
        let values = f.values();
        let mut mismatch: Option<usize> = None;
        self.evaluate_all(|i, v| {
            if values[i] != v {
                mismatch = Some(mismatch.map_or(i, |m| m.min(i)));
            }
        });
        Ok(mismatch)
    }

    /// Calls `visit(index, value)` once for every table index.
    fn evaluate_all(&self, mut visit: impl FnMut(usize, Residue)) {
        let ctx = self.ctx;
        let (p, q, n, m) = (ctx.p(), ctx.q(), ctx.n() as usize, self.arity);
        if m == 1 {
            return self.evaluate_univariate(visit);
        }
        let kd = self.degrees.len();
        let mut index = 0;
        // x, r_i = x_i mod p, and the powers of each shifted argument
        let mut scratch = vec![0u64; 2 * m + m * n];
        let (x, rest) = scratch.split_at_mut(m);
        let (r, powers) = rest.split_at_mut(m);
        loop {
            // only the shift j' = -x mod p is nonzero at x
            let shift = r.iter().fold(0usize, |acc, &ri| acc * p as usize + if ri == 0 { 0 } else { (p - ri) as usize });
            let alpha = &self.alpha[shift * kd..(shift + 1) * kd];
            let mut v = 0;
            if alpha.iter().any(|&a| a != 0) {
                for i in 0..m {
                    // p | x_i + j'_i, so the shifted argument is x_i rounded up to a multiple of p
                    let y = if r[i] == 0 { x[i] } else { ctx.reduce(x[i] + p - r[i]) };
                    let mut acc = 1 % q;
                    for slot in &mut powers[i * n..(i + 1) * n] {
                        *slot = acc;
                        acc = ctx.mul(acc, y);
                    }
                }
                for (k, &c) in self.degrees.iter().zip(alpha) {
                    if c != 0 {
                        let mono = k.iter().enumerate().fold(c, |t, (i, &ki)| ctx.mul(t, powers[i * n + ki as usize]));
                        v = ctx.add(v, mono);
                    }
                }
            }
            visit(index, v);
            index += 1;
            let mut i = m;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                x[i] += 1;
                r[i] = if r[i] + 1 == p { 0 } else { r[i] + 1 };
                if x[i] < q {
                    break;
                }
                x[i] = 0;
                r[i] = 0;
            }
        }
    }

    /// On the class `j`, the shifted argument is `x + j' = p*(s + [j != 0])`
    /// for `x = j + p*s`, and the degrees are just `0..n`, so Horner applies.
    fn evaluate_univariate(&self, mut visit: impl FnMut(usize, Residue)) {
        let ctx = self.ctx;
        let (p, n, q) = (ctx.p() as usize, ctx.n() as usize, ctx.q() as usize);
        for j in 0..p {
            let shift = (p - j) % p;
            let alpha = &self.alpha[shift * n..(shift + 1) * n];
            let carry = u64::from(j != 0);
            for (s, x) in (j..q).step_by(p).enumerate() {
                let y = ctx.reduce(p as u64 * (s as u64 + carry));
                visit(x, alpha.iter().rev().fold(0, |acc, &a| ctx.add(ctx.mul(acc, y), a)));
            }
        }
    }
}
