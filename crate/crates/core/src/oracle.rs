//! Brute-force ground truth for small rings.
//!
//! Everything here works by exhaustive enumeration and is independent of
//! the decision procedure: the set of polynomial functions is built by
//! evaluating every polynomial of bounded degree, and the span of the
//! generators is built by summing scalar multiples of generator tables.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcspace::{advance, table_len, FuncTable};
use crate::gens::GeneratorBasis;
use crate::zring::{Residue, RingCtx};

pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Smallest `m` with `p^n | m!`, by direct search using Legendre's formula.
pub fn smallest_factorial_multiple(p: u64, n: u32) -> u64 {
    let mut m = 0u64;
    let mut val = 0u64;
    while val < n as u64 {
        m += 1;
        let mut k = m;
        while k.is_multiple_of(p) {
            k /= p;
            val += 1;
        }
    }
    m.max(1)
}

/// Kempner's degree bound: every polynomial function over `Z/p^n` is induced
/// by a polynomial of degree below the smallest `mu` with `p^n | mu!`.
pub fn kempner_bound(ctx: RingCtx) -> u64 {
    smallest_factorial_multiple(ctx.p(), ctx.n())
}

/// A deduplicated set of value tables.
#[derive(Debug, Clone)]
pub struct PolyFunctionSet {
    pub ctx: RingCtx,
    pub arity: usize,
    pub members: HashSet<Vec<Residue>>,
    /// Per-variable exponent cap used by enumeration; `None` for span sets.
    pub source_degree_bound: Option<u64>,
}

impl PolyFunctionSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &FuncTable) -> bool {
        f.ctx() == self.ctx && f.arity() == self.arity && self.members.contains(f.values())
    }

    pub fn contains_values(&self, values: &[Residue]) -> bool {
        self.members.contains(values)
    }

    /// Members sorted lexicographically.
    pub fn sorted(&self) -> Vec<Vec<Residue>> {
        let mut v: Vec<_> = self.members.iter().cloned().collect();
        v.sort_unstable();
        v
    }
}

fn monomial_tables(ctx: RingCtx, arity: usize, cap: u64) -> Result<Vec<Vec<Residue>>> {
    let mut exps = vec![0u64; arity];
    let mut out = Vec::new();
    loop {
        let t = FuncTable::from_fn(ctx, arity, |x| x.iter().zip(&exps).fold(1, |m, (&xi, &e)| ctx.mul(m, ctx.pow(xi, e))))?;
        out.push(t.into_values());
        if !advance(&mut exps, cap) {
            break;
        }
    }
    Ok(out)
}

fn candidate_count(ctx: RingCtx, monomials: u128) -> u128 {
    let mut total: u128 = 1;
    for _ in 0..monomials {
        total = total.saturating_mul(ctx.q() as u128);
    }
    total
}

/// Visits the table of every coefficient choice; stops early when `visit`
/// returns `false`. Returns `false` iff stopped early.
fn walk(ctx: RingCtx, monos: &[Vec<Residue>], cur: &mut [Residue], visit: &mut impl FnMut(&[Residue]) -> bool) -> bool {
    let Some((mono, rest)) = monos.split_first() else {
        return visit(cur);
    };
    for _ in 0..ctx.q() {
        if !walk(ctx, rest, cur, visit) {
            return false;
        }
        for (a, &b) in cur.iter_mut().zip(mono) {
            *a = ctx.add(*a, b);
        }
    }
    // q additions of `mono` bring `cur` back to where it started
    true
}

/// Every table of a polynomial with per-variable degree `< mu`.
pub fn enumerate_polynomial_functions(ctx: RingCtx, arity: usize, budget: u128) -> Result<PolyFunctionSet> {
    enumerate_with_cap(ctx, arity, kempner_bound(ctx), budget)
}

/// Every table of a polynomial with per-variable degree `< cap`.
pub fn enumerate_with_cap(ctx: RingCtx, arity: usize, cap: u64, budget: u128) -> Result<PolyFunctionSet> {
    let len = table_len(ctx, arity)?;
    let monomials = (cap as u128).pow(arity as u32);
    let estimated = candidate_count(ctx, monomials);
    if estimated > budget {
        return Err(Error::BudgetExceeded { estimated, budget });
    }
    let monos = monomial_tables(ctx, arity, cap)?;
    let mut members = HashSet::new();
    let mut cur = vec![0; len];
    walk(ctx, &monos, &mut cur, &mut |t| {
        if !members.contains(t) {
            members.insert(t.to_vec());
        }
        true
    });
    Ok(PolyFunctionSet { ctx, arity, members, source_degree_bound: Some(cap) })
}

/// Searches polynomials of degree `< mu` for one inducing `f`, comparing
/// tables one at a time.
pub fn is_polynomial_bruteforce(f: &FuncTable, budget: u128) -> Result<bool> {
    let ctx = f.ctx();
    let cap = kempner_bound(ctx);
    let estimated = candidate_count(ctx, (cap as u128).pow(f.arity() as u32));
    if estimated > budget {
        return Err(Error::BudgetExceeded { estimated, budget });
    }
    let monos = monomial_tables(ctx, f.arity(), cap)?;
    let mut cur = vec![0; f.len()];
    let exhausted = walk(ctx, &monos, &mut cur, &mut |t| t != f.values());
    Ok(!exhausted)
}

/// `|P_q|` as a power of `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FunctionCount {
    pub p: u64,
    pub exponent: u64,
}

impl FunctionCount {
    pub fn value(&self) -> Option<u128> {
        (self.p as u128).checked_pow(u32::try_from(self.exponent).ok()?)
    }

    pub fn log10(&self) -> f64 {
        self.exponent as f64 * (self.p as f64).log10()
    }
}

/// `prod_{k=0}^{q-1} q / gcd(q, k!)`, which is `p^E` with
/// `E = sum_k max(0, n - v_p(k!))`. Only nonzero terms are visited.
pub fn count_polynomial_functions(ctx: RingCtx) -> FunctionCount {
    let n = ctx.n() as u64;
    let mut exponent = 0u64;
    let mut val = 0u64;
    let mut k = 0u64;
    while k < ctx.q() && val < n {
        exponent += n - val;
        k += 1;
        let mut t = k;
        while t.is_multiple_of(ctx.p()) {
            t /= ctx.p();
            val += 1;
        }
    }
    FunctionCount { p: ctx.p(), exponent }
}

/// `log10 |F_q|` for functions of the given arity: `q^m * log10 q`.
pub fn log10_all_functions(ctx: RingCtx, arity: usize) -> f64 {
    (ctx.q() as f64).powi(arity as i32) * (ctx.q() as f64).log10()
}

/// Additive order of a table: `q / gcd(q, entries)`.
fn additive_order(ctx: RingCtx, values: &[Residue]) -> u64 {
    let v = values.iter().map(|&a| ctx.val_p(a)).min().unwrap_or(ctx.n());
    ctx.p_pow(ctx.n() - v)
}

/// Every `Z/q`-linear combination of the basis tables.
pub fn span_enumerate(basis: &GeneratorBasis, budget: u128) -> Result<PolyFunctionSet> {
    let ctx = basis.ctx();
    let estimated = basis
        .entries()
        .iter()
        .fold(1u128, |acc, g| acc.saturating_mul(additive_order(ctx, g.table.values()) as u128));
    if estimated > budget {
        return Err(Error::BudgetExceeded { estimated, budget });
    }
    let len = table_len(ctx, basis.arity())?;
    let mut members: HashSet<Vec<Residue>> = HashSet::from([vec![0; len]]);
    for g in basis.entries() {
        let order = additive_order(ctx, g.table.values());
        if order == 1 {
            continue;
        }
        let mut next = HashSet::with_capacity(members.len() * order as usize);
        for m in &members {
            let mut cur = m.clone();
            for _ in 0..order {
                for (a, &b) in cur.iter_mut().zip(g.table.values()) {
                    *a = ctx.add(*a, b);
                }
                next.insert(cur.clone());
            }
        }
        members = next;
    }
    Ok(PolyFunctionSet { ctx, arity: basis.arity(), members, source_degree_bound: None })
}
