//! The generating set of the module of polynomial functions.
//!
//! For a degree tuple `k` with `|k| < n`, the generator `u_k` is
//! `x_1^k_1 * ... * x_m^k_m` when `p` divides every coordinate and `0`
//! otherwise. Together with their cyclic shifts by `j in [0, p)^m` these span
//! every polynomial function. Each generator carries the polynomial
//! `prod (x_i + j_i)^k_i * (1 - (x_i + j_i)^phi)`, which induces it.

use std::collections::HashMap;

use crate::error::Result;
use crate::funcspace::{advance, FuncTable};
use crate::poly::{shifted_power, Polynomial};
use crate::synth::eval_polynomial;
use crate::zring::RingCtx;

/// Degree tuples with total degree `< n`, graded by total degree and then
/// lexicographically descending (`(1,0)` before `(0,1)`).
pub fn degree_tuples(arity: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..n {
        let mut cur = vec![0u32; arity];
        push_compositions(total, 0, &mut cur, &mut out);
    }
    out
}

fn push_compositions(rest: u32, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i + 1 == cur.len() {
        cur[i] = rest;
        out.push(cur.clone());
        return;
    }
    for k in (0..=rest).rev() {
        cur[i] = k;
        push_compositions(rest - k, i + 1, cur, out);
    }
    cur[i] = 0;
}

/// All tuples in `[0, p)^m`, lexicographic.
pub fn shift_tuples(p: u64, arity: usize) -> Vec<Vec<u64>> {
    let mut j = vec![0u64; arity];
    let mut out = Vec::new();
    loop {
        out.push(j.clone());
        if !advance(&mut j, p) {
            break;
        }
    }
    out
}

/// `C(k, i)` for `i = 0..=k` via Pascal's rule, in plain integers.
pub fn pascal_row(k: u32) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..k {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

/// Value table of `u_k` shifted by `j`.
pub fn generator_table(ctx: RingCtx, k: &[u32], j: &[u64]) -> Result<FuncTable> {
    assert_eq!(k.len(), j.len());
    let (p, q) = (ctx.p(), ctx.q());
    FuncTable::from_fn(ctx, k.len(), |x| {
        let mut v = 1 % q;
        for ((&xi, &ji), &ki) in x.iter().zip(j).zip(k) {
            let y = (xi + ji) % q;
            if y % p != 0 {
                return 0;
            }
            v = ctx.mul(v, ctx.pow(y, ki as u64));
        }
        v
    })
}

/// Expanded polynomial `prod_i (x_i + j_i)^k_i * (1 - (x_i + j_i)^phi)` over `Z/q`.
pub fn generator_polynomial(ctx: RingCtx, k: &[u32], j: &[u64]) -> Polynomial {
    assert_eq!(k.len(), j.len());
    let arity = k.len();
    let mut result = Polynomial::constant(ctx, arity, 1);
    for (i, (&ki, &ji)) in k.iter().zip(j).enumerate() {
        let mut factor = Polynomial::zero(ctx, arity);
        let place = |e: u64| {
            let mut v = vec![0u64; arity];
            v[i] = e;
            v
        };
        for (e, c) in shifted_power(ctx, ji, ki as u64) {
            factor.add_term(place(e), c);
        }
        for (e, c) in shifted_power(ctx, ji, ki as u64 + ctx.phi()) {
            factor.add_term(place(e), ctx.neg(c));
        }
        result = result.mul(&factor);
    }
    result
}

/// Carlitz certificate for the unshifted univariate `u_k`:
/// `Phi_i(x) = C(k, i) x^(k-i)` when `p | x`, else `0`, for `i = 0..n`.
pub fn carlitz_certificate(ctx: RingCtx, k: u32) -> Result<Vec<FuncTable>> {
    let row = pascal_row(k);
    (0..ctx.n())
        .map(|i| {
            FuncTable::from_fn(ctx, 1, |x| {
                if i > k || x[0] % ctx.p() != 0 {
                    0
                } else {
                    ctx.mul(ctx.reduce(row[i as usize]), ctx.pow(x[0], (k - i) as u64))
                }
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct Generator {
    pub degree: Vec<u32>,
    pub shift: Vec<u64>,
    pub table: FuncTable,
    pub polynomial: Polynomial,
}

/// All shifted generators `u_k^<j>` for one ring and arity.
#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    ctx: RingCtx,
    arity: usize,
    entries: Vec<Generator>,
    index: HashMap<(Vec<u32>, Vec<u64>), usize>,
}

impl GeneratorBasis {
    pub fn ctx(&self) -> RingCtx {
        self.ctx
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Entries ordered by degree tuple (graded) and then shift tuple.
    pub fn entries(&self) -> &[Generator] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, degree: &[u32], shift: &[u64]) -> Option<&Generator> {
        self.index.get(&(degree.to_vec(), shift.to_vec())).map(|&i| &self.entries[i])
    }
}

/// Builds every `u_k^<j>` with its polynomial, checking that each polynomial
/// evaluates to its table.
pub fn build_generators(ctx: RingCtx, arity: usize) -> Result<GeneratorBasis> {
    crate::funcspace::table_len(ctx, arity)?;
    let mut entries = Vec::new();
    let mut index = HashMap::new();
    let shifts = shift_tuples(ctx.p(), arity);
    for k in degree_tuples(arity, ctx.n()) {
        for j in &shifts {
            let table = generator_table(ctx, &k, j)?;
            let polynomial = generator_polynomial(ctx, &k, j);
            let evaluated = eval_polynomial(&polynomial)?;
            assert_eq!(evaluated, table, "polynomial for u_{k:?}^<{j:?}> does not induce its table");
            index.insert((k.clone(), j.clone()), entries.len());
            entries.push(Generator { degree: k.clone(), shift: j.clone(), table, polynomial });
        }
    }
    Ok(GeneratorBasis { ctx, arity, entries, index })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: u32) -> RingCtx {
        RingCtx::new(p, n).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn graded_order() {
        assert_eq!(degree_tuples(1, 3), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(
            degree_tuples(2, 3),
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        for (m, n) in [(1usize, 4u32), (2, 2), (2, 5), (3, 3), (4, 2)] {
            assert_eq!(degree_tuples(m, n).len() as u64, binom(n as u64 - 1 + m as u64, m as u64));
        }
        assert_eq!(pascal_row(4), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn univariate_basis_z8() {
        let basis = build_generators(ctx(2, 3), 1).unwrap();
        assert_eq!(basis.len(), 6);
        let t = |k: u32, j: u64| basis.get(&[k], &[j]).unwrap().table.values().to_vec();
        assert_eq!(t(0, 0), vec![1, 0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(t(1, 0), vec![0, 0, 2, 0, 4, 0, 6, 0]);
        assert_eq!(t(2, 0), vec![0, 0, 4, 0, 0, 0, 4, 0]);
    }

    #[test]
    fn basis_for_a_field() {
        let basis = build_generators(ctx(3, 1), 1).unwrap();
        assert_eq!(basis.len(), 3);
        let tables: Vec<_> = basis.entries().iter().map(|g| g.table.values().to_vec()).collect();
        assert_eq!(tables, vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]);
    }

    #[test]
    fn bivariate_u00() {
        let c = ctx(2, 2);
        let basis = build_generators(c, 2).unwrap();
        assert_eq!(basis.len(), 3 * 4);
        let u = &basis.get(&[0, 0], &[0, 0]).unwrap().table;
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(u.get(&[x, y]), u64::from(x % 2 == 0 && y % 2 == 0));
            }
        }
    }

    #[test]
    fn basis_sizes() {
        for (p, n, m) in [(2u64, 3u32, 1usize), (3, 2, 1), (5, 2, 1), (2, 2, 2), (3, 2, 2), (2, 3, 2), (2, 2, 3)] {
            let basis = build_generators(ctx(p, n), m).unwrap();
            let expected = binom(n as u64 - 1 + m as u64, m as u64) * p.pow(m as u32);
            assert_eq!(basis.len() as u64, expected, "p={p} n={n} m={m}");
        }
    }

    #[test]
    fn generator_polynomials_z8() {
        let c = ctx(2, 3);
        assert_eq!(generator_polynomial(c, &[0], &[0]), Polynomial::univariate(c, &[1, 0, 0, 0, 7]));
        assert_eq!(generator_polynomial(c, &[1], &[0]), Polynomial::univariate(c, &[0, 1, 0, 0, 0, 7]));
        let shifted = generator_polynomial(c, &[0], &[1]);
        assert_eq!(shifted, Polynomial::univariate(c, &[0, 4, 2, 4, 7]));
        let f = FuncTable::new(c, 1, vec![1, 0, 1, 0, 1, 0, 1, 0]).unwrap();
        assert_eq!(eval_polynomial(&shifted).unwrap(), f.cyclic_shift(&[1]));
    }

    #[test]
    fn case_split_holds_pointwise() {
        for (p, n, m) in [(2u64, 3u32, 1usize), (3, 2, 1), (2, 2, 2), (3, 2, 2)] {
            let c = ctx(p, n);
            let basis = build_generators(c, m).unwrap();
            for g in basis.entries() {
                let unshifted = generator_table(c, &g.degree, &vec![0; m]).unwrap();
                for (i, &v) in unshifted.values().iter().enumerate() {
                    let x = unshifted.args_of(i);
                    let expected = if x.iter().all(|xi| xi % p == 0) {
                        x.iter().zip(&g.degree).fold(1, |acc, (&xi, &k)| c.mul(acc, c.pow(xi, k as u64)))
                    } else {
                        0
                    };
                    assert_eq!(v, expected);
                }
                let shift: Vec<i64> = g.shift.iter().map(|&j| j as i64).collect();
                assert_eq!(unshifted.cyclic_shift(&shift), g.table);
            }
        }
    }
}
