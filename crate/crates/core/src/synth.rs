//! Witness to polynomial conversion, and polynomial evaluation.

use std::collections::{BTreeSet, HashMap};

use crate::witness::Witness;
use crate::error::{Error, Result};
use crate::funcspace::FuncTable;
use crate::gens::GeneratorBasis;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesizedPolynomial {
    pub polynomial: Polynomial,
    pub source_witness: Witness,
    /// Set once the polynomial has been evaluated at every argument and
    /// matched against the witness combination of generator tables.
    pub verified: bool,
}

/// `sum alpha_{k,j} * generator_polynomial(k, j)`, like terms collected.
pub fn synthesize(witness: &Witness, basis: &GeneratorBasis) -> Result<SynthesizedPolynomial> {
    let ctx = basis.ctx();
    if witness.ctx() != ctx || witness.arity() != basis.arity() {
        return Err(Error::UnknownGenerator(format!(
            "witness over Z/{} with arity {} used with a basis over Z/{} with arity {}",
            witness.ctx().q(),
            witness.arity(),
            ctx.q(),
            basis.arity()
        )));
    }
    let mut polynomial = Polynomial::zero(ctx, basis.arity());
    let mut combined = FuncTable::zero(ctx, basis.arity())?;
    for (key, alpha) in witness.terms() {
        let g = basis.get(&key.0, &key.1).ok_or_else(|| Error::UnknownGenerator(Witness::key_string(&key)))?;
        polynomial.add_scaled(alpha, &g.polynomial);
        combined.add_scaled(alpha, &g.table);
    }
    let verified = eval_polynomial(&polynomial)? == combined;
    Ok(SynthesizedPolynomial { polynomial, source_witness: witness.clone(), verified })
}

/// Value table of `poly` over `(Z/q)^m`.
///
/// Powers `x^e` are tabulated once per variable and distinct exponent, so
/// each argument costs one product per term.
pub fn eval_polynomial(poly: &Polynomial) -> Result<FuncTable> {
    let ctx = poly.ctx();
    let arity = poly.arity();
    let q = ctx.q();
    crate::funcspace::table_len(ctx, arity)?;

    let mut power_rows: Vec<HashMap<u64, Vec<u64>>> = Vec::with_capacity(arity);
    for i in 0..arity {
        let exps: BTreeSet<u64> = poly.terms().keys().map(|e| e[i]).collect();
        let rows = exps.into_iter().map(|e| (e, (0..q).map(|x| ctx.pow(x, e)).collect())).collect();
        power_rows.push(rows);
    }
    let terms: Vec<(Vec<&[u64]>, u64)> = poly
        .terms()
        .iter()
        .map(|(e, &c)| (e.iter().enumerate().map(|(i, k)| power_rows[i][k].as_slice()).collect(), c))
        .collect();

    FuncTable::from_fn(ctx, arity, |x| {
        terms.iter().fold(0, |acc, (rows, c)| {
            let m = rows.iter().zip(x).fold(*c, |m, (row, &xi)| ctx.mul(m, row[xi as usize]));
            ctx.add(acc, m)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens::build_generators;
    use crate::zring::RingCtx;

    fn ctx(p: u64, n: u32) -> RingCtx {
        RingCtx::new(p, n).unwrap()
    }

    #[test]
    fn eval_examples() {
        let c = ctx(2, 3);
        let x = Polynomial::variable(c, 1, 0);
        assert_eq!(eval_polynomial(&x).unwrap().values(), &[0, 1, 2, 3, 4, 5, 6, 7]);
        let u0 = Polynomial::univariate(c, &[1, 0, 0, 0, 7]);
        assert_eq!(eval_polynomial(&u0).unwrap().values(), &[1, 0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(eval_polynomial(&Polynomial::zero(c, 1)).unwrap().values(), &[0; 8]);
    }

    #[test]
    fn eval_bivariate_matches_pointwise() {
        let c = ctx(2, 2);
        let one_minus_sq = |i: usize| {
            let mut e = vec![0, 0];
            e[i] = 2;
            Polynomial::from_terms(c, 2, [(vec![0, 0], 1), (e, 3)])
        };
        let poly = one_minus_sq(0).mul(&one_minus_sq(1));
        let table = eval_polynomial(&poly).unwrap();
        for x in 0..4u64 {
            for y in 0..4u64 {
                let direct = (1 + 3 * x * x) * (1 + 3 * y * y) % 4;
                assert_eq!(table.get(&[x, y]), direct);
                assert_eq!(direct, u64::from(x % 2 == 0 && y % 2 == 0));
            }
        }
        let basis = build_generators(c, 2).unwrap();
        assert_eq!(table, basis.get(&[0, 0], &[0, 0]).unwrap().table);
    }

    #[test]
    fn worked_example_witness() {
        let c = ctx(2, 3);
        let basis = build_generators(c, 1).unwrap();
        let mut w = Witness::new(c, 1);
        w.add(&[0], &[0], 2).unwrap();
        w.add(&[1], &[0], 2).unwrap();
        w.add(&[0], &[1], 1).unwrap();
        let s = synthesize(&w, &basis).unwrap();
        assert!(s.verified);
        assert_eq!(s.polynomial, Polynomial::univariate(c, &[2, 6, 2, 4, 5, 6]));
        assert_eq!(eval_polynomial(&s.polynomial).unwrap().values(), &[2, 1, 6, 1, 2, 1, 6, 1]);
    }

    #[test]
    fn trivial_witnesses() {
        let c = ctx(2, 3);
        let basis = build_generators(c, 1).unwrap();
        let empty = synthesize(&Witness::new(c, 1), &basis).unwrap();
        assert!(empty.polynomial.is_zero() && empty.verified);
        let mut w = Witness::new(c, 1);
        w.add(&[0], &[0], 1).unwrap();
        assert_eq!(synthesize(&w, &basis).unwrap().polynomial, Polynomial::univariate(c, &[1, 0, 0, 0, 7]));
    }

    #[test]
    fn unknown_generator() {
        let c = ctx(2, 3);
        let basis = build_generators(c, 1).unwrap();
        let mut w = Witness::new(c, 1);
        assert_eq!(w.add(&[3], &[0], 1), Err(Error::UnknownGenerator("(3,0)".into())));
        assert!(matches!(w.add(&[0], &[5], 1), Err(Error::UnknownGenerator(_))));
        // a witness over another ring cannot be read against this basis
        let other = Witness::new(ctx(2, 2), 1);
        assert!(synthesize(&other, &basis).is_err());
    }
}
