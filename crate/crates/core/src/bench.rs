//! Timing harness for the decision procedure.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decide::{decide_with, DecideOptions};
use crate::error::Result;
use crate::funcspace::FuncTable;
use crate::oracle::is_polynomial_bruteforce;
use crate::zring::RingCtx;

/// Largest accepted ratio between consecutive timings when `q` doubles;
/// linear scaling predicts 2.
pub const MAX_DOUBLING_RATIO: f64 = 4.0;
pub const MIN_DOUBLING_RATIO: f64 = 1.0;

/// Decider passes per timing sample in [`oracle_comparison`].
const DECIDE_PASSES: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct ScalingRow {
    pub n: u32,
    pub q: u64,
    pub seconds: f64,
    pub ns_per_entry: f64,
    /// `seconds / previous seconds`, absent on the first row.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingReport {
    pub p: u64,
    pub rows: Vec<ScalingRow>,
    /// Every doubling ratio lies in `[MIN_DOUBLING_RATIO, MAX_DOUBLING_RATIO]`.
    pub linear_within_factor_2: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    pub q: u64,
    pub samples: usize,
    pub decide_seconds: f64,
    pub oracle_seconds: f64,
    pub speedup: f64,
}

/// Table of a random polynomial of degree `< degree`, evaluated by Horner's rule.
pub fn random_polynomial_table(ctx: RingCtx, degree: usize, rng: &mut impl Rng) -> FuncTable {
    let coeffs: Vec<u64> = (0..degree).map(|_| rng.gen_range(0..ctx.q())).collect();
    FuncTable::from_fn(ctx, 1, |x| coeffs.iter().rev().fold(0, |acc, &c| ctx.add(ctx.mul(acc, x[0]), c)))
        .expect("univariate table within capacity")
}

fn time_min(reps: usize, mut f: impl FnMut()) -> Duration {
    (0..reps.max(1))
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .min()
        .unwrap()
}

/// Times the full decision on a polynomial input for each `n` in the range.
/// Inputs are polynomial so that every class runs the solver.
pub fn scaling(p: u64, n_range: std::ops::RangeInclusive<u32>, reps: usize, seed: u64) -> Result<ScalingReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<ScalingRow> = Vec::new();
    for n in n_range {
        let ctx = RingCtx::new(p, n)?;
        let f = random_polynomial_table(ctx, n as usize + 2, &mut rng);
        // small inputs finish in microseconds; repeat inside each sample
        let inner = ((1u64 << 16) / ctx.q()).max(1) as usize;
        let elapsed = time_min(reps, || {
            for _ in 0..inner {
                let d = decide_with(&f, DecideOptions::default()).expect("decide");
                assert!(d.is_polynomial());
            }
        });
        let seconds = elapsed.as_secs_f64() / inner as f64;
        let ratio = rows.last().map(|r| seconds / r.seconds);
        rows.push(ScalingRow { n, q: ctx.q(), seconds, ns_per_entry: seconds * 1e9 / ctx.q() as f64, ratio });
    }
    let linear_within_factor_2 = rows
        .iter()
        .filter_map(|r| r.ratio)
        .all(|x| (MIN_DOUBLING_RATIO..=MAX_DOUBLING_RATIO).contains(&x));
    Ok(ScalingReport { p, rows, linear_within_factor_2 })
}

/// Time of the decision procedure against brute-force polynomial search for
/// one pass over the same seeded inputs, half of them polynomial. Each side
/// reports its fastest of `reps` samples.
pub fn oracle_comparison(ctx: RingCtx, samples: usize, reps: usize, seed: u64, budget: u128) -> Result<OracleComparison> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<FuncTable> = (0..samples)
        .map(|i| {
            if i % 2 == 0 {
                random_polynomial_table(ctx, ctx.mu() as usize, &mut rng)
            } else {
                let values = (0..ctx.q()).map(|_| rng.gen_range(0..ctx.q())).collect();
                FuncTable::new(ctx, 1, values).expect("valid table")
            }
        })
        .collect();

    let mut verdicts = Vec::with_capacity(samples);
    for f in &inputs {
        verdicts.push(decide_with(f, DecideOptions::default())?.is_polynomial());
    }
    // one pass of the decider is short; time several per sample
    let elapsed = time_min(reps, || {
        for _ in 0..DECIDE_PASSES {
            for (f, &v) in inputs.iter().zip(&verdicts) {
                let d = decide_with(f, DecideOptions::default()).expect("decide");
                assert_eq!(d.is_polynomial(), v);
            }
        }
    });
    let decide_seconds = elapsed.as_secs_f64() / DECIDE_PASSES as f64;

    let mut oracle_seconds = f64::INFINITY;
    for _ in 0..reps.max(1) {
        let t = Instant::now();
        for (f, &v) in inputs.iter().zip(&verdicts) {
            assert_eq!(is_polynomial_bruteforce(f, budget)?, v, "decision disagrees with brute force");
        }
        oracle_seconds = oracle_seconds.min(t.elapsed().as_secs_f64());
    }

    Ok(OracleComparison {
        q: ctx.q(),
        samples,
        decide_seconds,
        oracle_seconds,
        speedup: oracle_seconds / decide_seconds.max(1e-12),
    })
}
