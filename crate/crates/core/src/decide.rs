//! The decision procedure.
//!
//! A function `f` is split into the `p^m` residue classes mod `p`. On class
//! `j`, `f` is polynomial iff there are coefficients `beta_k` with
//! `f(j + p*s) = sum_{|k| < n} beta_k * prod (p*s_i)^k_i` for every `s`.
//! The constant term is forced to `f(j)`; the differences
//! `f(j + p*s) - f(j)` must all be divisible by `p`, and the remaining
//! coefficients are found with [`linsolve`](crate::linsolve).
//!
//! Class coefficients are finally rewritten in terms of the shifted
//! generators `u_k^<j'>` with `j' = -j mod p`, giving the [`Witness`].

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcspace::{advance, FuncTable};
use crate::gens::{degree_tuples, pascal_row};
use crate::linsolve::{Factorization, LocalSystem};
use crate::witness::Witness;
use crate::zring::{Residue, RingCtx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Polynomial,
    NotPolynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    DivisibilityCheck,
    SystemInconsistent,
    ResidualMismatch,
    Accepted,
}

/// Per-class intermediate values, recorded when [`DecideOptions::trace`] is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTrace {
    pub class: Vec<u64>,
    /// `f(j + p*s)` in view order.
    pub view: Vec<Residue>,
    /// `f(j + p*s) - f(j)`.
    pub reduced: Vec<Residue>,
    /// Solution of the square system built from the rows with `|s| < n`.
    pub square_solution: Option<Vec<Residue>>,
    /// Non-constant class coefficients from the full system.
    pub solution: Option<Vec<Residue>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StageTimings {
    /// Class layout and systems; near zero once cached for the ring.
    pub split: Duration,
    pub divisibility: Duration,
    pub solve: Duration,
    /// Witness assembly and its exhaustive check against the input.
    pub residual: Duration,
}

/// Outcome of the square-system-then-residual variant, when requested.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoStageOutcome {
    pub verdict: Verdict,
    pub stage: Stage,
    pub counterexample: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecideOptions {
    /// Also run the square-system-then-residual check and report disagreements.
    pub two_stage: bool,
    /// Record [`ClassTrace`]s.
    pub trace: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub stage: Stage,
    pub witness: Option<Witness>,
    /// Table index of the first failing argument, when rejected.
    pub counterexample: Option<usize>,
    pub classes: Vec<ClassTrace>,
    pub two_stage: Option<TwoStageOutcome>,
    pub diagnostics: Vec<String>,
    pub timings: StageTimings,
}

impl Decision {
    pub fn is_polynomial(&self) -> bool {
        self.verdict == Verdict::Polynomial
    }
}

pub fn decide_univariate(f: &FuncTable) -> Result<Decision> {
    if f.arity() != 1 {
        return Err(Error::ArityMismatch { expected: "1".into(), actual: f.arity() });
    }
    decide_with(f, DecideOptions { two_stage: false, trace: true })
}

pub fn decide_multivariate(f: &FuncTable) -> Result<Decision> {
    decide_with(f, DecideOptions::default())
}

/// Row data shared by every class: the `s` tuples of the view and the
/// monomials `prod (p*s_i)^k_i` for each non-constant `k`.
struct ClassSystem {
    /// All degree tuples, graded order; the constant tuple comes first.
    all_degrees: Arc<Vec<Vec<u32>>>,
    degree_index: HashMap<Vec<u64>, usize>,
    /// `(-p)^e` for `e < n`.
    neg_p_pow: Vec<Residue>,
    /// Binomial coefficients `C(k, l)` mod q for `k < n`.
    binomials: Vec<Vec<Residue>>,
    /// Table positions of every class in view order, class-major.
    positions: Vec<usize>,
    view_len: usize,
    /// Full system over all `s != 0`, in view order.
    full: LocalSystem,
    full_lu: Factorization,
    /// View offsets (`s` index) of the rows with `0 < |s| < n`.
    square_rows: Vec<usize>,
    square: LocalSystem,
    square_lu: Factorization,
}

impl ClassSystem {
    fn build(ctx: RingCtx, arity: usize) -> Result<Self> {
        let n = ctx.n() as usize;
        let all_degrees = Arc::new(degree_tuples(arity, ctx.n()));
        let degree_index =
            all_degrees.iter().enumerate().map(|(i, k)| (k.iter().map(|&e| u64::from(e)).collect(), i)).collect();
        let mut neg_p_pow = vec![1 % ctx.q(); n];
        for e in 1..n {
            neg_p_pow[e] = ctx.mul(neg_p_pow[e - 1], ctx.neg(ctx.reduce(ctx.p())));
        }
        let binomials =
            (0..ctx.n()).map(|k| pascal_row(k).into_iter().map(|c| ctx.reduce(c)).collect()).collect();
        let degrees = &all_degrees[1..];
        let radix = ctx.q() / ctx.p();
        // (p*s)^e for s < q/p, e < n
        let powers: Vec<Vec<Residue>> = (0..radix)
            .map(|s| {
                let base = ctx.reduce(ctx.p() * s);
                let mut acc = 1 % ctx.q();
                (0..n)
                    .map(|_| {
                        let v = acc;
                        acc = ctx.mul(acc, base);
                        v
                    })
                    .collect()
            })
            .collect();
        let view_len = (radix as usize).pow(arity as u32);
        let cols = degrees.len();
        let mut matrix = Vec::with_capacity((view_len - 1) * cols);
        let mut square_rows = Vec::new();
        let mut square_matrix = Vec::new();
        let mut s = vec![0u64; arity];
        let mut offset = 0usize;
        // position of j + p*s is pos(j) + p*pos(s) in base q
        let mut s_pos = vec![0usize];
        while advance(&mut s, radix) {
            offset += 1;
            s_pos.push(s.iter().fold(0u64, |acc, &si| acc * ctx.q() + si) as usize);
            let start = matrix.len();
            for k in degrees {
                let v = k.iter().zip(&s).fold(1 % ctx.q(), |m, (&ki, &si)| ctx.mul(m, powers[si as usize][ki as usize]));
                matrix.push(v);
            }
            if (s.iter().sum::<u64>() as usize) < n {
                square_rows.push(offset);
                square_matrix.extend_from_slice(&matrix[start..]);
            }
        }
        let mut positions = Vec::with_capacity(view_len * (ctx.p() as usize).pow(arity as u32));
        let mut j = vec![0u64; arity];
        loop {
            let j_pos = j.iter().fold(0u64, |acc, &ji| acc * ctx.q() + ji) as usize;
            positions.extend(s_pos.iter().map(|&sp| j_pos + ctx.p() as usize * sp));
            if !advance(&mut j, ctx.p()) {
                break;
            }
        }
        let full = LocalSystem::from_flat(ctx, view_len - 1, cols, matrix, vec![0; view_len - 1])?;
        let square = LocalSystem::from_flat(ctx, square_rows.len(), cols, square_matrix, vec![0; square_rows.len()])?;
        let full_lu = full.factor();
        let square_lu = square.factor();
        Ok(ClassSystem {
            all_degrees,
            degree_index,
            neg_p_pow,
            binomials,
            positions,
            view_len,
            full,
            full_lu,
            square_rows,
            square,
            square_lu,
        })
    }

    fn class_count(&self) -> usize {
        self.positions.len() / self.view_len
    }
}

/// Systems with at most this many matrix entries are kept per thread. The
/// most recently used system is always kept, whatever its size.
const CACHE_LIMIT: usize = 1 << 16;

/// Ring and arity.
type SystemKey = (RingCtx, usize);

thread_local! {
    static SYSTEMS: RefCell<HashMap<SystemKey, Rc<ClassSystem>>> = RefCell::new(HashMap::new());
    static LAST_SYSTEM: RefCell<Option<(SystemKey, Rc<ClassSystem>)>> = const { RefCell::new(None) };
}

fn class_system(ctx: RingCtx, arity: usize) -> Result<Rc<ClassSystem>> {
    let hit = LAST_SYSTEM.with(|l| match &*l.borrow() {
        Some((key, sys)) if *key == (ctx, arity) => Some(sys.clone()),
        _ => None,
    });
    if let Some(sys) = hit {
        return Ok(sys);
    }
    let sys = match SYSTEMS.with(|c| c.borrow().get(&(ctx, arity)).cloned()) {
        Some(sys) => sys,
        None => {
            // drop a large previous system before building the next one
            LAST_SYSTEM.with(|l| *l.borrow_mut() = None);
            let sys = Rc::new(ClassSystem::build(ctx, arity)?);
            if sys.full.rows() * sys.full.cols() <= CACHE_LIMIT {
                SYSTEMS.with(|c| c.borrow_mut().insert((ctx, arity), sys.clone()));
            }
            sys
        }
    };
    LAST_SYSTEM.with(|l| *l.borrow_mut() = Some(((ctx, arity), sys.clone())));
    Ok(sys)
}

/// Releases the per-thread class systems.
pub fn clear_system_cache() {
    LAST_SYSTEM.with(|l| *l.borrow_mut() = None);
    SYSTEMS.with(|c| c.borrow_mut().clear());
}

/// Runs the decision procedure on a table of any arity.
pub fn decide_with(f: &FuncTable, opts: DecideOptions) -> Result<Decision> {
    let ctx = f.ctx();
    let arity = f.arity();
    let p = ctx.p();
    let values = f.values();
    let mut timings = StageTimings::default();

    let mut clock = Instant::now();
    let system = class_system(ctx, arity)?;
    let len = system.view_len;
    let cols = system.full.cols();
    timings.split = lap(&mut clock);

    // Divisibility of every difference f(j + p*s) - f(j), class-major.
    let classes_n = system.class_count();
    let mut buffer = vec![0; system.positions.len() + classes_n * cols + len - 1];
    let (reduced, rest) = buffer.split_at_mut(system.positions.len());
    let (betas, scratch) = rest.split_at_mut(classes_n * cols);
    for (pos, diffs) in system.positions.chunks(len).zip(reduced.chunks_mut(len)) {
        let base = values[pos[0]];
        for (slot, &i) in diffs.iter_mut().zip(pos) {
            let d = ctx.sub(values[i], base);
            if !d.is_multiple_of(p) {
                timings.divisibility = lap(&mut clock);
                let mut d = reject(Stage::DivisibilityCheck, i, timings);
                // both variants share this stage
                d.two_stage = opts.two_stage.then_some(TwoStageOutcome {
                    verdict: Verdict::NotPolynomial,
                    stage: Stage::DivisibilityCheck,
                    counterexample: Some(i),
                });
                return Ok(d);
            }
            *slot = d;
        }
    }
    timings.divisibility = lap(&mut clock);

    let mut solved = 0;
    let mut rejection = None;
    for c in 0..classes_n {
        scratch.copy_from_slice(&reduced[c * len + 1..(c + 1) * len]);
        if let Err(row) = system.full_lu.solve_in_place(scratch, &mut betas[c * cols..(c + 1) * cols]) {
            rejection = Some(system.positions[c * len + row + 1]);
            break;
        }
        solved += 1;
    }
    timings.solve = lap(&mut clock);

    let mut classes = Vec::new();
    if opts.trace {
        for (c, view) in f.split_classes().iter().enumerate() {
            let diffs = &reduced[c * len..(c + 1) * len];
            let square_rhs: Vec<Residue> = system.square_rows.iter().map(|&r| diffs[r]).collect();
            classes.push(ClassTrace {
                class: view.class().to_vec(),
                view: view.to_vec(),
                reduced: diffs.to_vec(),
                square_solution: system.square.solve_for(&square_rhs).solution,
                solution: (c < solved).then(|| betas[c * cols..(c + 1) * cols].to_vec()),
            });
        }
    }

    let two_stage = opts.two_stage.then(|| two_stage_check(&system, reduced));

    let mut decision = match rejection {
        Some(index) => reject(Stage::SystemInconsistent, index, timings),
        None => {
            clock = Instant::now();
            let mut witness = Witness::with_degrees(ctx, arity, system.all_degrees.clone());
            // class digits, then the expansion index l
            let mut work = vec![0u64; 2 * arity];
            let (class, l) = work.split_at_mut(arity);
            for c in 0..classes_n {
                let base = values[system.positions[c * len]];
                let beta = &betas[c * cols..(c + 1) * cols];
                add_class_to_witness(&mut witness, &system, class, l, base, beta);
                advance(class, p);
            }
            let mismatch = witness.first_mismatch(f)?;
            assert_eq!(mismatch, None, "witness does not reproduce the input table");
            timings.residual = lap(&mut clock);
            Decision {
                verdict: Verdict::Polynomial,
                stage: Stage::Accepted,
                witness: Some(witness),
                counterexample: None,
                classes: Vec::new(),
                two_stage: None,
                diagnostics: Vec::new(),
                timings,
            }
        }
    };
    decision.classes = classes;
    if let Some(ts) = two_stage {
        if ts.verdict != decision.verdict {
            decision.diagnostics.push(format!(
                "two-stage check disagrees: {:?} at {:?} (counterexample {:?}) vs full system {:?}",
                ts.verdict, ts.stage, ts.counterexample, decision.verdict
            ));
        }
        decision.two_stage = Some(ts);
    }
    Ok(decision)
}

/// Time since `clock`, restarting it.
fn lap(clock: &mut Instant) -> Duration {
    let now = Instant::now();
    let d = now - *clock;
    *clock = now;
    d
}

fn reject(stage: Stage, index: usize, timings: StageTimings) -> Decision {
    Decision {
        verdict: Verdict::NotPolynomial,
        stage,
        witness: None,
        counterexample: Some(index),
        classes: Vec::new(),
        two_stage: None,
        diagnostics: Vec::new(),
        timings,
    }
}

/// Solves only the square rows of each class, then checks that solution
/// against every remaining row.
fn two_stage_check(system: &ClassSystem, reduced: &[Residue]) -> TwoStageOutcome {
    let len = system.view_len;
    let mut rhs = vec![0; system.square_rows.len()];
    let mut x = vec![0; system.square.cols()];
    for (c, diffs) in reduced.chunks(len).enumerate() {
        let position = |r: usize| system.positions[c * len + r];
        for (slot, &r) in rhs.iter_mut().zip(&system.square_rows) {
            *slot = diffs[r];
        }
        if let Err(row) = system.square_lu.solve_in_place(&mut rhs, &mut x) {
            let row = system.square_rows[row];
            return TwoStageOutcome {
                verdict: Verdict::NotPolynomial,
                stage: Stage::SystemInconsistent,
                counterexample: Some(position(row)),
            };
        }
        let predicted = if x.is_empty() { vec![0; len - 1] } else { system.full.apply(&x) };
        if let Some(r) = predicted.iter().zip(&diffs[1..]).position(|(a, b)| a != b) {
            return TwoStageOutcome {
                verdict: Verdict::NotPolynomial,
                stage: Stage::ResidualMismatch,
                counterexample: Some(position(r + 1)),
            };
        }
    }
    TwoStageOutcome { verdict: Verdict::Polynomial, stage: Stage::Accepted, counterexample: None }
}

/// Rewrites `base + sum beta_k prod (x_i - j_i)^k_i` on class `j` in terms of
/// `(x_i + j'_i)` with `j'_i = -j_i mod p`. Since `x_i - j_i = (x_i + j'_i) - d_i`
/// with `d_i = j_i + j'_i`, each monomial expands binomially.
fn add_class_to_witness(
    witness: &mut Witness,
    system: &ClassSystem,
    class: &[u64],
    l: &mut [u64],
    base: Residue,
    beta: &[Residue],
) {
    let ctx = witness.ctx();
    let p = ctx.p();
    let arity = class.len();
    let shift = class.iter().fold(0usize, |acc, &j| acc * p as usize + ((p - j) % p) as usize);
    witness.add_at(shift, 0, base);
    for (k, &b) in system.all_degrees[1..].iter().zip(beta) {
        if b == 0 {
            continue;
        }
        l.iter_mut().for_each(|li| *li = 0);
        loop {
            let mut c = b;
            for i in 0..arity {
                let (ki, li) = (k[i] as usize, l[i] as usize);
                if ki > li {
                    // d_i is 0 on the class j_i = 0 and p otherwise
                    c = if class[i] == 0 { 0 } else { ctx.mul(c, system.neg_p_pow[ki - li]) };
                }
                c = ctx.mul(c, system.binomials[ki][li]);
            }
            if c != 0 {
                let idx = if arity == 1 { l[0] as usize } else { system.degree_index[&*l] };
                witness.add_at(shift, idx, c);
            }
            if !advance_below(l, k) {
                break;
            }
        }
    }
}

/// Next tuple `l <= k` componentwise in lexicographic order.
fn advance_below(l: &mut [u64], k: &[u32]) -> bool {
    for (li, &ki) in l.iter_mut().zip(k).rev() {
        if *li < u64::from(ki) {
            *li += 1;
            return true;
        }
        *li = 0;
    }
    false
}

/// Checks the Carlitz congruence
/// `f(x + s*p) = sum_i (s*p)^i Phi_i(x) (mod p^n)` for every `x, s in Z/q`.
pub fn carlitz_verify(f: &FuncTable, phis: &[FuncTable]) -> Result<bool> {
    let ctx = f.ctx();
    if f.arity() != 1 {
        return Err(Error::ArityMismatch { expected: "1".into(), actual: f.arity() });
    }
    if phis.len() != ctx.n() as usize {
        return Err(Error::DimensionMismatch(format!("expected {} Phi functions, got {}", ctx.n(), phis.len())));
    }
    if let Some(bad) = phis.iter().find(|t| t.arity() != 1 || t.ctx() != ctx) {
        return Err(Error::ArityMismatch { expected: "1".into(), actual: bad.arity() });
    }
    let q = ctx.q();
    for s in 0..q {
        let sp = ctx.mul(s, ctx.p());
        for x in 0..q {
            let lhs = f.values()[((x + sp) % q) as usize];
            let mut rhs = 0;
            let mut pow = 1 % q;
            for phi in phis {
                rhs = ctx.add(rhs, ctx.mul(pow, phi.values()[x as usize]));
                pow = ctx.mul(pow, sp);
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Carlitz functions induced by a univariate witness:
/// `Phi_i(x) = sum alpha_{k,j} C(k,i) (x+j)^(k-i)` over generators with `p | x+j`.
pub fn carlitz_phis(witness: &Witness) -> Result<Vec<FuncTable>> {
    let ctx = witness.ctx();
    if witness.arity() != 1 {
        return Err(Error::ArityMismatch { expected: "1".into(), actual: witness.arity() });
    }
    let (p, q) = (ctx.p(), ctx.q());
    (0..ctx.n())
        .map(|i| {
            FuncTable::from_fn(ctx, 1, |x| {
                witness.terms().iter().fold(0, |acc, ((k, j), c)| {
                    let y = (x[0] + j[0]) % q;
                    if y % p != 0 || k[0] < i {
                        return acc;
                    }
                    let binom = ctx.reduce(pascal_row(k[0])[i as usize]);
                    ctx.add(acc, ctx.mul(*c, ctx.mul(binom, ctx.pow(y, (k[0] - i) as u64))))
                })
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;
    use crate::gens::{build_generators, carlitz_certificate};

    fn ctx(p: u64, n: u32) -> RingCtx {
        RingCtx::new(p, n).unwrap()
    }

    fn table(p: u64, n: u32, values: &[u64]) -> FuncTable {
        FuncTable::new(ctx(p, n), 1, values.to_vec()).unwrap()
    }

    #[test]
    fn worked_example_z8() {
        let f = table(2, 3, &[2, 1, 6, 1, 2, 1, 6, 1]);
        let d = decide_univariate(&f).unwrap();
        assert_eq!((d.verdict, d.stage), (Verdict::Polynomial, Stage::Accepted));
        assert_eq!(d.classes[0].view, vec![2, 6, 2, 6]);
        assert_eq!(d.classes[1].view, vec![1, 1, 1, 1]);
        assert_eq!(d.classes[0].reduced, vec![0, 4, 0, 4]);
        assert_eq!(d.classes[1].reduced, vec![0, 0, 0, 0]);
        assert_eq!(d.classes[0].square_solution, Some(vec![2, 0]));
        assert_eq!(d.classes[0].solution, Some(vec![2, 0]));
        let w = d.witness.unwrap();
        let expected: BTreeMap<String, u64> =
            [("(0,0)".to_string(), 2), ("(1,0)".to_string(), 2), ("(0,1)".to_string(), 1)].into();
        assert_eq!(w.string_map(), expected);
    }

    #[test]
    fn identity_is_polynomial() {
        for (p, n) in [(2u64, 3u32), (3, 2), (5, 2), (2, 6)] {
            let f = FuncTable::from_fn(ctx(p, n), 1, |x| x[0]).unwrap();
            let d = decide_univariate(&f).unwrap();
            assert!(d.is_polynomial());
            assert_eq!(d.witness.unwrap().to_table().unwrap(), f);
        }
    }

    #[test]
    fn system_cache_reuse_and_eviction() {
        // p = 2, n = 14 is above the cache limit and lives only as the last system
        let small = FuncTable::from_fn(ctx(3, 2), 1, |x| x[0] * x[0]).unwrap();
        let large = FuncTable::from_fn(ctx(2, 14), 1, |x| x[0] * x[0] + 1).unwrap();
        for f in [&small, &large, &large, &small, &large] {
            assert!(decide_multivariate(f).unwrap().is_polynomial());
        }
        clear_system_cache();
        let mut bad = large.values().to_vec();
        bad[6] ^= 1;
        let d = decide_multivariate(&FuncTable::new(ctx(2, 14), 1, bad).unwrap()).unwrap();
        assert_eq!((d.stage, d.counterexample), (Stage::DivisibilityCheck, Some(6)));
    }

    #[test]
    fn divisibility_rejection() {
        let d = decide_univariate(&table(2, 2, &[0, 0, 1, 0])).unwrap();
        assert_eq!((d.verdict, d.stage), (Verdict::NotPolynomial, Stage::DivisibilityCheck));
        assert_eq!(d.counterexample, Some(2));
        assert!(d.witness.is_none());
    }

    #[test]
    fn system_rejection() {
        // differences divisible by 3 but not of the form 3*a*s + 9*b*s^2
        let f = table(3, 3, &[0, 0, 0, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let d = decide_with(&f, DecideOptions { two_stage: true, trace: false }).unwrap();
        assert_eq!((d.verdict, d.stage), (Verdict::NotPolynomial, Stage::SystemInconsistent));
        let index = d.counterexample.unwrap();
        assert_eq!(index % 3, 0);
        assert_eq!(d.two_stage.as_ref().unwrap().verdict, Verdict::NotPolynomial);
        assert!(d.diagnostics.is_empty());
    }

    #[test]
    fn arity_checks() {
        let f = FuncTable::zero(ctx(2, 2), 2).unwrap();
        assert!(matches!(decide_univariate(&f), Err(Error::ArityMismatch { .. })));
        assert!(decide_multivariate(&f).unwrap().is_polynomial());
    }

    #[test]
    fn fields_accept_everything() {
        let c = ctx(3, 1);
        let f = FuncTable::new(c, 1, vec![2, 0, 1]).unwrap();
        let d = decide_univariate(&f).unwrap();
        let w = d.witness.unwrap();
        // class j is carried by the shift -j mod p
        assert_eq!((w.get(&[0], &[0]), w.get(&[0], &[2]), w.get(&[0], &[1])), (2, 0, 1));
    }

    #[test]
    fn bivariate_examples() {
        let c = ctx(2, 2);
        let basis = build_generators(c, 2).unwrap();
        let u00 = &basis.get(&[0, 0], &[0, 0]).unwrap().table;
        assert!(decide_multivariate(u00).unwrap().is_polynomial());

        let mut bump = FuncTable::zero(c, 2).unwrap().into_values();
        bump[2 * 4] = 1;
        let bump = FuncTable::new(c, 2, bump).unwrap();
        let d = decide_multivariate(&bump).unwrap();
        assert_eq!((d.stage, d.counterexample), (Stage::DivisibilityCheck, Some(8)));

        let g = FuncTable::from_fn(c, 2, |a| a[0] + a[0] * a[0] * a[1]).unwrap();
        let d = decide_multivariate(&g).unwrap();
        assert!(d.is_polynomial());
        assert_eq!(d.witness.unwrap().to_table().unwrap(), g);
    }

    #[test]
    fn carlitz_examples() {
        let c = ctx(2, 3);
        let basis = build_generators(c, 1).unwrap();
        let u0 = basis.get(&[0], &[0]).unwrap().table.clone();
        let zero = FuncTable::zero(c, 1).unwrap();
        assert!(carlitz_verify(&u0, &[u0.clone(), zero.clone(), zero.clone()]).unwrap());
        assert!(!carlitz_verify(&u0, &[zero.clone(), zero.clone(), zero.clone()]).unwrap());
        for k in 0..3 {
            let uk = basis.get(&[k], &[0]).unwrap().table.clone();
            assert!(carlitz_verify(&uk, &carlitz_certificate(c, k).unwrap()).unwrap());
        }
        assert!(matches!(carlitz_verify(&u0, std::slice::from_ref(&zero)), Err(Error::DimensionMismatch(_))));
        let bi = FuncTable::zero(c, 2).unwrap();
        assert!(matches!(carlitz_verify(&bi, &[zero.clone(), zero.clone(), zero]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn witness_phis_certify() {
        let f = table(2, 3, &[2, 1, 6, 1, 2, 1, 6, 1]);
        let w = decide_univariate(&f).unwrap().witness.unwrap();
        assert!(carlitz_verify(&f, &carlitz_phis(&w).unwrap()).unwrap());
    }
}
