//! Linear systems over the local ring `Z/p^n`.
//!
//! Non-units cannot be inverted, so elimination always pivots on an entry of
//! minimal p-adic valuation in the active submatrix. Every other entry of the
//! pivot column is then an exact multiple of the pivot, and the pivot row is
//! solvable iff its right-hand side is divisible by `p^v`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::zring::{Residue, RingCtx};

/// `A x = b` over `Z/q`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSystem {
    ctx: RingCtx,
    rows: usize,
    cols: usize,
    matrix: Vec<Residue>,
    rhs: Vec<Residue>,
}

impl LocalSystem {
    pub fn new(ctx: RingCtx, matrix: &[Vec<u64>], rhs: &[u64]) -> Result<Self> {
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, Vec::len);
        if let Some(r) = matrix.iter().position(|row| row.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {r} has {} entries, expected {cols}",
                matrix[r].len()
            )));
        }
        let flat = matrix.iter().flatten().copied().collect();
        Self::from_flat(ctx, rows, cols, flat, rhs.to_vec())
    }

    pub fn from_flat(ctx: RingCtx, rows: usize, cols: usize, matrix: Vec<u64>, rhs: Vec<u64>) -> Result<Self> {
        if matrix.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} matrix entries for a {rows}x{cols} system",
                matrix.len()
            )));
        }
        if rhs.len() != rows {
            return Err(Error::DimensionMismatch(format!("{} right-hand sides for {rows} rows", rhs.len())));
        }
        let matrix = matrix.into_iter().map(|a| ctx.reduce(a)).collect();
        let rhs = rhs.into_iter().map(|a| ctx.reduce(a)).collect();
        Ok(LocalSystem { ctx, rows, cols, matrix, rhs })
    }

    pub fn ctx(&self) -> RingCtx {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> Residue {
        self.matrix[r * self.cols + c]
    }

    pub fn rhs(&self) -> &[Residue] {
        &self.rhs
    }

    /// `A x`, reduced mod `q`.
    pub fn apply(&self, x: &[u64]) -> Vec<Residue> {
        assert_eq!(x.len(), self.cols);
        let ctx = self.ctx;
        self.matrix
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|row| row.iter().zip(x).fold(0, |acc, (&a, &xi)| ctx.add(acc, ctx.mul(a, xi))))
            .collect()
    }

    pub fn is_solution(&self, x: &[u64]) -> bool {
        self.satisfies(x, &self.rhs)
    }

    fn satisfies(&self, x: &[u64], rhs: &[Residue]) -> bool {
        if self.cols == 0 {
            return rhs.iter().all(|&b| b == 0);
        }
        self.apply(x) == rhs
    }

    /// Solves `A x = rhs` for the matrix of `self` and a different right-hand side.
    pub fn solve_for(&self, rhs: &[Residue]) -> SolveOutcome {
        assert_eq!(rhs.len(), self.rows, "right-hand side length must equal the row count");
        let outcome = self.factor().solve(rhs);
        if let Some(x) = &outcome.solution {
            assert!(self.satisfies(x, rhs), "elimination produced a non-solution");
        }
        outcome
    }

    /// Runs the elimination on the matrix alone. Pivot choice never looks at
    /// the right-hand side, so the recorded steps can be replayed on any `b`.
    pub fn factor(&self) -> Factorization {
        let ctx = self.ctx;
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.matrix.clone();
        let mut row_of: Vec<usize> = (0..rows).collect();
        let mut col_of: Vec<usize> = (0..cols).collect();
        let mut steps = Vec::new();
        let mut trace = Vec::new();

        for step in 0..rows.min(cols) {
            // minimal valuation in the active block
            let mut best: Option<(usize, usize, u32)> = None;
            'scan: for r in step..rows {
                let row = &a[r * cols..(r + 1) * cols];
                for (c, &e) in row.iter().enumerate().skip(step) {
                    if e == 0 {
                        continue;
                    }
                    let v = ctx.val_p(e);
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((r, c, v));
                        if v == 0 {
                            break 'scan;
                        }
                    }
                }
            }
            let Some((pr, pc, v)) = best else { break };

            if pr != step {
                for c in 0..cols {
                    a.swap(step * cols + c, pr * cols + c);
                }
                row_of.swap(step, pr);
            }
            if pc != step {
                for r in 0..rows {
                    a.swap(r * cols + step, r * cols + pc);
                }
                col_of.swap(step, pc);
            }
            trace.push(PivotStep { row: row_of[step], col: col_of[step], valuation: v });

            let (_, unit) = ctx.split_unit(a[step * cols + step]);
            let unit_inv = ctx.inv_unit(unit).expect("unit part of a pivot is a unit");
            for c in step..cols {
                a[step * cols + c] = ctx.mul(a[step * cols + c], unit_inv);
            }

            let pv = ctx.p_pow(v);
            let mut clear = vec![0; rows - step - 1];
            for (r, slot) in (step + 1..rows).zip(&mut clear) {
                let e = a[r * cols + step];
                if e == 0 {
                    continue;
                }
                // e has valuation >= v, so e = factor * p^v exactly.
                let factor = e / pv;
                for c in step..cols {
                    let t = ctx.mul(factor, a[step * cols + c]);
                    a[r * cols + c] = ctx.sub(a[r * cols + c], t);
                }
                *slot = factor;
            }
            steps.push(Step { swap: pr, valuation: v, unit_inv, clear });
        }

        let rank = steps.len();
        a.truncate(rank * cols);
        Factorization { ctx, rows, cols, row_of, col_of, steps, upper: a, trace }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Step {
    swap: usize,
    valuation: u32,
    unit_inv: Residue,
    /// Row `step + 1 + i` loses `clear[i]` times the pivot row.
    clear: Vec<Residue>,
}

/// Recorded elimination of a [`LocalSystem`] matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    ctx: RingCtx,
    rows: usize,
    cols: usize,
    /// Original row and column at each permuted position.
    row_of: Vec<usize>,
    col_of: Vec<usize>,
    steps: Vec<Step>,
    /// First `rank` rows of the reduced matrix, pivots normalized to `p^v`.
    upper: Vec<Residue>,
    trace: Vec<PivotStep>,
}

impl Factorization {
    pub fn rank(&self) -> usize {
        self.steps.len()
    }

    pub fn solve(&self, rhs: &[Residue]) -> SolveOutcome {
        let mut b = rhs.to_vec();
        let mut x = vec![0; self.cols];
        match self.solve_in_place(&mut b, &mut x) {
            Ok(()) => SolveOutcome {
                status: SolveStatus::Solvable,
                solution: Some(x),
                pivot_trace: self.trace.clone(),
                inconsistent_row: None,
            },
            Err(row) => {
                let steps = self.row_of.iter().position(|&r| r == row).map_or(self.rank(), |i| (i + 1).min(self.rank()));
                SolveOutcome::inconsistent(self.trace[..steps].to_vec(), row)
            }
        }
    }

    /// Overwrites `b` with scratch values and writes the solution to `x`.
    /// On failure returns the original index of an unsatisfiable row.
    pub fn solve_in_place(&self, b: &mut [Residue], x: &mut [Residue]) -> Result<(), usize> {
        assert_eq!((b.len(), x.len()), (self.rows, self.cols));
        let ctx = self.ctx;
        for (i, st) in self.steps.iter().enumerate() {
            b.swap(i, st.swap);
            if ctx.val_p(b[i]) < st.valuation {
                return Err(self.row_of[i]);
            }
            b[i] = ctx.mul(b[i], st.unit_inv);
            let pivot_rhs = b[i];
            for (br, &factor) in b[i + 1..].iter_mut().zip(&st.clear) {
                if factor != 0 {
                    *br = ctx.sub(*br, ctx.mul(factor, pivot_rhs));
                }
            }
        }
        let rank = self.rank();
        if let Some(r) = (rank..self.rows).find(|&r| b[r] != 0) {
            return Err(self.row_of[r]);
        }
        let cols = self.cols;
        x.iter_mut().for_each(|xi| *xi = 0);
        // back substitution in the permuted column order, stored in b[..rank]
        for i in (0..rank).rev() {
            let row = &self.upper[i * cols..(i + 1) * cols];
            let t = (i + 1..rank).fold(b[i], |t, c| ctx.sub(t, ctx.mul(row[c], b[c])));
            let pv = ctx.p_pow(self.steps[i].valuation);
            debug_assert_eq!(t % pv, 0);
            b[i] = t / pv;
        }
        for i in 0..rank {
            x[self.col_of[i]] = b[i];
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolveStatus {
    Solvable,
    Inconsistent,
}

/// One elimination step: original row and column of the pivot and its valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PivotStep {
    pub row: usize,
    pub col: usize,
    pub valuation: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Particular solution with free variables set to zero.
    pub solution: Option<Vec<Residue>>,
    pub pivot_trace: Vec<PivotStep>,
    /// Original index of a row that reduced to an unsatisfiable equation.
    pub inconsistent_row: Option<usize>,
}

impl SolveOutcome {
    pub fn is_solvable(&self) -> bool {
        self.status == SolveStatus::Solvable
    }

    fn inconsistent(trace: Vec<PivotStep>, row: usize) -> Self {
        SolveOutcome { status: SolveStatus::Inconsistent, solution: None, pivot_trace: trace, inconsistent_row: Some(row) }
    }
}

/// Solves `sys` by valuation-pivoted elimination.
///
/// Pivot ties are broken by the smallest (row, column) position in the
/// active submatrix. A returned solution is always checked by substitution.
pub fn solve_system(sys: &LocalSystem) -> SolveOutcome {
    sys.solve_for(&sys.rhs)
}


#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn ctx(p: u64, n: u32) -> RingCtx {
        RingCtx::new(p, n).unwrap()
    }

    fn brute_force_solvable(sys: &LocalSystem) -> bool {
        let q = sys.ctx().q();
        let mut x = vec![0u64; sys.cols()];
        loop {
            if sys.is_solution(&x) {
                return true;
            }
            if !crate::funcspace::advance(&mut x, q) {
                return false;
            }
        }
    }

    #[test]
    fn worked_example_square_system() {
        let sys = LocalSystem::new(ctx(2, 3), &[vec![2, 4], vec![4, 0]], &[4, 0]).unwrap();
        let out = solve_system(&sys);
        assert_eq!(out.status, SolveStatus::Solvable);
        assert_eq!(out.solution, Some(vec![2, 0]));
        assert_eq!(out.pivot_trace[0], PivotStep { row: 0, col: 0, valuation: 1 });
    }

    #[test]
    fn identity_system() {
        let c = ctx(3, 2);
        let eye: Vec<Vec<u64>> = (0..3).map(|i| (0..3).map(|j| u64::from(i == j)).collect()).collect();
        let out = solve_system(&LocalSystem::new(c, &eye, &[5, 0, 8]).unwrap());
        assert_eq!(out.solution, Some(vec![5, 0, 8]));
    }

    #[test]
    fn two_x_equals_one_mod_4() {
        let out = solve_system(&LocalSystem::new(ctx(2, 2), &[vec![2]], &[1]).unwrap());
        assert_eq!(out.status, SolveStatus::Inconsistent);
        assert_eq!(out.inconsistent_row, Some(0));
    }

    #[test]
    fn zero_row_with_nonzero_rhs() {
        let out = solve_system(&LocalSystem::new(ctx(2, 3), &[vec![1, 1], vec![2, 2]], &[1, 4]).unwrap());
        assert_eq!(out.status, SolveStatus::Inconsistent);
        assert_eq!(out.inconsistent_row, Some(1));
    }

    #[test]
    fn malformed_inputs() {
        let c = ctx(2, 3);
        assert!(matches!(LocalSystem::new(c, &[vec![1, 2], vec![3]], &[0, 0]), Err(Error::DimensionMismatch(_))));
        assert!(matches!(LocalSystem::new(c, &[vec![1, 2]], &[0, 0]), Err(Error::DimensionMismatch(_))));
        assert!(matches!(LocalSystem::from_flat(c, 2, 2, vec![1; 3], vec![0; 2]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn empty_systems() {
        let c = ctx(2, 3);
        let no_cols = LocalSystem::from_flat(c, 2, 0, vec![], vec![0, 0]).unwrap();
        assert_eq!(solve_system(&no_cols).solution, Some(vec![]));
        let bad = LocalSystem::from_flat(c, 2, 0, vec![], vec![0, 3]).unwrap();
        assert_eq!(solve_system(&bad).inconsistent_row, Some(1));
        let no_rows = LocalSystem::from_flat(c, 0, 2, vec![], vec![]).unwrap();
        assert_eq!(solve_system(&no_rows).solution, Some(vec![0, 0]));
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (p, n) in [(2u64, 3u32), (3, 2)] {
            let c = ctx(p, n);
            for &(rows, cols) in &[(3usize, 2usize), (3, 3), (2, 3), (4, 2)] {
                let mut solvable = 0;
                for trial in 0..400 {
                    // bias toward non-units so that singular systems are common
                    let mut draw = || {
                        let v = rng.gen_range(0..c.q());
                        if trial % 2 == 0 { v - v % p } else { v }
                    };
                    let matrix: Vec<Vec<u64>> = (0..rows).map(|_| (0..cols).map(|_| draw()).collect()).collect();
                    let rhs: Vec<u64> = (0..rows).map(|_| draw()).collect();
                    let sys = LocalSystem::new(c, &matrix, &rhs).unwrap();
                    let out = solve_system(&sys);
                    assert_eq!(out.is_solvable(), brute_force_solvable(&sys), "{matrix:?} {rhs:?} mod {}", c.q());
                    solvable += out.is_solvable() as usize;
                }
                assert!(solvable > 5 && solvable < 395, "degenerate sample: {solvable}");
            }
        }
    }

    #[test]
    fn unit_determinant_systems_have_the_unique_solution() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let c = ctx(3, 3);
        let mut checked = 0;
        while checked < 200 {
            let m: Vec<Vec<u64>> = (0..2).map(|_| (0..2).map(|_| rng.gen_range(1..c.q())).collect()).collect();
            if m.iter().flatten().any(|&e| !c.is_unit(e)) {
                continue;
            }
            let det = c.sub(c.mul(m[0][0], m[1][1]), c.mul(m[0][1], m[1][0]));
            if !c.is_unit(det) {
                continue;
            }
            let x = vec![rng.gen_range(0..c.q()), rng.gen_range(0..c.q())];
            let sys = LocalSystem::new(c, &m, &[0, 0]).unwrap();
            let rhs = sys.apply(&x);
            let out = solve_system(&LocalSystem::new(c, &m, &rhs).unwrap());
            assert_eq!(out.solution, Some(x));
            checked += 1;
        }
    }
}
