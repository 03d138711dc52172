//! Function tables over `(Z/q)^m` and their residue-class structure.
//!
//! Arguments are laid out lexicographically with `x_1` most significant, so
//! the table index of `(x_1, ..., x_m)` is `sum x_i * q^(m - i)`.

use crate::error::{Error, Result};
use crate::zring::{Residue, RingCtx};

/// Maximum number of entries a table may hold.
pub const TABLE_LIMIT: u128 = 1 << 26;

/// Number of entries of a table of the given arity, checked against [`TABLE_LIMIT`].
pub fn table_len(ctx: RingCtx, arity: usize) -> Result<usize> {
    if arity == 0 {
        return Err(Error::ArityMismatch { expected: ">= 1".into(), actual: 0 });
    }
    let mut len: u128 = 1;
    for _ in 0..arity {
        len = len.saturating_mul(ctx.q() as u128);
        if len > TABLE_LIMIT {
            return Err(Error::CapacityExceeded { requested: len, limit: TABLE_LIMIT });
        }
    }
    Ok(len as usize)
}

/// Steps `digits` to the next tuple in lexicographic order over `[0, radix)^k`.
/// Returns `false` once the counter wraps back to all zeros.
pub(crate) fn advance(digits: &mut [u64], radix: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// A total function `(Z/q)^m -> Z/q` stored as its value table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FuncTable {
    ctx: RingCtx,
    arity: usize,
    values: Vec<Residue>,
}

impl FuncTable {
    pub fn new(ctx: RingCtx, arity: usize, values: Vec<u64>) -> Result<Self> {
        let len = table_len(ctx, arity)?;
        if values.len() != len {
            return Err(Error::Count { expected: len, found: values.len() });
        }
        if let Some((position, &value)) = values.iter().enumerate().find(|(_, &v)| v >= ctx.q()) {
            return Err(Error::Range { value: value as i128, position, modulus: ctx.q() });
        }
        Ok(FuncTable { ctx, arity, values })
    }

    pub fn zero(ctx: RingCtx, arity: usize) -> Result<Self> {
        let len = table_len(ctx, arity)?;
        Ok(FuncTable { ctx, arity, values: vec![0; len] })
    }

    /// Tabulates `f` at every argument tuple; results are reduced mod `q`.
    pub fn from_fn(ctx: RingCtx, arity: usize, mut f: impl FnMut(&[u64]) -> u64) -> Result<Self> {
        let len = table_len(ctx, arity)?;
        let mut values = Vec::with_capacity(len);
        let mut args = vec![0u64; arity];
        loop {
            values.push(ctx.reduce(f(&args)));
            if !advance(&mut args, ctx.q()) {
                break;
            }
        }
        Ok(FuncTable { ctx, arity, values })
    }

    #[inline]
    pub fn ctx(&self) -> RingCtx {
        self.ctx
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn values(&self) -> &[Residue] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Residue> {
        self.values
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn index_of(&self, args: &[u64]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        let q = self.ctx.q();
        args.iter().fold(0u64, |acc, &x| acc * q + x % q) as usize
    }

    pub fn args_of(&self, mut index: usize) -> Vec<u64> {
        let q = self.ctx.q() as usize;
        let mut args = vec![0u64; self.arity];
        for a in args.iter_mut().rev() {
            *a = (index % q) as u64;
            index /= q;
        }
        args
    }

    #[inline]
    pub fn get(&self, args: &[u64]) -> Residue {
        self.values[self.index_of(args)]
    }

    /// `g(x) = f(x + shift)` with each coordinate taken mod `q`.
    pub fn cyclic_shift(&self, shift: &[i64]) -> FuncTable {
        assert_eq!(shift.len(), self.arity, "shift length must equal arity");
        let q = self.ctx.q();
        let offsets: Vec<u64> = shift.iter().map(|&j| self.ctx.reduce_signed(j as i128)).collect();
        let mut args = vec![0u64; self.arity];
        let mut values = Vec::with_capacity(self.values.len());
        loop {
            let src = args
                .iter()
                .zip(&offsets)
                .fold(0u64, |acc, (&x, &j)| acc * q + (x + j) % q);
            values.push(self.values[src as usize]);
            if !advance(&mut args, q) {
                break;
            }
        }
        FuncTable { ctx: self.ctx, arity: self.arity, values }
    }

    /// Pointwise sum. Panics if the tables live over different rings or arities.
    pub fn add(&self, other: &FuncTable) -> FuncTable {
        assert_eq!((self.ctx, self.arity), (other.ctx, other.arity));
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| self.ctx.add(a, b)).collect();
        FuncTable { ctx: self.ctx, arity: self.arity, values }
    }

    pub fn scale(&self, c: Residue) -> FuncTable {
        let c = self.ctx.reduce(c);
        let values = self.values.iter().map(|&a| self.ctx.mul(a, c)).collect();
        FuncTable { ctx: self.ctx, arity: self.arity, values }
    }

    /// Adds `c * other` into `self` in place.
    pub fn add_scaled(&mut self, c: Residue, other: &FuncTable) {
        assert_eq!((self.ctx, self.arity), (other.ctx, other.arity));
        let ctx = self.ctx;
        for (a, &b) in self.values.iter_mut().zip(&other.values) {
            *a = ctx.add(*a, ctx.mul(c, b));
        }
    }

    /// Restrictions of `self` to each residue class mod `p`, in lexicographic class order.
    pub fn split_classes(&self) -> Vec<ResidueClassView<'_>> {
        let p = self.ctx.p();
        let mut class = vec![0u64; self.arity];
        let mut views = Vec::with_capacity((p as usize).pow(self.arity as u32));
        loop {
            views.push(ResidueClassView { table: self, class: class.clone() });
            if !advance(&mut class, p) {
                break;
            }
        }
        views
    }

    /// Inverse of [`split_classes`](Self::split_classes): `classes[c]` holds the
    /// values of class `c` (lexicographic class order) in view order.
    pub fn from_classes(ctx: RingCtx, arity: usize, classes: &[Vec<u64>]) -> Result<Self> {
        let mut table = FuncTable::zero(ctx, arity)?;
        let expected = (ctx.p() as usize).pow(arity as u32);
        if classes.len() != expected {
            return Err(Error::Count { expected, found: classes.len() });
        }
        let view_len = table.len() / expected;
        let positions: Vec<Vec<usize>> =
            table.split_classes().iter().map(|v| v.positions().collect()).collect();
        for (vals, pos) in classes.iter().zip(positions) {
            if vals.len() != view_len {
                return Err(Error::Count { expected: view_len, found: vals.len() });
            }
            for (&v, i) in vals.iter().zip(pos) {
                table.values[i] = ctx.reduce(v);
            }
        }
        Ok(table)
    }
}

/// The values `f(j + p*s)` for a fixed class tuple `j`, with `s` ranging
/// lexicographically over `[0, q/p)^m`. Holds positions into the parent table.
#[derive(Debug, Clone)]
pub struct ResidueClassView<'a> {
    table: &'a FuncTable,
    class: Vec<u64>,
}

impl<'a> ResidueClassView<'a> {
    pub fn class(&self) -> &[u64] {
        &self.class
    }

    /// Number of entries, `(q/p)^m`.
    pub fn len(&self) -> usize {
        self.table.len() / (self.table.ctx.p() as usize).pow(self.table.arity as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Table index of the argument `class + p*s`.
    pub fn position_of(&self, s: &[u64]) -> usize {
        let ctx = self.table.ctx;
        self.class
            .iter()
            .zip(s)
            .fold(0u64, |acc, (&j, &s)| acc * ctx.q() + j + ctx.p() * s) as usize
    }

    /// Table positions in view order.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        let ctx = self.table.ctx;
        let radix = ctx.q() / ctx.p();
        let mut s = vec![0u64; self.class.len()];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let pos = self.position_of(&s);
            done = !advance(&mut s, radix);
            Some(pos)
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = Residue> + '_ {
        self.positions().map(|i| self.table.values[i])
    }

    pub fn to_vec(&self) -> Vec<Residue> {
        self.iter().collect()
    }
}
