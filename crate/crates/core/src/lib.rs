//! Decide whether a function `(Z/p^n)^m -> Z/p^n` is induced by a polynomial,
//! and produce an explicit polynomial when it is.
//!
//! The crate is organised bottom-up:
//!
//! - [`zring`]: residue arithmetic, p-adic valuation, unit inversion.
//! - [`funcspace`]: value tables, cyclic shifts and residue-class views.
//! - [`poly`] and [`gens`]: sparse polynomials and the shifted generator basis.
//! - [`linsolve`]: valuation-pivoted elimination over the local ring `Z/p^n`.
//! - [`decide`]: the per-residue-class decision procedure and Carlitz certificates.
//! - [`synth`]: witness to polynomial conversion and table evaluation.
//! - [`oracle`]: brute-force enumeration used as ground truth at small sizes.
//! - [`cli`]: input parsing, JSON reports and the `polyfun` command line.

pub mod bench;
pub mod cli;
pub mod decide;
pub mod error;
pub mod funcspace;
pub mod gens;
pub mod linsolve;
pub mod oracle;
pub mod poly;
pub mod synth;
pub mod witness;
pub mod zring;

pub use decide::{
    carlitz_verify, decide_multivariate, decide_univariate, decide_with, DecideOptions, Decision,
    Stage, Verdict,
};
pub use error::{Error, Result};
pub use funcspace::{FuncTable, ResidueClassView};
pub use gens::{build_generators, generator_polynomial, Generator, GeneratorBasis};
pub use linsolve::{solve_system, Factorization, LocalSystem, SolveOutcome, SolveStatus};
pub use poly::Polynomial;
pub use synth::{eval_polynomial, synthesize, SynthesizedPolynomial};
pub use witness::{GenKey, Witness};
pub use zring::RingCtx;
