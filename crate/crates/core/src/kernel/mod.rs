//! Exact scalar and linear-algebra substrate.
//!
//! The scalar tower is `Rational -> Poly -> RatFunc`, with two series
//! containers on top: [`GradedSeries`] (coroot-lattice graded, truncated by
//! height) and [`TLaurent`] (expansion in `1/t`).

mod gcd;
mod laurent;
mod linalg;
mod poly;
mod ratfunc;
mod rational;
mod serial;
mod series;

use num_traits::{One, Zero};

pub use gcd::{poly_content, poly_gcd};
pub use laurent::{t_limit, TLaurent, DEFAULT_CUTOFF};
pub use linalg::{solve_linear, Field, Matrix};
pub use poly::{exact_divide, Monomial, Poly, MAX_DEGREE, MAX_VARS};
pub use ratfunc::RatFunc;
pub use serial::{PolyJson, RatFuncJson};
pub use series::{Coeff, GradedSeries, Lattice};

pub use rational::{ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("polynomial is not divisible: remainder term {remainder}")]
    NotDivisible { remainder: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular linear system (rank {rank} of {size})")]
    Singular { rank: usize, size: usize },
    #[error("t-limit diverges: leading exponent {exponent} > 0")]
    Diverges { exponent: i64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_i64(n)
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

impl Coeff for Rational {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
}
