//! Exact arithmetic for genus-zero sign-normalized rank-one Drinfeld modules.
//!
//! The crate builds the Carlitz module and its generalizations over
//! `K = F_q(x)` with a place at infinity of any degree `d`, together with
//! their shtuka functions, the special functions `U` and `ω`, the period
//! `π̃`, Thakur Gauss sums and twisted Pellarin L-series. Every object is
//! exact: finite-field coefficients, rational functions, and Laurent series
//! in a uniformizer `u` (with `u^(q^d - 1) = -π`) carrying explicit
//! precision.
//!
//! Layout, bottom up:
//!
//! * [`field`], [`poly`], [`mpoly`]: finite fields, univariate polynomials and
//!   rational functions, multivariate coefficients with linear denominators.
//! * [`skew`]: twisted polynomials `R{τ}` with right division and right gcd.
//! * [`series`]: precision-tracked Laurent series in `u`.
//! * [`carlitz`]: the Carlitz module, torsion, Gauss sums, `ω` and `π̃` for `F_q[θ]`.
//! * [`genus0`]: the explicit construction for arbitrary `d`.
//! * [`lseries`]: twisted L-series, the deformed exponential and the checks
//!   built on them.
//!
//! A narrative guide lives in the `book/` directory at the repository root;
//! its code listings are compiled as doc-tests of this crate.

pub mod carlitz;
pub mod error;
pub mod field;
pub mod genus0;
pub mod linalg;
pub mod lseries;
pub mod mpoly;
pub mod poly;
pub mod series;
pub mod skew;

pub use error::{Error, Result};
pub use field::{Elem, Field};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/carlitz.md")]
    mod carlitz {}
    #[doc = include_str!("../../../book/src/genus0.md")]
    mod genus0 {}
    #[doc = include_str!("../../../book/src/lseries.md")]
    mod lseries {}
}
