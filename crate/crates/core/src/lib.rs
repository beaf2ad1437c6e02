// SPDX-License-Identifier: Apache-2.0

//! Exact complexity measures of Boolean functions under parity queries.
//!
//! Functions are truth tables over `{0,1}^n` with `x_1` in the least
//! significant bit. Classical measures (decision tree depth, certificates,
//! block sensitivity) live in [`classical`]; their parity analogues, which
//! allow queries of arbitrary linear forms over GF(2), live in [`parity`].

pub mod boolfn;
pub mod certify;
pub mod classical;
pub mod comm;
pub mod construct;
pub mod error;
pub mod gf2;
pub mod measure;
pub mod parity;

pub use boolfn::{fourier, parse_function_spec, BooleanFunction, Dyadic, FourierSpectrum, RestrictedFunction};
pub use error::{Error, Result};
pub use gf2::{Coset, Gf2Matrix, Gf2Vector, Subspace};
pub use measure::{Measured, Mode, Semantics};
pub use parity::{ParityAnalyzer, ParityCertificate, ParityDecisionTree};
