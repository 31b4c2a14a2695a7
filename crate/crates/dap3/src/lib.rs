//! Exact solver for three-matrix division and assignment problems (3M-DAPs)
//! and muffin problems.
//!
//! A 3M-DAP divides each row of a supply matrix T into t pieces and
//! distributes them into demand matrices U (u pieces per row) and V (v pieces
//! per row), maximizing the smallest piece; a muffin problem f(m, s) is the
//! special case where every muffin is a 2-piece supply row and every student
//! an n- or (n+1)-piece demand row. The solver classifies a problem against
//! its family thresholds, reduces anything that is not a 0-problem to a
//! strictly smaller 3M-DAP, and rebuilds the optimal solution from the
//! reduced one by completing supply/demand pairs. All arithmetic is exact
//! rational; there is no floating point anywhere.
//!
//! Entry points:
//! - [`muffin::muffin_value`] for f(m, s);
//! - [`recursive::solve_recursive`] and [`recursive::solve_huddleston`] for
//!   general instances;
//! - [`oracle::brute_force_value`] for independent desk-scale certification.

// Error enums carry exact rationals (the mismatched quantities themselves);
// their size is irrelevant on these cold paths.
#![allow(clippy::result_large_err)]

pub mod classify;
pub mod greedy;
pub mod lower_bounds;
pub mod muffin;
pub mod opcount;
pub mod oracle;
pub mod pair;
pub mod problem;
pub mod rat;
pub mod recursive;
pub mod solution;

pub use classify::{classify, Classification, Kind};
pub use muffin::{muffin_value, MuffinAnswer, MuffinRoute};
pub use problem::{muffin_to_dap3, Dap3, FamilyParams, MuffinSpec};
pub use rat::{Rat, RatMatrix};
pub use recursive::{solve_huddleston, solve_recursive};
pub use solution::Solution;
