//! Exact computation of Euler characteristics of Milnor fibres of images of
//! corank-1 map-germs, and of the local-algebra invariants behind them.
//!
//! The layers, bottom up:
//!
//! * [`poly`]: rational polynomials, the input parser, divided differences,
//!   resultants and Jacobians;
//! * [`standard_basis`]: Mora standard bases and colengths in the local ring;
//! * [`milnor`]: Milnor numbers of hypersurfaces and complete intersections;
//! * [`multiple_points`]: multiple point spaces `D^k(f)` and their
//!   restrictions `D^k(f, P)`;
//! * [`euler`]: the Euler-characteristic formulas built on those numbers;
//! * [`family`]: constancy checks along one-parameter unfoldings;
//! * [`catalog`]: the table of simple and named corank-1 germs `C^3 -> C^4`.

pub mod catalog;
pub mod error;
pub mod euler;
pub mod family;
pub mod field;
pub mod milnor;
pub mod multiple_points;
pub mod poly;
pub mod standard_basis;

pub use error::{Error, Result};
