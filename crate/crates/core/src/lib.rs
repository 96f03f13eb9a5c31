//! Crossing-event formulas for critical two-dimensional percolation.
//!
//! The crate evaluates the four classical crossing functions (horizontal
//! crossing, horizontal-vertical crossing, expected number of crossing
//! clusters, and the bulk surrounding probability) both in the upper half
//! plane and in their triangle-domain forms, and ships the machinery those
//! need:
//!
//! * [`specfun`]: gamma, digamma, generalized hypergeometric series and the
//!   summation/transformation identities used along the way;
//! * [`elliptic`]: the equianharmonic Weierstrass functions (`g2 = 0`, `g3 = 1`);
//! * [`conformal`]: the Schwarz map of the equilateral triangle onto the
//!   upper half plane and its inverse;
//! * [`crossing`]: the crossing functions, their identities and ODE checks;
//! * [`psymbol`]: exact Riemann P-symbol tableaux and branched pullbacks;
//! * [`percsim`]: a triangular-lattice Monte Carlo simulator used as an
//!   independent empirical check;
//! * [`verify`]: the invariant suites behind `crossing verify`.

pub mod conformal;
pub mod crossing;
pub mod elliptic;
pub mod error;
pub mod numdiff;
pub mod percsim;
pub mod psymbol;
pub mod specfun;
pub mod verify;

/// Double-precision complex scalar used throughout the numerical core.
pub type Complex = num_complex::Complex64;

pub use conformal::{IsoscelesDomain, TriangleDomain};
pub use crossing::{CrossingFunction, CrossingPoint};
pub use elliptic::EquianharmonicContext;
pub use error::{Error, Result};
pub use percsim::{CrossingEstimate, Geometry, LatticeKind, LatticeRun, Observable};
pub use psymbol::{BranchMap, PSymbol};
pub use specfun::HyperParams;

pub(crate) const SQRT3: f64 = 1.732_050_807_568_877_2;
