//! Exact-arithmetic construction of the orthosymplectic Lie superalgebras
//! B(m,n) = osp(2m+1|2n) through their oscillator realization, assembly of the
//! per-weight-sector coboundary systems A_mu f = L_mu gb, and verification of
//! the triviality dichotomy for gamma-deformations: certificate families I/II/III,
//! dimension and rank formulas, and the B(0,1) complete-triviality solution.
//!
//! All arithmetic is exact: over Q for B(0,n), over Q(sqrt 2) for m >= 1.

pub mod algebra;
pub mod certificates;
pub mod cli_io;
pub mod cohomology;
pub mod deformation;
pub mod field;
pub mod linalg;
pub mod oscillator;

pub use field::{promote, Quad, Rational, Scalar};
pub use oscillator::{GbIndex, Modes, OscElement, OscGenerator, Sign};
