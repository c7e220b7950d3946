//! Improper affine fronts from Weierstrass data.
//!
//! A front is given by two meromorphic functions `F`, `G` on a punctured
//! Riemann surface. This crate builds the immersion, checks that it closes up
//! around every cycle, classifies its ends, measures total curvature, solves
//! the genus-one period problem and exports triangle meshes.

pub mod catalog;
pub mod elliptic;
pub mod ends;
pub mod error;
pub mod genus1;
pub mod grid;
pub mod io;
pub mod meromorphic;
pub mod mesh;
pub mod period;
pub mod poly;
pub mod quadrature;
pub mod rational;
pub mod series;
pub mod surface;

pub use elliptic::Lattice;
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use poly::{Polynomial, Root};
pub use meromorphic::{EllipticCombination, MeromorphicFunction};
pub use period::{check_period_condition, PeriodReport};
pub use rational::{Point, RationalFunction};
pub use surface::{Domain, DomainKind, PsiValue, Surface, WeierstrassData};
pub use ends::{classify_end, EndReport, EndType, OssermanLedger};
