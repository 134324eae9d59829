//! Fourier-side laboratory for the Chowla cosine problem.
//!
//! The crate works with finite symmetric sets `A = -A ⊂ Z \ {0}` and the
//! exponential sums `1̂_A(x) = Σ_{a∈A} e(ax)`, where `e(x) = exp(2πix)`.
//! For a set `B` of positive integers, `1̂_{B ∪ -B} = 2 Σ_{b∈B} cos(2πbx)`,
//! so every "cosine convention" value is half the corresponding
//! exponential-sum value. Reports always say which convention they use.
//!
//! Layout:
//! - [`setcore`]: exact set algebra (shifted intersections, AP partitions,
//!   additive energy, Sidon constructions).
//! - [`trigpoly`]: sparse trigonometric polynomials with exact Gaussian-integer
//!   or floating coefficients, norms and certified global minima.
//! - [`gridfn`]: functions sampled on a uniform grid of the circle, used for
//!   objects that are not trigonometric polynomials (`max(g, 0)`, `|Q|`, ...).
//! - [`verify`]: one checker per inequality, each producing a [`LemmaReport`].
//! - [`oracle`]: brute-force frontier for small `K(n)`, Sidon experiments and
//!   shift searches.

pub mod error;
pub mod grid;
pub mod gridfn;
pub mod instances;
pub mod oracle;
pub mod report;
pub mod setcore;
pub mod trigpoly;
pub mod verify;

pub use error::{Error, Result};
pub use gridfn::GridFn;
pub use report::{LemmaReport, SubCheck};
pub use setcore::{ApPartition, DerivedSets, IntSet, SymSet};
pub use trigpoly::{ExactPoly, FloatPoly, GaussInt, MinCertificate, Norms, TrigPoly};
