//! Exactly solvable PT-symmetric regularization of the trigonometric
//! Poschl-Teller well.
//!
//! The potential `A(A-1)/cos^2 x + B(B-1)/sin^2 x` is taken along the complex
//! line `x = t - i eps`, which avoids its poles at `x = 0, pi/2`. Four sign
//! choices `(sigma, tau)` of the endpoint exponents give four families of
//! polynomial eigenstates with energies `(sigma beta + tau alpha + 2n + 1)^2`.
//!
//! * [`specfun`]: complex Gamma, `2F1`, Jacobi polynomials;
//! * [`model`]: couplings, potential, contour;
//! * [`exact`]: closed-form spectra, wavefunctions, connection factors;
//! * [`shoot`]: independent shooting/matching eigenvalue oracle;
//! * [`paradox`]: the ground-state curves `E(B)` for the symmetric well;
//! * [`table`]: the CSV/JSON tables emitted by the command-line tool.

pub mod error;
pub mod exact;
pub mod model;
pub mod paradox;
pub mod shoot;
pub mod specfun;
pub mod table;

pub use error::{Error, Result};
pub use exact::{BoundStateSolution, Exponents, GeneralSolutionSpec, ThresholdCoefficients};
pub use model::{Branch, Contour, CouplingPolicy, Sign, WellParameters};
pub use paradox::{CurvePoint, FigureData};
pub use shoot::{EigenvalueSearch, IntegrationGrid, ShotResult, Side};
pub use table::{Column, Table, TableFormat};
