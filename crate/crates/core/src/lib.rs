//! Numerical toolkit for decreasing rearrangements, sharp maximal functions, Lorentz–Zygmund
//! norms, moduli of smoothness and general monotone Fourier series, with a harness that checks
//! sharp inequalities between them on grids and closed-form profiles.

// `!(x > 0.0)` guards are written to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gmfourier;
pub mod grid;
pub mod harness;
pub mod maximal;
pub mod norms;
pub mod quad;
pub mod radial;
pub mod rearrange;
pub mod smoothness;

pub use error::{Error, Result};
pub use grid::{make_grid_function, GridFunction, PeriodicGridFunction};
pub use radial::{radial_to_grid, PowerLogTerm, RadialProfile};
pub use rearrange::{distribution, double_star, rearrange_exact, rearrange_radial, ClosedForm, Rearranged, RearrangementProfile};
