//! Exact symbolic algebra for the one-dimensional non-commutative phase
//! space `[x, p] = i*hbar`.
//!
//! * [`poly`]: normal-ordered polynomials, products, commutators, formal
//!   derivatives, classical limit and Poisson bracket;
//! * [`parser`] and [`render`]: text front end and text/JSON output;
//! * [`evolution`]: Heisenberg series and the Leibniz time derivative;
//! * [`oracle`]: truncated Fock-space matrices as an independent numeric check;
//! * [`verifier`]: replays the derivation of the evolution laws and reports.

pub mod cli;
pub mod error;
pub mod evolution;
pub mod oracle;
pub mod parser;
pub mod poly;
pub mod random;
pub mod render;
pub mod scalar;
pub mod verifier;

pub use error::AlgebraError;
pub use evolution::{heisenberg_series, leibniz_derivative, EvolutionSeries};
pub use parser::{lower, parse, parse_poly, ExprAst, ExprError};
pub use poly::{normal_order, Generator, NCPoly};
pub use render::{render, render_text, Format};
pub use scalar::{Coefficient, GaussianRational, ParamMonomial};
