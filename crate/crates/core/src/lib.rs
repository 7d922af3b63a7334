//! Orthogonal polynomial systems generated by a governing sequence and its
//! derivation operator, with the associated oscillator algebra and
//! orthogonality measure.

pub mod alpha;
pub mod derivation;
pub mod error;
pub mod measure;
pub mod ode;
pub mod oscillator;
pub mod polynomial;
pub mod quadrature;
pub mod rational;
pub mod reduction;
pub mod sequence;
pub mod system;

pub use derivation::{epsilons_from_sequence, DerivationOperator, Order};
pub use error::{Error, Result};
pub use measure::MeasureSpec;
pub use oscillator::{build_operators, OperatorSet};
pub use polynomial::Polynomial;
pub use rational::{Surd, Q};
pub use reduction::{classify_reduced, decompose_b1bar};
pub use sequence::{
    bracket, gamma_coeffs, recurrence_coeffs, seq_classical, seq_family, seq_generalized_hermite,
    seq_hermite, seq_order2, seq_order3, validate, BracketTable, GammaCoefficients,
    GoverningSequence, RecurrenceCoefficients, ValidationReport,
};
pub use system::{NormalizedPolynomial, PolynomialSystem, WeightParameters};
