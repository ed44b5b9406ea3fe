//! Exact and certified computation with asymptotic densities of subsets of ℕ.

pub mod abundant;
pub mod density;
pub mod diagonal;
pub mod metric;
pub mod nets;
pub mod rational;
pub mod setfun;
pub mod sets;

pub use density::{DensityError, DensityEstimate, Modulus};
pub use metric::{QuotientClass, Ternary};
pub use rational::Rational;
pub use sets::{BoolOp, DensitySet, PeriodicSet, SetError};
