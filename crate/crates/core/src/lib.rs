//! Exact probability engine for observers whose number and location depend on
//! the outcome of a random experiment.
//!
//! An [`ObjectiveSpace`] describes the experiment and which cells are occupied
//! by observers; the [`ExtendedSpace`] adds the observer's own location. The
//! crate builds the Thirder and Halfer measures, checks the principles that
//! characterise them, solves for all measures satisfying a set of principles,
//! and estimates large models by Monte Carlo.

pub mod cellset;
pub mod error;
pub mod expr;
pub mod extended;
pub mod feasibility;
pub mod measures;
pub mod model_file;
pub mod montecarlo;
pub mod observation;
pub mod principles;
pub mod rational;
pub mod scenarios;
pub mod space;

pub use cellset::CellSet;
pub use error::{Error, Result};
pub use extended::{Event, ExtendedSpace, Location, Measure};
pub use feasibility::{compile, solve, ConstraintSystem, Solution};
pub use measures::{build_halfer, build_thirder, MeasureKind};
pub use principles::{Principle, PrincipleReport};
pub use rational::Rational;
pub use scenarios::Scenario;
pub use space::{Atom, ObjectiveSpace};
