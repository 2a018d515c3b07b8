//! Multimeasures with convex-body values on finite measurable spaces.
//!
//! A [`multimeasure::Multimeasure`] assigns a convex body to every atom and
//! is evaluated on an event by Minkowski-summing the atom bodies. On top of
//! that the crate provides
//!
//! * the multivalued Bartle-Dunford-Schwartz integral ([`integral`]),
//! * Radon-Nikodym derivatives of one multimeasure with respect to another,
//!   with certificates and the domination checks usd/usac/uss and their
//!   strong variants ([`rn`]),
//! * support-function embeddings and isometry checks ([`radstrom`]),
//! * JSON scenarios and the `mvmeasure` command line ([`scenario`], [`cli`]).
//!
//! ```
//! use mvmeasure::examples::make_interval_pair;
//! use mvmeasure::measure::{FiniteMeasurableSpace, SignedMeasure};
//! use mvmeasure::radstrom::DirectionSet;
//!
//! let space = FiniteMeasurableSpace::with_atoms(2).unwrap();
//! let mu = SignedMeasure::new(space.clone(), vec![1.0, 2.0]).unwrap();
//! let nu = SignedMeasure::new(space, vec![3.0, 1.0]).unwrap();
//! let pair = make_interval_pair(&mu, &nu).unwrap();
//! let cert = mvmeasure::rn::derive(&pair.m, &pair.n, &DirectionSet::axis(1).unwrap(), 1e-9).unwrap();
//! assert_eq!(cert.theta.values(), &[3.0, 0.5]);
//! ```

#[cfg(feature = "cli")]
pub mod cli;
pub mod convex;
pub mod error;
pub mod examples;
pub mod integral;
pub mod measure;
pub mod multimeasure;
pub mod radstrom;
pub mod rn;
pub mod scenario;
pub mod selftest;

pub use convex::{ConvexBody, Direction, EPS_GEOM};
pub use error::{Error, Result};
pub use measure::{Event, FiniteMeasurableSpace, MeasurableFunction, SignedMeasure};
pub use multimeasure::Multimeasure;
pub use radstrom::DirectionSet;
