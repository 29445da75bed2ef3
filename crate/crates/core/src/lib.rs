//! Integer-matrix algebra, the unimodular-extension problem, and property-P
//! checks for Morse germs along spheres.

pub mod barannikov;
pub mod generate;
pub mod germfile;
pub mod homology;
pub mod intmat;
pub mod morse;
pub mod omega;
pub mod report;

pub use intmat::{IntMatrix, MatrixError};
pub use morse::{GaugeElement, GermComplex, Label, PropertyPVerdict, PropertyStatus};
pub use omega::{OmegaInstance, OmegaVerdict};
