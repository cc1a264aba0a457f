//! Local computer algebra for polynomial germs: standard bases in local
//! orders, ideal quotients and saturation, relative polar curves, and the
//! Milnor-fiber rank computations built on top of them.

pub mod cli;
pub mod cohomology;
pub mod engine;
pub mod gb;
pub mod ideal;
pub mod order;
pub mod parse;
pub mod polar;
pub mod ring;

pub use engine::{Engine, LocalOrder};
pub use gb::{Budget, GbError, IdealPresentation, Length, LocalDim, StandardBasis};
pub use order::MonomialOrder;
pub use parse::{parse_poly, ParseError};
pub use ring::{Monomial, Polynomial, Rational, Ring, RingError};
