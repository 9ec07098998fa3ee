//! Certified enclosures of real quantities: dyadic floats, intervals, and
//! the named constants of the verification pipeline.

pub mod consts;
pub mod dyadic;
pub mod interval;

pub use consts::{CertifiedConstant, Ctx, Ladder};
pub use dyadic::{Dyadic, Round};
pub use interval::{log2_interval, Interval, Position};
