//! Promise CSPs over the Boolean domain: templates, polymorphism checks,
//! gadget reductions, the basic SDP relaxation with its rounding schemes,
//! and integrality gap constructions.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod format;
pub mod gaps;
pub mod generate;
pub mod instance;
pub mod linalg;
pub mod lp;
pub mod minion;
pub mod poly;
pub mod predicate;
pub mod reduce;
pub mod round;
pub mod sdp;

pub use error::{Error, Result};
