pub mod arith;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod field;
pub mod moebius;
pub mod poly;
pub mod sequence;
pub mod text;
pub mod transforms;

pub use error::{Error, Result};
pub use field::{FEl, Field};
pub use poly::Poly;
