//! Exact computational Lie theory for equigeodesic problems on compact
//! homogeneous spaces.

pub mod error;
pub mod flags;
pub mod chevalley;
pub mod linalg;
pub mod criteria;
pub mod pairfile;
pub mod pairs;
pub mod rootsys;
pub mod survey;

pub use error::{Error, Result};
pub use linalg::Q;
