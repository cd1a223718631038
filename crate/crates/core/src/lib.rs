//! Exact tensor product decompositions for `GL(n)`, `Sp(2n)`, `SO(2n+1)` and
//! `SO(2n)`.
//!
//! In the stable range the classical-group products are computed by a
//! recursion over Pieri rules ([`engine::tensor_stable_range`]); everywhere
//! else, and as an independent check, a Freudenthal/Klimyk character
//! computation is used ([`oracle::tensor_oracle`]).

pub mod decomposition;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod partition;
pub mod pieri;
pub mod rootsystem;

pub use decomposition::Decomposition;
pub use error::{Error, Result};
pub use partition::Partition;
pub use rootsystem::{DominantWeight, Family, FamilyKind};
