//! Zero-suppressed decision diagrams.
//!
//! An [`Engine`] owns a hash-consed node arena over a fixed universe of
//! variables `1..=n`, ordered by index. A [`FamilyRef`] is a handle to the
//! canonical diagram of a family of subsets of that universe, so equality of
//! handles is equality of families.
//!
//! ```
//! use zdd::Engine;
//!
//! let mut eng = Engine::new(4);
//! let mut singles = eng.empty();
//! for x in 1..=4 {
//!     let ex = eng.elementary(x).unwrap();
//!     singles = eng.union(singles, ex).unwrap();
//! }
//! let pairs = eng.choose(singles, 2).unwrap();
//! assert_eq!(eng.count_sets(pairs).unwrap(), 6u32.into());
//! assert_eq!(eng.node_count(pairs).unwrap(), 8);
//! ```

mod algebra;
mod dot;
mod engine;
mod error;
mod node;
mod query;
mod rename;

pub use engine::{Engine, EngineId, FamilyRef};
pub use error::{Result, ZddError};
pub use node::{NodeRef, Var};
pub use query::Sets;
