//! Ordinal-valued length for partial well-orders and finitely generated
//! modules.
//!
//! The crate is organized bottom-up:
//!
//! - [`ordinal`]: Cantor-normal-form arithmetic below `ω^ω`, including the
//!   natural (shuffle) sum and its two alternative constructions.
//! - [`pwo`]: foundation ranks on finite posets and a small algebra of
//!   well-partial-order expressions closed under sum and product.
//! - [`euclid`]: exact arithmetic and Smith normal form over `Z`, `Z_(p)` and
//!   `F_p[x]`.
//! - [`module`]: presented modules, their lengths, maps between them and
//!   brute-force enumeration of finite modules.
//! - [`homology`]: finite chain complexes, lower/upper length and the
//!   acyclicity criterion.
//! - [`verify`]: seeded randomized suites that check the theorems of the
//!   calculus against independent oracles.

pub mod error;
pub mod euclid;
pub mod homology;
pub mod io;
pub mod module;
pub mod ordinal;
pub mod pwo;
pub mod verify;

pub use error::{Error, Result};
pub use euclid::{RingContext, RingElement, RingMatrix, SmithDecomposition};
pub use homology::{AcyclicityReport, ModuleComplex};
pub use module::{CanonicalForm, FgModule, MapParts, ModuleMap};
pub use ordinal::Ordinal;
pub use pwo::{FinitePoset, PwoExpr, RankTable};
pub use verify::{Suite, VerifyReport};
