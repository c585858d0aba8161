//! Comprehension schemes on finite instances: categories, set-valued
//! diagrams, finite sets and finitely-supported multicategories, together with
//! the comprehensive factorisation, coverings and Galois invariants they induce.

pub mod cat_scheme;
pub mod category;
pub mod census;
pub mod colimit;
pub mod comma;
pub mod diagram;
pub mod error;
pub mod functor;
pub mod galois;
pub mod group;
pub mod multicat;
pub mod samples;
pub mod scheme;
pub mod set_scheme;
pub mod unionfind;
pub mod zoo;

pub use category::{Cat, CategoryBuilder, FinCategory, MorId, ObjId};
pub use diagram::{NatTrans, SetDiagram, Variance};
pub use error::{Error, Result, DEFAULT_BUDGET};
pub use functor::Functor;
