//! Exact orders of split semisimple groups over finite fields.
//!
//! The library evaluates the order of `H(F_q)` for any split semisimple
//! group `H` exactly, inverts an order back to every candidate
//! `(group, field)` pair, and realizes the abelian torsion-free group of
//! order coincidences, with reduction of any coincidence class to a word
//! in seven generator families. A catalog of transitive-action triples
//! of compact groups supplies the geometric side of the story.
//!
//! The accompanying book (`book/` in the repository, built with mdbook)
//! walks through the concepts; every code snippet there is compiled and
//! run as a doctest.
//!
//! ```
//! use ssorders::{PrimePowerField, SemisimpleGroup};
//!
//! let a1: SemisimpleGroup = "A1".parse()?;
//! let b2: SemisimpleGroup = "B2".parse()?;
//! let f9 = PrimePowerField::new(3u32, 2)?;
//! let f2 = PrimePowerField::new(2u32, 1)?;
//! assert_eq!(a1.order(&f9), b2.order(&f2)); // both 720
//! # Ok::<(), ssorders::Error>(())
//! ```

pub mod coincidence;
pub mod cyclotomic;
pub mod error;
pub mod factor;
pub mod geometry;
pub mod lie;
pub mod recovery;

pub use error::{Error, Result};
pub use lie::{DegreeMultiset, Family, PrimePowerField, SemisimpleGroup, SimpleType};
