//! Exact descent algebras of finite Coxeter groups of type D, with type A
//! as a cross-check.
//!
//! The crate enumerates the group as signed permutations, computes Solomon's
//! structure constants by two independent routes, relabels the basis by
//! compositions, and verifies the combinatorial descriptions of the radical
//! (over ℚ and 𝔽_p) and of the one-dimensional irreducible representations.

pub mod algebra;
pub mod characters;
pub mod coxeter;
pub mod error;
pub mod labels;
pub mod linear;
pub mod radical;
pub mod typea;
pub mod verify;

pub use algebra::{AlgebraElement, Prime, ScalarMode, StructureTable};
pub use coxeter::{CoxeterSystem, Generator, GeneratorSet, Group, GroupType, ResourceBound, SignedPermutation};
pub use error::{Error, Result};
pub use labels::{Composition, Region};
