//! Exact computation of the twisted equivariant K-theory ring of a compact,
//! simple, simply connected Lie group acting on itself by conjugation.
//!
//! The ring is a free abelian group on the regular orbits of the level-`k`
//! affine Weyl group, detected by antisymmetrized characters of a finite
//! subgroup `F` of the maximal torus. Its product is the Verlinde fusion
//! product, here obtained exactly by diagonalizing over cyclotomic integers.

// Row operations read one row while writing another.
#![allow(clippy::needless_range_loop)]

pub mod affine;
pub mod cyclotomic;
pub mod detect;
pub mod error;
pub mod fusion;
pub mod lattice;
pub mod repth;
pub mod rootdata;
pub mod torsion;

pub use affine::{AffineWeylElement, Canonical, LevelForm, OrbitRep};
pub use detect::{AntisymmetricClass, DetectionMatrix, RFElement};
pub use error::{Error, Result};
pub use fusion::{Coform, FusionRing, FusionTable, KClass};
pub use repth::{HighestWeight, WeightSystem};
pub use rootdata::{Coweight, Family, LieType, RootDatum, Weight, WeylElement};
pub use torsion::{FCharacter, FElement, FiniteGroupF};
