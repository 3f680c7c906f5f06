//! Exact constructions and exhaustive verification of vectorial bent and
//! plateaued functions over GF(2^n), `n <= 24`.
//!
//! Field elements are `u32` values in a polynomial basis; truth tables use the
//! same indexing, so field addition is XOR on table indices and every Walsh
//! spectrum is taken with respect to the trace character `(-1)^Tr(a·x)`.
//!
//! ```
//! use vbent::{FieldSpec, VectorialFunction};
//!
//! let field = FieldSpec::standard(4).unwrap();
//! let g = VectorialFunction::power_sum(&field, 2, &[5]).unwrap();
//! assert!(g.is_vectorial_bent().unwrap().holds);
//! ```

pub mod boolfun;
pub mod constructions;
pub mod error;
pub mod gf2n;
pub mod io;
pub mod linalg;
pub mod propp;
pub mod redpoly;
pub mod vectorial;
pub mod walsh;

pub use boolfun::{Anf, BooleanFunction};
pub use constructions::{
    ConstructionReport, FamilyOutcome, GoldParams, KasamiParams, NihoParams, SecondaryOutcome,
    USpec,
};
pub use error::{Error, Result};
pub use gf2n::{Element, FieldSpec, MAX_DEGREE};
pub use propp::{PairFailure, PropertyVerdict, SearchOptions, SearchOutcome};
pub use redpoly::{compose_traces, DefiningSet, ReducedPolynomial};
pub use vectorial::{max_bent_components_bound, Selector, VectorialFunction};
pub use walsh::{SpectrumClass, WalshSpectrum};
