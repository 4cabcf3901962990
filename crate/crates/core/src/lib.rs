//! Design and screening of DNA codewords that resist folding back onto
//! themselves.
//!
//! * [`seq`]: alphabet, complements, distances, shift-match counts, binary images
//! * [`folding`]: minimum free energy tables, traceback, linear energy models
//! * [`enumeration`]: exact counts of shift-constrained words
//! * [`codegen`]: DNA codes from cyclic simplex codes and their verification
//!
//! Batch work goes through [`exec::Strategy`]; with the `parallel` feature
//! (on by default) it is spread over a rayon pool.

pub mod bits;
pub mod codegen;
pub mod enumeration;
pub mod error;
pub mod exec;
pub mod folding;
pub mod io;
pub mod seq;
pub mod series;

pub use bits::BitString;
pub use codegen::{build_dna_code, simplex_code, verify_code, CodeBounds, DnaCode, SimplexCode};
pub use error::{Error, Result};
pub use exec::Strategy;
pub use folding::{EnergyParams, EnergyTable, LinearEnergyModel, SecondaryStructure};
pub use seq::{Base, BinaryImage, DnaSequence, ShiftProfile};
