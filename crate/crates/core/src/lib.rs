//! Combinatorics of tangent words: binary cutting-sequence codings of
//! smooth increasing curves, the balanced and analytic subfamilies, their
//! bispecial structure and counting formulas, and lattice-geometry
//! generators for all of them.

pub mod automata;
pub mod counting;
pub mod derivation;
pub mod geometry;
pub mod lang;
pub mod word;

pub use derivation::{is_analytic_tangent, is_balanced, is_tangent};
pub use lang::{Language, LanguageLab};
pub use word::Word;
