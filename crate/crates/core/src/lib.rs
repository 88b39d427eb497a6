//! Bi-vincular permutation patterns.
//!
//! A bi-vincular pattern `(sigma, X, Y)` constrains both the positions and
//! the values of an occurrence of the classical pattern `sigma`: for `x` in
//! `X` the occurrence uses adjacent positions `x` and `x + 1` (with `0` and
//! `k + 1` standing for the left and right boundaries), and for `y` in `Y`
//! it uses adjacent values `y` and `y + 1` (with `0` and `k + 1` standing for
//! the bottom and top).

pub mod arith;
pub mod bijections;
pub mod closed_forms;
pub mod enumeration;
pub mod oeis;
pub mod pattern;
pub mod perm;
pub mod report;

pub use closed_forms::{eval_closed_form, FormulaId};
pub use enumeration::{avoidance_sequence, distribution, wilf_classify, AvoidanceSequence, ClassificationReport};
pub use pattern::{BiVincularPattern, BoundarySet, Occurrence, PatternError};
pub use perm::{Permutation, PermError, Symmetry};
