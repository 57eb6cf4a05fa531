//! Exact, finite-scale computations for measure-preserving actions of countable groups.
//!
//! Everything is a finite object with rational weights: group elements in normal form,
//! finite actions by permutations, measures on configuration windows `p^W`, cochains
//! into finite groups, directed forests on windows. The library evaluates the finite
//! formulas behind cocycle theory, treeings, monotone couplings and existential
//! closedness, and searches for witnesses with certified minima.

pub mod action;
pub mod cli;
pub mod coinduction;
pub mod cocycle;
pub mod coupling;
pub mod ec;
pub mod error;
pub mod finite_group;
pub mod group;
pub mod io;
pub mod perm;
pub mod rational;
pub mod rng;
pub mod search;
pub mod tree;

pub use error::{Error, Result};
pub use rational::Q;
