//! Graded identities of matrix algebras through labeled digraphs.
//!
//! The crate models the G-grading that a finite group G of order k induces
//! on the k-by-k complex matrices via its regular representation. Strongly
//! multilinear monomials in graded variables become edge-labeled digraphs
//! on the group elements; reorderings that preserve all prefix products of
//! the weight word are exactly the alternative Eulerian paths of that
//! graph. On top of this sit two independent decision procedures for
//! graded identities, a parity check behind the standard-identity theorem,
//! and exact plus asymptotic counting of the graded codimension sequence.
//!
//! ```
//! use grident_core::identity::is_identity_classes;
//! use grident_core::paths::ipp_permutations;
//! use grident_core::{Caps, FiniteGroup, GradedPolynomial, Monomial};
//!
//! let c2 = FiniteGroup::cyclic(2)?;
//! let m = Monomial::parse("x[1,s] x[2,e] x[3,s] x[4,s]", &c2)?;
//! let census = ipp_permutations(&m, &Caps::default())?;
//! assert_eq!((census.total, census.even, census.odd), (4, 2, 2));
//!
//! let f = GradedPolynomial::parse("x[1,e]x[2,e] - x[2,e]x[1,e]", &c2)?;
//! assert!(is_identity_classes(&f).is_identity);
//! # Ok::<(), grident_core::Error>(())
//! ```
//!
//! Module map:
//! - [`group`]: finite groups as validated Cayley tables, named
//!   constructors, the regular representation.
//! - [`monomial`]: strongly multilinear monomials and rational
//!   combinations of them, with a text grammar.
//! - [`graph`]: the monomial-to-digraph construction, exact graph
//!   equality, monomial equivalence, DOT export.
//! - [`paths`]: Eulerian-path enumeration, prefix-product-preserving
//!   permutations, parity statistics, decomposition into segment swaps.
//! - [`identity`]: identity tests (equivalence-class sums and the
//!   symbolic crossed-product oracle), generator sets, the standard
//!   polynomial, monomial identities of elementary gradings.
//! - [`codim`]: exact codimension counts by enumeration, closed formulas,
//!   and recursions, over arbitrary-precision integers.
//! - [`asym`]: asymptotic formulas evaluated in log space at fixed
//!   precision, compared against the exact counts.

pub mod asym;
pub mod codim;
pub mod error;
pub mod graph;
pub mod group;
pub mod identity;
pub mod monomial;
pub mod paths;

pub use error::{Error, Result};
pub use graph::MonomialGraph;
pub use group::{FiniteGroup, GroupElement};
pub use monomial::{GradedPolynomial, Monomial};
pub use paths::Permutation;

/// Resource caps shared by the expensive operations.
///
/// Everything here guards an exponential computation; the defaults keep all
/// operations desk-scale. All caps can be raised by callers that know what
/// they are paying for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of edge assignments `(k^2)^n` a codimension
    /// enumeration may visit, and of weight words an exhaustive sweep may
    /// touch.
    pub enum_budget: u128,
    /// Maximum number of symbolic variables (distinct-variable count times
    /// group order) the symbolic oracle may allocate.
    pub oracle_vars: usize,
    /// Maximum monomial degree for full Eulerian-path enumeration.
    pub path_degree: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enum_budget: 50_000_000,
            oracle_vars: 40,
            path_degree: 12,
        }
    }
}
