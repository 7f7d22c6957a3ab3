//! # treedeform
//!
//! Exact-arithmetic algebra of decorated rooted trees.
//!
//! The library implements, over arbitrary-precision rationals:
//!
//! * multi-index combinatorics with a scaling (weighted gradings, componentwise
//!   binomials, multinomials),
//! * decorated rooted trees, planted trees, forests and their canonical forms,
//!   symmetry factors and the induced symmetry pairing,
//! * grafting products, their Taylor deformation, and the decoration-shift
//!   isomorphism `theta` intertwining the two,
//! * the Guin-Oudom construction turning a pre-Lie product into an associative
//!   product on forests,
//! * plugging and insertion products, their deformations, the root-merge map
//!   and its adjoint block splitting,
//! * the dual coproducts (unshuffle, Butcher-Connes-Kreimer style, plugging
//!   and insertion duals) with explicit polynomial budgets,
//! * coproducts and checks aimed at regularity structures: recentering,
//!   renormalisation, degree filters, antipodes, Birkhoff-type twisting and
//!   cointeraction identities.
//!
//! ## Quick start
//!
//! ```rust
//! use treedeform::prelude::*;
//!
//! // one spatial dimension collapsed with time: multi-indices of length 1
//! let leaf = DecoratedTree::leaf(MultiIndex::new(vec![2]));
//! assert_eq!(symmetry_factor_tree(&leaf).to_string(), "2");
//! ```

pub mod applications;
pub mod coproducts;
pub mod grafting;
pub mod guin_oudom;
pub mod index;
pub mod lincomb;
pub mod plugging;
pub mod session;
pub mod suites;
pub mod text;
pub mod tree;

pub mod prelude {
    pub use crate::coproducts::Budget;
    pub use crate::index::{IndexOffset, MultiIndex, Scaling, Q};
    pub use crate::lincomb::LinComb;
    pub use crate::session::SessionConfig;
    pub use crate::tree::{
        symmetry_factor_tree, DecoratedTree, DistinguishedForest, EdgeKind, EdgeLabel, Forest,
        Generator, NodeLabel, PlantedForest, PlantedTree,
    };
}
