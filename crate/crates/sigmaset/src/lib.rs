//! Sets with signed membership and an annihilating fusion operation.
//!
//! A σ-set holds atoms that are either plain (`x`) or anti (`x*`); a base
//! symbol never carries both polarities at once, because opposite atoms
//! cancel. Fusion combines two σ-sets by discharging every such
//! plain/anti pair across them and unioning what survives. The operation
//! is commutative with identity `{}` and annihilates mirror images, but
//! it is not associative, which is what makes the rest of this crate
//! interesting:
//!
//! - [`assoc`] evaluates fusion chains, measures how far a triple is
//!   from associating, and decides local associativity of all six
//!   orderings from three residues.
//! - [`group`] checks whether a family of σ-sets forms a group under
//!   fusion and solves one-unknown fusion equations.
//! - [`lang`] parses and evaluates a small statement language over these
//!   operations, suitable for scripts and a REPL.
//! - [`oracle`] enumerates every σ-set over a small symbol universe and
//!   recomputes fusion by an independent route, for cross-checking.
//!
//! ```
//! use sigmaset::SigmaSet;
//!
//! let x: SigmaSet = "{1, 2}".parse().unwrap();
//! let y: SigmaSet = "{1*, 2*}".parse().unwrap();
//! assert!(x.fuse(&y).is_empty());
//! assert_eq!(x.fuse(&y.fuse(&x)), x);
//! ```

pub mod assoc;
pub mod atom;
pub mod group;
pub mod lang;
pub mod oracle;
pub mod set;

pub use assoc::{
    eval_chain, is_assoc_order, is_locally_associative, triad_system, EmptyChain, FusionChain,
    TriadOrder, TriadReport,
};
pub use atom::{Atom, InvalidSymbol, Polarity};
pub use group::{
    brute_force_solve, check_group, solve_fusion_equation, EmptyFamily, GroupContext,
    GroupDefect, SolveInfeasible, SolveResult, SolveStatus,
};
pub use oracle::{enumerate_sigma_sets, reference_fuse, Universe, UniverseError};
pub use set::{is_antielement_free_family, ParseSetError, SigmaSet};
