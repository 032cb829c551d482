//! Wielandt k-closures of finite permutation groups, with the constructions
//! and checks needed to test total k-closure of finite abelian groups.
//!
//! Points are 0-based in memory and 1-based in cycle notation; permutations
//! act on the right, so `a * b` applies `a` first.

pub mod abelian;
pub mod campaigns;
pub mod chain;
pub mod closure;
pub mod constructions;
pub mod error;
pub mod group;
pub mod lemmas;
pub mod perm;
pub mod report;

pub use abelian::{capital_n, invariant_factors, n_of, pi_part, primary_decomposition, AbelianSpec, InvariantFactors};
pub use closure::{
    abelian_sylow_subgroups, brute_force_closure, closedness, closure_product_check, closure_via_base_shortcut,
    in_k_closure, is_k_closed, k_closure, tuple_orbits, Limits, TupleOrbitIndex,
};
pub use constructions::{
    disjoint_cyclic_rep, enumerate_faithful_actions, mixed_witness, pgroup_witness, regular_rep, FaithfulAction,
    MixedWitness, WitnessRep,
};
pub use error::{Error, Result};
pub use group::{GroupFile, OrbitPartition, PermGroup};
pub use perm::{are_independent, parse_cycle_notation, Cycle, Permutation};
pub use report::{Check, VerificationReport};
