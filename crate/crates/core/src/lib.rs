//! Discrete entanglement entropies of weighted hypergraphs.
//!
//! * [`hypergraph`]: weighted hypergraphs with a boundary colouring, exact
//!   min-cut entropies and entropy-preserving transformations.
//! * [`inequality`], [`parser`], [`library`]: linear entropy inequalities in
//!   term and Q-vector form and the built-in inequality library.
//! * [`contraction`]: proof by contraction on bit strings, with map
//!   verification, the decimal map encoding and a backtracking map search.
//! * [`states`]: quantum states assembled from GHZ, AME and Hadamard tensors,
//!   with exact subsystem entropies.
//! * [`catalog`]: named hypergraph realizations of extreme rays.
//! * [`io`]: JSON file formats.
//!
//! All entropy arithmetic is exact: weights and entropies are rationals, and
//! state amplitudes live in the Eisenstein integers.

pub mod bits;
pub mod catalog;
pub mod contraction;
pub mod error;
pub mod hypergraph;
pub mod inequality;
pub mod io;
pub mod library;
pub mod parser;
pub mod rational;
pub mod states;
pub mod subsystem;

pub use bits::BitString;
pub use catalog::{
    builtin_rays, find_ray, inequality_set, is_realization, saturated_facets, FacetStatus,
    RayEntry, Saturation,
};
pub use contraction::{
    decode_f10, describe_witness, encode_f10, indicator_k, search_contraction,
    spans_full_polytope, verify_contraction, weighted_indicator, ContractionMap,
    ContractionReport, RankReport, RankStatus, SearchOptions, SearchOutcome, VerifyOptions,
    Witness,
};
pub use error::{Error, Result};
pub use hypergraph::{
    cut_weight, entropy_vector, expand_to_unit_weights, min_cut_entropy, universal_reduction,
    Cut, EntropyVector, Hyperedge, Hypergraph, HypergraphBuilder, MinCutOptions, ReductionOptions,
};
pub use inequality::{Inequality, OccurrenceVectors, QVector, Term};
pub use library::{builtin_library, find_builtin, LibraryEntry, TableRow};
pub use parser::parse_inequality;
pub use rational::Rational;
pub use states::{
    build_state, ghz_tensor, reduced_entropy, verify_state_entropies, Eisenstein, PartyState,
    StateOptions, StateReport, SubsystemEntropy, Tensor,
};
pub use subsystem::Subsystem;
