//! Desk-scale toolkit for coarse geometry and paradoxical decompositions:
//! finite windows into coarse spaces, expansion and Følner probes, Hall
//! harem matchings by feasible flow, periodic-point elimination into
//! degree-regular forests, exact free-group combinatorics, embeddings of
//! F(a, b) into bounded-displacement permutation groups, lamplighter
//! actions, and the transfer of paradoxical decompositions across group
//! models by piecewise-translation algebra.
//!
//! Everything is exact: counts are integers, ratios are rationals, and
//! every randomized routine takes an explicit seed. Windows are honest
//! truncations — reports carry `certified` markers instead of claims
//! about the infinite spaces they cut from.
//!
//! The `examples/` directory is the front door, one runnable example per
//! capability:
//!
//! ```text
//! cargo run --example window_gallery      # the spaces and their windows
//! cargo run --example folner_line        # Følner witnesses on Z
//! cargo run --example tree_isoperimetry  # sampled expansion on the 4-regular tree
//! cargo run --example forest_pipeline    # matching → rewiring → forest certificate
//! cargo run --example perm_modules      # per-word permutation modules
//! cargo run --example embed_wobbling     # F(a,b) inside the wobbling group of Z
//! cargo run --example lamplighter_orbits # wreath-product action on Z
//! cargo run --example paradox_transfer   # paradoxical decomposition transfer
//! cargo run --example asdim_probe       # component growth vs. confinement
//! cargo run --example local_finiteness  # order certificates for swap systems
//! ```
//!
//! A thin `cptk` binary exposes the same pipelines as subcommands with
//! JSON and DOT output; see the README.

pub mod cli;
pub mod coarse;
pub mod dot;
pub mod embed;
pub mod error;
pub mod flow;
pub mod forest;
pub mod free_group;
pub mod harem;
pub mod paradox;
pub mod suite;

pub use coarse::{make_window, CoarseWindow, EntourageRel, SearchBudget, SpaceSpec};
pub use error::{Error, Result};
pub use forest::{eliminate_periodic, periodic_points, tree_isoperimetry_check, verify_forest};
pub use free_group::{enumerate_ball, standard_paradox, Classifier, Letter, ReducedWord};
pub use harem::{hall_check_small, harem_matching, verify_harem, HallScope, HaremFunction};
pub use paradox::{
    compose_piecewise, lift_quotient, transfer_paradox, verify_paradoxical, GroupModel,
    ModelElement, ParadoxicalDecomposition, PiecewiseTranslation, PsiMap,
};
