//! Exact computation in the Bieri–Stallings groups `K = B₂` and `S = B₃`:
//! normal forms, Cayley complexes, homotopy certificates that avoid a
//! forbidden region, van Kampen diagrams with s-bands, and the rewriting
//! steps that contract loops far from the identity.

pub mod ball;
pub mod certificate;
pub mod complex;
pub mod egen;
pub mod error;
pub mod f2p;
pub mod gelement;
pub mod homotopy;
pub mod identities;
pub mod letter;
mod packed;
pub mod path;
pub mod pipeline;
pub mod region;
pub mod selement;
pub mod vankampen;
pub mod word;

pub use ball::{distance_gamma1, sphere_complement_components, Ball, ComponentReport, DEFAULT_BUDGET};
pub use certificate::{verify, Certificate, Homotopy, Move, Verification};
pub use complex::{neighbors, CellRef, ComplexKind, ComplexSpec, Relator, Vertex};
pub use egen::{e_expand, is_k_path, k_pair};
pub use error::{Error, Result};
pub use f2p::{f2p_exhaustive, f2p_exhaustive_at, f2p_rewrite, Case, ExhaustiveReport, F2pResult};
pub use gelement::{exponent_sum, in_kernel, GElement};
pub use letter::{Base, EGen, Factor, Generator, Label, Letter, Sign};
pub use path::EdgePath;
pub use pipeline::{run_ends_experiment, run_main_pipeline, run_reduce_demo, PipelineReport, ReduceReport};
pub use region::ForbiddenRegion;
pub use selement::{s_equal, s_invert, s_multiply, s_normalize, SElement, SWord};
pub use vankampen::{build_diagram, extract_bands, BandDecomposition, ConjugateExpression, ConjugateFactor, Diagram};
pub use word::{reduce, Alphabet, FreeWord};
