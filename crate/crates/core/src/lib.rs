//! Characters of simple modules for simple, simply-connected algebraic groups
//! in characteristic `p`, computed from characters of tilting modules.
//!
//! The tilting characters needed are those with highest weights
//! `(2(p-1) rho + w0 lambda) + p (p^N - 1) rho` for restricted `lambda`, where
//! `N` is the stability exponent from [`pipeline::compute_n`]. From them the
//! [`pipeline`] module extracts baby Verma multiplicities of the projective
//! covers of the simple `G_1T`-modules, converts those into composition
//! multiplicities, and solves for the simple characters.
//!
//! Supporting modules:
//!
//! * [`rootsystem`]: Cartan data, weights, Weyl group actions, dominance.
//! * [`charring`]: sparse exact arithmetic in `Z[X(T)]`.
//! * [`weylchar`]: Weyl, Steinberg and baby Verma characters.
//! * [`tiltingdata`]: tilting-character datasets and the SL2 generator.
//! * [`oracle`]: brute-force SL2 ground truth, independent of the pipeline.
//! * [`verify`]: the pipeline-versus-oracle comparison suite.

pub mod charring;
pub mod error;
pub mod oracle;
pub mod pipeline;
pub mod rootsystem;
pub mod tiltingdata;
pub mod verify;
pub mod weylchar;

pub use charring::{Character, Coeff, TermRecord};
pub use error::{Error, Result};
pub use pipeline::{DecompositionTable, PipelineConfig, SimpleCharacterTable};
pub use rootsystem::{CartanType, RootSystem, Weight};
pub use tiltingdata::TiltingDataset;
pub use weylchar::WeylCharacterCache;
