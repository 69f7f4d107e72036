//! Generalized Vicsek fractals and random walks on them.
//!
//! * [`tree`]: graphs, validated trees, hop distances, Wiener index.
//! * [`fractal`]: the Vicsek operation and fractal generation.
//! * [`closed_form`]: exact Wiener index / mean first-passage time formulas
//!   and scaling exponents.
//! * [`walk`]: exact hitting-time oracles and seeded Monte Carlo.
//! * [`spectral`]: Laplacian spectrum, pseudoinverse, spectral decimation.
//! * [`cli`]: the command implementations behind the `vicsek` binary.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod cli;
pub mod closed_form;
pub mod enumerate;
pub mod error;
pub mod fractal;
pub mod spectral;
pub mod tree;
pub mod walk;

pub use error::{Error, Result};
pub use fractal::{generate, star_seed, vicsek_step, FractalGraph};
pub use tree::{validate_tree, Graph, SeedTree, VertexId};
