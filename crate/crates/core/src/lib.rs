//! Exact verifiers for generation and surjectivity statements about the
//! Torelli group of a surface of genus `g >= 3`.

pub mod bcj;
pub mod certificate;
pub mod error;
pub mod exterior;
pub mod homology;
pub mod lantern;
pub mod lattice;
pub mod orbit;
pub mod params;
pub mod tau;
pub mod verify;

pub use certificate::{Certificate, Verdict};
pub use error::{Error, Result};
pub use exterior::{Triple, Wedge3};
pub use homology::{HClass, HEndo};
pub use orbit::Budget;
pub use params::{SurfaceKind, SurfaceParams};
pub use verify::{run, PropositionId, RunOptions, RunRequest};
