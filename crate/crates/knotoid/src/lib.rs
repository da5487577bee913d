//! Exact computation on knotoid and flat knotoid diagrams.
//!
//! A flat knotoid diagram is an open-ended curve immersed in the sphere with
//! transversal double points; knotoid and knot diagrams additionally carry
//! over/under data. This crate provides:
//!
//! * text codes and parsers for all three kinds of diagram ([`codec`]),
//! * Reidemeister rewrites on codes ([`moves`]),
//! * spherical embedding reconstruction, face tracing, dual graphs and exact
//!   diagram height via shortest dual paths ([`planar`]),
//! * classification of a diagram relative to a fixed minimal shortcut:
//!   crossing types, border edges and chains ([`gamma`]),
//! * primality tests and connected-sum style decomposition ([`primality`]),
//! * the affine index polynomial and the derived lower bounds ([`affine`]),
//! * exhaustive enumeration and verification campaigns ([`enumerate`]),
//! * bridge analysis of closed knot diagrams ([`bridge`]).
//!
//! All values are immutable after construction and all operations are pure,
//! so everything can be shared freely across threads. With the `parallel`
//! feature (on by default) the verification campaigns fan out over a rayon
//! thread pool; without it they run sequentially with identical results.
//!
//! ```
//! use knotoid::{gamma, planar, parse_flat_code};
//!
//! let clasp = parse_flat_code("flatknotoid 1- 2+ 1- 2+")?;
//! let (h, shortcut) = planar::height(&clasp);
//! assert_eq!(h, 1);
//!
//! let report = gamma::classify(&clasp, &shortcut).unwrap();
//! assert_eq!(report.counts, [0, 0, 2, 0, 0]);
//! assert!(gamma::check_counting_identity(&report));
//! # Ok::<(), knotoid::CodeError>(())
//! ```

pub mod affine;
pub mod bridge;
pub mod codec;
pub mod enumerate;
mod exec;
pub mod gamma;
pub mod moves;
pub mod planar;
pub mod primality;

pub use codec::{
    parse_flat_code, parse_knot_code, parse_knotoid_code, CodeError, CodeErrorKind, CrossingId,
    FlatDiagram, KnotDiagram, KnotoidDiagram, Pass, Sign, Visit,
};
pub use planar::{ArcId, FaceId, Shortcut};

/// Run `f` on a worker pool of the given size; `0` uses the library default.
/// Without the `parallel` feature this just calls `f`.
pub fn run_with_threads<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if jobs > 0 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
                return pool.install(f);
            }
        }
        f()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        f()
    }
}
