//! Combinatorial curves and handleslides on meshed surfaces.
//!
//! The crate models compact oriented surfaces with boundary as polygonal cell
//! complexes, simple closed curves as embedded edge-cycles, and handleslides
//! as explicit mesh operations. On top of that sit: recognition of compression
//! body data (attaching sets, meridians, good cuts, cut-systems), slide-move
//! graphs with classified loops, disk-tiling certificates that witness
//! null-homotopies of slide loops, and an invariant-extension procedure over
//! stabilization graphs of diagrams.
//!
//! Modules, roughly bottom-up:
//! - [`surface`]: meshes, curves, cutting, surgery, GF(2) homology.
//! - [`pi1`]: spines, free-group words, canonical conjugacy keys.
//! - [`chart`]: refinement towers that keep keys transportable.
//! - [`walk`]: ribbon neighborhoods and their boundary walks.
//! - [`moves`]: handleslides, slide enumeration, loop classification.
//! - [`compbody`]: meridians, good cuts, cut-systems.
//! - [`complexes`]: slide complexes, resolutions, certificates.
//! - [`extend`]: diagrams, stabilization, invariant extension.
//! - [`io`]: textual formats and graph exports.

pub mod chart;
pub mod compbody;
pub mod complexes;
pub mod exec;
pub mod extend;
pub mod fixtures;
pub mod gf2;
pub mod io;
pub mod label;
pub mod moves;
pub mod pi1;
pub mod surface;
pub mod walk;

use label::Label;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("non-orientable gluing at edge {0}")]
    NonOrientable(Label),
    #[error("closed component (face {0} lies in a component without boundary)")]
    ClosedComponent(Label),
    #[error("dangling edge {0}")]
    DanglingEdge(Label),
    #[error("invalid curve: {0}")]
    BadCurve(String),
    #[error("{0}")]
    Invalid(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid certificate: {0}")]
    BadCertificate(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
