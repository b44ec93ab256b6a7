//! Slide-move complexes over a fixed surface: bounded balls of the move
//! graph, their classified faces, regular pants decompositions of region
//! moves, and disk certificates for closed move loops.

mod cert;
mod region;

pub use cert::{
    certificate_h1, check_certificate, CertCheck, CertFace, Certificate, Gluing, H1Report,
    KeyEdge,
};
pub use region::{
    enumerate_regular_pants, minimal_resolution, ContextCopy, PantsBoundary, PantsDecomposition,
    ResolutionPath,
};
