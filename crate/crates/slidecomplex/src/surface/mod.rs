//! Surfaces as polygonal cell complexes, plus curves, cutting, surgery and
//! GF(2) homology.

mod curve;
mod cut;
mod homology;
mod mesh;
mod refine;

pub use curve::{Curve, MultiCurve};
pub use cut::{cut_along, find_f, surger, CutCorrespondence, FRegion};
pub use homology::{
    h1_class_mod2, h1_rank, is_attaching_set, is_cycle, AttachingVerdict, H1Basis, H1Rank,
};
pub use mesh::{ComponentReport, Dart, Face, FaceSpec, Mesh};
pub use refine::{refine_all, refine_faces, EdgeFate, Refined};

use crate::Result;

/// Components of the surface cut along `curves` (empty allowed), with
/// boundary provenance: which circles predate the cut and which are copies
/// of which curve.
pub fn component_report(mesh: &Mesh, curves: &MultiCurve) -> Result<Vec<ComponentReport>> {
    cut::cut_component_report(mesh, curves)
}
