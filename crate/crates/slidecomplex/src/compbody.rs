//! Compression bodies at the surface level: meridian and good-cut tests,
//! and bounded reachability of cut-systems.
//!
//! A body couples a surface with an attaching set of curves. Questions about
//! the handlebody side all reduce to the surgered surface: a curve disjoint
//! from the attaching set is a meridian exactly when its image there is
//! null-homotopic. Whether a multicurve is a cut-system is decided positively
//! by finding a handleslide path, negatively by one of four cheap certified
//! obstructions, and otherwise left open.

use std::collections::{BTreeSet, VecDeque};

use crate::chart::Chart;
use crate::gf2::Echelon;
use crate::moves::{enumerate_slides, SlideEdge};
use crate::pi1::{collapse_to_spine, curve_key, CutSystemKey, Spine};
use crate::surface::{
    h1_class_mod2, is_attaching_set, surger, ComponentReport, Curve, Dart, Mesh, MultiCurve,
    H1Basis,
};
use crate::{Error, Result};

pub struct CompressionBody {
    mesh: Mesh,
    delta: MultiCurve,
    surgered: Mesh,
    spine: Spine,
    plus_components: Vec<ComponentReport>,
}

impl CompressionBody {
    /// Requires `delta` to be an attaching set on `mesh`.
    pub fn new(mesh: Mesh, delta: MultiCurve) -> Result<CompressionBody> {
        if !is_attaching_set(&mesh, &delta)?.attaching {
            return Err(Error::Invalid(
                "curves do not form an attaching set".into(),
            ));
        }
        let surgered = surger(&mesh, &delta)?;
        let spine = collapse_to_spine(&surgered);
        let plus_components = surgered.component_report();
        Ok(CompressionBody { mesh, delta, surgered, spine, plus_components })
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn delta(&self) -> &MultiCurve {
        &self.delta
    }

    pub fn surgered(&self) -> &Mesh {
        &self.surgered
    }

    /// Components of the surgered surface (the upper boundary pieces).
    pub fn plus_components(&self) -> &[ComponentReport] {
        &self.plus_components
    }

    fn delta_vertices(&self) -> BTreeSet<usize> {
        self.delta
            .iter()
            .flat_map(|c| c.vertices(&self.mesh))
            .collect()
    }

    /// Carry a curve that misses the attaching set over to the surgered
    /// surface. Its edges survive surgery with their labels.
    pub fn image_in_surgered(&self, curve: &Curve) -> Result<Curve> {
        let dv = self.delta_vertices();
        if curve.vertices(&self.mesh).iter().any(|v| dv.contains(v)) {
            return Err(Error::Invalid(
                "representative intersects the attaching set".into(),
            ));
        }
        let darts = curve
            .darts()
            .iter()
            .map(|d| {
                let e = self
                    .surgered
                    .find_edge(self.mesh.edge_label(d.edge()))
                    .ok_or_else(|| Error::Internal("curve edge lost by surgery".into()))?;
                let f = Dart::fwd(e);
                Ok(if d.reversed() { f.rev() } else { f })
            })
            .collect::<Result<Vec<_>>>()?;
        Curve::new(&self.surgered, darts)
    }

    /// Whether the curve bounds a disk in the body: null-homotopic in the
    /// surgered surface. The representative must miss the attaching set.
    pub fn is_meridian(&self, curve: &Curve) -> Result<bool> {
        let image = self.image_in_surgered(curve)?;
        Ok(curve_key(&self.spine, &image).is_trivial())
    }

    /// A meridian whose mod-2 class on the lower surface is nonzero.
    pub fn is_good_cut(&self, curve: &Curve) -> Result<bool> {
        Ok(self.is_meridian(curve)? && !h1_class_mod2(&self.mesh, curve).is_zero())
    }

    /// Mod-2 spans of the candidate's and the attaching set's classes agree.
    /// Handleslides replace a class by a sum, so a reachable candidate must
    /// span the same subspace.
    fn same_span(&self, candidate: &MultiCurve) -> Result<bool> {
        let basis = H1Basis::new(&self.mesh);
        let mut span = Echelon::new();
        for c in self.delta.iter() {
            span.insert(basis.class_of(&self.mesh, &c.chain(&self.mesh))?);
        }
        for c in candidate.iter() {
            if span
                .insert(basis.class_of(&self.mesh, &c.chain(&self.mesh))?)
                .is_some()
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Decide whether `candidate` is reachable from the attaching set by
    /// handleslides. `budget` bounds the number of systems expanded,
    /// `arc_bound` the slide arcs tried at each one; both must be positive.
    /// A definite no always carries one of the certified obstructions; the
    /// search itself can only answer yes or unknown.
    pub fn is_cut_system(
        &self,
        candidate: &MultiCurve,
        budget: usize,
        arc_bound: usize,
    ) -> Result<CutVerdict> {
        if budget == 0 || arc_bound == 0 {
            return Err(Error::Invalid("budget must be positive".into()));
        }
        if candidate.len() != self.delta.len() {
            return Ok(CutVerdict::No(CutObstruction::WrongCount {
                expected: self.delta.len(),
                got: candidate.len(),
            }));
        }
        if !is_attaching_set(&self.mesh, candidate)?.attaching {
            return Ok(CutVerdict::No(CutObstruction::NotAttaching));
        }
        let dv = self.delta_vertices();
        for (slot, c) in candidate.iter().enumerate() {
            let disjoint = c.vertices(&self.mesh).iter().all(|v| !dv.contains(v));
            if disjoint && !self.is_meridian(c)? {
                return Ok(CutVerdict::No(CutObstruction::NonMeridian { slot }));
            }
        }
        if !self.same_span(candidate)? {
            return Ok(CutVerdict::No(CutObstruction::SpanMismatch));
        }

        let base = Chart::new(&self.mesh);
        let target = base.system_key(candidate);
        if base.system_key(&self.delta) == target {
            return Ok(CutVerdict::Yes(Vec::new()));
        }
        let mut visited: BTreeSet<CutSystemKey> =
            BTreeSet::from([base.system_key(&self.delta)]);
        let mut queue: VecDeque<(Chart, MultiCurve, Vec<SlideEdge>)> =
            VecDeque::from([(base, self.delta.clone(), Vec::new())]);
        let mut expanded = 0usize;
        while let Some((chart, system, path)) = queue.pop_front() {
            if expanded == budget {
                return Ok(CutVerdict::Unknown);
            }
            expanded += 1;
            let out = enumerate_slides(&chart, &system, 0, arc_bound)?;
            for edge in out.edges {
                if !visited.insert(edge.target.clone()) {
                    continue;
                }
                let mut next = path.clone();
                let hit = edge.target == target;
                let res = edge.replay(&chart)?;
                next.push(edge);
                if hit {
                    return Ok(CutVerdict::Yes(next));
                }
                queue.push_back((res.chart, res.system, next));
            }
        }
        // arcs are bounded, so draining the queue is exhaustion, not a no
        Ok(CutVerdict::Unknown)
    }

    /// Labeled heuristic, not ground truth: the candidate curves are all
    /// meridians here and the attaching curves are all meridians of the body
    /// the candidate defines. Requires the candidate to be an attaching set
    /// with every curve disjoint from the present one.
    pub fn symmetric_meridian_heuristic(&self, candidate: &MultiCurve) -> Result<bool> {
        if candidate.len() != self.delta.len() {
            return Ok(false);
        }
        for c in candidate.iter() {
            if !self.is_meridian(c)? {
                return Ok(false);
            }
        }
        let other = CompressionBody::new(self.mesh.clone(), candidate.clone())?;
        for c in self.delta.iter() {
            if !other.is_meridian(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Certified reason a candidate is not a cut-system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutObstruction {
    NotAttaching,
    WrongCount { expected: usize, got: usize },
    /// the curve in this slot misses the attaching set but is no meridian
    NonMeridian { slot: usize },
    /// mod-2 spans of the classes differ
    SpanMismatch,
}

impl CutObstruction {
    pub fn code(&self) -> &'static str {
        match self {
            CutObstruction::NotAttaching => "not-attaching",
            CutObstruction::WrongCount { .. } => "wrong-count",
            CutObstruction::NonMeridian { .. } => "non-meridian",
            CutObstruction::SpanMismatch => "span-mismatch",
        }
    }
}

#[derive(Clone, Debug)]
pub enum CutVerdict {
    /// slides that carry the attaching set to the candidate's key
    Yes(Vec<SlideEdge>),
    No(CutObstruction),
    Unknown,
}
