//! Embedded closed curves and disjoint families of them.

use std::collections::BTreeSet;

use crate::gf2::BitVec;
use crate::surface::{Dart, Mesh};
use crate::{Error, Result};

/// Simple closed curve as a directed edge-cycle in the interior of a mesh.
///
/// Stored in canonical rotation (least dart first) so equal curves compare
/// equal regardless of where the caller started the cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Curve {
    darts: Vec<Dart>,
}

impl Curve {
    pub fn new(mesh: &Mesh, mut darts: Vec<Dart>) -> Result<Curve> {
        if darts.len() < 2 {
            return Err(Error::BadCurve(format!(
                "needs at least two edges, got {}",
                darts.len()
            )));
        }
        let n = darts.len();
        for k in 0..n {
            let d = darts[k];
            if d.index() >= mesh.ndarts() {
                return Err(Error::BadCurve(format!("dart {d:?} outside mesh")));
            }
            if mesh.head(d) != mesh.tail(darts[(k + 1) % n]) {
                return Err(Error::BadCurve(format!(
                    "darts {:?} and {:?} do not chain",
                    d,
                    darts[(k + 1) % n]
                )));
            }
            if mesh.is_boundary_edge(d.edge()) {
                return Err(Error::BadCurve(format!(
                    "edge {} lies on the boundary",
                    mesh.edge_label(d.edge())
                )));
            }
            if mesh.is_boundary_vertex(mesh.tail(d)) {
                return Err(Error::BadCurve("passes through a boundary vertex".into()));
            }
        }
        let mut edges = BTreeSet::new();
        let mut verts = BTreeSet::new();
        for d in &darts {
            if !edges.insert(d.edge()) {
                return Err(Error::BadCurve(format!(
                    "edge {} repeats",
                    mesh.edge_label(d.edge())
                )));
            }
            if !verts.insert(mesh.tail(*d)) {
                return Err(Error::BadCurve("vertex repeats".into()));
            }
        }
        for f in mesh.marked_faces() {
            for d in &mesh.face(f).word {
                if edges.contains(&d.edge()) || verts.contains(&mesh.tail(*d)) {
                    return Err(Error::BadCurve(format!(
                        "touches marked face {}",
                        mesh.face(f).label
                    )));
                }
            }
        }
        let start = darts
            .iter()
            .enumerate()
            .min_by_key(|(i, d)| (**d, *i))
            .map(|(i, _)| i)
            .unwrap();
        darts.rotate_left(start);
        Ok(Curve { darts })
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.darts.iter().map(|d| d.edge())
    }

    pub fn edge_set(&self) -> BTreeSet<usize> {
        self.edges().collect()
    }

    pub fn vertices(&self, mesh: &Mesh) -> Vec<usize> {
        self.darts.iter().map(|d| mesh.tail(*d)).collect()
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.darts.iter().any(|d| d.edge() == e)
    }

    /// The dart of this curve running over edge `e`, if any.
    pub fn dart_on_edge(&self, e: usize) -> Option<Dart> {
        self.darts.iter().copied().find(|d| d.edge() == e)
    }

    pub fn reversed(&self, mesh: &Mesh) -> Curve {
        let darts = self.darts.iter().rev().map(|d| d.rev()).collect();
        Curve::new(mesh, darts).expect("reversal of a valid curve is valid")
    }

    /// The curve as a GF(2) 1-chain over the mesh's edges.
    pub fn chain(&self, mesh: &Mesh) -> BitVec {
        let mut c = BitVec::zeros(mesh.nedges());
        for d in &self.darts {
            c.flip(d.edge());
        }
        c
    }
}

/// Ordered list of pairwise disjoint curves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiCurve {
    curves: Vec<Curve>,
}

impl MultiCurve {
    pub fn new(mesh: &Mesh, curves: Vec<Curve>) -> Result<MultiCurve> {
        let mut seen_verts = BTreeSet::new();
        for (i, c) in curves.iter().enumerate() {
            for v in c.vertices(mesh) {
                if !seen_verts.insert(v) {
                    return Err(Error::BadCurve(format!(
                        "curve #{i} meets an earlier curve"
                    )));
                }
            }
        }
        Ok(MultiCurve { curves })
    }

    pub fn empty() -> MultiCurve {
        MultiCurve { curves: Vec::new() }
    }

    pub fn single(curve: Curve) -> MultiCurve {
        MultiCurve { curves: vec![curve] }
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Curve> {
        self.curves.iter()
    }

    pub fn get(&self, i: usize) -> &Curve {
        &self.curves[i]
    }
}
