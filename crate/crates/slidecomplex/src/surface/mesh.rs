//! Polygonal cell complexes for compact oriented surfaces with boundary.
//!
//! A mesh is a list of labeled edges plus faces given as cyclic words of darts
//! (directed edges). Everything else is derived: vertices come from union-find
//! over corner identifications, the rotation system from face words, boundary
//! circles from the darts no face uses. Face words are read counterclockwise,
//! so `rot` steps counterclockwise around a vertex.
//!
//! Meshes are immutable once assembled. Cutting, refinement and surgery build
//! fresh edge/face lists and reassemble, which keeps every derived structure
//! trustworthy and keeps determinism trivial: all derived data is a function
//! of the sorted label lists alone.

use std::fmt;

use crate::label::Label;
use crate::{Error, Result};

/// Directed edge: edge index shifted left, low bit set when running against
/// the edge's own orientation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u32);

impl Dart {
    pub fn new(edge: usize, reversed: bool) -> Dart {
        Dart(((edge as u32) << 1) | reversed as u32)
    }

    pub fn fwd(edge: usize) -> Dart {
        Dart::new(edge, false)
    }

    pub fn edge(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn reversed(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn rev(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.reversed() { '-' } else { '+' }, self.edge())
    }
}

/// Face description handed to the assembler: a cyclic word of (edge index,
/// reversed) pairs over the edge list passed alongside.
#[derive(Clone, Debug)]
pub struct FaceSpec {
    pub label: Label,
    pub word: Vec<(usize, bool)>,
    pub marked: bool,
}

impl FaceSpec {
    pub fn new(label: Label, word: Vec<(usize, bool)>) -> Self {
        FaceSpec { label, word, marked: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub label: Label,
    pub word: Vec<Dart>,
    pub marked: bool,
}

/// Per connected component of a (possibly cut) surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub chi: i64,
    pub genus: i64,
    pub boundary_circles: usize,
    /// Some boundary circle predates the cut (is part of the original ∂).
    pub has_original_boundary: bool,
    /// For cut surfaces: curve index → number of this component's boundary
    /// circles that are copies of that curve. Empty for uncut meshes.
    pub curve_copies: Vec<usize>,
    pub faces: Vec<usize>,
    pub marked_faces: Vec<usize>,
}

#[derive(Clone)]
pub struct Mesh {
    edge_labels: Vec<Label>,
    faces: Vec<Face>,
    nverts: usize,
    dart_tail: Vec<u32>,
    dart_face: Vec<Option<(u32, u32)>>,
    /// ccw-next out-dart at tail(d), stepping across the corner of d's face;
    /// None for darts outside every face.
    rot: Vec<Option<Dart>>,
    /// position of each dart within out_darts(tail(d))
    dart_rotpos: Vec<u32>,
    /// out-darts per vertex in rotation order; boundary vertices list the
    /// in-degree-0 dart first and their unique free dart last
    vert_out: Vec<Vec<Dart>>,
    boundary_circles: Vec<Vec<Dart>>,
    vert_comp: Vec<u32>,
    ncomps: usize,
}

impl PartialEq for Mesh {
    fn eq(&self, other: &Self) -> bool {
        self.edge_labels == other.edge_labels && self.faces == other.faces
    }
}
impl Eq for Mesh {}

impl fmt::Debug for Mesh {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Mesh(V={} E={} F={} b={} comps={})",
            self.nverts,
            self.edge_labels.len(),
            self.faces.len(),
            self.boundary_circles.len(),
            self.ncomps
        )
    }
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] as usize != r {
            r = self.0[r] as usize;
        }
        let mut c = i;
        while self.0[c] as usize != c {
            let next = self.0[c] as usize;
            self.0[c] = r as u32;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb) as u32;
        }
    }
}

impl Mesh {
    pub fn new(edge_labels: Vec<Label>, face_specs: Vec<FaceSpec>) -> Result<Mesh> {
        // sort edges by label, remap face words through the permutation
        let mut perm: Vec<usize> = (0..edge_labels.len()).collect();
        perm.sort_by(|&a, &b| edge_labels[a].cmp(&edge_labels[b]));
        let mut sorted_labels = Vec::with_capacity(edge_labels.len());
        let mut new_of_old = vec![usize::MAX; edge_labels.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_of_old[old] = new;
            sorted_labels.push(edge_labels[old].clone());
        }
        for w in sorted_labels.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Invalid(format!("duplicate edge label {}", w[0])));
            }
        }

        let mut faces: Vec<Face> = Vec::with_capacity(face_specs.len());
        for spec in face_specs {
            if spec.word.is_empty() {
                return Err(Error::Invalid(format!("empty face word in {}", spec.label)));
            }
            let mut word = Vec::with_capacity(spec.word.len());
            for &(idx, rev) in &spec.word {
                if idx >= new_of_old.len() {
                    return Err(Error::Invalid(format!(
                        "face {} references unknown edge #{idx}",
                        spec.label
                    )));
                }
                word.push(Dart::new(new_of_old[idx], rev));
            }
            // canonical rotation: words are cyclic, start at the least dart
            let start = word
                .iter()
                .enumerate()
                .min_by_key(|(i, d)| (**d, *i))
                .map(|(i, _)| i)
                .unwrap();
            word.rotate_left(start);
            faces.push(Face { label: spec.label, word, marked: spec.marked });
        }
        faces.sort_by(|a, b| a.label.cmp(&b.label));
        for w in faces.windows(2) {
            if w[0].label == w[1].label {
                return Err(Error::Invalid(format!("duplicate face label {}", w[0].label)));
            }
        }

        Self::assemble(sorted_labels, faces)
    }

    fn assemble(edge_labels: Vec<Label>, faces: Vec<Face>) -> Result<Mesh> {
        let ne = edge_labels.len();
        let nd = 2 * ne;

        let mut dart_face: Vec<Option<(u32, u32)>> = vec![None; nd];
        for (fi, face) in faces.iter().enumerate() {
            for (pi, d) in face.word.iter().enumerate() {
                let slot = &mut dart_face[d.index()];
                if slot.is_some() {
                    return Err(Error::NonOrientable(edge_labels[d.edge()].clone()));
                }
                *slot = Some((fi as u32, pi as u32));
            }
        }
        for e in 0..ne {
            if dart_face[2 * e].is_none() && dart_face[2 * e + 1].is_none() {
                return Err(Error::DanglingEdge(edge_labels[e].clone()));
            }
        }

        // vertices: identify corner slots. slot i = tail of dart i.
        let mut uf = UnionFind::new(nd);
        for face in &faces {
            for k in 0..face.word.len() {
                let a = face.word[k];
                let b = face.word[(k + 1) % face.word.len()];
                uf.union(a.rev().index(), b.index());
            }
        }
        let mut vert_of_root = vec![u32::MAX; nd];
        let mut dart_tail = vec![0u32; nd];
        let mut nverts = 0usize;
        for d in 0..nd {
            let r = uf.find(d);
            if vert_of_root[r] == u32::MAX {
                vert_of_root[r] = nverts as u32;
                nverts += 1;
            }
            dart_tail[d] = vert_of_root[r];
        }

        let mut rot: Vec<Option<Dart>> = vec![None; nd];
        for face in &faces {
            for k in 0..face.word.len() {
                let prev = face.word[(k + face.word.len() - 1) % face.word.len()];
                rot[face.word[k].index()] = Some(prev.rev());
            }
        }

        // rotation order per vertex; the link of every derived vertex is a
        // single rot-path or rot-cycle (anything else would have been split
        // into several vertices by the union-find), so walking is safe.
        let mut incident: Vec<Vec<Dart>> = vec![Vec::new(); nverts];
        for d in 0..nd {
            incident[dart_tail[d] as usize].push(Dart(d as u32));
        }
        let mut vert_out: Vec<Vec<Dart>> = Vec::with_capacity(nverts);
        let mut dart_rotpos = vec![0u32; nd];
        for (v, darts) in incident.iter().enumerate() {
            let free: Vec<Dart> =
                darts.iter().copied().filter(|d| dart_face[d.index()].is_none()).collect();
            let order = if free.is_empty() {
                let start = *darts.iter().min().unwrap();
                let mut order = vec![start];
                let mut cur = rot[start.index()]
                    .ok_or_else(|| Error::Internal("interior dart without rotation".into()))?;
                while cur != start {
                    order.push(cur);
                    cur = rot[cur.index()]
                        .ok_or_else(|| Error::Internal("broken rotation cycle".into()))?;
                }
                order
            } else if free.len() == 1 {
                let mut is_target = vec![false; darts.len()];
                let local: std::collections::HashMap<Dart, usize> =
                    darts.iter().enumerate().map(|(i, d)| (*d, i)).collect();
                for d in darts {
                    if let Some(t) = rot[d.index()] {
                        is_target[local[&t]] = true;
                    }
                }
                let mut starts =
                    darts.iter().enumerate().filter(|(i, _)| !is_target[*i]).map(|(_, d)| *d);
                let g = starts
                    .next()
                    .ok_or_else(|| Error::Internal("boundary link without start".into()))?;
                if starts.next().is_some() {
                    return Err(Error::Internal("boundary link with two starts".into()));
                }
                let mut order = vec![g];
                let mut cur = g;
                while let Some(next) = rot[cur.index()] {
                    order.push(next);
                    cur = next;
                }
                if cur != free[0] {
                    return Err(Error::Internal("boundary link does not end at free dart".into()));
                }
                order
            } else {
                return Err(Error::Internal(format!(
                    "vertex {v} with {} free darts",
                    free.len()
                )));
            };
            if order.len() != darts.len() {
                return Err(Error::Internal("vertex link is not a single path or cycle".into()));
            }
            for (i, d) in order.iter().enumerate() {
                dart_rotpos[d.index()] = i as u32;
            }
            vert_out.push(order);
        }

        // boundary circles: free darts chain through boundary vertices, whose
        // rotation order ends at their unique free dart
        let mut circles = Vec::new();
        let mut seen = vec![false; nd];
        for d0 in 0..nd {
            if dart_face[d0].is_some() || seen[d0] {
                continue;
            }
            let mut circle = Vec::new();
            let mut cur = Dart(d0 as u32);
            loop {
                seen[cur.index()] = true;
                circle.push(cur);
                let head = dart_tail[cur.rev().index()] as usize;
                let next = *vert_out[head].last().unwrap();
                if dart_face[next.index()].is_some() {
                    return Err(Error::Internal("boundary trace hit a face dart".into()));
                }
                if next == Dart(d0 as u32) {
                    break;
                }
                cur = next;
            }
            circles.push(circle);
        }

        // connected components over vertices
        let mut cuf = UnionFind::new(nverts);
        for e in 0..ne {
            cuf.union(dart_tail[2 * e] as usize, dart_tail[2 * e + 1] as usize);
        }
        let mut comp_of_root = vec![u32::MAX; nverts];
        let mut vert_comp = vec![0u32; nverts];
        let mut ncomps = 0usize;
        for v in 0..nverts {
            let r = cuf.find(v);
            if comp_of_root[r] == u32::MAX {
                comp_of_root[r] = ncomps as u32;
                ncomps += 1;
            }
            vert_comp[v] = comp_of_root[r];
        }

        let mesh = Mesh {
            edge_labels,
            faces,
            nverts,
            dart_tail,
            dart_face,
            rot,
            dart_rotpos,
            vert_out,
            boundary_circles: circles,
            vert_comp,
            ncomps,
        };

        let mut comp_has_boundary = vec![false; ncomps];
        for circle in &mesh.boundary_circles {
            comp_has_boundary[mesh.comp_of_vert(mesh.tail(circle[0]))] = true;
        }
        for (c, has) in comp_has_boundary.iter().enumerate() {
            if !has {
                let face = mesh
                    .faces
                    .iter()
                    .find(|f| mesh.comp_of_face_ref(f) == c)
                    .map(|f| f.label.clone())
                    .unwrap_or_else(|| Label::base(0));
                return Err(Error::ClosedComponent(face));
            }
        }
        for rep in mesh.component_report() {
            if rep.genus < 0 || (2 - rep.chi - rep.boundary_circles as i64) % 2 != 0 {
                return Err(Error::Internal(format!("bad component shape: {rep:?}")));
            }
        }
        Ok(mesh)
    }

    fn comp_of_face_ref(&self, f: &Face) -> usize {
        self.comp_of_vert(self.tail(f.word[0]))
    }

    pub fn nverts(&self) -> usize {
        self.nverts
    }

    pub fn nedges(&self) -> usize {
        self.edge_labels.len()
    }

    pub fn nfaces(&self) -> usize {
        self.faces.len()
    }

    pub fn ndarts(&self) -> usize {
        2 * self.edge_labels.len()
    }

    pub fn ncomps(&self) -> usize {
        self.ncomps
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn edge_label(&self, e: usize) -> &Label {
        &self.edge_labels[e]
    }

    pub fn edge_labels(&self) -> &[Label] {
        &self.edge_labels
    }

    pub fn find_edge(&self, label: &Label) -> Option<usize> {
        self.edge_labels.binary_search(label).ok()
    }

    pub fn find_face(&self, label: &Label) -> Option<usize> {
        self.faces.binary_search_by(|f| f.label.cmp(label)).ok()
    }

    pub fn tail(&self, d: Dart) -> usize {
        self.dart_tail[d.index()] as usize
    }

    pub fn head(&self, d: Dart) -> usize {
        self.dart_tail[d.rev().index()] as usize
    }

    pub fn face_of(&self, d: Dart) -> Option<usize> {
        self.dart_face[d.index()].map(|(f, _)| f as usize)
    }

    pub fn pos_in_face(&self, d: Dart) -> Option<usize> {
        self.dart_face[d.index()].map(|(_, p)| p as usize)
    }

    pub fn next_in_face(&self, d: Dart) -> Option<Dart> {
        let (f, p) = self.dart_face[d.index()]?;
        let w = &self.faces[f as usize].word;
        Some(w[(p as usize + 1) % w.len()])
    }

    pub fn prev_in_face(&self, d: Dart) -> Option<Dart> {
        let (f, p) = self.dart_face[d.index()]?;
        let w = &self.faces[f as usize].word;
        Some(w[(p as usize + w.len() - 1) % w.len()])
    }

    /// Next out-dart counterclockwise around tail(d), crossing d's face.
    pub fn rot_ccw(&self, d: Dart) -> Option<Dart> {
        self.rot[d.index()]
    }

    /// Out-darts at `v` in rotation order. Interior vertices: a full ccw
    /// cycle (starting at the least dart). Boundary vertices: the ccw path,
    /// whose last entry is the vertex's unique free dart.
    pub fn out_darts(&self, v: usize) -> &[Dart] {
        &self.vert_out[v]
    }

    pub fn rot_pos(&self, d: Dart) -> usize {
        self.dart_rotpos[d.index()] as usize
    }

    pub fn is_free(&self, d: Dart) -> bool {
        self.dart_face[d.index()].is_none()
    }

    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.is_free(Dart::fwd(e)) || self.is_free(Dart::fwd(e).rev())
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.vert_out[v].last().is_some_and(|d| self.is_free(*d))
    }

    pub fn boundary_circles(&self) -> &[Vec<Dart>] {
        &self.boundary_circles
    }

    pub fn comp_of_vert(&self, v: usize) -> usize {
        self.vert_comp[v] as usize
    }

    pub fn comp_of_face(&self, f: usize) -> usize {
        self.comp_of_face_ref(&self.faces[f])
    }

    pub fn comp_of_edge(&self, e: usize) -> usize {
        self.comp_of_vert(self.tail(Dart::fwd(e)))
    }

    /// Vertices in the corner chain of a face, aligned with its word
    /// (entry i = tail of word[i]).
    pub fn face_verts(&self, f: usize) -> Vec<usize> {
        self.faces[f].word.iter().map(|d| self.tail(*d)).collect()
    }

    pub fn marked_faces(&self) -> impl Iterator<Item = usize> + '_ {
        self.faces.iter().enumerate().filter(|(_, f)| f.marked).map(|(i, _)| i)
    }

    pub fn component_report(&self) -> Vec<ComponentReport> {
        let mut verts = vec![0i64; self.ncomps];
        let mut edges = vec![0i64; self.ncomps];
        let mut circles = vec![0usize; self.ncomps];
        let mut reps: Vec<ComponentReport> = (0..self.ncomps)
            .map(|_| ComponentReport {
                chi: 0,
                genus: 0,
                boundary_circles: 0,
                has_original_boundary: true,
                curve_copies: Vec::new(),
                faces: Vec::new(),
                marked_faces: Vec::new(),
            })
            .collect();
        for v in 0..self.nverts {
            verts[self.comp_of_vert(v)] += 1;
        }
        for e in 0..self.nedges() {
            edges[self.comp_of_edge(e)] += 1;
        }
        for circle in &self.boundary_circles {
            circles[self.comp_of_vert(self.tail(circle[0]))] += 1;
        }
        for (fi, face) in self.faces.iter().enumerate() {
            let c = self.comp_of_face_ref(face);
            reps[c].faces.push(fi);
            if face.marked {
                reps[c].marked_faces.push(fi);
            }
        }
        for (c, rep) in reps.iter_mut().enumerate() {
            rep.chi = verts[c] - edges[c] + rep.faces.len() as i64;
            rep.boundary_circles = circles[c];
            rep.genus = (2 - rep.chi - circles[c] as i64) / 2;
        }
        reps
    }

    pub fn chi(&self) -> i64 {
        self.nverts as i64 - self.nedges() as i64 + self.nfaces() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<Label> {
        (0..n as u32).map(Label::base).collect()
    }

    fn mesh(nedges: usize, words: &[&[(usize, bool)]]) -> Result<Mesh> {
        let faces = words
            .iter()
            .enumerate()
            .map(|(i, w)| FaceSpec::new(Label::base(100 + i as u32), w.to_vec()))
            .collect();
        Mesh::new(labels(nedges), faces)
    }

    #[test]
    fn monogon_is_a_disk() {
        let m = mesh(1, &[&[(0, false)]]).unwrap();
        // the single corner identifies head with tail: one vertex
        assert_eq!((m.nverts(), m.nedges(), m.nfaces()), (1, 1, 1));
        assert_eq!(m.chi(), 1);
        let rep = m.component_report();
        assert_eq!(rep.len(), 1);
        assert_eq!(rep[0].chi, 1);
        assert_eq!(rep[0].genus, 0);
        assert_eq!(rep[0].boundary_circles, 1);
    }

    #[test]
    fn square_disk() {
        let m = mesh(4, &[&[(0, false), (1, false), (2, false), (3, false)]]).unwrap();
        assert_eq!((m.nverts(), m.nedges(), m.nfaces()), (4, 4, 1));
        assert_eq!(m.chi(), 1);
        assert_eq!(m.boundary_circles().len(), 1);
        assert_eq!(m.boundary_circles()[0].len(), 4);
    }

    #[test]
    fn annulus_from_one_square() {
        // glue top to bottom: (bottom, right, -bottom, left)
        let m = mesh(3, &[&[(0, false), (1, false), (0, true), (2, false)]]).unwrap();
        assert_eq!(m.chi(), 0);
        let rep = &m.component_report()[0];
        assert_eq!((rep.genus, rep.boundary_circles), (0, 2));
    }

    #[test]
    fn one_holed_torus_pentagon() {
        // (a, b, -a, -b, c): commutator word plus one boundary edge
        let m = mesh(
            3,
            &[&[(0, false), (1, false), (0, true), (1, true), (2, false)]],
        )
        .unwrap();
        let rep = &m.component_report()[0];
        assert_eq!((rep.chi, rep.genus, rep.boundary_circles), (-1, 1, 1));
    }

    #[test]
    fn torus_is_rejected_as_closed() {
        let err = mesh(2, &[&[(0, false), (1, false), (0, true), (1, true)]]).unwrap_err();
        assert!(matches!(err, Error::ClosedComponent(_)));
    }

    #[test]
    fn direction_preserving_self_gluing_is_rejected() {
        let err = mesh(2, &[&[(0, false), (1, false), (0, false), (1, true)]]).unwrap_err();
        assert!(matches!(err, Error::NonOrientable(_)));
    }

    #[test]
    fn unused_edge_is_rejected() {
        let err = mesh(2, &[&[(0, false)]]).unwrap_err();
        assert!(matches!(err, Error::DanglingEdge(_)));
    }

    #[test]
    fn two_disk_components() {
        let m = mesh(2, &[&[(0, false)], &[(1, false)]]).unwrap();
        assert_eq!(m.ncomps(), 2);
        let reps = m.component_report();
        assert!(reps.iter().all(|r| r.chi == 1 && r.boundary_circles == 1));
        assert_ne!(m.comp_of_edge(0), m.comp_of_edge(1));
    }

    #[test]
    fn rotation_cycles_and_paths() {
        // square disk: every corner vertex has a 2-dart path ending free
        let m = mesh(4, &[&[(0, false), (1, false), (2, false), (3, false)]]).unwrap();
        for v in 0..m.nverts() {
            assert!(m.is_boundary_vertex(v));
            let out = m.out_darts(v);
            assert_eq!(out.len(), 2);
            assert!(!m.is_free(out[0]));
            assert!(m.is_free(out[1]));
            assert_eq!(m.rot_ccw(out[0]), Some(out[1]));
        }
    }

    #[test]
    fn boundary_trace_follows_reversed_word() {
        let m = mesh(4, &[&[(0, false), (1, false), (2, false), (3, false)]]).unwrap();
        let circle = &m.boundary_circles()[0];
        let edges: Vec<usize> = circle.iter().map(|d| d.edge()).collect();
        assert_eq!(circle.len(), 4);
        assert!(circle.iter().all(|d| d.reversed()));
        // consecutive boundary darts share a vertex
        for k in 0..4 {
            assert_eq!(m.head(circle[k]), m.tail(circle[(k + 1) % 4]));
        }
        assert_eq!(edges[0], 0);
        assert_eq!(edges, vec![0, 3, 2, 1]);
    }

    #[test]
    fn interior_spike_vertices_are_fine() {
        // hexagon (a, -a, b, c, -c, d) folds two spikes into a bigon disk
        let m = mesh(
            4,
            &[&[(0, false), (0, true), (1, false), (2, false), (2, true), (3, false)]],
        )
        .unwrap();
        assert_eq!(m.nverts(), 4);
        let rep = &m.component_report()[0];
        assert_eq!((rep.chi, rep.genus, rep.boundary_circles), (1, 0, 1));
        // the spike tips are interior valence-1 vertices
        let interior: Vec<usize> =
            (0..m.nverts()).filter(|&v| !m.is_boundary_vertex(v)).collect();
        assert_eq!(interior.len(), 2);
        for v in interior {
            assert_eq!(m.out_darts(v).len(), 1);
        }
    }

    #[test]
    fn equality_ignores_construction_order() {
        let a = mesh(2, &[&[(0, false)], &[(1, false)]]).unwrap();
        let faces_rev = vec![
            FaceSpec::new(Label::base(101), vec![(0, false)]),
            FaceSpec::new(Label::base(100), vec![(1, false)]),
        ];
        let b = Mesh::new(vec![Label::base(1), Label::base(0)], faces_rev).unwrap();
        // b lists edges and faces in swapped order but with swapped labels,
        // so after normalization the two meshes agree edge-for-edge
        assert_eq!(a.nverts(), b.nverts());
        assert_eq!(a.boundary_circles().len(), b.boundary_circles().len());
    }

    #[test]
    fn face_word_rotation_is_canonical() {
        let m1 = mesh(3, &[&[(0, false), (1, false), (2, false)]]).unwrap();
        let m2 = mesh(3, &[&[(2, false), (0, false), (1, false)]]).unwrap();
        assert_eq!(m1, m2);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let e = Mesh::new(
            vec![Label::base(0), Label::base(0)],
            vec![FaceSpec::new(Label::base(9), vec![(0, false), (1, false)])],
        )
        .unwrap_err();
        assert!(matches!(e, Error::Invalid(_)));
    }
}
