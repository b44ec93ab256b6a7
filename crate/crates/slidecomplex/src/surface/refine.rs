//! Corridor refinement: trisect edges and subdivide faces into a border
//! corridor plus an inner polygon.
//!
//! A refined k-gon becomes 2k+1 cells: k edge strips, k corner cells, one
//! inner k-gon. Each trisected edge gains two crossing vertices sitting at
//! one-third and two-thirds; these are 4-valent interior points where later
//! constructions route transversal crossings. Faces outside the refined
//! region keep their cell but have their words expanded over trisected edges,
//! so refinement can stay local to where room is needed and the mesh only
//! grows linearly with each request.
//!
//! Label tag registry (children of edge label e, face label f):
//!   e.0 / e.1 / e.2   edge thirds, tail to head
//!   f.3.i             inner edge parallel to word position i
//!   f.4.i / f.5.i     corridor crossing edges at corner i (in / out)
//!   f.6               inner polygon
//!   f.7.i             strip cell along position i
//!   f.8.i             corner cell at corner i
//! Tag 9 is reserved by surgery caps, tags 10+ by diagram stabilization.

use std::collections::{BTreeSet, HashMap};

use crate::label::Label;
use crate::surface::mesh::{Dart, FaceSpec, Mesh};
use crate::surface::Curve;
use crate::Result;

#[derive(Clone, Debug)]
pub enum EdgeFate {
    Kept(usize),
    Trisected([usize; 3]),
}

#[derive(Clone)]
pub struct Refined {
    pub mesh: Mesh,
    /// old edge index → where it went
    pub edge_fate: Vec<EdgeFate>,
    /// new edge index → old dart running the same way as the new fwd dart,
    /// for edges that shadow an old edge (middle thirds and strip parallels)
    parallel_of: Vec<Option<Dart>>,
    /// old face index → its cells in the new mesh (just itself if untouched)
    face_children: Vec<Vec<usize>>,
}

impl Refined {
    /// Old dart → its path in the refined mesh (one or three darts).
    pub fn map_dart(&self, d: Dart) -> Vec<Dart> {
        match &self.edge_fate[d.edge()] {
            EdgeFate::Kept(e) => vec![Dart::new(*e, d.reversed())],
            EdgeFate::Trisected([a, b, c]) => {
                if d.reversed() {
                    vec![Dart::new(*c, true), Dart::new(*b, true), Dart::new(*a, true)]
                } else {
                    vec![Dart::new(*a, false), Dart::new(*b, false), Dart::new(*c, false)]
                }
            }
        }
    }

    pub fn map_curve(&self, old: &Curve) -> Result<Curve> {
        Curve::new(&self.mesh, self.map_darts(old.darts()))
    }

    /// Old dart path → new dart path (trisected pieces inlined).
    pub fn map_darts(&self, darts: &[Dart]) -> Vec<Dart> {
        darts.iter().flat_map(|d| self.map_dart(*d)).collect()
    }

    /// For a new edge shadowing an old one: the old dart aligned with the new
    /// edge's forward dart.
    pub fn parallel_of(&self, new_edge: usize) -> Option<Dart> {
        self.parallel_of[new_edge]
    }

    /// New face indices covering an old face (a singleton if it was outside
    /// the refined region).
    pub fn face_children(&self, old_face: usize) -> &[usize] {
        &self.face_children[old_face]
    }
}

pub fn refine_all(mesh: &Mesh) -> Refined {
    refine_faces(mesh, &(0..mesh.nfaces()).collect())
}

pub fn refine_faces(mesh: &Mesh, region: &BTreeSet<usize>) -> Refined {
    let mut tri: BTreeSet<usize> = BTreeSet::new();
    for &f in region {
        for d in &mesh.face(f).word {
            tri.insert(d.edge());
        }
    }

    let mut labels: Vec<Label> = Vec::new();
    let add = |labels: &mut Vec<Label>, l: Label| -> usize {
        labels.push(l);
        labels.len() - 1
    };

    let mut kept_pos: HashMap<usize, usize> = HashMap::new();
    let mut tri_pos: HashMap<usize, [usize; 3]> = HashMap::new();
    for e in 0..mesh.nedges() {
        let l = mesh.edge_label(e);
        if tri.contains(&e) {
            let p = [
                add(&mut labels, l.child(0)),
                add(&mut labels, l.child(1)),
                add(&mut labels, l.child(2)),
            ];
            tri_pos.insert(e, p);
        } else {
            kept_pos.insert(e, add(&mut labels, l.clone()));
        }
    }

    // travel-order thirds of an old dart as (position, reversed) pairs
    let piece = |tri_pos: &HashMap<usize, [usize; 3]>, d: Dart| -> [(usize, bool); 3] {
        let p = tri_pos[&d.edge()];
        if d.reversed() {
            [(p[2], true), (p[1], true), (p[0], true)]
        } else {
            [(p[0], false), (p[1], false), (p[2], false)]
        }
    };

    let mut specs: Vec<FaceSpec> = Vec::new();
    let mut strip_parallel: Vec<(usize, Dart)> = Vec::new(); // (label position, old dart)
    for (fi, face) in mesh.faces().iter().enumerate() {
        if !region.contains(&fi) {
            let mut word = Vec::new();
            for d in &face.word {
                if tri.contains(&d.edge()) {
                    word.extend(piece(&tri_pos, *d));
                } else {
                    word.push((kept_pos[&d.edge()], d.reversed()));
                }
            }
            specs.push(FaceSpec { label: face.label.clone(), word, marked: face.marked });
            continue;
        }

        let k = face.word.len();
        let fl = &face.label;
        let s: Vec<usize> = (0..k).map(|i| add(&mut labels, fl.child2(3, i as u32))).collect();
        let rca: Vec<usize> = (0..k).map(|i| add(&mut labels, fl.child2(4, i as u32))).collect();
        let rcb: Vec<usize> = (0..k).map(|i| add(&mut labels, fl.child2(5, i as u32))).collect();
        for (i, d) in face.word.iter().enumerate() {
            strip_parallel.push((s[i], *d));
        }

        let inner_word: Vec<(usize, bool)> = (0..k).map(|i| (s[i], false)).collect();
        specs.push(FaceSpec { label: fl.child(6), word: inner_word, marked: face.marked });

        for i in 0..k {
            let d = face.word[i];
            let d_next = face.word[(i + 1) % k];
            let mid = piece(&tri_pos, d)[1];
            let strip_word = vec![mid, (rcb[i], true), (s[i], true), (rca[(i + k - 1) % k], true)];
            specs.push(FaceSpec {
                label: fl.child2(7, i as u32),
                word: strip_word,
                marked: face.marked,
            });
            let corner_word = vec![
                piece(&tri_pos, d)[2],
                piece(&tri_pos, d_next)[0],
                (rca[i], false),
                (rcb[i], false),
            ];
            specs.push(FaceSpec {
                label: fl.child2(8, i as u32),
                word: corner_word,
                marked: face.marked,
            });
        }
    }

    let label_of_pos = labels.clone();
    let new_mesh = Mesh::new(labels, specs).expect("refinement of a valid mesh is valid");
    let find = |pos: usize| -> usize {
        new_mesh.find_edge(&label_of_pos[pos]).expect("label survives assembly")
    };

    let mut edge_fate = Vec::with_capacity(mesh.nedges());
    let mut parallel_of: Vec<Option<Dart>> = vec![None; new_mesh.nedges()];
    for e in 0..mesh.nedges() {
        if let Some(p) = tri_pos.get(&e) {
            let idx = [find(p[0]), find(p[1]), find(p[2])];
            parallel_of[idx[1]] = Some(Dart::fwd(e));
            edge_fate.push(EdgeFate::Trisected(idx));
        } else {
            let idx = find(kept_pos[&e]);
            parallel_of[idx] = Some(Dart::fwd(e));
            edge_fate.push(EdgeFate::Kept(idx));
        }
    }
    for (pos, old_dart) in strip_parallel {
        parallel_of[find(pos)] = Some(old_dart);
    }

    let mut face_children = Vec::with_capacity(mesh.nfaces());
    for (fi, face) in mesh.faces().iter().enumerate() {
        let labels: Vec<Label> = if region.contains(&fi) {
            let k = face.word.len() as u32;
            std::iter::once(face.label.child(6))
                .chain((0..k).map(|i| face.label.child2(7, i)))
                .chain((0..k).map(|i| face.label.child2(8, i)))
                .collect()
        } else {
            vec![face.label.clone()]
        };
        face_children.push(
            labels
                .iter()
                .map(|l| new_mesh.find_face(l).expect("refined cells keep their labels"))
                .collect(),
        );
    }

    Refined { mesh: new_mesh, edge_fate, parallel_of, face_children }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::surface::MultiCurve;

    #[test]
    fn single_square_counts() {
        let (m, _) = fixtures::disk_grid(1, 1);
        let r = refine_all(&m);
        assert_eq!(r.mesh.nverts(), 4 + 8 + 4);
        assert_eq!(r.mesh.nedges(), 12 + 12);
        assert_eq!(r.mesh.nfaces(), 9);
        assert_eq!(r.mesh.chi(), 1);
    }

    fn shapes(m: &Mesh) -> Vec<(i64, i64, usize)> {
        let mut v: Vec<_> = m
            .component_report()
            .iter()
            .map(|r| (r.chi, r.genus, r.boundary_circles))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn reports_unchanged_by_refinement() {
        for (m, _) in [
            fixtures::annulus_grid(3, 2),
            fixtures::four_holed_sphere(),
            fixtures::punctured_torus_grid(4),
        ] {
            let r = refine_all(&m);
            assert_eq!(shapes(&m), shapes(&r.mesh));
        }
    }

    #[test]
    fn empty_region_is_identity() {
        let (m, _) = fixtures::annulus_grid(3, 2);
        let r = refine_faces(&m, &BTreeSet::new());
        assert_eq!(r.mesh, m);
    }

    #[test]
    fn curves_remap_and_stay_disjoint() {
        let (m, g) = fixtures::annulus_grid(4, 3);
        let a = Curve::new(&m, g.row_curve(&m, 1)).unwrap();
        let b = Curve::new(&m, g.row_curve(&m, 2)).unwrap();
        let r = refine_all(&m);
        let a2 = r.map_curve(&a).unwrap();
        let b2 = r.map_curve(&b).unwrap();
        assert_eq!(a2.len(), 3 * a.len());
        assert!(MultiCurve::new(&r.mesh, vec![a2, b2]).is_ok());
    }

    #[test]
    fn local_refinement_expands_neighbors() {
        let (m, g) = fixtures::disk_grid(2, 1);
        let f0 = g.face(0, 0).unwrap();
        let r = refine_faces(&m, &BTreeSet::from([f0]));
        assert_eq!(r.mesh.chi(), 1);
        assert_eq!(r.mesh.nfaces(), 9 + 1);
        // the untouched cell sees one trisected edge: word 4 → 6
        let f1_new = r
            .mesh
            .faces()
            .iter()
            .find(|f| f.label == m.face(g.face(1, 0).unwrap()).label)
            .unwrap();
        assert_eq!(f1_new.word.len(), 6);
    }

    #[test]
    fn repeated_refinement_nests() {
        let (m, _) = fixtures::disk_grid(1, 1);
        let r1 = refine_all(&m);
        let r2 = refine_all(&r1.mesh);
        assert_eq!(r2.mesh.chi(), 1);
        assert_eq!(shapes(&r2.mesh), shapes(&m));
    }

    #[test]
    fn face_children_cover_the_new_mesh() {
        let (m, g) = fixtures::disk_grid(2, 1);
        let f0 = g.face(0, 0).unwrap();
        let r = refine_faces(&m, &BTreeSet::from([f0]));
        assert_eq!(r.face_children(f0).len(), 9);
        assert_eq!(r.face_children(g.face(1, 0).unwrap()).len(), 1);
        let mut all: Vec<usize> =
            (0..m.nfaces()).flat_map(|f| r.face_children(f).to_vec()).collect();
        all.sort();
        assert_eq!(all, (0..r.mesh.nfaces()).collect::<Vec<_>>());
    }

    #[test]
    fn parallel_map_tracks_middles_and_strips() {
        let (m, g) = fixtures::disk_grid(1, 1);
        let r = refine_all(&m);
        let e = g.h_edge(0, 0);
        let EdgeFate::Trisected([_, mid, _]) = r.edge_fate[e] else {
            panic!("expected trisection")
        };
        assert_eq!(r.parallel_of(mid), Some(Dart::fwd(e)));
        let parallels: Vec<Dart> =
            (0..r.mesh.nedges()).filter_map(|ne| r.parallel_of(ne)).collect();
        // 4 strip edges + 4 middles in a refined square
        assert_eq!(parallels.len(), 8);
    }
}
