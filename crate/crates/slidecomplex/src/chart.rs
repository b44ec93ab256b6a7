//! A mesh bundled with words for its edges in one fixed free-group basis.
//!
//! Keys from `pi1` are only comparable against the spine they were computed
//! on. A chart pins the basis: the root chart computes its own spine, and a
//! refined chart copies words across [`Refined::parallel_of`] instead of
//! collapsing again. Middle thirds and strip edges inherit the word of the
//! dart they shadow, everything else added by refinement reads as a constant
//! path. That is the word-level shadow of the retraction which squashes each
//! corridor back onto the coarse cell, so any tower of refinements keeps every
//! key in the root basis, and curves living at different levels of different
//! towers over one root stay comparable.

use std::collections::BTreeSet;

use crate::pi1::{self, collapse_to_spine, CurveKey, CutSystemKey, Word};
use crate::surface::{refine_all, refine_faces, Curve, Dart, Mesh, MultiCurve, Refined};

#[derive(Clone)]
pub struct Chart {
    mesh: Mesh,
    /// per edge: word of the forward dart in the root basis
    fwd_word: Vec<Word>,
    ngens: usize,
}

impl Chart {
    pub fn new(mesh: &Mesh) -> Chart {
        let spine = collapse_to_spine(mesh);
        let fwd_word = (0..mesh.nedges()).map(|e| spine.dart_word(Dart::fwd(e))).collect();
        Chart { mesh: mesh.clone(), fwd_word, ngens: spine.ngens() }
    }

    fn transported(&self, r: &Refined) -> Chart {
        let fwd_word: Vec<Word> = (0..r.mesh.nedges())
            .map(|e| match r.parallel_of(e) {
                Some(d) => self.dart_word(d),
                None => Vec::new(),
            })
            .collect();
        let chart = Chart { mesh: r.mesh.clone(), fwd_word, ngens: self.ngens };
        debug_assert!(chart
            .mesh
            .faces()
            .iter()
            .all(|f| chart.word_of_darts(&f.word).is_empty()));
        chart
    }

    pub fn refine_all(&self) -> (Chart, Refined) {
        let r = refine_all(&self.mesh);
        (self.transported(&r), r)
    }

    pub fn refine_faces(&self, region: &BTreeSet<usize>) -> (Chart, Refined) {
        let r = refine_faces(&self.mesh, region);
        (self.transported(&r), r)
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn dart_word(&self, d: Dart) -> Word {
        let w = &self.fwd_word[d.edge()];
        if d.reversed() {
            pi1::invert(w)
        } else {
            w.clone()
        }
    }

    pub fn word_of_darts(&self, darts: &[Dart]) -> Word {
        let mut out = Vec::new();
        for d in darts {
            let w = &self.fwd_word[d.edge()];
            if d.reversed() {
                for l in w.iter().rev() {
                    pi1::push_reduced(&mut out, -l);
                }
            } else {
                for l in w {
                    pi1::push_reduced(&mut out, *l);
                }
            }
        }
        out
    }

    pub fn key(&self, curve: &Curve) -> CurveKey {
        CurveKey::of_word(&self.word_of_darts(curve.darts()))
    }

    pub fn system_key(&self, curves: &MultiCurve) -> CutSystemKey {
        CutSystemKey::of_keys(curves.iter().map(|c| self.key(c)).collect())
    }

    pub fn is_null(&self, curve: &Curve) -> bool {
        self.key(curve).is_trivial()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn keys_survive_one_refinement() {
        let (m, g) = fixtures::punctured_torus_grid(5);
        let chart = Chart::new(&m);
        let curves = [
            Curve::new(&m, g.row_curve(&m, 2)).unwrap(),
            Curve::new(&m, g.col_curve(&m, 3)).unwrap(),
            Curve::new(&m, g.hole_ring_curve(&m)).unwrap(),
        ];
        let (fine, r) = chart.refine_all();
        for c in &curves {
            assert_eq!(chart.key(c), fine.key(&r.map_curve(c).unwrap()));
        }
    }

    #[test]
    fn keys_survive_a_tower_and_partial_regions() {
        let (m, g) = fixtures::four_holed_sphere();
        let chart = Chart::new(&m);
        let c = Curve::new(&m, g.rect_curve(&m, 1, 1, 10, 6)).unwrap();
        let base_key = chart.key(&c);

        let region: BTreeSet<usize> = (0..6).collect();
        let (mid, r1) = chart.refine_faces(&region);
        let c1 = r1.map_curve(&c).unwrap();
        assert_eq!(mid.key(&c1), base_key);

        let (fine, r2) = mid.refine_all();
        let c2 = r2.map_curve(&c1).unwrap();
        assert_eq!(fine.key(&c2), base_key);
        assert_eq!(fine.ngens(), chart.ngens());
    }

    #[test]
    fn towers_over_one_root_stay_comparable() {
        let (m, g) = fixtures::annulus_grid(4, 3);
        let chart = Chart::new(&m);
        let a = Curve::new(&m, g.row_curve(&m, 1)).unwrap();
        let b = Curve::new(&m, g.row_curve(&m, 2)).unwrap();
        let (f1, r1) = chart.refine_faces(&BTreeSet::from([0, 1]));
        let (f2, r2) = chart.refine_faces(&BTreeSet::from([4, 5]));
        assert_eq!(f1.key(&r1.map_curve(&a).unwrap()), f2.key(&r2.map_curve(&b).unwrap()));
    }

    #[test]
    fn nullity_is_intrinsic() {
        let (m, g) = fixtures::annulus_grid(4, 3);
        let chart = Chart::new(&m);
        let trivial = Curve::new(&m, g.rect_curve(&m, 0, 1, 2, 2)).unwrap();
        let core = Curve::new(&m, g.row_curve(&m, 1)).unwrap();
        assert!(chart.is_null(&trivial));
        assert!(!chart.is_null(&core));
        let (fine, r) = chart.refine_all();
        assert!(fine.is_null(&r.map_curve(&trivial).unwrap()));
        assert!(!fine.is_null(&r.map_curve(&core).unwrap()));
    }

    #[test]
    fn system_keys_transport() {
        let (m, g) = fixtures::four_holed_sphere();
        let chart = Chart::new(&m);
        let a = Curve::new(&m, g.rect_curve(&m, 2, 2, 5, 5)).unwrap();
        let b = Curve::new(&m, g.rect_curve(&m, 6, 2, 9, 5)).unwrap();
        let mc = MultiCurve::new(&m, vec![a, b]).unwrap();
        let sys = chart.system_key(&mc);
        let (fine, r) = chart.refine_all();
        let mc2 = MultiCurve::new(
            fine.mesh(),
            mc.iter().map(|c| r.map_curve(c).unwrap()).collect(),
        )
        .unwrap();
        assert_eq!(fine.system_key(&mc2), sys);
    }
}
