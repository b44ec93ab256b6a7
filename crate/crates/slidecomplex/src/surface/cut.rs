//! Cutting a surface along disjoint curves, and surgery (cut + cap).
//!
//! Cutting works purely by relabeling: each curve edge gets two child labels,
//! one per side. A face position holding the curve-direction dart is on the
//! left of the curve, a position holding the reverse dart on the right, so
//! side assignment is forced. Reassembly re-derives vertices, and the two
//! sides fall apart on their own because their corner chains no longer share
//! edges.

use std::collections::HashMap;

use crate::label::Label;
use crate::surface::mesh::{ComponentReport, Dart, Face, FaceSpec, Mesh};
use crate::surface::{Curve, MultiCurve};
use crate::{Error, Result};

/// Where the pieces of a cut went.
#[derive(Clone, Debug)]
pub struct CutCorrespondence {
    /// per curve: (boundary circle on the curve-direction side, circle on the
    /// reverse side), as indices into the cut mesh's boundary circles
    pub circle_pairs: Vec<(usize, usize)>,
    /// per curve, aligned with its darts: (left edge, right edge) in the cut mesh
    pub side_edges: Vec<Vec<(usize, usize)>>,
    /// new index of each uncut old edge
    pub kept_edges: Vec<Option<usize>>,
}

fn relabeled_specs(
    mesh: &Mesh,
    curves: &MultiCurve,
) -> (Vec<Label>, Vec<FaceSpec>, HashMap<usize, Dart>) {
    // curve edge → its curve-direction dart
    let mut on_curve: HashMap<usize, Dart> = HashMap::new();
    for c in curves.iter() {
        for d in c.darts() {
            on_curve.insert(d.edge(), *d);
        }
    }

    let mut labels = Vec::with_capacity(mesh.nedges() + on_curve.len());
    // old edge → (index of left copy, index of right copy) or identity
    let mut left_of = vec![usize::MAX; mesh.nedges()];
    let mut right_of = vec![usize::MAX; mesh.nedges()];
    for e in 0..mesh.nedges() {
        if on_curve.contains_key(&e) {
            left_of[e] = labels.len();
            labels.push(mesh.edge_label(e).child(0));
            right_of[e] = labels.len();
            labels.push(mesh.edge_label(e).child(1));
        } else {
            left_of[e] = labels.len();
            right_of[e] = labels.len();
            labels.push(mesh.edge_label(e).clone());
        }
    }

    let specs = mesh
        .faces()
        .iter()
        .map(|face| {
            let word = face
                .word
                .iter()
                .map(|d| {
                    let e = d.edge();
                    let idx = match on_curve.get(&e) {
                        Some(cd) if *d == *cd => left_of[e],
                        Some(_) => right_of[e],
                        None => left_of[e],
                    };
                    (idx, d.reversed())
                })
                .collect();
            FaceSpec { label: face.label.clone(), word, marked: face.marked }
        })
        .collect();
    (labels, specs, on_curve)
}

/// Cut `mesh` along `curves`. χ is unchanged; every curve turns into two new
/// boundary circles.
pub fn cut_along(mesh: &Mesh, curves: &MultiCurve) -> Result<(Mesh, CutCorrespondence)> {
    let (labels, specs, _) = relabeled_specs(mesh, curves);
    let cut = Mesh::new(labels, specs)?;
    if cut.chi() != mesh.chi() {
        return Err(Error::Internal("cut changed the euler characteristic".into()));
    }

    let mut kept_edges = Vec::with_capacity(mesh.nedges());
    for e in 0..mesh.nedges() {
        kept_edges.push(cut.find_edge(mesh.edge_label(e)));
    }

    let mut circle_pairs = Vec::with_capacity(curves.len());
    let mut side_edges = Vec::with_capacity(curves.len());
    let circle_of_edge = |e: usize| -> Result<usize> {
        let d = Dart::fwd(e);
        let free = if cut.is_free(d) { d } else { d.rev() };
        if !cut.is_free(free) {
            return Err(Error::Internal("cut copy is not a boundary edge".into()));
        }
        cut.boundary_circles()
            .iter()
            .position(|c| c.contains(&free))
            .ok_or_else(|| Error::Internal("copy missing from boundary circles".into()))
    };
    for curve in curves.iter() {
        let mut sides = Vec::with_capacity(curve.len());
        for d in curve.darts() {
            let l = cut
                .find_edge(&mesh.edge_label(d.edge()).child(0))
                .ok_or_else(|| Error::Internal("left copy vanished".into()))?;
            let r = cut
                .find_edge(&mesh.edge_label(d.edge()).child(1))
                .ok_or_else(|| Error::Internal("right copy vanished".into()))?;
            sides.push((l, r));
        }
        let pair = (circle_of_edge(sides[0].0)?, circle_of_edge(sides[0].1)?);
        if pair.0 == pair.1 {
            return Err(Error::Internal("curve sides share a boundary circle".into()));
        }
        circle_pairs.push(pair);
        side_edges.push(sides);
    }
    Ok((cut, CutCorrespondence { circle_pairs, side_edges, kept_edges }))
}

/// Cut along `curves` and cap each of the resulting circles with a disk.
/// χ grows by 2 per curve. Fails with a closed-component error if capping
/// seals a component completely.
pub fn surger(mesh: &Mesh, curves: &MultiCurve) -> Result<Mesh> {
    let (cut, corr) = cut_along(mesh, curves)?;
    let mut labels: Vec<Label> = cut.edge_labels().to_vec();
    let mut specs: Vec<FaceSpec> = cut.faces().iter().map(spec_of_face).collect();
    for &(a, b) in &corr.circle_pairs {
        for side in [a, b] {
            let circle = &cut.boundary_circles()[side];
            let word = circle.iter().map(|d| (d.edge(), d.reversed())).collect();
            let cap_root = labels[circle[0].edge()].clone();
            specs.push(FaceSpec::new(cap_root.child(9), word));
        }
    }
    Mesh::new(labels.drain(..).collect(), specs)
}

pub(crate) fn spec_of_face(f: &Face) -> FaceSpec {
    FaceSpec {
        label: f.label.clone(),
        word: f.word.iter().map(|d| (d.edge(), d.reversed())).collect(),
        marked: f.marked,
    }
}

/// Component report of the cut surface with boundary provenance: which
/// boundary circles predate the cut and which are sides of which curve.
pub(crate) fn cut_component_report(
    mesh: &Mesh,
    curves: &MultiCurve,
) -> Result<Vec<ComponentReport>> {
    let (cut, corr) = cut_along(mesh, curves)?;
    let mut reports = cut.component_report();
    let mut original = vec![0usize; reports.len()];
    for rep in reports.iter_mut() {
        rep.curve_copies = vec![0; curves.len()];
        rep.has_original_boundary = false;
    }
    let comp_of_circle: Vec<usize> = cut
        .boundary_circles()
        .iter()
        .map(|c| cut.comp_of_vert(cut.tail(c[0])))
        .collect();
    let mut claimed = vec![false; cut.boundary_circles().len()];
    for (ci, &(a, b)) in corr.circle_pairs.iter().enumerate() {
        for side in [a, b] {
            reports[comp_of_circle[side]].curve_copies[ci] += 1;
            claimed[side] = true;
        }
    }
    for (idx, &comp) in comp_of_circle.iter().enumerate() {
        if !claimed[idx] {
            reports[comp].has_original_boundary = true;
            original[comp] += 1;
        }
    }
    Ok(reports)
}

/// The distinguished complementary piece used by resolution machinery: the
/// unique genus-0 component of the cut surface that avoids the original
/// boundary and touches each of the first two curves exactly once.
#[derive(Clone, Debug)]
pub struct FRegion {
    /// ambient face indices making up the region
    pub faces: Vec<usize>,
    /// per β curve (inputs after the first two): how many of its sides bound
    /// the region (0, 1 or 2)
    pub beta_sides: Vec<usize>,
    pub chi: i64,
    pub boundary_circles: usize,
}

pub fn find_f(mesh: &Mesh, alpha1: &Curve, alpha2: &Curve, betas: &[Curve]) -> Result<FRegion> {
    let mut all = vec![alpha1.clone(), alpha2.clone()];
    all.extend(betas.iter().cloned());
    let mc = MultiCurve::new(mesh, all)?;
    let (cut, _) = cut_along(mesh, &mc)?;
    let reports = cut_component_report(mesh, &mc)?;
    let mut hits = reports.iter().enumerate().filter(|(_, r)| {
        r.genus == 0
            && !r.has_original_boundary
            && r.curve_copies[0] == 1
            && r.curve_copies[1] == 1
    });
    let Some((_, rep)) = hits.next() else {
        return Err(Error::Invalid("no component matches the region conditions".into()));
    };
    if hits.next().is_some() {
        return Err(Error::Invalid("multiple components match the region conditions".into()));
    }
    // cut faces keep their labels and order, so indices transfer to the ambient mesh
    debug_assert_eq!(cut.nfaces(), mesh.nfaces());
    Ok(FRegion {
        faces: rep.faces.clone(),
        beta_sides: rep.curve_copies[2..].to_vec(),
        chi: rep.chi,
        boundary_circles: rep.boundary_circles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn curve(mesh: &Mesh, darts: Vec<Dart>) -> Curve {
        Curve::new(mesh, darts).unwrap()
    }

    #[test]
    fn cut_annulus_along_core_gives_two_annuli() {
        let (m, g) = fixtures::annulus_grid(3, 2);
        let core = curve(&m, g.row_curve(&m, 1));
        let mc = MultiCurve::new(&m, vec![core]).unwrap();
        let (cut, corr) = cut_along(&m, &mc).unwrap();
        assert_eq!(cut.ncomps(), 2);
        assert_eq!(cut.chi(), 0);
        assert_eq!(cut.boundary_circles().len(), 4);
        assert_ne!(corr.circle_pairs[0].0, corr.circle_pairs[0].1);
        for rep in cut.component_report() {
            assert_eq!((rep.chi, rep.genus, rep.boundary_circles), (0, 0, 2));
        }
    }

    #[test]
    fn cut_reports_have_provenance() {
        let (m, g) = fixtures::annulus_grid(3, 2);
        let core = curve(&m, g.row_curve(&m, 1));
        let mc = MultiCurve::new(&m, vec![core]).unwrap();
        let reports = cut_component_report(&m, &mc).unwrap();
        assert_eq!(reports.len(), 2);
        for rep in &reports {
            assert!(rep.has_original_boundary);
            assert_eq!(rep.curve_copies, vec![1]);
        }
    }

    #[test]
    fn cut_torus_along_nonseparating_curve() {
        let (m, g) = fixtures::punctured_torus_grid(4);
        let c = curve(&m, g.row_curve(&m, 2));
        let mc = MultiCurve::new(&m, vec![c]).unwrap();
        let (cut, _) = cut_along(&m, &mc).unwrap();
        assert_eq!(cut.ncomps(), 1);
        assert_eq!(cut.chi(), -1);
        assert_eq!(cut.boundary_circles().len(), 3);
    }

    #[test]
    fn boundary_parallel_cut_isolates_the_torus_part() {
        let (m, g) = fixtures::punctured_torus_grid(5);
        let ring = curve(&m, g.hole_ring_curve(&m));
        let mc = MultiCurve::new(&m, vec![ring]).unwrap();
        let reports = cut_component_report(&m, &mc).unwrap();
        assert_eq!(reports.len(), 2);
        let with_orig: Vec<_> = reports.iter().filter(|r| r.has_original_boundary).collect();
        let without: Vec<_> = reports.iter().filter(|r| !r.has_original_boundary).collect();
        assert_eq!(with_orig.len(), 1);
        assert_eq!(without.len(), 1);
        // annulus between puncture and curve; punctured torus beyond
        assert_eq!((with_orig[0].chi, with_orig[0].genus), (0, 0));
        assert_eq!((without[0].chi, without[0].genus), (-1, 1));
    }

    #[test]
    fn four_holed_sphere_pants_decomposition() {
        let (m, g) = fixtures::four_holed_sphere();
        let around12 = curve(&m, g.rect_curve(&m, 1, 1, 10, 6));
        let mc = MultiCurve::new(&m, vec![around12]).unwrap();
        let reports = cut_component_report(&m, &mc).unwrap();
        assert_eq!(reports.len(), 2);
        for rep in &reports {
            assert_eq!((rep.chi, rep.genus, rep.boundary_circles), (-1, 0, 3));
            assert!(rep.has_original_boundary);
        }
    }

    #[test]
    fn empty_cut_is_identity() {
        let (m, _) = fixtures::annulus_grid(3, 2);
        let (cut, corr) = cut_along(&m, &MultiCurve::empty()).unwrap();
        assert_eq!(cut, m);
        assert!(corr.circle_pairs.is_empty());
    }

    #[test]
    fn surger_torus_gives_disk() {
        let (m, g) = fixtures::punctured_torus_grid(4);
        let c = curve(&m, g.row_curve(&m, 2));
        let mc = MultiCurve::new(&m, vec![c]).unwrap();
        let s = surger(&m, &mc).unwrap();
        assert_eq!(s.chi(), m.chi() + 2);
        let rep = &s.component_report()[0];
        assert_eq!((rep.chi, rep.genus, rep.boundary_circles), (1, 0, 1));
    }

    #[test]
    fn surger_annulus_gives_two_disks() {
        let (m, g) = fixtures::annulus_grid(3, 2);
        let core = curve(&m, g.row_curve(&m, 1));
        let mc = MultiCurve::new(&m, vec![core]).unwrap();
        let s = surger(&m, &mc).unwrap();
        assert_eq!(s.ncomps(), 2);
        for rep in s.component_report() {
            assert_eq!((rep.chi, rep.boundary_circles), (1, 1));
        }
    }

    #[test]
    fn surger_four_holed_sphere_across_middle() {
        let (m, g) = fixtures::four_holed_sphere();
        let around12 = curve(&m, g.rect_curve(&m, 1, 1, 10, 6));
        let mc = MultiCurve::new(&m, vec![around12]).unwrap();
        let s = surger(&m, &mc).unwrap();
        assert_eq!(s.ncomps(), 2);
        // each pants gains a cap: boundary shrinks to two circles per side
        let circles: Vec<usize> =
            s.component_report().iter().map(|r| r.boundary_circles).collect();
        assert_eq!(circles, vec![2, 2]);
        assert_eq!(s.chi(), m.chi() + 2);
    }

    #[test]
    fn find_f_rejects_bands_around_different_holes() {
        let (m, g) = fixtures::four_holed_sphere();
        let a1 = curve(&m, g.rect_curve(&m, 2, 2, 5, 5));
        let a2 = curve(&m, g.rect_curve(&m, 6, 2, 9, 5));
        // every complementary component touches some original boundary
        assert!(find_f(&m, &a1, &a2, &[]).is_err());
    }

    #[test]
    fn find_f_annulus_between_isotopic_curves() {
        let (m, g) = fixtures::four_holed_sphere();
        let a1 = curve(&m, g.rect_curve(&m, 2, 2, 9, 5));
        let a2 = curve(&m, g.rect_curve(&m, 1, 1, 10, 6));
        let f = find_f(&m, &a1, &a2, &[]).unwrap();
        assert_eq!(f.chi, 0);
        assert_eq!(f.boundary_circles, 2);
        assert!(f.beta_sides.is_empty());
    }
}
