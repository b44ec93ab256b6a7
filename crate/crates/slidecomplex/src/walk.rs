//! Boundary walks of ribbon neighborhoods, and their realization as embedded
//! curves after corridor refinement.
//!
//! Given a subgraph K of the 1-skeleton (an edge set whose endpoints are all
//! interior), the boundary of a regular neighborhood of K is read off
//! combinatorially: travel a dart of K, and at its head turn to the first
//! K-dart clockwise from your own reverse. Orbits of that successor are the
//! boundary circles; with K the whole skeleton they are exactly the face
//! words, and with K a single curve they are its two parallel pushoffs.
//!
//! Realization turns a walk into an actual curve on the refined mesh. Each
//! walk dart contributes the inner strip edge of the face on its left; at
//! each corner the route crosses the corridors of the intervening sectors on
//! their `rca`/`rcb` edges, cutting across each non-K edge at its crossing
//! vertex nearest the corner. Every sector around a K-vertex is crossed by
//! exactly one passage of one walk, so distinct walks realize disjointly, and
//! they stay clear of every re-embedded curve whose support avoids K.

use std::collections::BTreeSet;

use crate::surface::{Curve, Dart, Mesh, Refined};
use crate::{Error, Result};

/// One boundary circle of the ribbon neighborhood, as the cyclic dart
/// sequence it runs parallel to (canonical rotation: least dart first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    darts: Vec<Dart>,
}

impl Walk {
    fn new(mut darts: Vec<Dart>) -> Walk {
        let start = darts
            .iter()
            .enumerate()
            .min_by_key(|(i, d)| (**d, *i))
            .map(|(i, _)| i)
            .unwrap();
        darts.rotate_left(start);
        Walk { darts }
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

    pub fn contains_edge(&self, e: usize) -> bool {
        self.darts.iter().any(|d| d.edge() == e)
    }
}

fn check_interior(mesh: &Mesh, kedges: &BTreeSet<usize>) -> Result<()> {
    for &e in kedges {
        let d = Dart::fwd(e);
        if mesh.is_boundary_vertex(mesh.tail(d)) || mesh.is_boundary_vertex(mesh.head(d)) {
            return Err(Error::Invalid(format!(
                "neighborhood edge {} touches the mesh boundary",
                mesh.edge_label(e)
            )));
        }
    }
    Ok(())
}

/// First K-dart clockwise from `rev(d)` around `head(d)`, wrapping back to
/// `rev(d)` itself at a dead end.
fn walk_next(mesh: &Mesh, kedges: &BTreeSet<usize>, d: Dart) -> Dart {
    let v = mesh.head(d);
    let out = mesh.out_darts(v);
    let m = out.len();
    let a = mesh.rot_pos(d.rev());
    debug_assert_eq!(out[a], d.rev());
    for t in 1..=m {
        let cand = out[(a + m - t) % m];
        if kedges.contains(&cand.edge()) {
            return cand;
        }
    }
    unreachable!("rev(d) itself is a K-dart");
}

/// All boundary circles of a regular neighborhood of the edge set.
pub fn boundary_walks(mesh: &Mesh, kedges: &BTreeSet<usize>) -> Result<Vec<Walk>> {
    check_interior(mesh, kedges)?;
    let mut walks = Vec::new();
    let mut seen = BTreeSet::new();
    for &e in kedges {
        for d0 in [Dart::fwd(e), Dart::fwd(e).rev()] {
            if seen.contains(&d0) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut cur = d0;
            loop {
                if !seen.insert(cur) {
                    return Err(Error::Internal("walk successor is not a bijection".into()));
                }
                orbit.push(cur);
                cur = walk_next(mesh, kedges, cur);
                if cur == d0 {
                    break;
                }
            }
            walks.push(Walk::new(orbit));
        }
    }
    Ok(walks)
}

/// Faces whose refinement the realization of any walk of `kedges` needs:
/// everything incident to a K-vertex.
pub fn realization_region(mesh: &Mesh, kedges: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut kverts = BTreeSet::new();
    for &e in kedges {
        kverts.insert(mesh.tail(Dart::fwd(e)));
        kverts.insert(mesh.head(Dart::fwd(e)));
    }
    (0..mesh.nfaces())
        .filter(|&f| mesh.face_verts(f).iter().any(|v| kverts.contains(v)))
        .collect()
}

/// Embed a walk on the refined mesh. `refined` must come from refining
/// `base` over at least [`realization_region`] of the walk's edge set.
pub fn realize_walk(
    base: &Mesh,
    refined: &Refined,
    kedges: &BTreeSet<usize>,
    walk: &Walk,
) -> Result<Curve> {
    let fine = &refined.mesh;
    let strip = |f: usize, p: usize| -> Result<usize> {
        fine.find_edge(&base.face(f).label.child2(3, p as u32))
            .ok_or_else(|| Error::Invalid("walk leaves the refined region".into()))
    };
    let rca = |f: usize, p: usize| -> Result<usize> {
        fine.find_edge(&base.face(f).label.child2(4, p as u32))
            .ok_or_else(|| Error::Invalid("walk leaves the refined region".into()))
    };
    let rcb = |f: usize, p: usize| -> Result<usize> {
        fine.find_edge(&base.face(f).label.child2(5, p as u32))
            .ok_or_else(|| Error::Invalid("walk leaves the refined region".into()))
    };
    let slot = |d: Dart| -> Result<(usize, usize)> {
        match (base.face_of(d), base.pos_in_face(d)) {
            (Some(f), Some(p)) => Ok((f, p)),
            _ => Err(Error::Invalid("walk dart without a face on its left".into())),
        }
    };

    let n = walk.len();
    let mut darts: Vec<Dart> = Vec::new();
    for (idx, &d) in walk.darts().iter().enumerate() {
        let (f, p) = slot(d)?;
        darts.push(Dart::fwd(strip(f, p)?));

        let d_next = walk.darts()[(idx + 1) % n];
        let v = base.head(d);
        let out = base.out_darts(v);
        let m = out.len();
        let a = base.rot_pos(d.rev());
        // sectors clockwise from rev(d) up to and including the one of d_next
        let mut crossed: Vec<Dart> = Vec::new();
        for t in 1..=m {
            let g = out[(a + m - t) % m];
            crossed.push(g);
            if kedges.contains(&g.edge()) {
                break;
            }
        }
        if *crossed.last().unwrap() != d_next {
            return Err(Error::Internal("walk successor mismatch during realization".into()));
        }
        if crossed.len() == 1 {
            continue; // next strip starts at the same inner corner
        }
        darts.push(Dart::new(rca(f, p)?, true));
        for g in &crossed[1..] {
            let (gf, gp) = slot(*g)?;
            let k = base.face(gf).word.len();
            let corner = (gp + k - 1) % k;
            darts.push(Dart::new(rcb(gf, corner)?, true));
            if *g != d_next {
                darts.push(Dart::new(rca(gf, corner)?, true));
            }
        }
    }
    Curve::new(fine, darts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Chart;
    use crate::fixtures;
    use crate::surface::MultiCurve;

    fn edge_set(curves: &[&Curve], extra: &[usize]) -> BTreeSet<usize> {
        let mut k: BTreeSet<usize> = extra.iter().copied().collect();
        for c in curves {
            k.extend(c.edges());
        }
        k
    }

    #[test]
    fn single_curve_has_two_pushoffs() {
        let (m, g) = fixtures::annulus_grid(4, 3);
        let core = Curve::new(&m, g.row_curve(&m, 1)).unwrap();
        let k = edge_set(&[&core], &[]);
        let walks = boundary_walks(&m, &k).unwrap();
        assert_eq!(walks.len(), 2);
        // one walk runs along the curve's own darts, the other against them
        let own: Vec<bool> =
            walks.iter().map(|w| core.darts().iter().all(|d| w.darts().contains(d))).collect();
        assert_eq!(own.iter().filter(|b| **b).count(), 1);

        let chart = Chart::new(&m);
        let (fine, r) = chart.refine_faces(&realization_region(&m, &k));
        let lifted = r.map_curve(&core).unwrap();
        let mut all = vec![lifted];
        for w in &walks {
            let c = realize_walk(&m, &r, &k, w).unwrap();
            assert_eq!(fine.key(&c), chart.key(&core));
            all.push(c);
        }
        // pushoffs avoid the re-embedded curve and each other
        assert!(MultiCurve::new(fine.mesh(), all).is_ok());
    }

    #[test]
    fn dumbbell_walks_form_a_pants() {
        let (m, g) = fixtures::four_holed_sphere();
        let c1 = Curve::new(&m, g.rect_curve(&m, 2, 2, 5, 5)).unwrap();
        let c2 = Curve::new(&m, g.rect_curve(&m, 6, 2, 9, 5)).unwrap();
        let bridge = g.h_edge(5, 3);
        let k = edge_set(&[&c1, &c2], &[bridge]);
        let walks = boundary_walks(&m, &k).unwrap();
        assert_eq!(walks.len(), 3);

        let with_bridge: Vec<&Walk> =
            walks.iter().filter(|w| w.contains_edge(bridge)).collect();
        assert_eq!(with_bridge.len(), 1);
        let outer = with_bridge[0];
        // the outer walk runs along the bridge once in each direction
        assert_eq!(
            outer.darts().iter().filter(|d| d.edge() == bridge).count(),
            2
        );

        let chart = Chart::new(&m);
        let (fine, r) = chart.refine_faces(&realization_region(&m, &k));
        let realized = realize_walk(&m, &r, &k, outer).unwrap();
        // sliding one hole band over the other yields the band around both
        let both = Curve::new(&m, g.rect_curve(&m, 1, 1, 10, 6)).unwrap();
        assert_eq!(fine.key(&realized), chart.key(&both));

        // inner walks reproduce the two bands; everything stays disjoint
        let mut all = vec![r.map_curve(&c1).unwrap(), r.map_curve(&c2).unwrap(), realized];
        for w in walks.iter().filter(|w| !w.contains_edge(bridge)) {
            let c = realize_walk(&m, &r, &k, w).unwrap();
            let key = fine.key(&c);
            assert!(key == chart.key(&c1) || key == chart.key(&c2));
            all.push(c);
        }
        assert_eq!(all.len(), 5);
        assert!(MultiCurve::new(fine.mesh(), all).is_ok());
    }

    #[test]
    fn dead_end_doubles_back() {
        let (m, g) = fixtures::annulus_grid(4, 3);
        let core = Curve::new(&m, g.row_curve(&m, 1)).unwrap();
        let finger = g.v_edge(0, 1);
        let k = edge_set(&[&core], &[finger]);
        let walks = boundary_walks(&m, &k).unwrap();
        assert_eq!(walks.len(), 2);
        let outer = walks.iter().find(|w| w.contains_edge(finger)).unwrap();
        assert_eq!(
            outer.darts().iter().filter(|d| d.edge() == finger).count(),
            2
        );
        let chart = Chart::new(&m);
        let (fine, r) = chart.refine_faces(&realization_region(&m, &k));
        let c = realize_walk(&m, &r, &k, outer).unwrap();
        assert_eq!(fine.key(&c), chart.key(&core));
    }

    #[test]
    fn boundary_touching_sets_are_rejected() {
        let (m, g) = fixtures::annulus_grid(4, 3);
        let k = BTreeSet::from([g.h_edge(0, 0)]);
        assert!(boundary_walks(&m, &k).is_err());
    }

    #[test]
    fn region_covers_walk_needs() {
        let (m, g) = fixtures::four_holed_sphere();
        let c1 = Curve::new(&m, g.rect_curve(&m, 2, 2, 5, 5)).unwrap();
        let k = edge_set(&[&c1], &[]);
        let region = realization_region(&m, &k);
        // sixteen cells ring the hole cell under this band
        assert!(region.len() >= 16);
        assert!(!region.contains(&g.face(0, 0).unwrap()));
    }
}
