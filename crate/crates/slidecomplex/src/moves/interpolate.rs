//! Straightening one properly embedded arc onto another across a cylinder.
//!
//! Both arcs join the two boundary circles and meet transversally. Each
//! step picks a pair of crossings adjacent along both arcs (or an end
//! crossing first along both, with the two loose endpoints on one circle)
//! and replaces the moving arc by a parallel pushoff of itself rerouted
//! along the fixed arc between them. A push is accepted only when the
//! pushed arc embeds, stays off the arc it replaces, and removes exactly
//! the chosen crossings; which side to push is found by trying both.
//!
//! The result is the full sequence of stages, consecutive stages disjoint,
//! starting at the moving arc and ending at the fixed one, all transported
//! onto the common refined chart.

use std::collections::{BTreeMap, BTreeSet};

use crate::chart::Chart;
use crate::surface::{Dart, Mesh, Refined};
use crate::walk;
use crate::{Error, Result};

use super::path_vertices;

/// Properly embedded arc: a chained dart path with boundary endpoints,
/// interior off the boundary, pairwise distinct vertices, clear of marked
/// faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperArc {
    darts: Vec<Dart>,
}

impl ProperArc {
    pub fn new(mesh: &Mesh, darts: Vec<Dart>) -> Result<ProperArc> {
        if darts.is_empty() {
            return Err(Error::BadCurve("empty arc".into()));
        }
        for (k, d) in darts.iter().enumerate() {
            if d.index() >= mesh.ndarts() {
                return Err(Error::BadCurve(format!("dart {d:?} outside mesh")));
            }
            if k + 1 < darts.len() && mesh.head(*d) != mesh.tail(darts[k + 1]) {
                return Err(Error::BadCurve(format!(
                    "darts {:?} and {:?} do not chain",
                    d,
                    darts[k + 1]
                )));
            }
            if mesh.is_boundary_edge(d.edge()) {
                return Err(Error::BadCurve(format!(
                    "edge {} lies on the boundary",
                    d.edge()
                )));
            }
        }
        let vs = path_vertices(mesh, &darts);
        let mut seen = BTreeSet::new();
        for (t, &v) in vs.iter().enumerate() {
            if !seen.insert(v) {
                return Err(Error::BadCurve("arc revisits a vertex".into()));
            }
            let end = t == 0 || t == vs.len() - 1;
            if end != mesh.is_boundary_vertex(v) {
                return Err(Error::BadCurve(if end {
                    "arc endpoint is not on the boundary".into()
                } else {
                    "arc interior touches the boundary".into()
                }));
            }
        }
        let edges: BTreeSet<usize> = darts.iter().map(|d| d.edge()).collect();
        for f in mesh.marked_faces() {
            for d in &mesh.face(f).word {
                if edges.contains(&d.edge()) || seen.contains(&mesh.tail(*d)) {
                    return Err(Error::BadCurve(format!(
                        "arc touches marked face {}",
                        mesh.face(f).label
                    )));
                }
            }
        }
        Ok(ProperArc { darts })
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn vertices(&self, mesh: &Mesh) -> Vec<usize> {
        path_vertices(mesh, &self.darts)
    }

    pub fn edge_set(&self) -> BTreeSet<usize> {
        self.darts.iter().map(|d| d.edge()).collect()
    }

    pub fn tail(&self, mesh: &Mesh) -> usize {
        mesh.tail(self.darts[0])
    }

    pub fn head(&self, mesh: &Mesh) -> usize {
        mesh.head(*self.darts.last().unwrap())
    }

    pub fn reversed(&self) -> ProperArc {
        ProperArc {
            darts: self.darts.iter().rev().map(|d| d.rev()).collect(),
        }
    }

    pub fn mapped(&self, r: &Refined) -> Result<ProperArc> {
        ProperArc::new(&r.mesh, r.map_darts(&self.darts))
    }
}

/// The straightening sequence: `arcs[0]` is the moving arc, the last entry
/// the fixed one, all on `chart`; `steps` holds the refinement taken for
/// each push.
pub struct Interpolation {
    pub chart: Chart,
    pub steps: Vec<Refined>,
    pub arcs: Vec<ProperArc>,
}

struct Crossing {
    pos_a: usize,
    pos_b: usize,
}

fn circle_of(mesh: &Mesh, v: usize) -> Result<usize> {
    mesh.boundary_circles()
        .iter()
        .position(|c| c.iter().any(|d| mesh.tail(*d) == v))
        .ok_or_else(|| Error::Invalid("arc endpoint misses the boundary circles".into()))
}

/// Shared vertices of two arcs, validated transverse and interior to both.
fn crossings(mesh: &Mesh, a: &ProperArc, b: &ProperArc) -> Result<Vec<Crossing>> {
    if !a.edge_set().is_disjoint(&b.edge_set()) {
        return Err(Error::Invalid("arcs share an edge".into()));
    }
    let vb: BTreeMap<usize, usize> = b
        .vertices(mesh)
        .into_iter()
        .enumerate()
        .map(|(t, v)| (v, t))
        .collect();
    let va = a.vertices(mesh);
    let mut out = Vec::new();
    for (t, v) in va.iter().enumerate() {
        let Some(&u) = vb.get(v) else { continue };
        if t == 0 || t == va.len() - 1 || u == 0 || u == b.len() {
            return Err(Error::Invalid("arcs share an endpoint".into()));
        }
        let sa = [a.darts[t - 1].rev(), a.darts[t]];
        let sb = [b.darts[u - 1].rev(), b.darts[u]];
        let marks: Vec<bool> = mesh
            .out_darts(*v)
            .iter()
            .filter_map(|g| {
                if sa.contains(g) {
                    Some(false)
                } else if sb.contains(g) {
                    Some(true)
                } else {
                    None
                }
            })
            .collect();
        if marks.len() != 4 || marks[0] == marks[1] || marks[1] == marks[2] {
            return Err(Error::Invalid("arcs meet non-transversally".into()));
        }
        out.push(Crossing { pos_a: t, pos_b: u });
    }
    Ok(out)
}

/// Parallel pushoff of an embedded boundary-to-boundary path, on the left
/// of its orientation, entering and leaving through the boundary one third
/// away from the path's endpoints.
fn route_parallel(base: &Mesh, refined: &Refined, path: &[Dart]) -> Result<Vec<Dart>> {
    let fine = &refined.mesh;
    let lookup = |kind: u32, f: usize, p: usize| -> Result<usize> {
        fine.find_edge(&base.face(f).label.child2(kind, p as u32))
            .ok_or_else(|| Error::Invalid("pushed path leaves the refined region".into()))
    };
    let slot = |d: Dart| -> Result<(usize, usize)> {
        match (base.face_of(d), base.pos_in_face(d)) {
            (Some(f), Some(p)) => Ok((f, p)),
            _ => Err(Error::Invalid("path dart without a face on its left".into())),
        }
    };
    let kedges: BTreeSet<usize> = path.iter().map(|d| d.edge()).collect();

    // corner-cell legs clockwise from rev(d) up to the first dart matching
    // the stop condition; `through` adds the final cell's exit leg (used
    // when the pushoff crosses the final edge instead of turning onto it)
    let cross = |darts: &mut Vec<Dart>, d: Dart, to_boundary: bool, through: bool| -> Result<Dart> {
        let ring = base.out_darts(base.head(d));
        let m = ring.len();
        let a = base.rot_pos(d.rev());
        let mut crossed: Vec<Dart> = Vec::new();
        for t in 1..=m {
            let g = ring[(a + m - t) % m];
            crossed.push(g);
            let hit = if to_boundary {
                base.is_boundary_edge(g.edge())
            } else {
                kedges.contains(&g.edge())
            };
            if hit {
                break;
            }
        }
        let last = *crossed.last().unwrap();
        let hit = if to_boundary {
            base.is_boundary_edge(last.edge())
        } else {
            kedges.contains(&last.edge())
        };
        if !hit {
            return Err(Error::Internal("pushed path crossing never lands".into()));
        }
        if crossed.len() == 1 && !through {
            return Ok(last); // next strip starts at the same inner corner
        }
        let (f, p) = slot(d)?;
        darts.push(Dart::new(lookup(4, f, p)?, true));
        for g in &crossed[1..] {
            let (gf, gp) = slot(*g)?;
            let k = base.face(gf).word.len();
            let c = (gp + k - 1) % k;
            darts.push(Dart::new(lookup(5, gf, c)?, true));
            if *g != last || through {
                darts.push(Dart::new(lookup(4, gf, c)?, true));
            }
        }
        Ok(last)
    };

    let mut darts: Vec<Dart> = Vec::new();
    let tail = base.tail(path[0]);
    let free = *base.out_darts(tail).last().unwrap();
    if base.face_of(free).is_some() {
        return Err(Error::Invalid("path does not start on the boundary".into()));
    }
    let d_in = free.rev();
    let (f0, p0) = slot(d_in)?;
    darts.push(Dart::new(lookup(5, f0, p0)?, true));
    if cross(&mut darts, d_in, false, false)? != path[0] {
        return Err(Error::Internal("entry crossing misses the path".into()));
    }
    for (t, &d) in path.iter().enumerate() {
        let (f, p) = slot(d)?;
        darts.push(Dart::fwd(lookup(3, f, p)?));
        if t + 1 < path.len() && cross(&mut darts, d, false, false)? != path[t + 1] {
            return Err(Error::Internal("pushed path loses its shadow".into()));
        }
    }
    cross(&mut darts, *path.last().unwrap(), true, true)?;
    Ok(darts)
}

fn reversed(darts: &[Dart]) -> Vec<Dart> {
    darts.iter().rev().map(|d| d.rev()).collect()
}

/// Reroutings of `cur` along `tgt`, each with the crossing count it must
/// remove: between crossing pairs adjacent along both arcs, and around end
/// crossings first along both arcs when the freed endpoints share a circle.
fn shadow_candidates(
    mesh: &Mesh,
    cur: &ProperArc,
    tgt: &ProperArc,
    cr: &[Crossing],
) -> Result<Vec<(Vec<Dart>, usize)>> {
    let mut out: Vec<(Vec<Dart>, usize)> = Vec::new();
    let mut ranks: Vec<usize> = (0..cr.len()).collect();
    ranks.sort_by_key(|&i| cr[i].pos_b);
    let mut rank_b = vec![0usize; cr.len()];
    for (r, &i) in ranks.iter().enumerate() {
        rank_b[i] = r;
    }

    for i in 0..cr.len().saturating_sub(1) {
        let (c1, c2) = (&cr[i], &cr[i + 1]);
        if rank_b[i].abs_diff(rank_b[i + 1]) != 1 {
            continue;
        }
        let seg = if c1.pos_b < c2.pos_b {
            tgt.darts[c1.pos_b..c2.pos_b].to_vec()
        } else {
            reversed(&tgt.darts[c2.pos_b..c1.pos_b])
        };
        let mut shadow = cur.darts[..c1.pos_a].to_vec();
        shadow.extend(seg);
        shadow.extend_from_slice(&cur.darts[c2.pos_a..]);
        out.push((shadow, 2));
    }

    let circle = |v: usize| circle_of(mesh, v);
    let first = &cr[0];
    if rank_b[0] == 0 && circle(cur.tail(mesh))? == circle(tgt.tail(mesh))? {
        let mut shadow = tgt.darts[..first.pos_b].to_vec();
        shadow.extend_from_slice(&cur.darts[first.pos_a..]);
        out.push((shadow, 1));
    }
    if rank_b[0] == cr.len() - 1 && circle(cur.tail(mesh))? == circle(tgt.head(mesh))? {
        let mut shadow = reversed(&tgt.darts[first.pos_b..]);
        shadow.extend_from_slice(&cur.darts[first.pos_a..]);
        out.push((shadow, 1));
    }
    let last = &cr[cr.len() - 1];
    if rank_b[cr.len() - 1] == cr.len() - 1 && circle(cur.head(mesh))? == circle(tgt.head(mesh))? {
        let mut shadow = cur.darts[..last.pos_a].to_vec();
        shadow.extend_from_slice(&tgt.darts[last.pos_b..]);
        out.push((shadow, 1));
    }
    if rank_b[cr.len() - 1] == 0 && circle(cur.head(mesh))? == circle(tgt.tail(mesh))? {
        let mut shadow = cur.darts[..last.pos_a].to_vec();
        shadow.extend(reversed(&tgt.darts[..last.pos_b]));
        out.push((shadow, 1));
    }
    Ok(out)
}

/// Deform `start` onto `target` across a cylinder, one crossing pair (or
/// end crossing) at a time.
pub fn arc_interpolation(
    chart: &Chart,
    start: &ProperArc,
    target: &ProperArc,
) -> Result<Interpolation> {
    let mesh = chart.mesh();
    if mesh.ncomps() != 1 || mesh.chi() != 0 || mesh.boundary_circles().len() != 2 {
        return Err(Error::Invalid(
            "arc interpolation needs a connected two-ended cylinder".into(),
        ));
    }
    let start = ProperArc::new(mesh, start.darts.clone())?;
    let target = ProperArc::new(mesh, target.darts.clone())?;
    for arc in [&start, &target] {
        if circle_of(mesh, arc.tail(mesh))? == circle_of(mesh, arc.head(mesh))? {
            return Err(Error::Invalid(
                "arc does not join the two boundary circles".into(),
            ));
        }
    }

    let mut chart = chart.clone();
    let mut steps: Vec<Refined> = Vec::new();
    let mut arcs: Vec<ProperArc> = vec![start.clone()];
    let mut cur = start;
    let mut tgt = target;
    if cur.edge_set() == tgt.edge_set() {
        arcs.push(tgt);
        return Ok(Interpolation { chart, steps, arcs });
    }
    loop {
        let cr = crossings(chart.mesh(), &cur, &tgt)?;
        if cr.is_empty() {
            break;
        }
        let n_before = cr.len();
        let cands = shadow_candidates(chart.mesh(), &cur, &tgt, &cr)?;
        let mut applied = false;
        'cand: for (shadow, drop) in cands {
            for path in [shadow.clone(), reversed(&shadow)] {
                let kedges: BTreeSet<usize> = path.iter().map(|d| d.edge()).collect();
                let region = walk::realization_region(chart.mesh(), &kedges);
                let (next_chart, refined) = chart.refine_faces(&region);
                let Ok(pushed_darts) = route_parallel(chart.mesh(), &refined, &path) else {
                    continue;
                };
                let Ok(pushed) = ProperArc::new(next_chart.mesh(), pushed_darts) else {
                    continue;
                };
                let cur2 = cur.mapped(&refined)?;
                let tgt2 = tgt.mapped(&refined)?;
                let Ok(cr2) = crossings(next_chart.mesh(), &pushed, &tgt2) else {
                    continue;
                };
                if cr2.len() + drop != n_before {
                    continue;
                }
                let old: BTreeSet<usize> = cur2.vertices(next_chart.mesh()).into_iter().collect();
                if pushed
                    .vertices(next_chart.mesh())
                    .iter()
                    .any(|v| old.contains(v))
                {
                    continue;
                }
                for a in &mut arcs {
                    *a = a.mapped(&refined)?;
                }
                arcs.push(pushed.clone());
                cur = pushed;
                tgt = tgt2;
                steps.push(refined);
                chart = next_chart;
                applied = true;
                break 'cand;
            }
        }
        if !applied {
            return Err(Error::Internal(
                "no reducing move although the arcs still cross".into(),
            ));
        }
    }
    arcs.push(tgt.clone());
    Ok(Interpolation { chart, steps, arcs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{annulus_grid, annulus_grid_marked, disk_grid};

    fn vline(g: &crate::fixtures::Grid, c: usize, rows: usize) -> Vec<Dart> {
        (0..rows).map(|r| Dart::fwd(g.v_edge(c, r))).collect()
    }

    fn disjoint(mesh: &Mesh, a: &ProperArc, b: &ProperArc) -> bool {
        let va: BTreeSet<usize> = a.vertices(mesh).into_iter().collect();
        b.vertices(mesh).iter().all(|v| !va.contains(v))
    }

    #[test]
    fn arc_validation_rejects_bad_paths() {
        let (mesh, g) = annulus_grid(6, 3);
        assert!(ProperArc::new(&mesh, vline(&g, 1, 3)).is_ok());
        assert!(ProperArc::new(&mesh, vec![]).is_err());
        // stops short of the far boundary
        assert!(ProperArc::new(&mesh, vline(&g, 1, 2)).is_err());
        // runs along the boundary circle
        let along = vec![Dart::fwd(g.h_edge(1, 0))];
        assert!(ProperArc::new(&mesh, along).is_err());
        // marked cell blocks arcs through its corners
        let (mesh, g) = annulus_grid_marked(6, 3, &[(0, 1)]);
        assert!(ProperArc::new(&mesh, vline(&g, 1, 3)).is_err());
        assert!(ProperArc::new(&mesh, vline(&g, 3, 3)).is_ok());
    }

    #[test]
    fn disjoint_arcs_interpolate_in_one_hop() {
        let (mesh, g) = annulus_grid(6, 3);
        let chart = Chart::new(&mesh);
        let a = ProperArc::new(chart.mesh(), vline(&g, 1, 3)).unwrap();
        let b = ProperArc::new(chart.mesh(), vline(&g, 4, 3)).unwrap();
        let interp = arc_interpolation(&chart, &a, &b).unwrap();
        assert_eq!(interp.arcs.len(), 2);
        assert!(interp.steps.is_empty());
        assert_eq!(interp.arcs[0], a);
        assert_eq!(interp.arcs[1], b);
    }

    #[test]
    fn equal_arcs_interpolate_trivially() {
        let (mesh, g) = annulus_grid(6, 3);
        let chart = Chart::new(&mesh);
        let a = ProperArc::new(chart.mesh(), vline(&g, 2, 3)).unwrap();
        let interp = arc_interpolation(&chart, &a, &a.reversed()).unwrap();
        assert_eq!(interp.arcs.len(), 2);
        assert!(interp.steps.is_empty());
    }

    #[test]
    fn one_crossing_needs_one_push() {
        // the two arcs cross once at (2,2); one reroute around an end
        // crossing must resolve it, and only one pushoff side is clean
        let (mesh, g) = annulus_grid(6, 4);
        let chart = Chart::new(&mesh);
        let a = ProperArc::new(chart.mesh(), vline(&g, 2, 4)).unwrap();
        let b = ProperArc::new(
            chart.mesh(),
            vec![
                Dart::fwd(g.v_edge(3, 0)),
                Dart::fwd(g.v_edge(3, 1)),
                Dart::fwd(g.h_edge(2, 2)).rev(),
                Dart::fwd(g.h_edge(1, 2)).rev(),
                Dart::fwd(g.v_edge(1, 2)),
                Dart::fwd(g.v_edge(1, 3)),
            ],
        )
        .unwrap();
        assert_eq!(crossings(chart.mesh(), &a, &b).unwrap().len(), 1);

        let interp = arc_interpolation(&chart, &a, &b).unwrap();
        assert_eq!(interp.arcs.len(), 3);
        assert_eq!(interp.steps.len(), 1);
        let mesh = interp.chart.mesh();
        assert!(disjoint(mesh, &interp.arcs[0], &interp.arcs[1]));
        assert!(disjoint(mesh, &interp.arcs[1], &interp.arcs[2]));
        assert_eq!(
            interp.arcs[2].darts(),
            &interp.steps[0].map_darts(b.darts())[..]
        );
        assert_eq!(
            interp.arcs[0].darts(),
            &interp.steps[0].map_darts(a.darts())[..]
        );
    }

    #[test]
    fn interpolation_rejects_wrong_surfaces() {
        let (mesh, g) = disk_grid(3, 3);
        let chart = Chart::new(&mesh);
        let a = ProperArc::new(chart.mesh(), vline(&g, 1, 3)).unwrap();
        let b = ProperArc::new(chart.mesh(), vline(&g, 2, 3)).unwrap();
        assert!(arc_interpolation(&chart, &a, &b).is_err());

        // an arc with both ends on one circle is rejected on the annulus
        let (mesh, g) = annulus_grid(6, 3);
        let chart = Chart::new(&mesh);
        let hook = ProperArc::new(
            chart.mesh(),
            vec![
                Dart::fwd(g.v_edge(1, 0)),
                Dart::fwd(g.h_edge(1, 1)),
                Dart::fwd(g.v_edge(2, 0)).rev(),
            ],
        )
        .unwrap();
        let line = ProperArc::new(chart.mesh(), vline(&g, 4, 3)).unwrap();
        assert!(arc_interpolation(&chart, &hook, &line).is_err());
    }
}
