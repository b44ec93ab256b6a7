//! Handleslides and the slide-edge machinery built on them: guiding arcs,
//! slide realization, bounded neighbor enumeration, simple-move recognition,
//! and replayable witnesses.
//!
//! A slide replaces the slid curve by the third boundary walk of a ribbon
//! neighborhood of slid ∪ arc ∪ over. For two disjoint embedded curves
//! joined by an embedded arc the neighborhood is always a pair of pants:
//! it deformation-retracts to a wedge of two circles (χ = -1), and the two
//! cuffs that avoid the arc are pushoffs of the two curves, leaving exactly
//! one walk that runs along the arc. A walk count other than three is
//! therefore an internal error, not a user error.

use std::collections::{BTreeMap, BTreeSet};

use crate::chart::Chart;
use crate::exec;
use crate::pi1::{CurveKey, CutSystemKey};
use crate::surface::{Curve, Dart, Mesh, MultiCurve, Refined};
use crate::walk;
use crate::{Error, Result};

mod classify;
mod interpolate;

pub use classify::{
    classify_loop, detect_self_separated_square, verify_loop, ClassifiedLoop, LoopKind,
    LoopWitness,
};
pub(crate) use classify::{arcs_disjoint, derive_pentagon, derive_square, derive_triangle};
pub use interpolate::{arc_interpolation, Interpolation, ProperArc};

/// Guiding arc for a handleslide: a chained dart path whose vertices are
/// pairwise distinct, off the boundary, and clear of marked faces. Which
/// curves the endpoints must touch is a property of a concrete system and
/// is checked by [`SlideArc::validate_for`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SlideArc {
    darts: Vec<Dart>,
}

fn path_vertices(mesh: &Mesh, darts: &[Dart]) -> Vec<usize> {
    let mut vs: Vec<usize> = darts.iter().map(|d| mesh.tail(*d)).collect();
    vs.push(mesh.head(*darts.last().expect("nonempty path")));
    vs
}

impl SlideArc {
    pub fn new(mesh: &Mesh, darts: Vec<Dart>) -> Result<SlideArc> {
        if darts.is_empty() {
            return Err(Error::BadCurve("empty slide arc".into()));
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
        }
        let mut verts = BTreeSet::new();
        for v in path_vertices(mesh, &darts) {
            if !verts.insert(v) {
                return Err(Error::BadCurve("arc revisits a vertex".into()));
            }
            if mesh.is_boundary_vertex(v) {
                return Err(Error::BadCurve(
                    "arc passes through a boundary vertex".into(),
                ));
            }
        }
        let edges: BTreeSet<usize> = darts.iter().map(|d| d.edge()).collect();
        if edges.len() != darts.len() {
            return Err(Error::BadCurve("arc repeats an edge".into()));
        }
        for f in mesh.marked_faces() {
            for d in &mesh.face(f).word {
                if edges.contains(&d.edge()) || verts.contains(&mesh.tail(*d)) {
                    return Err(Error::BadCurve(format!(
                        "arc touches marked face {}",
                        mesh.face(f).label
                    )));
                }
            }
        }
        Ok(SlideArc { darts })
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
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

    pub fn vertices(&self, mesh: &Mesh) -> Vec<usize> {
        path_vertices(mesh, &self.darts)
    }

    pub fn reversed(&self) -> SlideArc {
        SlideArc {
            darts: self.darts.iter().rev().map(|d| d.rev()).collect(),
        }
    }

    /// Image on a refinement of the mesh the arc lives on.
    pub fn mapped(&self, r: &Refined) -> Result<SlideArc> {
        SlideArc::new(&r.mesh, r.map_darts(&self.darts))
    }

    /// Endpoint and interior incidences against a concrete system: tail on
    /// `system[slid]`, head on `system[over]`, interior clear of every curve.
    pub fn validate_for(
        &self,
        mesh: &Mesh,
        system: &MultiCurve,
        slid: usize,
        over: usize,
    ) -> Result<()> {
        if slid >= system.len() || over >= system.len() {
            return Err(Error::Invalid("slide index outside the system".into()));
        }
        if slid == over {
            return Err(Error::Invalid("a curve cannot slide over itself".into()));
        }
        let vs = path_vertices(mesh, &self.darts);
        let on = |k: usize, v: usize| system.get(k).vertices(mesh).contains(&v);
        if !on(slid, vs[0]) {
            return Err(Error::Invalid("arc tail misses the slid curve".into()));
        }
        if !on(over, *vs.last().unwrap()) {
            return Err(Error::Invalid("arc head misses the curve slid over".into()));
        }
        for &v in &vs[1..vs.len() - 1] {
            if (0..system.len()).any(|k| on(k, v)) {
                return Err(Error::Invalid("arc interior touches a curve".into()));
            }
        }
        Ok(())
    }
}

/// Outcome of one handleslide: the chart it was realized on, the refinement
/// step from the input chart, and the new system (slid slot replaced, every
/// other curve mapped forward).
pub struct SlideResult {
    pub chart: Chart,
    pub refined: Refined,
    pub system: MultiCurve,
}

/// Slide `system[slid]` over `system[over]` along `arc`.
pub fn handleslide(
    chart: &Chart,
    system: &MultiCurve,
    slid: usize,
    over: usize,
    arc: &SlideArc,
) -> Result<SlideResult> {
    let base = chart.mesh();
    arc.validate_for(base, system, slid, over)?;
    let mut kedges = arc.edge_set();
    kedges.extend(system.get(slid).edges());
    kedges.extend(system.get(over).edges());
    let walks = walk::boundary_walks(base, &kedges)?;
    if walks.len() != 3 {
        return Err(Error::Internal(format!(
            "slide neighborhood bounded by {} walks instead of 3",
            walks.len()
        )));
    }
    let lead = arc.darts()[0].edge();
    let third = walks
        .iter()
        .find(|w| w.contains_edge(lead))
        .ok_or_else(|| Error::Internal("no boundary walk runs along the arc".into()))?;
    let region = walk::realization_region(base, &kedges);
    let (fine, refined) = chart.refine_faces(&region);
    let new_curve = walk::realize_walk(base, &refined, &kedges, third)?;
    let curves = system
        .iter()
        .enumerate()
        .map(|(idx, c)| {
            if idx == slid {
                Ok(new_curve.clone())
            } else {
                refined.map_curve(c)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let out = MultiCurve::new(fine.mesh(), curves)?;
    Ok(SlideResult {
        chart: fine,
        refined,
        system: out,
    })
}

/// Everything needed to re-run one slide: the concrete system it started
/// from, which slot slid over which, and the guiding arc.
#[derive(Clone, Debug)]
pub struct SlideWitness {
    pub system: MultiCurve,
    pub slid: usize,
    pub over: usize,
    pub arc: SlideArc,
}

impl SlideWitness {
    pub fn mapped(&self, r: &Refined) -> Result<SlideWitness> {
        let curves = self
            .system
            .iter()
            .map(|c| r.map_curve(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(SlideWitness {
            system: MultiCurve::new(&r.mesh, curves)?,
            slid: self.slid,
            over: self.over,
            arc: self.arc.mapped(r)?,
        })
    }
}

/// Directed edge of the slide graph, identified by endpoint keys and backed
/// by a witness any consumer can replay.
#[derive(Clone, Debug)]
pub struct SlideEdge {
    pub source: CutSystemKey,
    pub target: CutSystemKey,
    pub result_key: CurveKey,
    pub witness: SlideWitness,
}

impl SlideEdge {
    /// Re-run the slide and confirm it reproduces the recorded keys.
    pub fn replay(&self, chart: &Chart) -> Result<SlideResult> {
        let w = &self.witness;
        if chart.system_key(&w.system) != self.source {
            return Err(Error::BadCertificate(
                "witness system does not match the edge source".into(),
            ));
        }
        let res = handleslide(chart, &w.system, w.slid, w.over, &w.arc)?;
        if res.chart.key(res.system.get(w.slid)) != self.result_key {
            return Err(Error::BadCertificate(
                "replayed slide yields a different curve class".into(),
            ));
        }
        if res.chart.system_key(&res.system) != self.target {
            return Err(Error::BadCertificate(
                "replayed slide does not reach the edge target".into(),
            ));
        }
        Ok(res)
    }

    pub fn mapped(&self, r: &Refined) -> Result<SlideEdge> {
        Ok(SlideEdge {
            source: self.source.clone(),
            target: self.target.clone(),
            result_key: self.result_key.clone(),
            witness: self.witness.mapped(r)?,
        })
    }
}

/// Run a slide and package it as a graph edge.
pub fn slide_edge(
    chart: &Chart,
    system: &MultiCurve,
    slid: usize,
    over: usize,
    arc: &SlideArc,
) -> Result<(SlideEdge, SlideResult)> {
    let res = handleslide(chart, system, slid, over, arc)?;
    let edge = SlideEdge {
        source: chart.system_key(system),
        target: res.chart.system_key(&res.system),
        result_key: res.chart.key(res.system.get(slid)),
        witness: SlideWitness {
            system: system.clone(),
            slid,
            over,
            arc: arc.clone(),
        },
    };
    Ok((edge, res))
}

/// All embedded arcs from `system[from]` to `system[to]` of at most `bound`
/// edges, interiors clear of the system, in a deterministic order (seed
/// vertices in curve order, rotation order at each step, shorter first).
pub fn arc_candidates(
    mesh: &Mesh,
    system: &MultiCurve,
    from: usize,
    to: usize,
    bound: usize,
) -> Vec<SlideArc> {
    let mut on_curve = vec![false; mesh.nverts()];
    for c in system.iter() {
        for v in c.vertices(mesh) {
            on_curve[v] = true;
        }
    }
    let target: BTreeSet<usize> = system.get(to).vertices(mesh).into_iter().collect();
    let mut blocked_vert = vec![false; mesh.nverts()];
    let mut blocked_edge = vec![false; mesh.nedges()];
    for f in mesh.marked_faces() {
        for d in &mesh.face(f).word {
            blocked_vert[mesh.tail(*d)] = true;
            blocked_edge[d.edge()] = true;
        }
    }
    for c in system.iter() {
        for e in c.edges() {
            blocked_edge[e] = true;
        }
    }

    let mut out = Vec::new();
    // paths carry one not-yet-examined final dart
    let mut layer: Vec<Vec<Dart>> = Vec::new();
    for v in system.get(from).vertices(mesh) {
        for &d in mesh.out_darts(v) {
            layer.push(vec![d]);
        }
    }
    for _ in 0..bound {
        let mut next = Vec::new();
        for path in layer {
            let d = *path.last().unwrap();
            if blocked_edge[d.edge()] || mesh.is_boundary_edge(d.edge()) {
                continue;
            }
            let h = mesh.head(d);
            if target.contains(&h) {
                if let Ok(arc) = SlideArc::new(mesh, path) {
                    out.push(arc);
                }
                continue;
            }
            if on_curve[h] || blocked_vert[h] || mesh.is_boundary_vertex(h) {
                continue;
            }
            if path.iter().any(|p| mesh.tail(*p) == h) {
                continue;
            }
            for &g in mesh.out_darts(h) {
                if g.edge() == d.edge() {
                    continue;
                }
                let mut longer = path.clone();
                longer.push(g);
                next.push(longer);
            }
        }
        layer = next;
    }
    out
}

/// Bounded deterministic search for a slide of `system[slid]` over
/// `system[over]` whose result curve has the requested class. Returns the
/// first hit in candidate order.
pub fn find_slide(
    chart: &Chart,
    system: &MultiCurve,
    slid: usize,
    over: usize,
    want: &CurveKey,
    bound: usize,
) -> Option<(SlideEdge, SlideResult)> {
    let cands = arc_candidates(chart.mesh(), system, slid, over, bound);
    let hits = exec::map(cands, |arc| {
        let res = handleslide(chart, system, slid, over, &arc).ok()?;
        if res.chart.key(res.system.get(slid)) == *want {
            Some((arc, res))
        } else {
            None
        }
    });
    for hit in hits {
        if let Some((arc, res)) = hit {
            let edge = SlideEdge {
                source: chart.system_key(system),
                target: res.chart.system_key(&res.system),
                result_key: want.clone(),
                witness: SlideWitness {
                    system: system.clone(),
                    slid,
                    over,
                    arc,
                },
            };
            return Some((edge, res));
        }
    }
    None
}

/// Replay `edge`, then search for the slide that undoes it at the result
/// realization. The reverse witness lives on the replay's chart.
pub fn inverse_slide(
    chart: &Chart,
    edge: &SlideEdge,
    bound: usize,
) -> Result<(SlideResult, SlideEdge)> {
    let res = edge.replay(chart)?;
    let w = &edge.witness;
    let back_key = chart.key(w.system.get(w.slid));
    let (back, _) = find_slide(&res.chart, &res.system, w.slid, w.over, &back_key, bound)
        .ok_or_else(|| Error::Budget(format!("no inverse slide within arc bound {bound}")))?;
    if back.target != edge.source {
        return Err(Error::Internal(
            "inverse slide reaches a different system".into(),
        ));
    }
    Ok((res, back))
}

/// Out-edges of the slide graph at `system`, after `depth` rounds of global
/// refinement, over arcs of at most `bound` edges, deduplicated by target
/// (first witness in enumeration order wins).
pub struct SlideEnumeration {
    pub chart: Chart,
    pub system: MultiCurve,
    pub edges: Vec<SlideEdge>,
}

pub fn enumerate_slides(
    chart: &Chart,
    system: &MultiCurve,
    depth: usize,
    bound: usize,
) -> Result<SlideEnumeration> {
    let mut cur_chart = chart.clone();
    let mut cur_sys = system.clone();
    for _ in 0..depth {
        let (next, r) = cur_chart.refine_all();
        let curves = cur_sys
            .iter()
            .map(|c| r.map_curve(c))
            .collect::<Result<Vec<_>>>()?;
        cur_sys = MultiCurve::new(next.mesh(), curves)?;
        cur_chart = next;
    }
    let source = cur_chart.system_key(&cur_sys);
    let mut edges: Vec<SlideEdge> = Vec::new();
    let mut seen: BTreeSet<CutSystemKey> = BTreeSet::new();
    let n = cur_sys.len();
    for slid in 0..n {
        for over in 0..n {
            if slid == over {
                continue;
            }
            let cands = arc_candidates(cur_chart.mesh(), &cur_sys, slid, over, bound);
            let results = exec::map(cands, |arc| {
                handleslide(&cur_chart, &cur_sys, slid, over, &arc).map(|res| (arc, res))
            });
            for r in results {
                let (arc, res) = r?;
                let target = res.chart.system_key(&res.system);
                if seen.insert(target.clone()) {
                    edges.push(SlideEdge {
                        source: source.clone(),
                        target,
                        result_key: res.chart.key(res.system.get(slid)),
                        witness: SlideWitness {
                            system: cur_sys.clone(),
                            slid,
                            over,
                            arc,
                        },
                    });
                }
            }
        }
    }
    Ok(SlideEnumeration {
        chart: cur_chart,
        system: cur_sys,
        edges,
    })
}

/// Witness that two systems differ by one slot against a shared context:
/// the context realized once, plus each side's odd curve disjoint from it.
/// The odd curves themselves may cross each other.
#[derive(Clone, Debug)]
pub struct SimpleMoveWitness {
    pub context: MultiCurve,
    pub from: Curve,
    pub to: Curve,
}

/// Decide whether `u → v` replaces exactly one curve. `Ok(None)` is a
/// definite no (the key multisets do not differ in exactly one slot).
/// A one-slot difference whose odd curves cannot be hung off a common
/// context realization at this refinement is an error, not a no.
pub fn is_simple_move(
    chart: &Chart,
    u: &MultiCurve,
    v: &MultiCurve,
) -> Result<Option<SimpleMoveWitness>> {
    if u.len() != v.len() {
        return Ok(None);
    }
    let ku: Vec<CurveKey> = u.iter().map(|c| chart.key(c)).collect();
    let kv: Vec<CurveKey> = v.iter().map(|c| chart.key(c)).collect();
    let mut count: BTreeMap<&CurveKey, i64> = BTreeMap::new();
    for k in &ku {
        *count.entry(k).or_insert(0) += 1;
    }
    for k in &kv {
        *count.entry(k).or_insert(0) -= 1;
    }
    let extra_u: i64 = count.values().filter(|&&c| c > 0).sum();
    if extra_u != 1 {
        return Ok(None);
    }
    let odd_u = *count.iter().find(|(_, &c)| c > 0).map(|(k, _)| k).unwrap();
    let odd_v = *count.iter().find(|(_, &c)| c < 0).map(|(k, _)| k).unwrap();

    let mesh = chart.mesh();
    let without = |sys: &MultiCurve, skip: usize| -> Result<MultiCurve> {
        let curves = sys
            .iter()
            .enumerate()
            .filter(|(t, _)| *t != skip)
            .map(|(_, c)| c.clone())
            .collect();
        MultiCurve::new(mesh, curves)
    };
    for (iu, _) in ku.iter().enumerate().filter(|(_, k)| *k == odd_u) {
        for (iv, _) in kv.iter().enumerate().filter(|(_, k)| *k == odd_v) {
            // context from u, v's odd curve must fit
            let ctx = without(u, iu)?;
            let mut joined: Vec<Curve> = ctx.iter().cloned().collect();
            joined.push(v.get(iv).clone());
            if MultiCurve::new(mesh, joined).is_ok() {
                return Ok(Some(SimpleMoveWitness {
                    context: ctx,
                    from: u.get(iu).clone(),
                    to: v.get(iv).clone(),
                }));
            }
            // context from v, u's odd curve must fit
            let ctx = without(v, iv)?;
            let mut joined: Vec<Curve> = ctx.iter().cloned().collect();
            joined.push(u.get(iu).clone());
            if MultiCurve::new(mesh, joined).is_ok() {
                return Ok(Some(SimpleMoveWitness {
                    context: ctx,
                    from: u.get(iu).clone(),
                    to: v.get(iv).clone(),
                }));
            }
        }
    }
    Err(Error::Invalid(
        "one-slot difference undecided at this refinement: no common context realization".into(),
    ))
}

/// Curve darts meeting vertex `v`: (incoming, outgoing).
pub fn curve_darts_at(mesh: &Mesh, curve: &Curve, v: usize) -> Option<(Dart, Dart)> {
    let ds = curve.darts();
    let n = ds.len();
    for (t, d) in ds.iter().enumerate() {
        if mesh.tail(*d) == v {
            return Some((ds[(t + n - 1) % n], *d));
        }
    }
    None
}

/// Which side of `curve` the dart `out` (leaving a curve vertex) points
/// into: true when it sits in the ccw fan from the outgoing curve dart to
/// the reversed incoming one. Only comparisons against the same realization
/// of the curve are meaningful.
pub fn strand_side(mesh: &Mesh, curve: &Curve, out: Dart) -> Result<bool> {
    let v = mesh.tail(out);
    let (cin, cout) = curve_darts_at(mesh, curve, v)
        .ok_or_else(|| Error::Invalid("dart does not start on the curve".into()))?;
    let ring = mesh.out_darts(v);
    let m = ring.len();
    let start = mesh.rot_pos(cout);
    for t in 1..m {
        let g = ring[(start + t) % m];
        if g == out {
            return Ok(true);
        }
        if g == cin.rev() {
            return Ok(false);
        }
    }
    Err(Error::Internal(
        "curve strands missing from the vertex rotation".into(),
    ))
}

/// Cut a chained dart path where its interior meets `curve`: at the first
/// meeting when keeping the tail piece, at the last when keeping the head
/// piece, so the kept piece touches the curve only at the new endpoint.
/// None when the interior never meets the curve.
pub(crate) fn clip_at_curve(
    mesh: &Mesh,
    darts: &[Dart],
    curve: &Curve,
    keep_tail: bool,
) -> Option<Vec<Dart>> {
    let cv: BTreeSet<usize> = curve.vertices(mesh).into_iter().collect();
    let vs = path_vertices(mesh, darts);
    let hits: Vec<usize> = (1..vs.len() - 1).filter(|&t| cv.contains(&vs[t])).collect();
    let t = if keep_tail {
        *hits.first()?
    } else {
        *hits.last()?
    };
    Some(if keep_tail {
        darts[..t].to_vec()
    } else {
        darts[t..].to_vec()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{annulus_grid, four_holed_sphere, punctured_torus_grid};
    use crate::surface::is_attaching_set;

    fn four_holed() -> (Chart, crate::fixtures::Grid, MultiCurve) {
        let (mesh, g) = four_holed_sphere();
        let a = Curve::new(&mesh, g.rect_curve(&mesh, 2, 2, 9, 5)).unwrap();
        let b = Curve::new(&mesh, g.rect_curve(&mesh, 1, 1, 14, 6)).unwrap();
        let system = MultiCurve::new(&mesh, vec![a, b]).unwrap();
        (Chart::new(&mesh), g, system)
    }

    fn east_arc(g: &crate::fixtures::Grid) -> Vec<Dart> {
        (9..14).map(|c| Dart::fwd(g.h_edge(c, 2))).collect()
    }

    #[test]
    fn slide_arcs_reject_malformed_paths() {
        let (chart, g, system) = four_holed();
        let m = chart.mesh();
        assert!(SlideArc::new(m, vec![]).is_err());
        let skip = vec![Dart::fwd(g.h_edge(9, 2)), Dart::fwd(g.h_edge(11, 2))];
        assert!(SlideArc::new(m, skip).is_err());
        let square = vec![
            Dart::fwd(g.h_edge(9, 2)),
            Dart::fwd(g.v_edge(10, 2)),
            Dart::fwd(g.h_edge(9, 3)).rev(),
            Dart::fwd(g.v_edge(9, 2)).rev(),
        ];
        assert!(SlideArc::new(m, square).is_err());
        // (11,3) is a corner of the middle hole
        assert!(SlideArc::new(m, vec![Dart::fwd(g.h_edge(10, 3))]).is_err());

        let good = SlideArc::new(m, east_arc(&g)).unwrap();
        assert!(good.validate_for(m, &system, 0, 1).is_ok());
        assert!(good.validate_for(m, &system, 0, 0).is_err());
        assert!(good.reversed().validate_for(m, &system, 0, 1).is_err());
        // head wanders off the target curve
        let miss = SlideArc::new(
            m,
            vec![Dart::fwd(g.h_edge(9, 5)), Dart::fwd(g.h_edge(10, 5))],
        )
        .unwrap();
        assert!(miss.validate_for(m, &system, 0, 1).is_err());
        // interior lands on the curve slid over
        let through = SlideArc::new(
            m,
            vec![Dart::fwd(g.v_edge(5, 1)).rev(), Dart::fwd(g.h_edge(5, 1))],
        )
        .unwrap();
        assert!(through.validate_for(m, &system, 0, 1).is_err());
    }

    #[test]
    fn sliding_over_a_parallel_copy_kills_the_class() {
        let (mesh, g) = four_holed_sphere();
        let a = Curve::new(&mesh, g.rect_curve(&mesh, 2, 2, 9, 5)).unwrap();
        let b = Curve::new(&mesh, g.rect_curve(&mesh, 1, 1, 10, 6)).unwrap();
        let system = MultiCurve::new(&mesh, vec![a, b]).unwrap();
        let chart = Chart::new(&mesh);
        let arc = SlideArc::new(&mesh, vec![Dart::fwd(g.v_edge(5, 1)).rev()]).unwrap();
        let res = handleslide(&chart, &system, 0, 1, &arc).unwrap();
        assert!(res.chart.key(res.system.get(0)).is_trivial());
        // a null curve separates off a disk, which breaks the attaching test
        let v = is_attaching_set(res.chart.mesh(), &res.system).unwrap();
        assert!(!v.attaching);
    }

    #[test]
    fn sliding_across_the_far_hole_yields_its_ring() {
        let (chart, g, system) = four_holed();
        let arc = SlideArc::new(chart.mesh(), east_arc(&g)).unwrap();
        let (edge, res) = slide_edge(&chart, &system, 0, 1, &arc).unwrap();

        let ring = Curve::new(chart.mesh(), g.rect_curve(chart.mesh(), 10, 2, 13, 5)).unwrap();
        let ring = res.refined.map_curve(&ring).unwrap();
        assert_eq!(edge.result_key, res.chart.key(&ring));
        assert_ne!(edge.source, edge.target);
        let v = is_attaching_set(res.chart.mesh(), &res.system).unwrap();
        assert!(v.attaching);

        let (_, back) = inverse_slide(&chart, &edge, 4).unwrap();
        assert_eq!(back.source, edge.target);
        assert_eq!(back.target, edge.source);
    }

    #[test]
    fn replay_rejects_tampered_edges() {
        let (chart, g, system) = four_holed();
        let arc = SlideArc::new(chart.mesh(), east_arc(&g)).unwrap();
        let (edge, _) = slide_edge(&chart, &system, 0, 1, &arc).unwrap();
        assert!(edge.replay(&chart).is_ok());

        let mut forged = edge.clone();
        forged.result_key = chart.key(system.get(1));
        assert!(matches!(
            forged.replay(&chart),
            Err(Error::BadCertificate(_))
        ));
        let mut forged = edge.clone();
        forged.witness.slid = 1;
        assert!(forged.replay(&chart).is_err());
    }

    #[test]
    fn arc_candidates_are_deterministic() {
        let (chart, _, system) = four_holed();
        let m = chart.mesh();
        let short = arc_candidates(m, &system, 0, 1, 2);
        assert!(!short.is_empty());
        assert_eq!(short, arc_candidates(m, &system, 0, 1, 2));
        let long = arc_candidates(m, &system, 0, 1, 3);
        for arc in &short {
            assert!(arc.len() <= 2);
            assert!(arc.validate_for(m, &system, 0, 1).is_ok());
            assert!(long.contains(arc));
        }
    }

    #[test]
    fn enumeration_is_deterministic_and_deduplicated() {
        let (chart, _, system) = four_holed();
        let enum1 = enumerate_slides(&chart, &system, 0, 2).unwrap();
        let enum2 = enumerate_slides(&chart, &system, 0, 2).unwrap();
        let pairs = |e: &SlideEnumeration| -> Vec<(CutSystemKey, CurveKey)> {
            e.edges
                .iter()
                .map(|ed| (ed.target.clone(), ed.result_key.clone()))
                .collect()
        };
        assert_eq!(pairs(&enum1), pairs(&enum2));
        let targets: BTreeSet<_> = enum1.edges.iter().map(|e| e.target.clone()).collect();
        assert_eq!(targets.len(), enum1.edges.len());
        assert!(targets.len() >= 2);
        for e in &enum1.edges {
            assert!(e.replay(&enum1.chart).is_ok());
        }

        let (mesh, g) = annulus_grid(6, 3);
        let lone = MultiCurve::single(Curve::new(&mesh, g.row_curve(&mesh, 1)).unwrap());
        let chart = Chart::new(&mesh);
        assert!(enumerate_slides(&chart, &lone, 0, 3)
            .unwrap()
            .edges
            .is_empty());
    }

    #[test]
    fn simple_moves_need_exactly_one_slot() {
        let (chart, g, system) = four_holed();
        let m = chart.mesh();
        assert!(is_simple_move(&chart, &system, &system).unwrap().is_none());

        let lone = MultiCurve::single(system.get(0).clone());
        assert!(is_simple_move(&chart, &system, &lone).unwrap().is_none());

        let ring3 = Curve::new(m, g.rect_curve(m, 10, 2, 13, 5)).unwrap();
        let ring1 = Curve::new(m, g.rect_curve(m, 2, 2, 5, 5)).unwrap();
        let two_off = MultiCurve::new(m, vec![ring1, ring3.clone()]).unwrap();
        assert!(is_simple_move(&chart, &system, &two_off).unwrap().is_none());

        let one_off = MultiCurve::new(m, vec![system.get(0).clone(), ring3]).unwrap();
        let w = is_simple_move(&chart, &system, &one_off).unwrap().unwrap();
        assert_eq!(w.context.len(), 1);
        assert_eq!(chart.key(&w.from), chart.key(system.get(1)));
    }

    #[test]
    fn simple_move_accepts_crossing_singletons() {
        let (mesh, g) = punctured_torus_grid(6);
        let chart = Chart::new(&mesh);
        let row = MultiCurve::single(Curve::new(&mesh, g.row_curve(&mesh, 2)).unwrap());
        let col = MultiCurve::single(Curve::new(&mesh, g.col_curve(&mesh, 2)).unwrap());
        let w = is_simple_move(&chart, &row, &col).unwrap().unwrap();
        assert!(w.context.is_empty());
    }

    #[test]
    fn simple_move_undecided_when_contexts_collide() {
        let (mesh, g) = punctured_torus_grid(8);
        let chart = Chart::new(&mesh);
        let u = MultiCurve::new(
            &mesh,
            vec![
                Curve::new(&mesh, g.row_curve(&mesh, 2)).unwrap(),
                Curve::new(&mesh, g.row_curve(&mesh, 5)).unwrap(),
            ],
        )
        .unwrap();
        // same class as row 2 but detouring over rows 3..7, so it crosses
        // row 5; the ring crosses row 2: every context pairing collides
        let mut detour = vec![Dart::fwd(g.h_edge(0, 2))];
        detour.extend((2..7).map(|r| Dart::fwd(g.v_edge(1, r))));
        detour.extend((1..6).map(|c| Dart::fwd(g.h_edge(c, 7))));
        detour.extend((2..7).rev().map(|r| Dart::fwd(g.v_edge(6, r)).rev()));
        detour.push(Dart::fwd(g.h_edge(6, 2)));
        detour.push(Dart::fwd(g.h_edge(7, 2)));
        let v = MultiCurve::new(
            &mesh,
            vec![
                Curve::new(&mesh, detour).unwrap(),
                Curve::new(&mesh, g.rect_curve(&mesh, 2, 1, 5, 6)).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(is_simple_move(&chart, &u, &v), Err(Error::Invalid(_))));
    }

    #[test]
    fn strand_sides_disagree_across_the_curve() {
        let (chart, g, system) = four_holed();
        let m = chart.mesh();
        let a = system.get(0);
        let v = m.tail(Dart::fwd(g.v_edge(5, 2)));
        let (din, dout) = curve_darts_at(m, a, v).unwrap();
        assert_eq!(m.head(din), v);
        assert_eq!(m.tail(dout), v);
        let north = strand_side(m, a, Dart::fwd(g.v_edge(5, 2))).unwrap();
        let south = strand_side(m, a, Dart::fwd(g.v_edge(5, 1)).rev()).unwrap();
        assert_ne!(north, south);
        assert!(strand_side(m, a, Dart::fwd(g.v_edge(12, 2))).is_err());
    }

    #[test]
    fn clipping_keeps_the_outermost_pieces() {
        let (mesh, g) = annulus_grid(6, 5);
        let row = Curve::new(&mesh, g.row_curve(&mesh, 2)).unwrap();
        let path = vec![
            Dart::fwd(g.v_edge(1, 0)),
            Dart::fwd(g.v_edge(1, 1)),
            Dart::fwd(g.h_edge(1, 2)),
            Dart::fwd(g.h_edge(2, 2)),
            Dart::fwd(g.v_edge(3, 2)),
            Dart::fwd(g.v_edge(3, 3)),
        ];
        let tail = clip_at_curve(&mesh, &path, &row, true).unwrap();
        assert_eq!(tail, path[..2].to_vec());
        let head = clip_at_curve(&mesh, &path, &row, false).unwrap();
        assert_eq!(head, path[4..].to_vec());
        assert!(clip_at_curve(&mesh, &path[..1], &row, true).is_none());
    }
}
