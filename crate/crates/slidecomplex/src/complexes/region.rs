//! Regular pants decompositions of a one-slot move and the slide chains that
//! realize them.
//!
//! A one-slot move carries a planar region: the unique component of the cut
//! surface bounded by one copy of the outgoing curve, one copy of the
//! incoming curve, and some copies of context curves. Ordering those copies
//! into a linear chain of pants turns the move into a sequence of elementary
//! handleslides, one per copy, each realized inside the shrinking region.
//! Every order works, so a move with m copies has exactly m! decompositions.
//!
//! Copies are identified by context slot plus approach side, the side being
//! measured the same way arc arrivals are. Re-deriving the region after each
//! slide keeps the bookkeeping honest: the consumed copy must disappear from
//! the new region's boundary, and after the last slide the moving curve must
//! land in the incoming curve's class.

use std::collections::BTreeSet;

use crate::chart::Chart;
use crate::exec;
use crate::moves::{arc_candidates, handleslide, SimpleMoveWitness, SlideArc, SlideEdge, SlideWitness};
use crate::moves::strand_side;
use crate::pi1::{CurveKey, CutSystemKey};
use crate::surface::{find_f, Curve, Dart, FRegion, Mesh, MultiCurve};
use crate::{Error, Result};

use super::cert::KeyEdge;

/// One boundary copy of a context curve: which system slot it copies and
/// which side of that curve faces the region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ContextCopy {
    pub slot: usize,
    pub side: bool,
}

/// Which sides of `beta` touch the given face set. Probes every dart leaving
/// a curve vertex; a probe's face determines membership, its fan position
/// the side.
fn curve_sides_in(mesh: &Mesh, faces: &BTreeSet<usize>, beta: &Curve) -> Result<Vec<bool>> {
    let own = beta.edge_set();
    let mut sides = BTreeSet::new();
    for v in beta.vertices(mesh) {
        for d in mesh.out_darts(v) {
            if own.contains(&d.edge()) {
                continue;
            }
            let Some(f) = mesh.face_of(*d) else { continue };
            if faces.contains(&f) {
                sides.insert(strand_side(mesh, beta, *d)?);
            }
        }
    }
    Ok(sides.into_iter().collect())
}

/// The region of a one-slot move at a concrete realization: the component
/// cut out by the whole system plus the incoming curve, together with its
/// face set and context copies in canonical order.
pub(crate) fn move_region(
    mesh: &Mesh,
    system: &MultiCurve,
    moving: usize,
    target: &Curve,
) -> Result<(FRegion, BTreeSet<usize>, Vec<ContextCopy>)> {
    let others: Vec<Curve> = system
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != moving)
        .map(|(_, c)| c.clone())
        .collect();
    let slot_of = |i: usize| if i < moving { i } else { i + 1 };
    let fr = find_f(mesh, system.get(moving), target, &others)?;
    let faces: BTreeSet<usize> = fr.faces.iter().copied().collect();
    let mut copies = Vec::new();
    for (i, beta) in others.iter().enumerate() {
        let sides = curve_sides_in(mesh, &faces, beta)?;
        if sides.len() != fr.beta_sides[i] {
            return Err(Error::Internal(
                "side probes disagree with the region's copy count".into(),
            ));
        }
        for s in sides {
            copies.push(ContextCopy { slot: slot_of(i), side: s });
        }
    }
    Ok((fr, faces, copies))
}

/// Arc candidates from the moving curve to the given copy that stay in the
/// closed region and arrive on the copy's side. An arc edge with one face in
/// the region and one outside necessarily runs along the incoming curve
/// (every other boundary curve is blocked as a system curve), so admitting
/// it keeps the arc on the region's closure.
pub(crate) fn copy_candidates(
    mesh: &Mesh,
    system: &MultiCurve,
    moving: usize,
    copy: ContextCopy,
    faces: &BTreeSet<usize>,
    bound: usize,
) -> Vec<SlideArc> {
    let inside = |d: Dart| mesh.face_of(d).is_some_and(|f| faces.contains(&f));
    arc_candidates(mesh, system, moving, copy.slot, bound)
        .into_iter()
        .filter(|arc| arc.darts().iter().all(|d| inside(*d) || inside(d.rev())))
        .filter(|arc| {
            let back = arc.darts().last().unwrap().rev();
            strand_side(mesh, system.get(copy.slot), back).is_ok_and(|s| s == copy.side)
        })
        .collect()
}

/// Realization snapshot between chain steps. The moving slot is fixed by the
/// chain; `target` is the incoming curve carried forward across refinements.
#[derive(Clone)]
pub(crate) struct ChainState {
    pub chart: Chart,
    pub system: MultiCurve,
    pub target: Curve,
}

impl ChainState {
    pub fn key(&self) -> CutSystemKey {
        self.chart.system_key(&self.system)
    }
}

/// A move resolved into elementary handleslides, with every intermediate
/// realization retained. `states[i]` is where `steps[i]` applies;
/// `states.len() == steps.len() + 1`.
#[derive(Clone)]
pub(crate) struct RealizedChain {
    pub moving: usize,
    pub order: Vec<ContextCopy>,
    pub steps: Vec<SlideEdge>,
    pub states: Vec<ChainState>,
}

impl RealizedChain {
    pub fn keys(&self) -> Vec<CutSystemKey> {
        let mut ks: Vec<CutSystemKey> =
            self.steps.iter().map(|e| e.source.clone()).collect();
        ks.push(self.steps.last().map_or_else(
            || self.states[0].key(),
            |e| e.target.clone(),
        ));
        ks
    }

    pub fn word(&self) -> Vec<KeyEdge> {
        self.steps.iter().map(|e| (e.source.clone(), e.target.clone())).collect()
    }

    /// Suffix starting at state `from`, as a chain in its own right.
    pub fn tail(&self, from: usize) -> RealizedChain {
        RealizedChain {
            moving: self.moving,
            order: self.order[from..].to_vec(),
            steps: self.steps[from..].to_vec(),
            states: self.states[from..].to_vec(),
        }
    }
}

/// Slide the moving slot over `copy` inside the current region, preferring
/// the first admissible arc, or the first one whose result lands in `want`.
fn chain_step(
    state: &ChainState,
    moving: usize,
    copy: ContextCopy,
    want: Option<&CurveKey>,
    bound: usize,
) -> Result<(SlideEdge, ChainState)> {
    let mesh = state.chart.mesh();
    let (_, faces, copies) = move_region(mesh, &state.system, moving, &state.target)?;
    if !copies.contains(&copy) {
        return Err(Error::Invalid(
            "chosen copy does not bound the move's region".into(),
        ));
    }
    for arc in copy_candidates(mesh, &state.system, moving, copy, &faces, bound) {
        let Ok(res) = handleslide(&state.chart, &state.system, moving, copy.slot, &arc) else {
            continue;
        };
        let result_key = res.chart.key(res.system.get(moving));
        if let Some(w) = want {
            if *w != result_key {
                continue;
            }
        }
        let edge = SlideEdge {
            source: state.chart.system_key(&state.system),
            target: res.chart.system_key(&res.system),
            result_key,
            witness: SlideWitness {
                system: state.system.clone(),
                slid: moving,
                over: copy.slot,
                arc,
            },
        };
        let target = res.refined.map_curve(&state.target)?;
        let next = ChainState { chart: res.chart, system: res.system, target };
        return Ok((edge, next));
    }
    Err(Error::Budget(format!(
        "no region slide over slot {} within arc bound {bound}",
        copy.slot
    )))
}

/// Realize a full chain from `root`, consuming `order` one copy at a time.
/// With `wants`, each step must land its prescribed curve class. The final
/// system must present the incoming curve's class in the moving slot.
pub(crate) fn realize_chain(
    root: ChainState,
    moving: usize,
    order: &[ContextCopy],
    wants: Option<&[CurveKey]>,
    bound: usize,
) -> Result<RealizedChain> {
    if let Some(w) = wants {
        if w.len() != order.len() {
            return Err(Error::Invalid("one wanted class per chain step".into()));
        }
    }
    let mut states = vec![root];
    let mut steps = Vec::new();
    for (i, &copy) in order.iter().enumerate() {
        let state = states.last().unwrap();
        let (edge, next) = chain_step(state, moving, copy, wants.map(|w| &w[i]), bound)?;
        steps.push(edge);
        states.push(next);
    }
    let last = states.last().unwrap();
    let got = last.chart.key(last.system.get(moving));
    if got != last.chart.key(&last.target) {
        return Err(Error::Internal(
            "chain consumed every copy without reaching the incoming curve".into(),
        ));
    }
    Ok(RealizedChain { moving, order: order.to_vec(), steps, states })
}

/// Root realization of a one-slot move: context slots first, the moving
/// curve last, the incoming curve carried as the chain target.
pub(crate) fn move_root(chart: &Chart, w: &SimpleMoveWitness) -> Result<(ChainState, usize)> {
    let mut curves: Vec<Curve> = w.context.iter().cloned().collect();
    curves.push(w.from.clone());
    let system = MultiCurve::new(chart.mesh(), curves)?;
    let moving = system.len() - 1;
    let state = ChainState {
        chart: chart.clone(),
        system,
        target: w.to.clone(),
    };
    Ok((state, moving))
}

/// Boundary label of one pair of pants in a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PantsBoundary {
    /// The outgoing curve of the move.
    Source,
    /// The incoming curve of the move.
    Target,
    /// The i-th internal chain curve.
    Internal(usize),
    /// A context copy on the region boundary.
    Copy(ContextCopy),
}

/// A linear order on the region's context copies, realized as a slide chain.
/// Pants i is cut off by the i-th internal curve and consumes `order[i]`.
#[derive(Clone, Debug)]
pub struct PantsDecomposition {
    pub order: Vec<ContextCopy>,
    pub edges: Vec<SlideEdge>,
}

impl PantsDecomposition {
    /// Number of pants, which equals the number of consumed copies.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Classes of the internal curves, ordered away from the source. One
    /// fewer than the pants count.
    pub fn internal_curves(&self) -> Vec<CurveKey> {
        self.edges[..self.edges.len() - 1].iter().map(|e| e.result_key.clone()).collect()
    }

    /// Boundary labels of each pair of pants along the chain.
    pub fn pants(&self) -> Vec<[PantsBoundary; 3]> {
        let m = self.order.len();
        (0..m)
            .map(|i| {
                let near = if i == 0 { PantsBoundary::Source } else { PantsBoundary::Internal(i - 1) };
                let far = if i + 1 == m { PantsBoundary::Target } else { PantsBoundary::Internal(i) };
                [near, PantsBoundary::Copy(self.order[i]), far]
            })
            .collect()
    }
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    fn rec<T: Clone>(rest: &mut Vec<T>, acc: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x.clone());
            rec(rest, acc, out);
            acc.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut items.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// All regular pants decompositions of a one-slot move: one per linear order
/// of the region's context copies, each realized as a slide chain. A region
/// with m copies yields exactly m! decompositions.
pub fn enumerate_regular_pants(
    chart: &Chart,
    w: &SimpleMoveWitness,
    bound: usize,
) -> Result<Vec<PantsDecomposition>> {
    let (root, moving) = move_root(chart, w)?;
    let (_, _, copies) = move_region(root.chart.mesh(), &root.system, moving, &root.target)?;
    let orders = permutations(&copies);
    exec::map(orders, |order| {
        let chain = realize_chain(root.clone(), moving, &order, None, bound)?;
        Ok(PantsDecomposition { order, edges: chain.steps })
    })
    .into_iter()
    .collect()
}

/// A one-slot move resolved into elementary handleslides, one per pants.
#[derive(Clone, Debug)]
pub struct ResolutionPath {
    pub edges: Vec<SlideEdge>,
}

impl ResolutionPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> &CutSystemKey {
        &self.edges.first().expect("resolutions are nonempty").source
    }

    pub fn target(&self) -> &CutSystemKey {
        &self.edges.last().expect("resolutions are nonempty").target
    }

    pub fn keys(&self) -> Vec<CutSystemKey> {
        let mut ks: Vec<CutSystemKey> = self.edges.iter().map(|e| e.source.clone()).collect();
        ks.push(self.target().clone());
        ks
    }

    pub fn word(&self) -> Vec<KeyEdge> {
        self.edges.iter().map(|e| (e.source.clone(), e.target.clone())).collect()
    }
}

/// The minimal resolution of a one-slot move along a pants decomposition:
/// the decomposition's chain, revalidated against the move. Its length is
/// always the region's copy count.
pub fn minimal_resolution(
    chart: &Chart,
    w: &SimpleMoveWitness,
    p: &PantsDecomposition,
) -> Result<ResolutionPath> {
    if p.order.len() != p.edges.len() || p.edges.is_empty() {
        return Err(Error::Invalid("decomposition order and chain disagree".into()));
    }
    let (root, moving) = move_root(chart, w)?;
    let (_, _, copies) = move_region(root.chart.mesh(), &root.system, moving, &root.target)?;
    let mut expected = copies;
    for copy in &p.order {
        let Some(at) = expected.iter().position(|c| c == copy) else {
            return Err(Error::Invalid(
                "decomposition consumes a copy the region does not have".into(),
            ));
        };
        expected.remove(at);
    }
    if !expected.is_empty() {
        return Err(Error::Invalid("decomposition misses region copies".into()));
    }
    // replay the chain: endpoints, chaining, and each slide are recomputed
    let mut cur = root.chart.clone();
    let mut key = cur.system_key(&root.system);
    for (i, e) in p.edges.iter().enumerate() {
        if e.source != key {
            return Err(Error::BadCertificate(format!(
                "resolution edge {i} does not chain",
            )));
        }
        let res = e.replay(&cur)?;
        key = e.target.clone();
        cur = res.chart;
    }
    let mut end: Vec<CurveKey> = w.context.iter().map(|c| chart.key(c)).collect();
    end.push(chart.key(&w.to));
    if key != CutSystemKey::of_keys(end) {
        return Err(Error::BadCertificate(
            "resolution does not end at the move's incoming system".into(),
        ));
    }
    Ok(ResolutionPath { edges: p.edges.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{build_grid, holed_sphere_grid, Grid};
    use crate::moves::is_simple_move;

    const BOUND: usize = 4;

    fn ring(g: &Grid, mesh: &Mesh, c0: usize, r0: usize, c1: usize, r1: usize) -> Curve {
        Curve::new(mesh, g.rect_curve(mesh, c0, r0, c1, r1)).unwrap()
    }

    /// Move trading a ring for a band around everything, with the remaining
    /// rings as context. Rects are (c0, r0, c1, r1).
    fn ring_move(
        mesh: &Mesh,
        g: &Grid,
        from: [usize; 4],
        to: [usize; 4],
        context: &[[usize; 4]],
    ) -> (Chart, SimpleMoveWitness) {
        let chart = Chart::new(mesh);
        let from = ring(g, mesh, from[0], from[1], from[2], from[3]);
        let to = ring(g, mesh, to[0], to[1], to[2], to[3]);
        let context: Vec<Curve> =
            context.iter().map(|r| ring(g, mesh, r[0], r[1], r[2], r[3])).collect();
        let u = MultiCurve::new(mesh, {
            let mut cs = context.clone();
            cs.push(from.clone());
            cs
        })
        .unwrap();
        let v = MultiCurve::new(mesh, {
            let mut cs = context;
            cs.push(to.clone());
            cs
        })
        .unwrap();
        let w = is_simple_move(&chart, &u, &v).unwrap().expect("one-slot move");
        (chart, w)
    }

    /// Two holes: ring around the first trades for a band around both.
    fn move_one_copy() -> (Chart, SimpleMoveWitness) {
        let (mesh, g) = holed_sphere_grid(3);
        ring_move(&mesh, &g, [2, 2, 5, 5], [1, 1, 10, 6], &[[6, 2, 9, 5]])
    }

    /// Three holes in a row: the middle ring trades for a band around all
    /// three, so both neighbor rings are one arc away under either order.
    fn move_two_copies() -> (Chart, SimpleMoveWitness) {
        let (mesh, g) = holed_sphere_grid(4);
        ring_move(
            &mesh,
            &g,
            [6, 2, 9, 5],
            [1, 1, 14, 6],
            &[[2, 2, 5, 5], [10, 2, 13, 5]],
        )
    }

    /// A center hole with three satellites; every satellite ring stays one
    /// arc away from the growing band under every order.
    fn move_three_copies() -> (Chart, SimpleMoveWitness) {
        let (mesh, g) = build_grid(15, 15, false, false, &[(7, 7), (11, 7), (7, 11), (3, 7)], &[]);
        ring_move(
            &mesh,
            &g,
            [6, 6, 9, 9],
            [1, 1, 14, 14],
            &[[10, 6, 13, 9], [6, 10, 9, 13], [2, 6, 5, 9]],
        )
    }

    #[test]
    fn pants_region_has_a_single_decomposition() {
        let (chart, w) = move_one_copy();
        let ps = enumerate_regular_pants(&chart, &w, BOUND).unwrap();
        assert_eq!(ps.len(), 1);
        let p = &ps[0];
        assert_eq!(p.len(), 1);
        assert!(p.internal_curves().is_empty());
        assert_eq!(
            p.pants(),
            vec![[
                PantsBoundary::Source,
                PantsBoundary::Copy(p.order[0]),
                PantsBoundary::Target,
            ]]
        );
        let r = minimal_resolution(&chart, &w, p).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(*r.source(), p.edges[0].source);
    }

    #[test]
    fn two_copies_give_two_resolutions_with_distinct_middles() {
        let (chart, w) = move_two_copies();
        let ps = enumerate_regular_pants(&chart, &w, BOUND).unwrap();
        assert_eq!(ps.len(), 2);
        let rs: Vec<ResolutionPath> =
            ps.iter().map(|p| minimal_resolution(&chart, &w, p).unwrap()).collect();
        for r in &rs {
            assert_eq!(r.len(), 2);
        }
        assert_eq!(rs[0].source(), rs[1].source());
        assert_eq!(rs[0].target(), rs[1].target());
        let mid = |r: &ResolutionPath| r.keys()[1].clone();
        assert_ne!(mid(&rs[0]), mid(&rs[1]));
        for r in &rs {
            assert_ne!(mid(r), *r.source());
            assert_ne!(mid(r), *r.target());
        }
        for p in &ps {
            assert_eq!(p.internal_curves().len(), 1);
        }
    }

    #[test]
    fn three_copies_give_six_decompositions() {
        let (chart, w) = move_three_copies();
        let ps = enumerate_regular_pants(&chart, &w, BOUND).unwrap();
        assert_eq!(ps.len(), 6);
        let mut words = BTreeSet::new();
        for p in &ps {
            let r = minimal_resolution(&chart, &w, p).unwrap();
            assert_eq!(r.len(), 3);
            words.insert(r.keys());
        }
        // all six orders realize pairwise distinct key paths here
        assert_eq!(words.len(), 6);
    }

    #[test]
    fn foreign_decompositions_are_rejected() {
        let (chart, w) = move_two_copies();
        let ps = enumerate_regular_pants(&chart, &w, BOUND).unwrap();
        let mut p = ps[0].clone();
        p.order[0] = ContextCopy { slot: 7, side: false };
        assert!(minimal_resolution(&chart, &w, &p).is_err());

        let mut p = ps[0].clone();
        p.edges.swap(0, 1);
        assert!(minimal_resolution(&chart, &w, &p).is_err());
    }

    #[test]
    fn wanted_classes_steer_the_chain() {
        let (chart, w) = move_two_copies();
        let (root, moving) = move_root(&chart, &w).unwrap();
        let (_, _, copies) =
            move_region(root.chart.mesh(), &root.system, moving, &root.target).unwrap();
        let free = realize_chain(root.clone(), moving, &copies, None, BOUND).unwrap();
        let wants: Vec<CurveKey> = free.steps.iter().map(|e| e.result_key.clone()).collect();
        let steered = realize_chain(root.clone(), moving, &copies, Some(&wants), BOUND).unwrap();
        assert_eq!(free.keys(), steered.keys());
        let off = vec![wants[1].clone(), wants[0].clone()];
        assert!(realize_chain(root, moving, &copies, Some(&off), BOUND).is_err());
    }
}
