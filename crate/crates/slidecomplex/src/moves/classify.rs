//! Recognizing which commuting shape a closed cycle of slide edges bounds.
//!
//! Classification is constructive: a cycle is accepted as a given shape only
//! when re-deriving the whole shape from base-level data (the first edge's
//! witness plus searched or stored companion arcs) reproduces the cycle's
//! vertex keys. Side conditions are checked against the rotation order at
//! the attachment vertices, so near-miss cycles that merely share the key
//! pattern fall through to `Unknown`.
//!
//! Induced arcs after a first slide are built by mapping the companion arc
//! into the refined mesh and cutting it where it meets the slide result.
//! Which meetings exist is forced by the side conditions: an arc end
//! attached on the corridor side of a slid-over curve is crossed by the
//! result exactly once, near that end, and an end on the far side is not
//! crossed at all. Cutting at the last meeting therefore leaves a clean arc
//! from the result curve to the companion's other end in every recognized
//! shape.

use std::collections::BTreeSet;

use crate::chart::Chart;
use crate::exec;
use crate::pi1::{CurveKey, CutSystemKey};
use crate::surface::cut_along;
use crate::surface::{Curve, MultiCurve};
use crate::{Error, Result};

use super::{
    arc_candidates, clip_at_curve, handleslide, find_slide, strand_side, SlideArc, SlideEdge,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LoopKind {
    SlideTriangle,
    SquareI,
    SquareII,
    SquareIII,
    SquareIV,
    Pentagon,
    XTriangleI,
    XTriangleII,
    SelfSepSquare,
    Unknown,
}

impl std::fmt::Display for LoopKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LoopKind::SlideTriangle => "slide-triangle",
            LoopKind::SquareI => "square-i",
            LoopKind::SquareII => "square-ii",
            LoopKind::SquareIII => "square-iii",
            LoopKind::SquareIV => "square-iv",
            LoopKind::Pentagon => "pentagon",
            LoopKind::XTriangleI => "x-triangle-i",
            LoopKind::XTriangleII => "x-triangle-ii",
            LoopKind::SelfSepSquare => "self-separated-square",
            LoopKind::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// Base-level data from which the whole shape can be re-derived.
#[derive(Clone, Debug)]
pub enum LoopWitness {
    Triangle {
        system: MultiCurve,
        slid: usize,
        over: usize,
        arc: SlideArc,
        bound: usize,
    },
    Square {
        system: MultiCurve,
        first: (usize, usize, SlideArc),
        second: (usize, usize, SlideArc),
    },
    Pentagon {
        system: MultiCurve,
        outer: usize,
        middle: usize,
        inner: usize,
        long_arc: SlideArc,
        short_arc: SlideArc,
    },
}

#[derive(Clone, Debug)]
pub struct ClassifiedLoop {
    pub kind: LoopKind,
    /// Rotation of the input cycle the witness derivation starts at.
    pub anchor: Option<usize>,
    pub witness: Option<LoopWitness>,
}

fn slid_key(chart: &Chart, e: &SlideEdge) -> CurveKey {
    chart.key(e.witness.system.get(e.witness.slid))
}

fn over_key(chart: &Chart, e: &SlideEdge) -> CurveKey {
    chart.key(e.witness.system.get(e.witness.over))
}

pub(crate) fn arcs_disjoint(mesh: &crate::surface::Mesh, a: &SlideArc, b: &SlideArc) -> bool {
    let va: BTreeSet<usize> = a.vertices(mesh).into_iter().collect();
    b.vertices(mesh).iter().all(|v| !va.contains(v))
}

/// Both slide orders of a two-slide square, from one system realization.
/// Decides the square's kind from slot overlap and attachment sides, then
/// checks that the second slide, transported across the first, closes the
/// square. Returns the kind and the derived vertex keys.
pub(crate) fn derive_square(
    chart: &Chart,
    system: &MultiCurve,
    first: (usize, usize, &SlideArc),
    second: (usize, usize, &SlideArc),
) -> Result<(LoopKind, [CutSystemKey; 4])> {
    let (is, jo, arc1) = first;
    let (ic, jc, arc2) = second;
    let mesh = chart.mesh();
    arc1.validate_for(mesh, system, is, jo)?;
    arc2.validate_for(mesh, system, ic, jc)?;
    if !arcs_disjoint(mesh, arc1, arc2) {
        return Err(Error::BadCertificate("square arcs are not disjoint".into()));
    }
    let head1 = arc1.darts().last().unwrap().rev();
    let head2 = arc2.darts().last().unwrap().rev();
    let kind = if ic != is && ic != jo && jc != is && jc != jo {
        LoopKind::SquareI
    } else if jc == jo && ic != is && ic != jo {
        if strand_side(mesh, system.get(jo), head1)? == strand_side(mesh, system.get(jo), head2)? {
            return Err(Error::BadCertificate(
                "both slides approach the shared curve from the same side".into(),
            ));
        }
        LoopKind::SquareII
    } else if ic == is && jc != is {
        let t1 = strand_side(mesh, system.get(is), arc1.darts()[0])?;
        let t2 = strand_side(mesh, system.get(is), arc2.darts()[0])?;
        if t1 != t2 {
            return Err(Error::BadCertificate(
                "slides leave the shared slid curve on opposite sides".into(),
            ));
        }
        if jc != jo {
            LoopKind::SquareIII
        } else if strand_side(mesh, system.get(jo), head1)?
            == strand_side(mesh, system.get(jo), head2)?
        {
            LoopKind::SquareIII
        } else {
            LoopKind::SquareIV
        }
    } else {
        return Err(Error::BadCertificate(
            "arc slots do not form a recognized square".into(),
        ));
    };

    let u0 = chart.system_key(system);
    let s0 = handleslide(chart, system, is, jo, arc1)?;
    let u1 = s0.chart.system_key(&s0.system);
    let trial = handleslide(chart, system, ic, jc, arc2)?;
    let u3 = trial.chart.system_key(&trial.system);

    let mapped = s0.refined.map_darts(arc2.darts());
    let darts2 = if ic == is {
        clip_at_curve(s0.chart.mesh(), &mapped, s0.system.get(is), false).ok_or_else(|| {
            Error::BadCertificate("second arc never meets the first slide's result".into())
        })?
    } else {
        mapped
    };
    let arc2f = SlideArc::new(s0.chart.mesh(), darts2)?;
    let s1 = handleslide(&s0.chart, &s0.system, ic, jc, &arc2f)?;
    let u2 = s1.chart.system_key(&s1.system);
    Ok((kind, [u0, u1, u2, u3]))
}

/// One inner slide closing a triangle: re-derives the two companion slides
/// by bounded search and returns the three vertex keys.
pub(crate) fn derive_triangle(
    chart: &Chart,
    system: &MultiCurve,
    slid: usize,
    over: usize,
    arc: &SlideArc,
    bound: usize,
) -> Result<[CutSystemKey; 3]> {
    let ka = chart.key(system.get(slid));
    let kb = chart.key(system.get(over));
    let u0 = chart.system_key(system);
    let s0 = handleslide(chart, system, slid, over, arc)?;
    let u1 = s0.chart.system_key(&s0.system);
    let (f1, s1) = find_slide(&s0.chart, &s0.system, over, slid, &ka, bound).ok_or_else(|| {
        Error::Budget(format!("no slide restoring the first curve within arc bound {bound}"))
    })?;
    let u2 = f1.target.clone();
    let (f2, _) = find_slide(&s1.chart, &s1.system, slid, over, &kb, bound).ok_or_else(|| {
        Error::Budget(format!("no slide restoring the second curve within arc bound {bound}"))
    })?;
    if f2.target != u0 {
        return Err(Error::BadCertificate(
            "triangle does not close back to its base system".into(),
        ));
    }
    Ok([u0, u1, u2])
}

/// Both association orders of a double slide outer→middle→inner: the outer
/// curve slides over the middle one, and the middle one over the inner one,
/// along disjoint arcs attached to the middle curve on the same side.
pub(crate) fn derive_pentagon(
    chart: &Chart,
    system: &MultiCurve,
    outer: usize,
    middle: usize,
    inner: usize,
    long_arc: &SlideArc,
    short_arc: &SlideArc,
) -> Result<[CutSystemKey; 5]> {
    let mesh = chart.mesh();
    if outer == middle || outer == inner || middle == inner {
        return Err(Error::BadCertificate("pentagon slots are not distinct".into()));
    }
    long_arc.validate_for(mesh, system, outer, middle)?;
    short_arc.validate_for(mesh, system, middle, inner)?;
    if !arcs_disjoint(mesh, long_arc, short_arc) {
        return Err(Error::BadCertificate("pentagon arcs are not disjoint".into()));
    }
    let side_short = strand_side(mesh, system.get(middle), short_arc.darts()[0])?;
    let side_long = strand_side(mesh, system.get(middle), long_arc.darts().last().unwrap().rev())?;
    if side_short != side_long {
        return Err(Error::BadCertificate(
            "pentagon arcs attach to the middle curve on opposite sides".into(),
        ));
    }

    let u0 = chart.system_key(system);
    // inner association: middle over inner first, then outer over the result
    let s_short = handleslide(chart, system, middle, inner, short_arc)?;
    let u1 = s_short.chart.system_key(&s_short.system);
    let long_m = s_short.refined.map_darts(long_arc.darts());
    let cut = clip_at_curve(s_short.chart.mesh(), &long_m, s_short.system.get(middle), true)
        .ok_or_else(|| {
            Error::BadCertificate("outer arc never meets the middle slide's result".into())
        })?;
    let long_ind = SlideArc::new(s_short.chart.mesh(), cut)?;
    let s_a = handleslide(&s_short.chart, &s_short.system, outer, middle, &long_ind)?;
    let u2 = s_a.chart.system_key(&s_a.system);
    let k_top = s_a.chart.key(s_a.system.get(outer));

    // outer association: outer over middle first, then the result over inner
    let s_long = handleslide(chart, system, outer, middle, long_arc)?;
    let u4 = s_long.chart.system_key(&s_long.system);
    let short_m = s_long.refined.map_darts(short_arc.darts());
    let cut = clip_at_curve(s_long.chart.mesh(), &short_m, s_long.system.get(outer), false)
        .ok_or_else(|| {
            Error::BadCertificate("inner arc never meets the outer slide's result".into())
        })?;
    let short_ind = SlideArc::new(s_long.chart.mesh(), cut)?;
    let s_b = handleslide(&s_long.chart, &s_long.system, outer, inner, &short_ind)?;
    let u3 = s_b.chart.system_key(&s_b.system);
    if s_b.chart.key(s_b.system.get(outer)) != k_top {
        return Err(Error::BadCertificate(
            "the two association orders produce different curves".into(),
        ));
    }
    Ok([u0, u1, u2, u3, u4])
}

fn cycle_keys(cycle: &[SlideEdge], anchor: usize) -> Vec<CutSystemKey> {
    (0..cycle.len())
        .map(|t| cycle[(anchor + t) % cycle.len()].source.clone())
        .collect()
}

fn try_triangle(chart: &Chart, cycle: &[SlideEdge], bound: usize) -> Result<Option<ClassifiedLoop>> {
    for r in 0..3 {
        let e0 = &cycle[r];
        let e1 = &cycle[(r + 1) % 3];
        let e2 = &cycle[(r + 2) % 3];
        let (i, j) = (e0.witness.slid, e0.witness.over);
        let ka = slid_key(chart, e0);
        let kb = over_key(chart, e0);
        let kc = e0.result_key.clone();
        if e1.witness.slid != j
            || e1.witness.over != i
            || slid_key(chart, e1) != kb
            || over_key(chart, e1) != kc
            || e1.result_key != ka
        {
            continue;
        }
        if e2.witness.slid != i
            || e2.witness.over != j
            || slid_key(chart, e2) != kc
            || over_key(chart, e2) != ka
            || e2.result_key != kb
        {
            continue;
        }
        let system = &e0.witness.system;
        let derived = match derive_triangle(chart, system, i, j, &e0.witness.arc, bound) {
            Ok(keys) => keys,
            Err(_) => continue,
        };
        if derived.to_vec() != cycle_keys(cycle, r) {
            continue;
        }
        return Ok(Some(ClassifiedLoop {
            kind: LoopKind::SlideTriangle,
            anchor: Some(r),
            witness: Some(LoopWitness::Triangle {
                system: system.clone(),
                slid: i,
                over: j,
                arc: e0.witness.arc.clone(),
                bound,
            }),
        }));
    }
    Ok(None)
}

fn try_square(chart: &Chart, cycle: &[SlideEdge], bound: usize) -> Result<Option<ClassifiedLoop>> {
    for r in 0..4 {
        let e0 = &cycle[r];
        let prev = &cycle[(r + 3) % 4];
        let system = &e0.witness.system;
        let (is, jo) = (e0.witness.slid, e0.witness.over);
        // the companion slide, read off the reversed closing edge
        let comp_slid = prev.result_key.clone();
        let comp_over = over_key(chart, prev);
        let want = cycle_keys(cycle, r);
        for ic in 0..system.len() {
            if chart.key(system.get(ic)) != comp_slid {
                continue;
            }
            for jc in 0..system.len() {
                if jc == ic || chart.key(system.get(jc)) != comp_over {
                    continue;
                }
                let cands = arc_candidates(chart.mesh(), system, ic, jc, bound);
                let found = exec::map(cands, |arc2| {
                    match derive_square(chart, system, (is, jo, &e0.witness.arc), (ic, jc, &arc2))
                    {
                        Ok((kind, keys)) if keys.to_vec() == want => Some((kind, arc2)),
                        _ => None,
                    }
                });
                if let Some((kind, arc2)) = found.into_iter().flatten().next() {
                    return Ok(Some(ClassifiedLoop {
                        kind,
                        anchor: Some(r),
                        witness: Some(LoopWitness::Square {
                            system: system.clone(),
                            first: (is, jo, e0.witness.arc.clone()),
                            second: (ic, jc, arc2),
                        }),
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn try_pentagon(chart: &Chart, cycle: &[SlideEdge], bound: usize) -> Result<Option<ClassifiedLoop>> {
    for r in 0..5 {
        let e0 = &cycle[r];
        let e1 = &cycle[(r + 1) % 5];
        let e2 = &cycle[(r + 2) % 5];
        let e3 = &cycle[(r + 3) % 5];
        let e4 = &cycle[(r + 4) % 5];
        // e0 slides the middle curve over the inner one
        let system = &e0.witness.system;
        let (middle, inner) = (e0.witness.slid, e0.witness.over);
        let k_mid = slid_key(chart, e0);
        let k_in = over_key(chart, e0);
        let k_mid2 = e0.result_key.clone();
        let outer = e1.witness.slid;
        if outer == middle || outer == inner || e1.witness.over != middle {
            continue;
        }
        let k_out = slid_key(chart, e1);
        if over_key(chart, e1) != k_mid2 {
            continue;
        }
        let k_top = e1.result_key.clone();
        if e2.witness.slid != middle
            || e2.witness.over != inner
            || slid_key(chart, e2) != k_mid2
            || over_key(chart, e2) != k_in
            || e2.result_key != k_mid
        {
            continue;
        }
        if e3.witness.slid != outer
            || e3.witness.over != inner
            || slid_key(chart, e3) != k_top
            || over_key(chart, e3) != k_in
        {
            continue;
        }
        let k_tilde = e3.result_key.clone();
        if e4.witness.slid != outer
            || e4.witness.over != middle
            || slid_key(chart, e4) != k_tilde
            || over_key(chart, e4) != k_mid
            || e4.result_key != k_out
        {
            continue;
        }
        let short_arc = &e0.witness.arc;
        let want = cycle_keys(cycle, r);
        let cands = arc_candidates(chart.mesh(), system, outer, middle, bound);
        let found = exec::map(cands, |long_arc| {
            match derive_pentagon(chart, system, outer, middle, inner, &long_arc, short_arc) {
                Ok(keys) if keys.to_vec() == want => Some(long_arc),
                _ => None,
            }
        });
        if let Some(long_arc) = found.into_iter().flatten().next() {
            return Ok(Some(ClassifiedLoop {
                kind: LoopKind::Pentagon,
                anchor: Some(r),
                witness: Some(LoopWitness::Pentagon {
                    system: system.clone(),
                    outer,
                    middle,
                    inner,
                    long_arc,
                    short_arc: short_arc.clone(),
                }),
            }));
        }
    }
    Ok(None)
}

/// Classify a closed cycle of slide edges, all realized on `chart`.
/// Every edge is replayed first; a cycle that does not validate is an
/// error, while a valid cycle of unrecognized shape comes back `Unknown`.
pub fn classify_loop(chart: &Chart, cycle: &[SlideEdge], bound: usize) -> Result<ClassifiedLoop> {
    if cycle.is_empty() {
        return Err(Error::Invalid("empty cycle".into()));
    }
    let n = cycle.len();
    for (t, e) in cycle.iter().enumerate() {
        if e.target != cycle[(t + 1) % n].source {
            return Err(Error::Invalid(format!(
                "cycle breaks between edges {} and {}",
                t,
                (t + 1) % n
            )));
        }
        e.replay(chart)?;
    }
    let found = match n {
        3 => try_triangle(chart, cycle, bound)?,
        4 => try_square(chart, cycle, bound)?,
        5 => try_pentagon(chart, cycle, bound)?,
        _ => None,
    };
    Ok(found.unwrap_or(ClassifiedLoop {
        kind: LoopKind::Unknown,
        anchor: None,
        witness: None,
    }))
}

/// Independently re-derive a classified loop from its witness. Returns the
/// vertex keys of the derived cycle; errors if the witness does not support
/// the claimed kind.
pub fn verify_loop(chart: &Chart, kind: LoopKind, witness: &LoopWitness) -> Result<Vec<CutSystemKey>> {
    match (kind, witness) {
        (
            LoopKind::SlideTriangle,
            LoopWitness::Triangle {
                system,
                slid,
                over,
                arc,
                bound,
            },
        ) => Ok(derive_triangle(chart, system, *slid, *over, arc, *bound)?.to_vec()),
        (_, LoopWitness::Square { system, first, second }) => {
            let (derived, keys) = derive_square(
                chart,
                system,
                (first.0, first.1, &first.2),
                (second.0, second.1, &second.2),
            )?;
            if derived != kind {
                return Err(Error::BadCertificate(format!(
                    "witness derives a {derived} rather than a {kind}"
                )));
            }
            Ok(keys.to_vec())
        }
        (
            LoopKind::Pentagon,
            LoopWitness::Pentagon {
                system,
                outer,
                middle,
                inner,
                long_arc,
                short_arc,
            },
        ) => Ok(derive_pentagon(chart, system, *outer, *middle, *inner, long_arc, short_arc)?
            .to_vec()),
        _ => Err(Error::BadCertificate(
            "witness does not fit the claimed kind".into(),
        )),
    }
}

/// Whether a four-cycle of systems, all hanging off one shared context
/// realization, changes its two alternating slots in different components
/// of the surface cut along the context.
pub fn detect_self_separated_square(chart: &Chart, square: &[MultiCurve; 4]) -> Result<bool> {
    let mesh = chart.mesh();
    let n = square[0].len();
    if square.iter().any(|s| s.len() != n) {
        return Err(Error::Invalid("square systems have mismatched sizes".into()));
    }
    let mut slots = [0usize; 4];
    for t in 0..4 {
        let a = &square[t];
        let b = &square[(t + 1) % 4];
        let diff: Vec<usize> = (0..n).filter(|&k| a.get(k) != b.get(k)).collect();
        if diff.len() != 1 {
            return Err(Error::Invalid(
                "square sides must change exactly one curve of a shared realization".into(),
            ));
        }
        slots[t] = diff[0];
        if chart.key(a.get(diff[0])) == chart.key(b.get(diff[0])) {
            return Err(Error::Invalid(
                "square side does not change the curve class".into(),
            ));
        }
    }
    if slots[0] != slots[2] || slots[1] != slots[3] || slots[0] == slots[1] {
        return Err(Error::Invalid(
            "square sides do not alternate between two slots".into(),
        ));
    }
    let (sa, sb) = (slots[0], slots[1]);
    let context: Vec<Curve> = (0..n)
        .filter(|&k| k != sa && k != sb)
        .map(|k| square[0].get(k).clone())
        .collect();
    let ctx = MultiCurve::new(mesh, context)?;
    let (cut, corr) = cut_along(mesh, &ctx)?;
    let comp_of = |c: &Curve| -> Result<usize> {
        let kept = corr.kept_edges[c.darts()[0].edge()]
            .ok_or_else(|| Error::Internal("changing curve lost by the cut".into()))?;
        Ok(cut.comp_of_edge(kept))
    };
    let a0 = comp_of(square[0].get(sa))?;
    let a1 = comp_of(square[1].get(sa))?;
    let b0 = comp_of(square[0].get(sb))?;
    let b1 = comp_of(square[2].get(sb))?;
    Ok(a0 == a1 && b0 == b1 && a0 != b0)
}
