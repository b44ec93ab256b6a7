//! Hand-built closed cycles in the slide graph with known classification
//! outcomes.
//!
//! Every fixture returns one base chart plus a cycle of slide edges over it.
//! Consecutive edges agree endpoint-to-endpoint as system keys, not as
//! concrete curves: each edge is produced independently from a hand-picked
//! realization of its source classes on the same base mesh. Working on the
//! unrefined shared chart keeps the classifier's bounded arc searches small;
//! a bound of four covers every cycle here with room to spare.

use crate::chart::Chart;
use crate::moves::{slide_edge, SlideArc, SlideEdge};
use crate::surface::{Curve, Dart, Mesh, MultiCurve};

use super::{build_grid, four_holed_sphere, punctured_torus_grid, Grid};

/// Four holes in a row with two-cell margins between and around them.
pub fn wide_grid() -> (Mesh, Grid) {
    build_grid(26, 9, false, false, &[(4, 4), (10, 4), (16, 4), (22, 4)], &[])
}

/// Three holes, the right two far enough from the first and from the outer
/// boundary to nest three levels of rectangles around them.
pub fn nested_grid() -> (Mesh, Grid) {
    build_grid(22, 11, false, false, &[(4, 5), (11, 5), (15, 5)], &[])
}

fn sys(mesh: &Mesh, curves: &[Vec<Dart>]) -> MultiCurve {
    let curves = curves
        .iter()
        .map(|d| Curve::new(mesh, d.clone()).expect("fixture curve"))
        .collect();
    MultiCurve::new(mesh, curves).expect("fixture system")
}

fn edge(chart: &Chart, system: &MultiCurve, slid: usize, over: usize, darts: Vec<Dart>) -> SlideEdge {
    let arc = SlideArc::new(chart.mesh(), darts).expect("fixture arc");
    slide_edge(chart, system, slid, over, &arc).expect("fixture slide").0
}

fn assert_chains(cycle: &[SlideEdge]) {
    for (t, e) in cycle.iter().enumerate() {
        let next = &cycle[(t + 1) % cycle.len()];
        assert_eq!(e.target, next.source, "fixture cycle breaks after edge {t}");
    }
}

/// Merge two one-hole bands, then trade the merged band back down to each
/// factor in turn. Three slides, closing back to the start.
pub fn triangle_cycle() -> (Chart, Vec<SlideEdge>) {
    let (mesh, g) = four_holed_sphere();
    let chart = Chart::new(&mesh);
    let h = |c, r| Dart::fwd(g.h_edge(c, r));
    let v = |c, r| Dart::fwd(g.v_edge(c, r));
    let r1 = g.rect_curve(&mesh, 2, 2, 5, 5);
    let r2 = g.rect_curve(&mesh, 6, 2, 9, 5);
    let r12 = g.rect_curve(&mesh, 1, 1, 10, 6);

    let cycle = vec![
        edge(&chart, &sys(&mesh, &[r1.clone(), r2.clone()]), 0, 1, vec![h(5, 3)]),
        edge(&chart, &sys(&mesh, &[r12.clone(), r2]), 1, 0, vec![v(6, 1).rev()]),
        edge(&chart, &sys(&mesh, &[r12, r1]), 0, 1, vec![h(1, 3)]),
    ];
    assert_chains(&cycle);
    (chart, cycle)
}

/// Two merges in disjoint territory, performed in both orders. All four
/// slide slots are distinct.
pub fn square_i_cycle() -> (Chart, Vec<SlideEdge>) {
    let (mesh, g) = wide_grid();
    let chart = Chart::new(&mesh);
    let h = |c, r| Dart::fwd(g.h_edge(c, r));
    let v = |c, r| Dart::fwd(g.v_edge(c, r));
    let r1 = g.rect_curve(&mesh, 3, 3, 6, 6);
    let r2 = g.rect_curve(&mesh, 9, 3, 12, 6);
    let r3 = g.rect_curve(&mesh, 15, 3, 18, 6);
    let r4 = g.rect_curve(&mesh, 21, 3, 24, 6);
    let r12 = g.rect_curve(&mesh, 1, 2, 13, 7);
    let r34 = g.rect_curve(&mesh, 14, 2, 25, 7);

    let cycle = vec![
        edge(
            &chart,
            &sys(&mesh, &[r1.clone(), r2.clone(), r3.clone(), r4.clone()]),
            0,
            1,
            vec![h(6, 4), h(7, 4), h(8, 4)],
        ),
        edge(
            &chart,
            &sys(&mesh, &[r12.clone(), r2.clone(), r3, r4.clone()]),
            2,
            3,
            vec![h(18, 4), h(19, 4), h(20, 4)],
        ),
        edge(
            &chart,
            &sys(&mesh, &[r12, r2.clone(), r34.clone(), r4.clone()]),
            0,
            1,
            vec![v(10, 2)],
        ),
        edge(&chart, &sys(&mesh, &[r1, r2, r34, r4]), 2, 3, vec![v(22, 2)]),
    ];
    assert_chains(&cycle);
    (chart, cycle)
}

/// Curves on opposite sides of a separating ring each slide over it, so the
/// shared over-curve is approached from both sides.
pub fn square_ii_cycle() -> (Chart, Vec<SlideEdge>) {
    let (mesh, g) = nested_grid();
    let chart = Chart::new(&mesh);
    let h = |c, r| Dart::fwd(g.h_edge(c, r));
    let v = |c, r| Dart::fwd(g.v_edge(c, r));
    let a = g.rect_curve(&mesh, 3, 4, 6, 7); // first hole, outside the ring
    let b = g.rect_curve(&mesh, 10, 4, 13, 7); // second hole, inside
    let c3 = g.rect_curve(&mesh, 14, 4, 17, 7); // third hole, inside
    let rho = g.rect_curve(&mesh, 9, 3, 18, 8); // ring around holes two and three
    let g1 = g.rect_curve(&mesh, 1, 1, 20, 10); // all three holes

    let cycle = vec![
        edge(
            &chart,
            &sys(&mesh, &[a.clone(), b.clone(), rho.clone()]),
            0,
            2,
            vec![h(6, 5), h(7, 5), h(8, 5)],
        ),
        edge(&chart, &sys(&mesh, &[g1.clone(), b, rho.clone()]), 1, 2, vec![h(9, 6).rev()]),
        edge(
            &chart,
            &sys(&mesh, &[g1, c3.clone(), rho.clone()]),
            0,
            2,
            vec![v(5, 1), v(5, 2), h(5, 3), h(6, 3), h(7, 3), h(8, 3)],
        ),
        edge(&chart, &sys(&mesh, &[a, c3, rho]), 1, 2, vec![h(17, 6)]),
    ];
    assert_chains(&cycle);
    (chart, cycle)
}

/// One curve slides over two different neighbors, leaving on the same side
/// both times.
pub fn square_iii_cycle() -> (Chart, Vec<SlideEdge>) {
    let (mesh, g) = wide_grid();
    let chart = Chart::new(&mesh);
    let h = |c, r| Dart::fwd(g.h_edge(c, r));
    let v = |c, r| Dart::fwd(g.v_edge(c, r));
    let r1 = g.rect_curve(&mesh, 3, 3, 6, 6);
    let r2 = g.rect_curve(&mesh, 9, 3, 12, 6);
    let r3 = g.rect_curve(&mesh, 15, 3, 18, 6);
    let r12 = g.rect_curve(&mesh, 1, 2, 13, 7);
    let g123 = g.rect_curve(&mesh, 1, 1, 20, 8);
    let r23 = g.rect_curve(&mesh, 8, 2, 19, 7);

    let cycle = vec![
        edge(
            &chart,
            &sys(&mesh, &[r1.clone(), r2.clone(), r3.clone()]),
            1,
            0,
            vec![h(8, 4).rev(), h(7, 4).rev(), h(6, 4).rev()],
        ),
        edge(
            &chart,
            &sys(&mesh, &[r1.clone(), r12, r3.clone()]),
            1,
            2,
            vec![h(13, 4), h(14, 4)],
        ),
        edge(&chart, &sys(&mesh, &[r1.clone(), g123, r3.clone()]), 1, 0, vec![v(4, 1), v(4, 2)]),
        edge(&chart, &sys(&mesh, &[r1, r23, r3]), 1, 2, vec![v(16, 2)]),
    ];
    assert_chains(&cycle);
    (chart, cycle)
}

/// On the punctured torus the same slid-over pair closes two ways: across
/// the plain band and around the back past the puncture, approaching the
/// over curve from opposite sides.
pub fn square_iv_cycle() -> (Chart, Vec<SlideEdge>) {
    let (mesh, g) = punctured_torus_grid(6);
    let chart = Chart::new(&mesh);
    let v = |c, r| Dart::fwd(g.v_edge(c, r));
    let patch = g.rect_curve(&mesh, 2, 4, 4, 6); // bounds four cells across the top seam
    let row3 = g.row_curve(&mesh, 3);
    let row5 = g.row_curve(&mesh, 5);
    let ring = g.hole_ring_curve(&mesh);

    let cycle = vec![
        edge(&chart, &sys(&mesh, &[patch, row3.clone()]), 0, 1, vec![v(3, 3).rev()]),
        edge(
            &chart,
            &sys(&mesh, &[row5.clone(), row3.clone()]),
            0,
            1,
            vec![v(2, 5), v(2, 0), v(2, 1), v(2, 2)],
        ),
        edge(&chart, &sys(&mesh, &[ring, row3.clone()]), 0, 1, vec![v(2, 2)]),
        edge(
            &chart,
            &sys(&mesh, &[row5, row3]),
            0,
            1,
            vec![v(3, 4).rev(), v(3, 3).rev()],
        ),
    ];
    assert_chains(&cycle);
    (chart, cycle)
}

/// Outer, middle and inner curves: the middle slides over the inner while
/// the outer slides over the middle, associated in both orders.
pub fn pentagon_cycle() -> (Chart, Vec<SlideEdge>) {
    let (mesh, g) = wide_grid();
    let chart = Chart::new(&mesh);
    let h = |c, r| Dart::fwd(g.h_edge(c, r));
    let v = |c, r| Dart::fwd(g.v_edge(c, r));
    let r1 = g.rect_curve(&mesh, 3, 3, 6, 6);
    let r2 = g.rect_curve(&mesh, 9, 3, 12, 6);
    let r3 = g.rect_curve(&mesh, 15, 3, 18, 6);
    let r12 = g.rect_curve(&mesh, 1, 2, 13, 7);
    let g123 = g.rect_curve(&mesh, 1, 1, 20, 8);
    let r23 = g.rect_curve(&mesh, 8, 2, 19, 7);

    let cycle = vec![
        edge(
            &chart,
            &sys(&mesh, &[r1.clone(), r2.clone(), r3.clone()]),
            1,
            2,
            vec![h(12, 4), h(13, 4), h(14, 4)],
        ),
        edge(
            &chart,
            &sys(&mesh, &[r1, r23.clone(), r3.clone()]),
            0,
            1,
            vec![h(6, 4), h(7, 4)],
        ),
        edge(&chart, &sys(&mesh, &[g123.clone(), r23, r3.clone()]), 1, 2, vec![v(16, 2)]),
        edge(
            &chart,
            &sys(&mesh, &[g123, r2.clone(), r3.clone()]),
            0,
            2,
            vec![v(17, 1), v(17, 2)],
        ),
        edge(&chart, &sys(&mesh, &[r12, r2, r3]), 0, 1, vec![v(10, 2)]),
    ];
    assert_chains(&cycle);
    (chart, cycle)
}

/// Three slides that close up as keys but follow no triangle pattern: the
/// third one loops at its own source by sliding over a null curve.
pub fn mismatched_triangle_cycle() -> (Chart, Vec<SlideEdge>) {
    let (mesh, g) = four_holed_sphere();
    let chart = Chart::new(&mesh);
    let h = |c, r| Dart::fwd(g.h_edge(c, r));
    let v = |c, r| Dart::fwd(g.v_edge(c, r));
    let r1 = g.rect_curve(&mesh, 2, 2, 5, 5);
    let r2 = g.rect_curve(&mesh, 6, 2, 9, 5);
    let r12 = g.rect_curve(&mesh, 1, 1, 10, 6);
    let t = g.rect_curve(&mesh, 11, 1, 14, 2); // bounds a disk

    let cycle = vec![
        edge(&chart, &sys(&mesh, &[r1.clone(), r2.clone(), t.clone()]), 0, 1, vec![h(5, 3)]),
        edge(&chart, &sys(&mesh, &[r12, r2.clone(), t.clone()]), 0, 1, vec![v(6, 1)]),
        edge(&chart, &sys(&mesh, &[r1, r2, t]), 1, 2, vec![h(9, 2), h(10, 2)]),
    ];
    assert_chains(&cycle);
    (chart, cycle)
}

/// Merge, unmerge, then a doubled self-loop over a distant null curve.
/// Shape-compatible candidate arcs exist at two rotations, but the corner
/// they derive records the merge, which looping does not reproduce, so
/// every candidate is rejected on keys.
pub fn null_detour_square_cycle() -> (Chart, Vec<SlideEdge>) {
    let (mesh, g) = four_holed_sphere();
    let chart = Chart::new(&mesh);
    let h = |c, r| Dart::fwd(g.h_edge(c, r));
    let v = |c, r| Dart::fwd(g.v_edge(c, r));
    let r1 = g.rect_curve(&mesh, 2, 2, 5, 5);
    let r2 = g.rect_curve(&mesh, 6, 2, 9, 5);
    let r12 = g.rect_curve(&mesh, 1, 1, 10, 6);
    let t = g.rect_curve(&mesh, 11, 1, 14, 2);

    let out = edge(&chart, &sys(&mesh, &[r1.clone(), r2.clone(), t.clone()]), 0, 1, vec![h(5, 3)]);
    let back = edge(&chart, &sys(&mesh, &[r12, r2.clone(), t.clone()]), 0, 1, vec![v(6, 1)]);
    let detour = edge(
        &chart,
        &sys(&mesh, &[r1, r2, t]),
        0,
        2,
        vec![v(5, 1).rev(), h(5, 1), h(6, 1), h(7, 1), h(8, 1), h(9, 1), h(10, 1)],
    );
    let cycle = vec![out, back, detour.clone(), detour];
    assert_chains(&cycle);
    (chart, cycle)
}

/// A square whose two shared-over slides approach the over curve from the
/// same side: both slid curves sit outside the ring. Rejected by the side
/// check where the shape fits and by keys everywhere else.
pub fn same_side_square_cycle() -> (Chart, Vec<SlideEdge>) {
    let (mesh, g) = nested_grid();
    let chart = Chart::new(&mesh);
    let h = |c, r| Dart::fwd(g.h_edge(c, r));
    let v = |c, r| Dart::fwd(g.v_edge(c, r));
    let a = g.rect_curve(&mesh, 3, 4, 6, 7); // first hole, outside the ring
    let t = g.rect_curve(&mesh, 2, 8, 6, 9); // bounds a disk, outside the ring
    let rho = g.rect_curve(&mesh, 9, 3, 18, 8); // ring around holes two and three
    let g1 = g.rect_curve(&mesh, 1, 1, 20, 10); // all three holes
    let p = g.rect_curve(&mesh, 8, 2, 19, 9); // ring parallel to rho

    let cycle = vec![
        edge(
            &chart,
            &sys(&mesh, &[a.clone(), t.clone(), rho.clone()]),
            0,
            2,
            vec![h(6, 5), h(7, 5), h(8, 5)],
        ),
        edge(
            &chart,
            &sys(&mesh, &[g1.clone(), t.clone(), rho.clone()]),
            1,
            2,
            vec![h(6, 8), h(7, 8), h(8, 8)],
        ),
        edge(&chart, &sys(&mesh, &[g1.clone(), p, rho.clone()]), 1, 2, vec![v(12, 2)]),
        edge(
            &chart,
            &sys(&mesh, &[g1, t, rho]),
            0,
            2,
            vec![v(5, 1), v(5, 2), h(5, 3), h(6, 3), h(7, 3), h(8, 3)],
        ),
    ];
    assert_chains(&cycle);
    (chart, cycle)
}

/// Five slides that close up but never stack two slides over a common
/// middle curve in the order the pentagon needs.
pub fn mismatched_pentagon_cycle() -> (Chart, Vec<SlideEdge>) {
    let (mesh, g) = four_holed_sphere();
    let chart = Chart::new(&mesh);
    let h = |c, r| Dart::fwd(g.h_edge(c, r));
    let v = |c, r| Dart::fwd(g.v_edge(c, r));
    let r1 = g.rect_curve(&mesh, 2, 2, 5, 5);
    let r2 = g.rect_curve(&mesh, 6, 2, 9, 5);
    let r12 = g.rect_curve(&mesh, 1, 1, 10, 6);
    let t = g.rect_curve(&mesh, 11, 1, 14, 2);

    let out = edge(&chart, &sys(&mesh, &[r1.clone(), r2.clone(), t.clone()]), 0, 1, vec![h(5, 3)]);
    let back = edge(&chart, &sys(&mesh, &[r12, r2.clone(), t.clone()]), 0, 1, vec![v(6, 1)]);
    let detour = edge(
        &chart,
        &sys(&mesh, &[r1, r2, t]),
        0,
        2,
        vec![v(5, 1).rev(), h(5, 1), h(6, 1), h(7, 1), h(8, 1), h(9, 1), h(10, 1)],
    );
    let cycle = vec![out.clone(), back.clone(), out, back, detour];
    assert_chains(&cycle);
    (chart, cycle)
}
