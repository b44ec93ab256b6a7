//! End-to-end classification of hand-built slide-graph cycles.

use slidecomplex::fixtures::loops;
use slidecomplex::moves::{classify_loop, verify_loop, LoopKind};
use slidecomplex::Error;

const BOUND: usize = 4;

fn check_positive(
    fixture: fn() -> (slidecomplex::chart::Chart, Vec<slidecomplex::moves::SlideEdge>),
    kind: LoopKind,
) {
    let (chart, cycle) = fixture();
    let out = classify_loop(&chart, &cycle, BOUND).unwrap();
    assert_eq!(out.kind, kind);
    assert_eq!(out.anchor, Some(0));
    let witness = out.witness.as_ref().expect("positive classification carries a witness");
    let derived = verify_loop(&chart, out.kind, witness).unwrap();
    let expected: Vec<_> = cycle.iter().map(|e| e.source.clone()).collect();
    assert_eq!(derived, expected);
}

fn check_unknown(fixture: fn() -> (slidecomplex::chart::Chart, Vec<slidecomplex::moves::SlideEdge>)) {
    let (chart, cycle) = fixture();
    let out = classify_loop(&chart, &cycle, BOUND).unwrap();
    assert_eq!(out.kind, LoopKind::Unknown);
    assert_eq!(out.anchor, None);
    assert!(out.witness.is_none());
}

#[test]
fn triangle_is_recognized() {
    check_positive(loops::triangle_cycle, LoopKind::SlideTriangle);
}

#[test]
fn disjoint_slides_commute() {
    check_positive(loops::square_i_cycle, LoopKind::SquareI);
}

#[test]
fn shared_over_curve_from_both_sides() {
    check_positive(loops::square_ii_cycle, LoopKind::SquareII);
}

#[test]
fn shared_slid_curve_two_targets() {
    check_positive(loops::square_iii_cycle, LoopKind::SquareIII);
}

#[test]
fn shared_pair_opposite_approaches() {
    check_positive(loops::square_iv_cycle, LoopKind::SquareIV);
}

#[test]
fn pentagon_is_recognized() {
    check_positive(loops::pentagon_cycle, LoopKind::Pentagon);
}

#[test]
fn closing_keys_alone_do_not_make_a_triangle() {
    check_unknown(loops::mismatched_triangle_cycle);
}

#[test]
fn null_detour_is_not_a_square() {
    check_unknown(loops::null_detour_square_cycle);
}

#[test]
fn same_side_approaches_are_not_a_square() {
    check_unknown(loops::same_side_square_cycle);
}

#[test]
fn out_and_back_twice_is_not_a_pentagon() {
    check_unknown(loops::mismatched_pentagon_cycle);
}

#[test]
fn broken_chains_are_rejected() {
    let (chart, cycle) = loops::triangle_cycle();
    let err = classify_loop(&chart, &cycle[..2], BOUND).unwrap_err();
    assert!(matches!(err, Error::Invalid(_)));
    let err = classify_loop(&chart, &[], BOUND).unwrap_err();
    assert!(matches!(err, Error::Invalid(_)));
}
