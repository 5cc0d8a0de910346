use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_rational::BigRational;
use pds_core::algebra::QuadraticElement as Qe;
use pds_core::overlap::builtins::{octagonal, table, PlanarExample};
use pds_core::overlap::geometry::{area, Vec2};
use pds_core::overlap::{
    initial_overlaps, overlap_closure, overlap_successors, pds_verdict_2d, Overlap, OverlapVerdictKind,
    DEFAULT_OVERLAP_CAP,
};
use proptest::prelude::*;
use proptest::test_runner::Config;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn v1(x: i64, y: i64) -> Vec2 {
    Vec2::from_ints(x, y, 1)
}

#[test]
fn table_successors_of_unit_shift() {
    let b = table();
    let o = Overlap { type_a: 0, type_b: 0, offset: v1(1, 0) };
    let succ: Vec<(usize, usize, Vec2)> =
        overlap_successors(&b.substitution, &o).into_iter().map(|o| (o.type_a, o.type_b, o.offset)).collect();
    assert_eq!(succ, vec![(0, 1, v1(1, -1)), (0, 1, v1(1, 0)), (1, 0, v1(0, 0)), (1, 0, v1(0, 1))]);
}

#[test]
fn table_closure_golden() {
    let b = table();
    let seeds = initial_overlaps(&b.substitution, &b.tiling, &b.v);
    assert_eq!(seeds.len(), 2);
    let g = overlap_closure(&b.substitution, &seeds, DEFAULT_OVERLAP_CAP, 0);
    assert!(g.complete);
    assert_eq!(g.nodes.len(), 12);
    assert_eq!(g.stages.iter().map(BTreeSet::len).collect::<Vec<_>>(), vec![2, 8, 12, 12]);
    assert_eq!(g.stabilization_depth, Some(3));
    assert!(g.coincidences().is_empty());
}

#[test]
fn octagonal_closure_golden() {
    let b = octagonal();
    let seeds = initial_overlaps(&b.substitution, &b.tiling, &b.v);
    assert_eq!(seeds.len(), 10);
    let v = pds_verdict_2d(&b.substitution, &b.tiling, &b.v, None, DEFAULT_OVERLAP_CAP).unwrap();
    let g = &v.graph;
    assert_eq!(g.nodes.len(), 161);
    assert_eq!(g.coincidences().len(), 20);
    assert_eq!(g.stages.iter().map(BTreeSet::len).collect::<Vec<_>>(), vec![10, 28, 76, 86, 86, 86]);
    assert_eq!(g.stabilization_depth, Some(4));
    assert_eq!(g.new_at_stage(3).len(), 48);
    assert_eq!(g.stage_contained(5, 3), Some(true));
    assert_eq!(v.max_distance(), Some(3));
    assert_eq!(v.kind, OverlapVerdictKind::SufficientForPds);
}

#[test]
fn octagonal_non_lattice_rational_shift_is_inconclusive() {
    let b = octagonal();
    let shift = Vec2::new(Qe::rational(q(1, 2), 2), Qe::rational(q(1, 3), 2));
    let v = pds_verdict_2d(&b.substitution, &b.tiling, &shift, None, DEFAULT_OVERLAP_CAP).unwrap();
    assert!(!v.independence.holds());
    assert_ne!(v.kind, OverlapVerdictKind::SufficientForPds);
}

fn element() -> impl Strategy<Value = Qe> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6).prop_map(|(a, da, b, db)| Qe::new(q(a, da), q(b, db), 2).unwrap())
}

fn vector() -> impl Strategy<Value = Vec2> {
    (element(), element()).prop_map(|(x, y)| Vec2::new(x, y))
}

fn lift(v: &Vec2, d: u32) -> Vec2 {
    if d == 2 {
        return v.clone();
    }
    // Drop the irrational part for the rational table example.
    let [xa, _] = v.x.rational_coords();
    let [ya, _] = v.y.rational_coords();
    Vec2::new(Qe::rational(xa, 1), Qe::rational(ya, 1))
}

/// Built-ins with their seed overlaps, built once for all cases.
fn examples() -> &'static [(PlanarExample, Vec<Overlap>); 2] {
    static CACHE: OnceLock<[(PlanarExample, Vec<Overlap>); 2]> = OnceLock::new();
    CACHE.get_or_init(|| {
        [table(), octagonal()].map(|b| {
            let seeds = initial_overlaps(&b.substitution, &b.tiling, &b.v).into_iter().collect();
            (b, seeds)
        })
    })
}

proptest! {
    #![proptest_config(Config::with_cases(1000))]

    #[test]
    fn canonical_class_is_translation_invariant(which in 0usize..2, pick in any::<prop::sample::Index>(), t in vector()) {
        let (b, seeds) = &examples()[which];
        let ps = &b.substitution;
        let o = &seeds[pick.index(seeds.len())];
        let t = lift(&t, ps.d);
        let origin = Vec2::zero(ps.d);
        let moved = Overlap::from_placed(o.type_a, &t, o.type_b, &(&o.offset + &t));
        prop_assert_eq!(&moved, o);
        let again = Overlap::from_placed(moved.type_a, &origin, moved.type_b, &moved.offset);
        prop_assert_eq!(&again, &moved);
        prop_assert!(moved.is_valid(ps));
    }

    #[test]
    fn area_is_conserved(which in 0usize..2, pick in any::<prop::sample::Index>(), pos in vector()) {
        let ps = &examples()[which].0.substitution;
        let tile = pick.index(ps.prototiles.len());
        let pos = lift(&pos, ps.d);
        let total = ps
            .substitute(tile, &pos)
            .iter()
            .fold(Qe::zero(ps.d), |acc, (t, p)| &acc + &area(&ps.placed(*t, p)));
        prop_assert_eq!(total, &area(ps.polygon(tile)) * &ps.expansion.det());
    }
}
