mod common;

use pmt_core::{
    analyze, apply_plan, bring_hole, closest_subset, gather_holes, move_pebble,
    solve_motion_planning, Configuration, Move, PebbleId, Plan, Tree, Variant,
};

/// Path u5 - u4 - u3 - u2 - u1 (ids 0..=4) with a branch on u4 (5) and
/// one on u3 (6).
fn branching_path(ts: &[usize]) -> Tree {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (2, 6)];
    Tree::with_trans_shipment(7, &edges, ts).unwrap()
}

#[test]
fn star_constants() {
    let p = analyze(&Tree::star(3).view());
    assert_eq!((p.c1, p.c2, p.c), (1, 0, 2));
}

#[test]
fn bring_hole_shifts_the_path() {
    let tree = branching_path(&[]);
    let start = Configuration::new(7, vec![4, 3, 2, 1, 5]).unwrap();
    let plan = bring_hole(&tree, &start, 0, 4, Variant::Plain).unwrap();
    let expected = Plan::from(vec![
        Move::new(1, 0),
        Move::new(2, 1),
        Move::new(3, 2),
        Move::new(4, 3),
    ]);
    assert_eq!(plan, expected);
    let end = apply_plan(&tree, &start, &plan, Variant::Plain).unwrap();
    assert_eq!(end.positions(), &[3, 2, 1, 0, 5]);
    assert!(end.is_hole(4));
}

#[test]
fn bring_hole_crosses_trans_shipment_atomically() {
    let tree = branching_path(&[2]);
    let start = Configuration::new(7, vec![4, 3, 1, 5, 6]).unwrap();
    let plan = bring_hole(&tree, &start, 0, 4, Variant::TransShipment).unwrap();
    let expected = Plan::from(vec![
        Move::new(1, 0),
        Move::new(3, 2),
        Move::new(2, 1),
        Move::new(4, 3),
    ]);
    assert_eq!(plan, expected);
    let end = apply_plan(&tree, &start, &plan, Variant::TransShipment).unwrap();
    assert!(end.is_hole(4) && end.is_hole(2));
}

#[test]
fn move_pebble_over_free_path() {
    let tree = Tree::path_graph(5);
    let start = Configuration::new(5, vec![0]).unwrap();
    let plan = move_pebble(&tree, &start, 0, 4, Variant::Plain).unwrap();
    assert_eq!(plan.len(), 4);
    let end = apply_plan(&tree, &start, &plan, Variant::Plain).unwrap();
    assert_eq!(end.positions(), &[4]);
}

/// Main line a B C D E F G g (0..=7), branches B-b (8), C-c (9), G-M (10),
/// E-I (12) with I-d (11) and I-O (13), E-P (14) with P-e (15) - f (16).
fn gather_tree() -> (Tree, Configuration) {
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 6),
        (6, 7),
        (1, 8),
        (2, 9),
        (6, 10),
        (4, 12),
        (12, 11),
        (12, 13),
        (4, 14),
        (14, 15),
        (15, 16),
    ];
    let tree = Tree::new(17, &edges).unwrap();
    let pebbles = vec![1, 2, 3, 4, 5, 6, 10, 12, 13, 14];
    (tree, Configuration::new(17, pebbles).unwrap())
}

#[test]
fn closest_holes_to_a_subtree() {
    let (tree, start) = gather_tree();
    let view = tree.view();
    let holes: Vec<usize> = (0..17).filter(|&v| start.is_hole(v)).collect();
    let chosen = closest_subset(&view, &holes, &[3, 4, 5], 3).unwrap();
    let cost = |set: &[usize]| -> usize {
        set.iter()
            .map(|&h| {
                [3, 4, 5]
                    .iter()
                    .map(|&a| tree.distance(h, a))
                    .min()
                    .unwrap()
            })
            .sum()
    };
    // c, d, e and g all sit at distance two, so {c, d, g} is one optimum.
    assert_eq!(cost(&chosen), cost(&[9, 11, 7]));
    assert_eq!(cost(&chosen), 6);
}

#[test]
fn gather_empties_the_subtree() {
    let (tree, start) = gather_tree();
    let plan = gather_holes(&tree, &start, &[3, 4, 5], Variant::Plain).unwrap();
    let end = apply_plan(&tree, &start, &plan, Variant::Plain).unwrap();
    assert!([3, 4, 5].iter().all(|&v| end.is_hole(v)));
    assert!(plan.len() <= 17 * 3);
}

#[test]
fn motion_when_the_target_side_lacks_holes() {
    // Same shape as the gather tree, with the tail extended to a leaf target.
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 6),
        (6, 7),
        (1, 8),
        (2, 9),
        (7, 10),
        (4, 12),
        (12, 11),
        (12, 13),
        (4, 14),
        (14, 15),
        (15, 16),
    ];
    let tree = Tree::new(17, &edges).unwrap();
    assert_eq!(analyze(&tree.view()).c, 5);
    let holes = [0, 1, 9, 11, 15, 16];
    let pebbles: Vec<usize> = (0..17).filter(|v| !holes.contains(v)).collect();
    let s = pebbles.iter().position(|&v| v == 4).unwrap();
    let start = Configuration::new(17, pebbles).unwrap();
    let plan = solve_motion_planning(&tree, &start, PebbleId(s), 10, Variant::Plain).unwrap();
    let end = apply_plan(&tree, &start, &plan, Variant::Plain).unwrap();
    assert_eq!(end.position(PebbleId(s)), 10);
    assert!(common::independent_replay(&tree, &start, &plan, Variant::Plain).is_ok());
}
