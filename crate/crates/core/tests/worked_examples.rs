use crate::common::{elem, instance, same_set};
use brandt_core::brandt::AlgebraElement;
use brandt_core::cartan::{block_view, cartan_matrix, discrepancy_note};
use brandt_core::codes::{
    code_support, enumerate_idempotent_codes, is_direct_sum_of_minimal, left_ideal, min_weight,
    right_ideal, Side,
};
use brandt_core::groups::{cyclic, direct_product, s3};
use brandt_core::idempotents::is_central;

#[test]
fn c4_single_slot_idempotents() {
    let inst = instance(cyclic(4), 1);
    let c = &inst.ctx;
    let expected = [
        elem(
            c,
            &[
                ("1/4", 1, "e", 1),
                ("1/4", 1, "a", 1),
                ("1/4", 1, "a^2", 1),
                ("1/4", 1, "a^3", 1),
            ],
        ),
        elem(
            c,
            &[
                ("1/4", 1, "e", 1),
                ("-1/4", 1, "a", 1),
                ("1/4", 1, "a^2", 1),
                ("-1/4", 1, "a^3", 1),
            ],
        ),
        elem(
            c,
            &[
                ("1/4", 1, "e", 1),
                ("1/4*z", 1, "a", 1),
                ("-1/4", 1, "a^2", 1),
                ("-1/4*z", 1, "a^3", 1),
            ],
        ),
        elem(
            c,
            &[
                ("1/4", 1, "e", 1),
                ("-1/4*z", 1, "a", 1),
                ("-1/4", 1, "a^2", 1),
                ("1/4*z", 1, "a^3", 1),
            ],
        ),
    ];
    same_set(&inst.set, &expected).unwrap();
}

#[test]
fn c3_two_slots_with_sqrt3_coefficients() {
    // -(1/6 - √3i/6) = ζ/3 and -(1/6 + √3i/6) = ζ²/3 = -1/3 - ζ/3
    let inst = instance(cyclic(3), 2);
    let c = &inst.ctx;
    let mut expected = Vec::new();
    for j in 1..=2 {
        expected.push(elem(
            c,
            &[("1/3", j, "e", j), ("1/3", j, "a", j), ("1/3", j, "a^2", j)],
        ));
        expected.push(elem(
            c,
            &[
                ("1/3", j, "e", j),
                ("1/3*z", j, "a", j),
                ("-1/3 - 1/3*z", j, "a^2", j),
            ],
        ));
        expected.push(elem(
            c,
            &[
                ("1/3", j, "e", j),
                ("-1/3 - 1/3*z", j, "a", j),
                ("1/3*z", j, "a^2", j),
            ],
        ));
    }
    same_set(&inst.set, &expected).unwrap();
}

#[test]
fn klein_four_idempotents() {
    let inst = instance(direct_product(&cyclic(2), &cyclic(2)), 1);
    let c = &inst.ctx;
    let signs = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]];
    let labels = ["e", "a", "b", "ab"];
    let expected: Vec<AlgebraElement> = signs
        .iter()
        .map(|s| {
            let terms: Vec<(&str, usize, &str, usize)> = labels
                .iter()
                .zip(s)
                .map(|(&g, &sg)| (if sg > 0 { "1/4" } else { "-1/4" }, 1, g, 1))
                .collect();
            elem(c, &terms)
        })
        .collect();
    same_set(&inst.set, &expected).unwrap();
}

#[test]
fn s3_two_slots() {
    let inst = instance(s3(), 2);
    let c = &inst.ctx;
    let mut expected = Vec::new();
    for j in 1..=2 {
        let all = ["e", "(123)", "(132)", "(12)", "(13)", "(23)"];
        expected.push(elem(c, &all.map(|g| ("1/6", j, g, j))));
        expected.push(elem(
            c,
            &all.map(|g| (if g.len() == 4 { "-1/6" } else { "1/6" }, j, g, j)),
        ));
        expected.push(elem(
            c,
            &[
                ("4/6", j, "e", j),
                ("-2/6", j, "(123)", j),
                ("-2/6", j, "(132)", j),
            ],
        ));
    }
    same_set(&inst.set, &expected).unwrap();
}

#[test]
fn trivial_group_two_slots_is_not_central() {
    let inst = instance(cyclic(1), 2);
    let c = &inst.ctx;
    let e1 = elem(c, &[("1", 1, "e", 1)]);
    let e4 = elem(c, &[("1", 2, "e", 2)]);
    same_set(&inst.set, &[e1.clone(), e4]).unwrap();
    assert!(!is_central(&e1));
    // e1·ℂS is spanned by (1,e,1),(1,e,2); ℂS·e1 by (1,e,1),(2,e,1)
    let right = right_ideal(&e1);
    let left = left_ideal(&e1);
    assert!(right.contains(&elem(c, &[("1", 1, "e", 2)])));
    assert!(!left.contains(&elem(c, &[("1", 1, "e", 2)])));
    assert!(left.contains(&elem(c, &[("1", 2, "e", 1)])));
}

#[test]
fn cartan_trivial_group_and_c2() {
    for n in 1..=5 {
        let m = cartan_matrix(&instance(cyclic(1), n).set);
        assert_eq!(m.entries, vec![vec![1; n]; n]);
    }
    for n in 1..=3 {
        let m = cartan_matrix(&instance(cyclic(2), n).set);
        for blocks in block_view(&m, 2).unwrap() {
            for b in blocks {
                assert_eq!(b, vec![vec![1, 0], vec![0, 1]]);
            }
        }
    }
}

#[test]
fn cartan_c4_two_slots_is_flagged() {
    let inst = instance(cyclic(4), 2);
    let m = cartan_matrix(&inst.set);
    assert!(m.is_symmetric());
    assert_eq!(m.row_sums(), vec![2; 8]);
    assert_eq!(m.max_entry(), 1);
    assert!(discrepancy_note(&inst.set, &m).unwrap().contains("differs"));
    assert!(discrepancy_note(
        &instance(cyclic(2), 2).set,
        &cartan_matrix(&instance(cyclic(2), 2).set)
    )
    .is_none());
}

#[test]
fn table_one_rows() {
    let inst = instance(cyclic(4), 1);
    let reports = enumerate_idempotent_codes(&inst.set, Side::Left, 16, 24).unwrap();
    assert_eq!(reports.len(), 16);
    let dims: Vec<usize> = reports.iter().map(|r| r.dimension).collect();
    let mut sorted = dims.clone();
    sorted.sort();
    assert_eq!(sorted, vec![0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 4]);
    for r in &reports {
        assert_eq!(r.dimension, r.mask.chars().filter(|&c| c == '1').count());
        assert!(r.additive);
        assert!(r.min_weight <= r.support_size);
        assert_eq!(r.dimension == 0, r.min_weight == 0);
        if r.is_minimal && r.dimension > 0 {
            assert_eq!(r.min_weight, 4);
        }
    }
    let full = reports.iter().find(|r| r.mask == "1111").unwrap();
    assert_eq!(full.min_weight, 1);
    assert!(full.weight_discrepancy);
    let zero = &reports[0];
    assert_eq!(
        (zero.dimension, zero.min_weight, zero.support_size),
        (0, 0, 0)
    );
}

#[test]
fn minimal_code_support_is_the_diagonal() {
    let inst = instance(cyclic(4), 1);
    let c = left_ideal(inst.set.get(3, 1));
    assert_eq!(code_support(&c).len(), 4);
    assert_eq!(min_weight(&c, 24).unwrap().weight, 4);
}

#[test]
fn direct_sums_at_one_slot() {
    let inst = instance(cyclic(4), 1);
    let sum = inst.set.get(0, 1).add(inst.set.get(1, 1)).unwrap();
    let d = is_direct_sum_of_minimal(&left_ideal(&sum), &inst.set).unwrap();
    assert_eq!(d.members, vec![0, 1]);
    assert_eq!(d.mask, "1100");
}

#[test]
fn example_idempotent_with_z_generates_a_split_left_ideal() {
    // ℂS·e_z coincides with ℂS·(1,e,1), the sum of the two minimal codes at
    // slot 1, so a decomposition exists; only the right ideal resists it.
    let inst = instance(cyclic(2), 2);
    let c = &inst.ctx;
    let ez = elem(c, &[("1", 1, "e", 1), ("1", 2, "e", 1), ("1", 2, "a", 1)]);
    assert_eq!(ez.mul(&ez).unwrap(), ez);
    let left = left_ideal(&ez);
    assert_eq!(left.dimension(), 4);
    assert_eq!(
        is_direct_sum_of_minimal(&left, &inst.set).unwrap().members,
        vec![0, 1]
    );
    let right = right_ideal(&ez);
    assert!(is_direct_sum_of_minimal(&right, &inst.set).is_none());
}
