mod common;

use common::*;
use patsat::*;
use proptest::prelude::*;

fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(m, n)| {
        prop::collection::vec(any::<bool>(), m * n).prop_map(move |cells| {
            Matrix::from_ones(m, n, (0..m * n).filter(|&b| cells[b]).map(|b| (b / n, b % n))).unwrap()
        })
    })
}

fn pattern_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Pattern> {
    matrix_strategy(max_rows, max_cols).prop_filter_map("zero matrix", |m| Pattern::new(m).ok())
}

fn op_strategy() -> impl Strategy<Value = SymmetryOp> {
    prop::sample::select(SymmetryOp::ALL.to_vec())
}

/// Independent once-separability check on the list of 1-entries.
fn once_separable_by_cells(p: &Matrix) -> bool {
    let ones: Vec<(usize, usize)> = p.ones().collect();
    for r in 1..p.rows() {
        for c in 1..p.cols() {
            let quadrant = |&(i, j): &(usize, usize)| (i < r, j < c);
            let count = |q: (bool, bool)| ones.iter().filter(|e| quadrant(e) == q).count();
            let (tl, tr, bl, br) = (
                count((true, true)),
                count((true, false)),
                count((false, true)),
                count((false, false)),
            );
            if (tl > 0 && br > 0 && tr == 0 && bl == 0) || (tr > 0 && bl > 0 && tl == 0 && br == 0) {
                return true;
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn contains_matches_subset_enumeration(m in matrix_strategy(6, 6), p in pattern_strategy(3, 3)) {
        let found = contains(&m, &p);
        prop_assert_eq!(found.is_some(), brute_contains(&m, &p));
        if let Some(occ) = found {
            prop_assert!(occ.is_valid(&m, &p));
        }
    }

    #[test]
    fn adding_ones_preserves_containment(m in matrix_strategy(5, 5), p in pattern_strategy(3, 3), extra in any::<u64>()) {
        let mut bigger = m.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if extra >> ((i * m.cols() + j) % 64) & 1 == 1 {
                    bigger.set(i, j, true);
                }
            }
        }
        if contains(&m, &p).is_some() {
            prop_assert!(contains(&bigger, &p).is_some());
        }
    }

    #[test]
    fn containment_commutes_with_symmetry(m in matrix_strategy(5, 5), p in pattern_strategy(3, 3), op in op_strategy()) {
        prop_assert_eq!(contains(&m, &p).is_some(), contains(&m.apply(op), &p.apply(op)).is_some());
    }

    #[test]
    fn forced_occurrences_use_the_cell(m in matrix_strategy(5, 5), p in pattern_strategy(3, 3)) {
        for (i, j) in m.ones().collect::<Vec<_>>() {
            if let Some(occ) = contains_using(&m, &p, (i, j)).unwrap() {
                prop_assert!(occ.is_valid(&m, &p));
                prop_assert!(occ.image(&p).contains(&(i, j)));
                prop_assert!(contains(&m, &p).is_some());
            }
        }
    }

    #[test]
    fn new_occurrences_after_a_flip_use_the_flipped_cell(m in matrix_strategy(4, 5), p in pattern_strategy(3, 3)) {
        // thin m out until it avoids p
        let mut host = m;
        while let Some(occ) = contains(&host, &p) {
            let (i, j) = occ.image(&p)[0];
            host.set(i, j, false);
        }
        for (i, j) in host.zeros_iter().collect::<Vec<_>>() {
            let flipped = host.with_one(i, j);
            let forced = contains_using(&flipped, &p, (i, j)).unwrap();
            prop_assert_eq!(forced.is_some(), brute_contains(&flipped, &p));
        }
    }

    #[test]
    fn text_round_trip(m in matrix_strategy(8, 12)) {
        prop_assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn symmetry_group_laws(m in matrix_strategy(5, 7)) {
        prop_assert_eq!(m.apply(SymmetryOp::Rotate90Cw).apply(SymmetryOp::Rotate90Ccw), m.clone());
        prop_assert_eq!(m.apply(SymmetryOp::Transpose).apply(SymmetryOp::Transpose), m.clone());
        prop_assert_eq!(
            m.apply(SymmetryOp::Rotate180),
            m.apply(SymmetryOp::Rotate90Cw).apply(SymmetryOp::Rotate90Cw)
        );
        for op in SymmetryOp::ALL {
            prop_assert_eq!(m.apply(op).apply(op.inverse()), m.clone());
            prop_assert_eq!(m.apply(op).weight(), m.weight());
        }
    }

    #[test]
    fn once_separable_matches_cell_check(p in pattern_strategy(5, 5)) {
        let split = is_once_separable(&p);
        prop_assert_eq!(split.is_some(), once_separable_by_cells(&p));
    }

    #[test]
    fn predicates_respect_symmetry(p in pattern_strategy(5, 5)) {
        let both = p.apply(SymmetryOp::ReflectRows).apply(SymmetryOp::ReflectCols);
        for q in [p.apply(SymmetryOp::Rotate180), p.apply(SymmetryOp::Transpose), both] {
            prop_assert_eq!(is_trivial(&q), is_trivial(&p));
            prop_assert_eq!(is_permutation(&q), is_permutation(&p));
        }
        for op in SymmetryOp::ALL {
            prop_assert_eq!(is_once_separable(&p.apply(op)).is_some(), is_once_separable(&p).is_some());
        }
        if p.is_strict() {
            let (_, up_to) = outer_class(&p).unwrap();
            for op in [SymmetryOp::ReflectRows, SymmetryOp::ReflectCols] {
                prop_assert_eq!(outer_class(&p.apply(op)).unwrap().1, up_to);
            }
        }
    }

    #[test]
    fn canonical_form_is_constant_on_orbits(m in matrix_strategy(4, 4), op in op_strategy()) {
        for g in [SymmetryGroup::ReflectionsOnly, SymmetryGroup::RotationsAndReflections, SymmetryGroup::Full] {
            let c = canonical_form(&m, g);
            prop_assert_eq!(canonical_form(&c, g), c.clone());
            if g.elements().contains(&op) {
                prop_assert_eq!(canonical_form(&m.apply(op), g), c);
            }
        }
    }

    #[test]
    fn label_invariants(p in pattern_strategy(5, 5)) {
        let label = ClassLabel::of(&p);
        if label.outer_class != OuterClass::Neither {
            prop_assert_eq!(label.outer_class_up_to_reflection, label.outer_class);
        }
        if label.is_permutation {
            prop_assert!(!label.trivial);
        }
    }
}

#[test]
fn outer_entries_of_cornerless_permutations_form_q0_or_q1() {
    for k in 4..=6 {
        for p in permutation_matrices(k).unwrap() {
            let corner = p.get(0, 0) || p.get(0, k - 1) || p.get(k - 1, 0) || p.get(k - 1, k - 1);
            if corner {
                continue;
            }
            let (_, up_to) = outer_class(&p).unwrap();
            assert_ne!(up_to, OuterClass::Neither, "{p}");
        }
    }
}

#[test]
fn anti_identity_height_bounds() {
    for k in 2..=6 {
        for p in permutation_matrices(k).unwrap() {
            let h = max_anti_identity_height(&p);
            assert!(h <= k);
            if outer_class(&p).unwrap().0 == OuterClass::Q0Like {
                assert!(h < k, "{p}");
            }
        }
    }
}

#[test]
fn three_by_three_permutations_are_once_separable() {
    let all: Vec<_> = permutation_matrices(3).unwrap().collect();
    assert_eq!(all.len(), 6);
    assert!(all.iter().all(|p| is_once_separable(p).is_some()));
}

#[test]
fn q1_is_the_only_non_separable_class_of_size_4() {
    let classes: std::collections::BTreeSet<Matrix> = permutation_matrices(4)
        .unwrap()
        .filter(|p| is_once_separable(p).is_none())
        .map(|p| canonical_form(&p, SymmetryGroup::Full))
        .collect();
    let q1 = catalog::builtin("Q1").unwrap();
    assert_eq!(
        classes.into_iter().collect::<Vec<_>>(),
        vec![canonical_form(&q1.matrix, SymmetryGroup::Full)]
    );
}

fn small_patterns() -> Vec<Pattern> {
    vec![
        pattern("1"),
        pattern("11"),
        pattern("1.\n.1"),
        pattern(".1\n1."),
        pattern("11\n.1"),
    ]
}

#[test]
fn sat_and_ex_agree_with_exhaustive_oracle_and_each_other() {
    let budget = SearchBudget::default();
    for p in small_patterns() {
        for m in 1..=3 {
            for n in 1..=4 {
                let sat = sat_exact(&p, m, n, &budget).unwrap();
                let ex = ex_exact(&p, m, n, &budget).unwrap();
                assert_eq!((sat.value, ex.value), brute_sat_ex(&p, m, n), "{p:?} on {m}x{n}");
                assert!(brute_saturated(&sat.matrix, &p));
                assert!(!brute_contains(&ex.matrix, &p));
                assert!(sat.value <= ex.value);
                let greedy = saturate(&Matrix::zeros(m, n).unwrap(), &p).unwrap();
                assert!(sat.value <= greedy.weight() && greedy.weight() <= ex.value);
            }
        }
    }
}

#[test]
fn sat_and_ex_are_symmetry_invariant() {
    let budget = SearchBudget::default();
    for p in small_patterns() {
        for (m, n) in [(2, 3), (3, 3), (2, 4), (4, 4), (3, 5)] {
            let base = (
                sat_exact(&p, m, n, &budget).unwrap().value,
                ex_exact(&p, m, n, &budget).unwrap().value,
            );
            for op in SymmetryOp::ALL {
                let q = p.apply(op);
                let (a, b) = if op.swaps_dims() { (n, m) } else { (m, n) };
                let moved = (
                    sat_exact(&q, a, b, &budget).unwrap().value,
                    ex_exact(&q, a, b, &budget).unwrap().value,
                );
                assert_eq!(moved, base, "{op:?} on {p:?}");
            }
        }
    }
}

#[test]
fn frozen_sat_values() {
    // computed ahead of time by a separate exhaustive script
    let budget = SearchBudget::default();
    let anti = pattern(".1\n1.");
    let id = pattern("1.\n.1");
    for (m, n) in [(1, 1), (2, 3), (3, 3), (4, 4)] {
        assert_eq!(sat_exact(&anti, m, n, &budget).unwrap().value, m + n - 1);
        assert_eq!(ex_exact(&id, m, n, &budget).unwrap().value, m + n - 1);
    }
    assert_eq!(sat_exact(&anti, 3, 3, &budget).unwrap().value, 5);
    assert_eq!(sat_exact(&pattern("11"), 4, 3, &budget).unwrap().value, 4);
}
