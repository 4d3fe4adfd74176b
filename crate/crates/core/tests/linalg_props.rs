mod common;

use common::strategies::{int_matrix, rational_matrix};
use common::{det_rat, perm_rat};
use logdiff::linalg::{
    check_sym_power_det, determinant, determinant_bareiss, determinant_cofactor, enumerate_wp, permanent,
    permanent_expansion, permanent_ryser, rescaled_sym_power_matrix, sym_power_matrix, RingMatrix,
};
use logdiff::poly::rat;
use logdiff::Rational;
use proptest::prelude::*;

fn m(rows: Vec<Vec<Rational>>) -> RingMatrix<Rational> {
    RingMatrix::from_rows(rows).unwrap()
}

fn dim_and_matrix(bound: i64) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1usize..=3).prop_flat_map(move |l| int_matrix(l, bound))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sym_power_determinant(rows in dim_and_matrix(5), p in 0usize..=3) {
        prop_assert!(check_sym_power_det(&m(rows), p).unwrap());
    }

    #[test]
    fn sym_power_det_invariant_under_reordering(rows in dim_and_matrix(4), p in 1usize..=3, seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mp = sym_power_matrix(&m(rows), p).unwrap();
        let mut perm: Vec<usize> = (0..mp.rows()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let shuffled = mp.permute_symmetric(&perm).unwrap();
        prop_assert_eq!(determinant(&shuffled).unwrap(), determinant(&mp).unwrap());
    }

    #[test]
    fn rescaled_sym_power_is_multiplicative(
        (a, b) in (1usize..=3).prop_flat_map(|l| (rational_matrix(l), rational_matrix(l))),
        p in 0usize..=3,
    ) {
        let (a, b) = (m(a), m(b));
        let ab = a.matmul(&b).unwrap();
        let lhs = rescaled_sym_power_matrix(&ab, p).unwrap();
        let rhs = rescaled_sym_power_matrix(&a, p).unwrap().matmul(&rescaled_sym_power_matrix(&b, p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn determinants_agree((n, rows) in (1usize..=6).prop_flat_map(|n| (Just(n), int_matrix(n, 4)))) {
        let mat = m(rows.clone());
        let d = determinant_bareiss(&mat).unwrap();
        prop_assert_eq!(&d, &determinant(&mat).unwrap());
        if n <= 5 {
            prop_assert_eq!(&d, &determinant_cofactor(&mat).unwrap());
            prop_assert_eq!(&d, &det_rat(&rows));
        }
    }

    #[test]
    fn permanents_agree((n, rows) in (1usize..=6).prop_flat_map(|n| (Just(n), int_matrix(n, 3)))) {
        let mat = m(rows.clone());
        let p = permanent_ryser(&mat).unwrap();
        prop_assert_eq!(&p, &permanent(&mat).unwrap());
        prop_assert_eq!(&p, &permanent_expansion(&mat).unwrap());
        if n <= 5 {
            prop_assert_eq!(&p, &perm_rat(&rows));
        }
    }

    #[test]
    fn permanent_of_diagonal_is_determinant(diag in prop::collection::vec(-5i64..=5, 1..=6)) {
        let n = diag.len();
        let mat = RingMatrix::from_fn(n, n, |i, j| if i == j { rat(diag[i]) } else { rat(0) }).unwrap();
        prop_assert_eq!(permanent(&mat).unwrap(), determinant(&mat).unwrap());
    }

    #[test]
    fn permanent_with_zero_row_vanishes((rows, r) in (1usize..=6).prop_flat_map(|n| (int_matrix(n, 3), 0..n))) {
        let mut rows = rows;
        for v in rows[r].iter_mut() {
            *v = rat(0);
        }
        prop_assert_eq!(permanent(&m(rows)).unwrap(), rat(0));
    }

    #[test]
    fn one_by_one(a in -9i64..=9) {
        let mat = m(vec![vec![rat(a)]]);
        prop_assert_eq!(permanent(&mat).unwrap(), rat(a));
        prop_assert_eq!(determinant(&mat).unwrap(), rat(a));
    }

    #[test]
    fn wp_is_sorted_and_complete(l in 1usize..=4, p in 0usize..=4) {
        let w: Vec<Vec<usize>> = enumerate_wp(l, p).iter().map(|i| i.entries().to_vec()).collect();
        prop_assert_eq!(w, common::wp_brute(l, p));
    }

    #[test]
    fn sym_power_entries_are_permanents(rows in dim_and_matrix(5), p in 0usize..=3) {
        let mp = sym_power_matrix(&m(rows.clone()), p).unwrap();
        let brute = common::sym_power_brute(&rows, p);
        for (i, row) in brute.iter().enumerate() {
            prop_assert_eq!(mp.row(i), &row[..]);
        }
    }

    #[test]
    fn repeated_row_kills_determinant(rows in int_matrix(4, 3), r in 0usize..3) {
        let mut rows = rows;
        rows[3] = rows[r].clone();
        prop_assert_eq!(determinant(&m(rows)).unwrap(), rat(0));
    }
}
