use proptest::prelude::*;
use ticketlab::linalg::{determinant_bareiss, unipoly_det_bareiss, unipoly_det_cofactor, unipoly_matrix_det};
use ticketlab::scalar::{int, Rational};
use ticketlab::{QMatrix, QUniPoly};

fn matrix(max: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| QMatrix::new(r, c, v.into_iter().map(int).collect()))
    })
}

fn square(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| QMatrix::new(n, n, v.into_iter().map(int).collect()))
}

fn poly_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<QUniPoly>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 3), n * n).prop_map(move |entries| {
        let polys: Vec<QUniPoly> =
            entries.into_iter().map(|c| QUniPoly::new(c.into_iter().map(int).collect())).collect();
        polys.chunks(n).map(<[QUniPoly]>::to_vec).collect()
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix(6)) {
        let kernel = m.nullspace().unwrap();
        prop_assert_eq!(m.rank().unwrap() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == Rational::from_integer(0.into())));
        }
    }

    #[test]
    fn determinant_detects_full_rank(m in (1usize..=5).prop_flat_map(square)) {
        let det = m.determinant().unwrap();
        prop_assert_eq!(det != int(0), m.rank().unwrap() == m.rows());
        prop_assert_eq!(determinant_bareiss(&m).unwrap(), det);
    }

    #[test]
    fn polynomial_determinant_matches_pointwise(
        entries in (2usize..=7).prop_flat_map(poly_matrix),
        ts in prop::collection::vec(-20i64..=20, 20),
    ) {
        let det = unipoly_matrix_det(&entries).unwrap();
        let n = entries.len();
        for t in ts {
            let t = int(t);
            let data = entries.iter().flatten().map(|p| p.eval(&t)).collect();
            let pointwise = QMatrix::new(n, n, data).determinant().unwrap();
            prop_assert_eq!(det.eval(&t), pointwise);
        }
    }

    #[test]
    fn cofactor_and_bareiss_agree(entries in (1usize..=5).prop_flat_map(poly_matrix)) {
        prop_assert_eq!(unipoly_det_cofactor(&entries), unipoly_det_bareiss(&entries).unwrap());
    }
}

#[test]
fn left_kernel_of_dependent_rows() {
    let m = QMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)], vec![int(0), int(1)]]);
    let k = m.left_kernel().unwrap();
    assert_eq!(k, vec![vec![int(1), Rational::new((-1).into(), 2.into()), int(0)]]);
}
