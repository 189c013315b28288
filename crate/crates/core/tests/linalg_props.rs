mod common;

use common::{element, field, matrix, raw_element, raw_matrix, FIELDS};
use proptest::prelude::*;
use triplepoint::linalg::{check_witness, same_row_space, span_decide, Matrix};

proptest! {
    #[test]
    fn rref_is_canonical((r, c, raw) in raw_matrix(), fi in 0..FIELDS) {
        let k = field(fi);
        let m = matrix(&k, r, c, &raw);
        let rref = m.rref();
        prop_assert_eq!(rref.rank, rref.pivots.len());
        prop_assert!(rref.pivots.windows(2).all(|w| w[0] < w[1]));
        let basis = rref.basis();
        for (row, &p) in basis.iter().zip(&rref.pivots) {
            prop_assert!(row[p].is_one());
            prop_assert!(row[..p].iter().all(|e| e.is_zero()));
        }
        let again = Matrix::from_rows(&k, c, basis.clone()).unwrap().rref();
        prop_assert_eq!(again.basis(), basis);
        prop_assert!(same_row_space(&m, &Matrix::from_rows(&k, c, rref.basis()).unwrap()) || rref.rank == 0);
    }

    #[test]
    fn kernel_has_complementary_dimension((r, c, raw) in raw_matrix(), fi in 0..FIELDS) {
        let k = field(fi);
        let m = matrix(&k, r, c, &raw);
        let kernel = m.kernel();
        prop_assert_eq!(kernel.len() + m.rank(), c);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|e| e.is_zero()));
        }
        if !kernel.is_empty() {
            prop_assert_eq!(Matrix::from_rows(&k, c, kernel.clone()).unwrap().rank(), kernel.len());
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn row_operations_keep_the_row_space((r, c, raw) in raw_matrix(), fi in 0..FIELDS, s in raw_element(), i in 0usize..6, j in 0usize..6) {
        let k = field(fi);
        let m = matrix(&k, r, c, &raw);
        let (i, j) = (i % r, j % r);
        let s = element(&k, &s);
        let mut rows = m.row_vecs();
        if i != j {
            rows[i] = rows[i].iter().zip(&rows[j]).map(|(a, b)| a + &(&s * b)).collect();
        }
        rows.swap(0, j);
        prop_assert!(same_row_space(&m, &Matrix::from_rows(&k, c, rows).unwrap()));
    }

    #[test]
    fn span_witnesses_verify((r, c, raw) in raw_matrix(), fi in 0..FIELDS, t in prop::collection::vec(raw_element(), 8), combo in prop::collection::vec(raw_element(), 6), inside in any::<bool>()) {
        let k = field(fi);
        let m = matrix(&k, r, c, &raw);
        let target: Vec<_> = if inside {
            let coeffs: Vec<_> = (0..r).map(|i| element(&k, &combo[i])).collect();
            m.transpose().mul_vec(&coeffs).unwrap()
        } else {
            (0..c).map(|j| element(&k, &t[j])).collect()
        };
        let w = span_decide(&target, &m).unwrap();
        prop_assert!(check_witness(&w, &target, &m));
        prop_assert_eq!(w.is_member(), m.rref().contains(&target));
        if inside {
            prop_assert!(w.is_member());
        }
    }
}
