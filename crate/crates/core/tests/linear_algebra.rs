use proptest::prelude::*;

use hopfore::linalg::{
    block_diagonal, fitting_split, generalized_eigen_profile, jordan_block, jordan_blocks_from_profile, Matrix,
};
use hopfore::scalar::FieldSpec;

fn int_matrix(n: usize, entries: &[i64]) -> Matrix {
    let f = FieldSpec::new(1);
    let rows = (0..n).map(|i| (0..n).map(|j| f.from_int(entries[i * n + j])).collect()).collect();
    Matrix::from_rows(rows, &f).unwrap()
}

fn square() -> impl Strategy<Value = Matrix> {
    (1usize..6).prop_flat_map(|n| {
        prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -2i64..3], n * n)
            .prop_map(move |e| int_matrix(n, &e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fitting_parts_are_complementary(m in square()) {
        let n = m.rows();
        let (nil, inv) = fitting_split(&m).unwrap();
        prop_assert_eq!(nil.dim() + inv.dim(), n);
        prop_assert_eq!(nil.sum(&inv).dim(), n);
        prop_assert!(nil.is_invariant(&m));
        prop_assert!(inv.is_invariant(&m));
        let on_nil = m.restrict(&nil).unwrap();
        prop_assert!(on_nil.pow(n as u32).unwrap().is_zero());
        let on_inv = m.restrict(&inv).unwrap();
        prop_assert_eq!(on_inv.rank(), inv.dim());
    }

    #[test]
    fn jordan_type_survives_conjugation(
        blocks in prop::collection::vec((1usize..4, 0i64..3), 1..4),
        lower in prop::collection::vec(-2i64..3, 64),
        upper in prop::collection::vec(-2i64..3, 64),
    ) {
        let f = FieldSpec::new(1);
        let mats: Vec<Matrix> = blocks.iter().map(|&(k, u)| jordan_block(k, &f.from_int(u))).collect();
        let j = block_diagonal(&mats, &f);
        let n = j.rows();
        let mut l = Matrix::identity(n, &f);
        let mut u = Matrix::identity(n, &f);
        for r in 0..n {
            for c in 0..r {
                l.set(r, c, f.from_int(lower[r * 8 + c]));
                u.set(c, r, f.from_int(upper[r * 8 + c]));
            }
        }
        let p = l.mul(&u).unwrap();
        let mut pinv = Matrix::identity(n, &f);
        // Invert by solving column by column through the kernel of [P | -e_k].
        for k in 0..n {
            let mut aug = Matrix::zeros(n, n + 1, &f);
            for r in 0..n {
                for c in 0..n {
                    aug.set(r, c, p.get(r, c).clone());
                }
                if r == k {
                    aug.set(r, n, -f.one());
                }
            }
            let ker = aug.kernel_basis();
            prop_assert_eq!(ker.dim(), 1);
            let v = &ker.vectors()[0];
            let scale = v[n].inv().unwrap();
            for r in 0..n {
                pinv.set(r, k, &v[r] * &scale);
            }
        }
        prop_assert!(p.mul(&pinv).unwrap() == Matrix::identity(n, &f));
        let m = p.mul(&j).unwrap().mul(&pinv).unwrap();
        for u in 0..3 {
            let mut want: Vec<usize> = blocks.iter().filter(|b| b.1 == u).map(|b| b.0).collect();
            want.sort_unstable_by(|a, b| b.cmp(a));
            let got = jordan_blocks_from_profile(&generalized_eigen_profile(&m, &f.from_int(u)).unwrap());
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn rank_nullity(m in square()) {
        prop_assert_eq!(m.rank() + m.kernel_basis().dim(), m.cols());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }
}
