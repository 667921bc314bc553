use filiform::exactlin::{frac, nullspace, rank, rat, rref, MatrixQ, Rational, SubspaceQ};
use proptest::prelude::*;

/// Fraction-free (Bareiss) rank over the integers, written independently of
/// the rational elimination under test.
fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let (nr, nc) = (m.len(), m.first().map_or(0, Vec::len));
    let mut prev = 1i128;
    let mut r = 0;
    for c in 0..nc {
        let Some(p) = (r..nr).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nr {
            for j in c + 1..nc {
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
        if r == nr {
            break;
        }
    }
    r
}

fn to_q(rows: &[Vec<i64>]) -> MatrixQ {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    MatrixQ::from_i64(&refs)
}

fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_matches_bareiss(m in small_matrix(6)) {
        prop_assert_eq!(rank(&to_q(&m)), bareiss_rank(&m));
    }

    #[test]
    fn rref_is_idempotent(m in small_matrix(6)) {
        let once = rref(&to_q(&m));
        let twice = rref(&once.matrix);
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(once.rank, twice.rank);
    }

    #[test]
    fn rank_plus_nullity(m in small_matrix(6)) {
        let q = to_q(&m);
        let k = nullspace(&q);
        prop_assert_eq!(rank(&q) + k.dim(), q.cols());
        for v in k.basis() {
            prop_assert!(q.mul_vec(v).unwrap().iter().all(|x| *x == rat(0)));
        }
    }

    #[test]
    fn transpose_preserves_rank(m in small_matrix(5)) {
        let q = to_q(&m);
        prop_assert_eq!(rank(&q), rank(&q.transpose()));
    }

    #[test]
    fn inverse_when_full_rank(entries in prop::collection::vec(rational(), 9)) {
        let m = MatrixQ::from_vec(3, 3, entries).unwrap();
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(rank(&m), 3);
                prop_assert_eq!(m.matmul(&inv).unwrap(), MatrixQ::identity(3));
                prop_assert_eq!(inv.matmul(&m).unwrap(), MatrixQ::identity(3));
            }
            None => prop_assert!(rank(&m) < 3),
        }
    }

    #[test]
    fn span_contains_generators(m in small_matrix(5)) {
        let q = to_q(&m);
        let s = SubspaceQ::from_spanning(q.cols(), q.row_vecs());
        prop_assert_eq!(s.dim(), rank(&q));
        for r in q.row_vecs() {
            prop_assert!(s.contains(&r));
        }
    }
}

#[test]
fn bareiss_oracle_sanity() {
    assert_eq!(bareiss_rank(&[vec![1, 2], vec![2, 4]]), 1);
    assert_eq!(bareiss_rank(&[vec![0, 1], vec![1, 0]]), 2);
    assert_eq!(bareiss_rank(&[vec![0, 0, 0]]), 0);
}

#[test]
fn singular_has_no_inverse() {
    assert!(MatrixQ::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    let m = MatrixQ::from_i64(&[&[2, 1], &[1, 1]]);
    assert_eq!(m.inverse().unwrap(), MatrixQ::from_i64(&[&[1, -1], &[-1, 2]]));
}
