use filiform::derivops::{derivation_space, is_derivation, is_prederivation, prederivation_space};
use filiform::exactlin::{frac, rank, rat, MatrixQ, Rational};
use filiform::families::{
    build_f1, build_f2, build_f3, detect_family, F1Params, F2Params, F3Params, FamilyParams,
};
use filiform::Algebra;
use proptest::prelude::*;

/// Dense structure tensor, zero-based: `c[i][j][k]` is the `e_k` coefficient
/// of `[e_i, e_j]`.
fn tensor(a: &Algebra) -> Vec<Vec<Vec<Rational>>> {
    let n = a.dim();
    let mut c = vec![vec![vec![rat(0); n]; n]; n];
    for (&(i, j), out) in a.products() {
        for (&k, v) in out {
            c[i - 1][j - 1][k - 1] = v.clone();
        }
    }
    c
}

/// `[[e_i,e_j],e_k] = [[e_i,e_k],e_j] + [e_i,[e_j,e_k]]` by index sums.
fn brute_leibniz(a: &Algebra) -> bool {
    let c = tensor(a);
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for m in 0..n {
                    let mut r = rat(0);
                    for t in 0..n {
                        r += &c[i][j][t] * &c[t][k][m];
                        r -= &c[i][k][t] * &c[t][j][m];
                        r -= &c[j][k][t] * &c[i][t][m];
                    }
                    if r != rat(0) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Dimension of the derivation algebra from a system assembled directly
/// from the tensor. Unknown `d[m][k]` is the `e_m` coefficient of `D e_k`,
/// stored at column `m·n + k` (row-major, like `MatrixQ`).
fn brute_der_dim(a: &Algebra) -> usize {
    let c = tensor(a);
    let n = a.dim();
    let col = |m: usize, k: usize| m * n + k;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let mut row = vec![rat(0); n * n];
                for k in 0..n {
                    row[col(m, k)] += &c[i][j][k];
                    row[col(k, i)] -= &c[k][j][m];
                    row[col(k, j)] -= &c[i][k][m];
                }
                if row.iter().any(|x| *x != rat(0)) {
                    rows.push(row);
                }
            }
        }
    }
    n * n - if rows.is_empty() { 0 } else { rank(&MatrixQ::from_rows(rows).unwrap()) }
}

/// Same for pre-derivations: `P[[x,y],z] = [[Px,y],z] + [[x,Py],z] + [[x,y],Pz]`.
fn brute_preder_dim(a: &Algebra) -> usize {
    let c = tensor(a);
    let n = a.dim();
    let col = |m: usize, k: usize| m * n + k;
    // cc[i][j][k][m]: e_m coefficient of [[e_i,e_j],e_k].
    let mut cc = vec![vec![vec![vec![rat(0); n]; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for m in 0..n {
                    let mut s = rat(0);
                    for t in 0..n {
                        s += &c[i][j][t] * &c[t][k][m];
                    }
                    cc[i][j][k][m] = s;
                }
            }
        }
    }
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for m in 0..n {
                    let mut row = vec![rat(0); n * n];
                    for t in 0..n {
                        row[col(m, t)] += &cc[i][j][k][t];
                        row[col(t, i)] -= &cc[t][j][k][m];
                        row[col(t, j)] -= &cc[i][t][k][m];
                        row[col(t, k)] -= &cc[i][j][t][m];
                    }
                    if row.iter().any(|x| *x != rat(0)) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    n * n - if rows.is_empty() { 0 } else { rank(&MatrixQ::from_rows(rows).unwrap()) }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| frac(p, q))
}

fn f1_params(max_n: usize) -> impl Strategy<Value = F1Params> {
    (4..=max_n).prop_flat_map(|n| {
        (prop::collection::vec(rational(), n - 3), rational())
            .prop_map(move |(alpha, theta)| F1Params { n, alpha, theta })
    })
}

fn f2_params(max_n: usize) -> impl Strategy<Value = F2Params> {
    (4..=max_n).prop_flat_map(|n| {
        (prop::collection::vec(rational(), n - 3), rational())
            .prop_map(move |(beta, gamma)| F2Params { n, beta, gamma })
    })
}

fn f3_params(max_n: usize) -> impl Strategy<Value = F3Params> {
    (4..=max_n, rational(), rational(), rational(), any::<bool>()).prop_map(|(n, a, b, c, flag)| {
        let mut p = F3Params::new(n, [a, b, c]);
        p.alpha_flag = flag && n % 2 == 0;
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn f1_is_leibniz_and_filiform(p in f1_params(9)) {
        let a = build_f1(&p).unwrap();
        prop_assert!(brute_leibniz(&a));
        prop_assert!(a.leibniz_violations().is_empty());
        prop_assert!(a.is_filiform());
        prop_assert_eq!(detect_family(&a), Some(FamilyParams::F1(p)));
    }

    #[test]
    fn f2_is_leibniz_and_filiform(p in f2_params(9)) {
        let a = build_f2(&p).unwrap();
        prop_assert!(brute_leibniz(&a));
        prop_assert!(a.is_filiform());
        prop_assert_eq!(detect_family(&a), Some(FamilyParams::F2(p)));
    }

    #[test]
    fn f3_is_leibniz_and_filiform(p in f3_params(9)) {
        let a = build_f3(&p).unwrap();
        prop_assert!(brute_leibniz(&a));
        prop_assert!(a.is_filiform());
    }

    #[test]
    fn product_is_bilinear(
        p in f1_params(7),
        s in rational(),
        seed in prop::collection::vec(rational(), 21),
    ) {
        let a = build_f1(&p).unwrap();
        let n = a.dim();
        let x = &seed[..n];
        let y = &seed[7..7 + n];
        let z = &seed[14..14 + n];
        let lin: Vec<Rational> = x.iter().zip(y).map(|(u, v)| u * &s + v).collect();
        let left = a.product(&lin, z).unwrap();
        let xz = a.product(x, z).unwrap();
        let yz = a.product(y, z).unwrap();
        let expect: Vec<Rational> = xz.iter().zip(&yz).map(|(u, v)| u * &s + v).collect();
        prop_assert_eq!(left, expect);
        let right = a.product(z, &lin).unwrap();
        let zx = a.product(z, x).unwrap();
        let zy = a.product(z, y).unwrap();
        let expect: Vec<Rational> = zx.iter().zip(&zy).map(|(u, v)| u * &s + v).collect();
        prop_assert_eq!(right, expect);
    }

    #[test]
    fn json_round_trip(p in f2_params(8)) {
        let a = build_f2(&p).unwrap();
        let back = Algebra::from_json_str(&a.to_json_string().unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn change_basis_round_trip(p in f1_params(6), entries in prop::collection::vec(rational(), 36)) {
        let a = build_f1(&p).unwrap();
        let n = a.dim();
        let t = MatrixQ::from_vec(n, n, entries[..n * n].to_vec()).unwrap();
        if let Some(inv) = t.inverse() {
            let b = a.change_basis(&t).unwrap();
            prop_assert!(brute_leibniz(&b));
            prop_assert_eq!(b.change_basis(&inv).unwrap(), a);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn operator_spaces_match_direct_systems(p in f1_params(6), q in f2_params(6)) {
        for a in [build_f1(&p).unwrap(), build_f2(&q).unwrap()] {
            let der = derivation_space(&a);
            let preder = prederivation_space(&a);
            prop_assert_eq!(der.dim(), brute_der_dim(&a));
            prop_assert_eq!(preder.dim(), brute_preder_dim(&a));
            prop_assert!(preder.contains_space(&der));
            for d in der.basis() {
                prop_assert!(is_derivation(&a, &d));
            }
            for m in preder.basis() {
                prop_assert!(is_prederivation(&a, &m));
            }
        }
    }
}

#[test]
fn leibniz_oracle_rejects_idempotent() {
    let a = Algebra::new(2).unwrap().with(1, 1, 1, rat(1)).unwrap();
    // [[e1,e1],e1] = e1 but [[e1,e1],e1] + [e1,[e1,e1]] = 2 e1.
    assert!(!brute_leibniz(&a));
    let v = a.leibniz_violations();
    assert_eq!((v[0].i, v[0].j, v[0].k), (1, 1, 1));
}

#[test]
fn abelian_operator_spaces_are_everything() {
    let a = Algebra::new(3).unwrap();
    assert_eq!(derivation_space(&a).dim(), 9);
    assert_eq!(brute_der_dim(&a), 9);
    assert_eq!(brute_preder_dim(&a), 9);
}

#[test]
fn lcs_of_filiform() {
    let a = build_f2(&F2Params::zero(7)).unwrap();
    assert_eq!(a.lcs_dims(), vec![7, 5, 4, 3, 2, 1, 0]);
    assert!(a.is_nilpotent());
}

#[test]
fn detect_rejects_non_family_table() {
    let a = Algebra::new(5).unwrap().with(2, 3, 5, rat(1)).unwrap();
    assert_eq!(detect_family(&a), None);
}

#[test]
fn detect_f3_with_skew() {
    let mut p = F3Params::new(8, [rat(1), rat(0), frac(1, 2)]);
    p.alpha_flag = true;
    // [e_2,e_1] = e_3 and [e_4,e_1] = e_5 force [e_3,e_4] = −[e_2,e_5].
    p.skew.insert((2, 5), [(8, rat(1))].into_iter().collect());
    p.skew.insert((3, 4), [(8, rat(-1))].into_iter().collect());
    let a = build_f3(&p).unwrap();
    assert!(brute_leibniz(&a));
    assert_eq!(detect_family(&a), Some(FamilyParams::F3(p)));
}

#[test]
fn inadmissible_skew_is_rejected() {
    let mut p = F3Params::new(8, [rat(0), rat(0), rat(0)]);
    p.skew.insert((2, 3), [(6, rat(1))].into_iter().collect());
    let err = build_f3(&p).unwrap_err().to_string();
    assert!(err.contains("Leibniz identity fails"), "{err}");
}
