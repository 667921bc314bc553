//! Finite-dimensional algebras given by structure constants.
//!
//! Basis elements are numbered `e_1 … e_n` (1-based) in every public
//! signature and in JSON; coordinate vectors are plain slices where slot
//! `k - 1` holds the coefficient of `e_k`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{
    format_rational, is_zero_vec, parse_rational, EchelonBuilder, MatrixQ, Rational, SubspaceQ,
};

/// Sparse coordinate vector keyed by 1-based basis index.
pub type SparseVec = BTreeMap<usize, Rational>;

/// A basis triple where the (right) Leibniz identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `[[e_i,e_j],e_k] − [[e_i,e_k],e_j] − [e_i,[e_j,e_k]]`
    pub residual: Vec<Rational>,
}

/// Bilinear product on `Q^n` defined by `[e_i, e_j] = Σ_k c_{ij}^k e_k`.
/// Absent pairs multiply to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    table: BTreeMap<(usize, usize), SparseVec>,
}

impl Algebra {
    /// The abelian algebra of dimension `dim`.
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameters("dimension must be at least 1".into()));
        }
        Ok(Algebra {
            dim,
            table: BTreeMap::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if (1..=self.dim).contains(&i) {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!(
                "basis index {i} outside 1..={}",
                self.dim
            )))
        }
    }

    /// Adds `c·e_k` to `[e_i, e_j]`.
    pub fn add_product(&mut self, i: usize, j: usize, k: usize, c: Rational) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_index(k)?;
        if c.is_zero() {
            return Ok(());
        }
        let out = self.table.entry((i, j)).or_default();
        let slot = out.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            out.remove(&k);
            if out.is_empty() {
                self.table.remove(&(i, j));
            }
        }
        Ok(())
    }

    /// Builder-style variant of [`Algebra::add_product`].
    pub fn with(mut self, i: usize, j: usize, k: usize, c: Rational) -> Result<Self> {
        self.add_product(i, j, k, c)?;
        Ok(self)
    }

    /// Nonzero products `(i, j) → [e_i, e_j]`.
    pub fn products(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.table
    }

    pub fn basis_product_sparse(&self, i: usize, j: usize) -> Option<&SparseVec> {
        self.table.get(&(i, j))
    }

    /// `[e_i, e_j]` as a dense coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        if let Some(out) = self.table.get(&(i, j)) {
            for (&k, c) in out {
                v[k - 1] = c.clone();
            }
        }
        v
    }

    /// `e_i` as a coordinate vector.
    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i - 1] = Rational::from_integer(1.into());
        v
    }

    /// `[x, y]` by bilinear extension.
    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        let mut out = vec![Rational::zero(); self.dim];
        for (&(i, j), prod) in &self.table {
            let (a, b) = (&x[i - 1], &y[j - 1]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let ab = a * b;
            for (&k, c) in prod {
                out[k - 1] += &ab * c;
            }
        }
        Ok(out)
    }

    fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.product(x, y).expect("internal vectors have the algebra dimension")
    }

    /// The same algebra written in the basis `f_j = Σ_i t_{ij} e_i`, i.e.
    /// the new basis vectors are the columns of `t`.
    pub fn change_basis(&self, t: &MatrixQ) -> Result<Algebra> {
        let n = self.dim;
        if t.rows() != n || t.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: t.rows().max(t.cols()),
            });
        }
        let inv = t
            .inverse()
            .ok_or_else(|| Error::Domain("change of basis matrix is singular".into()))?;
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| t.column(j)).collect();
        let mut out = Algebra::new(n)?;
        for i in 0..n {
            for j in 0..n {
                let prod = self.mul(&cols[i], &cols[j]);
                if is_zero_vec(&prod) {
                    continue;
                }
                for (k, c) in inv.mul_vec(&prod)?.into_iter().enumerate() {
                    out.add_product(i + 1, j + 1, k + 1, c)?;
                }
            }
        }
        Ok(out)
    }

    /// Every basis triple violating `[[x,y],z] = [[x,z],y] + [x,[y,z]]`,
    /// in `(i, j, k)` lexicographic order. Empty iff the algebra is Leibniz.
    pub fn leibniz_violations(&self) -> Vec<Violation> {
        let n = self.dim;
        let e: Vec<Vec<Rational>> = (1..=n).map(|i| self.basis_vector(i)).collect();
        let prod: Vec<Vec<Vec<Rational>>> = (1..=n)
            .map(|i| (1..=n).map(|j| self.basis_product(i, j)).collect())
            .collect();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.mul(&prod[i][j], &e[k]);
                    let r1 = self.mul(&prod[i][k], &e[j]);
                    let r2 = self.mul(&e[i], &prod[j][k]);
                    let residual: Vec<Rational> = lhs
                        .iter()
                        .zip(r1.iter().zip(&r2))
                        .map(|(l, (a, b))| l - a - b)
                        .collect();
                    if !is_zero_vec(&residual) {
                        out.push(Violation {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            residual,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_leibniz(&self) -> bool {
        self.leibniz_violations().is_empty()
    }

    /// `L^1 ⊇ L^2 ⊇ …` with `L^{k+1} = [L^k, L^1]`, stopping at the zero
    /// subspace (included) or at the first term equal to its predecessor
    /// (not repeated).
    pub fn lower_central_series(&self) -> Vec<SubspaceQ> {
        let n = self.dim;
        let mut series = vec![SubspaceQ::full(n)];
        loop {
            let current = series.last().expect("nonempty");
            if current.is_zero() {
                break;
            }
            let mut next = EchelonBuilder::new(n);
            for u in current.basis() {
                for j in 1..=n {
                    let v = self.mul(u, &self.basis_vector(j));
                    if !is_zero_vec(&v) {
                        next.push(v);
                    }
                }
            }
            let next = next.into_subspace();
            if next.dim() == current.dim() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn lcs_dims(&self) -> Vec<usize> {
        self.lower_central_series().iter().map(SubspaceQ::dim).collect()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series()
            .last()
            .is_some_and(SubspaceQ::is_zero)
    }

    /// `dim L^i = n − i` for `2 ≤ i ≤ n`.
    pub fn is_filiform(&self) -> bool {
        let dims = self.lcs_dims();
        if dims.last() != Some(&0) {
            return false;
        }
        let n = self.dim;
        (2..=n).all(|i| dims.get(i - 1).copied().unwrap_or(0) == n - i)
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            dim: self.dim,
            products: self
                .table
                .iter()
                .map(|(&(i, j), out)| ProductJson {
                    i,
                    j,
                    out: OutMap(out.clone()),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self> {
        let mut a = Algebra::new(json.dim)?;
        for p in &json.products {
            for (&k, c) in &p.out.0 {
                a.add_product(p.i, p.j, k, c.clone())?;
            }
        }
        Ok(a)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json())?)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: AlgebraJson = serde_json::from_str(s)?;
        Self::from_json(&json)
    }
}

/// Wire form: `{"dim": n, "products": [{"i": 1, "j": 1, "out": {"3": "1"}}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub products: Vec<ProductJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductJson {
    pub i: usize,
    pub j: usize,
    pub out: OutMap,
}

/// Output coefficients keyed by basis index, serialized in numeric order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OutMap(pub SparseVec);

impl Serialize for OutMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, c) in &self.0 {
            m.serialize_entry(&k.to_string(), &format_rational(c))?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for OutMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut out = SparseVec::new();
        for (k, v) in raw {
            let k: usize = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad basis index `{k}`")))?;
            let v = parse_rational(&v).map_err(D::Error::custom)?;
            out.insert(k, v);
        }
        Ok(OutMap(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn idempotent_line() -> Algebra {
        Algebra::new(1).unwrap().with(1, 1, 1, rat(1)).unwrap()
    }

    #[test]
    fn product_of_zero_is_zero() {
        let a = Algebra::new(3)
            .unwrap()
            .with(1, 1, 3, rat(1))
            .unwrap()
            .with(2, 1, 3, rat(2))
            .unwrap();
        let zero = vec![rat(0); 3];
        let y = vec![rat(1), rat(2), rat(3)];
        assert_eq!(a.product(&zero, &y).unwrap(), zero);
        assert!(a.product(&zero, &[rat(1)]).is_err());
    }

    #[test]
    fn non_leibniz_line() {
        // [e_1,e_1] = e_1 in dimension 2
        let a = Algebra::new(2).unwrap().with(1, 1, 1, rat(1)).unwrap();
        let v = a.leibniz_violations();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].i, v[0].j, v[0].k), (1, 1, 1));
        assert_eq!(v[0].residual, vec![rat(-1), rat(0)]);
    }

    #[test]
    fn abelian_series() {
        let a = Algebra::new(4).unwrap();
        assert_eq!(a.lcs_dims(), vec![4, 0]);
        assert!(a.is_nilpotent());
        assert!(!a.is_filiform());
    }

    #[test]
    fn non_nilpotent_line() {
        let a = idempotent_line();
        assert_eq!(a.lcs_dims(), vec![1]);
        assert!(!a.is_nilpotent());
        assert!(!a.is_filiform());
    }

    #[test]
    fn add_product_cancels_to_absent() {
        let mut a = Algebra::new(3).unwrap();
        a.add_product(1, 2, 3, rat(2)).unwrap();
        a.add_product(1, 2, 3, rat(-2)).unwrap();
        assert!(a.products().is_empty());
        assert!(a.add_product(1, 4, 3, rat(1)).is_err());
        assert!(a.add_product(0, 1, 1, rat(1)).is_err());
    }

    #[test]
    fn json_round_trip_and_numeric_key_order() {
        let mut a = Algebra::new(12).unwrap();
        a.add_product(1, 1, 3, rat(1)).unwrap();
        a.add_product(1, 2, 10, crate::exactlin::frac(-1, 2)).unwrap();
        a.add_product(1, 2, 4, rat(7)).unwrap();
        let s = a.to_json_string().unwrap();
        let four = s.find("\"4\"").unwrap();
        let ten = s.find("\"10\"").unwrap();
        assert!(four < ten);
        assert!(s.contains("\"-1/2\""));
        assert_eq!(Algebra::from_json_str(&s).unwrap(), a);
    }

    #[test]
    fn json_rejects_bad_input() {
        let bad = [
            r#"{"dim": 0, "products": []}"#,
            r#"{"dim": 2, "products": [{"i": 3, "j": 1, "out": {"1": "1"}}]}"#,
            r#"{"dim": 2, "products": [{"i": 1, "j": 1, "out": {"x": "1"}}]}"#,
            r#"{"dim": 2, "products": [{"i": 1, "j": 1, "out": {"2": "1/0"}}]}"#,
        ];
        for s in bad {
            assert!(Algebra::from_json_str(s).is_err(), "{s}");
        }
    }
}
