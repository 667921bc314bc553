//! Exact rational linear algebra.
//!
//! Everything here works over `Q` with arbitrary-precision fractions; no
//! tolerance is ever involved. Subspaces are stored by their reduced row
//! echelon basis, which is unique, so equality of spans is a plain
//! comparison of bases.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Exact fraction, always normalized with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"`; whitespace and zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    if s.is_empty() || s.chars().any(char::is_whitespace) {
        return Err(Error::ParseRational(s.to_string()));
    }
    Rational::from_str(s).map_err(|_| Error::ParseRational(s.to_string()))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Serde adapters that encode rationals as strings.
pub mod serde_rational {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }

    pub mod vec {
        use serde::ser::SerializeSeq;
        use serde::{de, Deserialize, Deserializer, Serializer};

        use super::super::{format_rational, parse_rational, Rational};

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for q in v {
                seq.serialize_element(&format_rational(q))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|s| parse_rational(s).map_err(de::Error::custom))
                .collect()
        }
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        check_dim(rows * cols, data.len())?;
        Ok(MatrixQ { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            check_dim(cols, r.len())?;
            data.extend(r);
        }
        Ok(MatrixQ {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_rows(v).expect("ragged integer matrix")
    }

    /// The matrix unit `E_{ij}` (zero-based), i.e. a single one at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Rational::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        check_dim(self.cols, v.len())?;
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect())
    }

    pub fn matmul(&self, other: &MatrixQ) -> Result<MatrixQ> {
        check_dim(self.cols, other.rows)?;
        let mut out = MatrixQ::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self^k` for a square matrix; `k = 0` gives the identity.
    pub fn pow(&self, k: u32) -> Result<MatrixQ> {
        check_dim(self.rows, self.cols)?;
        let mut acc = MatrixQ::identity(self.rows);
        for _ in 0..k {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// Commutator `self·other − other·self`.
    pub fn commutator(&self, other: &MatrixQ) -> Result<MatrixQ> {
        let ab = self.matmul(other)?;
        let ba = other.matmul(self)?;
        Ok(&ab - &ba)
    }

    /// Inverse of a square matrix, or `None` when it is singular.
    pub fn inverse(&self) -> Option<MatrixQ> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = MatrixQ::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let r = rref(&aug);
        if r.pivots.iter().take(n).copied().ne(0..n) {
            return None;
        }
        let mut inv = MatrixQ::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r.matrix[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for MatrixQ {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for MatrixQ {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &MatrixQ {
    type Output = MatrixQ;
    fn add(self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &MatrixQ {
    type Output = MatrixQ;
    fn sub(self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &MatrixQ {
    type Output = MatrixQ;
    fn neg(self) -> MatrixQ {
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &MatrixQ {
    type Output = MatrixQ;
    fn mul(self, rhs: &MatrixQ) -> MatrixQ {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixQ {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `a += c * b`, skipping zero entries of `b`.
fn axpy(a: &mut [Rational], c: &Rational, b: &[Rational]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

/// Incrementally maintained reduced row echelon basis of a row space.
///
/// Rows are kept fully reduced and sorted by pivot column, so the state after
/// any sequence of pushes is the unique RREF of the rows pushed so far,
/// independent of their order.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    cols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(cols: usize) -> Self {
        EchelonBuilder {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Reduces `v` against the current basis in place.
    pub fn reduce(&self, v: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -v[p].clone();
                axpy(v, &c, row);
            }
        }
    }

    /// True iff `v` lies in the span of the rows pushed so far.
    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero_vec(&w)
    }

    /// Adds a row; returns whether the rank grew.
    pub fn push(&mut self, mut v: Vec<Rational>) -> bool {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        if self.is_full() {
            return false;
        }
        self.reduce(&mut v);
        let Some(q) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[q].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[q].is_zero() {
                let c = -row[q].clone();
                axpy(row, &c, &v);
            }
        }
        let at = self.pivots.partition_point(|&p| p < q);
        self.pivots.insert(at, q);
        self.rows.insert(at, v);
        true
    }

    pub fn merge(&mut self, other: EchelonBuilder) {
        for r in other.rows {
            self.push(r);
        }
    }

    /// Reduces a large batch of rows using per-chunk builders merged at the
    /// end. The result is the same canonical basis as sequential pushes.
    pub fn from_rows_parallel(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        const CHUNK: usize = 512;
        let partial: Vec<EchelonBuilder> = rows
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut b = EchelonBuilder::new(cols);
                for r in chunk {
                    if !is_zero_vec(r) {
                        b.push(r.clone());
                    }
                }
                b
            })
            .collect();
        let mut acc = EchelonBuilder::new(cols);
        for b in partial {
            acc.merge(b);
        }
        acc
    }

    /// Basis of `{x : r·x = 0 for every pushed row r}`.
    pub fn kernel(&self) -> SubspaceQ {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let vectors = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = -row[f].clone();
                }
                x
            })
            .collect();
        SubspaceQ::from_spanning(self.cols, vectors)
    }

    pub fn into_subspace(self) -> SubspaceQ {
        SubspaceQ {
            ambient: self.cols,
            basis: self.rows,
        }
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixQ,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form; zero rows are moved to the bottom.
pub fn rref(m: &MatrixQ) -> Rref {
    let mut b = EchelonBuilder::new(m.cols);
    for i in 0..m.rows {
        b.push(m.row(i).to_vec());
    }
    let rank = b.rank();
    let pivots = b.pivots.clone();
    let mut data = Vec::with_capacity(m.rows * m.cols);
    for r in b.rows {
        data.extend(r);
    }
    data.resize(m.rows * m.cols, Rational::zero());
    Rref {
        matrix: MatrixQ {
            rows: m.rows,
            cols: m.cols,
            data,
        },
        pivots,
        rank,
    }
}

pub fn rank(m: &MatrixQ) -> usize {
    rref(m).rank
}

/// `{x : m·x = 0}`.
pub fn nullspace(m: &MatrixQ) -> SubspaceQ {
    let mut b = EchelonBuilder::new(m.cols);
    for i in 0..m.rows {
        b.push(m.row(i).to_vec());
    }
    b.kernel()
}

/// A subspace of `Q^ambient` held by its reduced echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceQ {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl SubspaceQ {
    pub fn zero(ambient: usize) -> Self {
        SubspaceQ {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::one();
                v
            })
            .collect();
        SubspaceQ { ambient, basis }
    }

    /// Span of arbitrary vectors, canonicalized.
    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<Rational>>) -> Self {
        let mut b = EchelonBuilder::new(ambient);
        for v in vectors {
            b.push(v);
        }
        b.into_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vec<Rational>> {
        self.basis
    }

    fn builder(&self) -> EchelonBuilder {
        let pivots = self
            .basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("zero basis row"))
            .collect();
        EchelonBuilder {
            cols: self.ambient,
            rows: self.basis.clone(),
            pivots,
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient && self.builder().contains(v)
    }

    pub fn contains_subspace(&self, other: &SubspaceQ) -> bool {
        let b = self.builder();
        other.ambient == self.ambient && other.basis.iter().all(|v| b.contains(v))
    }

    pub fn sum(&self, other: &SubspaceQ) -> Result<SubspaceQ> {
        check_dim(self.ambient, other.ambient)?;
        let mut b = self.builder();
        for v in &other.basis {
            b.push(v.clone());
        }
        Ok(b.into_subspace())
    }

    /// `{y : y·v = 0 for all v in self}`.
    pub fn annihilator(&self) -> SubspaceQ {
        self.builder().kernel()
    }

    /// Basis vectors as the rows of a matrix.
    pub fn to_matrix(&self) -> MatrixQ {
        MatrixQ {
            rows: self.basis.len(),
            cols: self.ambient,
            data: self.basis.iter().flatten().cloned().collect(),
        }
    }
}

impl fmt::Debug for SubspaceQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubspaceQ(ambient={}, dim={})", self.ambient, self.dim())
    }
}

/// Equality of spans, decided on canonical bases.
pub fn subspace_equal(a: &SubspaceQ, b: &SubspaceQ) -> Result<bool> {
    check_dim(a.ambient, b.ambient)?;
    Ok(a.basis == b.basis)
}

/// `{v ∈ restricted_to : M·v = 0 for all M in ops}`.
pub fn common_kernel(ops: &[MatrixQ], restricted_to: &SubspaceQ) -> Result<SubspaceQ> {
    let n = restricted_to.ambient;
    for m in ops {
        check_dim(n, m.rows)?;
        check_dim(n, m.cols)?;
    }
    let d = restricted_to.dim();
    if d == 0 || ops.is_empty() {
        return Ok(restricted_to.clone());
    }
    // Write v = Σ y_i s_i over the basis s of the restriction and solve
    // M·S·y = 0 for all M.
    let images: Vec<Vec<Vec<Rational>>> = ops
        .iter()
        .map(|m| {
            restricted_to
                .basis
                .iter()
                .map(|s| m.mul_vec(s).expect("checked shape"))
                .collect()
        })
        .collect();
    let mut system = EchelonBuilder::new(d);
    for img in &images {
        for row in 0..n {
            let eq: Vec<Rational> = img.iter().map(|col| col[row].clone()).collect();
            if !is_zero_vec(&eq) {
                system.push(eq);
            }
        }
    }
    let coeffs = system.kernel();
    let vectors = coeffs
        .basis
        .iter()
        .map(|y| {
            let mut v = vec![Rational::zero(); n];
            for (c, s) in y.iter().zip(&restricted_to.basis) {
                axpy(&mut v, c, s);
            }
            v
        })
        .collect();
    Ok(SubspaceQ::from_spanning(n, vectors))
}

/// Sum of absolute numerators and denominators; a rough size measure used
/// when reporting growth.
pub fn height(q: &Rational) -> BigInt {
    q.numer().abs() + q.denom()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rref_identity() {
        let id = MatrixQ::identity(3);
        let r = rref(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = MatrixQ::from_i64(&[&[1, 2], &[2, 4]]);
        let r = rref(&m);
        assert_eq!(r.matrix, MatrixQ::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_moves_zero_rows_down() {
        let m = MatrixQ::from_i64(&[&[0, 0, 0], &[0, 3, 6], &[2, 0, 2]]);
        let r = rref(&m);
        assert_eq!(
            r.matrix,
            MatrixQ::from_i64(&[&[1, 0, 1], &[0, 1, 2], &[0, 0, 0]])
        );
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&MatrixQ::zeros(2, 2)).dim(), 2);
        assert_eq!(nullspace(&MatrixQ::identity(2)).dim(), 0);
        let k = nullspace(&MatrixQ::from_i64(&[&[1, 1]]));
        assert_eq!(k.basis(), &[q(&[1, -1])]);
    }

    #[test]
    fn subspace_equality() {
        let a = SubspaceQ::from_spanning(2, vec![q(&[1, 0])]);
        let b = SubspaceQ::from_spanning(2, vec![q(&[2, 0])]);
        let c = SubspaceQ::from_spanning(2, vec![q(&[0, 1])]);
        assert!(subspace_equal(&a, &b).unwrap());
        assert!(!subspace_equal(&a, &c).unwrap());
        let d = SubspaceQ::from_spanning(3, vec![q(&[1, 0, 0])]);
        assert!(matches!(
            subspace_equal(&a, &d),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn common_kernel_examples() {
        let full = SubspaceQ::full(3);
        let k = common_kernel(&[MatrixQ::identity(3)], &full).unwrap();
        assert!(k.is_zero());

        let s = SubspaceQ::from_spanning(3, vec![q(&[1, 1, 0])]);
        assert_eq!(common_kernel(&[], &s).unwrap(), s);

        // Single nilpotent Jordan block: e_1 -> 0, e_2 -> e_1, e_3 -> e_2.
        let j = MatrixQ::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let k = common_kernel(&[j.clone()], &full).unwrap();
        assert_eq!(k.basis(), &[q(&[1, 0, 0])]);

        let restricted = SubspaceQ::from_spanning(3, vec![q(&[0, 1, 0]), q(&[0, 0, 1])]);
        assert!(common_kernel(&[j], &restricted).unwrap().is_zero());

        assert!(common_kernel(&[MatrixQ::identity(2)], &full).is_err());
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&frac(6, -4)), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
        assert_eq!(parse_rational("-3/2").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("10/5").unwrap(), rat(2));
        for bad in ["", "1/0", " 1", "1 /2", "x", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn annihilator_is_orthogonal() {
        let s = SubspaceQ::from_spanning(3, vec![q(&[1, 2, 3])]);
        let ann = s.annihilator();
        assert_eq!(ann.dim(), 2);
        for y in ann.basis() {
            assert!(dot(y, &s.basis()[0]).is_zero());
        }
    }
}
