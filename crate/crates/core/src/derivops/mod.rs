//! Derivation and pre-derivation spaces, and nilpotency of operator spaces.
//!
//! Operators are `n × n` matrices whose column `a` holds the image of
//! `e_{a+1}`; flattened row-major they live in `Q^{n²}`, which is where the
//! linear systems below are solved.

mod closed_form;
pub mod poly;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{
    common_kernel, is_zero_vec, rat, serde_rational, EchelonBuilder, MatrixQ, Rational, SubspaceQ,
};

pub use closed_form::{
    closed_form_prederivation_f1, closed_form_prederivation_f2, closed_form_span_f1,
    closed_form_span_f2, ClosedForm, PreDerivCoeffsF1, PreDerivCoeffsF2,
};
pub use poly::{trace_poly_all_nilpotent, Poly, TRACE_BASIS_LIMIT};

/// Where an operator space came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Derivations,
    Prederivations,
    Adhoc,
}

/// A space of linear operators on `Q^n`, held as a canonical subspace of
/// `Q^{n²}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSubspace {
    n: usize,
    origin: Origin,
    space: SubspaceQ,
}

impl OperatorSubspace {
    pub fn from_space(n: usize, origin: Origin, space: SubspaceQ) -> Result<Self> {
        if space.ambient_dim() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: space.ambient_dim(),
            });
        }
        Ok(OperatorSubspace { n, origin, space })
    }

    /// Span of the given operators, tagged `adhoc`.
    pub fn span(n: usize, ops: &[MatrixQ]) -> Result<Self> {
        let mut b = EchelonBuilder::new(n * n);
        for m in ops {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.rows().max(m.cols()),
                });
            }
            b.push(m.as_slice().to_vec());
        }
        Ok(OperatorSubspace {
            n,
            origin: Origin::Adhoc,
            space: b.into_subspace(),
        })
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &SubspaceQ {
        &self.space
    }

    pub fn basis(&self) -> Vec<MatrixQ> {
        self.space
            .basis()
            .iter()
            .map(|v| MatrixQ::from_vec(self.n, self.n, v.clone()).expect("n² entries"))
            .collect()
    }

    pub fn contains(&self, m: &MatrixQ) -> bool {
        m.rows() == self.n && m.cols() == self.n && self.space.contains(m.as_slice())
    }

    pub fn contains_space(&self, other: &OperatorSubspace) -> bool {
        self.n == other.n && self.space.contains_subspace(&other.space)
    }

    /// `Σ c_i B_i` over the canonical basis.
    pub fn combination(&self, coeffs: &[Rational]) -> MatrixQ {
        let mut acc = MatrixQ::zeros(self.n, self.n);
        for (c, b) in coeffs.iter().zip(self.basis()) {
            if !c.is_zero() {
                acc = &acc + &b.scale(c);
            }
        }
        acc
    }

    pub fn to_json(&self) -> OperatorSubspaceJson {
        OperatorSubspaceJson {
            ambient: self.n,
            origin: self.origin,
            basis: self.space.basis().iter().map(|v| Flat(v.clone())).collect(),
        }
    }

    pub fn from_json(j: &OperatorSubspaceJson) -> Result<Self> {
        let n = j.ambient;
        let mut b = EchelonBuilder::new(n * n);
        for v in &j.basis {
            if v.0.len() != n * n {
                return Err(Error::DimensionMismatch {
                    expected: n * n,
                    found: v.0.len(),
                });
            }
            b.push(v.0.clone());
        }
        Ok(OperatorSubspace {
            n,
            origin: j.origin,
            space: b.into_subspace(),
        })
    }
}

/// Wire form: `{"ambient": n, "origin": "prederivations", "basis": [[...]]}`
/// with each basis operator flattened row-major to `n²` rational strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorSubspaceJson {
    pub ambient: usize,
    pub origin: Origin,
    pub basis: Vec<Flat>,
}

/// Row-major flattened operator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Flat(#[serde(with = "serde_rational::vec")] pub Vec<Rational>);

impl From<&MatrixQ> for Flat {
    fn from(m: &MatrixQ) -> Self {
        Flat(m.as_slice().to_vec())
    }
}

/// Dense table of `[e_a, e_b]` (zero-based) for the assembly loops.
struct ProductTable {
    n: usize,
    prod: Vec<Vec<(usize, Rational)>>,
}

impl ProductTable {
    fn new(a: &Algebra) -> Self {
        let n = a.dim();
        let mut prod = vec![Vec::new(); n * n];
        for (&(i, j), out) in a.products() {
            prod[(i - 1) * n + (j - 1)] = out.iter().map(|(&k, c)| (k - 1, c.clone())).collect();
        }
        ProductTable { n, prod }
    }

    fn get(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.prod[a * self.n + b]
    }

    /// `[[e_a, e_b], e_c]` as a sparse vector.
    fn triple(&self, a: usize, b: usize, c: usize) -> Vec<(usize, Rational)> {
        let mut acc = vec![Rational::zero(); self.n];
        for (k, x) in self.get(a, b) {
            for (m, y) in self.get(*k, c) {
                acc[*m] += x * y;
            }
        }
        acc.into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }
}

/// Accumulates coefficient rows, one per output coordinate, for an
/// equation family over the `n²` operator unknowns.
struct RowSet {
    n: usize,
    rows: Vec<Vec<Rational>>,
}

impl RowSet {
    fn new(n: usize) -> Self {
        RowSet {
            n,
            rows: vec![vec![Rational::zero(); n * n]; n],
        }
    }

    /// Adds `sign · w_a · P_{b,a}` to coordinate `b` for every `b`, i.e. the
    /// term `sign · P(w)`.
    fn apply_unknown(&mut self, w: &[(usize, Rational)], sign: &Rational) {
        let n = self.n;
        for (a, wa) in w {
            let c = sign * wa;
            for b in 0..n {
                self.rows[b][b * n + a] += &c;
            }
        }
    }

    /// Adds `sign · Σ_b P_{b,col} · img(b)` where `img(b)` is a sparse vector.
    fn substitute_column<F>(&mut self, col: usize, sign: &Rational, img: F)
    where
        F: Fn(usize) -> Vec<(usize, Rational)>,
    {
        let n = self.n;
        for b in 0..n {
            for (m, v) in img(b) {
                self.rows[m][b * n + col] += sign * &v;
            }
        }
    }

    fn flush_into(self, builder: &mut EchelonBuilder) {
        for r in self.rows {
            if !is_zero_vec(&r) {
                builder.push(r);
            }
        }
    }
}

fn merge_builders(cols: usize, parts: Vec<EchelonBuilder>) -> EchelonBuilder {
    let mut acc = EchelonBuilder::new(cols);
    for p in parts {
        acc.merge(p);
    }
    acc
}

/// All `d` with `d([x,y]) = [d(x),y] + [x,d(y)]`.
pub fn derivation_space(a: &Algebra) -> OperatorSubspace {
    let n = a.dim();
    let table = ProductTable::new(a);
    let (one, minus) = (rat(1), rat(-1));
    let parts: Vec<EchelonBuilder> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut b = EchelonBuilder::new(n * n);
            for j in 0..n {
                let mut rows = RowSet::new(n);
                rows.apply_unknown(table.get(i, j), &one);
                rows.substitute_column(i, &minus, |x| table.get(x, j).to_vec());
                rows.substitute_column(j, &minus, |x| table.get(i, x).to_vec());
                rows.flush_into(&mut b);
            }
            b
        })
        .collect();
    let system = merge_builders(n * n, parts);
    OperatorSubspace {
        n,
        origin: Origin::Derivations,
        space: system.kernel(),
    }
}

/// All `P` with `P([[x,y],z]) = [[P(x),y],z] + [[x,P(y)],z] + [[x,y],P(z)]`.
pub fn prederivation_space(a: &Algebra) -> OperatorSubspace {
    let n = a.dim();
    let table = ProductTable::new(a);
    let (one, minus) = (rat(1), rat(-1));
    let parts: Vec<EchelonBuilder> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut b = EchelonBuilder::new(n * n);
            for j in 0..n {
                for k in 0..n {
                    let mut rows = RowSet::new(n);
                    rows.apply_unknown(&table.triple(i, j, k), &one);
                    rows.substitute_column(i, &minus, |x| table.triple(x, j, k));
                    rows.substitute_column(j, &minus, |x| table.triple(i, x, k));
                    rows.substitute_column(k, &minus, |x| table.triple(i, j, x));
                    rows.flush_into(&mut b);
                }
            }
            b
        })
        .collect();
    let system = merge_builders(n * n, parts);
    OperatorSubspace {
        n,
        origin: Origin::Prederivations,
        space: system.kernel(),
    }
}

fn apply(m: &MatrixQ, v: &[Rational]) -> Vec<Rational> {
    m.mul_vec(v).expect("operator matches algebra dimension")
}

/// Direct check of the derivation identity on all basis pairs.
pub fn is_derivation(a: &Algebra, d: &MatrixQ) -> bool {
    let n = a.dim();
    let e: Vec<Vec<Rational>> = (1..=n).map(|i| a.basis_vector(i)).collect();
    let mul = |x: &[Rational], y: &[Rational]| a.product(x, y).expect("dimension");
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = apply(d, &mul(&e[i], &e[j]));
            let r1 = mul(&apply(d, &e[i]), &e[j]);
            let r2 = mul(&e[i], &apply(d, &e[j]));
            lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (x, y))| *l == x + y)
        })
    })
}

/// Direct check of the pre-derivation identity on all basis triples.
pub fn is_prederivation(a: &Algebra, p: &MatrixQ) -> bool {
    let n = a.dim();
    let e: Vec<Vec<Rational>> = (1..=n).map(|i| a.basis_vector(i)).collect();
    let mul = |x: &[Rational], y: &[Rational]| a.product(x, y).expect("dimension");
    let pe: Vec<Vec<Rational>> = e.iter().map(|v| apply(p, v)).collect();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let xy = mul(&e[i], &e[j]);
            (0..n).all(|k| {
                let lhs = apply(p, &mul(&xy, &e[k]));
                let r1 = mul(&mul(&pe[i], &e[j]), &e[k]);
                let r2 = mul(&mul(&e[i], &pe[j]), &e[k]);
                let r3 = mul(&xy, &pe[k]);
                lhs.iter()
                    .zip(r1.iter().zip(r2.iter().zip(&r3)))
                    .all(|(l, (x, (y, z)))| *l == x + y + z)
            })
        })
    })
}

/// True iff every commutator of basis operators stays in the span.
pub fn bracket_closed(s: &OperatorSubspace) -> bool {
    let basis = s.basis();
    (0..basis.len()).all(|i| {
        (i + 1..basis.len()).all(|j| {
            let c = basis[i].commutator(&basis[j]).expect("square");
            s.contains(&c)
        })
    })
}

/// `M^n = 0` where `n` is the size of `M`.
pub fn is_nilpotent_operator(m: &MatrixQ) -> bool {
    assert!(m.is_square(), "nilpotency needs a square matrix");
    let mut p = m.clone();
    for _ in 1..m.rows() {
        if p.is_zero() {
            return true;
        }
        p = &p * m;
    }
    p.is_zero()
}

/// Outcome of [`all_nilpotent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyVerdict {
    pub all_nilpotent: bool,
    /// Codimensions `n − dim W_k` of the Engel chain `0 = W_0 ⊂ W_1 ⊂ …`,
    /// where `W_{k+1} = {v : M·v ∈ W_k for all M}`. Ends at 0 exactly when
    /// every element is nilpotent.
    pub flag: Vec<usize>,
    /// A non-nilpotent element of the span when the verdict is false.
    pub witness: Option<MatrixQ>,
}

/// Square matrix whose kernel is exactly `w`.
fn quotient_projector(n: usize, w: &SubspaceQ) -> MatrixQ {
    let ann = w.annihilator();
    let mut m = MatrixQ::zeros(n, n);
    for (r, y) in ann.basis().iter().enumerate() {
        for (c, v) in y.iter().enumerate() {
            m[(r, c)] = v.clone();
        }
    }
    m
}

/// Engel chain of a commutator-closed operator space.
pub fn engel_flag(s: &OperatorSubspace) -> (Vec<usize>, bool) {
    let n = s.n;
    let basis = s.basis();
    let full = SubspaceQ::full(n);
    let mut w = SubspaceQ::zero(n);
    let mut flag = vec![n];
    loop {
        if w.dim() == n {
            return (flag, true);
        }
        let proj = quotient_projector(n, &w);
        let ops: Vec<MatrixQ> = basis.iter().map(|m| &proj * m).collect();
        let next = common_kernel(&ops, &full).expect("square operators");
        if next.dim() == w.dim() {
            return (flag, false);
        }
        flag.push(n - next.dim());
        w = next;
    }
}

/// Decides whether every element of `span(S)` is nilpotent.
pub fn all_nilpotent(s: &OperatorSubspace) -> Result<NilpotencyVerdict> {
    if !bracket_closed(s) {
        return Err(Error::NotBracketClosed);
    }
    let (flag, ok) = engel_flag(s);
    let witness = if ok { None } else { Some(find_witness(s)) };
    Ok(NilpotencyVerdict {
        all_nilpotent: ok,
        flag,
        witness,
    })
}

const RANDOM_ATTEMPTS: usize = 1000;
const WITNESS_SEED: u64 = 0x5eed_0f_f111f0;

/// A non-nilpotent element of a space already known not to be nil.
fn find_witness(s: &OperatorSubspace) -> MatrixQ {
    let basis = s.basis();
    if let Some(b) = basis.iter().find(|b| !is_nilpotent_operator(b)) {
        return b.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED);
    for _ in 0..RANDOM_ATTEMPTS {
        let coeffs: Vec<Rational> = (0..basis.len())
            .map(|_| rat(rng.gen_range(-3..=3)))
            .collect();
        let m = s.combination(&coeffs);
        if !is_nilpotent_operator(&m) {
            return m;
        }
    }
    let point = poly::nonvanishing_trace_point(&basis, s.n)
        .expect("Engel chain stalled, so some trace polynomial is nonzero");
    let coeffs: Vec<Rational> = point.into_iter().map(rat).collect();
    s.combination(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, i: usize, j: usize) -> MatrixQ {
        MatrixQ::unit(n, i, j)
    }

    #[test]
    fn nilpotent_operator_examples() {
        assert!(is_nilpotent_operator(&MatrixQ::zeros(3, 3)));
        assert!(!is_nilpotent_operator(&MatrixQ::identity(3)));
        let jordan = MatrixQ::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert!(is_nilpotent_operator(&jordan));
    }

    #[test]
    fn bracket_closure() {
        let s = OperatorSubspace::span(2, &[unit(2, 0, 0), unit(2, 0, 1), unit(2, 1, 0)]).unwrap();
        assert!(!bracket_closed(&s));
        assert!(matches!(all_nilpotent(&s), Err(Error::NotBracketClosed)));
        let gl = OperatorSubspace::span(
            2,
            &[unit(2, 0, 0), unit(2, 0, 1), unit(2, 1, 0), unit(2, 1, 1)],
        )
        .unwrap();
        assert!(bracket_closed(&gl));
    }

    #[test]
    fn engel_flag_examples() {
        let s = OperatorSubspace::span(2, &[unit(2, 0, 1)]).unwrap();
        let v = all_nilpotent(&s).unwrap();
        assert!(v.all_nilpotent);
        assert_eq!(v.flag, vec![2, 1, 0]);
        assert!(v.witness.is_none());

        let s = OperatorSubspace::span(2, &[unit(2, 0, 0)]).unwrap();
        let v = all_nilpotent(&s).unwrap();
        assert!(!v.all_nilpotent);
        assert_eq!(v.witness, Some(unit(2, 0, 0)));
    }

    #[test]
    fn witness_found_when_basis_is_nilpotent() {
        // sl_2: the canonical basis is {E_11 − E_22, E_12, E_21} up to echelon
        // form; a space of traceless maps spanned by E_12, E_21 and their
        // commutator has non-nilpotent elements.
        let h = &unit(2, 0, 0) - &unit(2, 1, 1);
        let s = OperatorSubspace::span(2, &[unit(2, 0, 1), unit(2, 1, 0), h]).unwrap();
        let v = all_nilpotent(&s).unwrap();
        assert!(!v.all_nilpotent);
        let w = v.witness.unwrap();
        assert!(!is_nilpotent_operator(&w));
        assert!(s.contains(&w));
    }

    #[test]
    fn abelian_derivations_are_everything() {
        let a = Algebra::new(3).unwrap();
        assert_eq!(derivation_space(&a).dim(), 9);
        assert_eq!(prederivation_space(&a).dim(), 9);
    }

    #[test]
    fn json_round_trip() {
        let s = OperatorSubspace::span(2, &[unit(2, 0, 1), unit(2, 1, 1).scale(&rat(3))]).unwrap();
        let text = serde_json::to_string(&s.to_json()).unwrap();
        assert!(text.contains("\"origin\":\"adhoc\""));
        let back = OperatorSubspace::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
