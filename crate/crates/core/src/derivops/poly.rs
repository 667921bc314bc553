//! Multivariate polynomials over `Q` and the trace-power nilpotency oracle.
//!
//! Over a field of characteristic zero a matrix `M` is nilpotent iff
//! `tr(M^k) = 0` for `k = 1..n`. Applied to the generic element
//! `t_1 B_1 + … + t_d B_d` of an operator space, every element is nilpotent
//! iff each `tr(M^k)` is the zero polynomial in `t`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_traits::Zero;

use super::OperatorSubspace;
use crate::error::{Error, Result};
use crate::exactlin::{rat, MatrixQ, Rational};

/// Largest basis accepted by [`trace_poly_all_nilpotent`].
pub const TRACE_BASIS_LIMIT: usize = 8;

type Exponents = Vec<u32>;

/// Sparse polynomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// The variable `t_i` (zero-based).
    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, rat(1));
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitutes `t_var = value`, keeping the variable count.
    pub fn substitute(&self, var: usize, value: &Rational) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..e[var] {
                term *= value;
            }
            let mut e2 = e.clone();
            e2[var] = 0;
            out.add_term(e2, term);
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars);
        let mut out = Poly::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

/// Powers of the generic element `Σ t_i B_i`, stored as
/// `monomial ↦ matrix coefficient`.
struct GenericPowers<'a> {
    basis: &'a [MatrixQ],
    current: BTreeMap<Exponents, MatrixQ>,
}

impl<'a> GenericPowers<'a> {
    fn new(basis: &'a [MatrixQ]) -> Self {
        let d = basis.len();
        let mut current = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            if !b.is_zero() {
                let mut e = vec![0; d];
                e[i] = 1;
                current.insert(e, b.clone());
            }
        }
        GenericPowers { basis, current }
    }

    fn trace(&self) -> Poly {
        let mut p = Poly::zero(self.basis.len());
        for (e, m) in &self.current {
            p.add_term(e.clone(), m.trace());
        }
        p
    }

    fn step(&mut self) {
        let mut next: BTreeMap<Exponents, MatrixQ> = BTreeMap::new();
        for (e, m) in &self.current {
            for (i, b) in self.basis.iter().enumerate() {
                let prod = m * b;
                if prod.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[i] += 1;
                match next.get_mut(&e2) {
                    Some(acc) => *acc = &*acc + &prod,
                    None => {
                        next.insert(e2, prod);
                    }
                }
            }
        }
        next.retain(|_, m| !m.is_zero());
        self.current = next;
    }

    fn is_zero(&self) -> bool {
        self.current.is_empty()
    }
}

/// First nonzero `tr((Σ t_i B_i)^k)`, `1 ≤ k ≤ n`, if any.
fn first_nonzero_trace(basis: &[MatrixQ], n: usize) -> Option<Poly> {
    let mut powers = GenericPowers::new(basis);
    for k in 1..=n {
        if powers.is_zero() {
            return None;
        }
        let tr = powers.trace();
        if !tr.is_zero() {
            return Some(tr);
        }
        if k < n {
            powers.step();
        }
    }
    None
}

/// Symbolic oracle: every element of `span(S)` is nilpotent iff all the
/// trace polynomials of the generic element vanish identically.
pub fn trace_poly_all_nilpotent(s: &OperatorSubspace) -> Result<bool> {
    if s.dim() > TRACE_BASIS_LIMIT {
        return Err(Error::BasisTooLarge {
            size: s.dim(),
            limit: TRACE_BASIS_LIMIT,
        });
    }
    Ok(first_nonzero_trace(&s.basis(), s.ambient()).is_none())
}

/// A point of `{0,…,deg}^d` where `p` does not vanish, found one variable
/// at a time: a nonzero polynomial of degree at most `deg` in a variable
/// cannot vanish at `deg + 1` distinct values of it.
pub fn nonvanishing_point(p: &Poly) -> Option<Vec<i64>> {
    if p.is_zero() {
        return None;
    }
    let deg = i64::from(p.total_degree());
    let mut current = p.clone();
    let mut point = Vec::with_capacity(p.vars());
    for var in 0..p.vars() {
        let (x, q) = (0..=deg)
            .map(|x| (x, current.substitute(var, &rat(x))))
            .find(|(_, q)| !q.is_zero())?;
        point.push(x);
        current = q;
    }
    Some(point)
}

/// Coefficients of a non-nilpotent element of `span(basis)`, or `None` when
/// every element is nilpotent.
pub fn nonvanishing_trace_point(basis: &[MatrixQ], n: usize) -> Option<Vec<i64>> {
    first_nonzero_trace(basis, n).and_then(|p| nonvanishing_point(&p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivops::is_nilpotent_operator;

    #[test]
    fn poly_arithmetic() {
        let t0 = Poly::var(2, 0);
        let t1 = Poly::var(2, 1);
        let s = &t0 + &t1;
        let sq = &s * &s;
        assert_eq!(sq.total_degree(), 2);
        assert_eq!(sq.eval(&[rat(2), rat(3)]), rat(25));
        let diff = &sq + &(&(&t0 * &t0) * &Poly::constant(2, rat(-1)));
        assert_eq!(diff.eval(&[rat(2), rat(3)]), rat(21));
        assert!((&t0 + &(&t0 * &Poly::constant(2, rat(-1)))).is_zero());
    }

    #[test]
    fn strictly_upper_is_nilpotent() {
        let s = OperatorSubspace::span(3, &[MatrixQ::unit(3, 0, 1), MatrixQ::unit(3, 0, 2)]).unwrap();
        assert!(trace_poly_all_nilpotent(&s).unwrap());
    }

    #[test]
    fn diagonal_unit_is_not() {
        let s = OperatorSubspace::span(2, &[MatrixQ::unit(2, 0, 0)]).unwrap();
        assert!(!trace_poly_all_nilpotent(&s).unwrap());
        let tr = first_nonzero_trace(&s.basis(), 2).unwrap();
        assert_eq!(tr, Poly::var(1, 0));
    }

    #[test]
    fn basis_limit_enforced() {
        let ops: Vec<MatrixQ> = (0..3)
            .flat_map(|i| (0..3).map(move |j| MatrixQ::unit(3, i, j)))
            .collect();
        let s = OperatorSubspace::span(3, &ops).unwrap();
        assert!(matches!(
            trace_poly_all_nilpotent(&s),
            Err(Error::BasisTooLarge { size: 9, .. })
        ));
    }

    #[test]
    fn grid_point_for_traceless_pair() {
        // tr(t_0 E_12 + t_1 E_21)^2 = 2 t_0 t_1: zero on both axes.
        let basis = [MatrixQ::unit(2, 0, 1), MatrixQ::unit(2, 1, 0)];
        let point = nonvanishing_trace_point(&basis, 2).unwrap();
        assert!(point.iter().all(|&x| x != 0));
        let m = &basis[0].scale(&rat(point[0])) + &basis[1].scale(&rat(point[1]));
        assert!(!is_nilpotent_operator(&m));
    }
}
