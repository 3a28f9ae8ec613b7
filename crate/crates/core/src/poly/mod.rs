//! Exact multivariate polynomial arithmetic over the rationals in
//! matrix-entry variables: ring operations, differentiation, gcd,
//! squarefree tests, fraction-free determinants, Pfaffians and pullbacks.

mod gcd;
mod matrix;

pub use matrix::{
    dress_wenzel_check, generic_general, generic_skew, generic_symmetric, j_matrix, pfaffian_sub,
    PolyMatrix,
};

use num::{BigInt, BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exact rational scalar used for every coefficient.
pub type Rat = BigRational;

/// Convenience constructor for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Convenience constructor for a fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("zero polynomial is not accepted here")]
    ZeroPolynomial,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not skew-symmetric at entry ({row},{col})")]
    NotSkewSymmetric { row: usize, col: usize },
    #[error("variable {0} has no assignment")]
    UnassignedVariable(Variable),
    #[error("index {0} is out of range 1..={1}")]
    IndexOutOfRange(u32, u32),
}

/// A matrix-entry variable `a_{row,col}`, 1-based.
///
/// Variables are totally ordered row-major: `a_1_1 < a_1_2 < … < a_2_1 < …`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Variable {
    pub row: u32,
    pub col: u32,
}

impl Variable {
    pub fn new(row: u32, col: u32) -> Self {
        assert!(row >= 1 && col >= 1, "variable indices are 1-based");
        Variable { row, col }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a_{}_{}", self.row, self.col)
    }
}

impl serde::Serialize for Variable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Shorthand used pervasively in tests and family constructions.
pub fn v(row: u32, col: u32) -> Variable {
    Variable::new(row, col)
}

/// A power product of variables; exponents are strictly positive and the
/// variable list is sorted ascending.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(x: Variable) -> Self {
        Monomial(vec![(x, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, x: Variable) -> u32 {
        self.0
            .iter()
            .find(|&&(y, _)| y == x)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Variable> + '_ {
        self.0.iter().map(|&(x, _)| x)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(&(xa, ea)), Some(&(xb, eb))) => match xa.cmp(&xb) {
                    Ordering::Less => {
                        out.push((xa, ea));
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push((xb, eb));
                        j += 1;
                    }
                    Ordering::Equal => {
                        out.push((xa, ea + eb));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&t), None) => {
                    out.push(t);
                    i += 1;
                }
                (None, Some(&t)) => {
                    out.push(t);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// Exact monomial quotient, if `other` divides `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut i = 0;
        for &(x, e) in &other.0 {
            loop {
                let &(y, f) = self.0.get(i)?;
                if y < x {
                    out.push((y, f));
                    i += 1;
                } else if y == x {
                    if f < e {
                        return None;
                    }
                    if f > e {
                        out.push((y, f - e));
                    }
                    i += 1;
                    break;
                } else {
                    return None;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        Some(Monomial(out))
    }
}

/// Graded lexicographic order: total degree first, ties broken
/// lexicographically with earlier (row-major smaller) variables dominating.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(xa, ea)), Some(&(xb, eb))) => {
                        if xa < xb {
                            return Ordering::Greater;
                        }
                        if xb < xa {
                            return Ordering::Less;
                        }
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact multivariate polynomial over the rationals in canonical form:
/// no stored zero coefficients, one entry per monomial.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn var(x: Variable) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(x), Rat::one());
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(Monomial::is_one)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, x: Variable) -> u32 {
        self.terms.keys().map(|m| m.exponent(x)).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Leading term in the fixed graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// The sorted set of variables occurring with nonzero exponent.
    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to `x`.
    pub fn derivative(&self, x: Variable) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(x);
            if e > 0 {
                let q = m.try_div(&Monomial::var(x)).expect("positive exponent");
                out.add_term(q, c * rat(e as i64));
            }
        }
        out
    }

    /// Substitute every variable of `self` by its assigned polynomial.
    pub fn pullback(
        &self,
        assignment: &BTreeMap<Variable, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        for x in self.variables() {
            if !assignment.contains_key(&x) {
                return Err(PolyError::UnassignedVariable(x));
            }
        }
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for (x, e) in &m.0 {
                t = t.mul(&assignment[x].pow(*e));
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Evaluate at a rational point; variables absent from the map read 0.
    pub fn eval(&self, point: &BTreeMap<Variable, Rat>) -> Rat {
        let zero = Rat::zero();
        let mut out = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in &m.0 {
                let val = point.get(x).unwrap_or(&zero);
                for _ in 0..*e {
                    t *= val;
                }
                if t.is_zero() {
                    break;
                }
            }
            out += t;
        }
        out
    }

    /// View as univariate in `x`: coefficient polynomials indexed by power.
    pub fn coefficients_in(&self, x: Variable) -> Vec<Polynomial> {
        let d = self.degree_in(x) as usize;
        let mut out = vec![Polynomial::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(x) as usize;
            let rest = m
                .try_div(&Monomial(vec![(x, e as u32)]))
                .unwrap_or_else(|| m.clone());
            out[e].add_term(rest, c.clone());
        }
        out
    }

    /// Exact polynomial division; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.try_div(&dm)?;
            let qc = rc / &dc;
            let mut t = Polynomial::zero();
            t.add_term(qm, qc);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(d));
        }
        Some(quot)
    }

    /// The positive rational `c` such that `self / c` has coprime integer
    /// coefficients; sign is carried separately by the leading coefficient.
    pub fn rational_content(&self) -> Rat {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num::Integer::gcd(&num_gcd, &c.numer().abs());
            den_lcm = num::Integer::lcm(&den_lcm, c.denom());
        }
        if num_gcd.is_zero() {
            return Rat::one();
        }
        Rat::new(num_gcd, den_lcm)
    }

    /// Canonical scalar normalization: coprime integer coefficients with
    /// positive leading coefficient in the fixed monomial order.
    pub fn normalized(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut c = self.rational_content();
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        self.scale(&(Rat::one() / c))
    }

    /// `Some(c)` with `self = c * other` for a nonzero rational `c`.
    pub fn constant_multiple_of(&self, other: &Polynomial) -> Option<Rat> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let (ml, cl) = self.leading().unwrap();
        let (mr, cr) = other.leading().unwrap();
        if ml != mr {
            return None;
        }
        let c = cl / cr;
        if *self == other.scale(&c) {
            Some(c)
        } else {
            None
        }
    }

    /// Equality up to a nonzero rational constant.
    pub fn eq_up_to_constant(&self, other: &Polynomial) -> bool {
        (self.is_zero() && other.is_zero()) || self.constant_multiple_of(other).is_some()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut wrote = false;
            if !abs.is_one() || m.is_one() {
                write!(f, "{}", abs)?;
                wrote = true;
            }
            for (x, e) in &m.0 {
                if wrote {
                    write!(f, " * ")?;
                }
                if *e == 1 {
                    write!(f, "{}", x)?;
                } else {
                    write!(f, "{}^{}", x, e)?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}
impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}
impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}
impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

pub use gcd::{gcd, is_squarefree, pairwise_coprime, squarefree_part};
