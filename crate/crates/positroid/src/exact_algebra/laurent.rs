use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{term_budget, AlgebraError};

/// Variable families used across the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Deodhar torus coordinates `t_r`.
    T,
    /// Twisted minors / initial cluster variables `q_r`.
    Q,
    /// A cluster variable after one exchange, `q'_r`.
    QPrime,
    /// Formal cluster variables `x_r`.
    X,
    /// Generic entries `u_i_j` of a unipotent matrix.
    U,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub family: Family,
    pub index: u32,
}

impl Var {
    pub fn t(r: usize) -> Var {
        Var { family: Family::T, index: r as u32 }
    }
    pub fn q(r: usize) -> Var {
        Var { family: Family::Q, index: r as u32 }
    }
    pub fn q_prime(r: usize) -> Var {
        Var { family: Family::QPrime, index: r as u32 }
    }
    pub fn x(r: usize) -> Var {
        Var { family: Family::X, index: r as u32 }
    }
    /// Entry `(i, j)` of a generic matrix, `i, j < 100`.
    pub fn u(i: usize, j: usize) -> Var {
        Var { family: Family::U, index: (i * 100 + j) as u32 }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::T => write!(f, "t_{}", self.index),
            Family::Q => write!(f, "q_{}", self.index),
            Family::QPrime => write!(f, "q'_{}", self.index),
            Family::X => write!(f, "x_{}", self.index),
            Family::U => write!(f, "u_{}_{}", self.index / 100, self.index % 100),
        }
    }
}

/// Laurent monomial as a sorted sparse exponent vector without zero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_exponents<I: IntoIterator<Item = (Var, i32)>>(it: I) -> Self {
        let mut map: BTreeMap<Var, i32> = BTreeMap::new();
        for (v, e) in it {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn exponents(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// True if every exponent of `other` is at most the matching exponent here.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        other.0.iter().all(|&(v, e)| self.exponent(v) >= e)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }
}

impl Ord for Monomial {
    /// Graded lex: total degree first, then the exponent of the smallest variable.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (idx, (v, e)) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// Sparse Laurent polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_pow(x: &BigRational, e: i32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn var(v: Var) -> Self {
        Self::term(rat(1), Monomial::var(v))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(rat(1), m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map_or(false, |(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Single term `c * m`, if that is what this is.
    pub fn as_term(&self) -> Option<(&BigRational, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    /// Invertible elements of the Laurent ring are the nonzero single terms.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, x)| (m.mul(mono), x.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Inverse of a unit; `None` if this has more than one term.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (c, m) = self.as_term()?;
        Some(Self::term(c.recip(), m.inverse()))
    }

    /// Minimum exponent of `v` over all terms (0 for the zero polynomial).
    pub fn min_exponent(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0)
    }

    pub fn max_exponent(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Monomial `m` with `self = m * p`, `p` a polynomial divisible by no variable.
    pub fn monomial_content(&self) -> Monomial {
        Monomial::from_exponents(self.vars().into_iter().map(|v| (v, self.min_exponent(v))))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.exponents().iter().all(|&(_, e)| e >= 0))
    }

    /// Coefficient list in powers of `v`: `self = sum_e c_e * v^e`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let rest = m.mul(&Monomial::var(v).pow(-e));
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    pub fn rename(&self, from: Var, to: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let nm = Monomial::from_exponents(
                m.exponents().iter().map(|&(v, e)| (if v == from { to } else { v }, e)),
            );
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Substitute each listed variable by a Laurent polynomial. Variables
    /// with a negative exponent must map to units.
    pub fn substitute(&self, map: &BTreeMap<Var, LaurentPoly>) -> Result<Self, AlgebraError> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            let mut kept = Vec::new();
            for &(v, e) in m.exponents() {
                match map.get(&v) {
                    None => kept.push((v, e)),
                    Some(p) if e >= 0 => acc = &acc * &p.pow(e as u32),
                    Some(p) => {
                        let inv = p.unit_inverse().ok_or(AlgebraError::NotAUnit)?;
                        acc = &acc * &inv.pow((-e) as u32);
                    }
                }
            }
            acc = acc.mul_monomial(&Monomial::from_exponents(kept));
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Evaluate at rational values. Fails on a zero denominator or a missing variable.
    pub fn eval(&self, point: &BTreeMap<Var, BigRational>) -> Result<BigRational, AlgebraError> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut acc = c.clone();
            for &(v, e) in m.exponents() {
                let x = point.get(&v).ok_or(AlgebraError::Unbound(v.to_string()))?;
                if e < 0 && x.is_zero() {
                    return Err(AlgebraError::DivisionByZero);
                }
                acc *= rat_pow(x, e);
            }
            total += acc;
        }
        Ok(total)
    }

    /// Exact quotient in the Laurent ring, or `NotDivisible`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(inv) = divisor.unit_inverse() {
            return Ok(self * &inv);
        }
        let budget = term_budget();
        let mf = self.monomial_content();
        let mg = divisor.monomial_content();
        let f = self.mul_monomial(&mf.inverse());
        let g = divisor.mul_monomial(&mg.inverse());
        let (lm_g, lc_g) = g.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = f;
        let mut quot = Self::zero();
        while let Some((lm, lc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divisible_by(&lm_g) {
                return Err(AlgebraError::NotDivisible);
            }
            let qm = lm.mul(&lm_g.inverse());
            let qc = &lc / &lc_g;
            for (m, c) in &g.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
            if rem.len() > budget || quot.len() > budget {
                return Err(AlgebraError::BudgetExceeded { terms: rem.len().max(quot.len()) });
            }
        }
        Ok(quot.mul_monomial(&mf.mul(&mg.inverse())))
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        other.exact_div(self).is_ok()
    }

    /// True when every coefficient is positive.
    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }
}

impl From<Var> for LaurentPoly {
    fn from(v: Var) -> Self {
        LaurentPoly::var(v)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in descending graded-lex order, explicit signs between terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", a, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(r: usize) -> LaurentPoly {
        LaurentPoly::var(Var::t(r))
    }

    #[test]
    fn display_is_canonical() {
        let p = &(&t(1) * &t(2)) - &LaurentPoly::int(3);
        assert_eq!(p.to_string(), "t_1*t_2 - 3");
        let inv = t(2).unit_inverse().unwrap();
        assert_eq!((&inv * &t(1)).to_string(), "t_1*t_2^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division_of_polynomials() {
        let a = &t(1) + &t(2);
        let b = &t(1) - &t(3);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(t(1).exact_div(&a), Err(AlgebraError::NotDivisible));
    }

    #[test]
    fn exact_division_with_negative_exponents() {
        let m = Monomial::from_exponents([(Var::t(1), -2), (Var::t(3), 1)]);
        let a = &t(1) + &LaurentPoly::monomial(m);
        let b = &t(2).unit_inverse().unwrap() + &t(3);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn grlex_orders_by_degree_then_first_variable() {
        let x1 = Monomial::var(Var::t(1));
        let x2sq = Monomial::var(Var::t(2)).pow(2);
        let x1x2 = x1.mul(&Monomial::var(Var::t(2)));
        assert!(x2sq > x1);
        assert!(x1x2 > x2sq);
    }

    #[test]
    fn coefficients_in_variable_reassemble() {
        let p = &(&t(1) * &t(1)) + &(&t(2) * &t(1).unit_inverse().unwrap());
        let parts = p.coefficients_in(Var::t(1));
        let mut back = LaurentPoly::zero();
        for (e, c) in parts {
            back = &back + &c.mul_monomial(&Monomial::var(Var::t(1)).pow(e));
        }
        assert_eq!(back, p);
    }
}
