use std::fmt;

use super::{AlgebraError, LaurentPoly};

/// Quotient of two Laurent polynomials, compared by cross-multiplication.
#[derive(Clone, Debug)]
pub struct FractionPair {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl FractionPair {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(FractionPair { num, den }.reduced())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        FractionPair { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Divide out the denominator when it divides the numerator exactly.
    fn reduced(self) -> Self {
        if self.den.is_one() {
            return self;
        }
        match self.num.exact_div(&self.den) {
            Ok(q) => Self::from_poly(q),
            Err(_) => self,
        }
    }

    /// The underlying Laurent polynomial if the fraction is one.
    pub fn to_laurent(&self) -> Result<LaurentPoly, AlgebraError> {
        self.num.exact_div(&self.den)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return FractionPair { num: &self.num + &o.num, den: self.den.clone() }.reduced();
        }
        FractionPair {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
        .reduced()
    }

    pub fn neg(&self) -> Self {
        FractionPair { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        FractionPair { num: &self.num * &o.num, den: &self.den * &o.den }.reduced()
    }

    pub fn div(&self, o: &Self) -> Result<Self, AlgebraError> {
        if o.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(FractionPair { num: &self.num * &o.den, den: &self.den * &o.num }.reduced())
    }
}

impl PartialEq for FractionPair {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for FractionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
