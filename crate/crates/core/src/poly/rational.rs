use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Signed;

use super::{gcd, LaurentPolynomial, PolyError, Var};

/// Element of the ambient field, kept reduced.
///
/// Cluster-monomial content lives in the numerator; the denominator is a
/// sign-normalized polynomial with no cluster-monomial factor and no common
/// factor with the numerator. A value is a Laurent polynomial exactly when
/// the denominator is `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalFunction {
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from(LaurentPolynomial::zero()));
        }
        let (mn, pn) = num.split_cluster_content();
        let (md, pd) = den.split_cluster_content();
        let g = gcd(&pn, &pd);
        let mut pn = pn.exact_div_poly(&g).expect("gcd divides numerator");
        let mut pd = pd.exact_div_poly(&g).expect("gcd divides denominator");
        if pd.leading_coefficient().is_some_and(|c| c.is_negative()) {
            pn = -pn;
            pd = -pd;
        }
        Ok(RationalFunction {
            num: pn.mul_monomial(&mn.div(&md)),
            den: pd,
        })
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_laurent(&self) -> Option<LaurentPolynomial> {
        self.is_laurent().then(|| self.num.clone())
    }

    pub fn inverse(&self) -> Result<Self, PolyError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<Self, PolyError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let k = e.unsigned_abs();
        Self::new(base.num.pow(k), base.den.pow(k))
    }
}

impl From<LaurentPolynomial> for RationalFunction {
    fn from(p: LaurentPolynomial) -> Self {
        RationalFunction {
            num: p,
            den: LaurentPolynomial::one(),
        }
    }
}

impl From<Var> for RationalFunction {
    fn from(v: Var) -> Self {
        LaurentPolynomial::var(v).into()
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominators")
    }
}

impl Div for &RationalFunction {
    type Output = Result<RationalFunction, PolyError>;
    fn div(self, rhs: &RationalFunction) -> Result<RationalFunction, PolyError> {
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl LaurentPolynomial {
    /// Substitutes a rational function for the cluster symbol `v`; the
    /// result is reduced.
    pub fn substitute(
        &self,
        v: Var,
        value: &RationalFunction,
    ) -> Result<RationalFunction, PolyError> {
        let parts = self.coefficients_in(v);
        if parts.is_empty() {
            return Ok(RationalFunction::from(LaurentPolynomial::zero()));
        }
        let lo = parts.first().unwrap().0.min(0);
        let hi = parts.last().unwrap().0.max(0);
        if lo < 0 && value.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        // sum e_a N^a D^-a  =  [sum e_a N^(a-lo) D^(hi-a)] / (N^-lo D^hi)
        let (n, d) = (&value.num, &value.den);
        let mut num = LaurentPolynomial::zero();
        for (a, coeff) in parts {
            let term = &(&coeff * &n.pow((a - lo) as u32)) * &d.pow((hi - a) as u32);
            num += &term;
        }
        let den = &n.pow((-lo) as u32) * &d.pow(hi as u32);
        RationalFunction::new(num, den)
    }
}
