use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::monomial::{Monomial, Var};
use super::PolyError;

/// Sparse Laurent polynomial with integer coefficients.
///
/// Terms live in a `BTreeMap` keyed by [`Monomial`], so iteration runs in
/// ascending monomial order and the leading term is the last entry. Zero
/// coefficients are never stored; the zero polynomial is the empty map.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), 1)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, 1)
    }

    pub fn term<T: Into<BigInt>>(m: Monomial, c: T) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPolynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// `+1` or `-1`: the units of `Z[A]`.
    pub fn is_unit(&self) -> bool {
        self.as_constant().is_some_and(|c| c.abs().is_one())
    }

    pub fn as_constant(&self) -> Option<&BigInt> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && m.is_one() => Some(c),
            None => None,
            _ => None,
        }
    }

    /// No variables at all (includes zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.leading_term().map(|t| t.1)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_polynomial)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) != 0)
    }

    /// All variables that occur, ascending.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn max_degree_in(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0)
    }

    /// Leading coefficient is positive (zero counts as normalized).
    pub fn is_normalized(&self) -> bool {
        self.leading_coefficient().is_none_or(|c| c.is_positive())
    }

    /// The sign-normalized associate, and whether it was negated.
    pub fn normalized(&self) -> (Self, bool) {
        if self.is_normalized() {
            (self.clone(), false)
        } else {
            (-self, true)
        }
    }

    pub fn normalize(&self) -> Self {
        self.normalized().0
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// gcd of the integer coefficients (zero for the zero polynomial).
    pub fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Monomial of minimal exponents over all terms, restricted to variables
    /// accepted by `keep`.
    fn min_monomial(&self, keep: impl Fn(Var) -> bool) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let first = first.without(|v| !keep(v));
        it.fold(first, |acc, m| acc.gcd_with(&m.without(|v| !keep(v))))
    }

    /// Splits `self = m * p` where `m` is the cluster-symbol monomial content
    /// (exponents may be negative) and `p` is a polynomial that no cluster
    /// symbol divides.
    pub fn split_cluster_content(&self) -> (Monomial, LaurentPolynomial) {
        let m = self.min_monomial(Var::is_cluster);
        let p = self.mul_monomial(&m.inverse());
        (m, p)
    }

    /// Like [`split_cluster_content`](Self::split_cluster_content) but over every variable,
    /// for polynomial inputs.
    pub fn split_monomial_content(&self) -> (Monomial, LaurentPolynomial) {
        let m = self.min_monomial(|_| true);
        let p = self.mul_monomial(&m.inverse());
        (m, p)
    }

    /// The polynomial part after removing all cluster-monomial content.
    pub fn cluster_poly_part(&self) -> LaurentPolynomial {
        self.split_cluster_content().1
    }

    /// Repeated multiplication: for sparse operands this beats squaring,
    /// since every product is against the (small) base.
    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    /// Integer power; negative exponents are only allowed for Laurent units
    /// (a single cluster monomial with coefficient `±1`).
    pub fn powi(&self, e: i32) -> Result<Self, PolyError> {
        if e >= 0 {
            return Ok(self.pow(e as u32));
        }
        match self.leading_term() {
            Some((m, c)) if self.len() == 1 && c.abs().is_one() && m.is_cluster_only() => {
                let sign = if c.is_negative() && e % 2 != 0 { -1 } else { 1 };
                Ok(Self::term(m.pow(e), sign))
            }
            _ => Err(PolyError::NotInvertible),
        }
    }

    /// Coefficients with respect to `v`: pairs `(alpha, e_alpha)` in
    /// ascending `alpha`, with `self = sum e_alpha * v^alpha` and every
    /// `e_alpha` nonzero and free of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<(i32, LaurentPolynomial)> {
        let mut by_exp: BTreeMap<i32, LaurentPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let rest = m.without(|w| w == v);
            by_exp.entry(e).or_default().add_term(rest, c.clone());
        }
        by_exp.into_iter().filter(|(_, p)| !p.is_zero()).collect()
    }

    /// Sets `v` to zero. Terms with negative powers of `v` make this
    /// ill-defined, reported as division by zero.
    pub fn set_zero(&self, v: Var) -> Result<Self, PolyError> {
        if self.min_degree_in(v) < 0 {
            return Err(PolyError::DivisionByZero);
        }
        Ok(LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// Substitutes a Laurent polynomial for `v`. Negative powers of `v` are
    /// only allowed when `value` is a Laurent unit.
    pub fn substitute_poly(&self, v: Var, value: &LaurentPolynomial) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (e, coeff) in self.coefficients_in(v) {
            out += &(&coeff * &value.powi(e)?);
        }
        Ok(out)
    }

    /// Simultaneous substitution of every variable accepted by `map`.
    /// Variables left unmapped are kept. Mapped variables must appear with
    /// nonnegative exponents unless their image is a Laurent unit.
    pub fn evaluate(
        &self,
        map: impl Fn(Var) -> Option<LaurentPolynomial>,
    ) -> Result<Self, PolyError> {
        let images: Vec<(Var, LaurentPolynomial)> = self
            .variables()
            .into_iter()
            .filter_map(|v| map(v).map(|img| (v, img)))
            .collect();
        self.horner(&images)
    }

    /// Evaluates at `images` and divides exactly by `prod q^e` over `den`,
    /// without building intermediate values in the general representation
    /// when they fit a fixed-width one.
    pub fn evaluate_div(
        &self,
        images: &[(Var, LaurentPolynomial)],
        den: &[(&LaurentPolynomial, u32)],
    ) -> Result<Self, PolyError> {
        if let Some(result) = super::packed::evaluate_div(self, images, den) {
            return result;
        }
        let num = self.horner(images)?;
        let mut d = Self::one();
        for (q, e) in den {
            for _ in 0..*e {
                d = &d * *q;
            }
        }
        num.exact_div(&d)
    }

    /// Nested Horner evaluation, one mapped variable per level, so every
    /// large product is against a single (usually small) image.
    fn horner(&self, images: &[(Var, LaurentPolynomial)]) -> Result<Self, PolyError> {
        let Some(((v, img), rest)) = images.split_first() else {
            return Ok(self.clone());
        };
        if !self.involves(*v) {
            return self.horner(rest);
        }
        let coeffs = self.coefficients_in(*v);
        if coeffs[0].0 < 0 {
            let mut out = Self::zero();
            for (e, c) in coeffs {
                out += &(&c.horner(rest)? * &img.powi(e)?);
            }
            return Ok(out);
        }
        let mut acc = Self::zero();
        let mut prev = coeffs.last().map_or(0, |t| t.0);
        for (e, c) in coeffs.iter().rev() {
            for _ in *e..prev {
                acc = &acc * img;
            }
            acc += &c.horner(rest)?;
            prev = *e;
        }
        for _ in 0..prev {
            acc = &acc * img;
        }
        Ok(acc)
    }

    /// Renames variables, multiplying each `v^e` by `sign(v)^e`. Used to
    /// re-index seed symbols and absorb `-1` units.
    pub fn rename(&self, f: impl Fn(Var) -> (Var, bool)) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut c = c.clone();
            for (v, e) in m.iter() {
                if f(v).1 && e % 2 != 0 {
                    c = -c;
                }
            }
            (m.map_vars(|v| f(v).0), c)
        }))
    }

    /// Exact division of polynomial parts by the greedy leading-term method.
    /// Both operands must be polynomials; on failure the partial remainder
    /// is returned as a witness.
    pub(crate) fn divide_polynomials(
        p: &LaurentPolynomial,
        d: &LaurentPolynomial,
    ) -> Result<LaurentPolynomial, PolyError> {
        debug_assert!(p.is_polynomial() && d.is_polynomial());
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (dm, dc) = d
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        let mut rem = p.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading_term() {
            if !dm.divides(m) {
                return Err(PolyError::Inexact { remainder: rem });
            }
            let (q, r) = c.div_rem(&dc);
            if !r.is_zero() {
                return Err(PolyError::Inexact { remainder: rem });
            }
            let tm = m.div(&dm);
            let t = Self::term(tm, q);
            rem -= &(&t * d);
            quot += &t;
        }
        Ok(quot)
    }

    /// Exact division in the Laurent ring: returns `q` with `q * d == self`.
    /// Cluster-monomial content is split off first, so the quotient may
    /// carry negative exponents even for polynomial inputs.
    pub fn exact_div(&self, d: &LaurentPolynomial) -> Result<Self, PolyError> {
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (mp, pp) = self.split_cluster_content();
        let (md, dp) = d.split_cluster_content();
        let q = Self::divide_polynomials(&pp, &dp)?;
        Ok(q.mul_monomial(&mp.div(&md)))
    }

    /// Exact division in the polynomial ring: like [`exact_div`](Self::exact_div)
    /// but the quotient must have nonnegative exponents.
    pub fn exact_div_poly(&self, d: &LaurentPolynomial) -> Result<Self, PolyError> {
        let q = self.exact_div(d)?;
        if q.is_polynomial() || !self.is_polynomial() {
            Ok(q)
        } else {
            Err(PolyError::Inexact {
                remainder: self.clone(),
            })
        }
    }

    /// Largest `m` with `f^m` dividing `self`.
    ///
    /// For polynomial operands this works in the polynomial ring (so
    /// monomial `f` is allowed); otherwise in the Laurent ring, where `f`
    /// must not be a Laurent unit. `cap` stops the count early.
    pub fn factor_multiplicity_capped(
        &self,
        f: &LaurentPolynomial,
        cap: Option<u32>,
    ) -> Result<u32, PolyError> {
        if f.is_zero() || self.is_zero() {
            return Err(PolyError::ZeroOperand);
        }
        let polynomial = self.is_polynomial() && f.is_polynomial();
        let (mut p, f) = if polynomial {
            (self.clone(), f.clone())
        } else {
            (self.cluster_poly_part(), f.cluster_poly_part())
        };
        if f.is_unit() {
            return Err(PolyError::UnitFactor);
        }
        let mut count = 0;
        while cap.is_none_or(|c| count < c) {
            match Self::divide_polynomials(&p, &f) {
                Ok(q) => {
                    p = q;
                    count += 1;
                }
                Err(PolyError::Inexact { .. }) => break,
                Err(e) => return Err(e),
            }
        }
        Ok(count)
    }

    pub fn factor_multiplicity(&self, f: &LaurentPolynomial) -> Result<u32, PolyError> {
        self.factor_multiplicity_capped(f, None)
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Canonical serialization: terms in ascending monomial order, each as
    /// `coef*A1^e*X2^f`, joined by `+`/`-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::render(self, f, &|v: Var| v.to_string())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Var> for LaurentPolynomial {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<Monomial> for LaurentPolynomial {
    fn from(m: Monomial) -> Self {
        Self::monomial(m)
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn sub_assign(&mut self, rhs: &LaurentPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.len() <= 1 || rhs.len() <= 1 {
            let mut out = LaurentPolynomial::zero();
            for (ma, ca) in &self.terms {
                for (mb, cb) in &rhs.terms {
                    out.add_term(ma.mul(mb), ca * cb);
                }
            }
            return out;
        }
        // Accumulate in a hash map and sort once at the end.
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        acc.reserve(self.len().max(rhs.len()));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(ca * cb);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += ca * cb,
                }
            }
        }
        LaurentPolynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for LaurentPolynomial {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: u32) -> LaurentPolynomial {
        LaurentPolynomial::var(Var::constant(i))
    }
    fn x(i: u32) -> LaurentPolynomial {
        LaurentPolynomial::var(Var::cluster(i))
    }

    #[test]
    fn additive_identity() {
        let p = a(1) + x(2);
        assert_eq!(&p + &LaurentPolynomial::zero(), p);
    }

    #[test]
    fn difference_of_squares() {
        let p = (a(1) + x(2)) * (a(1) - x(2));
        assert_eq!(p, a(1).pow(2) - x(2).pow(2));
    }

    #[test]
    fn square_of_binomial_matches_hand_expansion() {
        let p = (a(1) + x(2) * x(3)).pow(2);
        let two = LaurentPolynomial::constant(2);
        let expected = a(1) * a(1) + two * a(1) * x(2) * x(3) + x(2) * x(2) * x(3) * x(3);
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "A1^2+2*A1*X2*X3+X2^2*X3^2");
    }

    #[test]
    fn negative_power_of_non_monomial_is_rejected() {
        assert_eq!((a(1) + x(2)).powi(-1), Err(PolyError::NotInvertible));
        assert_eq!(a(1).powi(-1), Err(PolyError::NotInvertible));
        let inv = (-x(1)).powi(-3).unwrap();
        assert_eq!(inv * x(1).pow(3), LaurentPolynomial::constant(-1));
    }

    #[test]
    fn exact_division_examples() {
        let p = a(1).pow(2) - x(2).pow(2);
        assert_eq!(p.exact_div(&(a(1) + x(2))).unwrap(), a(1) - x(2));

        let err = (a(1) + x(2)).exact_div(&(a(2) + x(2))).unwrap_err();
        assert!(matches!(err, PolyError::Inexact { .. }));

        let p = a(2) * x(2) + a(1) * x(1) + a(1) * a(2);
        let q = p.exact_div(&(x(1) * x(2))).unwrap();
        let x1i = x(1).powi(-1).unwrap();
        let x2i = x(2).powi(-1).unwrap();
        let expected = a(2) * x1i.clone() + a(1) * x2i.clone() + a(1) * a(2) * x1i * x2i;
        assert_eq!(q, expected);
        assert_eq!(q * x(1) * x(2), p);
    }

    #[test]
    fn polynomial_context_rejects_laurent_quotient() {
        assert!(x(1).exact_div_poly(&x(2)).is_err());
        assert_eq!(
            x(1).exact_div(&x(2)).unwrap(),
            x(1) * x(2).powi(-1).unwrap()
        );
    }

    #[test]
    fn coefficients_in_reads_off_terms() {
        let p = a(1) + x(2) * x(3);
        assert_eq!(
            p.coefficients_in(Var::cluster(2)),
            vec![(0, a(1)), (1, x(3))]
        );
        let q = x(2).pow(2) + LaurentPolynomial::constant(2) * x(2) + LaurentPolynomial::one();
        let c = q.coefficients_in(Var::cluster(2));
        let expected: Vec<_> = [(0, 1), (1, 2), (2, 1)]
            .iter()
            .map(|&(e, c)| (e, LaurentPolynomial::constant(c)))
            .collect();
        assert_eq!(c, expected);
    }

    #[test]
    fn factor_multiplicity_examples() {
        let f = a(1) + x(2);
        let p = f.pow(3) * x(1);
        assert_eq!(p.factor_multiplicity(&f).unwrap(), 3);
        assert_eq!(x(1).factor_multiplicity(&f).unwrap(), 0);
        assert_eq!(
            p.factor_multiplicity(&LaurentPolynomial::one()),
            Err(PolyError::UnitFactor)
        );
        assert_eq!(
            p.factor_multiplicity(&LaurentPolynomial::zero()),
            Err(PolyError::ZeroOperand)
        );
    }

    #[test]
    fn split_content_recovers_input() {
        let p = (a(1) + x(2)) * x(1).powi(-2).unwrap() * x(3);
        let (m, q) = p.split_cluster_content();
        assert!(q.is_polynomial());
        assert_eq!(q.mul_monomial(&m), p);
        assert_eq!(q, a(1) + x(2));
    }

    #[test]
    fn rename_absorbs_signs() {
        let p = x(1).pow(2) * x(2) + a(1);
        let r = p.rename(|v| {
            if v == Var::cluster(2) {
                (Var::cluster(5), true)
            } else {
                (v, false)
            }
        });
        assert_eq!(r, a(1) - x(1).pow(2) * x(5));
    }
}
