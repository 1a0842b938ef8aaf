//! Fixed-width fast path for the evaluate-then-divide step of mutation.
//!
//! Ambient values only ever involve the constants and the initial cluster
//! variables, so they fit a dense exponent array. Coefficients are `i128`
//! with checked arithmetic; any overflow (or too many variables) makes the
//! caller fall back to the general representation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;

use super::{LaurentPolynomial, Monomial, PolyError, Var};

const WIDTH: usize = 16;
const EXP_LIMIT: i32 = i16::MAX as i32;

type Mono = [i16; WIDTH];

/// Variable numbering shared by every packed polynomial in one computation.
pub(crate) struct Context {
    vars: Vec<Var>,
}

impl Context {
    pub(crate) fn new<'a>(polys: impl IntoIterator<Item = &'a LaurentPolynomial>) -> Option<Self> {
        let mut vars: Vec<Var> = polys.into_iter().flat_map(|p| p.variables()).collect();
        vars.sort();
        vars.dedup();
        (vars.len() <= WIDTH).then_some(Context { vars })
    }

    fn slot(&self, v: Var) -> Option<usize> {
        self.vars.binary_search(&v).ok()
    }

    pub(crate) fn pack(&self, p: &LaurentPolynomial) -> Option<Packed> {
        let mut terms = FxHashMap::default();
        for (m, c) in p.terms() {
            let mut mono = [0i16; WIDTH];
            for (v, e) in m.iter() {
                mono[self.slot(v)?] = i16::try_from(e).ok()?;
            }
            terms.insert(mono, c.to_i128()?);
        }
        Some(Packed::from_map(terms))
    }

    pub(crate) fn unpack(&self, p: &Packed) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(p.terms.iter().map(|(m, c)| {
            let pairs = m
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e != 0)
                .map(|(&e, &v)| (v, e as i32));
            (Monomial::from_pairs(pairs), BigInt::from(*c))
        }))
    }
}

/// Result of a packed computation: `None` means "out of range, use the
/// general code".
pub(crate) type Fast<T> = Option<Result<T, PolyError>>;

#[derive(Clone, Debug)]
pub(crate) struct Packed {
    terms: FxHashMap<Mono, i128>,
    max_exp: i32,
}

impl Packed {
    fn from_map(terms: FxHashMap<Mono, i128>) -> Self {
        let max_exp = terms
            .keys()
            .flat_map(|m| m.iter())
            .map(|e| (*e as i32).abs())
            .max()
            .unwrap_or(0);
        Packed { terms, max_exp }
    }

    pub(crate) fn one() -> Self {
        let mut terms = FxHashMap::default();
        terms.insert([0; WIDTH], 1);
        Packed { terms, max_exp: 0 }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn mul(&self, rhs: &Packed) -> Option<Packed> {
        if self.max_exp + rhs.max_exp > EXP_LIMIT {
            return None;
        }
        let mut terms: FxHashMap<Mono, i128> = FxHashMap::default();
        terms.reserve(self.terms.len() * rhs.terms.len().min(4));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = *ma;
                for (x, y) in m.iter_mut().zip(mb) {
                    *x += *y;
                }
                let c = ca.checked_mul(*cb)?;
                let slot = terms.entry(m).or_insert(0);
                *slot = slot.checked_add(c)?;
            }
        }
        terms.retain(|_, c| *c != 0);
        Some(Packed::from_map(terms))
    }

    pub(crate) fn add_assign(&mut self, rhs: &Packed) -> Option<()> {
        for (m, c) in &rhs.terms {
            let slot = self.terms.entry(*m).or_insert(0);
            *slot = slot.checked_add(*c)?;
            if *slot == 0 {
                self.terms.remove(m);
            }
        }
        self.max_exp = self.max_exp.max(rhs.max_exp);
        Some(())
    }

    /// Integer power of a single `±1` cluster monomial.
    pub(crate) fn unit_pow(&self, e: i32) -> Fast<Packed> {
        let mut it = self.terms.iter();
        let (Some((m, &c)), None) = (it.next(), it.next()) else {
            return Some(Err(PolyError::NotInvertible));
        };
        if c.abs() != 1 {
            return Some(Err(PolyError::NotInvertible));
        }
        let mut mono = [0i16; WIDTH];
        for (x, y) in mono.iter_mut().zip(m) {
            let v = (*y as i32).checked_mul(e)?;
            *x = i16::try_from(v).ok()?;
        }
        let sign = if c < 0 && e % 2 != 0 { -1 } else { 1 };
        let mut terms = FxHashMap::default();
        terms.insert(mono, sign);
        Some(Ok(Packed::from_map(terms)))
    }

    /// Exact division in the Laurent ring over the cluster variables; the
    /// quotient must stay polynomial in the constants.
    pub(crate) fn exact_div(&self, d: &Packed, ctx: &Context) -> Fast<Packed> {
        if d.is_zero() {
            return Some(Err(PolyError::DivisionByZero));
        }
        if self.is_zero() {
            return Some(Ok(Packed {
                terms: FxHashMap::default(),
                max_exp: 0,
            }));
        }
        let shift_p = min_mono(&self.terms);
        let shift_d = min_mono(&d.terms);
        let mut rem: BTreeMap<Mono, i128> = self
            .terms
            .iter()
            .map(|(m, c)| (sub(m, &shift_p), *c))
            .collect();
        let den: Vec<(Mono, i128)> = d
            .terms
            .iter()
            .map(|(m, c)| (sub(m, &shift_d), *c))
            .collect();
        let (&lead_m, &lead_c) = den
            .iter()
            .map(|(m, c)| (m, c))
            .max_by_key(|(m, _)| **m)
            .unwrap();

        let mut quot: FxHashMap<Mono, i128> = FxHashMap::default();
        while let Some((&m, &c)) = rem.last_key_value() {
            let divisible = m.iter().zip(&lead_m).all(|(a, b)| a >= b);
            if !divisible || c % lead_c != 0 {
                let mut witness = FxHashMap::default();
                for (m, c) in rem {
                    witness.insert(add(&m, &shift_p), c);
                }
                return Some(Err(PolyError::Inexact {
                    remainder: ctx.unpack(&Packed::from_map(witness)),
                }));
            }
            let qm = sub(&m, &lead_m);
            let qc = c / lead_c;
            for (dm, dc) in &den {
                let t = add(&qm, dm);
                let prod = qc.checked_mul(*dc)?;
                let slot = rem.entry(t).or_insert(0);
                *slot = slot.checked_sub(prod)?;
                if *slot == 0 {
                    rem.remove(&t);
                }
            }
            quot.insert(qm, qc);
        }

        let offset = sub(&shift_p, &shift_d);
        let mut terms = FxHashMap::default();
        for (m, c) in quot {
            let m = add(&m, &offset);
            if m.iter()
                .zip(&ctx.vars)
                .any(|(e, v)| *e < 0 && !v.is_cluster())
            {
                return Some(Err(PolyError::Inexact {
                    remainder: ctx.unpack(self),
                }));
            }
            terms.insert(m, c);
        }
        Some(Ok(Packed::from_map(terms)))
    }
}

fn min_mono(terms: &FxHashMap<Mono, i128>) -> Mono {
    let mut out = [i16::MAX; WIDTH];
    for m in terms.keys() {
        for (o, e) in out.iter_mut().zip(m) {
            *o = (*o).min(*e);
        }
    }
    out
}

fn add(a: &Mono, b: &Mono) -> Mono {
    let mut out = *a;
    for (x, y) in out.iter_mut().zip(b) {
        *x += *y;
    }
    out
}

fn sub(a: &Mono, b: &Mono) -> Mono {
    let mut out = *a;
    for (x, y) in out.iter_mut().zip(b) {
        *x -= *y;
    }
    out
}

/// `self` evaluated at `images`, divided exactly by the product of
/// `den` powers. `None` when the packed range does not suffice.
pub(crate) fn evaluate_div(
    p: &LaurentPolynomial,
    images: &[(Var, LaurentPolynomial)],
    den: &[(&LaurentPolynomial, u32)],
) -> Fast<LaurentPolynomial> {
    let unmapped = LaurentPolynomial::from_terms(
        p.variables()
            .into_iter()
            .filter(|v| images.iter().all(|(w, _)| w != v))
            .map(|v| (Monomial::var(v), BigInt::from(1))),
    );
    let ctx = Context::new(
        images
            .iter()
            .map(|(_, q)| q)
            .chain(den.iter().map(|(q, _)| *q))
            .chain([&unmapped]),
    )?;
    let packed: Vec<(Var, Packed)> = images
        .iter()
        .map(|(v, q)| ctx.pack(q).map(|q| (*v, q)))
        .collect::<Option<_>>()?;
    let num = match horner(p, &packed, &ctx)? {
        Ok(n) => n,
        Err(e) => return Some(Err(e)),
    };
    let mut d = Packed::one();
    for (q, e) in den {
        let q = ctx.pack(q)?;
        for _ in 0..*e {
            d = d.mul(&q)?;
        }
    }
    let q = match num.exact_div(&d, &ctx)? {
        Ok(q) => q,
        Err(e) => return Some(Err(e)),
    };
    Some(Ok(ctx.unpack(&q)))
}

fn horner(p: &LaurentPolynomial, images: &[(Var, Packed)], ctx: &Context) -> Fast<Packed> {
    let Some(((v, img), rest)) = images.split_first() else {
        return ctx.pack(p).map(Ok);
    };
    if !p.involves(*v) {
        return horner(p, rest, ctx);
    }
    let coeffs = p.coefficients_in(*v);
    let mut acc = Packed {
        terms: FxHashMap::default(),
        max_exp: 0,
    };
    if coeffs[0].0 < 0 {
        for (e, c) in coeffs {
            let c = match horner(&c, rest, ctx)? {
                Ok(c) => c,
                Err(err) => return Some(Err(err)),
            };
            let power = match img.unit_pow(e)? {
                Ok(x) => x,
                Err(err) => return Some(Err(err)),
            };
            acc.add_assign(&c.mul(&power)?)?;
        }
        return Some(Ok(acc));
    }
    let mut prev = coeffs.last().map_or(0, |t| t.0);
    for (e, c) in coeffs.iter().rev() {
        for _ in *e..prev {
            acc = acc.mul(img)?;
        }
        match horner(c, rest, ctx)? {
            Ok(c) => acc.add_assign(&c)?,
            Err(err) => return Some(Err(err)),
        }
        prev = *e;
    }
    for _ in 0..prev {
        acc = acc.mul(img)?;
    }
    Some(Ok(acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn matches_general_path() {
        let f = p("A1*X3^2+X3*X4+A2*X3");
        let images = vec![
            (Var::cluster(3), p("X1^-1*A1+X1^-1*X2")),
            (Var::cluster(4), p("X2+A2")),
        ];
        let general = f
            .evaluate(|v| images.iter().find(|(w, _)| *w == v).map(|(_, q)| q.clone()))
            .unwrap();
        let d = p("X1^-1*A1+X1^-1*X2");
        let expected = general.exact_div(&d);
        let fast = evaluate_div(&f, &images, &[(&d, 1)]).unwrap();
        assert_eq!(fast, expected);
        assert_eq!(fast.unwrap(), p("X1^-1*A1^2+X1^-1*A1*X2+X2+2*A2"));
    }

    #[test]
    fn inexact_and_constant_denominators_are_rejected() {
        let f = p("X3+A1");
        let images = vec![(Var::cluster(3), p("X1"))];
        assert!(matches!(
            evaluate_div(&f, &images, &[(&p("X1+A2"), 1)]),
            Some(Err(PolyError::Inexact { .. }))
        ));
        // dividing by A1 would need a negative constant exponent
        let g = p("A1*X1+A1^2");
        assert!(evaluate_div(&g, &[], &[(&p("A1^2"), 1)]).unwrap().is_err());
        assert_eq!(
            evaluate_div(&g, &[], &[(&p("A1"), 1)]).unwrap().unwrap(),
            p("X1+A1")
        );
    }

    #[test]
    fn coefficient_overflow_falls_back() {
        let f = p("X1^40");
        let images = vec![(Var::cluster(1), p("1000*X2+1000"))];
        assert!(evaluate_div(&f, &images, &[]).is_none());
    }
}
