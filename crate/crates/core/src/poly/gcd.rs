//! Multivariate gcd over `Z[vars]` by recursive primitive subresultant
//! remainder sequences.

use num_bigint::BigInt;
use num_integer::Integer;

use super::{LaurentPolynomial as Poly, Monomial, Var};

/// Greatest common divisor, sign-normalized.
///
/// Polynomial inputs are handled in the polynomial ring (monomial factors
/// count). If either input carries negative exponents the computation runs
/// in the Laurent ring, where cluster monomials are units: only the
/// polynomial parts are compared.
pub fn gcd(p: &Poly, q: &Poly) -> Poly {
    let g = if p.is_polynomial() && q.is_polynomial() {
        poly_gcd(p, q)
    } else {
        poly_gcd(&p.cluster_poly_part(), &q.cluster_poly_part())
    };
    g.normalize()
}

fn poly_gcd(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() {
        return q.normalize();
    }
    if q.is_zero() {
        return p.normalize();
    }
    let (mp, pp) = p.split_monomial_content();
    let (mq, pq) = q.split_monomial_content();
    let m = mp.gcd_with(&mq);
    gcd_rec(&pp, &pq).mul_monomial(&m).normalize()
}

fn int_gcd_poly(c: &BigInt, p: &Poly) -> Poly {
    Poly::constant(p.integer_content().gcd(c))
}

/// Recursive gcd; the result is determined up to sign.
fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if let Some(c) = a.as_constant() {
        return int_gcd_poly(c, b);
    }
    if let Some(c) = b.as_constant() {
        return int_gcd_poly(c, a);
    }
    if a == b {
        return a.clone();
    }
    // Trial division: in practice one operand often divides the other.
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if Poly::divide_polynomials(big, small).is_ok() {
        return small.clone();
    }

    let va = a.variables();
    let vb = b.variables();
    // A variable present in only one operand cannot occur in the gcd: reduce
    // that operand to its content with respect to the variable.
    // Folding the other operand in first keeps the intermediate gcds small
    // and stops as soon as a unit shows up.
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return content_in(a, v, b.clone());
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return content_in(b, v, a.clone());
    }

    // Main variable: the shared one with the lowest degree.
    let v = *va
        .iter()
        .min_by_key(|&&v| (a.max_degree_in(v).max(b.max_degree_in(v)), v))
        .expect("nonconstant operands share a variable");
    let mut ua = Univariate::from_poly(a, v);
    let mut ub = Univariate::from_poly(b, v);
    if ua.degree() < ub.degree() {
        std::mem::swap(&mut ua, &mut ub);
    }
    let ca = ua.content();
    let cb = ub.content();
    let d = gcd_rec(&ca, &cb);
    let mut ua = ua.exact_div_scalar(&ca);
    let mut ub = ub.exact_div_scalar(&cb);

    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = ua.degree() - ub.degree();
        let r = ua.pseudo_rem(&ub);
        if r.is_zero() {
            break;
        }
        if r.degree() == 0 {
            ub = Univariate::constant(Poly::one());
            break;
        }
        let divisor = &g * &h.pow(delta as u32);
        ua = ub;
        ub = r.exact_div_scalar(&divisor);
        g = ua.leading().clone();
        if delta > 0 {
            let num = g.pow(delta as u32);
            let den = h.pow(delta as u32 - 1);
            h = num
                .exact_div_poly(&den)
                .expect("subresultant recurrence divides exactly");
        }
    }
    let c = ub.content();
    let pp = ub.exact_div_scalar(&c);
    &pp.into_poly(v) * &d
}

/// gcd of `init` and the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &Poly, v: Var, init: Poly) -> Poly {
    let mut coeffs = p.coefficients_in(v);
    coeffs.sort_by_key(|(_, c)| c.len());
    let mut acc = init;
    for (_, c) in coeffs {
        acc = gcd_rec(&acc, &c);
        if acc.is_unit() {
            return Poly::one();
        }
    }
    acc
}

/// Dense univariate view with multivariate coefficients.
#[derive(Clone, Debug)]
struct Univariate {
    coeffs: Vec<Poly>,
}

impl Univariate {
    fn constant(c: Poly) -> Self {
        Univariate { coeffs: vec![c] }
    }

    fn from_poly(p: &Poly, v: Var) -> Self {
        let parts = p.coefficients_in(v);
        let deg = parts.last().map_or(0, |t| t.0) as usize;
        let mut coeffs = vec![Poly::zero(); deg + 1];
        for (e, c) in parts {
            coeffs[e as usize] = c;
        }
        let mut u = Univariate { coeffs };
        u.trim();
        u
    }

    fn into_poly(self, v: Var) -> Poly {
        self.coeffs
            .into_iter()
            .enumerate()
            .map(|(e, c)| c.mul_monomial(&Monomial::var_pow(v, e as i32)))
            .sum()
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(Poly::is_zero) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn leading(&self) -> &Poly {
        self.coeffs.last().unwrap()
    }

    fn content(&self) -> Poly {
        let mut acc = Poly::zero();
        for c in &self.coeffs {
            acc = gcd_rec(&acc, c);
            if acc.is_unit() {
                return Poly::one();
            }
        }
        acc
    }

    fn exact_div_scalar(&self, d: &Poly) -> Self {
        if d.is_one() {
            return self.clone();
        }
        Univariate {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    c.exact_div_poly(d)
                        .expect("content divides every coefficient")
                })
                .collect(),
        }
    }

    /// `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn pseudo_rem(&self, b: &Univariate) -> Univariate {
        let n = b.degree();
        let lc = b.leading().clone();
        let mut r = self.clone();
        let mut e = self.degree() - n + 1;
        while !r.is_zero() && r.degree() >= n {
            let shift = r.degree() - n;
            let t = r.leading().clone();
            for c in r.coeffs.iter_mut() {
                *c = &*c * &lc;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                let prod = &t * bc;
                r.coeffs[i + shift] -= &prod;
            }
            debug_assert!(r.leading().is_zero());
            r.coeffs.pop();
            r.trim();
            e -= 1;
        }
        if e > 0 {
            let f = lc.pow(e as u32);
            for c in r.coeffs.iter_mut() {
                *c = &*c * &f;
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn common_factor_is_recovered() {
        let g = gcd(&p("X1*A1+X1*X2"), &p("X3*A1+X3*X2"));
        assert_eq!(g, p("A1+X2"));
        assert!(p("X1*A1+X1*X2").exact_div(&g).is_ok());
    }

    #[test]
    fn coprime_monomials() {
        assert_eq!(gcd(&p("X1"), &p("X2")), Poly::one());
        assert_eq!(gcd(&p("X1^2*X2"), &p("X1*X3")), p("X1"));
    }

    #[test]
    fn gcd_with_zero_is_normalized_input() {
        assert_eq!(gcd(&p("-A1-X2"), &Poly::zero()), p("A1+X2"));
        assert_eq!(gcd(&Poly::zero(), &Poly::zero()), Poly::zero());
    }

    #[test]
    fn integer_content_participates() {
        assert_eq!(gcd(&p("6*X1+6"), &p("4*X1^2-4")), p("2*X1+2"));
    }

    #[test]
    fn multivariate_example() {
        let f = p("A1*A2+A3*X2");
        let a = &f.pow(2) * &p("X1+A2");
        let b = &f * &p("X1^2*X3+A1");
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn laurent_inputs_use_polynomial_parts() {
        let a = p("X1^-1*A1+X1^-1*X2");
        let b = p("A1*X3+X2*X3");
        assert_eq!(gcd(&a, &b), p("A1+X2"));
    }

    #[test]
    fn higher_degree_prs() {
        // (x^2 + y + 1)(x - y^2) and (x^2 + y + 1)(x^3 + 2)
        let f = p("X1^2+X2+1");
        let a = &f * &p("X1-X2^2");
        let b = &f * &p("X1^3+2");
        assert_eq!(gcd(&a, &b), f);
    }
}
