use crate::poly::{LaurentPolynomial, Monomial, RationalFunction, Var};

use super::{Seed, SeedError};

/// `F̂_i = prod_{j != i} x_j^{a_j} * F_i` with every `a_j <= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatPolynomial {
    /// Slot whose exchange polynomial this is built from.
    pub base: usize,
    pub laurent: LaurentPolynomial,
    /// `a_j` per slot; `exponents[base]` is always 0.
    pub exponents: Vec<i32>,
}

impl HatPolynomial {
    pub fn monomial(&self, seed: &Seed) -> Monomial {
        Monomial::from_pairs(
            self.exponents
                .iter()
                .enumerate()
                .map(|(j, &a)| (seed.symbol(j), a)),
        )
    }
}

/// Largest `b` such that `F_j^b` divides `F_i` after substituting
/// `x_j <- F_j / Z`; equivalently `min_alpha (alpha + mult_{F_j}(e_alpha))`
/// where `F_i = sum e_alpha x_j^alpha`.
fn pole_order(fi: &LaurentPolynomial, xj: Var, fj: &LaurentPolynomial) -> Result<u32, SeedError> {
    let mut best: Option<u32> = None;
    for (alpha, e) in fi.coefficients_in(xj) {
        let alpha = alpha as u32;
        if best.is_some_and(|b| alpha >= b) {
            continue;
        }
        let cap = best.map(|b| b - alpha);
        let m = e.factor_multiplicity_capped(fj, cap)?;
        best = Some(best.map_or(alpha + m, |b| b.min(alpha + m)));
    }
    Ok(best.unwrap_or(0))
}

pub fn compute_hat(seed: &Seed, i: usize) -> Result<HatPolynomial, SeedError> {
    let fi = seed.slot(i)?.exchange.clone();
    let mut exponents = vec![0i32; seed.rank()];
    for (j, a) in exponents.iter_mut().enumerate() {
        if j == i {
            continue;
        }
        let fj = seed.exchange(j);
        if fj.is_zero() || fj.is_unit() {
            continue;
        }
        *a = -(pole_order(&fi, seed.symbol(j), fj)? as i32);
    }
    let hat = HatPolynomial {
        base: i,
        laurent: LaurentPolynomial::zero(),
        exponents,
    };
    let laurent = fi.mul_monomial(&hat.monomial(seed));
    Ok(HatPolynomial { laurent, ..hat })
}

/// Checks that, for every `j != i`, substituting `x_j <- F_j / Z` into `F̂_i`
/// yields a Laurent polynomial not divisible by `F_j`. Returns the first
/// offending slot.
pub fn check_hat_conditions(seed: &Seed, hat: &HatPolynomial) -> Result<(), usize> {
    let z = Var::cluster(seed.next_symbol_index());
    for j in 0..seed.rank() {
        if hat.exponents[j] > 0 {
            return Err(j);
        }
        if j == hat.base {
            continue;
        }
        let fj = seed.exchange(j);
        if fj.is_zero() {
            return Err(j);
        }
        let value = RationalFunction::new(fj.clone(), LaurentPolynomial::var(z)).map_err(|_| j)?;
        let sub = hat
            .laurent
            .substitute(seed.symbol(j), &value)
            .map_err(|_| j)?;
        let Some(sub) = sub.to_laurent() else {
            return Err(j);
        };
        if !fj.cluster_poly_part().is_unit() && sub.exact_div(fj).is_ok() {
            return Err(j);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn no_pole_when_exchange_does_not_vanish() {
        let seed = Seed::initial(vec![p("A1+X2"), p("A2+X1")]);
        let hat = compute_hat(&seed, 0).unwrap();
        assert_eq!(hat.exponents, vec![0, 0]);
        assert_eq!(hat.laurent, p("A1+X2"));
        assert!(check_hat_conditions(&seed, &hat).is_ok());
    }

    #[test]
    fn pole_is_detected() {
        // X2 <- X3^2/Z turns X2 + X3^2 into X3^2 (1 + Z)/Z.
        let seed = Seed::initial(vec![p("X2+X3^2"), p("X3^2"), p("A3+X1")]);
        let hat = compute_hat(&seed, 0).unwrap();
        assert_eq!(hat.exponents[1], -1);
        assert_eq!(hat.laurent, p("X2^-1*X3^2+1"));
        assert!(check_hat_conditions(&seed, &hat).is_ok());
    }
}
