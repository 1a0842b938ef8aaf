use crate::poly::{gcd, LaurentPolynomial, Monomial, PolyError, Var};

use super::{compute_hat, HatPolynomial, Seed, SeedError, SeedSlot};

impl Seed {
    /// Mutation at slot `i` (0-based). The new symbol gets the next free
    /// index, so repeated mutation from a given seed is deterministic.
    pub fn mutate(&self, i: usize) -> Result<Seed, SeedError> {
        let hat = compute_hat(self, i)?;
        self.mutate_with_hat(i, &hat)
    }

    pub(crate) fn mutate_with_hat(&self, i: usize, hat: &HatPolynomial) -> Result<Seed, SeedError> {
        let old = self.symbol(i);
        let fresh = Var::cluster(self.next_symbol_index());
        let ambient = self.mutated_ambient(i, hat)?;

        let mut slots = Vec::with_capacity(self.rank());
        for (j, slot) in self.slots().iter().enumerate() {
            if j == i {
                slots.push(SeedSlot {
                    symbol: fresh,
                    ambient: ambient.clone(),
                    exchange: slot.exchange.clone(),
                });
                continue;
            }
            let exchange = if slot.exchange.involves(old) {
                if hat.exponents[j] != 0 {
                    return Err(SeedError::IllDefinedSubstitution { i, j });
                }
                exchange_after(&slot.exchange, old, fresh, &hat.laurent, slot.symbol)?
            } else {
                slot.exchange.clone()
            };
            slots.push(SeedSlot {
                symbol: slot.symbol,
                ambient: slot.ambient.clone(),
                exchange,
            });
        }
        Ok(Seed::from_slots(slots))
    }

    /// `x_i' = F̂_i / x_i` expressed in the initial variables.
    fn mutated_ambient(
        &self,
        i: usize,
        hat: &HatPolynomial,
    ) -> Result<LaurentPolynomial, SeedError> {
        let images: Vec<(Var, LaurentPolynomial)> = self
            .slots()
            .iter()
            .map(|s| (s.symbol, s.ambient.clone()))
            .collect();
        let mut den = vec![(self.ambient(i), 1)];
        for (j, &a) in hat.exponents.iter().enumerate() {
            if a < 0 {
                den.push((self.ambient(j), a.unsigned_abs()));
            }
        }
        self.exchange(i)
            .evaluate_div(&images, &den)
            .map_err(|e| match e {
                PolyError::Inexact { remainder } => SeedError::LaurentViolated {
                    slot: i,
                    witness: remainder.to_string(),
                },
                other => other.into(),
            })
    }
}

/// New exchange polynomial of a slot `j` whose polynomial involves the
/// mutated symbol `old`.
fn exchange_after(
    fj: &LaurentPolynomial,
    old: Var,
    fresh: Var,
    hat: &LaurentPolynomial,
    xj: Var,
) -> Result<LaurentPolynomial, SeedError> {
    let d = hat.set_zero(xj)?;
    if d.is_zero() {
        return Err(SeedError::Invalid(format!(
            "hat polynomial vanishes at {xj} = 0"
        )));
    }
    // G_j = F_j with old <- D / fresh
    let value = d.mul_monomial(&Monomial::var_pow(fresh, -1));
    let g = fj.substitute_poly(old, &value)?;
    let d0 = d.cluster_poly_part();
    let mut h = g.cluster_poly_part();
    loop {
        let c = gcd(&h, &d0);
        if c.is_unit() || c.is_zero() {
            break;
        }
        h = h.exact_div_poly(&c)?;
    }
    Ok(h.normalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    fn binomial(n: u32) -> Seed {
        // complete graph: F_i = A_i + prod_{j != i} X_j
        let exch = (1..=n)
            .map(|i| {
                let prod =
                    Monomial::from_pairs((1..=n).filter(|&j| j != i).map(|j| (Var::cluster(j), 1)));
                &LaurentPolynomial::var(Var::constant(i)) + &LaurentPolynomial::monomial(prod)
            })
            .collect();
        Seed::initial(exch)
    }

    #[test]
    fn rank_two_first_mutation() {
        let s = binomial(2).mutate(0).unwrap();
        assert_eq!(s.symbol(0), Var::cluster(3));
        assert_eq!(s.ambient(0), &p("A1*X1^-1+X1^-1*X2"));
        assert_eq!(s.exchange(0), &p("A1+X2"));
        assert_eq!(s.exchange(1), &p("A1+A2*X3"));
    }

    #[test]
    fn double_mutation_rank_three() {
        let s = binomial(3).mutate(0).unwrap().mutate(1).unwrap();
        // the second minted symbol has id 5
        assert_eq!(s.symbol(1), Var::cluster(5));
        assert_eq!(s.exchange(0), &p("X3^2+X5"));
    }

    #[test]
    fn mutation_is_an_involution_on_values() {
        let s = binomial(3);
        for i in 0..3 {
            let back = s.mutate(i).unwrap().mutate(i).unwrap();
            for k in 0..3 {
                assert_eq!(back.ambient(k), s.ambient(k));
                assert_eq!(
                    back.exchange(k),
                    &s.exchange(k).rename(|v| {
                        if v == s.symbol(i) {
                            (back.symbol(i), false)
                        } else {
                            (v, false)
                        }
                    })
                );
            }
        }
    }

    #[test]
    fn non_laurent_value_is_reported() {
        // An ambient value that does not divide the exchange numerator.
        let mut s = binomial(2);
        let mut slots = s.slots().to_vec();
        slots[0].ambient = p("X1+A1");
        s = Seed::from_slots(slots);
        let hat = compute_hat(&s, 0).unwrap();
        assert!(matches!(
            s.mutate_with_hat(0, &hat),
            Err(SeedError::LaurentViolated { .. })
        ));
    }
}
