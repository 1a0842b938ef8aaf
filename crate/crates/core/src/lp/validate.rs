use num_integer::Integer;
use num_traits::One;

use crate::poly::{LaurentPolynomial, Monomial};

use super::Seed;

/// How (and whether) irreducibility of an exchange polynomial is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// No cluster symbols: allowed, irreducibility is not required.
    Constant,
    /// `c*m + c'*m'` with coprime supports, `c, c'` squarefree products of
    /// constants, and the gcd of all exponents a power of two.
    CertifiedBinomial,
    /// Matches the closed form predicted for this seed.
    CertifiedClosedForm,
    NotCertified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotReport {
    pub slot: usize,
    /// Does not involve the slot's own symbol.
    pub lp2: bool,
    /// No cluster symbol divides it and it has no negative exponents.
    pub variable_free: bool,
    /// Only involves symbols of this seed.
    pub known_symbols: bool,
    pub nonzero: bool,
    pub irreducibility: Irreducibility,
    pub notes: Vec<String>,
}

impl SlotReport {
    pub fn passed(&self) -> bool {
        self.lp2 && self.variable_free && self.known_symbols && self.nonzero
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub slots: Vec<SlotReport>,
}

impl ValidationReport {
    /// Structural checks hold in every slot. Uncertified irreducibility is
    /// not a failure.
    pub fn passed(&self) -> bool {
        self.slots.iter().all(SlotReport::passed)
    }

    pub fn fully_certified(&self) -> bool {
        self.passed()
            && self
                .slots
                .iter()
                .all(|s| s.irreducibility != Irreducibility::NotCertified)
    }

    /// Marks every slot whose exchange polynomial equals the matching entry
    /// of `expected` as certified by closed form.
    pub fn certify(&mut self, seed: &Seed, expected: &[LaurentPolynomial]) {
        for r in &mut self.slots {
            if r.irreducibility == Irreducibility::NotCertified
                && expected
                    .get(r.slot)
                    .is_some_and(|e| e == seed.exchange(r.slot))
            {
                r.irreducibility = Irreducibility::CertifiedClosedForm;
            }
        }
    }
}

pub fn validate_seed(seed: &Seed) -> ValidationReport {
    let slots = (0..seed.rank())
        .map(|i| {
            let f = seed.exchange(i);
            let mut notes = Vec::new();
            let lp2 = !f.involves(seed.symbol(i));
            if !lp2 {
                notes.push(format!(
                    "exchange polynomial involves its own symbol {}",
                    seed.symbol(i)
                ));
            }
            let (content, _) = f.split_cluster_content();
            let variable_free = f.is_polynomial() && content.is_one();
            if !variable_free {
                notes.push(format!(
                    "divisible by cluster monomial {}",
                    to_poly(&content)
                ));
            }
            let known_symbols = f
                .variables()
                .iter()
                .all(|&v| !v.is_cluster() || seed.slot_of_symbol(v).is_some());
            if !known_symbols {
                notes.push("involves a symbol outside the seed".to_string());
            }
            let nonzero = !f.is_zero();
            let irreducibility = if f.is_constant() || f.variables().iter().all(|v| v.is_constant())
            {
                notes.push("constant exchange polynomial".to_string());
                Irreducibility::Constant
            } else if certified_binomial(f) {
                Irreducibility::CertifiedBinomial
            } else {
                Irreducibility::NotCertified
            };
            SlotReport {
                slot: i,
                lp2,
                variable_free,
                known_symbols,
                nonzero,
                irreducibility,
                notes,
            }
        })
        .collect();
    ValidationReport { slots }
}

fn to_poly(m: &Monomial) -> LaurentPolynomial {
    LaurentPolynomial::monomial(m.clone())
}

fn certified_binomial(f: &LaurentPolynomial) -> bool {
    let terms: Vec<_> = f.terms().collect();
    if terms.len() != 2 || !f.is_polynomial() {
        return false;
    }
    let (m1, c1) = terms[0];
    let (m2, c2) = terms[1];
    if !c1.is_one() || !c2.is_one() {
        return false;
    }
    let squarefree_constants =
        |m: &Monomial| m.iter().filter(|p| p.0.is_constant()).all(|p| p.1 == 1);
    if !squarefree_constants(m1) || !squarefree_constants(m2) {
        return false;
    }
    if m1.vars().any(|v| m2.exponent(v) != 0) {
        return false;
    }
    let g = m1
        .iter()
        .chain(m2.iter())
        .fold(0u32, |g, p| g.gcd(&(p.1 as u32)));
    g.is_power_of_two()
}
