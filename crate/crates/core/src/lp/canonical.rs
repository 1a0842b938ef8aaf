use std::collections::HashMap;

use crate::poly::{LaurentPolynomial, Var};

use super::{Seed, SeedError, SeedSlot};

impl Seed {
    /// The representative of this seed's equivalence class: ambient values
    /// sign-normalized, slots sorted by ambient value, symbols renamed to
    /// their sorted position and exchange polynomials sign-normalized.
    pub fn canonicalize(&self) -> Seed {
        let keyed: Vec<(String, LaurentPolynomial, bool)> = self
            .slots()
            .iter()
            .map(|s| {
                let (amb, flipped) = s.ambient.normalized();
                (amb.to_string(), amb, flipped)
            })
            .collect();
        let mut order: Vec<usize> = (0..self.rank()).collect();
        order.sort_by(|&a, &b| keyed[a].0.cmp(&keyed[b].0));

        let rename: HashMap<Var, (Var, bool)> = order
            .iter()
            .enumerate()
            .map(|(pos, &k)| (self.symbol(k), (Var::cluster(pos as u32 + 1), keyed[k].2)))
            .collect();
        let slots = order
            .iter()
            .enumerate()
            .map(|(pos, &k)| SeedSlot {
                symbol: Var::cluster(pos as u32 + 1),
                ambient: keyed[k].1.clone(),
                exchange: self
                    .exchange(k)
                    .rename(|v| rename.get(&v).copied().unwrap_or((v, false)))
                    .normalize(),
            })
            .collect();
        Seed::from_slots(slots)
    }

    /// `ambient|exchange` per slot of the canonical representative, joined
    /// by `;`. Two seeds are equivalent exactly when these strings agree.
    pub fn canonical_string(&self) -> String {
        let c = self.canonicalize();
        c.slots()
            .iter()
            .map(|s| format!("{}|{}", s.ambient, s.exchange))
            .collect::<Vec<_>>()
            .join(";")
    }
}

pub fn seeds_equivalent(a: &Seed, b: &Seed) -> Result<bool, SeedError> {
    if a.rank() != b.rank() {
        return Err(SeedError::RankMismatch(a.rank(), b.rank()));
    }
    Ok(a.canonical_string() == b.canonical_string())
}
