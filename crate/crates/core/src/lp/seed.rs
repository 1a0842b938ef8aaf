use crate::poly::{LaurentPolynomial, Var};

use super::SeedError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedSlot {
    /// The cluster symbol occupying this slot.
    pub symbol: Var,
    /// The symbol's value as a Laurent polynomial in the initial variables.
    pub ambient: LaurentPolynomial,
    /// Exchange polynomial in the seed's own symbols.
    pub exchange: LaurentPolynomial,
}

/// A rank-`n` seed. Slots are addressed 0-based; the initial variable of
/// slot `k` is `X{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    slots: Vec<SeedSlot>,
}

impl Seed {
    /// The seed with cluster `X1..Xn` and the given exchange polynomials
    /// (written in `X1..Xn`), each replaced by its sign-normalized associate.
    pub fn initial(exchanges: Vec<LaurentPolynomial>) -> Self {
        let slots = exchanges
            .into_iter()
            .enumerate()
            .map(|(k, f)| {
                let symbol = Var::cluster(k as u32 + 1);
                SeedSlot {
                    symbol,
                    ambient: LaurentPolynomial::var(symbol),
                    exchange: f.normalize(),
                }
            })
            .collect();
        Seed { slots }
    }

    pub(crate) fn from_slots(slots: Vec<SeedSlot>) -> Self {
        Seed { slots }
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[SeedSlot] {
        &self.slots
    }

    pub fn slot(&self, i: usize) -> Result<&SeedSlot, SeedError> {
        self.slots.get(i).ok_or(SeedError::SlotOutOfRange {
            slot: i,
            rank: self.rank(),
        })
    }

    pub fn symbol(&self, i: usize) -> Var {
        self.slots[i].symbol
    }

    pub fn exchange(&self, i: usize) -> &LaurentPolynomial {
        &self.slots[i].exchange
    }

    pub fn ambient(&self, i: usize) -> &LaurentPolynomial {
        &self.slots[i].ambient
    }

    pub fn slot_of_symbol(&self, v: Var) -> Option<usize> {
        self.slots.iter().position(|s| s.symbol == v)
    }

    /// Index for the next minted symbol: one past the largest in use, and
    /// never inside the initial range `1..=n`.
    pub fn next_symbol_index(&self) -> u32 {
        let max = self.slots.iter().map(|s| s.symbol.index).max().unwrap_or(0);
        max.max(self.rank() as u32) + 1
    }

    /// Evaluates a polynomial in this seed's symbols at the ambient
    /// representations. Constants pass through.
    pub fn to_ambient(&self, p: &LaurentPolynomial) -> Result<LaurentPolynomial, SeedError> {
        Ok(p.evaluate(|v| {
            self.slot_of_symbol(v)
                .map(|k| self.slots[k].ambient.clone())
        })?)
    }
}
