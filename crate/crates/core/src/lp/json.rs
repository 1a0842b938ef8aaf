use serde::{Deserialize, Serialize};

use crate::poly::{default_var_name, parse_with, to_string_with, LaurentPolynomial, Var};

use super::{Seed, SeedError, SeedSlot};

/// On-disk seed format. Ambient values are written in `X1..Xn`; exchange
/// polynomials use `X{k}` for the symbol in slot `k` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub rank: usize,
    pub slots: Vec<SlotJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotJson {
    pub ambient: String,
    pub exchange: String,
}

impl Seed {
    pub fn to_json(&self) -> SeedJson {
        let slot_name = |v: Var| match self.slot_of_symbol(v) {
            Some(k) if v.is_cluster() => format!("X{}", k + 1),
            _ => v.to_string(),
        };
        SeedJson {
            rank: self.rank(),
            slots: self
                .slots()
                .iter()
                .map(|s| SlotJson {
                    ambient: s.ambient.to_string(),
                    exchange: to_string_with(&s.exchange, &slot_name),
                })
                .collect(),
        }
    }

    /// Rebuilds a seed. A slot whose ambient value is its own initial
    /// variable keeps that symbol; other slots receive fresh ids past `n`.
    pub fn from_json(json: &SeedJson) -> Result<Seed, SeedError> {
        let n = json.rank;
        if json.slots.len() != n {
            return Err(SeedError::Invalid(format!(
                "rank {n} but {} slots",
                json.slots.len()
            )));
        }
        let in_range = |name: &str| {
            default_var_name(name).filter(|v| v.index as usize <= n || v.is_constant())
        };
        let mut next = n as u32 + 1;
        let mut parsed = Vec::with_capacity(n);
        for (k, s) in json.slots.iter().enumerate() {
            let ambient = parse_with(&s.ambient, &in_range)?;
            let exchange = parse_with(&s.exchange, &in_range)?;
            let own = Var::cluster(k as u32 + 1);
            let symbol = if ambient == LaurentPolynomial::var(own) {
                own
            } else {
                next += 1;
                Var::cluster(next - 1)
            };
            parsed.push((symbol, ambient, exchange));
        }
        let symbols: Vec<Var> = parsed.iter().map(|t| t.0).collect();
        let slots = parsed
            .into_iter()
            .map(|(symbol, ambient, exchange)| SeedSlot {
                symbol,
                ambient,
                exchange: exchange.rename(|v| {
                    if v.is_cluster() {
                        (symbols[v.index as usize - 1], false)
                    } else {
                        (v, false)
                    }
                }),
            })
            .collect();
        Ok(Seed::from_slots(slots))
    }

    pub fn to_json_string(&self, pretty: bool) -> String {
        let j = self.to_json();
        if pretty {
            serde_json::to_string_pretty(&j)
        } else {
            serde_json::to_string(&j)
        }
        .expect("seed serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<Seed, SeedError> {
        let j: SeedJson = serde_json::from_str(s).map_err(|e| SeedError::Invalid(e.to_string()))?;
        Seed::from_json(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_after_mutations() {
        let s = Seed::initial(vec![
            "A1+X2+X3".parse().unwrap(),
            "A2+X1+X3".parse().unwrap(),
            "A3+X1+X2".parse().unwrap(),
        ]);
        let m = s.mutate(0).unwrap().mutate(1).unwrap();
        let text = m.to_json_string(false);
        let back = Seed::from_json_str(&text).unwrap();
        assert_eq!(back.to_json_string(false), text);
        assert_eq!(back.canonical_string(), m.canonical_string());
        assert_eq!(back.symbol(2), Var::cluster(3));
    }

    #[test]
    fn bad_input_is_rejected() {
        assert!(Seed::from_json_str("{\"rank\":2,\"slots\":[]}").is_err());
        assert!(Seed::from_json_str(
            "{\"rank\":1,\"slots\":[{\"ambient\":\"X1\",\"exchange\":\"X2\"}]}"
        )
        .is_err());
        assert!(Seed::from_json_str("not json").is_err());
    }
}
