use std::fmt;

use rayon::prelude::*;

use crate::graph_lp::{
    closed_form_cluster_variable, prefix_substitution_holds, seed_from_sequence,
    vanishing_multiplicity, ActivationSequence, ClosedForm, Digraph,
};
use crate::lp::{compute_hat, seeds_equivalent, Seed};

use super::{ExchangeGraph, ExploreError};

/// `sum_{k=0}^{n} n!/k!`.
pub fn expected_seed_count(n: usize) -> u64 {
    let mut total = 0u64;
    let mut term = 1u64; // n!/k! for k = n
    for k in (0..=n).rev() {
        total += term;
        term *= k as u64;
    }
    total
}

/// `2^n + n - 1`.
pub fn expected_variable_count(n: usize) -> u64 {
    (1u64 << n) + n as u64 - 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub seeds: u64,
    pub expected_seeds: u64,
    pub variables: u64,
    pub expected_variables: u64,
    pub regular: bool,
}

impl CountReport {
    pub fn passed(&self) -> bool {
        self.seeds == self.expected_seeds
            && self.variables == self.expected_variables
            && self.regular
    }
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "seeds {}/{}, variables {}/{}, {}",
            self.seeds,
            self.expected_seeds,
            self.variables,
            self.expected_variables,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

pub fn verify_counts(g: &ExchangeGraph, n: usize) -> Result<CountReport, ExploreError> {
    if g.truncated() {
        return Err(ExploreError::Truncated);
    }
    Ok(CountReport {
        seeds: g.len() as u64,
        expected_seeds: expected_seed_count(n),
        variables: g.cluster_variables().len() as u64,
        expected_variables: expected_variable_count(n),
        regular: g.is_regular(),
    })
}

/// The closed-form identities checked per activation sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// Engine exchange polynomials equal the closed forms.
    ExchangePolynomials,
    /// Engine value of the last minted variable equals its closed form.
    ClusterVariable,
    /// Hat monomials equal the predicted ratios.
    HatRatio,
    /// Multiplicities of later exchange polynomials in earlier ones.
    FactorMultiplicity,
    /// Substitution identity relating the `P` polynomials of a sequence and
    /// its prefix.
    PrefixSubstitution,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::ExchangePolynomials,
        Identity::ClusterVariable,
        Identity::HatRatio,
        Identity::FactorMultiplicity,
        Identity::PrefixSubstitution,
    ];

    /// Short name used on the command line.
    pub fn key(self) -> &'static str {
        match self {
            Identity::ExchangePolynomials => "thm42",
            Identity::ClusterVariable => "cor43",
            Identity::HatRatio => "prop33",
            Identity::FactorMultiplicity => "lem32",
            Identity::PrefixSubstitution => "lem41",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub identity: Identity,
    pub sequence: ActivationSequence,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub cases: usize,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn for_identity(&self, id: Identity) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(move |r| r.identity == id)
    }

    /// `(passed, total)` results for one identity.
    pub fn tally(&self, id: Identity) -> (usize, usize) {
        let all: Vec<_> = self.for_identity(id).collect();
        (all.iter().filter(|r| r.passed).count(), all.len())
    }
}

fn result(
    identity: Identity,
    s: &ActivationSequence,
    cases: usize,
    failure: Option<String>,
) -> CheckResult {
    CheckResult {
        identity,
        sequence: s.clone(),
        passed: failure.is_none(),
        cases,
        detail: failure,
    }
}

/// A multiplicity that disagrees with the prediction: `(i, j, found)`.
pub type Mismatch = (usize, usize, u32);

/// Checks the multiplicity for every `i + 2 <= j <= k` against
/// `2^(j-i-1)`; returns the number of cases and the mismatches.
pub fn factor_multiplicity_mismatches(
    cf: &ClosedForm,
) -> Result<(usize, Vec<Mismatch>), ExploreError> {
    let k = cf.sequence().len();
    let mut cases = 0;
    let mut bad = Vec::new();
    for i in 1..=k {
        for j in i + 2..=k {
            cases += 1;
            let m = vanishing_multiplicity(cf, i, j)?;
            if m != 1 << (j - i - 1) {
                bad.push((i, j, m));
            }
        }
    }
    Ok((cases, bad))
}

/// Runs the requested identities for one sequence at rank `s.n()`.
pub fn check_sequence(
    s: &ActivationSequence,
    identities: &[Identity],
) -> Result<Vec<CheckResult>, ExploreError> {
    let n = s.n();
    let seed = seed_from_sequence(s, &Digraph::complete(n))?;
    let cf = ClosedForm::new(s);
    let k = s.len();
    let mut out = Vec::new();
    for &id in identities {
        let r = match id {
            Identity::ExchangePolynomials => {
                let expected = cf.exchanges()?;
                let bad = (0..n).find(|&i| seed.exchange(i) != &expected[i]);
                let msg = bad.map(|i| {
                    format!(
                        "slot {}: engine {} vs closed form {}",
                        i + 1,
                        seed.exchange(i),
                        expected[i]
                    )
                });
                result(id, s, n, msg)
            }
            Identity::ClusterVariable => {
                if k == 0 {
                    continue;
                }
                let expected = closed_form_cluster_variable(s)?;
                let got = seed.ambient(s.get(k) as usize - 1);
                let msg =
                    (got != &expected).then(|| format!("engine {got} vs closed form {expected}"));
                result(id, s, 1, msg)
            }
            Identity::HatRatio => {
                let mut msg = None;
                for slot in 0..n {
                    let got = compute_hat(&seed, slot)?.monomial(&seed);
                    let expected = cf.hat_ratio(slot as u32 + 1);
                    if got != expected {
                        msg = Some(format!(
                            "slot {}: exponents {:?} vs {:?}",
                            slot + 1,
                            got,
                            expected
                        ));
                        break;
                    }
                }
                result(id, s, n, msg)
            }
            Identity::FactorMultiplicity => {
                if k < 3 {
                    continue;
                }
                let (cases, bad) = factor_multiplicity_mismatches(&cf)?;
                let msg = bad.first().map(|(i, j, m)| {
                    format!(
                        "i={i}, j={j}: multiplicity {m}, expected {}",
                        1 << (j - i - 1)
                    )
                });
                result(id, s, cases, msg)
            }
            Identity::PrefixSubstitution => {
                if k < 2 {
                    continue;
                }
                let mut msg = None;
                for i in 0..k - 1 {
                    if !prefix_substitution_holds(s, i)? {
                        msg = Some(format!("fails at i={i}"));
                        break;
                    }
                }
                result(id, s, k - 1, msg)
            }
        };
        out.push(r);
    }
    Ok(out)
}

/// Every identity over every activation sequence of rank `n`.
pub fn verify_identity_suite(
    n: usize,
    identities: &[Identity],
) -> Result<SuiteReport, ExploreError> {
    let per_seq: Vec<Vec<CheckResult>> = ActivationSequence::all(n)
        .par_iter()
        .map(|s| check_sequence(s, identities))
        .collect::<Result<_, _>>()?;
    Ok(SuiteReport {
        results: per_seq.into_iter().flatten().collect(),
    })
}

/// Hypotheses of the commutation theorem: symbol `j` does not occur in
/// `F_i` and `F_i` is not a unit multiple of `F_j`.
pub fn commutation_eligible(seed: &Seed, i: usize, j: usize) -> bool {
    i != j
        && !seed.exchange(i).involves(seed.symbol(j))
        && seed.exchange(i).normalize() != seed.exchange(j).normalize()
}

/// Whether `mu_j mu_i` and `mu_i mu_j` give equivalent seeds.
pub fn mutations_commute(seed: &Seed, i: usize, j: usize) -> Result<bool, ExploreError> {
    let a = seed.mutate(i)?.mutate(j)?;
    let b = seed.mutate(j)?.mutate(i)?;
    Ok(seeds_equivalent(&a, &b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas() {
        let seeds: Vec<u64> = (1..=5).map(expected_seed_count).collect();
        assert_eq!(seeds, vec![2, 5, 16, 65, 326]);
        let vars: Vec<u64> = (1..=4).map(expected_variable_count).collect();
        assert_eq!(vars, vec![2, 5, 10, 19]);
    }

    #[test]
    fn suite_small_ranks() {
        for n in 1..=3 {
            let r = verify_identity_suite(n, &Identity::ALL).unwrap();
            assert!(r.passed(), "{:?}", r.results.iter().find(|c| !c.passed));
        }
    }
}
