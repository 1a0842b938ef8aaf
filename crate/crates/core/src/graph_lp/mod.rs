//! Seeds attached to digraphs, activation sequences and the closed-form
//! exchange polynomials of the binomial algebra of the complete graph.

mod closed_form;
mod digraph;
mod sequence;

use thiserror::Error;

use crate::lp::{Seed, SeedError};
use crate::poly::{LaurentPolynomial, Monomial, PolyError, Var};

pub use closed_form::{
    closed_form_cluster_variable, closed_form_exchange, closed_form_hat_ratio,
    prefix_substitution_holds, prefix_symbol, vanishing_multiplicity, ClosedForm,
};
pub use digraph::Digraph;
pub use sequence::ActivationSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(u32, u32),
    #[error("duplicate entry {0} in activation sequence")]
    DuplicateEntry(u32),
    #[error("empty activation sequence has no closed-form cluster variable")]
    EmptySequence,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("closed-form self-check failed: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Linear seed: `F_i = A_i + sum_{i -> j} X_j`.
pub fn initial_seed_linear(g: &Digraph) -> Seed {
    let exch = (1..=g.n() as u32)
        .map(|i| {
            let mut f = LaurentPolynomial::var(Var::constant(i));
            for j in g.out_neighbors(i) {
                f += &LaurentPolynomial::var(Var::cluster(j));
            }
            f
        })
        .collect();
    Seed::initial(exch)
}

/// Binomial seed: `F_i = A_i + prod_{i -> j} X_j`. A vertex without
/// out-neighbors gets `A_i + 1`.
pub fn initial_seed_binomial(g: &Digraph) -> Seed {
    let exch = (1..=g.n() as u32)
        .map(|i| {
            let m = Monomial::from_pairs(g.out_neighbors(i).map(|j| (Var::cluster(j), 1)));
            &LaurentPolynomial::var(Var::constant(i)) + &LaurentPolynomial::monomial(m)
        })
        .collect();
    Seed::initial(exch)
}

/// Mutates `start` along `s` (slot `s_r - 1` at step `r`).
pub fn mutate_along(start: &Seed, s: &ActivationSequence) -> Result<Seed, GraphError> {
    let mut seed = start.clone();
    for &l in s.entries() {
        seed = seed.mutate(l as usize - 1)?;
    }
    Ok(seed)
}

/// The seed reached from the binomial seed of `g` along `s`.
pub fn seed_from_sequence(s: &ActivationSequence, g: &Digraph) -> Result<Seed, GraphError> {
    mutate_along(&initial_seed_binomial(g), s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    fn figure_one() -> Digraph {
        Digraph::new(
            5,
            [
                (1, 2),
                (2, 1),
                (2, 3),
                (2, 5),
                (3, 2),
                (4, 1),
                (4, 3),
                (4, 5),
                (5, 3),
                (5, 4),
            ],
        )
        .unwrap()
    }

    #[test]
    fn figure_one_seeds() {
        let g = figure_one();
        assert_eq!(initial_seed_linear(&g).exchange(1), &p("A2+X1+X3+X5"));
        assert_eq!(initial_seed_binomial(&g).exchange(1), &p("A2+X1*X3*X5"));
        assert_eq!(initial_seed_linear(&g).exchange(4), &p("A5+X3+X4"));
    }

    #[test]
    fn small_complete_graphs() {
        let k2 = Digraph::complete(2);
        assert_eq!(initial_seed_linear(&k2), initial_seed_binomial(&k2));
        let k3 = initial_seed_binomial(&Digraph::complete(3));
        let got: Vec<_> = (0..3).map(|i| k3.exchange(i).clone()).collect();
        assert_eq!(got, vec![p("A1+X2*X3"), p("A2+X1*X3"), p("A3+X1*X2")]);
    }

    #[test]
    fn edgeless_graph_gives_constants() {
        let g = Digraph::new(2, []).unwrap();
        let s = initial_seed_linear(&g);
        assert_eq!(s.exchange(0), &p("A1"));
        assert_eq!(s.exchange(1), &p("A2"));
    }

    #[test]
    fn sequence_seed_matches_closed_form() {
        let k3 = Digraph::complete(3);
        let s = ActivationSequence::new(3, vec![1, 2]).unwrap();
        let seed = seed_from_sequence(&s, &k3).unwrap();
        let cf = closed_form_exchange(&s).unwrap();
        for (i, e) in cf.iter().enumerate() {
            assert_eq!(seed.exchange(i), e);
        }
        assert_eq!(
            seed_from_sequence(&ActivationSequence::empty(3), &k3).unwrap(),
            initial_seed_binomial(&k3)
        );
    }
}
