//! Exact seed mutation for Laurent phenomenon algebras, with closed forms
//! and exchange-graph verification for the binomial algebra of the
//! complete graph.

pub mod explorer;
pub mod graph_lp;
pub mod lp;
pub mod poly;
