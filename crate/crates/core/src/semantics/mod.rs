//! Truth tables, finite-model evaluation and equivalence checks.

mod model;
mod table;

pub use model::{
    equivalent_bounded, eval, find_bounded_counterexample, Counterexample, Env, Interpretation, ModelEnumerator,
    Signature, MAX_INTERPRETATIONS,
};
pub use table::{
    equivalent_propositional, eval_propositional, propositional_counterexample, truth_table, variables, Assignment,
    TruthRow, TruthTable, ValueStyle,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("truth tables need a quantifier-free formula over propositional letters: {0}")]
    QuantifiedInput(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("no interpretation for `{0}`")]
    MissingSymbol(String),
    #[error("signature too large: {} interpretations on a domain of size {domain} (limit 2^24)", .interpretations.map(|n| n.to_string()).unwrap_or_else(|| "more than 2^128".into()))]
    SignatureTooLarge { domain: usize, interpretations: Option<u128> },
}
