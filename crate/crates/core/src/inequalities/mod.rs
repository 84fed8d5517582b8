//! Checkable forms of the block-positivity, Schwarz-type and numerical-radius
//! inequalities. Every check produces a [`BoundReport`].

pub mod bounds;
pub mod positivity;
pub mod report;
pub mod schwarz;

pub use bounds::{
    aluthge_reports, beta_reports, eq14_report, eq14_values, newbound_reports, thm7_quantity,
    thm7_reports, AluthgeBounds, Derived,
};
pub use positivity::{
    block_positivity, gram_blocks, majorization_equiv, prop5_report, prop6_report,
    MajorizationCheck, PositivityVerdict, Prop5Outcome, Prop5Unmet,
};
pub use report::{default_tol, BoundReport};
pub use schwarz::{mixed_schwarz, schwarz_gram, SchwarzGram};
