//! Explains why an interpretation is not an answer set of a non-ground
//! disjunctive logic program, and reifies the pair as facts for a fixed
//! meta-program that answers the same question with an external solver.

pub mod error;
pub mod explain;
pub mod grounder;
pub mod loops;
pub mod meta;
pub mod model;
pub mod parser;
pub mod reify;
pub mod semantics;
pub mod unfounded;

pub use error::{Error, Result};
pub use explain::{explain, explain_with, find_unfounded_loops, find_unsatisfied, ExplainOptions, Explanation, Verdict};
pub use grounder::{ground, herbrand_universe, GroundProgram, GroundRule};
pub use loops::{dep_graph, is_loop, loops_within, DepGraph, Loop};
pub use model::{Constant, Interpretation, Literal, Program, Rule, Substitution};
pub use parser::{parse_interpretation, parse_literal, parse_program, ParseError, ParseErrorKind};
pub use semantics::{enumerate_answer_sets, is_answer_set};
pub use unfounded::{externally_supported, unfounded};
