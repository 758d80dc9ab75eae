//! Affine actions of fundamental groups of graphs of groups.
//!
//! Vertex groups are free and act isometrically on weighted Cayley trees,
//! edge groups are infinite cyclic (or trivial). The pipeline checks the
//! hypotheses, fixes edge ends, solves for the dilations of the stable letters
//! (or for translation parts in ℤ), assembles β on the generators and then
//! certifies the action by exact equivariance checks.

mod beta;
mod britton;
mod ends;
mod freeness;
mod graph;
mod hypotheses;
mod metric;
mod pipeline;
mod smith;
mod solve;

pub use beta::{build_beta, BetaAssignment, RelationRecord};
pub use britton::{BrittonWord, CyclicForm, HnnPresentation, Syllable};
pub use ends::{assign_ends, EndAssignment};
pub use freeness::{freeness_check, FreenessReport};
pub use graph::{
    AmbientSpec, EdgeData, EdgeSpec, GammaLetter, GraphOfGroups, GraphSpec, VertexAction, VertexSpec,
    WeightSpec,
};
pub use hypotheses::{validate_hypotheses, Check, Condition, HypothesisReport, Verdict};
pub use metric::{adjacent_distance, adjacent_metric, check_equivariance, AdjacentPoint, EquivarianceReport, Violation};
pub use pipeline::{run_combine, CombineOptions, CombineReport, EdgeDilation, GeneratorImage};
pub use smith::{certifies_infeasible, smith_normal_form, solve_integer_system, IntegerSolution, SmithForm};
pub use solve::{solve_c5_prime, solve_theta_ge, C5Outcome, Solution, Strategy};

use thiserror::Error;

use crate::ogroup::OGroupError;
use crate::treecalc::TreeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombineError {
    #[error("malformed graph of groups: {0}")]
    Spec(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Group(#[from] OGroupError),
    #[error("{strategy} does not apply: {reason}")]
    Strategy { strategy: String, reason: String },
    #[error("edge {edge}: no shear solves θ·{tau_e} + {tau_ebar} = 0")]
    ShearInfeasible {
        edge: String,
        tau_e: String,
        tau_ebar: String,
    },
    #[error("edge {edge}: end homomorphism values {tau_e} and {tau_ebar} do not have opposite signs")]
    SameSign {
        edge: String,
        tau_e: String,
        tau_ebar: String,
    },
    #[error("edge {edge}: {condition} fails: {lhs} ≠ {rhs}")]
    RelationFailure {
        edge: String,
        condition: String,
        lhs: String,
        rhs: String,
    },
    #[error("ends of {first} and {second} lie in one orbit for every orientation (conjugator {conjugator})")]
    OrbitCollision {
        first: String,
        second: String,
        conjugator: String,
    },
    #[error("Britton normal forms need a graph with one vertex")]
    MultiVertex,
}
