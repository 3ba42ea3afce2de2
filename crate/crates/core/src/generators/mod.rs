//! Vanilla data generators: a sparse stable VAR and the Lorenz-96 system,
//! each paired with its ground-truth causal graph.

mod graph;
mod lorenz;
mod noise;
mod series;
mod var;

pub use graph::CausalGraph;
pub use lorenz::{
    lorenz96_derivative, lorenz96_ground_truth, lorenz96_trajectory, simulate_lorenz96, Lorenz96Options,
    Lorenz96Spec,
};
pub use noise::{NoiseKind, NoiseSpec};
pub use series::TimeSeriesMatrix;
pub use var::{
    sample_var_system, simulate_var, var_ground_truth, VarSampling, VarSimOptions, VarSystem, DIVERGENCE_LIMIT,
    VAR_BURN_IN,
};
