//! Monte Carlo growth of unitriangular matrices and Young-lattice chains.

pub mod haar;
pub mod markov;
pub mod report;
pub mod rng;

pub use haar::{haar_grow_step, haar_path, GrowthState};
pub use markov::{
    counts_for, haar_conditional, markov_conditional, markov_conditional_with, markov_step, markov_step_with,
    Conditional, CountsLabel,
};
pub use report::{haar_gate, run_lln, Estimate, FrequencyReport, GateVerdict, LlnConfig, LlnMode, Series};
pub use rng::{sample_exact, trial_rng, uniform_below, uniform_field_elements};
