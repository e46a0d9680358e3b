//! Experiment drivers behind the `cvur` binary: deterministic sweeps and
//! seeded Monte-Carlo runs over the conditional-variance uncertainty
//! relations, emitted as fixed-schema CSV plus optional plot scripts and
//! JSON report arrays.

pub mod experiments;
pub mod plot;

pub use experiments::{run_experiment, split_obs_tokens, ExperimentOutput, RunConfig, EXPERIMENTS};
pub use plot::emit_plot_script;
