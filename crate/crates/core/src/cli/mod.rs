//! The machinery behind the `holst` binary: run configuration, identity
//! suites, and the four commands with their exit-code contract
//! (0 pass, 1 check failure, 2 input error, 3 invariant violation).

mod commands;
mod config;
mod verify;

pub use commands::{
    cmd_decompose, cmd_heat_fit, cmd_holst, cmd_verify, decompose_report, degeneracy_note, exit,
    exit_code, heat_report, holst_report, CommandOutput, DecomposeReport, HeatReport, HolstReport,
    OutputFormat, PartNorms, BETA0_TOLERANCE, CUTOFF_TAIL, HEAT_TOLERANCE,
};
pub use config::{ConstantSpec, ProfileName, RandomProfile, RunConfig, TorsionSpec};
pub use verify::{
    field_instances, run_verify, Check, Suite, VerifyOptions, VerifyReport, POINTWISE_DIMENSIONS,
};
