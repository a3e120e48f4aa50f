//! Scenario ingestion, pipeline dispatch, and report emission.

mod report;
mod run;
mod scenario;

pub use report::{BivectorEntry, ConditionEntry, Dimension, Report, Structure, TableEntry, WitnessEntry};
pub use run::{exit_code, run, run_pipeline, search, transverse_scenario, Pipeline, RunError};
pub use scenario::{
    parse_scenario, parse_scenario_str, ClassicalBody, Header, Mode, QuantumBody, ScenarioBody, ScenarioError,
    ScenarioFile, SchemaError,
};
