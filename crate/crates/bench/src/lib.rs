//! Experiment harness for the `rbtlse` solvers: seeded instance
//! generation, experiment loops with CSV output, and the `rbtlse`
//! command line.

pub mod cli;
pub mod experiment;
pub mod gen;
pub mod report;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Solver(#[from] rbtlse::Error),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl BenchError {
    /// 2 for solver-assumption failures, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            BenchError::Solver(e) if e.is_solver_assumption() => 2,
            _ => 1,
        }
    }
}
