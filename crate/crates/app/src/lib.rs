//! Expression evaluator, verification harness and CLI plumbing for `qsym`.

pub mod cli;
pub mod expr;
pub mod harness;
