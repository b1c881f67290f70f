//! Std companion to `tas-secrecy-core`: load-profile CSV ingestion, JSON/CSV
//! reports, rayon-parallel sweeps and Monte Carlo runs, and the
//! `tas-secrecy` command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod ingest;
pub mod output;
pub mod parallel;
