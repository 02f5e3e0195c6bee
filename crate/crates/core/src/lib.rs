//! Quantum Fisher information and metrological speed of three-qubit graph,
//! hypergraph and GHZ states.
//!
//! The crate evaluates the maximal collective-spin sensitivity of pure
//! states two ways: from the state vector by applying collective spin
//! operators, and for symmetric three-qubit states from closed-form moment
//! expressions in seven real parameters. Parameter sweeps, the single-cut
//! concurrences, and named reference presets sit on top of those.

pub mod cli;
pub mod closed_form;
pub mod entanglement;
pub mod error;
pub mod exec;
pub mod hypergraph;
pub mod linalg;
pub mod reproduce;
pub mod spin;
pub mod statevec;
pub mod sweep;

pub use closed_form::{chi_squared_param, param_report, realize, Param, SpinParams};
pub use entanglement::{concurrence_cut, purity, total_concurrence, ConcurrenceReport};
pub use error::{Error, Result};
pub use exec::Execution;
pub use hypergraph::{parse_edge_flags, parse_hypergraph, Hypergraph};
pub use spin::{collective_moments, metric_report, spin_frame, CollectiveMoments, MetricReport, SpinFrame};
pub use statevec::{ghz_state, plus_state, DickeDecomposition, QubitState};
