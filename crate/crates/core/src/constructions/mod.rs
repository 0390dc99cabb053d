//! Finite-stage simulations of the three priority constructions, driven by
//! mock oracles and checked through their event traces.

pub mod dnc;
pub mod measure;
pub mod oracle;
pub mod priority;
pub mod stable2dim;
pub mod trace;

pub use dnc::{age, build_dnc_coloring, oldest_blocks};
pub use measure::{attention_measure, build_measure_coloring, requires_attention_measure};
pub use oracle::{ApproxOracle, BiArrayFunctional, OracleFile, PrefixFunctional};
pub use priority::{cantor_pair, cantor_unpair, h_bound, index_pattern, pattern_index};
pub use stable2dim::build_stable_2dim_coloring;
pub use trace::{verify_trace, ConstructionTrace, TraceReport};
