//! Criterion benchmarks for `lts-core`; see `benches/operations.rs`.
