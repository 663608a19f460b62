//! Criterion benchmarks for the `qsocle-core` kernels; see `benches/kernels.rs`.
