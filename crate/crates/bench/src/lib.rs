//! Benchmarks for the superposed-path channel toolkit live in `benches/`.
