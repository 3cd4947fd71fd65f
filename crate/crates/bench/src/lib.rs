//! Benchmarks for `cir-core` live under `benches/`.
