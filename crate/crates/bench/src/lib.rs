//! Benchmarks for the Jones polynomial engines live in `benches/`.
