//! Benchmarks for the design pipeline live in `benches/`.
