//! Criterion benchmarks for the construction pipeline live in `benches/`.
