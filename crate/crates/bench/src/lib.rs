//! Criterion benchmarks for spinstab; see `benches/`.
