//! Criterion benchmarks for the crossing workspace live under `benches/`.
