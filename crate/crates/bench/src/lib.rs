//! Criterion benchmarks for `unstalg-core` live under `benches/`.
