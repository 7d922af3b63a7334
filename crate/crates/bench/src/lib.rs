//! Criterion benchmarks for `hc-core`; see `benches/`.
